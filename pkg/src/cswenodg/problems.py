"""Registry of the benchmark problems and a driver that runs one of them."""
import logging
import os
import time
from dataclasses import dataclass, field, replace
from functools import lru_cache
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .boundary import BoundarySpec, Prescribed, Reflective, Split, Transmissive
from .dg import project_function
from .exceptions import ConfigError, InvalidArgumentError
from .limiter import Limiter
from .mesh import build_uniform_1d, build_uniform_2d, perturb_mesh, perturb_mesh_2d
from .physics import (
    BuckleyLeverett,
    Burgers,
    Euler,
    burgers2d_exact,
    density_wave,
    dmr_shock_x,
    dmr_states,
    exact_burgers,
    exact_burgers_entropy,
    exact_riemann,
    godunov_buckley_leverett,
    isentropic_vortex,
)
from .timestep import default_cfl, integrate

PERTURBATION = 0.1

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProblemSpec:
    """Everything needed to set up and assess one benchmark.

    ``initial`` maps coordinates to conserved variables (variable axis
    first).  ``oracle(coords, t)`` returns the same for the exact or
    reference solution; ``reference`` tells which of the two it is.
    """

    id: str
    title: str
    ndim: int
    make_flux: Callable
    initial: Callable
    make_bc: Callable
    t_end: float
    domain: tuple
    cells: tuple
    oracle: Optional[Callable] = None
    reference: str = "exact"
    error_var: int = 0
    periodic: bool = False
    positivity: bool = False
    smooth: bool = False
    requires_limiter: bool = False
    notes: str = ""
    variables: tuple = ("u",)

    @property
    def has_oracle(self):
        return self.oracle is not None


# -- scalar problems ---------------------------------------------------------------

def _sine(x):
    return (0.5 + np.sin(x))[None]


def _burgers_oracle(x, t):
    return exact_burgers(x, t)[None]


def _burgers_shock_oracle(x, t):
    x = np.asarray(x, dtype=float)
    return exact_burgers_entropy(x.ravel(), t).reshape(x.shape)[None]


def _buckley_initial(x):
    return np.where((x >= -0.5) & (x <= 0.0), 1.0, 0.0)[None]


BUCKLEY_REFERENCE_CELLS = 10000


@lru_cache(maxsize=4)
def _buckley_reference(t, cells=BUCKLEY_REFERENCE_CELLS):
    return godunov_buckley_leverett(lambda x: _buckley_initial(x)[0], (-1.0, 1.0), t, cells)


def _buckley_oracle(x, t):
    xc, u = _buckley_reference(float(t))
    return _lookup(xc, u, x, -1.0, 1.0)[None]


def _lookup(xc, u, x, a, b):
    """Piecewise-constant lookup on a uniform fine grid."""
    h = (b - a) / xc.size
    idx = np.clip(((np.asarray(x) - a) / h).astype(int), 0, xc.size - 1)
    return u[idx]


# -- 1D Euler ------------------------------------------------------------------------

E1 = Euler(1)
E2 = Euler(2)


def _riemann_initial(left, right, x0=0.5):
    wl, wr = np.asarray(left, float), np.asarray(right, float)

    def init(x):
        w = np.where(x[None] < x0, wl.reshape(3, *([1] * np.ndim(x))), wr.reshape(3, *([1] * np.ndim(x))))
        return E1.conserved(w)

    def oracle(x, t):
        x = np.asarray(x, dtype=float)
        if t == 0:
            return init(x)
        return E1.conserved(exact_riemann(wl, wr, (x - x0) / t))

    return init, oracle


SOD = ((1.0, 0.0, 1.0), (0.125, 0.0, 0.1))
LAX = ((0.445, 0.698, 3.528), (0.5, 0.0, 0.571))
_sod_init, _sod_oracle = _riemann_initial(*SOD)
_lax_init, _lax_oracle = _riemann_initial(*LAX)

SHU_OSHER_LEFT = (3.857143, 2.629369, 10.333333)


def _shu_osher_initial(x):
    x = np.asarray(x, dtype=float)
    left = np.asarray(SHU_OSHER_LEFT).reshape(3, *([1] * x.ndim))
    right = np.stack([1.0 + 0.2 * np.sin(16.0 * np.pi * x), np.zeros_like(x), np.ones_like(x)])
    return E1.conserved(np.where(x[None] < 0.125, left, right))


def _blast_initial(x):
    x = np.asarray(x, dtype=float)
    p = np.where(x < 0.1, 1000.0, np.where(x < 0.9, 0.01, 100.0))
    return E1.conserved(np.stack([np.ones_like(x), np.zeros_like(x), p]))


#: Fine-grid self-references: resolution / degree used for the shock-entropy
#: and blast-wave "reference" solutions (no closed form exists).
REFERENCE_SETTINGS = {"shuosher": {"cells": 4000, "degree": 1}, "blast": {"cells": 4000, "degree": 1}}


def set_reference_resolution(problem_id, cells, degree=1):
    if problem_id not in REFERENCE_SETTINGS:
        raise ConfigError(f"{problem_id} has no self-converged reference")
    REFERENCE_SETTINGS[problem_id] = {"cells": int(cells), "degree": int(degree)}
    _self_reference.cache_clear()


def reference_cache_dir():
    """Directory of the on-disk reference cache (``$CSWENODG_CACHE_DIR`` or ``~/.cache/cswenodg``)."""
    return Path(os.environ.get("CSWENODG_CACHE_DIR") or Path.home() / ".cache" / "cswenodg")


@lru_cache(maxsize=8)
def _self_reference(problem_id, t, cells, degree):
    """Cell centres and averages of the fine-grid reference run.

    The fine runs take long, so results are also kept on disk and reused
    across processes.
    """
    path = reference_cache_dir() / f"{problem_id}_t{t:.9g}_K{cells}_P{degree}.npz"
    if path.exists():
        with np.load(path) as data:
            return data["x"], data["avg"]
    log.info("computing %s reference (K=%d, P%d); cached at %s", problem_id, cells, degree, path)
    spec = replace(get_problem(problem_id), oracle=None)
    res = run_problem(spec, degree=degree, cells=cells, t_end=t, limiter="cswen")
    centers, avg = res.state.sol.mesh.centers, res.state.sol.cell_averages()
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp.npz")
        np.savez(tmp, x=centers, avg=avg)
        tmp.replace(path)
    except OSError as err:  # a read-only cache only costs recomputation
        log.warning("could not cache reference at %s: %s", path, err)
    return centers, avg


def _self_oracle(problem_id):
    def oracle(x, t):
        s = REFERENCE_SETTINGS[problem_id]
        xc, avg = _self_reference(problem_id, float(t), s["cells"], s["degree"])
        return np.stack([_lookup(xc, a, x, 0.0, 1.0) for a in avg])

    return oracle


# -- 2D problems -----------------------------------------------------------------------

def _burgers2d_initial(x, y):
    return (0.5 + np.sin(x + y))[None]


def _burgers2d_oracle(x, y, t):
    return burgers2d_exact(x, y, t)[None]


VORTEX_DOMAIN = ((0.0, 10.0), (-5.0, 5.0))


def _vortex(x, y, t=0.0):
    return isentropic_vortex(x, y, t, period=(10.0, 10.0))


def _dmr_initial(x, y):
    pre, post = (E2.conserved(np.asarray(s, float)) for s in dmr_states())
    k = (4,) + (1,) * np.ndim(x)
    return np.where((x < dmr_shock_x(y, 0.0))[None], post.reshape(k), pre.reshape(k))


def _dmr_bc():
    pre, post = (E2.conserved(np.asarray(s, float)) for s in dmr_states())

    def post_state(x, y, t):
        return post.reshape((4,) + (1,) * np.ndim(np.broadcast(x, y)))

    def top_state(x, y, t):
        xb, yb = np.broadcast_arrays(x, y)
        behind = xb < dmr_shock_x(1.0, t)
        k = (4,) + (1,) * xb.ndim
        return np.where(behind[None], post.reshape(k), pre.reshape(k))

    bottom = Split(lambda x, y, t: np.broadcast_to(np.asarray(x) < 1.0 / 6.0, np.broadcast(x, y).shape),
                   Prescribed(post_state), Reflective())
    return BoundarySpec(left=Prescribed(post_state), right=Transmissive(), bottom=bottom,
                        top=Prescribed(top_state))


def _periodic(ndim):
    return lambda: BoundarySpec.periodic_all(ndim)


def _shu_osher_bc():
    left = E1.conserved(np.asarray(SHU_OSHER_LEFT))
    return BoundarySpec(Prescribed(lambda x, t: left.reshape((3,) + (1,) * np.ndim(x))), Transmissive())


EULER1_VARS = ("rho", "u", "p")
EULER2_VARS = ("rho", "u", "v", "p")

PROBLEMS = {
    p.id: p
    for p in [
        ProblemSpec("burgers1d", "1D Burgers, u0 = 0.5 + sin x, smooth (t = 0.5)", 1, lambda: Burgers(1),
                    _sine, _periodic(1), 0.5, ((0.0, 2 * np.pi),), (80,), _burgers_oracle,
                    periodic=True, smooth=True),
        ProblemSpec("burgers1d-shock", "1D Burgers after shock formation (t = 1.5)", 1, lambda: Burgers(1),
                    _sine, _periodic(1), 1.5, ((0.0, 2 * np.pi),), (80,), _burgers_shock_oracle,
                    periodic=True),
        ProblemSpec("burgers2d", "2D Burgers, u0 = 0.5 + sin(x + y) (t = 0.25)", 2, lambda: Burgers(2),
                    _burgers2d_initial, _periodic(2), 0.25, ((0.0, 2 * np.pi), (0.0, 2 * np.pi)), (40, 40),
                    _burgers2d_oracle, periodic=True, smooth=True),
        ProblemSpec("euler2d-densitywave", "2D Euler density wave (t = 2 pi)", 2, lambda: Euler(2),
                    lambda x, y: density_wave(x, y, 0.0), _periodic(2), 2 * np.pi,
                    ((0.0, 2 * np.pi), (0.0, 2 * np.pi)), (40, 40), density_wave, periodic=True, smooth=True,
                    variables=EULER2_VARS),
        ProblemSpec("vortex", "2D isentropic vortex (t = 2)", 2, lambda: Euler(2), _vortex, _periodic(2), 2.0,
                    VORTEX_DOMAIN, (40, 40), _vortex, periodic=True, smooth=True, variables=EULER2_VARS),
        ProblemSpec("buckley", "Buckley-Leverett shock / rarefaction (t = 0.4)", 1, BuckleyLeverett,
                    _buckley_initial, lambda: BoundarySpec(Transmissive(), Transmissive()), 0.4,
                    ((-1.0, 1.0),), (80,), _buckley_oracle, reference="reference",
                    notes=f"reference: first-order Godunov, K={BUCKLEY_REFERENCE_CELLS}"),
        ProblemSpec("sod", "Sod shock tube (t = 0.2)", 1, lambda: Euler(1), _sod_init,
                    lambda: BoundarySpec(Transmissive(), Transmissive()), 0.2, ((0.0, 1.0),), (200,),
                    _sod_oracle, variables=EULER1_VARS),
        ProblemSpec("lax", "Lax shock tube (t = 0.1)", 1, lambda: Euler(1), _lax_init,
                    lambda: BoundarySpec(Transmissive(), Transmissive()), 0.1, ((0.0, 1.0),), (200,),
                    _lax_oracle, variables=EULER1_VARS),
        ProblemSpec("shuosher", "Shock / entropy-wave interaction (t = 0.178)", 1, lambda: Euler(1),
                    _shu_osher_initial, _shu_osher_bc, 0.178, ((0.0, 1.0),), (200,), _self_oracle("shuosher"),
                    reference="reference", positivity=True, variables=EULER1_VARS, requires_limiter=True,
                    notes="reference: fine-grid P1 run with the compact limiter"),
        ProblemSpec("blast", "Woodward-Colella blast waves (t = 0.038)", 1, lambda: Euler(1), _blast_initial,
                    lambda: BoundarySpec(Reflective(), Reflective()), 0.038, ((0.0, 1.0),), (200,),
                    _self_oracle("blast"), reference="reference", positivity=True, variables=EULER1_VARS,
                    requires_limiter=True,
                    notes="reference: fine-grid P1 run with the compact limiter"),
        ProblemSpec("dmr", "Double Mach reflection (t = 0.2)", 2, lambda: Euler(2), _dmr_initial, _dmr_bc, 0.2,
                    ((0.0, 4.0), (0.0, 1.0)), (960, 240), None, reference="none", positivity=True,
                    variables=EULER2_VARS),
    ]
}


def list_problems():
    return list(PROBLEMS.values())


def get_problem(problem_id):
    try:
        return PROBLEMS[problem_id]
    except KeyError:
        raise InvalidArgumentError(
            f"unknown problem {problem_id!r}; choose from {', '.join(PROBLEMS)}") from None


# -- running -----------------------------------------------------------------------------

@dataclass
class RunConfig:
    """Discretisation and limiter settings of one run (defaults per problem)."""

    degree: int = 2
    cells: tuple = None
    limiter: str = "cswen"
    characteristic: bool = True
    mesh: str = "uniform"
    seed: int = 0
    cfl: float = None
    t_end: float = None
    indicator_ck: float = 1.0

    def resolved(self, spec):
        if self.cells is None:
            cells = spec.cells
        else:
            cells = (int(self.cells),) if np.isscalar(self.cells) else tuple(self.cells)
        if len(cells) == 1 and spec.ndim == 2:
            cells = (cells[0], cells[0])
        if len(cells) != spec.ndim:
            raise InvalidArgumentError(f"{spec.id} needs {spec.ndim} cell counts")
        if int(self.degree) != self.degree or self.degree < 0:
            raise InvalidArgumentError("order must be non-negative")
        return replace(self, cells=cells, cfl=self.cfl or default_cfl(self.degree),
                       t_end=spec.t_end if self.t_end is None else float(self.t_end))


@dataclass
class RunResult:
    spec: ProblemSpec
    config: RunConfig
    state: object
    elapsed: float
    troubled: int = 0
    extras: dict = field(default_factory=dict)

    @property
    def sol(self):
        return self.state.sol


def build_mesh(spec, cells, kind="uniform", seed=0):
    if kind not in ("uniform", "perturbed"):
        raise InvalidArgumentError("mesh kind must be 'uniform' or 'perturbed'")
    if spec.ndim == 1:
        mesh = build_uniform_1d(*spec.domain[0], cells[0])
        return perturb_mesh(mesh, PERTURBATION, seed) if kind == "perturbed" else mesh
    mesh = build_uniform_2d(spec.domain[0], spec.domain[1], *cells)
    return perturb_mesh_2d(mesh, PERTURBATION, seed) if kind == "perturbed" else mesh


def run_problem(spec, degree=2, cells=None, limiter="cswen", characteristic=True, mesh="uniform", seed=0,
                cfl=None, t_end=None, indicator_ck=1.0, callback=None, config=None):
    """Run ``spec`` (a :class:`ProblemSpec` or id) and return a :class:`RunResult`."""
    spec = get_problem(spec) if isinstance(spec, str) else spec
    cfg = config or RunConfig(degree=degree, cells=cells, limiter=limiter, characteristic=characteristic,
                              mesh=mesh, seed=seed, cfl=cfl, t_end=t_end, indicator_ck=indicator_ck)
    cfg = cfg.resolved(spec)
    if spec.requires_limiter and cfg.limiter == "none":
        log.warning("%s is not expected to survive without a limiter", spec.id)
    flux = spec.make_flux()
    bc = spec.make_bc()
    m = build_mesh(spec, cfg.cells, cfg.mesh, cfg.seed)
    sol = project_function(spec.initial, m, cfg.degree)
    lim = Limiter(m, cfg.degree, flux, bc, variant=cfg.limiter, characteristic=cfg.characteristic,
                  threshold=cfg.indicator_ck, positivity=spec.positivity)
    start = time.perf_counter()
    state = integrate(sol, flux, bc, cfg.t_end, cfl=cfg.cfl, limiter=lim if lim.active else None,
                      callback=callback)
    return RunResult(spec=spec, config=cfg, state=state, elapsed=time.perf_counter() - start,
                     troubled=lim.flagged)


__all__ = [
    "PROBLEMS",
    "ProblemSpec",
    "REFERENCE_SETTINGS",
    "RunConfig",
    "RunResult",
    "build_mesh",
    "get_problem",
    "list_problems",
    "reference_cache_dir",
    "run_problem",
    "set_reference_resolution",
]
