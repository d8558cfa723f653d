"""Third-order SSP Runge-Kutta time stepping with a per-stage limiter hook."""
import logging
from dataclasses import dataclass, field

import numpy as np

from .basis import apply_matrix, tensor_apply
from .dg import DGSolution, make_operator
from .exceptions import InvalidArgumentError, StateError

log = logging.getLogger(__name__)

#: Convex-combination coefficients ``(a, b)`` of each stage:
#: ``u_stage = a u^n + b (u_prev + dt L(u_prev))``.
SSP_RK3_TABLE = ((0.0, 1.0), (0.75, 0.25), (1.0 / 3.0, 2.0 / 3.0))

DEFAULT_CFL = {0: 0.5, 1: 0.3, 2: 0.18, 3: 0.1}


def default_cfl(degree):
    return DEFAULT_CFL.get(int(degree), 1.0 / (2 * int(degree) + 1) / 2.0)


@dataclass
class RunState:
    """Evolving solution with its time, step count and limiter statistics."""

    sol: DGSolution
    t: float = 0.0
    step: int = 0
    cfl: float = None
    troubled: int = 0
    history: list = field(default_factory=list)

    def __post_init__(self):
        if self.cfl is None:
            self.cfl = default_cfl(self.sol.degree)


def ssp_rk3_step(U, t, dt, rhs, limiter=None):
    """One SSP-RK3 step of ``dU/dt = rhs(U, t)``.

    ``limiter(U, t)`` (optional) is applied to every stage value and returns
    the limited array.
    """
    if not dt > 0:
        raise InvalidArgumentError("time step must be positive")
    lim = limiter or (lambda V, _t: V)
    u1 = lim(U + dt * rhs(U, t), t + dt)
    u2 = lim(0.75 * U + 0.25 * (u1 + dt * rhs(u1, t + dt)), t + 0.5 * dt)
    return lim(U / 3.0 + 2.0 / 3.0 * (u2 + dt * rhs(u2, t + 0.5 * dt)), t + dt)


def max_speeds(U, degree, flux, ndim):
    """Cell-wise maximum wave speed per axis over the volume and endpoint points.

    In 1D the neighbours' adjacent traces join each cell's point set, so a
    jump at a face counts towards the speed of both cells (this matters for
    non-convex fluxes whose speed peaks between the two states).  In 2D the
    speed along an axis is taken at the volume points and the face points
    normal to that axis; cell corners are never used by the scheme and are
    left out.
    """
    from .indicator import _norm_table

    V = _norm_table(degree)
    if ndim == 1:
        vals = apply_matrix(U, V.T)
        # columns 0 and -1 are the left / right endpoints
        nbr = np.stack([np.roll(vals[..., -1], 1, axis=1), np.roll(vals[..., 0], -1, axis=1)], axis=-1)
        return (flux.cell_speed_bound(np.concatenate([vals, nbr], axis=-1), 0),)
    Vg = V[1:-1]
    out = []
    for ax, (Mx, My) in enumerate([(V, Vg), (Vg, V)]):
        vals = tensor_apply(U, Mx, My)
        out.append(flux.cell_speed_bound(vals.reshape(vals.shape[:-2] + (-1,)), ax))
    return tuple(out)


def compute_dt(sol, flux, cfl, max_dt=1.0):
    """``cfl * min_k h_k / ((2N + 1) alpha_k)``; in 2D ``alpha_x / h_x + alpha_y / h_y``.

    Returns ``max_dt`` when every wave speed vanishes.
    """
    if not cfl > 0:
        raise InvalidArgumentError("CFL number must be positive")
    N = sol.degree
    speeds = max_speeds(sol.coeffs, N, flux, sol.ndim)
    if sol.ndim == 1:
        rate = speeds[0] / np.asarray(sol.mesh.widths)
    else:
        rate = speeds[0] / sol.mesh.x.widths[:, None] + speeds[1] / sol.mesh.y.widths[None, :]
    rmax = float(np.max(rate))
    if not np.isfinite(rmax):
        bad = np.unravel_index(int(np.argmax(~np.isfinite(rate))), rate.shape)
        cell = int(bad[0]) if sol.ndim == 1 else tuple(int(i) for i in bad)
        raise StateError("non-finite wave speed (negative pressure or density at a cell point)", cell=cell)
    if rmax <= 0.0:
        return float(max_dt)
    return min(float(max_dt), cfl / ((2 * N + 1) * rmax))


def integrate(sol, flux, bc, t_end, cfl=None, limiter=None, t0=0.0, max_steps=10_000_000,
              callback=None, max_dt=1.0):
    """Advance ``sol`` from ``t0`` to ``t_end``; returns the final :class:`RunState`.

    The last step is shortened so that the run lands exactly on ``t_end``.
    ``callback(state)`` is invoked after every step.
    """
    state = RunState(sol=sol.copy(), t=float(t0), cfl=cfl)
    op = make_operator(sol.mesh, sol.degree, flux, bc)
    U = state.sol.coeffs
    if limiter is not None:
        U = limiter(U, state.t)
    while state.t < t_end:
        if state.step >= max_steps:
            raise StateError("maximum number of steps exceeded", time=state.t, step=state.step)
        try:
            dt = compute_dt(DGSolution(sol.mesh, sol.degree, U), flux, state.cfl, max_dt=max_dt)
            if state.t + dt >= t_end or t_end - (state.t + dt) < 1e-12 * max(1.0, t_end):
                dt = t_end - state.t
            U = ssp_rk3_step(U, state.t, dt, op.rhs, limiter)
        except StateError as err:
            err.time = state.t if err.time is None else err.time
            err.step = state.step if err.step is None else err.step
            raise
        if not np.all(np.isfinite(U)):
            raise StateError("non-finite coefficients", time=state.t, step=state.step)
        state.t = t_end if state.t + dt >= t_end else state.t + dt
        state.step += 1
        state.sol = DGSolution(sol.mesh, sol.degree, U)
        if callback is not None:
            callback(state)
    state.sol = DGSolution(sol.mesh, sol.degree, U)
    if limiter is not None and hasattr(limiter, "flagged"):
        state.troubled = limiter.flagged
    return state


__all__ = [
    "DEFAULT_CFL",
    "RunState",
    "SSP_RK3_TABLE",
    "compute_dt",
    "default_cfl",
    "integrate",
    "ssp_rk3_step",
]
