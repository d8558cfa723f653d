"""Error norms against exact or reference solutions, and convergence tables."""
import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .basis import gauss_rule
from .exceptions import ConfigError


def error_norms(sol, oracle, t, var=0, normalize=True):
    """``(L1, Linf)`` error of variable ``var`` at time ``t``.

    Both norms are sampled at the ``(N + 3)``-point Gauss points of every
    cell (tensor points in 2D).  With ``normalize`` the L1 integral is
    divided by the domain measure, i.e. it is the mean absolute error, which
    is the scale the published tables use.

    ``oracle(x, t)`` / ``oracle(x, y, t)`` returns conserved variables with
    the variable axis first.
    """
    if oracle is None:
        raise ConfigError("this problem has no exact or reference solution")
    rule = gauss_rule(sol.degree + 3)
    vals = sol.evaluate(rule.points)[var]
    if sol.ndim == 1:
        x = sol.points(rule.points)
        err = np.abs(vals - np.asarray(oracle(x, t))[var])
        jac = 0.5 * np.asarray(sol.mesh.widths)[:, None] * rule.weights
        measure = sol.mesh.length
    else:
        X, Y = np.broadcast_arrays(*sol.points(rule.points))
        err = np.abs(vals - np.asarray(oracle(X, Y, t))[var])
        w2 = np.outer(rule.weights, rule.weights)
        jac = 0.25 * sol.mesh.areas[:, :, None, None] * w2
        measure = sol.mesh.x.length * sol.mesh.y.length
    l1 = float(np.sum(jac * err))
    if normalize:
        l1 /= measure
    return l1, float(np.max(err))


def observed_orders(errors):
    """``log2(e_coarse / e_fine)`` for successive entries (``None`` first)."""
    e = [float(v) for v in errors]
    out = [None]
    for a, b in zip(e[:-1], e[1:]):
        out.append(float(np.log2(a / b)) if a > 0 and b > 0 else float("nan"))
    return out


@dataclass
class ErrorReport:
    """Rows of ``(cells, L1, L1 order, Linf, Linf order)`` plus run metadata."""

    cells: list = field(default_factory=list)
    l1: list = field(default_factory=list)
    linf: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, cells, l1, linf):
        self.cells.append(cells)
        self.l1.append(float(l1))
        self.linf.append(float(linf))

    @property
    def l1_order(self):
        return observed_orders(self.l1)

    @property
    def linf_order(self):
        return observed_orders(self.linf)

    def rows(self):
        for c, e1, o1, ei, oi in zip(self.cells, self.l1, self.l1_order, self.linf, self.linf_order):
            yield c, e1, o1, ei, oi

    @staticmethod
    def _cells_label(c):
        return "x".join(str(k) for k in c) if isinstance(c, (tuple, list)) else str(c)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["K", "L1", "L1_order", "Linf", "Linf_order"])
        for c, e1, o1, ei, oi in self.rows():
            w.writerow([self._cells_label(c), f"{e1:.6e}", "" if o1 is None else f"{o1:.4f}",
                        f"{ei:.6e}", "" if oi is None else f"{oi:.4f}"])
        return buf.getvalue()

    def format_table(self):
        lines = [f"{'K':>10} {'L1 error':>12} {'order':>6} {'Linf error':>12} {'order':>6}"]
        for c, e1, o1, ei, oi in self.rows():
            fo = (lambda o: "" if o is None else f"{o:.2f}")
            lines.append(f"{self._cells_label(c):>10} {e1:12.3e} {fo(o1):>6} {ei:12.3e} {fo(oi):>6}")
        return "\n".join(lines)


def convergence_study(problem, degree, limiter="cswen", resolutions=(20, 40, 80, 160, 320), mesh="perturbed",
                      seed=0, characteristic=True, cfl=None, t_end=None, indicator_ck=1.0, progress=None):
    """Run ``problem`` on each resolution and tabulate its errors.

    ``resolutions`` holds cell counts (one per axis is replicated in 2D).
    """
    from .problems import get_problem, run_problem

    spec = get_problem(problem) if isinstance(problem, str) else problem
    if spec.oracle is None:
        raise ConfigError(f"{spec.id} has no exact or reference solution")
    report = ErrorReport(meta={"problem": spec.id, "degree": degree, "limiter": limiter, "mesh": mesh,
                               "seed": seed, "characteristic": "on" if characteristic else "off",
                               "cfl": cfl, "reference": spec.reference})
    for K in resolutions:
        cells = (K,) * spec.ndim if np.isscalar(K) else tuple(K)
        res = run_problem(spec, degree=degree, cells=cells, limiter=limiter, characteristic=characteristic,
                          mesh=mesh, seed=seed, cfl=cfl, t_end=t_end, indicator_ck=indicator_ck)
        l1, linf = error_norms(res.sol, spec.oracle, res.config.t_end, spec.error_var)
        report.add(cells if spec.ndim == 2 else cells[0], l1, linf)
        report.meta["cfl"] = res.config.cfl
        if progress is not None:
            progress(res, l1, linf)
    return report


__all__ = ["ErrorReport", "convergence_study", "error_norms", "observed_orders"]
