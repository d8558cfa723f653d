"""Scaling limiter keeping density and pressure positive at check points.

Each cell polynomial is contracted towards its mean, ``u <- u_bar + theta
(u - u_bar)``, first to lift the density and then the pressure above
``eps``.  Because pressure is concave in the conserved variables, the
admissible ``theta`` along each segment ``u_bar -> u(x_q)`` is found by
bisection on ``[0, 1]``.
"""
import numpy as np

from ..basis import BasisSet, apply_matrix, gauss_rule, tensor_apply
from ..exceptions import StateError

EPS_POSITIVITY = 1e-13
ROUNDING_FACTOR = 64.0


def check_points(degree):
    """Reference points where positivity is enforced: volume Gauss points and both ends."""
    rule = gauss_rule(degree + 2)
    return np.concatenate([[-1.0], rule.points, [1.0]])


def _values(coeffs, V, ndim):
    if ndim == 1:
        return apply_matrix(coeffs, V.T)          # (m, n, q)
    vals = tensor_apply(coeffs, V)                # (m, n, q, q)
    return vals.reshape(vals.shape[:2] + (-1,))


def _pressure_theta(mean, vals, flux, eps, iters=60):
    """Largest theta in [0, 1] with p(mean + theta (vals - mean)) >= eps at every point."""
    p = flux.pressure(vals)
    eps = np.asarray(eps, dtype=float)[..., None]
    bad = p < eps
    theta = np.ones(vals.shape[1:-1])
    if not np.any(bad):
        return theta
    lo = np.zeros(p.shape)
    hi = np.ones(p.shape)
    d = vals - mean[..., None]
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        ok = flux.pressure(mean[..., None] + mid * d) >= eps
        lo = np.where(ok, mid, lo)
        hi = np.where(ok, hi, mid)
    t_pt = np.where(bad, lo, 1.0)
    return np.min(t_pt, axis=-1)


def positivity_fix(coeffs, degree, flux, ndim=1, eps=EPS_POSITIVITY):
    """Return ``(coeffs, theta)`` with every cell scaled to admissible check-point values.

    ``coeffs`` has the layout of :class:`~cswenodg.dg.DGSolution`; the cell
    means are untouched.  Raises :class:`StateError` when a mean itself is
    not admissible.
    """
    U = np.array(coeffs, dtype=float, copy=True)
    m = U.shape[0]
    flat = U.reshape((m, -1) + U.shape[1 + ndim:])  # (m, n, Np[, Np])
    V = BasisSet(degree)(check_points(degree))
    mean_scale = np.sqrt(2.0) if ndim == 1 else 2.0
    mean = (flat[..., 0] if ndim == 1 else flat[..., 0, 0]) / mean_scale
    rho_bar = mean[0]
    p_bar = flux.pressure(mean)
    if np.any(~(rho_bar > eps)) or np.any(~(p_bar > eps)):
        bad = int(np.argmax(~((rho_bar > eps) & (p_bar > eps))))
        cell = int(bad) if ndim == 1 else tuple(int(i) for i in np.unravel_index(bad, U.shape[1:3]))
        raise StateError("cell mean has non-positive density or pressure", cell=cell)

    def scale(theta, rows):
        sl = (rows, slice(None)) + (Ellipsis,)
        hi = flat[sl].copy()
        if ndim == 1:
            hi[..., 1:] *= theta[:, None]
        else:
            keep = hi[..., 0, 0].copy()
            hi *= theta[:, None, None]
            hi[..., 0, 0] = keep
        flat[sl] = hi

    vals = _values(flat, V, ndim)
    rho_min = vals[0].min(axis=-1)
    theta1 = np.where(rho_min < eps, (rho_bar - eps) / np.maximum(rho_bar - rho_min, 1e-300), 1.0)
    theta1 = np.clip(theta1, 0.0, 1.0)
    if np.any(theta1 < 1.0):
        scale(theta1, 0)
        vals = _values(flat, V, ndim)
    # p = (gamma - 1)(E - kinetic) loses about eps_machine * E to rounding, so a
    # floor below that scale can come back slightly negative when re-evaluated
    eps_p = np.minimum(np.maximum(eps, ROUNDING_FACTOR * np.finfo(float).eps * np.abs(mean[-1])), 0.5 * p_bar)
    theta2 = _pressure_theta(mean, vals, flux, eps_p)
    if np.any(theta2 < 1.0):
        scale(theta2, slice(None))
    theta = np.minimum(theta1, theta2)
    return flat.reshape(U.shape), theta.reshape(U.shape[1:1 + ndim])


__all__ = ["EPS_POSITIVITY", "check_points", "positivity_fix"]
