"""KXRCF troubled-cell indicator.

A cell is flagged when the jump of the solution across its inflow boundary,
normalised by ``h^((N+1)/2)`` and the cell's maximum ``|u_h|``, exceeds the
threshold ``C_k``.  Smooth solutions make the jump ``O(h^(N+1))``, so the
ratio tends to zero under refinement, while at a discontinuity it grows
like ``h^(-(N+1)/2)``.
"""
from functools import lru_cache

import numpy as np

from .basis import BasisSet, apply_matrix, gauss_rule, tensor_apply
from .boundary import BoundarySpec
from .dg import DGSolution, make_operator
from .exceptions import InvalidArgumentError

TINY = 1e-300


@lru_cache(maxsize=None)
def _norm_table(degree):
    """Basis values at the cell's volume Gauss points and both endpoints."""
    rule = gauss_rule(degree + 2)
    pts = np.concatenate([[-1.0], rule.points, [1.0]])
    V = BasisSet(degree)(pts)
    V.setflags(write=False)
    return V


@lru_cache(maxsize=None)
def _norm_kron(degree):
    V = _norm_table(degree)
    K = np.kron(V, V).T
    K.setflags(write=False)
    return K


def _ratio(jump, h, degree, norm):
    return np.abs(jump) / (h ** (0.5 * (degree + 1)) * np.maximum(norm, TINY))


def kxrcf_detect(sol, flux, threshold=1.0, bc=None, t=0.0):
    """Boolean mask of troubled cells.

    Parameters
    ----------
    sol : DGSolution
    flux : FluxModel
        Supplies the indicator variables (density and energy for Euler) and
        the signed speed that identifies inflow faces.
    threshold : float
        ``C_k``; cells whose normalised inflow jump exceeds it are flagged.
    bc : BoundarySpec, optional
        Defaults to periodic; ghost traces at the domain edge come from it.

    Returns
    -------
    ndarray of bool
        Shape ``(K,)`` in 1D and ``(2, Kx, Ky)`` in 2D, where entry ``d``
        flags the cells to be limited along axis ``d``.
    """
    if not isinstance(sol, DGSolution):
        raise InvalidArgumentError("kxrcf_detect expects a DGSolution")
    if sol.degree < 1:
        raise InvalidArgumentError("troubled-cell detection needs degree >= 1")
    bc = bc or BoundarySpec.periodic_all(sol.ndim)
    op = make_operator(sol.mesh, sol.degree, flux, bc)
    U = sol.coeffs
    avg = sol.cell_averages()
    vars_ = list(flux.indicator_vars)
    N = sol.degree
    if sol.ndim == 1:
        left, right = op.interface_states(U, t)
        speed = flux.advection_speed(avg, 0)
        # jumps seen from inside the cell at its left and right faces
        jl = right[:, :-1] - left[:, :-1]
        jr = left[:, 1:] - right[:, 1:]
        jump = np.where(speed > 0, jl, np.where(speed < 0, jr, 0.0))
        norm = np.max(np.abs(apply_matrix(U[vars_], _norm_table(N).T)), axis=-1)
        h = np.asarray(sol.mesh.widths)
        ratio = _ratio(jump[vars_], h, N, norm)
        return np.any(ratio > threshold, axis=0)

    w = op.tables["rule"].weights
    V = _norm_table(N)
    norm = np.max(np.abs(tensor_apply(U[vars_], V, kron=_norm_kron(N))), axis=(-2, -1))
    mask = np.zeros((2,) + sol.mesh.shape, dtype=bool)
    for axis in (0, 1):
        left, right = op.interface_states(U, t, axis)
        # face average of the jump: (1/2) sum_q w_q (.)
        lf = 0.5 * (left[vars_] @ w)
        rf = 0.5 * (right[vars_] @ w)
        n = lf.shape[1 + axis]
        lo = np.arange(n - 1)
        hi = lo + 1
        jl = np.take(rf, lo, axis=1 + axis) - np.take(lf, lo, axis=1 + axis)
        jr = np.take(lf, hi, axis=1 + axis) - np.take(rf, hi, axis=1 + axis)
        speed = flux.advection_speed(avg, axis)
        jump = np.where(speed > 0, jl, np.where(speed < 0, jr, 0.0))
        h = (sol.mesh.x.widths[:, None] if axis == 0 else sol.mesh.y.widths[None, :])
        mask[axis] = np.any(_ratio(jump, h, N, norm) > threshold, axis=0)
    return mask


__all__ = ["kxrcf_detect"]
