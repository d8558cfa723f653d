"""WENO reconstruction kernels on a stencil of ``2N + 1`` cells.

Geometry is expressed in the coordinate ``xi = (x - x_j) / h_j`` of the
troubled cell ``I_j``, so the cell itself is ``[-1/2, 1/2]`` and every
quantity below (rows, linear weights, smoothness forms) depends only on the
normalised widths.  Small stencil ``S_i`` consists of stencil cells
``i, ..., i + N`` (stencil cell ``N`` is the troubled cell); the large
stencil ``T`` is all ``2N + 1`` cells.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..basis import gauss_rule
from ..exceptions import InvalidArgumentError

EPSILON = 1e-6
SPLIT_THETA = 3.0


def _edges(widths, N):
    """Cell edges in ``xi`` with the troubled cell (index ``N``) at ``[-1/2, 1/2]``."""
    w = np.asarray(widths, dtype=float)
    left = -0.5 - np.concatenate([np.cumsum(w[:N][::-1])[::-1], [0.0]])
    right = 0.5 + np.concatenate([[0.0], np.cumsum(w[N + 1:])])
    return np.concatenate([left[:-1], [-0.5, 0.5], right[1:]])


def _average_matrix(edges, degree):
    """``A[c, k]`` = average of ``xi^k`` over cell ``c``."""
    a, b = edges[:-1, None], edges[1:, None]
    k = np.arange(degree + 1)
    return (b ** (k + 1) - a ** (k + 1)) / ((k + 1) * (b - a))


def _interp_rows(edges, point):
    """Row ``r`` with ``r @ averages`` = value at ``point`` of the polynomial
    of degree ``len(edges) - 2`` matching those cell averages."""
    deg = len(edges) - 2
    A = _average_matrix(edges, deg)
    phi = point ** np.arange(deg + 1)
    return np.linalg.solve(A.T, phi)


@dataclass(frozen=True, eq=False)
class ReconstructionOperator:
    """Reconstruction data for one stencil geometry and one point.

    Attributes
    ----------
    rows : ndarray, shape (N + 1, 2N + 1)
        ``rows[i] @ averages = p_i(x_G)``, zero outside ``S_i``.
    q_row : ndarray, shape (2N + 1,)
        ``q_row @ averages = Q(x_G)``.
    gamma : ndarray, shape (N + 1,)
        Linear weights, ``gamma @ rows == q_row``.
    point : float
        Reconstruction point in the troubled cell's reference coordinate ``r``.
    """

    rows: np.ndarray
    q_row: np.ndarray
    gamma: np.ndarray
    point: float
    residual: float

    @property
    def table(self):
        """``(N + 2, 2N + 1)`` stack of the p-rows followed by the Q-row."""
        return np.vstack([self.rows, self.q_row])


def reconstruction_operator(widths, point, degree):
    """Rows and linear weights at reference point ``point`` of the troubled cell.

    Parameters
    ----------
    widths : sequence of 2N + 1 floats
        Stencil cell widths (any common scale; only ratios matter).
    point : float
        ``r`` in ``[-1, 1]`` of the troubled cell (``xi = r / 2``).
    degree : int
        DG degree ``N``.
    """
    N = int(degree)
    w = np.asarray(widths, dtype=float)
    if N < 1 or w.shape != (2 * N + 1,):
        raise InvalidArgumentError(f"degree {N} needs {2 * N + 1} stencil widths")
    if not np.all(w > 0):
        raise InvalidArgumentError("stencil widths must be positive")
    if not -1.0 <= point <= 1.0:
        raise InvalidArgumentError("reconstruction point must lie in the troubled cell")
    edges = _edges(w / w[N], N)
    xi = 0.5 * point
    rows = np.zeros((N + 1, 2 * N + 1))
    for i in range(N + 1):
        rows[i, i:i + N + 1] = _interp_rows(edges[i:i + N + 2], xi)
    q_row = _interp_rows(edges, xi)
    gamma, *_ = np.linalg.lstsq(rows.T, q_row, rcond=None)
    residual = float(np.max(np.abs(rows.T @ gamma - q_row)))
    return ReconstructionOperator(rows=rows, q_row=q_row, gamma=gamma, point=float(point), residual=residual)


def smoothness_forms(widths, degree):
    """Quadratic forms ``B_i`` with ``beta_i = a^T B_i a`` for stencil averages ``a``.

    ``beta_i = sum_l int_{I_j} h_j^(2l-1) (d^l p_i / dx^l)^2 dx``, which in
    ``xi`` reads ``sum_l int_{-1/2}^{1/2} (d^l p_i / dxi^l)^2 dxi``.
    Returns an array of shape ``(N + 1, 2N + 1, 2N + 1)``.
    """
    N = int(degree)
    w = np.asarray(widths, dtype=float)
    edges = _edges(w / w[N], N)
    rule = gauss_rule(max(N, 1))
    xq = 0.5 * rule.points
    wq = 0.5 * rule.weights
    k = np.arange(N + 1)
    forms = np.zeros((N + 1, 2 * N + 1, 2 * N + 1))
    for i in range(N + 1):
        Ainv = np.linalg.inv(_average_matrix(edges[i:i + N + 2], N))  # averages -> monomial coeffs
        local = np.zeros((N + 1, N + 1))
        for l in range(1, N + 1):
            # d^l xi^k = k!/(k-l)! xi^(k-l)
            fac = np.array([np.prod(np.arange(kk - l + 1, kk + 1)) if kk >= l else 0.0 for kk in k])
            Dl = fac * np.where(k >= l, xq[:, None] ** np.maximum(k - l, 0), 0.0)  # (q, N+1)
            G = Dl @ Ainv
            local += G.T @ (wq[:, None] * G)
        forms[i, i:i + N + 1, i:i + N + 1] = local
    return forms


def smoothness_indicators(averages, widths, degree):
    """``beta_0 .. beta_N`` for stencil averages (last axis of length ``2N + 1``)."""
    B = smoothness_forms(widths, degree)
    a = np.asarray(averages, dtype=float)
    return np.einsum("...s,ist,...t->...i", a, B, a)


def nonlinear_weights(gamma, beta, eps=EPSILON):
    """``omega_i = bar_i / sum bar`` with ``bar_i = gamma_i / (eps + beta_i)^2``.

    ``gamma`` must be non-negative (split negative weights first, see
    :func:`split_weights`); ``beta`` broadcasts with leading batch axes.
    """
    gamma = np.asarray(gamma, dtype=float)
    bar = gamma / (eps + np.asarray(beta, dtype=float)) ** 2
    return bar / np.sum(bar, axis=-1, keepdims=True)


def split_weights(gamma, theta=SPLIT_THETA):
    """Split linear weights into positive groups: ``gamma = s_p g_p - s_m g_m``.

    Returns ``(g_p, s_p, g_m, s_m)`` with ``g_p``, ``g_m`` non-negative and
    summing to one (``g_m`` is ``None`` when every weight is positive).
    """
    gamma = np.asarray(gamma, dtype=float)
    if np.all(gamma > 0):
        return gamma, 1.0, None, 0.0
    gp = 0.5 * (gamma + theta * np.abs(gamma))
    gm = gp - gamma
    sp, sm = gp.sum(), gm.sum()
    return gp / sp, sp, gm / sm, sm


def weno_combine(gamma, p_values, beta, eps=EPSILON):
    """``sum_i omega_i p_i`` with negative linear weights handled by splitting."""
    gp, sp, gm, sm = split_weights(gamma)
    out = sp * np.sum(nonlinear_weights(gp, beta, eps) * p_values, axis=-1)
    if gm is not None:
        out -= sm * np.sum(nonlinear_weights(gm, beta, eps) * p_values, axis=-1)
    return out


def weno_point_value(averages, widths, point, degree, eps=EPSILON):
    """Reconstructed value at reference point ``point`` of the troubled cell."""
    op = reconstruction_operator(widths, point, degree)
    a = np.asarray(averages, dtype=float)
    p = a @ op.rows.T
    return weno_combine(op.gamma, p, smoothness_indicators(a, widths, degree), eps)


def reconstruction_points(degree):
    """Points and weights used to rebuild the troubled-cell polynomial.

    Two-point Gauss for ``N = 1``, four-point Gauss-Lobatto for ``N = 2`` and
    ``(N + 1)``-point Gauss otherwise; each is exact to degree ``2N + 1``.
    """
    from ..basis import gauss_lobatto_rule

    if degree == 2:
        return gauss_lobatto_rule(4)
    return gauss_rule(degree + 1)


@dataclass(frozen=True, eq=False)
class StencilOperators:
    """Everything the limiter needs for one stencil geometry."""

    rows: np.ndarray      # (G, N + 1, 2N + 1)
    gammas: tuple         # per point: (g_p, s_p, g_m, s_m)
    forms: np.ndarray     # (N + 1, 2N + 1, 2N + 1)
    points: np.ndarray    # (G,)
    weights: np.ndarray   # (G,)


@lru_cache(maxsize=4096)
def stencil_operators(widths, degree):
    """Cached :class:`StencilOperators` keyed by the normalised width tuple."""
    rule = reconstruction_points(degree)
    ops = [reconstruction_operator(widths, r, degree) for r in rule.points]
    rows = np.stack([op.rows for op in ops])
    rows.setflags(write=False)
    forms = smoothness_forms(widths, degree)
    forms.setflags(write=False)
    return StencilOperators(rows=rows, gammas=tuple(split_weights(op.gamma) for op in ops),
                            forms=forms, points=rule.points, weights=rule.weights)


def width_key(widths, digits=12):
    """Hashable key of widths normalised by the troubled (middle) cell."""
    w = np.asarray(widths, dtype=float)
    return tuple(np.round(w / w[w.size // 2], digits).tolist())
