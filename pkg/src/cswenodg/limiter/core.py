"""Troubled-cell limiting: stencil assembly, reconstruction and recovery.

Two stencil geometries share the same kernels:

``cswen``
    the immediate neighbours ``I_{j-1}``, ``I_{j+1}`` are each split into
    ``N`` equal subcells whose averages are exact averages of the
    neighbour's DG polynomial, giving ``2N + 1`` cells inside ``I_{j-1} u
    I_j u I_{j+1}``;
``weno``
    the full cells ``I_{j-N} .. I_{j+N}``.

In 2D the reconstruction runs dimension by dimension: along x on every
transverse reconstruction ordinate (and likewise along y), the 1D pipeline
is applied to the x-averages of ``u(., y_b)``; the resulting tensor grid
of point values is projected back onto the ``Q^N`` basis.
"""
from functools import lru_cache

import numpy as np

from ..basis import BasisSet, gauss_rule
from ..boundary import BoundarySpec
from ..dg import DGSolution, make_operator
from ..exceptions import InvalidArgumentError
from ..indicator import kxrcf_detect
from .moments import recover_moments, recover_moments_2d
from .positivity import EPS_POSITIVITY, positivity_fix
from .weno import EPSILON, reconstruction_points, stencil_operators

VARIANTS = ("cswen", "weno")
SQRT2 = np.sqrt(2.0)


@lru_cache(maxsize=None)
def subcell_average_matrix(degree, parts=None):
    """``A[q, n]`` = average of ``psi_n`` over the ``q``-th of ``parts`` equal subcells of ``[-1, 1]``."""
    parts = parts or degree
    basis = BasisSet(degree)
    rule = gauss_rule(degree + 1)
    out = np.empty((parts, degree + 1))
    for q in range(parts):
        a = -1.0 + 2.0 * q / parts
        b = a + 2.0 / parts
        r = 0.5 * (a + b) + 0.5 * (b - a) * rule.points
        out[q] = 0.5 * rule.weights @ basis(r)
    out.setflags(write=False)
    return out


def subdivide_neighbors(left, center, right, widths, degree):
    """Averages and widths of the compact ``2N + 1``-cell stencil.

    Parameters
    ----------
    left, center, right : ndarray, shape (..., N + 1)
        Modal coefficients of ``I_{j-1}``, ``I_j`` and ``I_{j+1}``.
    widths : ndarray, shape (..., 3)
        Widths of the three cells.

    Returns
    -------
    averages : ndarray, shape (..., 2N + 1)
    sub_widths : ndarray, shape (..., 2N + 1)
    """
    N = int(degree)
    if N < 1:
        raise InvalidArgumentError("subcell stencils need degree >= 1")
    A = subcell_average_matrix(N)
    left, center, right = (np.asarray(a, dtype=float) for a in (left, center, right))
    avgs = np.concatenate([left @ A.T, center[..., :1] / SQRT2, right @ A.T], axis=-1)
    w = np.asarray(widths, dtype=float)
    sub = np.concatenate([np.repeat(w[..., :1] / N, N, axis=-1), w[..., 1:2],
                          np.repeat(w[..., 2:] / N, N, axis=-1)], axis=-1)
    return avgs, sub


def _stencil(C, W, N, variant):
    """Stencil averages / widths from neighbour coefficients ``C (m, n, 2L+1, N+1)``."""
    if variant == "cswen":
        return subdivide_neighbors(C[:, :, 0], C[:, :, 1], C[:, :, 2], W, N)
    return C[..., 0] / SQRT2, W


def _group(widths):
    """Split cells into groups of identical normalised stencil geometry."""
    N2 = widths.shape[-1]
    norm = np.round(widths / widths[:, N2 // 2:N2 // 2 + 1], 12)
    if np.all(norm == norm[0]):
        return [(tuple(norm[0].tolist()), slice(None))]
    keys, inverse = np.unique(norm, axis=0, return_inverse=True)
    inverse = np.ravel(inverse)
    return [(tuple(k.tolist()), np.nonzero(inverse == g)[0]) for g, k in enumerate(keys)]


def reconstruct_points(C, W, degree, variant="cswen", flux=None, axis=0,
                       characteristic=False, means=None, eps=EPSILON):
    """WENO point values at the reconstruction points of each troubled cell.

    Parameters
    ----------
    C : ndarray, shape (m, n, 2L + 1, N + 1)
        Modal coefficients of the stencil cells (``L = 1`` for ``cswen``,
        ``L = N`` for ``weno``); index ``L`` is the troubled cell.
    W : ndarray, shape (n, 2L + 1)
        Widths of those cells.
    means : ndarray, shape (m, n, 2L + 1), optional
        Cell means used for the characteristic reference states (default:
        the means of ``C``).

    Returns
    -------
    ndarray, shape (m, n, G)
    """
    N = int(degree)
    if variant not in VARIANTS:
        raise InvalidArgumentError(f"unknown limiter variant {variant!r}")
    m, n = C.shape[:2]
    L = (C.shape[2] - 1) // 2
    avgs, widths = _stencil(C, W, N, variant)
    use_char = characteristic and flux is not None and flux.is_system
    if use_char:
        means = C[..., 0] / SQRT2 if means is None else means
        ref_lo = 0.5 * (means[:, :, L] + means[:, :, L - 1])
        ref_hi = 0.5 * (means[:, :, L] + means[:, :, L + 1])
    rule = reconstruction_points(N)
    out = np.empty((m, n, rule.points.size))
    for key, sel in _group(np.asarray(widths, dtype=float)):
        ops = stencil_operators(key, N)
        a = avgs[:, sel]
        sides = {}
        for q, r in enumerate(ops.points):
            side = -1 if r < 0 else (1 if r > 0 else 0)
            if side not in sides:
                if use_char:
                    ref = {-1: ref_lo, 1: ref_hi, 0: means[:, :, L]}[side][:, sel]
                    Lm, Rm = flux.eigenvectors(ref, axis)
                    w = np.einsum("nij,jns->ins", Lm, a)
                else:
                    w, Rm = a, None
                beta = np.einsum("mns,ist,mnt->mni", w, ops.forms, w)
                sides[side] = (w, Rm, beta)
            w, Rm, beta = sides[side]
            p = w @ ops.rows[q].T
            gp, sp, gm, sm = ops.gammas[q]
            bar = gp / (eps + beta) ** 2
            val = sp * np.sum(bar * p, axis=-1) / np.sum(bar, axis=-1)
            if gm is not None:
                bar = gm / (eps + beta) ** 2
                val -= sm * np.sum(bar * p, axis=-1) / np.sum(bar, axis=-1)
            if Rm is not None:
                val = np.einsum("nij,jn->in", Rm, val)
            out[:, sel, q] = val
    return out


def _layers(variant, degree):
    return 1 if variant == "cswen" else int(degree)


def _record_reads(record, cells, reads, K, periodic):
    """Log the mesh cells read by each troubled cell (ghosts appear as -1 / K)."""
    if record is None:
        return
    reads = reads % K if periodic else np.clip(reads, -1, K)
    for c, row in zip(cells, reads):
        record.setdefault(int(c), set()).update(int(r) for r in row)


def limit_1d(U, mask, op, t=0.0, variant="cswen", characteristic=True, eps=EPSILON, record=None):
    """Limited copy of 1D coefficients ``U`` for the cells where ``mask`` holds.

    ``record`` (a dict) collects, per limited cell, the set of mesh cells
    whose coefficients entered its reconstruction.
    """
    U = np.array(U, dtype=float, copy=True)
    J = np.nonzero(mask)[0]
    if J.size == 0:
        return U
    N = op.degree
    L = _layers(variant, N)
    U_ext, w_ext = op.ghost_cells(U, t, L)
    idx = J[:, None] + np.arange(2 * L + 1)
    _record_reads(record, J, idx - L, U.shape[1], op.bc.periodic(0))
    C = U_ext[:, idx]
    vals = reconstruct_points(C, w_ext[idx], N, variant, op.flux, 0, characteristic, eps=eps)
    rule = reconstruction_points(N)
    U[:, J] = recover_moments(vals, rule, op.basis, U[:, J, 0])
    return U


def _line_values(U, cells, op, t, axis, variant, characteristic, eps, record=None):
    """Point values on the ``G x G`` grid of ``cells`` from limiting along ``axis``."""
    N = op.degree
    L = _layers(variant, N)
    I, J = cells
    U_ext, w_ext = op.ghost_cells(U, t, L, axis)
    off = np.arange(2 * L + 1)
    if record is not None:
        along, other = (I, J) if axis == 0 else (J, I)
        K = U.shape[1 + axis]
        reads = along[:, None] + off - L
        reads = reads % K if op.bc.periodic(axis) else np.clip(reads, -1, K)
        for a, o, row in zip(along, other, reads):
            cell = (int(a), int(o)) if axis == 0 else (int(o), int(a))
            read = {(int(r), int(o)) if axis == 0 else (int(o), int(r)) for r in row}
            record.setdefault(cell, set()).update(read)
    rule = reconstruction_points(N)
    Vg = op.basis(rule.points)                                  # (G, Np)
    G = rule.points.size
    if axis == 0:
        C = U_ext[:, I[:, None] + off, J[:, None]]              # (m, n, S, a, b)
        lines = np.moveaxis(C @ Vg.T, -1, 2)                    # (m, n, G_y, S, a)
    else:
        C = U_ext[:, I[:, None], J[:, None] + off]
        lines = np.moveaxis(np.swapaxes(C, -1, -2) @ Vg.T, -1, 2)  # (m, n, G_x, S, b)
    m, n = C.shape[:2]
    means = np.broadcast_to((C[..., 0, 0] / 2.0)[:, :, None, :], (m, n, G, 2 * L + 1))
    W = np.broadcast_to(w_ext[(I if axis == 0 else J)[:, None] + off][:, None, :], (n, G, 2 * L + 1))
    S = 2 * L + 1
    vals = reconstruct_points(lines.reshape(m, n * G, S, N + 1), W.reshape(n * G, S), N, variant,
                              op.flux, axis, characteristic, means.reshape(m, n * G, S), eps)
    vals = vals.reshape(m, n, G, G)  # (line ordinate, point along the axis)
    return np.swapaxes(vals, -1, -2) if axis == 0 else vals


def limit_2d(U, mask, op, t=0.0, variant="cswen", characteristic=True, eps=EPSILON, record=None):
    """Limited copy of 2D coefficients; ``mask`` has shape ``(2, Kx, Ky)``.

    ``record`` works as in :func:`limit_1d` with ``(i, j)`` cell keys.
    """
    U = np.array(U, dtype=float, copy=True)
    mask = np.asarray(mask, dtype=bool)
    if not mask.any():
        return U
    N = op.degree
    rule = reconstruction_points(N)
    G = rule.points.size
    total = np.zeros((U.shape[0],) + mask.shape[1:] + (G, G))
    count = np.zeros(mask.shape[1:])
    for axis in (0, 1):
        cells = np.nonzero(mask[axis])
        if cells[0].size == 0:
            continue
        total[:, cells[0], cells[1]] += _line_values(U, cells, op, t, axis, variant, characteristic, eps, record)
        count[cells] += 1
    I, J = np.nonzero(count)
    vals = total[:, I, J] / count[I, J][None, :, None, None]
    U[:, I, J] = recover_moments_2d(vals, rule, op.basis, U[:, I, J, 0, 0])
    return U


class Limiter:
    """Indicator + WENO reconstruction (+ optional positivity fix) for one run.

    Parameters
    ----------
    mesh, degree, flux, bc
        Discretisation the limiter acts on.
    variant : {"cswen", "weno", "none"}
    characteristic : bool
        Limit characteristic variables of Euler systems.
    threshold : float
        KXRCF constant ``C_k``.
    positivity : bool
        Apply the density/pressure scaling after limiting (Euler only).
    """

    def __init__(self, mesh, degree, flux, bc, variant="cswen", characteristic=True,
                 threshold=1.0, eps=EPSILON, positivity=False, eps_positivity=EPS_POSITIVITY):
        if variant not in VARIANTS + ("none",):
            raise InvalidArgumentError(f"unknown limiter variant {variant!r}")
        self.op = make_operator(mesh, degree, flux, bc)
        self.mesh = mesh
        self.degree = int(degree)
        self.flux = flux
        self.bc = bc
        self.variant = variant
        self.characteristic = bool(characteristic)
        self.threshold = float(threshold)
        self.eps = eps
        self.positivity = bool(positivity) and flux.is_system
        self.eps_positivity = eps_positivity
        self.ndim = 2 if mesh.__class__.__name__ == "Mesh2D" else 1
        self.flagged = 0
        self.calls = 0

    @property
    def active(self):
        return (self.variant != "none" and self.degree >= 1) or self.positivity

    def detect(self, U, t):
        return kxrcf_detect(DGSolution(self.mesh, self.degree, U), self.flux, self.threshold, self.bc, t)

    def __call__(self, U, t):
        self.calls += 1
        if self.variant != "none" and self.degree >= 1:
            mask = self.detect(U, t)
            self.flagged += int(np.count_nonzero(mask.any(axis=0) if self.ndim == 2 else mask))
            fn = limit_1d if self.ndim == 1 else limit_2d
            U = fn(U, mask, self.op, t, self.variant, self.characteristic, self.eps)
        if self.positivity:
            U, _ = positivity_fix(U, self.degree, self.flux, self.ndim, self.eps_positivity)
        return U


def limit_cell(sol, j, mask, variant="cswen", characteristic=True, flux=None, bc=None, t=0.0):
    """Coefficients of cell ``j`` after limiting (unchanged if ``mask[j]`` is false)."""
    if not mask[j]:
        return sol.coeffs[:, j].copy()
    flux, bc = _defaults(sol, flux, bc)
    single = np.zeros(sol.mesh.K, dtype=bool)
    single[j] = True
    op = make_operator(sol.mesh, sol.degree, flux, bc)
    return limit_1d(sol.coeffs, single, op, t, variant, characteristic)[:, j]


def limit_cell_2d(sol, cell, masks, variant="cswen", characteristic=True, flux=None, bc=None, t=0.0):
    """Coefficients of 2D cell ``(i, j)`` after limiting in its flagged directions."""
    i, j = cell
    masks = np.asarray(masks, dtype=bool)
    if not masks[:, i, j].any():
        return sol.coeffs[:, i, j].copy()
    flux, bc = _defaults(sol, flux, bc)
    single = np.zeros_like(masks)
    single[:, i, j] = masks[:, i, j]
    op = make_operator(sol.mesh, sol.degree, flux, bc)
    return limit_2d(sol.coeffs, single, op, t, variant, characteristic)[:, i, j]


def _defaults(sol, flux, bc):
    if flux is None:
        from ..physics import Burgers

        flux = Burgers(sol.ndim)
    return flux, bc or BoundarySpec.periodic_all(sol.ndim)
