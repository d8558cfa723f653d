"""Orthonormal Legendre basis, Gauss / Gauss-Lobatto rules and cell operators.

The modal basis is orthonormal on the reference element ``[-1, 1]``::

    psi_n(r) = sqrt((2n + 1) / 2) * P_n(r)

so the physical mass matrix of a cell of width ``h`` is ``(h / 2) * I`` and
the cell average of ``u_h`` is ``u_0 / sqrt(2)``.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import legendre as npleg

from .exceptions import InvalidArgumentError


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    points: np.ndarray
    weights: np.ndarray
    exactness: int
    kind: str = "gauss"

    def __len__(self):
        return self.points.size

    def integrate(self, f):
        """Integrate ``f`` over ``[-1, 1]`` (``f`` maps points to values)."""
        return np.dot(self.weights, f(self.points))


def _freeze(*arrays):
    for a in arrays:
        a.setflags(write=False)
    return arrays


_S30 = np.sqrt(30.0)
_GAUSS_CLOSED = {
    1: ([0.0], [2.0]),
    2: ([-1 / np.sqrt(3.0), 1 / np.sqrt(3.0)], [1.0, 1.0]),
    3: ([-np.sqrt(0.6), 0.0, np.sqrt(0.6)], [5 / 9, 8 / 9, 5 / 9]),
    4: (
        [
            -np.sqrt(525 + 70 * _S30) / 35,
            -np.sqrt(525 - 70 * _S30) / 35,
            np.sqrt(525 - 70 * _S30) / 35,
            np.sqrt(525 + 70 * _S30) / 35,
        ],
        [(18 - _S30) / 36, (18 + _S30) / 36, (18 + _S30) / 36, (18 - _S30) / 36],
    ),
}

_GLL_CLOSED = {
    2: ([-1.0, 1.0], [1.0, 1.0]),
    3: ([-1.0, 0.0, 1.0], [1 / 3, 4 / 3, 1 / 3]),
    4: ([-1.0, -1 / np.sqrt(5.0), 1 / np.sqrt(5.0), 1.0], [1 / 6, 5 / 6, 5 / 6, 1 / 6]),
}


@lru_cache(maxsize=None)
def gauss_rule(n):
    """``n``-point Gauss-Legendre rule, exact for degree ``2n - 1``."""
    if int(n) != n or not 1 <= n <= 8:
        raise InvalidArgumentError(f"Gauss rule supports 1..8 points, got {n}")
    n = int(n)
    if n in _GAUSS_CLOSED:
        x, w = (np.array(a, dtype=float) for a in _GAUSS_CLOSED[n])
    else:
        x, w = npleg.leggauss(n)
    return QuadratureRule(*_freeze(x, w), exactness=2 * n - 1, kind="gauss")


@lru_cache(maxsize=None)
def gauss_lobatto_rule(n):
    """``n``-point Gauss-Lobatto rule (endpoints included), exact for degree ``2n - 3``."""
    if int(n) != n or n < 2:
        raise InvalidArgumentError(f"Gauss-Lobatto rule needs n >= 2, got {n}")
    n = int(n)
    if n in _GLL_CLOSED:
        x, w = (np.array(a, dtype=float) for a in _GLL_CLOSED[n])
    else:
        # interior nodes are the roots of P'_{n-1}; polish with Newton
        c = np.zeros(n)
        c[-1] = 1.0
        dc = npleg.legder(c)
        ddc = npleg.legder(dc)
        xi = np.sort(np.real(npleg.legroots(dc)))
        for _ in range(10):
            xi = xi - npleg.legval(xi, dc) / npleg.legval(xi, ddc)
        x = np.concatenate([[-1.0], xi, [1.0]])
        w = 2.0 / (n * (n - 1) * npleg.legval(x, c) ** 2)
    return QuadratureRule(*_freeze(x, w), exactness=2 * n - 3, kind="lobatto")


def affine_map(x_l, x_r, r):
    """Map reference ``r`` in ``[-1, 1]`` to ``x_l + (1 + r) h / 2``."""
    r = np.asarray(r, dtype=float)
    if np.any(np.abs(r) > 1.0 + 1e-14):
        raise InvalidArgumentError("reference coordinate outside [-1, 1]")
    return x_l + 0.5 * (1.0 + r) * (x_r - x_l)


def inverse_affine_map(x_l, x_r, x):
    x = np.asarray(x, dtype=float)
    h = x_r - x_l
    tol = 1e-14 * max(abs(x_l), abs(x_r), h)
    if np.any(x < x_l - tol) or np.any(x > x_r + tol):
        raise InvalidArgumentError("physical coordinate outside the cell")
    return 2.0 * (x - x_l) / h - 1.0


class BasisSet:
    """Reference-orthonormal Legendre basis of degree ``N``.

    ``basis(r)`` returns the ``(len(r), N + 1)`` table of ``psi_n(r_i)`` and
    ``basis.derivative(r)`` the table of ``d psi_n / dr``.
    """

    def __init__(self, degree):
        if int(degree) != degree or degree < 0:
            raise InvalidArgumentError("basis degree must be a non-negative integer")
        self.degree = int(degree)
        self.scale = np.sqrt((2 * np.arange(self.degree + 1) + 1) / 2.0)

    @property
    def size(self):
        return self.degree + 1

    def __call__(self, r):
        r = np.atleast_1d(np.asarray(r, dtype=float))
        return npleg.legvander(r, self.degree) * self.scale

    def derivative(self, r, order=1):
        r = np.atleast_1d(np.asarray(r, dtype=float))
        out = np.empty((r.size, self.size))
        for n in range(self.size):
            c = np.zeros(self.size)
            c[n] = self.scale[n]
            out[:, n] = npleg.legval(r, npleg.legder(c, order)) if n >= order else 0.0
        return out

    @property
    def parity(self):
        """``psi_n(-r) = parity[n] * psi_n(r)``."""
        return (-1.0) ** np.arange(self.size)

    def __repr__(self):
        return f"BasisSet(degree={self.degree})"


@dataclass(frozen=True, eq=False)
class CellOperators:
    mass: np.ndarray
    stiffness: np.ndarray


def build_cell_operators(x_l, x_r, basis, rule=None):
    """Physical mass ``int psi_i psi_j dx`` and stiffness ``int psi_i dpsi_j/dx dx``."""
    h = x_r - x_l
    if not h > 0:
        raise InvalidArgumentError("cell must have positive width")
    rule = rule or gauss_rule(basis.degree + 2)
    V = basis(rule.points)
    D = basis.derivative(rule.points)
    w = rule.weights
    mass = 0.5 * h * (V.T * w) @ V
    # d/dx = (2/h) d/dr and dx = (h/2) dr cancel
    stiffness = (V.T * w) @ D
    return CellOperators(mass=mass, stiffness=stiffness)


@lru_cache(maxsize=None)
def reference_tables(degree, npts=None):
    """Quadrature tables used by the DG right-hand side (cached per degree).

    Returns a dict with the volume rule, basis values / derivatives at its
    points and the endpoint traces ``psi(-1)``, ``psi(+1)``.
    """
    basis = BasisSet(degree)
    rule = gauss_rule(npts or degree + 2)
    V = basis(rule.points)
    D = basis.derivative(rule.points)
    ops = build_cell_operators(-1.0, 1.0, basis, rule)
    tables = {
        "basis": basis,
        "rule": rule,
        "V": V,
        "D": D,
        "wV": V * rule.weights[:, None],
        "wD": D * rule.weights[:, None],
        "S": ops.stiffness,
        "left": basis(-1.0)[0],
        "right": basis(1.0)[0],
    }
    # Kronecker forms of the tensor-product operators (flattened (a, b) index)
    L, R, VT = tables["left"][:, None], tables["right"][:, None], V.T
    tables["kron_V"] = np.kron(V, V).T
    tables["kron_vol_x"] = np.kron(tables["wD"], tables["wV"])
    tables["kron_vol_y"] = np.kron(tables["wV"], tables["wD"])
    tables["kron_trace_x"] = np.hstack([np.kron(L, VT), np.kron(R, VT)])
    tables["kron_trace_y"] = np.hstack([np.kron(VT, L), np.kron(VT, R)])
    for a in tables.values():
        if isinstance(a, np.ndarray):
            a.setflags(write=False)
    return tables


def apply_matrix(A, M):
    """``A @ M`` over the trailing axis of ``A`` as a single flat GEMM.

    Equivalent to ``A @ M`` for a 2D ``M`` but avoids numpy's per-cell loop
    over tiny stacked matrices.
    """
    A = np.asarray(A, dtype=float)
    M = np.asarray(M, dtype=float)
    lead = A.shape[:-1]
    return (A.reshape(-1, A.shape[-1]) @ M).reshape(lead + (M.shape[1],))


def tensor_apply(U, Mx, My=None, kron=None):
    """``out[..., g, h] = sum_ab Mx[g, a] My[h, b] U[..., a, b]``.

    ``My`` defaults to ``Mx``.  Uses the Kronecker product so the whole
    contraction is one GEMM; pass a precomputed ``kron(Mx, My).T`` as
    ``kron`` to skip building it.
    """
    My = Mx if My is None else My
    U = np.asarray(U, dtype=float)
    lead = U.shape[:-2]
    K = np.kron(Mx, My).T if kron is None else kron
    out = apply_matrix(U.reshape(lead + (-1,)), K)
    return out.reshape(lead + (Mx.shape[0], My.shape[0]))


def project(func, x_l, x_r, basis, npts=None):
    """L2 projection of ``func`` on one cell (vectorised over cells).

    ``x_l``/``x_r`` may be arrays of cell bounds; ``func`` receives physical
    points of shape ``(..., nq)`` and returns ``(m, ..., nq)``.
    """
    rule = gauss_rule(npts or basis.degree + 2)
    x_l = np.asarray(x_l, dtype=float)[..., None]
    x_r = np.asarray(x_r, dtype=float)[..., None]
    xq = x_l + 0.5 * (1.0 + rule.points) * (x_r - x_l)
    vals = np.asarray(func(xq), dtype=float)
    return vals @ (basis(rule.points) * rule.weights[:, None])
