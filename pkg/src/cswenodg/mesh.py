"""Interval and tensor-product Cartesian meshes, uniform or node-perturbed.

Perturbed meshes draw node offsets from ``numpy.random.default_rng(seed)``
(PCG64), so a given ``(mesh, fraction, seed)`` triple yields the same nodes on
every platform.
"""
from dataclasses import dataclass, field

import numpy as np

from .exceptions import InvalidArgumentError


def _readonly(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Mesh1D:
    """Ordered nodes ``x_0 < ... < x_K`` of a partition of ``[x_0, x_K]``.

    Uniform meshes store a constant width array (``(x_K - x_0) / K``) rather
    than ``diff(nodes)``, so the max/min width ratio is exactly one.
    """

    nodes: np.ndarray
    widths: np.ndarray = None
    uniform: bool = False
    seed: int = None
    fraction: float = 0.0

    def __post_init__(self):
        nodes = _readonly(self.nodes)
        if nodes.ndim != 1 or nodes.size < 2:
            raise InvalidArgumentError("a mesh needs at least two nodes")
        if not np.all(np.diff(nodes) > 0):
            raise InvalidArgumentError("mesh nodes must be strictly increasing")
        object.__setattr__(self, "nodes", nodes)
        if self.widths is None:
            object.__setattr__(self, "widths", _readonly(np.diff(nodes)))
        else:
            object.__setattr__(self, "widths", _readonly(self.widths))

    @property
    def K(self):
        return self.nodes.size - 1

    @property
    def x_left(self):
        return float(self.nodes[0])

    @property
    def x_right(self):
        return float(self.nodes[-1])

    @property
    def length(self):
        return self.x_right - self.x_left

    @property
    def centers(self):
        return 0.5 * (self.nodes[:-1] + self.nodes[1:])

    def cell(self, k):
        """Return ``(x_l, x_r)`` of cell ``k``."""
        return float(self.nodes[k]), float(self.nodes[k + 1])

    def locate(self, x):
        """Index of the cell containing each ``x`` (right-closed at the end)."""
        idx = np.searchsorted(self.nodes, x, side="right") - 1
        return np.clip(idx, 0, self.K - 1)


@dataclass(frozen=True, eq=False)
class Mesh2D:
    """Tensor product of two 1D meshes; cell ``(i, j)`` is ``I_i x J_j``."""

    x: Mesh1D
    y: Mesh1D
    seed: int = field(default=None)

    @property
    def shape(self):
        return self.x.K, self.y.K

    @property
    def areas(self):
        return np.outer(self.x.widths, self.y.widths)

    def area(self, i, j):
        return float(self.x.widths[i] * self.y.widths[j])

    @property
    def uniform(self):
        return self.x.uniform and self.y.uniform


def build_uniform_1d(x_left, x_right, K):
    """``K`` equal cells covering ``[x_left, x_right]``."""
    if int(K) != K or K < 1:
        raise InvalidArgumentError(f"cell count must be a positive integer, got {K}")
    if not x_left < x_right:
        raise InvalidArgumentError("x_left must be smaller than x_right")
    K = int(K)
    nodes = np.linspace(x_left, x_right, K + 1)
    h = (x_right - x_left) / K
    return Mesh1D(nodes, widths=np.full(K, h), uniform=True)


def perturb_mesh(mesh, fraction, seed):
    """Displace each interior node by an independent draw in ``[-f h, f h]``.

    Endpoints stay fixed. ``fraction`` must lie in ``[0, 0.5)`` so that no
    cell can invert.
    """
    if not 0.0 <= fraction < 0.5:
        raise InvalidArgumentError("perturbation fraction must lie in [0, 0.5)")
    if fraction == 0.0:
        return mesh
    h = mesh.length / mesh.K
    rng = np.random.default_rng(seed)
    nodes = np.array(mesh.nodes, dtype=float)
    nodes[1:-1] += rng.uniform(-fraction * h, fraction * h, size=mesh.K - 1)
    return Mesh1D(nodes, seed=seed, fraction=fraction)


def build_uniform_2d(x_range, y_range, Kx, Ky):
    return Mesh2D(build_uniform_1d(*x_range, Kx), build_uniform_1d(*y_range, Ky))


def perturb_mesh_2d(mesh, fraction, seed):
    """Perturb the two axes independently, keeping the tensor-product layout."""
    sx, sy = np.random.SeedSequence(seed).spawn(2)
    x = perturb_mesh(mesh.x, fraction, int(sx.generate_state(1)[0]))
    y = perturb_mesh(mesh.y, fraction, int(sy.generate_state(1)[0]))
    return Mesh2D(x, y, seed=seed)
