"""Boundary conditions.

Each non-periodic edge maps interior states to ghost states pointwise via
``ghost(u, coords, t, axis, flux)``; ``coords`` is a tuple of physical
coordinate arrays broadcastable against ``u[0]``.  The same map serves both
the interface traces of the DG operator and the ghost cells the limiter
reads across the boundary.
"""
from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigError


class Boundary:
    kind = "boundary"

    def ghost(self, u, coords, t, axis, flux):
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}()"


class Periodic(Boundary):
    kind = "periodic"

    def ghost(self, u, coords, t, axis, flux):
        raise ConfigError("periodic edges are handled by wrap-around, not ghost states")


class Reflective(Boundary):
    """Mirror state with the wall-normal momentum negated."""

    kind = "reflective"

    def ghost(self, u, coords, t, axis, flux):
        g = np.array(u, dtype=float, copy=True)
        k = flux.momentum_index(axis)
        if k is not None:
            g[k] = -g[k]
        return g


class Transmissive(Boundary):
    """Zero-gradient outflow: the ghost state copies the interior."""

    kind = "transmissive"

    def ghost(self, u, coords, t, axis, flux):
        return np.array(u, dtype=float, copy=True)


class Prescribed(Boundary):
    """Ghost state given by ``func(*coords, t)`` (conserved variables)."""

    kind = "prescribed"

    def __init__(self, func):
        self.func = func

    def ghost(self, u, coords, t, axis, flux):
        val = np.asarray(self.func(*coords, t), dtype=float)
        return np.broadcast_to(val, np.shape(u)).copy()


class Split(Boundary):
    """Use ``inside`` where ``mask(*coords, t)`` holds and ``outside`` elsewhere."""

    kind = "split"

    def __init__(self, mask, inside, outside):
        self.mask = mask
        self.inside = inside
        self.outside = outside

    def ghost(self, u, coords, t, axis, flux):
        sel = np.broadcast_to(self.mask(*coords, t), np.shape(u)[1:])
        a = self.inside.ghost(u, coords, t, axis, flux)
        b = self.outside.ghost(u, coords, t, axis, flux)
        return np.where(sel, a, b)


@dataclass(frozen=True)
class BoundarySpec:
    """Edge conditions: ``left``/``right`` along x, ``bottom``/``top`` along y."""

    left: Boundary
    right: Boundary
    bottom: Boundary = None
    top: Boundary = None

    def validate(self, ndim):
        pairs = [(self.left, self.right)]
        if ndim == 2:
            if self.bottom is None or self.top is None:
                raise ConfigError("2D problems need bottom and top boundaries")
            pairs.append((self.bottom, self.top))
        for lo, hi in pairs:
            if isinstance(lo, Periodic) != isinstance(hi, Periodic):
                raise ConfigError("periodic edges must come in matched pairs")
        return self

    def edges(self, axis):
        return (self.left, self.right) if axis == 0 else (self.bottom, self.top)

    def periodic(self, axis):
        return isinstance(self.edges(axis)[0], Periodic)

    @classmethod
    def periodic_all(cls, ndim=1):
        if ndim == 1:
            return cls(Periodic(), Periodic())
        return cls(Periodic(), Periodic(), Periodic(), Periodic())

    @classmethod
    def uniform(cls, boundary, ndim=1):
        if ndim == 1:
            return cls(boundary, boundary)
        return cls(boundary, boundary, boundary, boundary)
