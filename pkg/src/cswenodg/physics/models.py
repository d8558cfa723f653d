"""Flux models.

All evaluators take state arrays with the conserved-variable axis first,
``u.shape == (m, ...)``, and broadcast over the remaining axes.
"""
import numpy as np

from ..exceptions import InvalidArgumentError, StateError


class FluxModel:
    """Common interface of the scalar and Euler flux models."""

    nvars = 1
    ndim = 1
    name = "flux"
    indicator_vars = (0,)

    @property
    def is_system(self):
        return self.nvars > 1

    def flux(self, u, axis=0):
        raise NotImplementedError

    def max_speed(self, u, axis=0):
        raise NotImplementedError

    def flux_pair(self, u, check=False):
        """``(f(u), g(u))`` for 2D states; with ``check`` also validates admissibility."""
        if check and self.is_system:
            self.check_admissible(u, where=" at a quadrature point")
        return self.flux(u, 0), self.flux(u, 1)

    def advection_speed(self, u, axis=0):
        """Signed speed deciding the inflow faces of a cell."""
        raise NotImplementedError

    def dissipation_bound(self, states, axis=0):
        """Global Lax-Friedrichs coefficient for a set of trace states."""
        return float(np.max(self.max_speed(states, axis)))

    def cell_speed_bound(self, vals, axis=0):
        """Per-cell wave-speed bound from point values ``(m, ..., q)``."""
        return np.max(self.max_speed(vals, axis), axis=-1)

    def momentum_index(self, axis):
        return None

    def eigenvectors(self, u_ref, axis=0):
        return None

    def admissible(self, u):
        return np.ones(np.shape(u)[1:], dtype=bool)

    def check_admissible(self, u, where=""):
        ok = self.admissible(u)
        if not np.all(ok):
            bad = np.argwhere(~ok)[0]
            raise StateError(f"inadmissible {self.name} state{where}", cell=tuple(int(i) for i in bad))

    def __repr__(self):
        return f"{type(self).__name__}(ndim={self.ndim})"


class Burgers(FluxModel):
    """``u_t + (u^2/2)_x (+ (u^2/2)_y) = 0``."""

    name = "burgers"

    def __init__(self, ndim=1):
        self.ndim = ndim

    def flux(self, u, axis=0):
        return 0.5 * u * u

    def max_speed(self, u, axis=0):
        return np.abs(u[0])

    def advection_speed(self, u, axis=0):
        return u[0]


def burgers_flux(u):
    return 0.5 * np.asarray(u) ** 2


def buckley_leverett_flux(u):
    u = np.asarray(u, dtype=float)
    return 4.0 * u * u / (4.0 * u * u + (1.0 - u) ** 2)


def buckley_leverett_speed(u):
    """``f'(u) = 8 u (1 - u) / (4u^2 + (1-u)^2)^2``."""
    u = np.asarray(u, dtype=float)
    d = 4.0 * u * u + (1.0 - u) ** 2
    return 8.0 * u * (1.0 - u) / (d * d)


def _bl_sonic_point():
    from scipy.optimize import minimize_scalar

    res = minimize_scalar(lambda u: -buckley_leverett_speed(u), bounds=(0.0, 1.0), method="bounded",
                          options={"xatol": 1e-12})
    return float(res.x)


class BuckleyLeverett(FluxModel):
    """``u_t + (4u^2 / (4u^2 + (1-u)^2))_x = 0`` (non-convex)."""

    name = "buckley-leverett"
    sonic_point = _bl_sonic_point()

    def flux(self, u, axis=0):
        return buckley_leverett_flux(u)

    def max_speed(self, u, axis=0):
        return np.abs(buckley_leverett_speed(u[0]))

    def dissipation_bound(self, states, axis=0):
        # f' peaks inside [0, 1]: bound over the hull of the states, not the states alone
        lo, hi = float(np.min(states)), float(np.max(states))
        cand = [lo, hi] + ([self.sonic_point] if lo <= self.sonic_point <= hi else [])
        return float(np.max(np.abs(buckley_leverett_speed(np.array(cand)))))

    def advection_speed(self, u, axis=0):
        return buckley_leverett_speed(u[0])

    def cell_speed_bound(self, vals, axis=0):
        # f' is unimodal on [0, 1]: its maximum over the hull of the values sits
        # at a hull end or at the sonic point
        lo, hi = vals[0].min(axis=-1), vals[0].max(axis=-1)
        ends = np.maximum(np.abs(buckley_leverett_speed(lo)), np.abs(buckley_leverett_speed(hi)))
        peak = abs(float(buckley_leverett_speed(self.sonic_point)))
        return np.where((lo <= self.sonic_point) & (self.sonic_point <= hi), peak, ends)


class Euler(FluxModel):
    """Ideal-gas Euler equations, conserved variables ``(rho, rho u[, rho v], E)``."""

    name = "euler"

    def __init__(self, ndim=1, gamma=1.4):
        if ndim not in (1, 2):
            raise InvalidArgumentError("Euler model supports ndim 1 or 2")
        self.ndim = ndim
        self.gamma = gamma
        self.nvars = ndim + 2
        self.indicator_vars = (0, self.nvars - 1)

    def momentum_index(self, axis):
        return 1 + axis

    # -- state conversions -------------------------------------------------
    def pressure(self, u):
        rho = u[0]
        kinetic = 0.5 * sum(u[1 + d] ** 2 for d in range(self.ndim)) / rho
        return (self.gamma - 1.0) * (u[-1] - kinetic)

    def primitive(self, u):
        """``(rho, velocities..., p)``."""
        rho = u[0]
        vel = [u[1 + d] / rho for d in range(self.ndim)]
        return np.stack([rho, *vel, self.pressure(u)])

    def conserved(self, w):
        """Inverse of :meth:`primitive`."""
        w = np.asarray(w, dtype=float)
        rho, p = w[0], w[-1]
        vel = [w[1 + d] for d in range(self.ndim)]
        E = p / (self.gamma - 1.0) + 0.5 * rho * sum(v * v for v in vel)
        return np.stack([rho, *(rho * v for v in vel), E])

    def sound_speed(self, u):
        return np.sqrt(self.gamma * self.pressure(u) / u[0])

    def admissible(self, u):
        with np.errstate(invalid="ignore", divide="ignore"):
            p = self.pressure(u)
        return (u[0] > 0) & (p > 0) & np.isfinite(p)

    # -- fluxes --------------------------------------------------------------
    def flux(self, u, axis=0):
        rho = u[0]
        vn = u[1 + axis] / rho
        p = self.pressure(u)
        f = vn * u
        f[1 + axis] += p
        f[-1] += p * vn
        return f

    def flux_pair(self, u, check=False):
        if self.ndim != 2:
            return super().flux_pair(u, check)
        from .._kernels import euler_fluxes_2d

        u = np.asarray(u, dtype=float)
        fx, fy, bad = euler_fluxes_2d(np.ascontiguousarray(u.reshape(4, -1)), self.gamma)
        if check and bad >= 0:
            self.check_admissible(u, where=" at a quadrature point")
        return fx.reshape(u.shape), fy.reshape(u.shape)

    def max_speed(self, u, axis=0):
        with np.errstate(invalid="ignore"):
            return np.abs(u[1 + axis] / u[0]) + self.sound_speed(u)

    def advection_speed(self, u, axis=0):
        return u[1 + axis] / u[0]

    def eigenvectors(self, u_ref, axis=0):
        """Left/right eigenvector matrices of ``df/dU`` along ``axis``.

        ``u_ref`` has shape ``(m, ...)``; returns ``(L, R)`` of shape
        ``(..., m, m)`` with ``L @ R = I``.  Eigenvalue order is
        ``u_n - a, u_n, [u_t,] u_n + a``.
        """
        u_ref = np.asarray(u_ref, dtype=float)
        if not np.all(self.admissible(u_ref)):
            raise StateError("characteristic reference state is inadmissible")
        g = self.gamma
        rho = u_ref[0]
        vel = [u_ref[1 + d] / rho for d in range(self.ndim)]
        p = self.pressure(u_ref)
        a = np.sqrt(g * p / rho)
        q2 = sum(v * v for v in vel)
        H = (u_ref[-1] + p) / rho
        b1 = (g - 1.0) / (a * a)
        b2 = 0.5 * b1 * q2
        shape = rho.shape
        m = self.nvars
        R = np.zeros(shape + (m, m))
        L = np.zeros(shape + (m, m))
        one = np.ones(shape)
        un = vel[axis]
        if self.ndim == 1:
            R[..., 0, :] = np.stack([one, one, one], -1)
            R[..., 1, :] = np.stack([un - a, un, un + a], -1)
            R[..., 2, :] = np.stack([H - un * a, 0.5 * q2, H + un * a], -1)
            L[..., 0, :] = np.stack([0.5 * (b2 + un / a), -0.5 * (b1 * un + 1 / a), 0.5 * b1], -1)
            L[..., 1, :] = np.stack([1 - b2, b1 * un, -b1], -1)
            L[..., 2, :] = np.stack([0.5 * (b2 - un / a), -0.5 * (b1 * un - 1 / a), 0.5 * b1], -1)
            return L, R
        n, t = 1 + axis, 2 - axis  # normal / tangential momentum rows
        ut = vel[1 - axis]
        zero = np.zeros(shape)
        # columns: u_n - a, u_n (entropy), u_n (shear), u_n + a
        R[..., 0, :] = np.stack([one, one, zero, one], -1)
        R[..., n, :] = np.stack([un - a, un, zero, un + a], -1)
        R[..., t, :] = np.stack([ut, ut, one, ut], -1)
        R[..., 3, :] = np.stack([H - un * a, 0.5 * q2, ut, H + un * a], -1)
        L[..., 0, 0] = 0.5 * (b2 + un / a)
        L[..., 0, n] = -0.5 * (b1 * un + 1 / a)
        L[..., 0, t] = -0.5 * b1 * ut
        L[..., 0, 3] = 0.5 * b1
        L[..., 1, 0] = 1 - b2
        L[..., 1, n] = b1 * un
        L[..., 1, t] = b1 * ut
        L[..., 1, 3] = -b1
        L[..., 2, 0] = -ut
        L[..., 2, t] = 1.0
        L[..., 3, 0] = 0.5 * (b2 - un / a)
        L[..., 3, n] = -0.5 * (b1 * un - 1 / a)
        L[..., 3, t] = -0.5 * b1 * ut
        L[..., 3, 3] = 0.5 * b1
        return L, R


def euler_flux(U, axis=0, gamma=1.4):
    """Flux of a single conserved Euler state (1D if ``len(U) == 3``)."""
    U = np.asarray(U, dtype=float)
    model = Euler(ndim=U.shape[0] - 2, gamma=gamma)
    model.check_admissible(U)
    return model.flux(U.copy(), axis)


def euler_characteristics(U_ref, axis=0, gamma=1.4):
    U_ref = np.asarray(U_ref, dtype=float)
    return Euler(ndim=U_ref.shape[0] - 2, gamma=gamma).eigenvectors(U_ref, axis)
