"""Closed-form and semi-analytic reference solutions."""
import numpy as np
from scipy.optimize import brentq

from ..exceptions import OracleError
from .models import buckley_leverett_flux

GAMMA = 1.4


def exact_burgers(x, t, mean=0.5, amplitude=1.0, tol=1e-13, maxiter=100):
    """Smooth solution of ``u_t + (u^2/2)_x = 0`` with ``u0 = mean + amplitude sin x``.

    Solves ``u = mean + amplitude sin(x - u t)`` by Newton iteration; valid
    before the first shock forms at ``t = 1 / amplitude``.
    """
    x = np.asarray(x, dtype=float)
    if t == 0:
        return mean + amplitude * np.sin(x)
    u = mean + amplitude * np.sin(x)
    for _ in range(maxiter):
        s = np.sin(x - u * t)
        c = np.cos(x - u * t)
        res = u - mean - amplitude * s
        u = u - res / (1.0 + amplitude * t * c)
        if np.max(np.abs(u - mean - amplitude * np.sin(x - u * t)), initial=0.0) <= tol:
            return u
    raise OracleError("Newton iteration for the Burgers solution did not converge")


def _characteristic_feet(x, t, mean, amplitude):
    """All roots ``x0`` of ``x0 + (mean + a sin x0) t = x`` (sorted)."""
    lo = x - (mean + abs(amplitude)) * t - 1.0
    hi = x - (mean - abs(amplitude)) * t + 1.0
    grid = np.linspace(lo, hi, 4001)
    g = grid + (mean + amplitude * np.sin(grid)) * t - x
    roots = []
    for k in np.nonzero(np.sign(g[:-1]) * np.sign(g[1:]) <= 0)[0]:
        if g[k] == 0.0:
            roots.append(grid[k])
        elif g[k + 1] != 0.0:
            roots.append(brentq(lambda z: z + (mean + amplitude * np.sin(z)) * t - x, grid[k], grid[k + 1],
                                xtol=1e-15, rtol=1e-15))
    return np.unique(np.array(roots))


def burgers_shock_location(t, mean=0.5):
    """Shock position for ``u0 = mean + sin x`` after breaking (``t >= 1``).

    The profile is odd about ``x = pi`` in the frame moving with ``mean``, so
    the single shock per period sits at ``pi + mean t``.
    """
    return np.pi + mean * t


def exact_burgers_entropy(x, t, mean=0.5):
    """Entropy solution for ``u0 = mean + sin x``, valid before and after breaking."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if t <= 1.0:
        return exact_burgers(x, t, mean)
    period = 2.0 * np.pi
    xs = burgers_shock_location(t, mean)
    out = np.empty_like(x)
    for i, xi in enumerate(x.flat):
        feet = _characteristic_feet(xi, t, mean, 1.0)
        if feet.size == 0:
            raise OracleError("no characteristic reaches x")
        # distance to the nearest shock on the left; the fan around a shock is
        # narrower than half a period, so this decides the side unambiguously
        right_of_shock = (xi - xs) % period < np.pi
        foot = feet[-1] if right_of_shock else feet[0]
        out.flat[i] = mean + np.sin(foot)
    return out


def burgers2d_exact(x, y, t, mean=0.5):
    """``u0 = mean + sin(x + y)``: a 1D wave in ``x + y`` moving at twice the speed."""
    return exact_burgers(np.asarray(x) + np.asarray(y), 2.0 * t, mean)


def density_wave(x, y, t, gamma=GAMMA):
    """Advected density wave ``rho = 1 + 0.2 sin(x + y - t)``, ``(u, v, p) = (0.7, 0.3, 1)``."""
    x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
    rho = 1.0 + 0.2 * np.sin(x + y - t)
    u, v, p = 0.7, 0.3, 1.0
    return np.stack([rho, rho * u, rho * v, p / (gamma - 1) + 0.5 * rho * (u * u + v * v)])


def isentropic_vortex(x, y, t, x0=5.0, y0=0.0, beta=5.0, gamma=GAMMA, period=None):
    """Conserved state of the isentropic vortex advected with unit x-velocity.

    ``period=(Lx, Ly)`` wraps the vortex centre for periodic domains.
    """
    x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
    dx = x - x0 - t
    dy = y - y0
    if period is not None:
        Lx, Ly = period
        dx = (dx + 0.5 * Lx) % Lx - 0.5 * Lx
        dy = (dy + 0.5 * Ly) % Ly - 0.5 * Ly
    e = np.exp(1.0 - (dx * dx + dy * dy))
    rho = (1.0 - (gamma - 1.0) / (16.0 * gamma * np.pi**2) * beta**2 * e * e) ** (1.0 / (gamma - 1.0))
    u = 1.0 - beta * e * dy / (2.0 * np.pi)
    v = beta * e * dx / (2.0 * np.pi)
    p = rho**gamma
    return np.stack([rho, rho * u, rho * v, p / (gamma - 1) + 0.5 * rho * (u * u + v * v)])


def normal_shock_state(mach, rho1=1.4, p1=1.0, gamma=GAMMA):
    """Post-shock ``(rho, |u|, p)`` behind a shock moving at ``mach`` into gas at rest."""
    a1 = np.sqrt(gamma * p1 / rho1)
    m2 = mach * mach
    rho2 = rho1 * (gamma + 1) * m2 / ((gamma - 1) * m2 + 2)
    p2 = p1 * (2 * gamma * m2 - (gamma - 1)) / (gamma + 1)
    speed = mach * a1
    return rho2, speed * (1.0 - rho1 / rho2), p2


def dmr_states(gamma=GAMMA):
    """Pre- and post-shock primitive states ``(rho, u, v, p)`` of the double Mach reflection."""
    rho2, w, p2 = normal_shock_state(10.0, gamma=gamma)
    angle = np.pi / 6.0  # shock normal is 30 degrees below the x-axis
    post = (rho2, w * np.cos(angle), -w * np.sin(angle), p2)
    pre = (1.4, 0.0, 0.0, 1.0)
    return pre, post


def dmr_shock_x(y, t):
    """x-position of the Mach 10 shock front at height ``y``."""
    return 1.0 / 6.0 + (np.asarray(y) + 20.0 * t) / np.sqrt(3.0)


def godunov_buckley_leverett(u0, x_range, t_end, cells=10000, cfl=0.45):
    """First-order Godunov solution of the Buckley-Leverett problem.

    The flux is non-decreasing on ``[0, 1]``, so the Godunov flux is the
    upwind value ``f(u_left)``.  Returns ``(centers, u)``.
    """
    from .models import buckley_leverett_speed

    a, b = x_range
    h = (b - a) / cells
    xc = a + (np.arange(cells) + 0.5) * h
    u = np.asarray(u0(xc), dtype=float)
    smax = float(np.max(buckley_leverett_speed(np.linspace(0.0, 1.0, 20001))))
    t = 0.0
    while t < t_end:
        dt = min(cfl * h / smax, t_end - t)
        f = buckley_leverett_flux(np.concatenate([[u[0]], u]))  # outflow ghost
        u = u - dt / h * (f[1:] - f[:-1])
        t += dt
    return xc, u
