"""Exact solution of the 1D Euler Riemann problem (ideal gas).

Primitive states ``(rho, u, p)`` throughout.  The star pressure is found by
Newton iteration on the pressure function, safeguarded by bisection.
"""
from dataclasses import dataclass

import numpy as np

from ..exceptions import OracleError


@dataclass(frozen=True)
class StarState:
    p: float
    u: float
    rho_left: float
    rho_right: float


def _pressure_function(p, rho, pk, a, g):
    """Toro's ``f_K(p)`` and its derivative for one side."""
    if p > pk:  # shock
        A = 2.0 / ((g + 1.0) * rho)
        B = (g - 1.0) / (g + 1.0) * pk
        s = np.sqrt(A / (p + B))
        return (p - pk) * s, s * (1.0 - 0.5 * (p - pk) / (p + B))
    # rarefaction
    r = (p / pk) ** ((g - 1.0) / (2.0 * g))
    return 2.0 * a / (g - 1.0) * (r - 1.0), (p / pk) ** (-(g + 1.0) / (2.0 * g)) / (rho * a)


def star_state(left, right, gamma=1.4, tol=1e-14, maxiter=100):
    """Solve for the star-region pressure / velocity."""
    rl, ul, pl = (float(v) for v in left)
    rr, ur, pr = (float(v) for v in right)
    g = gamma
    al = np.sqrt(g * pl / rl)
    ar = np.sqrt(g * pr / rr)
    if 2.0 * (al + ar) / (g - 1.0) <= ur - ul:
        raise OracleError("Riemann data generate vacuum")

    def F(p):
        fl, dl = _pressure_function(p, rl, pl, al, g)
        fr, dr = _pressure_function(p, rr, pr, ar, g)
        return fl + fr + ur - ul, dl + dr

    # bracket: F is increasing in p
    lo, hi = 0.0, max(pl, pr)
    while F(hi)[0] < 0.0:
        hi *= 2.0
        if hi > 1e30:
            raise OracleError("could not bracket the star pressure")
    # two-rarefaction guess, clipped into the bracket
    z = (g - 1.0) / (2.0 * g)
    p = ((al + ar - 0.5 * (g - 1.0) * (ur - ul)) / (al / pl**z + ar / pr**z)) ** (1.0 / z)
    p = min(max(p, 1e-12 * hi), hi)
    for _ in range(maxiter):
        val, der = F(p)
        if val > 0:
            hi = p
        else:
            lo = p
        p_new = p - val / der
        if not lo < p_new < hi:
            p_new = 0.5 * (lo + hi)
        if abs(p_new - p) <= tol * 0.5 * (p_new + p):
            p = p_new
            break
        p = p_new
    else:
        raise OracleError("star pressure iteration did not converge")
    fl, _ = _pressure_function(p, rl, pl, al, g)
    fr, _ = _pressure_function(p, rr, pr, ar, g)
    u = 0.5 * (ul + ur) + 0.5 * (fr - fl)

    def rho_star(rk, pk):
        if p > pk:
            q = (g - 1.0) / (g + 1.0)
            return rk * (p / pk + q) / (q * p / pk + 1.0)
        return rk * (p / pk) ** (1.0 / g)

    return StarState(p=p, u=u, rho_left=rho_star(rl, pl), rho_right=rho_star(rr, pr))


def exact_riemann(left, right, xi, gamma=1.4):
    """Sample the self-similar solution at ``xi = (x - x0) / t``.

    Returns primitive states of shape ``(3, *xi.shape)``.
    """
    xi = np.asarray(xi, dtype=float)
    rl, ul, pl = (float(v) for v in left)
    rr, ur, pr = (float(v) for v in right)
    g = gamma
    if (rl, ul, pl) == (rr, ur, pr):
        return np.stack([np.full(xi.shape, rl), np.full(xi.shape, ul), np.full(xi.shape, pl)])
    star = star_state(left, right, gamma)
    ps, us = star.p, star.u
    al = np.sqrt(g * pl / rl)
    ar = np.sqrt(g * pr / rr)
    out = np.empty((3,) + xi.shape)

    # left of the contact
    L = xi < us
    if ps > pl:
        sl = ul - al * np.sqrt((g + 1) / (2 * g) * ps / pl + (g - 1) / (2 * g))
        m_pre = L & (xi < sl)
        m_star = L & (xi >= sl)
        fan = np.zeros_like(L)
    else:
        a_star = al * (ps / pl) ** ((g - 1) / (2 * g))
        head, tail = ul - al, us - a_star
        m_pre = L & (xi < head)
        m_star = L & (xi >= tail)
        fan = L & (xi >= head) & (xi < tail)
    out[:, m_pre] = np.array([rl, ul, pl])[:, None]
    out[:, m_star] = np.array([star.rho_left, us, ps])[:, None]
    if np.any(fan):
        c = 2 / (g + 1) + (g - 1) / ((g + 1) * al) * (ul - xi[fan])
        out[0, fan] = rl * c ** (2 / (g - 1))
        out[1, fan] = 2 / (g + 1) * (al + 0.5 * (g - 1) * ul + xi[fan])
        out[2, fan] = pl * c ** (2 * g / (g - 1))

    R = ~L
    if ps > pr:
        sr = ur + ar * np.sqrt((g + 1) / (2 * g) * ps / pr + (g - 1) / (2 * g))
        m_pre = R & (xi > sr)
        m_star = R & (xi <= sr)
        fan = np.zeros_like(R)
    else:
        a_star = ar * (ps / pr) ** ((g - 1) / (2 * g))
        head, tail = ur + ar, us + a_star
        m_pre = R & (xi > head)
        m_star = R & (xi <= tail)
        fan = R & (xi > tail) & (xi <= head)
    out[:, m_pre] = np.array([rr, ur, pr])[:, None]
    out[:, m_star] = np.array([star.rho_right, us, ps])[:, None]
    if np.any(fan):
        c = 2 / (g + 1) - (g - 1) / ((g + 1) * ar) * (ur - xi[fan])
        out[0, fan] = rr * c ** (2 / (g - 1))
        out[1, fan] = 2 / (g + 1) * (-ar + 0.5 * (g - 1) * ur + xi[fan])
        out[2, fan] = pr * c ** (2 * g / (g - 1))
    return out
