"""Compiled inner loops for the 2D operator.

These fuse long chains of elementwise numpy operations whose temporaries
dominate the cost of the tensor-product right-hand side on fine meshes.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def euler_fluxes_2d(u, gamma):
    """Both Euler fluxes at points ``u`` of shape ``(4, P)``.

    Returns ``(fx, fy, bad)`` where ``bad`` is the first point with
    non-positive density or pressure (``-1`` when all are admissible).
    """
    P = u.shape[1]
    fx = np.empty_like(u)
    fy = np.empty_like(u)
    bad = -1
    for k in range(P):
        rho = u[0, k]
        mx = u[1, k]
        my = u[2, k]
        E = u[3, k]
        vx = mx / rho
        vy = my / rho
        p = (gamma - 1.0) * (E - 0.5 * (mx * vx + my * vy))
        if bad < 0 and not (rho > 0.0 and p > 0.0 and np.isfinite(p)):
            bad = k
        fx[0, k] = mx
        fx[1, k] = mx * vx + p
        fx[2, k] = my * vx
        fx[3, k] = (E + p) * vx
        fy[0, k] = my
        fy[1, k] = mx * vy
        fy[2, k] = my * vy + p
        fy[3, k] = (E + p) * vy
    return fx, fy, bad


@njit(cache=True)
def assemble_2d(gx, gy, fx, fy, left, right, hx, hy):
    """Combine projected volume and face fluxes into the cell residual.

    ``gx``/``gy``: ``(m, Kx, Ky, Np, Np)`` volume projections;
    ``fx``: ``(m, Kx + 1, Ky, Np)`` and ``fy``: ``(m, Kx, Ky + 1, Np)`` face
    fluxes projected along the face; ``left``/``right`` are the basis
    values at the reference endpoints.
    """
    m, Kx, Ky, Np, _ = gx.shape
    out = np.empty_like(gx)
    for v in range(m):
        for i in range(Kx):
            sx = 2.0 / hx[i]
            for j in range(Ky):
                sy = 2.0 / hy[j]
                for a in range(Np):
                    for b in range(Np):
                        sx_term = gx[v, i, j, a, b] - (right[a] * fx[v, i + 1, j, b] - left[a] * fx[v, i, j, b])
                        sy_term = gy[v, i, j, a, b] - (fy[v, i, j + 1, a] * right[b] - fy[v, i, j, a] * left[b])
                        out[v, i, j, a, b] = sx * sx_term + sy * sy_term
    return out
