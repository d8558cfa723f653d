"""Rebuilding modal coefficients from reconstructed point values."""
import numpy as np

from ..basis import BasisSet
from ..exceptions import CSWENOError


def recover_moments(values, rule, basis, u0):
    """Higher moments from point values, keeping the mean mode ``u0``.

    With the reference-orthonormal basis the mass matrix is diagonal and
    ``u_i = sum_G w_G u(r_G) psi_i(r_G)`` for ``i >= 1``.

    Parameters
    ----------
    values : ndarray, shape (..., G)
        Point values at ``rule.points``.
    rule : QuadratureRule
        Exact to degree ``2N + 1`` or better.
    basis : BasisSet
    u0 : ndarray, shape (...)
        Mean-mode coefficient, copied through unchanged.

    Returns
    -------
    ndarray, shape (..., N + 1)
    """
    V = basis(rule.points)
    out = np.asarray(values, dtype=float) @ (V * rule.weights[:, None])
    out[..., 0] = u0
    return out


def recover_moments_general(values, rule, basis_fn, degree, u0, width=2.0):
    """Same recovery for an arbitrary (not necessarily orthogonal) basis.

    Solves ``A X = B`` with ``A`` the mass block of modes ``1..N`` and
    ``B_i = D_i - u0 M_0i``, where ``D_i = (h/2) sum_G w_G u(x_G) psi_i(x_G)``.
    ``basis_fn(r)`` returns the ``(len(r), N + 1)`` table of basis values.
    """
    psi = np.asarray(basis_fn(rule.points), dtype=float)
    scale = 0.5 * width
    M = scale * psi.T @ (rule.weights[:, None] * psi)
    D = scale * np.asarray(values, dtype=float) @ (psi * rule.weights[:, None])
    u0 = np.asarray(u0, dtype=float)
    B = D[..., 1:] - u0[..., None] * M[0, 1:]
    A = M[1:, 1:]
    try:
        X = np.linalg.solve(A, B[..., None])[..., 0] if B.ndim > 1 else np.linalg.solve(A, B)
    except np.linalg.LinAlgError as err:  # pragma: no cover - SPD block
        raise CSWENOError("singular mass block in moment recovery") from err
    return np.concatenate([u0[..., None], X], axis=-1)


def recover_moments_2d(values, rule, basis, u00):
    """Tensor-product recovery from values on the ``G x G`` point grid."""
    V = basis(rule.points) * rule.weights[:, None]
    out = np.einsum("...gh,ga,hb->...ab", np.asarray(values, dtype=float), V, V)
    out[..., 0, 0] = u00
    return out


__all__ = ["BasisSet", "recover_moments", "recover_moments_2d", "recover_moments_general"]
