"""Modal DG semi-discretisation on 1D and tensor-product 2D meshes.

Coefficient layout (conserved-variable axis first):

* 1D: ``coeffs[v, k, n]`` -- variable ``v``, cell ``k``, mode ``n``;
* 2D: ``coeffs[v, i, j, a, b]`` -- cell ``(i, j)``, x-mode ``a``, y-mode ``b``
  of the tensor-product basis ``psi_a(r) psi_b(s)``.

With the reference-orthonormal basis the cell average is ``u_0 / sqrt(2)``
in 1D and ``u_00 / 2`` in 2D.
"""
import numpy as np

from .basis import BasisSet, apply_matrix, gauss_rule, reference_tables, tensor_apply
from ._kernels import assemble_2d
from .boundary import BoundarySpec
from .exceptions import ConfigError, InvalidArgumentError, StateError
from .mesh import Mesh1D, Mesh2D

SQRT2 = np.sqrt(2.0)


class DGSolution:
    """Modal coefficients of a DG approximation together with its mesh."""

    def __init__(self, mesh, degree, coeffs):
        self.mesh = mesh
        self.degree = int(degree)
        self.coeffs = np.asarray(coeffs, dtype=float)
        np_ = self.degree + 1
        expected = (mesh.K, np_) if isinstance(mesh, Mesh1D) else (*mesh.shape, np_, np_)
        if self.coeffs.ndim != len(expected) + 1 or self.coeffs.shape[1:] != expected:
            raise InvalidArgumentError(
                f"coefficient array of shape {self.coeffs.shape} does not match mesh/degree {expected}")

    @property
    def ndim(self):
        return 1 if isinstance(self.mesh, Mesh1D) else 2

    @property
    def nvars(self):
        return self.coeffs.shape[0]

    def copy(self):
        return DGSolution(self.mesh, self.degree, self.coeffs.copy())

    def cell_averages(self):
        if self.ndim == 1:
            return self.coeffs[..., 0] / SQRT2
        return self.coeffs[..., 0, 0] / 2.0

    def total_mass(self):
        """Integral of each variable over the domain."""
        avg = self.cell_averages()
        if self.ndim == 1:
            return avg @ self.mesh.widths
        return np.einsum("vij,ij->v", avg, self.mesh.areas)

    def evaluate(self, r, s=None):
        """Values at reference points: ``(m, K, len(r))`` or ``(m, Kx, Ky, len(r), len(s))``."""
        basis = BasisSet(self.degree)
        Vr = basis(r)
        if self.ndim == 1:
            return self.coeffs @ Vr.T
        Vs = basis(r if s is None else s)
        return Vr @ (self.coeffs @ Vs.T)

    def points(self, r, s=None):
        """Physical coordinates matching :meth:`evaluate`."""
        r = np.atleast_1d(r)
        if self.ndim == 1:
            m = self.mesh
            return m.nodes[:-1, None] + 0.5 * (1.0 + r) * m.widths[:, None]
        s = r if s is None else np.atleast_1d(s)
        mx, my = self.mesh.x, self.mesh.y
        x = mx.nodes[:-1, None] + 0.5 * (1.0 + r) * mx.widths[:, None]
        y = my.nodes[:-1, None] + 0.5 * (1.0 + s) * my.widths[:, None]
        return x[:, None, :, None], y[None, :, None, :]


def lax_friedrichs(flux, u_left, u_right, alpha, axis=0):
    """``(f(u_l) + f(u_r)) / 2 - alpha (u_r - u_l) / 2``.

    ``flux`` is a :class:`~cswenodg.physics.FluxModel` or a plain callable.
    """
    f = flux.flux if hasattr(flux, "flux") else (lambda u, axis=0: flux(u))
    u_left = np.asarray(u_left, dtype=float)
    u_right = np.asarray(u_right, dtype=float)
    return 0.5 * (f(u_left, axis) + f(u_right, axis)) - 0.5 * alpha * (u_right - u_left)


class _Operator:
    def __init__(self, mesh, degree, flux, bc):
        if degree < 0:
            raise InvalidArgumentError("degree must be non-negative")
        self.mesh = mesh
        self.degree = int(degree)
        self.flux = flux
        self.bc = bc.validate(2 if isinstance(mesh, Mesh2D) else 1)
        self.tables = reference_tables(self.degree)
        self.basis = self.tables["basis"]

    def _check(self, uq):
        if self.flux.is_system:
            self.flux.check_admissible(uq, where=" at a quadrature point")


class DGOperator1D(_Operator):
    """Right-hand side of the weak form on a 1D mesh."""

    def traces(self, U):
        T = self.tables
        both = apply_matrix(U, np.stack([T["left"], T["right"]], axis=1))
        return both[..., 0], both[..., 1]

    def interface_states(self, U, t):
        """States on either side of the ``K + 1`` interfaces."""
        uL, uR = self.traces(U)
        lo, hi = self.bc.edges(0)
        if self.bc.periodic(0):
            gl, gr = uR[:, -1], uL[:, 0]
        else:
            m = self.mesh
            gl = lo.ghost(uL[:, 0], (np.array(m.x_left),), t, 0, self.flux)
            gr = hi.ghost(uR[:, -1], (np.array(m.x_right),), t, 0, self.flux)
        left = np.concatenate([gl[:, None], uR], axis=1)
        right = np.concatenate([uL, gr[:, None]], axis=1)
        return left, right

    def wave_speed_bound(self, U, t):
        left, right = self.interface_states(U, t)
        return self.flux.dissipation_bound(np.concatenate([left, right], axis=1), 0)

    def rhs(self, U, t, alpha=None):
        T = self.tables
        uq = apply_matrix(U, T["V"].T)
        try:
            self._check(uq)
        except StateError as err:
            err.cell = err.cell[0] if err.cell is not None else None
            raise
        left, right = self.interface_states(U, t)
        if alpha is None:
            alpha = self.flux.dissipation_bound(np.concatenate([left, right], axis=1), 0)
        fstar = lax_friedrichs(self.flux, left, right, alpha, 0)
        vol = apply_matrix(self.flux.flux(uq, 0), T["wV"] @ T["S"])
        surf = fstar[:, 1:, None] * T["right"] - fstar[:, :-1, None] * T["left"]
        return (2.0 / self.mesh.widths)[:, None] * (vol - surf)

    def ghost_cells(self, U, t, layers):
        """Extend ``U`` by ``layers`` ghost cells per side; returns ``(U_ext, widths_ext)``."""
        m = self.mesh
        L = int(layers)
        if L == 0:
            return U, np.asarray(m.widths)
        if L > m.K:
            raise ConfigError("mesh has fewer cells than the requested ghost layers")
        w = np.asarray(m.widths)
        if self.bc.periodic(0):
            U_ext = np.concatenate([U[:, -L:], U, U[:, :L]], axis=1)
            return U_ext, np.concatenate([w[-L:], w, w[:L]])
        lo, hi = self.bc.edges(0)
        parity = self.basis.parity
        rule = gauss_rule(self.degree + 2)
        V, wV = self.tables["V"], self.tables["wV"]

        def side(cells, edge, x_edge, outward):
            mirrored = U[:, cells] * parity
            gw = w[cells]
            # ghost cell k spans the mirror image of interior cell k about the edge
            dist_far = np.cumsum(gw)
            far = x_edge + outward * dist_far
            near = x_edge + outward * (dist_far - gw)
            lo_x, hi_x = np.minimum(near, far), np.maximum(near, far)
            xq = lo_x[:, None] + 0.5 * (1.0 + rule.points) * (hi_x - lo_x)[:, None]
            vals = edge.ghost(mirrored @ V.T, (xq,), t, 0, self.flux)
            return vals @ wV, gw

        gl, wl = side(np.arange(L), lo, m.x_left, -1.0)
        gr, wr = side(m.K - 1 - np.arange(L), hi, m.x_right, 1.0)
        U_ext = np.concatenate([gl[:, ::-1], U, gr], axis=1)
        return U_ext, np.concatenate([wl[::-1], w, wr])


class DGOperator2D(_Operator):
    """Tensor-product extension of the weak form on a Cartesian mesh."""

    def _axis_mesh(self, axis):
        return self.mesh.x if axis == 0 else self.mesh.y

    def face_traces(self, U, axis):
        """Traces on the low / high face of every cell at the edge Gauss points.

        Shapes ``(m, Kx, Ky, nq)`` where the last axis runs along the face.
        """
        T = self.tables
        V = T["V"]
        M = T["kron_trace_x"] if axis == 0 else T["kron_trace_y"]
        both = apply_matrix(U.reshape(U.shape[:3] + (-1,)), M)
        nq = V.shape[0]
        lo, hi = both[..., :nq], both[..., nq:]
        return lo, hi

    def face_coords(self, axis, which):
        """Coordinates of the boundary-face Gauss points on edge ``which`` (0 low, 1 high)."""
        rule = self.tables["rule"]
        mx, my = self.mesh.x, self.mesh.y
        if axis == 0:
            x = np.array(mx.x_left if which == 0 else mx.x_right)
            y = my.nodes[:-1, None] + 0.5 * (1.0 + rule.points) * my.widths[:, None]
            return x, y
        y = np.array(my.x_left if which == 0 else my.x_right)
        x = mx.nodes[:-1, None] + 0.5 * (1.0 + rule.points) * mx.widths[:, None]
        return x, y

    def interface_states(self, U, t, axis):
        """States on both sides of every interface normal to ``axis``.

        Returns arrays of shape ``(m, Kx + 1, Ky, nq)`` (axis 0) or
        ``(m, Kx, Ky + 1, nq)`` (axis 1).
        """
        lo, hi = self.face_traces(U, axis)
        ax = 1 + axis
        head = (slice(None),) * ax
        first, last = lo[head + (slice(0, 1),)], hi[head + (slice(-1, None),)]
        if self.bc.periodic(axis):
            g_lo, g_hi = hi[head + (slice(-1, None),)], lo[head + (slice(0, 1),)]
        else:
            e_lo, e_hi = self.bc.edges(axis)
            g_lo = e_lo.ghost(first, self._ghost_coords(axis, 0), t, axis, self.flux)
            g_hi = e_hi.ghost(last, self._ghost_coords(axis, 1), t, axis, self.flux)
        left = np.concatenate([g_lo, hi], axis=ax)
        right = np.concatenate([lo, g_hi], axis=ax)
        return left, right

    def _ghost_coords(self, axis, which):
        x, y = self.face_coords(axis, which)
        # shape to broadcast against (m, 1, Ky, nq) or (m, Kx, 1, nq) slices
        if axis == 0:
            return np.broadcast_to(x, (1,) + y.shape), y[None, :, :]
        return x[:, None, :], np.broadcast_to(y, (x.shape[0], 1, x.shape[1]))

    def wave_speed_bound(self, U, t):
        out = []
        for axis in (0, 1):
            left, right = self.interface_states(U, t, axis)
            out.append(self.flux.dissipation_bound(np.concatenate([left, right], axis=1 + axis), axis))
        return tuple(out)

    def rhs(self, U, t, alpha=None):
        T = self.tables
        V, wV, wD = T["V"], T["wV"], T["wD"]
        uq = tensor_apply(U, V, kron=T["kron_V"])
        try:
            fx, fy = self.flux.flux_pair(uq, check=True)
        except StateError as err:
            err.cell = tuple(err.cell[:2]) if err.cell is not None else None
            raise
        gx = tensor_apply(fx, wD.T, wV.T, kron=T["kron_vol_x"])
        gy = tensor_apply(fy, wV.T, wD.T, kron=T["kron_vol_y"])
        faces = []
        for axis in (0, 1):
            left, right = self.interface_states(U, t, axis)
            a = None if alpha is None else alpha[axis]
            if a is None:
                a = self.flux.dissipation_bound(np.concatenate([left, right], axis=1 + axis), axis)
            faces.append(apply_matrix(lax_friedrichs(self.flux, left, right, a, axis), wV))  # project along the face
        return assemble_2d(gx, gy, faces[0], faces[1], T["left"], T["right"],
                           np.asarray(self.mesh.x.widths, dtype=float), np.asarray(self.mesh.y.widths, dtype=float))

    def ghost_cells(self, U, t, layers, axis):
        """Extend ``U`` along ``axis`` by ``layers`` ghost cells per side.

        Returns ``(U_ext, widths_ext)`` with ``widths_ext`` the cell widths
        along ``axis``.
        """
        L = int(layers)
        am = self._axis_mesh(axis)
        w = np.asarray(am.widths)
        ax = 1 + axis
        if L == 0:
            return U, w
        if L > am.K:
            raise ConfigError("mesh has fewer cells than the requested ghost layers")
        if self.bc.periodic(axis):
            idx = np.r_[np.arange(am.K - L, am.K), np.arange(am.K), np.arange(L)]
            return np.take(U, idx, axis=ax), w[idx]
        lo, hi = self.bc.edges(axis)
        parity = self.basis.parity
        rule = gauss_rule(self.degree + 2)
        V, wV = self.tables["V"], self.tables["wV"]
        other = self._axis_mesh(1 - axis)
        oq = other.nodes[:-1, None] + 0.5 * (1.0 + rule.points) * other.widths[:, None]

        def side(cells, edge, x_edge, outward):
            Uc = np.take(U, cells, axis=ax)
            sign = parity[:, None] if axis == 0 else parity[None, :]
            mirrored = Uc * sign
            gw = w[cells]
            dist_far = np.cumsum(gw)
            far = x_edge + outward * dist_far
            near = x_edge + outward * (dist_far - gw)
            lo_x, hi_x = np.minimum(near, far), np.maximum(near, far)
            nq = lo_x[:, None] + 0.5 * (1.0 + rule.points) * (hi_x - lo_x)[:, None]
            vals = V @ (mirrored @ V.T)  # (m, ., ., q_x, q_y)
            if axis == 0:
                coords = (nq[:, None, :, None], oq[None, :, None, :])
            else:
                coords = (oq[:, None, :, None], nq[None, :, None, :])
            g = edge.ghost(vals, coords, t, axis, self.flux)
            return wV.T @ g @ wV, gw

        gl, wl = side(np.arange(L), lo, am.x_left, -1.0)
        gr, wr = side(am.K - 1 - np.arange(L), hi, am.x_right, 1.0)
        U_ext = np.concatenate([np.flip(gl, axis=ax), U, gr], axis=ax)
        return U_ext, np.concatenate([wl[::-1], w, wr])


def make_operator(mesh, degree, flux, bc):
    if isinstance(mesh, Mesh1D):
        return DGOperator1D(mesh, degree, flux, bc)
    return DGOperator2D(mesh, degree, flux, bc)


def compute_rhs(sol, t, flux, bc, alpha=None):
    """Time derivative of all modal coefficients of ``sol``.

    ``alpha`` fixes the Lax-Friedrichs coefficient (a tuple per axis in 2D);
    by default it is the global maximum wave speed over all interface traces.
    """
    return make_operator(sol.mesh, sol.degree, flux, bc).rhs(sol.coeffs, t, alpha)


def apply_boundary(sol, bc, t, flux):
    """Interface states ``(left, right)`` including ghost traces at the domain edges.

    In 2D a pair is returned per axis.
    """
    op = make_operator(sol.mesh, sol.degree, flux, bc)
    if sol.ndim == 1:
        return op.interface_states(sol.coeffs, t)
    return tuple(op.interface_states(sol.coeffs, t, axis) for axis in (0, 1))


def project_function(func, mesh, degree, nvars=None):
    """L2 projection of ``func`` onto the DG space (``(N + 2)``-point Gauss per direction).

    ``func(x)`` (1D) or ``func(x, y)`` (2D) returns conserved variables with
    the variable axis first; scalar returns are promoted to one variable.
    """
    basis = BasisSet(degree)
    rule = gauss_rule(degree + 2)
    V = basis(rule.points)
    wV = V * rule.weights[:, None]
    if isinstance(mesh, Mesh1D):
        xq = mesh.nodes[:-1, None] + 0.5 * (1.0 + rule.points) * mesh.widths[:, None]
        vals = np.asarray(func(xq), dtype=float)
        if vals.ndim == 2:
            vals = vals[None]
        return DGSolution(mesh, degree, vals @ wV)
    mx, my = mesh.x, mesh.y
    xq = mx.nodes[:-1, None] + 0.5 * (1.0 + rule.points) * mx.widths[:, None]
    yq = my.nodes[:-1, None] + 0.5 * (1.0 + rule.points) * my.widths[:, None]
    X = xq[:, None, :, None]
    Y = yq[None, :, None, :]
    vals = np.asarray(func(*np.broadcast_arrays(X, Y)), dtype=float)
    if vals.ndim == 4:
        vals = vals[None]
    return DGSolution(mesh, degree, wV.T @ vals @ wV)


__all__ = [
    "BoundarySpec",
    "DGOperator1D",
    "DGOperator2D",
    "DGSolution",
    "apply_boundary",
    "compute_rhs",
    "lax_friedrichs",
    "make_operator",
    "project_function",
]
