"""LDG gradient/divergence operators with alternating fluxes, and the step matrix.

With the orthonormal basis the gradient equation reads p + B u = 0, the
divergence term of the u-equation is E p, and with E = -B^T the implicit step
matrix is A = 3 I + beta B^T B (symmetric positive definite).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .caputo import beta as caputo_beta
from .dgfield import DGFunction
from .mesh import Mesh1D, assembly_quad_points, gauss_rule, legendre_deriv_table, legendre_table, mode_scale

FLUX_ORIENTATIONS = ("alternating", "mirrored")


def reference_stiffness(k: int) -> np.ndarray:
    """S[l, m] = s_l s_m * int_{-1}^{1} P_l'(xi) P_m(xi) dxi, s = sqrt(2m+1)."""
    rule = gauss_rule(assembly_quad_points(k))
    dP = legendre_deriv_table(k, rule.nodes)
    P = legendre_table(k, rule.nodes)
    s = mode_scale(k)
    return np.outer(s, s) * ((dP * rule.weights) @ P.T)


def flux_operator(mesh: Mesh1D, k: int, trace: str) -> np.ndarray:
    """Matrix of z -> int z w_x - sum_j [(zhat w^-)_{j+1/2} - (zhat w^+)_{j-1/2}].

    Row (j, l) tests against w = phi_{j,l}. ``trace`` selects the numerical flux:
    'minus' takes zhat from the left cell of each interface, 'plus' from the right.
    Interfaces wrap periodically.
    """
    if trace not in ("minus", "plus"):
        raise ValueError(f"trace must be 'minus' or 'plus', got {trace!r}")
    N, nb = mesh.n_cells, k + 1
    dx = mesh.widths
    s = mode_scale(k)
    sign = (-1.0) ** np.arange(nb)
    right = s  # sqrt(dx) * phi at the right end
    left = s * sign  # sqrt(dx) * phi at the left end
    S = reference_stiffness(k)
    op = np.zeros((N * nb, N * nb))
    for j in range(N):
        jm, jp = (j - 1) % N, (j + 1) % N
        rows = slice(j * nb, (j + 1) * nb)
        op[rows, j * nb : (j + 1) * nb] += S / dx[j]
        if trace == "minus":
            # zhat_{j+1/2} from cell j (right end), zhat_{j-1/2} from cell j-1 (right end)
            op[rows, j * nb : (j + 1) * nb] -= np.outer(right, right) / dx[j]
            op[rows, jm * nb : (jm + 1) * nb] += np.outer(left, right) / np.sqrt(dx[j] * dx[jm])
        else:
            # zhat_{j+1/2} from cell j+1 (left end), zhat_{j-1/2} from cell j (left end)
            op[rows, jp * nb : (jp + 1) * nb] -= np.outer(right, left) / np.sqrt(dx[j] * dx[jp])
            op[rows, j * nb : (j + 1) * nb] += np.outer(left, left) / dx[j]
    return op


@dataclass(frozen=True)
class LDGOperators:
    mesh: Mesh1D
    k: int
    beta: float
    B: np.ndarray = field(repr=False)
    E: np.ndarray = field(repr=False)
    L: np.ndarray = field(repr=False)
    A: np.ndarray = field(repr=False)
    cho: tuple = field(repr=False)
    flux: str = "alternating"

    @property
    def ndof(self) -> int:
        return self.B.shape[0]


def assemble(mesh: Mesh1D, k: int, alpha: float, dt: float, flux: str = "alternating") -> LDGOperators:
    """Build B, E, L = B^T B and A = 3I + beta L, and factor A once.

    ``flux='alternating'`` takes uhat = u^-, phat = p^+; ``'mirrored'`` swaps the sides.
    """
    if flux not in FLUX_ORIENTATIONS:
        raise ValueError(f"unknown flux orientation {flux!r}")
    if k < 0:
        raise ValueError("degree must be non-negative")
    u_side, p_side = ("minus", "plus") if flux == "alternating" else ("plus", "minus")
    B = flux_operator(mesh, k, u_side)
    E = flux_operator(mesh, k, p_side)
    L = B.T @ B
    b = caputo_beta(alpha, dt)
    A = 3.0 * np.eye(B.shape[0]) + b * L
    try:
        cho = sla.cho_factor(A, lower=True)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError("step matrix is not positive definite") from exc
    for arr in (B, E, L, A):
        arr.setflags(write=False)
    return LDGOperators(mesh, k, b, B, E, L, A, cho, flux)


def apply_gradient(ops: LDGOperators, u: DGFunction) -> DGFunction:
    """p_h = -B u, the LDG approximation of u_x."""
    if u.k != ops.k or u.mesh.n_cells != ops.mesh.n_cells:
        raise ValueError("DG function does not match the operator discretization")
    return DGFunction(u.mesh, u.k, -(ops.B @ u.vector))


def solve_step(ops: LDGOperators, rhs) -> np.ndarray:
    """Solve A u = rhs with the stored Cholesky factor."""
    rhs = np.asarray(rhs, dtype=float)
    return sla.cho_solve(ops.cho, rhs)
