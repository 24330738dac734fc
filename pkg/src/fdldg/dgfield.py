"""Members of the broken space V_h^k and the projections acting on them."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .mesh import (
    ERROR_QUAD_POINTS,
    Mesh1D,
    assembly_quad_points,
    gauss_rule,
    reference_basis,
)

# Vectorized callable x -> values; exact solutions, f(., t_n), u0 and u1 all take this form.
ScalarField = Callable[[np.ndarray], np.ndarray]


@dataclass
class DGFunction:
    """Modal coefficients, entry (j, m) multiplying phi_{j,m}."""

    mesh: Mesh1D
    k: int
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=float)
        shape = (self.mesh.n_cells, self.k + 1)
        if self.coeffs.shape != shape:
            if self.coeffs.size == shape[0] * shape[1]:
                self.coeffs = self.coeffs.reshape(shape)
            else:
                raise ValueError(f"coefficients of shape {self.coeffs.shape}, expected {shape}")

    @classmethod
    def zeros(cls, mesh: Mesh1D, k: int) -> "DGFunction":
        return cls(mesh, k, np.zeros((mesh.n_cells, k + 1)))

    @property
    def vector(self) -> np.ndarray:
        """Flat coefficient vector, index j*(k+1) + m."""
        return self.coeffs.reshape(-1)

    def norm(self) -> float:
        # orthonormal basis: Parseval
        return float(np.sqrt(np.sum(self.coeffs**2)))

    def values_at_reference(self, xi) -> np.ndarray:
        """u at the reference points xi of every cell, shape (N, len(xi))."""
        phi = reference_basis(self.k, xi)
        return (self.coeffs / np.sqrt(self.mesh.widths)[:, None]) @ phi

    def __call__(self, x):
        return evaluate(self, x)


def _cell_values(omega: ScalarField, mesh: Mesh1D, xi) -> np.ndarray:
    x = mesh.map_to_physical(xi)
    vals = np.asarray(omega(x), dtype=float)
    return np.broadcast_to(vals, x.shape)


def project_l2(omega: ScalarField, mesh: Mesh1D, k: int, q: int | None = None) -> DGFunction:
    """L2 projection: coefficient (j, m) = integral of omega * phi_{j,m} over I_j."""
    rule = gauss_rule(q or assembly_quad_points(k))
    vals = _cell_values(omega, mesh, rule.nodes)
    phi = reference_basis(k, rule.nodes)
    # dx/2 from the Jacobian, 1/sqrt(dx) from the basis
    scale = 0.5 * np.sqrt(mesh.widths)[:, None]
    return DGFunction(mesh, k, scale * ((vals * rule.weights) @ phi.T))


def project_gauss_radau(
    omega: ScalarField, mesh: Mesh1D, k: int, side: str, q: int | None = None
) -> DGFunction:
    """Gauss-Radau projection P+ (side='plus') or P- (side='minus').

    Moments against P^{k-1}(I_j) are matched, together with the value of omega at
    the left (plus) or right (minus) endpoint of each cell. With the orthonormal
    basis the local system is triangular: the first k coefficients are the L2
    moments and the last one is fixed by the endpoint condition.
    """
    if side not in ("plus", "minus"):
        raise ValueError(f"side must be 'plus' or 'minus', got {side!r}")
    if k < 0:
        raise ValueError("degree must be non-negative")
    coeffs = project_l2(omega, mesh, k, q).coeffs.copy()
    if side == "minus":
        xi_end, x_end = 1.0, mesh.boundaries[1:]
    else:
        xi_end, x_end = -1.0, mesh.boundaries[:-1]
    end_phi = reference_basis(k, [xi_end])[:, 0] / np.sqrt(mesh.widths)[:, None]
    target = np.broadcast_to(np.asarray(omega(x_end), dtype=float), x_end.shape)
    partial = np.sum(coeffs[:, :k] * end_phi[:, :k], axis=1)
    lead = end_phi[:, k]
    assert np.all(np.abs(lead) > 0.0), "singular Gauss-Radau system"
    coeffs[:, k] = (target - partial) / lead
    return DGFunction(mesh, k, coeffs)


def evaluate(u: DGFunction, x):
    """Point values of u; at an interior interface the left-cell value is returned."""
    x = np.asarray(x, dtype=float)
    shape = x.shape
    x = x.ravel()
    mesh = u.mesh
    j = mesh.locate(x)
    xi = 2.0 * (x - mesh.centers[j]) / mesh.widths[j]
    phi = reference_basis(u.k, xi)  # (k+1, npts)
    vals = np.einsum("pm,mp->p", u.coeffs[j], phi) / np.sqrt(mesh.widths[j])
    return float(vals[0]) if shape == () else vals.reshape(shape)


def traces(u: DGFunction) -> tuple[np.ndarray, np.ndarray]:
    """(u_minus, u_plus) at interfaces x_{j+1/2}, j = 0..N-1, with periodic wrap.

    u_minus[j] is the right-end value of cell j and u_plus[j] the left-end value
    of cell j+1 (cell 0 for the last interface).
    """
    right = u.values_at_reference([1.0])[:, 0]
    left = u.values_at_reference([-1.0])[:, 0]
    return right, np.roll(left, -1)


def error_norms(u: DGFunction, omega: ScalarField, q: int = ERROR_QUAD_POINTS):
    """(L2, L1, Linf) of u - omega.

    L2 and L1 use a q-point Gauss rule per cell. Linf is the largest |u - omega|
    over those nodes and both cell endpoints; DG errors peak at the endpoints,
    so the interior nodes alone understate it by ~10% for k = 2.
    """
    rule = gauss_rule(q)
    diff = u.values_at_reference(rule.nodes) - _cell_values(omega, u.mesh, rule.nodes)
    ends = np.array([-1.0, 1.0])
    diff_ends = u.values_at_reference(ends) - _cell_values(omega, u.mesh, ends)
    jac = 0.5 * u.mesh.widths[:, None]
    l2 = float(np.sqrt(np.sum(jac * rule.weights * diff**2)))
    l1 = float(np.sum(jac * rule.weights * np.abs(diff)))
    linf = float(max(np.max(np.abs(diff)), np.max(np.abs(diff_ends))))
    return l2, l1, linf
