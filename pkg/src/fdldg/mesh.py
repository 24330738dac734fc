"""Periodic 1-D meshes, Gauss-Legendre quadrature and the orthonormal Legendre basis.

Every cell carries the scaled Legendre basis

    phi_{j,m}(x) = sqrt((2m+1)/dx_j) * P_m(xi),   xi = 2(x - xc_j)/dx_j,

which is L2-orthonormal on its cell, so all cell mass matrices are the identity.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import legendre as npleg

#: number of Gauss points used when measuring errors
ERROR_QUAD_POINTS = 10


def assembly_quad_points(k: int) -> int:
    """Quadrature size for inner products in assembly and projection."""
    return k + 3


@dataclass(frozen=True)
class Mesh1D:
    boundaries: np.ndarray
    periodic: bool = True
    widths: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        x = np.asarray(self.boundaries, dtype=float)
        if x.ndim != 1 or x.size < 3:
            raise ValueError("a mesh needs at least two cells")
        w = np.diff(x)
        if np.any(w <= 0.0):
            raise ValueError("cell boundaries must be strictly increasing")
        x.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "boundaries", x)
        object.__setattr__(self, "widths", w)

    @property
    def a(self) -> float:
        return float(self.boundaries[0])

    @property
    def b(self) -> float:
        return float(self.boundaries[-1])

    @property
    def n_cells(self) -> int:
        return self.widths.size

    @property
    def h(self) -> float:
        return float(self.widths.max())

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.boundaries[:-1] + self.boundaries[1:])

    def locate(self, x):
        """Index of the cell owning each point; interior interfaces go to the left cell."""
        x = np.asarray(x, dtype=float)
        if np.any(x < self.a) or np.any(x > self.b):
            raise ValueError(f"point outside [{self.a}, {self.b}]")
        j = np.searchsorted(self.boundaries, x, side="left") - 1
        return np.clip(j, 0, self.n_cells - 1)

    def map_to_physical(self, xi):
        """Physical coordinates of reference points xi, shape (N, len(xi))."""
        xi = np.asarray(xi, dtype=float)
        return self.centers[:, None] + 0.5 * self.widths[:, None] * xi[None, :]


def build_uniform_mesh(a: float, b: float, N: int) -> Mesh1D:
    if int(N) != N or N < 2:
        raise ValueError(f"need an integer N >= 2 cells, got {N}")
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    x = np.linspace(a, b, int(N) + 1)
    return Mesh1D(x)


def build_mesh(boundaries) -> Mesh1D:
    """Mesh from explicit (possibly non-uniform) cell boundaries."""
    return Mesh1D(np.asarray(boundaries, dtype=float))


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def order(self) -> int:
        return self.nodes.size


def gauss_rule(q: int) -> QuadratureRule:
    """q-point Gauss-Legendre rule on [-1, 1]; exact for degree 2q-1."""
    if int(q) != q or q < 1:
        raise ValueError(f"quadrature needs q >= 1 points, got {q}")
    nodes, weights = npleg.leggauss(int(q))
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(nodes, weights)


def legendre_table(k: int, xi) -> np.ndarray:
    """P_m(xi) for m = 0..k, shape (k+1, len(xi)), by the three-term recurrence."""
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    P = np.empty((k + 1, xi.size))
    P[0] = 1.0
    if k >= 1:
        P[1] = xi
    for m in range(2, k + 1):
        P[m] = ((2 * m - 1) * xi * P[m - 1] - (m - 1) * P[m - 2]) / m
    return P


def legendre_deriv_table(k: int, xi) -> np.ndarray:
    """dP_m/dxi for m = 0..k, shape (k+1, len(xi))."""
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    dP = np.zeros((k + 1, xi.size))
    for m in range(1, k + 1):
        dP[m] = npleg.legval(xi, npleg.legder(np.eye(k + 1)[m]))
    return dP


def mode_scale(k: int) -> np.ndarray:
    """sqrt(2m+1), the reference part of the orthonormal scaling."""
    return np.sqrt(2.0 * np.arange(k + 1) + 1.0)


def reference_basis(k: int, xi) -> np.ndarray:
    """sqrt(2m+1) P_m(xi), shape (k+1, len(xi)); divide by sqrt(dx) for the cell basis."""
    return mode_scale(k)[:, None] * legendre_table(k, xi)


def basis_eval(mesh: Mesh1D, k: int, m: int, j: int, x: float) -> float:
    """Value of phi_{j,m} at a point x of cell j."""
    if not 0 <= m <= k:
        raise ValueError(f"mode {m} outside 0..{k}")
    lo, hi = mesh.boundaries[j], mesh.boundaries[j + 1]
    if not lo <= x <= hi:
        raise ValueError(f"x={x} is outside cell {j} = [{lo}, {hi}]")
    dx = mesh.widths[j]
    xi = 2.0 * (x - 0.5 * (lo + hi)) / dx
    return float(np.sqrt((2 * m + 1) / dx) * legendre_table(m, xi)[m, 0])
