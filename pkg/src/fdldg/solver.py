"""Time marching for D_t^alpha u - u_xx = f on a periodic interval."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .caputo import CaputoWeights, StateHistory, TimeGrid, history_rhs, weights_for_grid
from .dgfield import DGFunction, ScalarField, project_l2
from .ldg import LDGOperators, assemble, solve_step
from .mesh import Mesh1D

SpaceTimeField = Callable[[np.ndarray, float], np.ndarray]


@dataclass
class ProblemSpec:
    alpha: float
    a: float
    b: float
    T: float
    u0: ScalarField
    u1: ScalarField
    f: SpaceTimeField
    exact: SpaceTimeField | None = None

    def __post_init__(self):
        if not 1.0 < self.alpha < 2.0:
            raise ValueError(f"alpha must lie in (1, 2), got {self.alpha}")
        if self.T <= 0.0:
            raise ValueError(f"final time must be positive, got {self.T}")
        if not self.a < self.b:
            raise ValueError("empty domain")


@dataclass
class SolveResult:
    solution: DGFunction
    grid: TimeGrid
    steps: int
    wall_time: float
    trajectory: np.ndarray | None = field(default=None, repr=False)

    def level(self, n: int) -> DGFunction:
        """u_h^n from the stored trajectory (n = -1..M)."""
        if self.trajectory is None:
            raise ValueError("trajectory was not kept for this run")
        u = self.solution
        return DGFunction(u.mesh, u.k, self.trajectory[n + 1])


def initialize(spec: ProblemSpec, mesh: Mesh1D, k: int, grid: TimeGrid) -> StateHistory:
    """u^0 = P u0, v^0 = P u1 and the ghost u^{-1} = u^0 - dt v^0."""
    u0 = project_l2(spec.u0, mesh, k).vector
    v0 = project_l2(spec.u1, mesh, k).vector
    # P is linear, so P(u0 - dt u1) is formed directly on the coefficients
    return StateHistory(u0 - grid.dt * v0, u0, v0, grid.M)


def load_vector(spec: ProblemSpec, mesh: Mesh1D, k: int, t: float) -> np.ndarray:
    return project_l2(lambda x: spec.f(x, t), mesh, k).vector


def advance(
    hist: StateHistory,
    ops: LDGOperators,
    weights: CaputoWeights,
    spec: ProblemSpec,
    n: int,
    grid: TimeGrid,
) -> DGFunction:
    """Compute u^n from levels up to n-1 and append it to the history."""
    rhs = history_rhs(hist, weights, n) + ops.beta * load_vector(spec, ops.mesh, ops.k, grid.t(n))
    un = solve_step(ops, rhs)
    hist.append(un)
    return DGFunction(ops.mesh, ops.k, un)


def run(
    spec: ProblemSpec,
    mesh: Mesh1D,
    k: int,
    grid: TimeGrid,
    keep_trajectory: bool = False,
    flux: str = "alternating",
) -> SolveResult:
    start = time.perf_counter()
    weights = weights_for_grid(spec.alpha, grid)
    ops = assemble(mesh, k, spec.alpha, grid.dt, flux=flux)
    hist = initialize(spec, mesh, k, grid)
    u = DGFunction(mesh, k, hist[0].copy())
    for n in range(1, grid.M + 1):
        u = advance(hist, ops, weights, spec, n, grid)
    return SolveResult(
        solution=u,
        grid=grid,
        steps=hist.latest,
        wall_time=time.perf_counter() - start,
        trajectory=hist.trajectory() if keep_trajectory else None,
    )
