"""Time discretization of the Caputo derivative of order 1 < alpha < 2.

After multiplying through by beta = 2 dt^alpha Gamma(3-alpha), step n of the
semi-discrete scheme reads

    3 u^n - beta u^n_xx = sum_{i=1}^{n-1} (b_{n-i-1} - b_{n-i}) D^i
                          + 2 dt b_{n-1} v^0 + beta f^n + 4 u^{n-1} - u^{n-2},

with D^i = 3u^i - 4u^{i-1} + u^{i-2}, b_0 = 1, b_i = (i+1)^{2-alpha} - i^{2-alpha}
and the ghost level u^{-1} = u^0 - dt u_1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np


def _check_alpha(alpha: float) -> None:
    if not 1.0 < alpha < 2.0:
        raise ValueError(f"alpha must lie in (1, 2), got {alpha}")


@dataclass(frozen=True)
class TimeGrid:
    T: float
    M: int

    def __post_init__(self):
        if self.T <= 0.0:
            raise ValueError(f"final time must be positive, got {self.T}")
        if int(self.M) != self.M or self.M < 2:
            raise ValueError(f"need at least two time steps, got M={self.M}")
        object.__setattr__(self, "M", int(self.M))

    @classmethod
    def from_step(cls, T: float, dt: float) -> "TimeGrid":
        """Grid with M = round(T/dt); the effective step T/M may differ from dt."""
        if dt <= 0.0:
            raise ValueError(f"time step must be positive, got {dt}")
        return cls(T, max(int(round(T / dt)), 1))

    @property
    def dt(self) -> float:
        return self.T / self.M

    def t(self, n: int) -> float:
        return n * self.T / self.M


def gamma(x: float) -> float:
    return math.gamma(x)


def beta(alpha: float, dt: float) -> float:
    """2 dt^alpha Gamma(3 - alpha)."""
    if dt <= 0.0:
        raise ValueError(f"time step must be positive, got {dt}")
    if not 1.0 <= alpha <= 2.0:
        raise ValueError(f"alpha must lie in [1, 2], got {alpha}")
    return 2.0 * dt**alpha * gamma(3.0 - alpha)


def b_sequence(alpha: float, M: int) -> np.ndarray:
    """b_0..b_{M-1}; the difference of powers is formed without cancellation."""
    g = 2.0 - alpha
    i = np.arange(1, M, dtype=float)
    b = np.empty(M)
    b[0] = 1.0
    b[1:] = np.exp(g * np.log(i)) * np.expm1(g * np.log1p(1.0 / i))
    return b


@dataclass(frozen=True)
class CaputoWeights:
    alpha: float
    b: np.ndarray
    dt: float | None = None
    beta: float | None = None

    @property
    def b_diff(self) -> np.ndarray:
        """c_s = b_{s-1} - b_s for s = 1..M-1 (stored at index s-1)."""
        return self.b[:-1] - self.b[1:]


def caputo_weights(alpha: float, M: int, dt: float | None = None) -> CaputoWeights:
    """Weights b_0..b_{M-1}; beta is filled in when the step size is given."""
    _check_alpha(alpha)
    if int(M) != M or M < 1:
        raise ValueError(f"need M >= 1, got {M}")
    b = b_sequence(alpha, int(M))
    b.setflags(write=False)
    return CaputoWeights(alpha, b, dt, None if dt is None else beta(alpha, dt))


def weights_for_grid(alpha: float, grid: TimeGrid) -> CaputoWeights:
    return caputo_weights(alpha, grid.M, grid.dt)


class StateHistory:
    """u^{-1}, u^0, ..., u^{n-1} plus v^0, all as flat coefficient vectors.

    The three-point differences D^i are cached as levels arrive so the history
    sum at step n is a single (n-1)-term weighted reduction.
    """

    def __init__(self, u_ghost, u0, v0, capacity: int):
        u0 = np.asarray(u0, dtype=float)
        self.shape = u0.shape
        self._u = np.empty((capacity + 2,) + self.shape)
        self._d = np.empty((capacity + 1,) + self.shape)
        self._u[0] = u_ghost
        self._u[1] = u0
        self.v0 = np.array(v0, dtype=float)
        self._count = 2  # levels -1 and 0

    @property
    def latest(self) -> int:
        """Index of the newest stored level."""
        return self._count - 2

    def __getitem__(self, i: int) -> np.ndarray:
        if not -1 <= i <= self.latest:
            raise IndexError(f"level {i} not in history (-1..{self.latest})")
        return self._u[i + 1]

    def append(self, u) -> None:
        n = self._count - 1
        if self._count >= self._u.shape[0]:
            raise IndexError("history capacity exhausted")
        self._u[self._count] = u
        self._d[n] = 3.0 * self._u[n + 1] - 4.0 * self._u[n] + self._u[n - 1]
        self._count += 1

    def differences(self, upto: int) -> np.ndarray:
        """D^1..D^upto stacked along the first axis."""
        return self._d[1 : upto + 1]

    def trajectory(self) -> np.ndarray:
        """Stored levels u^{-1}..u^{latest}."""
        return self._u[: self._count].copy()


def history_rhs(hist: StateHistory, w: CaputoWeights, n: int) -> np.ndarray:
    """Right side of step n without the beta f^n load term."""
    if w.dt is None:
        raise ValueError("weights need a time step")
    if n < 1 or n > w.b.size:
        raise ValueError(f"step {n} outside 1..{w.b.size}")
    if hist.latest < n - 1:
        raise ValueError(f"history holds levels up to {hist.latest}, step {n} needs {n - 1}")
    rhs = 2.0 * w.dt * w.b[n - 1] * hist.v0 + 4.0 * hist[n - 1] - hist[n - 2]
    if n >= 2:
        coef = w.b_diff[: n - 1][::-1]  # (b_{n-i-1} - b_{n-i}) for i = 1..n-1
        rhs = rhs + np.tensordot(coef, hist.differences(n - 1), axes=1)
    return rhs


def solve_scalar_mode(
    lam: float,
    g_exact: Callable[[float], float],
    f_g: Callable[[float], float],
    alpha: float,
    grid: TimeGrid,
    dg0: float = 0.0,
):
    """March D^alpha g + lam g = f_g with the same time scheme; one Fourier mode.

    ``dg0`` is g'(0); g(0) is taken from ``g_exact``. Returns the values g^0..g^M
    and the final error |g^M - g_exact(T)|.
    """
    _check_alpha(alpha)
    w = weights_for_grid(alpha, grid)
    lhs = 3.0 + w.beta * lam
    assert lhs > 0.0, "scalar system is not positive"
    g0 = float(g_exact(0.0))
    hist = StateHistory(np.array([g0 - grid.dt * dg0]), np.array([g0]), np.array([dg0]), grid.M)
    for n in range(1, grid.M + 1):
        rhs = history_rhs(hist, w, n) + w.beta * f_g(grid.t(n))
        hist.append(rhs / lhs)
    values = hist.trajectory()[1:, 0]
    return values, abs(values[-1] - g_exact(grid.T))
