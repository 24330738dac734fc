"""Norm history of the homogeneous problem for several alpha and dt.

u0 = sin(2 pi x) + 0.3 sin(4 pi x), u1 = 0, f = 0, N = 40, k = 2, 10/dt steps.
"""
import numpy as np

from fdldg import ProblemSpec, TimeGrid, build_uniform_mesh, run


def u0(x):
    return np.sin(2 * np.pi * x) + 0.3 * np.sin(4 * np.pi * x)


def zero(x):
    return 0.0 * x


mesh = build_uniform_mesh(0.0, 1.0, 40)
print(f"{'alpha':>5} {'dt':>6} {'steps':>6} {'max/initial':>12} {'final/initial':>14}")
for alpha in (1.1, 1.5, 1.9):
    for dt in (0.1, 0.01, 0.001):
        M = round(10 / dt)
        spec = ProblemSpec(alpha, 0.0, 1.0, M * dt, u0, zero, lambda x, t: 0.0 * x)
        res = run(spec, mesh, 2, TimeGrid(M * dt, M), keep_trajectory=True)
        norms = np.sqrt(np.sum(res.trajectory[1:] ** 2, axis=1))
        print(f"{alpha:5.2f} {dt:6.3f} {M:6d} {norms.max() / norms[0]:12.4f} {norms[-1] / norms[0]:14.3e}")
