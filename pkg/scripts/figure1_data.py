"""Exact vs computed solution at T = 1 (N = 100, k = 2), as plot-ready CSV.

    python3 scripts/figure1_data.py [alpha] [out.csv]
"""
import sys

import numpy as np

from fdldg import TimeGrid, build_uniform_mesh, emit_outputs, example41, run
from fdldg.harness import solution_samples

alpha = float(sys.argv[1]) if len(sys.argv) > 1 else 1.5
out = sys.argv[2] if len(sys.argv) > 2 else "figure1.csv"

prob = example41(alpha)
res = run(prob.spec, build_uniform_mesh(0.0, 1.0, 100), 2, TimeGrid(1.0, 1000))
emit_outputs(res, out, exact=prob.spec.exact)
data = solution_samples(res, prob.spec.exact)
print(f"alpha={alpha}: {len(data)} samples -> {out}, max|u_h - u| = {np.max(np.abs(data[:, 1] - data[:, 2])):.3e}")
