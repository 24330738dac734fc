"""Finite difference in time / local discontinuous Galerkin in space for the
time-fractional diffusion-wave equation D_t^alpha u - u_xx = f, 1 < alpha < 2,
on a periodic interval."""
from .caputo import CaputoWeights, StateHistory, TimeGrid, beta, caputo_weights, history_rhs, solve_scalar_mode
from .dgfield import DGFunction, error_norms, evaluate, project_gauss_radau, project_l2, traces
from .harness import converge_space, converge_time, emit_outputs, example41, power_time_problem, verify_paper
from .ldg import LDGOperators, apply_gradient, assemble, solve_step
from .mesh import Mesh1D, QuadratureRule, basis_eval, build_mesh, build_uniform_mesh, gauss_rule
from .solver import ProblemSpec, SolveResult, advance, initialize, run

__version__ = "0.1.0"
