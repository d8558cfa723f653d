"""Discontinuous Galerkin solver with compact subcell WENO limiting.

Typical use::

    from cswenodg import run_problem, error_norms

    res = run_problem("sod", degree=2, cells=200)
    l1, linf = error_norms(res.sol, res.spec.oracle, res.state.t)
"""
from .basis import BasisSet, gauss_lobatto_rule, gauss_rule, reference_tables
from .boundary import BoundarySpec, Periodic, Prescribed, Reflective, Split, Transmissive
from .dg import (DGOperator1D, DGOperator2D, DGSolution, apply_boundary, compute_rhs, lax_friedrichs,
                 make_operator, project_function)
from .errors import ErrorReport, convergence_study, error_norms, observed_orders
from .exceptions import CSWENOError, ConfigError, InvalidArgumentError, OracleError, StateError
from .indicator import kxrcf_detect
from .limiter import Limiter, positivity_fix
from .mesh import Mesh1D, Mesh2D, build_uniform_1d, build_uniform_2d, perturb_mesh, perturb_mesh_2d
from .physics import BuckleyLeverett, Burgers, Euler, FluxModel
from .problems import PROBLEMS, ProblemSpec, RunConfig, RunResult, get_problem, list_problems, run_problem
from .timestep import RunState, compute_dt, integrate, ssp_rk3_step

__version__ = "0.1.0"

__all__ = [
    "BasisSet", "BoundarySpec", "BuckleyLeverett", "Burgers", "CSWENOError", "ConfigError",
    "DGOperator1D", "DGOperator2D", "DGSolution", "ErrorReport", "Euler", "FluxModel",
    "InvalidArgumentError", "Limiter", "Mesh1D", "Mesh2D", "OracleError", "PROBLEMS", "Periodic",
    "Prescribed", "ProblemSpec", "Reflective", "RunConfig", "RunResult", "RunState", "Split",
    "StateError", "Transmissive", "apply_boundary", "build_uniform_1d", "build_uniform_2d",
    "compute_dt", "compute_rhs", "convergence_study", "error_norms", "gauss_lobatto_rule",
    "gauss_rule", "get_problem", "integrate", "kxrcf_detect", "lax_friedrichs", "list_problems",
    "make_operator", "observed_orders", "perturb_mesh", "perturb_mesh_2d", "positivity_fix",
    "project_function", "reference_tables", "run_problem", "ssp_rk3_step",
]
