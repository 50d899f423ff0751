"""High-precision eigenpairs of ``u'' + (lambda - q(x)) u = 0`` with Dirichlet ends.

The potential ``q`` is a polynomial.  A piecewise-constant base potential is
solved exactly, then corrected layer by layer with closed-form coefficient
recursions; every integral is evaluated symbolically.
"""
from .basic import BasicEigenpair, find_basic_eigenvalue, solve_basic
from .corrections import CorrectionLayer, correction_step
from .driver import APrioriBound, FDResult, ProblemConfig, eval_approx, run_fd, theorem1_bounds
from .errors import FDError
from .potential import BasePolicy, Mesh, PolynomialPotential, build_base_potential
from .scalars import PrecisionContext
from .verify import KNOWN_EXACT, ResidualReport, oracle_eigenvalue, residual_norm

__all__ = [
    "APrioriBound", "BasePolicy", "BasicEigenpair", "CorrectionLayer", "FDError", "FDResult", "Mesh",
    "KNOWN_EXACT", "PolynomialPotential", "PrecisionContext", "ProblemConfig",
    "ResidualReport", "build_base_potential", "correction_step", "eval_approx",
    "find_basic_eigenvalue", "oracle_eigenvalue", "residual_norm", "run_fd", "solve_basic",
    "theorem1_bounds",
]
