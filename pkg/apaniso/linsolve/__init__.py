"""
@file
@brief Shortcuts to *linsolve*.
"""

from .cache import FactorizationCache
from .solver import (
    solve, solve_array, refine, SolveReport, SolverOptions,
    SolverFailureError, SingularSystemError)
from .system import SparseSystem, assemble_second_order, constrained_nodes
