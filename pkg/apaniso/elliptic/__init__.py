"""
@file
@brief Shortcuts to *elliptic*.
"""

from .ap_solver import solve_g, compute_p, solve_p, solve_u, solve_h, solve
from .problem import EllipticProblem, DecomposedSolution
