"""
@file
@brief Shortcuts to *harness*.
"""

from .manufactured import (
    oblique_manufactured, radial_manufactured, quadratic_inhomogeneous,
    aligned_average, make_case, case_box, CASES)
from .norms import error_norms, ErrorTriple, UndefinedRatioError
from .studies import (
    SweepResult, fit_slope, convergence_study, angle_sweep,
    p_accuracy_study, el_compare)
