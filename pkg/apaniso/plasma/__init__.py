"""
@file
@brief Shortcuts to *plasma*.
"""

from .driver import initial_state, run, time_steps, RunResult
from .hyperbolic import (
    fill_ghosts, convective_divergence, momentum_divergence, boundary_flux,
    drift_momentum, density_nodes, density_gradient)
from .scheme import (
    cfl_dt, lorentz_solve, predict_perpendicular, build_parallel_rhs,
    parallel_momentum_solve, perpendicular_momentum_update, density_update,
    check_state, step_ap, step_classical, step)
from .state import PlasmaState, PlasmaConfig, StepReport, InstabilityError
