"""
@file
@brief Shortcuts to *discrete*.
"""

from .operators import (
    b_grad_app, b_grad_extended, div_b_app, second_order_app, operator_cache,
    b_grad_matrix, div_b_matrix, second_order_matrix, gradient_matrices,
    OperatorStencil, operator_stencils,
    node_average, node_divergence, cell_gradient)
