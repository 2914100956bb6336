"""
@file
@brief Caches sparse factorizations. The g-problem and the h-problem
share the same matrix and the u-problem matrix does not change
between two time steps with the same time step.
"""
from ..helpers.cache import ObjectCache


class FactorizationCache(ObjectCache):
    """
    Stores factorizations indexed by the parameters
    which define a matrix, see @see cl ObjectCache.
    """
    pass
