"""
@file
@brief Shortcuts to *bfield*.
"""

from .fields import (
    AnisotropyField, ObliqueField, RadialCircularField, ElectricField,
    DomainError, oblique_field, radial_circular_field, make_field,
    test_electric_field)
