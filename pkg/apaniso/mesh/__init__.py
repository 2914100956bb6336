"""
@file
@brief Shortcuts to *mesh*.
"""

from .boundary import BoundaryClass, classify_boundary, outward_normals, INFLOW, OUTFLOW, TANGENT
from .io import write_field_csv, read_field_csv, write_fields_csv, fields_to_dataframe
from .mesh import Mesh, PrimalField, DualField, build_mesh
