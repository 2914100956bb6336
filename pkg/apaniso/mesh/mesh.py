"""
@file
@brief Primal rectangle mesh and dual node mesh on a rectangular domain.

The primal cell ``(i, j)``, ``0 <= i < nx``, ``0 <= j < ny``
is the rectangle :math:`]x_i, x_{i+1}[ \\times ]y_j, y_{j+1}[`,
the dual node ``(i, j)``, ``0 <= i <= nx``, ``0 <= j <= ny``
is the point :math:`(x_i, y_j)`. Values are stored in arrays
of shape ``(nx, ny)`` and ``(nx + 1, ny + 1)``, the first axis
follows *x*. Flattening uses row-major order.
"""
import numpy
from ..helpers.parameters import format_function_call


class Mesh:
    """
    Cartesian mesh of a rectangle, it holds the coordinates of the
    dual nodes and of the primal cell centers. Instances should
    be created with @see fn build_mesh.
    """

    def __init__(self, x0, x1, y0, y1, nx, ny):
        """
        @param      x0, x1      bounds along *x*
        @param      y0, y1      bounds along *y*
        @param      nx, ny      number of cells along every axis
        """
        self._params = (float(x0), float(x1), float(y0), float(y1),
                        int(nx), int(ny))
        self.dx = (self.x1 - self.x0) / self.nx
        self.dy = (self.y1 - self.y0) / self.ny

    x0 = property(lambda self: self._params[0])
    x1 = property(lambda self: self._params[1])
    y0 = property(lambda self: self._params[2])
    y1 = property(lambda self: self._params[3])
    nx = property(lambda self: self._params[4])
    ny = property(lambda self: self._params[5])

    @property
    def key(self):
        "Hashable key identifying the mesh."
        return self._params

    def __eq__(self, other):
        return isinstance(other, Mesh) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return format_function_call(
            "Mesh", dict(x0=self.x0, x1=self.x1, y0=self.y0, y1=self.y1,
                         nx=self.nx, ny=self.ny))

    @property
    def primal_shape(self):
        "Shape of a primal array."
        return (self.nx, self.ny)

    @property
    def dual_shape(self):
        "Shape of a dual array."
        return (self.nx + 1, self.ny + 1)

    @property
    def n_primal(self):
        "Number of primal cells."
        return self.nx * self.ny

    @property
    def n_dual(self):
        "Number of dual nodes."
        return (self.nx + 1) * (self.ny + 1)

    @property
    def cell_area(self):
        "Area of a primal cell."
        return self.dx * self.dy

    @property
    def x(self):
        "Node abscissas :math:`x_i`."
        return self.x0 + numpy.arange(self.nx + 1) * self.dx

    @property
    def y(self):
        "Node ordinates :math:`y_j`."
        return self.y0 + numpy.arange(self.ny + 1) * self.dy

    @property
    def xc(self):
        "Cell center abscissas :math:`x_{i+1/2}`."
        return self.x0 + (numpy.arange(self.nx) + 0.5) * self.dx

    @property
    def yc(self):
        "Cell center ordinates :math:`y_{j+1/2}`."
        return self.y0 + (numpy.arange(self.ny) + 0.5) * self.dy

    def dual_coordinates(self):
        """
        Returns the coordinates of the dual nodes as two arrays
        of shape ``(nx + 1, ny + 1)``.
        """
        return numpy.meshgrid(self.x, self.y, indexing='ij')

    def primal_coordinates(self, ghost=0):
        """
        Returns the coordinates of the cell centers as two arrays
        of shape ``(nx, ny)``.

        @param      ghost       number of layers of ghost cells
                                added around the domain
        @return                 x, y
        """
        xc = self.x0 + (numpy.arange(-ghost, self.nx + ghost) + 0.5) * self.dx
        yc = self.y0 + (numpy.arange(-ghost, self.ny + ghost) + 0.5) * self.dy
        return numpy.meshgrid(xc, yc, indexing='ij')

    def boundary_mask(self):
        """
        Returns a boolean array of shape ``(nx + 1, ny + 1)``,
        True for the dual nodes on the boundary.
        """
        mask = numpy.zeros(self.dual_shape, dtype=bool)
        mask[0, :] = True
        mask[-1, :] = True
        mask[:, 0] = True
        mask[:, -1] = True
        return mask

    def dual_index(self, i, j):
        "Flat index of dual node *(i, j)*."
        return i * (self.ny + 1) + j

    def primal_index(self, i, j):
        "Flat index of primal cell *(i, j)*."
        return i * self.ny + j

    def adjacent_cells(self, i, j):
        """
        Returns the primal cells around dual node *(i, j)*,
        up to four, fewer on the boundary.
        """
        res = []
        for a in (i - 1, i):
            for b in (j - 1, j):
                if 0 <= a < self.nx and 0 <= b < self.ny:
                    res.append((a, b))
        return res

    def refine(self, factor=2):
        """
        Returns a mesh with *factor* times more cells along each axis.
        The cell boundaries of this mesh are cell boundaries
        of the refined mesh.
        """
        return Mesh(self.x0, self.x1, self.y0, self.y1,
                    self.nx * factor, self.ny * factor)


def build_mesh(x0, x1, y0, y1, nx, ny):
    """
    Builds a mesh.

    @param      x0, x1      bounds along *x*, *x1 > x0*
    @param      y0, y1      bounds along *y*, *y1 > y0*
    @param      nx, ny      positive number of cells
    @return                 @see cl Mesh

    .. runpython::
        :showcode:

        from apaniso.mesh import build_mesh
        mesh = build_mesh(0, 1, 0, 1, 2, 2)
        print(mesh, mesh.dx, mesh.n_primal, mesh.n_dual)
    """
    for name, v in [('nx', nx), ('ny', ny)]:
        if isinstance(v, bool) or not isinstance(v, (int, numpy.integer)):
            raise TypeError("{0} must be an integer not {1}".format(name, type(v)))
        if v <= 0:
            raise ValueError("{0} must be positive not {1}".format(name, v))
    bounds = numpy.array([x0, x1, y0, y1], dtype=numpy.float64)
    if not numpy.isfinite(bounds).all():
        raise ValueError("Domain bounds must be finite: {0}".format(bounds))
    if x1 <= x0 or y1 <= y0:
        raise ValueError(
            "Empty domain [{0},{1}]x[{2},{3}]".format(x0, x1, y0, y1))
    return Mesh(x0, x1, y0, y1, nx, ny)


class _Field:
    """
    Piecewise constant scalar values attached to a mesh.
    Arithmetic returns new fields.
    """

    _kind = None

    def __init__(self, mesh, values, check=True):
        """
        @param      mesh        @see cl Mesh
        @param      values      array, flat or 2D
        @param      check       checks values are finite
        """
        shape = self._shape(mesh)
        values = numpy.asarray(values, dtype=numpy.float64)
        if values.size != shape[0] * shape[1]:
            raise ValueError("{0}: expecting {1} values not {2}".format(
                self.__class__.__name__, shape[0] * shape[1], values.size))
        if check and not numpy.isfinite(values).all():
            raise ValueError("{0} contains non finite values.".format(
                self.__class__.__name__))
        self.mesh = mesh
        self.values = values.reshape(shape)
        self.values.flags.writeable = False

    @staticmethod
    def _shape(mesh):
        raise NotImplementedError()  # pragma: no cover

    def coordinates(self):
        "Coordinates of the points the values are attached to."
        raise NotImplementedError()  # pragma: no cover

    @classmethod
    def zeros(cls, mesh):
        "Creates a field equal to 0."
        return cls(mesh, numpy.zeros(cls._shape(mesh)))

    @classmethod
    def from_function(cls, mesh, fct):
        """
        Evaluates a function *fct(x, y)* at the points
        the field is attached to.
        """
        field = cls.zeros(mesh)
        x, y = field.coordinates()
        return cls(mesh, numpy.broadcast_to(fct(x, y), x.shape))

    def ravel(self):
        "Flat copy of the values."
        return self.values.ravel().copy()

    def norm_inf(self):
        "Maximum norm."
        return numpy.abs(self.values).max()

    def dot(self, other):
        """
        Discrete inner product weighted by the cell area.
        """
        self._check_compatible(other)
        return float((self.values * other.values).sum() * self.mesh.cell_area)

    def _check_compatible(self, other):
        if not isinstance(other, self.__class__):
            raise TypeError("Cannot combine {0} and {1}".format(
                self.__class__.__name__, other.__class__.__name__))
        if other.mesh != self.mesh:
            raise ValueError("Fields are defined on different meshes.")

    def _new(self, values):
        return self.__class__(self.mesh, values, check=False)

    def __add__(self, other):
        if isinstance(other, _Field):
            self._check_compatible(other)
            return self._new(self.values + other.values)
        return self._new(self.values + other)

    def __sub__(self, other):
        if isinstance(other, _Field):
            self._check_compatible(other)
            return self._new(self.values - other.values)
        return self._new(self.values - other)

    def __mul__(self, scalar):
        return self._new(self.values * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self._new(self.values / scalar)

    def __neg__(self):
        return self._new(-self.values)

    def __repr__(self):
        return "{0}({1!r}, shape={2})".format(
            self.__class__.__name__, self.mesh, self.values.shape)


class PrimalField(_Field):
    """
    Piecewise constant scalar on the primal cells.
    """

    _kind = 'primal'

    @staticmethod
    def _shape(mesh):
        return mesh.primal_shape

    def coordinates(self):
        return self.mesh.primal_coordinates()


class DualField(_Field):
    """
    Piecewise constant scalar on the dual nodes.
    """

    _kind = 'dual'

    @staticmethod
    def _shape(mesh):
        return mesh.dual_shape

    def coordinates(self):
        return self.mesh.dual_coordinates()

    def boundary_values(self):
        "Values on the boundary nodes as a flat array."
        return self.values[self.mesh.boundary_mask()]

    def with_boundary(self, values):
        """
        Returns a copy where boundary nodes are replaced by *values*
        (a scalar or a dual array).
        """
        res = self.values.copy()
        mask = self.mesh.boundary_mask()
        if numpy.isscalar(values):
            res[mask] = values
        else:
            res[mask] = numpy.asarray(values).reshape(self.mesh.dual_shape)[mask]
        return self._new(res)
