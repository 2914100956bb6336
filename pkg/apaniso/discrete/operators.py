"""
@file
@brief Discrete operators :math:`(b \\cdot \\nabla)_{app}` from dual nodes
to primal cells and :math:`\\nabla \\cdot (b\\, \\cdot)_{app}`
from primal cells to dual nodes.

The gradient of a dual field on the cell
:math:`]x_i, x_{i+1}[ \\times ]y_j, y_{j+1}[` averages the
differences along the two edges of the cell:

.. math::

    \\partial_x \\psi = \\frac{\\psi_{i+1,j} - \\psi_{i,j} +
    \\psi_{i+1,j+1} - \\psi_{i,j+1}}{2 \\Delta x}

and *b* is evaluated at the cell center. The divergence operator
is built as the opposite of the transposed gradient, missing cells
around boundary nodes contribute zero. Both operators are then
adjoint to each other:
:math:`\\sum_R (b\\cdot\\nabla\\psi)\\Phi = -\\sum_D \\psi\\, \\nabla\\cdot(b\\Phi)`.
"""
import numpy
import pandas
from scipy import sparse
from ..mesh import PrimalField, DualField
from ..helpers.cache import ObjectCache


_matrices = ObjectCache("apaniso-operators", max_size=64)


def operator_cache():
    "Returns the @see cl ObjectCache storing the sparse operators."
    return _matrices


def sdiag(v):
    "Sparse diagonal matrix."
    v = numpy.asarray(v).ravel()
    return sparse.spdiags(v, 0, v.size, v.size)


def ddx(n, h):
    """
    1D difference from *n + 1* nodes to *n* cells.
    """
    ones = numpy.ones(n + 1)
    return sparse.spdiags(numpy.vstack([-ones, ones]) / h, [0, 1], n, n + 1)


def av(n):
    """
    1D average from *n + 1* nodes to *n* cells.
    """
    ones = numpy.ones(n + 1)
    return sparse.spdiags(numpy.vstack([ones, ones]) * 0.5, [0, 1], n, n + 1)


def gradient_matrices(mesh):
    """
    Returns the two sparse matrices computing the components of the
    gradient of a dual field on every primal cell.

    @param      mesh        @see cl Mesh
    @return                 *Gx, Gy*, shape *(nx ny, (nx + 1)(ny + 1))*
    """
    gx = sparse.kron(ddx(mesh.nx, mesh.dx), av(mesh.ny))
    gy = sparse.kron(av(mesh.nx), ddx(mesh.ny, mesh.dy))
    return gx.tocsr(), gy.tocsr()


def b_grad_matrix(b, mesh):
    """
    Sparse matrix of :math:`(b \\cdot \\nabla)_{app}`.

    @param      b           @see cl AnisotropyField
    @param      mesh        @see cl Mesh
    @return                 CSR matrix, shape *(nx ny, (nx + 1)(ny + 1))*
    """
    def build():
        gx, gy = gradient_matrices(mesh)
        xc, yc = mesh.primal_coordinates()
        bx, by = b.direction(xc, yc)
        return (sdiag(bx) @ gx + sdiag(by) @ gy).tocsr()

    return _matrices.get_or_create(('grad', mesh.key, b.key), build).copy()


def div_b_matrix(b, mesh):
    """
    Sparse matrix of :math:`\\nabla \\cdot (b\\, \\cdot)_{app}`,
    equal to minus the transposed matrix of @see fn b_grad_matrix.

    @param      b           @see cl AnisotropyField
    @param      mesh        @see cl Mesh
    @return                 CSR matrix, shape *((nx + 1)(ny + 1), nx ny)*
    """
    return (-b_grad_matrix(b, mesh).T).tocsr()


def second_order_matrix(b, mesh):
    """
    Sparse matrix of the composition
    :math:`(\\nabla \\cdot (b \\otimes b \\nabla))_{app} =
    \\nabla \\cdot (b\\, \\cdot)_{app} \\circ (b \\cdot \\nabla)_{app}`.
    """
    def build():
        g = b_grad_matrix(b, mesh)
        return (-(g.T @ g)).tocsr()

    return _matrices.get_or_create(('second', mesh.key, b.key), build).copy()


def _as_values(field, mesh, cls):
    if isinstance(field, (PrimalField, DualField)):
        if not isinstance(field, cls):
            raise TypeError("Expecting a {0} not a {1}.".format(
                cls.__name__, field.__class__.__name__))
        if field.mesh != mesh:
            raise ValueError("The field is defined on another mesh.")
        return field.values.ravel()
    values = numpy.asarray(field, dtype=numpy.float64)
    expected = cls._shape(mesh)  # pylint: disable=W0212
    if values.size != expected[0] * expected[1]:
        raise ValueError("Size mismatch, expecting {0} values not {1}.".format(
            expected[0] * expected[1], values.size))
    return values.ravel()


def b_grad_app(psi, b, mesh):
    """
    Applies :math:`(b \\cdot \\nabla)_{app}`.

    @param      psi         @see cl DualField or array
    @param      b           @see cl AnisotropyField
    @param      mesh        @see cl Mesh
    @return                 @see cl PrimalField

    .. runpython::
        :showcode:

        import math
        from apaniso.mesh import build_mesh, DualField
        from apaniso.bfield import oblique_field
        from apaniso.discrete import b_grad_app

        mesh = build_mesh(0, 1, 0, 1, 4, 4)
        b = oblique_field(math.pi / 3)
        psi = DualField.from_function(mesh, lambda x, y: x + y)
        print(b_grad_app(psi, b, mesh).values)
    """
    values = _as_values(psi, mesh, DualField)
    return PrimalField(mesh, b_grad_matrix(b, mesh) @ values, check=False)


def b_grad_extended(psi, b, mesh, offset=None):
    """
    Applies :math:`(b \\cdot \\nabla)_{app}` in extended precision
    (``numpy.longdouble``) and adds *offset*. The sum is computed
    before rounding, it keeps its accuracy when both terms
    almost cancel.

    @param      psi         @see cl DualField or array, it may hold
                            ``numpy.longdouble`` values
    @param      b           @see cl AnisotropyField
    @param      mesh        @see cl Mesh
    @param      offset      @see cl PrimalField, array or None
    @return                 flat array of ``numpy.longdouble``
    """
    if isinstance(psi, DualField):
        values = _as_values(psi, mesh, DualField)
    else:
        values = numpy.asarray(psi).ravel()
        if values.size != mesh.n_dual:
            raise ValueError("Size mismatch, expecting {0} values not {1}.".format(
                mesh.n_dual, values.size))
    matrix = b_grad_matrix(b, mesh).astype(numpy.longdouble)
    res = matrix @ values.astype(numpy.longdouble)
    if offset is not None:
        res += _as_values(offset, mesh, PrimalField).astype(numpy.longdouble)
    return res


def div_b_app(phi, b, mesh):
    """
    Applies :math:`\\nabla \\cdot (b\\, \\cdot)_{app}`.

    @param      phi         @see cl PrimalField or array
    @param      b           @see cl AnisotropyField
    @param      mesh        @see cl Mesh
    @return                 @see cl DualField
    """
    values = _as_values(phi, mesh, PrimalField)
    return DualField(mesh, div_b_matrix(b, mesh) @ values, check=False)


def second_order_app(psi, b, mesh):
    """
    Applies :math:`(\\nabla \\cdot (b \\otimes b \\nabla))_{app}`,
    the composition of @see fn div_b_app and @see fn b_grad_app.
    """
    return div_b_app(b_grad_app(psi, b, mesh), b, mesh)


class OperatorStencil:
    """
    Stencil of a sparse operator, for every output index
    the list of *(input index, coefficient)*.
    """

    def __init__(self, matrix, name="operator"):
        coo = sparse.coo_matrix(matrix)
        order = numpy.lexsort((coo.col, coo.row))
        self.shape = coo.shape
        self.name = name
        self.rows = coo.row[order]
        self.cols = coo.col[order]
        self.coeffs = coo.data[order]

    def __getitem__(self, row):
        sel = self.rows == row
        return list(zip(self.cols[sel].tolist(), self.coeffs[sel].tolist()))

    def width(self):
        "Maximum number of inputs per output."
        if self.rows.size == 0:
            return 0
        return int(numpy.bincount(self.rows).max())

    def to_dataframe(self):
        "Returns the triplets as a dataframe *row, col, coeff*."
        return pandas.DataFrame(dict(row=self.rows, col=self.cols,
                                     coeff=self.coeffs))

    def to_csv(self, filename):
        "Writes the triplets into a CSV file."
        self.to_dataframe().to_csv(filename, index=False, float_format="%.17g")

    def to_matrix(self):
        "Rebuilds the sparse matrix."
        return sparse.csr_matrix((self.coeffs, (self.rows, self.cols)),
                                 shape=self.shape)


def operator_stencils(b, mesh):
    """
    Returns the stencils of both operators.

    @return     dictionary ``{'b_grad': stencil, 'div_b': stencil}``
    """
    g = b_grad_matrix(b, mesh)
    g.eliminate_zeros()
    d = div_b_matrix(b, mesh)
    d.eliminate_zeros()
    return {'b_grad': OperatorStencil(g, 'b_grad'),
            'div_b': OperatorStencil(d, 'div_b')}


def node_average(values, n_boundary=None):
    """
    Averages cell values around every dual node.

    @param      values      array of shape *(nx + 2, ny + 2)*, cell values
                            with one layer of ghost cells
    @param      n_boundary  if not None, boundary nodes take this value
    @return                 array of shape *(nx + 1, ny + 1)*
    """
    res = 0.25 * (values[:-1, :-1] + values[1:, :-1] +
                  values[:-1, 1:] + values[1:, 1:])
    if n_boundary is not None:
        res[0, :] = n_boundary
        res[-1, :] = n_boundary
        res[:, 0] = n_boundary
        res[:, -1] = n_boundary
    return res


def node_divergence(vx, vy, mesh):
    """
    Divergence at the dual nodes of a cell centered vector field.

    @param      vx, vy      arrays of shape *(nx + 2, ny + 2)*,
                            cells with one layer of ghost cells
    @param      mesh        @see cl Mesh
    @return                 array of shape *(nx + 1, ny + 1)*
    """
    dvx = ((vx[1:, :-1] + vx[1:, 1:]) - (vx[:-1, :-1] + vx[:-1, 1:])) / (2 * mesh.dx)
    dvy = ((vy[:-1, 1:] + vy[1:, 1:]) - (vy[:-1, :-1] + vy[1:, :-1])) / (2 * mesh.dy)
    return dvx + dvy


def cell_gradient(psi, mesh):
    """
    Gradient of a dual array on every primal cell,
    same stencil as @see fn b_grad_app.

    @param      psi         array of shape *(nx + 1, ny + 1)*
    @param      mesh        @see cl Mesh
    @return                 two arrays of shape *(nx, ny)*
    """
    gx = ((psi[1:, :-1] - psi[:-1, :-1]) + (psi[1:, 1:] - psi[:-1, 1:])) / (2 * mesh.dx)
    gy = ((psi[:-1, 1:] - psi[:-1, :-1]) + (psi[1:, 1:] - psi[1:, :-1])) / (2 * mesh.dy)
    return gx, gy
