"""
@file
@brief Assembles the sparse linear systems on the dual nodes.
"""
import numpy
from scipy import sparse
from scipy.io import mmwrite
from ..mesh import DualField, classify_boundary, TANGENT
from ..discrete.operators import second_order_matrix, sdiag
from ..helpers.parameters import format_function_call


class SparseSystem:
    """
    Linear system with one row per dual node. Constrained nodes
    have identity rows, their right-hand side holds the imposed values.
    """

    def __init__(self, mesh, matrix, rhs, constrained, key=None, name="system"):
        """
        @param      mesh        @see cl Mesh
        @param      matrix      sparse matrix, square, one row per dual node
        @param      rhs         right-hand side, flat array
        @param      constrained boolean array, True for Dirichlet nodes
        @param      key         tuple identifying the matrix, used to
                                reuse a factorization, None to disable
        @param      name        name used in reports
        """
        if matrix.shape != (mesh.n_dual, mesh.n_dual):
            raise ValueError("Unexpected matrix shape {0}, expecting {1}.".format(
                matrix.shape, (mesh.n_dual, mesh.n_dual)))
        self.mesh = mesh
        self.matrix = matrix.tocsr()
        self.rhs = numpy.asarray(rhs, dtype=numpy.float64).ravel()
        self.constrained = numpy.asarray(constrained, dtype=bool).ravel()
        self.key = key
        self.name = name

    def __repr__(self):
        return format_function_call("SparseSystem", dict(
            name=self.name, n=self.matrix.shape[0], nnz=self.matrix.nnz,
            n_dirichlet=int(self.constrained.sum())))

    @property
    def dirichlet_values(self):
        "Values imposed on the constrained nodes."
        return self.rhs[self.constrained]

    def with_rhs(self, rhs, dirichlet=0.):
        """
        Returns a system with the same matrix and another right-hand side.

        @param      rhs         dual array, only interior rows are used
        @param      dirichlet   values on the constrained nodes
        @return                 @see cl SparseSystem
        """
        new_rhs = _build_rhs(self.mesh, rhs, dirichlet, self.constrained)
        return SparseSystem(self.mesh, self.matrix, new_rhs, self.constrained,
                            key=self.key, name=self.name)

    def residual(self, x):
        """
        Returns the normwise relative backward error
        :math:`\\frac{\\|b - Ax\\|_2}{\\|A\\|_\\infty \\|x\\|_2 + \\|b\\|_2}`
        and the relative residual :math:`\\|b - Ax\\|_2 / \\|b\\|_2`.
        """
        r = self.rhs - self.matrix @ x
        nr = numpy.linalg.norm(r)
        nb = numpy.linalg.norm(self.rhs)
        norm_a = abs(self.matrix).sum(axis=1).max()
        den = norm_a * numpy.linalg.norm(x) + nb
        backward = 0. if nr == 0 else nr / den
        relative = 0. if nr == 0 else (nr / nb if nb > 0 else numpy.inf)
        return backward, relative

    def to_matrix_market(self, filename):
        """
        Writes the matrix in MatrixMarket coordinate format.
        """
        mmwrite(filename, self.matrix.tocoo(),
                comment="{0}, {1} constrained rows".format(
                    self.name, int(self.constrained.sum())))

    def to_dense(self):
        "Returns the matrix as a dense array."
        return self.matrix.toarray()


def constrained_nodes(b, mesh, bc_mode='all', tau=1e-12):
    """
    Returns the nodes receiving a Dirichlet condition.

    @param      b           @see cl AnisotropyField
    @param      mesh        @see cl Mesh
    @param      bc_mode     ``'all'``: every boundary node,
                            ``'flux_only'``: boundary nodes where
                            :math:`|b \\cdot \\nu| > \\tau`
    @param      tau         tolerance for ``'flux_only'``
    @return                 boolean array of shape *(nx + 1, ny + 1)*
    """
    if bc_mode == 'all':
        return mesh.boundary_mask()
    if bc_mode == 'flux_only':
        classes = classify_boundary(mesh, b, tau)
        return mesh.boundary_mask() & ~classes.mask(TANGENT)
    raise ValueError(
        "bc_mode must be 'all' or 'flux_only' not '{0}'".format(bc_mode))


def _build_rhs(mesh, rhs, dirichlet, constrained):
    res = numpy.zeros(mesh.n_dual)
    if rhs is not None:
        rhs = getattr(rhs, 'values', rhs)
        res[:] = numpy.asarray(rhs, dtype=numpy.float64).ravel()
    res[constrained] = _dirichlet_values(mesh, dirichlet)[constrained]
    return res


def _dirichlet_values(mesh, dirichlet):
    if dirichlet is None:
        return numpy.zeros(mesh.n_dual)
    if isinstance(dirichlet, DualField):
        return dirichlet.values.ravel()
    if isinstance(dirichlet, dict):
        res = numpy.zeros(mesh.n_dual)
        for (i, j), v in dirichlet.items():
            res[mesh.dual_index(i, j)] = v
        return res
    if numpy.isscalar(dirichlet):
        return numpy.full(mesh.n_dual, float(dirichlet))
    values = numpy.asarray(dirichlet, dtype=numpy.float64).ravel()
    if values.size != mesh.n_dual:
        raise ValueError("Dirichlet values: expecting {0} values not {1}.".format(
            mesh.n_dual, values.size))
    return values


def assemble_second_order(b, mesh, eps_shift=0., sign=-1, dirichlet=None,
                          rhs=None, bc_mode='all', shift=0., name="system"):
    """
    Assembles the system whose free rows encode
    :math:`sign \\cdot ((\\nabla \\cdot (b \\otimes b \\nabla))_{app} -
    \\eta I) - \\varepsilon I` and whose constrained rows are identity rows.

    @param      b           @see cl AnisotropyField
    @param      mesh        @see cl Mesh
    @param      eps_shift   :math:`\\varepsilon \\geqslant 0`
    @param      sign        +1 or -1
    @param      dirichlet   values on the constrained nodes, None (zero),
                            a scalar, a dictionary ``{(i, j): value}``,
                            a @see cl DualField or an array
    @param      rhs         right-hand side for the free rows (dual array)
    @param      bc_mode     see @see fn constrained_nodes
    @param      shift       Tikhonov shift :math:`\\eta \\geqslant 0`,
                            it moves the operator away from singularity
    @param      name        name of the system
    @return                 @see cl SparseSystem
    """
    if eps_shift < 0:
        raise ValueError("eps_shift must be >= 0 not {0}".format(eps_shift))
    if shift < 0:
        raise ValueError("shift must be >= 0 not {0}".format(shift))
    if sign not in (1, -1):
        raise ValueError("sign must be 1 or -1 not {0}".format(sign))
    constrained = constrained_nodes(b, mesh, bc_mode).ravel()
    ident = sparse.identity(mesh.n_dual, format='csr')
    op = sign * (second_order_matrix(b, mesh) - shift * ident) - eps_shift * ident
    free = (~constrained).astype(numpy.float64)
    matrix = sdiag(free) @ op + sdiag(constrained.astype(numpy.float64))
    matrix = matrix.tocsr()
    matrix.eliminate_zeros()
    key = ('second_order', mesh.key, b.key, float(eps_shift), int(sign),
           float(shift), bc_mode)
    return SparseSystem(mesh, matrix, _build_rhs(mesh, rhs, dirichlet, constrained),
                        constrained, key=key, name=name)
