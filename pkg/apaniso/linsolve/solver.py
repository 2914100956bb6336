"""
@file
@brief Solves the sparse systems, direct factorization
for small systems, preconditioned Krylov methods otherwise.
"""
import time
import warnings
import numpy
from scipy import sparse
from scipy.linalg import LinAlgWarning
from scipy.sparse.linalg import splu, spilu, bicgstab, gmres, LinearOperator
from sklearn.base import BaseEstimator
from ..mesh import DualField
from ..helpers.parameters import format_function_call


class SolverFailureError(RuntimeError):
    """
    Raised when a linear solve fails, attribute *report*
    holds the @see cl SolveReport.
    """

    def __init__(self, msg, report=None):
        RuntimeError.__init__(self, msg)
        self.report = report


class SingularSystemError(SolverFailureError):
    """
    Raised when the factorization detects a singular matrix.
    """
    pass


class SolverOptions(BaseEstimator):
    """
    Parameters of the linear solves.
    """

    def __init__(self, tol=1e-12, max_iter=2000, method='auto',
                 direct_limit=50000, preconditioner='ilu', krylov='bicgstab',
                 shift=0., bc_mode='all', refine=6):
        """
        @param      tol             tolerance on the normwise backward error
        @param      max_iter        maximum number of iterations
        @param      method          ``'auto'``, ``'direct'``, ``'iterative'``
        @param      direct_limit    *auto* uses a direct solver below
                                    this number of unknowns
        @param      preconditioner  ``'ilu'``, ``'diagonal'`` or None
        @param      krylov          ``'bicgstab'`` or ``'gmres'``
        @param      shift           Tikhonov shift, 0 to disable it
        @param      bc_mode         ``'all'`` or ``'flux_only'``
        @param      refine          maximum number of refinement steps of a
                                    direct solve in extended precision,
                                    0 disables them
        """
        BaseEstimator.__init__(self)
        self.tol = tol
        self.max_iter = max_iter
        self.method = method
        self.direct_limit = direct_limit
        self.preconditioner = preconditioner
        self.krylov = krylov
        self.shift = shift
        self.bc_mode = bc_mode
        self.refine = refine

    def resolved_method(self, n):
        "Returns the method used for *n* unknowns."
        if self.method == 'auto':
            return 'direct' if n <= self.direct_limit else 'iterative'
        if self.method not in ('direct', 'iterative'):
            raise ValueError("Unknown method '{0}'".format(self.method))
        return self.method


class SolveReport:
    """
    Diagnostics of one linear solve.
    """

    def __init__(self, name, method, iterations, residual, rhs_residual,
                 wall_time, tol, reused=False):
        """
        @param      name            system name
        @param      method          ``'direct'`` or ``'iterative'``
        @param      iterations      number of iterations, 1 for a direct solve
        @param      residual        normwise relative backward error
        @param      rhs_residual    relative 2-norm of the residual
        @param      wall_time       seconds
        @param      tol             requested tolerance
        @param      reused          a cached factorization was used
        """
        self.name = name
        self.method = method
        self.iterations = iterations
        self.residual = residual
        self.rhs_residual = rhs_residual
        self.wall_time = wall_time
        self.tol = tol
        self.reused = reused

    def to_dict(self, prefix=""):
        "Returns the report as a dictionary."
        return {prefix + k: getattr(self, k) for k in [
            'name', 'method', 'iterations', 'residual', 'rhs_residual',
            'wall_time', 'tol', 'reused']}

    def __repr__(self):
        return format_function_call("SolveReport", self.to_dict())


def _factorize(system, cache):
    if cache is not None and system.key is not None:
        lu = cache.get(system.key)
        if lu is not None:
            return lu, True
    try:
        lu = splu(system.matrix.tocsc())
    except RuntimeError as e:
        raise SingularSystemError(
            "Factorization of '{0}' failed: {1}".format(system.name, e)) from e
    diag = numpy.abs(lu.U.diagonal())
    if diag.min() <= diag.max() * 1e-14:
        warnings.warn("System '{0}' is nearly singular, pivot ratio {1}".format(
            system.name, diag.min() / diag.max()), LinAlgWarning)
    if cache is not None and system.key is not None:
        cache.cache(system.key, lu)
    return lu, False


def _preconditioner(matrix, kind):
    if kind is None or kind == 'none':
        return None
    if kind == 'diagonal':
        d = matrix.diagonal()
        if (d == 0).any():
            raise SingularSystemError("Zero on the diagonal, cannot precondition.")
        return sparse.spdiags(1. / d, 0, matrix.shape[0], matrix.shape[1])
    if kind == 'ilu':
        try:
            ilu = spilu(matrix.tocsc(), drop_tol=1e-6, fill_factor=20)
        except RuntimeError as e:
            raise SingularSystemError(
                "Incomplete factorization failed: {0}".format(e)) from e
        return LinearOperator(matrix.shape, ilu.solve)
    raise ValueError("Unknown preconditioner '{0}'".format(kind))


def refine(system, lu, x, max_steps):
    """
    Iterative refinement of a direct solve. The residual
    :math:`b - Ax` is computed in extended precision (``numpy.longdouble``)
    and the solution is accumulated in the same precision, the correction
    reuses the factorization. It stops when the correction no longer
    decreases or becomes negligible.

    @param      system      @see cl SparseSystem
    @param      lu          factorization returned by *splu*
    @param      x           first solution
    @param      max_steps   maximum number of steps
    @return                 refined solution (``numpy.longdouble``),
                            number of steps
    """
    matrix = system.matrix.astype(numpy.longdouble)
    b = system.rhs.astype(numpy.longdouble)
    x = numpy.asarray(x).astype(numpy.longdouble)
    tiny = numpy.finfo(numpy.longdouble).eps
    previous = None
    steps = 0
    for _ in range(max_steps):
        r = b - matrix @ x
        dx = lu.solve(r.astype(numpy.float64))
        size = numpy.abs(dx).max()
        if not numpy.isfinite(size) or (previous is not None and size > previous * 0.5):
            break
        x += dx
        steps += 1
        previous = size
        if size <= tiny * numpy.abs(x).max():
            break
    return x, steps


def solve_array(system, tol=None, max_iter=None, options=None, cache=None):
    """
    Solves a @see cl SparseSystem and returns the solution as a flat
    array. A refined direct solve returns ``numpy.longdouble`` values.
    Parameters are the same as @see fn solve.

    @return                 array, @see cl SolveReport
    """
    options = options or SolverOptions()
    tol = options.tol if tol is None else tol
    max_iter = options.max_iter if max_iter is None else max_iter
    if not tol > 0:
        raise ValueError("tol must be positive not {0}".format(tol))
    begin = time.perf_counter()
    method = options.resolved_method(system.matrix.shape[0])
    b = system.rhs
    reused = False

    if method == 'direct':
        lu, reused = _factorize(system, cache)
        x = lu.solve(b)
        iterations = 1
        if not numpy.isfinite(x).all():
            raise SingularSystemError(
                "System '{0}' produced non finite values.".format(system.name))
        if options.refine:
            x, steps = refine(system, lu, x, options.refine)
            iterations += steps
            backward, relative = system.residual(x.astype(numpy.float64))
        else:
            backward, relative = system.residual(x)
            if backward > tol:
                x = x + lu.solve(b - system.matrix @ x)
                iterations += 1
                backward, relative = system.residual(x)
    else:
        M = _preconditioner(system.matrix, options.preconditioner)
        counter = []

        def callback(_):
            counter.append(1)

        if options.krylov == 'bicgstab':
            x, info = bicgstab(system.matrix, b, rtol=tol, atol=0.,
                               maxiter=max_iter, M=M, callback=callback)
        elif options.krylov == 'gmres':
            x, info = gmres(system.matrix, b, rtol=tol, atol=0., restart=50,
                            maxiter=max_iter, M=M, callback=callback,
                            callback_type='pr_norm')
        else:
            raise ValueError("Unknown krylov method '{0}'".format(options.krylov))
        iterations = len(counter)
        backward, relative = system.residual(x)
        if info < 0 or not numpy.isfinite(x).all():
            report = SolveReport(system.name, method, iterations, backward,
                                 relative, time.perf_counter() - begin, tol)
            raise SolverFailureError(
                "Breakdown of {0} on '{1}' ({2}).".format(
                    options.krylov, system.name, info), report)

    report = SolveReport(system.name, method, iterations, backward, relative,
                         time.perf_counter() - begin, tol, reused=reused)
    if backward > tol:
        raise SolverFailureError(
            "Solve of '{0}' did not converge, backward error {1} > {2}.".format(
                system.name, backward, tol), report)
    x = x.copy()
    x[system.constrained] = system.dirichlet_values
    return x, report


def solve(system, tol=None, max_iter=None, options=None, cache=None):
    """
    Solves a @see cl SparseSystem.

    @param      system      @see cl SparseSystem
    @param      tol         tolerance, overwrites *options.tol*
    @param      max_iter    maximum number of iterations,
                            overwrites *options.max_iter*
    @param      options     @see cl SolverOptions
    @param      cache       @see cl FactorizationCache or None
    @return                 @see cl DualField, @see cl SolveReport

    The solve succeeds when the normwise backward error
    is below the tolerance. A direct solve is refined with
    @see fn refine unless *options.refine* is null, it is then
    followed by one step of iterative refinement in double precision
    if the first solution misses the tolerance.
    """
    x, report = solve_array(system, tol=tol, max_iter=max_iter,
                            options=options, cache=cache)
    return DualField(system.mesh, x.astype(numpy.float64)), report
