"""
@file
@brief Asymptotic-preserving decomposition solver.

The solution is split into :math:`\\phi = p + q`. The first part is
:math:`p = (f + (b \\cdot \\nabla)_{app} g) / \\varepsilon` where *g*
solves :math:`-(\\nabla \\cdot (b \\otimes b \\nabla))_{app} g =
\\nabla \\cdot (b f)_{app}`, the second part is
:math:`q = (b \\cdot \\nabla)_{app} h` where *h* is obtained with
two second order solves,
:math:`(\\nabla \\cdot (b \\otimes b \\nabla))_{app} u - \\varepsilon u =
\\nabla \\cdot (b f)_{app}` then
:math:`-(\\nabla \\cdot (b \\otimes b \\nabla))_{app} h = u`.
None of the three systems degenerates when :math:`\\varepsilon \\to 0`.
"""
import numpy
from ..mesh import DualField, PrimalField
from ..discrete.operators import b_grad_app, b_grad_extended, div_b_app
from ..linsolve import (
    assemble_second_order, solve as linear_solve, solve_array, SolverOptions,
    FactorizationCache)
from .problem import DecomposedSolution


DEFAULT_CACHE = "apaniso-elliptic"


def _get_cache(cache):
    if cache is None or isinstance(cache, FactorizationCache):
        return cache
    if cache == 'default':
        if not FactorizationCache.has_cache(DEFAULT_CACHE):
            return FactorizationCache.create_cache(DEFAULT_CACHE)
        return FactorizationCache.get_cache(DEFAULT_CACHE)
    raise TypeError("Unexpected cache {0}".format(type(cache)))


def _g_system(prob, options):
    b, mesh = prob.anisotropy, prob.mesh
    return assemble_second_order(
        b, mesh, eps_shift=0., sign=-1, dirichlet=0.,
        rhs=div_b_app(prob.source, b, mesh),
        bc_mode=options.bc_mode, shift=options.shift, name="g")


def solve_g(prob, options=None, cache='default'):
    """
    Solves the problem giving *p*,
    :math:`-(\\nabla \\cdot (b \\otimes b \\nabla))_{app} g =
    \\nabla \\cdot (b f)_{app}`, *g* = 0 on the boundary.
    In the inhomogeneous case, *f* is replaced by :math:`f_2`.

    @param      prob        @see cl EllipticProblem
    @param      options     @see cl SolverOptions
    @param      cache       @see cl FactorizationCache, ``'default'`` or None
    @return                 @see cl DualField, @see cl SolveReport
    """
    options = options or SolverOptions()
    return linear_solve(_g_system(prob, options), options=options,
                        cache=_get_cache(cache))


def compute_p(prob, g):
    """
    Computes :math:`p = (f + (b \\cdot \\nabla)_{app} g) / \\varepsilon`,
    *f* is :math:`f_2` in the inhomogeneous case,
    the term :math:`b \\cdot \\nabla \\kappa` has no component on *p*.
    Both terms almost cancel when :math:`\\varepsilon` is small,
    the sum is computed in extended precision when *g* holds
    ``numpy.longdouble`` values, in double precision otherwise.

    @param      prob        @see cl EllipticProblem
    @param      g           @see cl DualField returned by @see fn solve_g
                            or flat array, possibly ``numpy.longdouble``
    @return                 @see cl PrimalField
    """
    if getattr(g, 'dtype', None) != numpy.longdouble:
        return (prob.source + b_grad_app(g, prob.anisotropy, prob.mesh)) / prob.eps
    kernel = b_grad_extended(g, prob.anisotropy, prob.mesh, offset=prob.source)
    return PrimalField(prob.mesh, (kernel / prob.eps).astype(numpy.float64))


def solve_p(prob, options=None, cache='default'):
    """
    Solves the g-problem and computes *p* from the solution
    before it is rounded to double precision.

    @param      prob        @see cl EllipticProblem
    @param      options     @see cl SolverOptions
    @param      cache       @see cl FactorizationCache, ``'default'`` or None
    @return                 *p* (@see cl PrimalField), *g* (@see cl DualField),
                            @see cl SolveReport
    """
    options = options or SolverOptions()
    x, report = solve_array(_g_system(prob, options), options=options,
                            cache=_get_cache(cache))
    g = DualField(prob.mesh, x.astype(numpy.float64))
    return compute_p(prob, x), g, report


def solve_u(prob, options=None, cache='default'):
    """
    Solves :math:`(\\nabla \\cdot (b \\otimes b \\nabla))_{app} u -
    \\varepsilon u = \\nabla \\cdot (b f)_{app}`, *u* is null on the boundary
    in the homogeneous case, equal to :math:`\\kappa` otherwise.
    In the inhomogeneous case, the right-hand side is
    :math:`\\nabla \\cdot (b (f_2 + (b \\cdot \\nabla)_{app} \\kappa))_{app}`.

    @param      prob        @see cl EllipticProblem
    @param      options     @see cl SolverOptions
    @param      cache       @see cl FactorizationCache, ``'default'`` or None
    @return                 @see cl DualField, @see cl SolveReport
    """
    options = options or SolverOptions()
    b, mesh = prob.anisotropy, prob.mesh
    if prob.inhomogeneous:
        f = prob.source + b_grad_app(prob.kappa, b, mesh)
        dirichlet = prob.kappa
    else:
        f = prob.source
        dirichlet = 0.
    system = assemble_second_order(
        b, mesh, eps_shift=prob.eps, sign=1, dirichlet=dirichlet,
        rhs=div_b_app(f, b, mesh), bc_mode=options.bc_mode,
        shift=options.shift, name="u")
    return linear_solve(system, options=options, cache=_get_cache(cache))


def solve_h(u, anisotropy, options=None, cache='default'):
    """
    Solves :math:`-(\\nabla \\cdot (b \\otimes b \\nabla))_{app} h = u`,
    *h* = 0 on the boundary.

    @param      u           @see cl DualField returned by @see fn solve_u
    @param      anisotropy  @see cl AnisotropyField
    @param      options     @see cl SolverOptions
    @param      cache       @see cl FactorizationCache, ``'default'`` or None
    @return                 @see cl DualField, @see cl SolveReport
    """
    options = options or SolverOptions()
    system = assemble_second_order(
        anisotropy, u.mesh, eps_shift=0., sign=-1, dirichlet=0., rhs=u,
        bc_mode=options.bc_mode, shift=options.shift, name="h")
    return linear_solve(system, options=options, cache=_get_cache(cache))


def solve(prob, options=None, cache='default', verbose=0, fLOG=None):
    """
    Solves the problem with the decomposition :math:`\\phi = p + q`,
    three linear solves.

    @param      prob        @see cl EllipticProblem
    @param      options     @see cl SolverOptions
    @param      cache       @see cl FactorizationCache, ``'default'`` or None
    @param      verbose     verbosity
    @param      fLOG        logging function
    @return                 @see cl DecomposedSolution

    .. runpython::
        :showcode:

        from apaniso.mesh import build_mesh
        from apaniso.harness import oblique_manufactured, error_norms
        from apaniso.elliptic import solve

        mesh = build_mesh(0, 1, 0, 1, 20, 20)
        prob, exact = oblique_manufactured(1.0471975511965976, 1e-9, mesh)
        sol = solve(prob)
        print(error_norms(sol.phi, exact))
    """
    p, g, rep_g = solve_p(prob, options=options, cache=cache)
    if verbose and fLOG:
        fLOG("[solve] {0}: g-problem {1:.3g}s".format(prob.name, rep_g.wall_time))
    u, rep_u = solve_u(prob, options=options, cache=cache)
    h, rep_h = solve_h(u, prob.anisotropy, options=options, cache=cache)
    q = b_grad_app(h, prob.anisotropy, prob.mesh)
    if verbose and fLOG:
        fLOG("[solve] {0}: u-problem {1:.3g}s, h-problem {2:.3g}s, "
             "eps*|p|={3:.3g}".format(prob.name, rep_u.wall_time, rep_h.wall_time,
                                      prob.eps * p.norm_inf()))
    return DecomposedSolution(prob, p, q, g, u, h,
                              dict(g=rep_g, u=rep_u, h=rep_h))
