"""
@file
@brief Manufactured solutions with a known decomposition
:math:`\\phi = p + q`. The right-hand side is built with the
discrete operators so that its leading order part belongs
to the orthogonal of the discrete kernel.
"""
import math
import numpy
from ..mesh import PrimalField, DualField
from ..bfield import oblique_field, radial_circular_field, AnisotropyField, make_field
from ..discrete.operators import b_grad_app, div_b_app
from ..elliptic import EllipticProblem


def _check_box(mesh, box, name):
    got = (mesh.x0, mesh.x1, mesh.y0, mesh.y1)
    if any(abs(a - b) > 1e-12 for a, b in zip(got, box)):
        raise ValueError("{0} requires the domain {1} not {2}.".format(
            name, box, got))


def _oblique_potential(x, y):
    a = (x - 1) * (y - 1) * x * y
    return a ** 3


def _oblique_potential_gradient(x, y):
    a2 = 3 * ((x - 1) * (y - 1) * x * y) ** 2
    return a2 * (y - 1) * y * (2 * x - 1), a2 * (x - 1) * x * (2 * y - 1)


def _radial_potential(x, y):
    a = (1 - x) * (2 - x) * (1 - y) * (2 - y)
    return a ** 3


def _radial_potential_gradient(x, y):
    a2 = 3 * ((1 - x) * (2 - x) * (1 - y) * (2 - y)) ** 2
    return (a2 * (2 * x - 3) * (1 - y) * (2 - y),
            a2 * (2 * y - 3) * (1 - x) * (2 - x))


def _build(b, mesh, eps, p_exact, potential, gradient, zero_f0, name):
    x, y = mesh.primal_coordinates()
    bx, by = b.direction(x, y)
    gx, gy = gradient(x, y)
    q_exact = PrimalField(mesh, bx * gx + by * gy)
    if zero_f0:
        f1 = p_exact
        f0 = PrimalField.zeros(mesh)
        q_exact = PrimalField.zeros(mesh)
    else:
        h = DualField.from_function(mesh, potential).with_boundary(0.)
        gh = b_grad_app(h, b, mesh)
        w = div_b_app(gh, b, mesh).with_boundary(0.)
        f0 = -b_grad_app(w, b, mesh)
        f1 = p_exact + gh
    f = f0 + f1 * eps
    prob = EllipticProblem(eps, b, mesh, rhs_f=f, f0=f0, f1=f1, name=name)
    return prob, p_exact + q_exact, p_exact, q_exact


def oblique_manufactured(alpha, eps, mesh, zero_f0=False, return_parts=False):
    """
    Builds the oblique test case on :math:`[0,1]^2`.
    The exact solution is :math:`\\phi = P + b \\cdot \\nabla H` with
    :math:`P = \\sin(x \\cos\\alpha - y \\sin\\alpha)`, constant along
    the field lines of :math:`b = (\\sin\\alpha, \\cos\\alpha)`, and
    :math:`H = ((x-1)(y-1)xy)^3`.
    The right-hand side is :math:`f = f_0 + \\varepsilon f_1` with
    :math:`f_0 = -(b \\cdot \\nabla)_{app} (\\nabla \\cdot (b \\otimes b
    \\nabla))_{app} H` and :math:`f_1 = P + (b \\cdot \\nabla)_{app} H`.

    @param      alpha           angle of the field
    @param      eps             :math:`\\varepsilon`
    @param      mesh            @see cl Mesh on :math:`[0,1]^2`
    @param      zero_f0         builds :math:`f = \\varepsilon P` instead,
                                the exact solution is then *P*
    @param      return_parts    returns the exact *p* and *q* as well
    @return                     @see cl EllipticProblem, exact solution
                                (and *p*, *q* if *return_parts*)
    """
    _check_box(mesh, (0., 1., 0., 1.), "oblique_manufactured")
    b = oblique_field(alpha)
    ca, sa = math.cos(alpha), math.sin(alpha)
    p_exact = PrimalField.from_function(
        mesh, lambda x, y: numpy.sin(x * ca - y * sa))
    prob, exact, p, q = _build(
        b, mesh, eps, p_exact, _oblique_potential, _oblique_potential_gradient,
        zero_f0, "oblique")
    if return_parts:
        return prob, exact, p, q
    return prob, exact


def radial_manufactured(eps, mesh, zero_f0=False, return_parts=False):
    """
    Builds the test case for the circular field on :math:`]1,2[^2`,
    :math:`\\phi = 1 + b \\cdot \\nabla H` with
    :math:`H = (1-x)^3(1-y)^3(2-x)^3(2-y)^3`.
    The constant belongs to the kernel because the field is
    divergence free.

    @param      eps             :math:`\\varepsilon`
    @param      mesh            @see cl Mesh on :math:`[1,2]^2`
    @param      zero_f0         see @see fn oblique_manufactured
    @param      return_parts    returns the exact *p* and *q* as well
    @return                     @see cl EllipticProblem, exact solution
    """
    _check_box(mesh, (1., 2., 1., 2.), "radial_manufactured")
    b = radial_circular_field()
    p_exact = PrimalField(mesh, numpy.ones(mesh.primal_shape))
    prob, exact, p, q = _build(
        b, mesh, eps, p_exact, _radial_potential, _radial_potential_gradient,
        zero_f0, "radial")
    if return_parts:
        return prob, exact, p, q
    return prob, exact


def quadratic_inhomogeneous(eps, mesh, field='oblique', alpha=math.pi / 3):
    """
    Builds the inhomogeneous Neumann case whose solution is
    :math:`\\phi = 2x^2 + y^2`, :math:`f_2 = \\varepsilon \\phi`
    and :math:`\\kappa = -\\nabla \\cdot (b \\phi)_{app}`.
    The sampled quadratic function is the exact solution of
    the discrete problem.

    @param      eps         :math:`\\varepsilon`
    @param      mesh        @see cl Mesh
    @param      field       ``'oblique'``, ``'radial'`` or @see cl AnisotropyField
    @param      alpha       angle for the oblique field
    @return                 @see cl EllipticProblem, exact solution
    """
    if isinstance(field, AnisotropyField):
        b = field
    else:
        b = make_field(field, alpha=alpha)
    exact = PrimalField.from_function(mesh, lambda x, y: 2 * x ** 2 + y ** 2)
    kappa = -div_b_app(exact, b, mesh)
    prob = EllipticProblem(eps, b, mesh, rhs_f2=exact * eps, kappa=kappa,
                           name="quadratic")
    return prob, exact


def aligned_average(f, mesh, eps):
    """
    Limit of *p* for the field :math:`b = (0, 1)`: the average of
    :math:`f / \\varepsilon` along every column of cells,
    each column being a field line.

    @param      f           @see cl PrimalField
    @param      mesh        @see cl Mesh
    @param      eps         :math:`\\varepsilon`
    @return                 @see cl PrimalField
    """
    values = getattr(f, 'values', f)
    values = numpy.asarray(values, dtype=numpy.float64).reshape(mesh.primal_shape)
    mean = values.mean(axis=1, keepdims=True) / eps
    return PrimalField(mesh, numpy.broadcast_to(mean, mesh.primal_shape))


#: names of the cases accepted by @see fn make_case
CASES = ('oblique', 'radial', 'quadratic-oblique', 'quadratic-radial')


def case_box(case):
    """
    Returns the domain *(x0, x1, y0, y1)* of a case,
    :math:`[1,2]^2` for the cases using the circular field,
    :math:`[0,1]^2` otherwise.
    """
    if case not in CASES:
        raise ValueError("Unknown case '{0}', expecting one of {1}.".format(
            case, CASES))
    return (1., 2., 1., 2.) if case.endswith('radial') else (0., 1., 0., 1.)


def make_case(case, eps, mesh, alpha=math.pi / 3):
    """
    Builds one of the test cases.

    @param      case        one of *CASES*
    @param      eps         :math:`\\varepsilon`
    @param      mesh        @see cl Mesh, see @see fn case_box
    @param      alpha       angle of the oblique field
    @return                 problem, exact solution, exact *p*, exact *q*
                            (both None for the quadratic cases)
    """
    case_box(case)
    if case == 'oblique':
        return oblique_manufactured(alpha, eps, mesh, return_parts=True)
    if case == 'radial':
        return radial_manufactured(eps, mesh, return_parts=True)
    prob, exact = quadratic_inhomogeneous(
        eps, mesh, field=case.split('-')[1], alpha=alpha)
    return prob, exact, None, None
