"""
@file
@brief Analytic magnetic fields and electric fields.
"""
import math
import numpy
from ..helpers.parameters import format_function_call


class DomainError(ValueError):
    """
    Raised when a field is evaluated outside its domain of definition.
    """
    pass


class AnisotropyField:
    """
    Magnetic field :math:`B = |B| (b_x, b_y, 0)` where *b* is the
    unit direction of the anisotropy. Every method takes coordinates
    as arrays of any shape.
    """

    def __init__(self, bmag=1.):
        """
        @param      bmag        field magnitude, positive
        """
        if not bmag > 0:
            raise ValueError("bmag must be positive not {0}".format(bmag))
        self.bmag = float(bmag)

    def direction(self, x, y):
        """
        Returns the two components of the unit vector *b*.
        """
        raise NotImplementedError("Should be overwritten.")  # pragma: no cover

    def magnitude(self, x, y):
        """
        Returns :math:`|B|`.
        """
        return numpy.full(numpy.broadcast(x, y).shape, self.bmag)

    def field(self, x, y):
        """
        Returns the three components of *B*.
        """
        bx, by = self.direction(x, y)
        mag = self.magnitude(x, y)
        return bx * mag, by * mag, numpy.zeros_like(bx)

    @property
    def key(self):
        "Hashable key identifying the field."
        raise NotImplementedError("Should be overwritten.")  # pragma: no cover

    def __repr__(self):
        return format_function_call(self.__class__.__name__,
                                    dict(zip(self._param_names, self.key[1:])))


class ObliqueField(AnisotropyField):
    """
    Uniform field :math:`b = (\\sin\\alpha, \\cos\\alpha)`.
    """

    _param_names = ('alpha', 'bmag')

    def __init__(self, alpha, bmag=1.):
        AnisotropyField.__init__(self, bmag)
        self.alpha = float(alpha)
        self.b = (math.sin(self.alpha), math.cos(self.alpha))

    def direction(self, x, y):
        shape = numpy.broadcast(x, y).shape
        return numpy.full(shape, self.b[0]), numpy.full(shape, self.b[1])

    @property
    def key(self):
        return ('oblique', self.alpha, self.bmag)


class RadialCircularField(AnisotropyField):
    """
    Field whose lines are circles centered at the origin,
    :math:`b = (y / r, -x / r)`. It is divergence free
    for a constant magnitude.
    """

    _param_names = ('bmag',)

    def direction(self, x, y):
        x = numpy.asarray(x, dtype=numpy.float64)
        y = numpy.asarray(y, dtype=numpy.float64)
        r = numpy.sqrt(x ** 2 + y ** 2)
        if numpy.any(r == 0):
            raise DomainError(
                "The radial field is not defined at the origin.")
        return y / r, -x / r

    @property
    def key(self):
        return ('radial', self.bmag)


class ElectricField:
    """
    Electric field defined by a function returning its three components.
    """

    def __init__(self, fct, name="custom"):
        """
        @param      fct         function *(x, y) -> (Ex, Ey, Ez)*
        @param      name        name used in representations
        """
        self.fct = fct
        self.name = name

    def __call__(self, x, y):
        ex, ey, ez = self.fct(x, y)
        shape = numpy.broadcast(x, y).shape
        return (numpy.broadcast_to(ex, shape), numpy.broadcast_to(ey, shape),
                numpy.broadcast_to(ez, shape))

    def __repr__(self):
        return "ElectricField(name='{0}')".format(self.name)


def oblique_field(alpha, bmag=1.):
    """
    Returns the uniform field :math:`B = |B| (\\sin\\alpha, \\cos\\alpha, 0)`.
    Angle 0 gives a field aligned with the *y* axis.

    @param      alpha       angle in :math:`[0, \\pi/2]`
    @param      bmag        magnitude
    @return                 @see cl ObliqueField
    """
    if not 0 <= alpha <= math.pi / 2 + 1e-15:
        raise ValueError("alpha must be in [0, pi/2] not {0}".format(alpha))
    return ObliqueField(alpha, bmag)


def radial_circular_field(bmag=1.):
    """
    Returns the field :math:`b = (\\sin\\theta, -\\cos\\theta)` with
    :math:`\\tan\\theta = y / x`, its field lines are circles around
    the origin.

    @param      bmag        magnitude
    @return                 @see cl RadialCircularField
    """
    return RadialCircularField(bmag)


def make_field(name, alpha=math.pi / 3, bmag=1.):
    """
    Creates a field from its configuration name,
    ``'oblique'`` or ``'radial'``.
    """
    if name == 'oblique':
        return oblique_field(alpha, bmag)
    if name == 'radial':
        return radial_circular_field(bmag)
    raise ValueError("Unknown field '{0}'.".format(name))


def test_electric_field(B):
    """
    Returns the electric field :math:`E = (0, 0, B_x + B_y)`.
    The uniform state :math:`n = 1, nu = (-1, 1, 0)` is then
    stationary, :math:`n E + nu \\times B = 0`.

    @param      B           @see cl AnisotropyField
    @return                 @see cl ElectricField
    """
    def fct(x, y):
        bx, by, _ = B.field(x, y)
        return 0., 0., bx + by

    return ElectricField(fct, name="test")


test_electric_field.__test__ = False
