"""
@file
@brief Relative error norms between a numerical solution
and an exact solution sampled at the cell centers.
"""
import numpy
from ..mesh import PrimalField


class UndefinedRatioError(ZeroDivisionError):
    """
    Raised when a relative norm is computed against
    an exact field equal to zero.
    """
    pass


class ErrorTriple:
    """
    Relative errors in norms :math:`L^1`, :math:`L^2`, :math:`L^\\infty`.
    """

    def __init__(self, e1, e2, einf):
        self.e1 = e1
        self.e2 = e2
        self.einf = einf

    def __iter__(self):
        yield self.e1
        yield self.e2
        yield self.einf

    def __repr__(self):
        return "ErrorTriple(e1={0!r}, e2={1!r}, einf={2!r})".format(
            self.e1, self.e2, self.einf)

    def to_dict(self, prefix=""):
        "Returns a dictionary ``{prefix + 'e1': ..., ...}``."
        return {prefix + 'e1': self.e1, prefix + 'e2': self.e2,
                prefix + 'einf': self.einf}


def error_norms(num, exact):
    """
    Computes the relative errors
    :math:`e_1 = \\frac{\\sum |\\phi_a - \\phi_h|}{\\sum |\\phi_a|}`,
    :math:`e_2 = \\sqrt{\\frac{\\sum |\\phi_a - \\phi_h|^2}{\\sum |\\phi_a|^2}}`,
    :math:`e_\\infty = \\frac{\\max |\\phi_a - \\phi_h|}{\\max |\\phi_a|}`.
    Sums are unweighted and run over all cells.

    @param      num         @see cl PrimalField, numerical solution
    @param      exact       @see cl PrimalField, exact solution
    @return                 @see cl ErrorTriple

    .. runpython::
        :showcode:

        import numpy
        from apaniso.mesh import build_mesh, PrimalField
        from apaniso.harness import error_norms

        mesh = build_mesh(0, 1, 0, 1, 4, 4)
        exact = PrimalField(mesh, numpy.ones(16))
        num = PrimalField(mesh, numpy.ones(16) * 1.01)
        print(error_norms(num, exact))
    """
    if not isinstance(num, PrimalField) or not isinstance(exact, PrimalField):
        raise TypeError("Both fields must be PrimalField not {0}, {1}".format(
            type(num), type(exact)))
    if num.mesh != exact.mesh:
        raise ValueError("Fields are defined on different meshes.")
    a = exact.values
    d = numpy.abs(a - num.values)
    den = numpy.abs(a)
    if den.max() == 0:
        raise UndefinedRatioError(
            "Relative errors are undefined for a null exact field.")
    return ErrorTriple(float(d.sum() / den.sum()),
                       float(numpy.sqrt((d ** 2).sum() / (den ** 2).sum())),
                       float(d.max() / den.max()))
