"""
@file
@brief Functions to display parameters of the numerical objects.
"""
import textwrap
import numpy


def format_value(v):
    """
    Formats a value to be included in a string.
    Arrays are summarized by their shape, floats use
    the shortest representation which round-trips.

    @param      v           any value
    @return                 a string
    """
    if isinstance(v, str):
        return "'{0}'".format(v.replace("'", "\\'"))
    if isinstance(v, numpy.ndarray):
        return "array(shape={0})".format(v.shape)
    if isinstance(v, (float, numpy.floating)):
        return repr(float(v))
    if isinstance(v, (list, tuple)):
        inside = ", ".join(format_value(e) for e in v)
        return "[{0}]".format(inside) if isinstance(v, list) else "({0})".format(inside)
    return "{0}".format(v)


def format_parameters(pdict):
    """
    Formats a list of parameters sorted by names.

    @param      pdict       dictionary
    @return                 string

    .. runpython::
        :showcode:

        from apaniso.helpers.parameters import format_parameters

        d = dict(nx=20, eps=1e-9, field="oblique")
        print(format_parameters(d))
    """
    return ", ".join('{0}={1}'.format(k, format_value(v))
                     for k, v in sorted(pdict.items()))


def format_function_call(name, pdict):
    """
    Formats a function call with named parameters,
    wrapped on 70 characters.

    @param      name        function or class name
    @param      pdict       dictionary
    @return                 string

    .. runpython::
        :showcode:

        from apaniso.helpers.parameters import format_function_call

        d = dict(nx=20, eps=1e-9, field="oblique")
        print(format_function_call("Mesh", d))
    """
    res = '{0}({1})'.format(name, format_parameters(pdict))
    return "\n".join(textwrap.wrap(res, width=70, subsequent_indent='    '))
