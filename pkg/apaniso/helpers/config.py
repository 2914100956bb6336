"""
@file
@brief Reads the flat configuration files used by the command line.

A configuration file is a list of ``key = value`` lines.
Everything after ``#`` is ignored. Values are converted into
*int*, *float*, *bool* or *str*, a comma separated value
becomes a list. Angles may be written with ``pi``
such as ``pi/3`` or ``0.25*pi``.

::

    # oblique field, second order check
    field = oblique
    alpha = pi/3
    eps = 1e-6
    grids = 20, 40, 80, 160
"""
import math
import re


class ConfigError(ValueError):
    """
    Raised when a configuration file or a configuration
    value cannot be used.
    """
    pass


_pi_expr = re.compile(
    "^(?P<coef>[0-9]*\\.?[0-9]*(e[-+]?[0-9]+)?)?\\s*\\*?\\s*pi"
    "(\\s*/\\s*(?P<den>[0-9]+\\.?[0-9]*))?$")


_common = dict(field="oblique", alpha=math.pi / 3, bmag=1.,
               x0=None, x1=None, y0=None, y1=None,
               tol=1e-12, max_iter=2000, method="auto",
               bc_mode="all", shift=0., refine=6, n_jobs=1, verbose=0)

#: default values for every subcommand, any other key is rejected
SCHEMAS = {
    'solve-elliptic': dict(_common, case="oblique", eps=1e-6, nx=40, ny=40),
    'euler-lorentz': dict(_common, eps=1e-9, temperature=1., nx=40, ny=40,
                          scheme="ap", dt=None, cfl=0.5, dt_mult=1.,
                          t_final=3.95e-6, n_steps=None, n_boundary=1.,
                          m0=[-1., 1., 0.], perturbation=None,
                          perturbation_width=0.1, snapshots=1),
    'convergence': dict(_common, case="oblique", eps=1e-6,
                        grids=[20, 40, 80, 160]),
    'angle-sweep': dict(_common, eps=1e-9, nx=40, ny=40, n_angles=16,
                        alpha_min=0.05, alpha_max=math.pi / 2 - 0.05),
    'p-study': dict(_common, refine=0, eps_list=[10. ** (-k) for k in range(2, 13)],
                    nx=60, ny=60, zero_f0=False),
    'el-compare': dict(_common, eps=1e-9, temperature=1., nx=40, ny=40,
                       cfl=0.5, dt_mult=[1., 10.], t_final=3.95e-6,
                       n_boundary=1., m0=[-1., 1., 0.], perturbation=None,
                       perturbation_width=0.1, schemes=["ap", "classical"]),
}


def parse_value(text):
    """
    Converts a string into a python value.

    @param      text        string
    @return                 int, float, bool, None, str or list

    .. runpython::
        :showcode:

        from apaniso.helpers.config import parse_value
        print(parse_value("pi/3"), parse_value("20, 40"), parse_value("1e-9"))
    """
    text = text.strip()
    if "," in text:
        return [parse_value(t) for t in text.split(",") if t.strip()]
    low = text.lower()
    if low in ('true', 'yes', 'on'):
        return True
    if low in ('false', 'no', 'off'):
        return False
    if low in ('none', ''):
        return None
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        pass
    m = _pi_expr.match(low)
    if m:
        coef = m.group('coef')
        den = m.group('den')
        value = math.pi * (float(coef) if coef else 1.)
        return value / float(den) if den else value
    return text


def read_config(lines):
    """
    Parses a configuration.

    @param      lines       filename or list of lines
    @return                 dictionary ``{key: value}``
    """
    if isinstance(lines, str):
        with open(lines, "r", encoding="utf-8") as f:
            lines = f.readlines()
    res = {}
    for i, line in enumerate(lines):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(
                "Line {0} is not a 'key = value' line: '{1}'".format(i + 1, line))
        key, value = line.split("=", 1)
        key = key.strip()
        if key in res:
            raise ConfigError(
                "Key '{0}' is defined twice (line {1}).".format(key, i + 1))
        res[key] = parse_value(value)
    return res


def make_config(command, values=None, **overrides):
    """
    Merges user values with the defaults of a subcommand.

    @param      command     subcommand name, a key of *SCHEMAS*
    @param      values      dictionary returned by @see fn read_config
    @param      overrides   values given on the command line,
                            None values are ignored
    @return                 dictionary
    """
    if command not in SCHEMAS:
        raise ConfigError("Unknown command '{0}', expecting one of {1}.".format(
            command, list(sorted(SCHEMAS))))
    schema = SCHEMAS[command]
    conf = dict(schema)
    for src in [values or {}, overrides]:
        for k, v in src.items():
            if k not in schema:
                raise ConfigError("Unknown key '{0}' for command '{1}'.".format(
                    k, command))
            if v is not None:
                conf[k] = v
    for k, default in schema.items():
        if isinstance(default, list) and conf[k] is not None and not isinstance(conf[k], list):
            conf[k] = [conf[k]]
    if conf['field'] not in ('oblique', 'radial'):
        raise ConfigError("field must be 'oblique' or 'radial' not '{0}'".format(
            conf['field']))
    default_box = (0., 1.) if conf['field'] == 'oblique' else (1., 2.)
    for k, d in [('x0', default_box[0]), ('x1', default_box[1]),
                 ('y0', default_box[0]), ('y1', default_box[1])]:
        if conf[k] is None:
            conf[k] = d
    check_config(conf)
    return conf


_choices = dict(field=('oblique', 'radial'), method=('auto', 'direct', 'iterative'),
                bc_mode=('all', 'flux_only'), scheme=('ap', 'classical'),
                schemes=('ap', 'classical'))
_positive = ('eps', 'eps_list', 'tol', 'bmag', 'temperature', 'cfl', 'dt',
             'dt_mult', 't_final', 'n_boundary', 'perturbation_width')
_counts = ('nx', 'ny', 'grids', 'max_iter', 'n_angles', 'n_steps')
_non_negative = ('shift', 'refine', 'snapshots')


def check_config(conf):
    """
    Checks the values of a configuration returned by @see fn make_config,
    raises @see cl ConfigError if one of them cannot be used.
    """
    def values(k):
        v = conf[k]
        return v if isinstance(v, list) else [v]

    for k, choices in _choices.items():
        if k in conf:
            for v in values(k):
                if v not in choices:
                    raise ConfigError("{0} must be in {1} not {2!r}".format(
                        k, choices, v))
    for k in _positive + _counts + _non_negative:
        if k not in conf or conf[k] is None:
            continue
        for v in values(k):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ConfigError("{0} must be a number not {1!r}".format(k, v))
            if k in _counts and not isinstance(v, int):
                raise ConfigError("{0} must be an integer not {1!r}".format(k, v))
            if k in _non_negative and v < 0:
                raise ConfigError("{0} must be non negative not {1!r}".format(k, v))
            if k not in _non_negative and not v > 0:
                raise ConfigError("{0} must be positive not {1!r}".format(k, v))
    if not (conf['x0'] < conf['x1'] and conf['y0'] < conf['y1']):
        raise ConfigError("Empty domain [{0}, {1}] x [{2}, {3}].".format(
            conf['x0'], conf['x1'], conf['y0'], conf['y1']))
