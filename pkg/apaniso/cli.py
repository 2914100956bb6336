"""
@file
@brief Command line, ``python -m apaniso <command> --config <file>``.

Exit codes: 0 success, 1 failure of a linear solver,
2 invalid configuration, 3 instability of a time scheme,
4 error ratio undefined because the exact solution vanishes.
Any other exception is not caught.
"""
import argparse
import os
import pandas
from .helpers.config import read_config, make_config, ConfigError, SCHEMAS
from .mesh import build_mesh, write_fields_csv
from .bfield import make_field, DomainError
from .discrete import operator_stencils
from .linsolve import SolverOptions, SolverFailureError, assemble_second_order
from .plasma import PlasmaConfig, initial_state, run, InstabilityError
from .elliptic import solve
from .harness import (
    make_case, case_box, error_norms, convergence_study, angle_sweep,
    p_accuracy_study, el_compare, UndefinedRatioError)


def _options(conf):
    return SolverOptions(tol=conf['tol'], max_iter=conf['max_iter'],
                         method=conf['method'], bc_mode=conf['bc_mode'],
                         shift=conf['shift'], refine=conf['refine'])


def _mesh(conf, box=None):
    box = box or (conf['x0'], conf['x1'], conf['y0'], conf['y1'])
    return build_mesh(box[0], box[1], box[2], box[3], conf['nx'], conf['ny'])


def _write(df, out, name, fLOG):
    filename = os.path.join(out, name)
    df.to_csv(filename, index=False, float_format="%.17g")
    fLOG("[apaniso] wrote '{0}' ({1} rows)".format(filename, df.shape[0]))
    return filename


def _dump(prob, options, out, fLOG):
    b, mesh = prob.anisotropy, prob.mesh
    for name, stencil in operator_stencils(b, mesh).items():
        filename = os.path.join(out, "stencil_{0}.csv".format(name))
        stencil.to_csv(filename)
        fLOG("[apaniso] wrote '{0}'".format(filename))
    systems = dict(
        g=assemble_second_order(b, mesh, sign=-1, bc_mode=options.bc_mode,
                                shift=options.shift, name="g"),
        u=assemble_second_order(b, mesh, eps_shift=prob.eps, sign=1,
                                bc_mode=options.bc_mode, shift=options.shift,
                                name="u"))
    for name, system in systems.items():
        filename = os.path.join(out, "system_{0}.mtx".format(name))
        system.to_matrix_market(filename)
        fLOG("[apaniso] wrote '{0}'".format(filename))


def _solve_elliptic(conf, out, dump, fLOG):
    case = conf['case']
    mesh = _mesh(conf, case_box(case))
    prob, exact, _, _ = make_case(case, conf['eps'], mesh, alpha=conf['alpha'])
    options = _options(conf)
    sol = solve(prob, options=options, verbose=conf['verbose'], fLOG=fLOG)
    filename = os.path.join(out, "solution.csv")
    write_fields_csv(filename, mesh, 'primal', phi=sol.phi, p=sol.p, q=sol.q,
                     exact=exact)
    fLOG("[apaniso] wrote '{0}'".format(filename))
    diag = sol.diagnostics()
    diag.update(error_norms(sol.phi, exact).to_dict())
    _write(pandas.DataFrame([diag]), out, "diagnostics.csv", fLOG)
    if dump:
        _dump(prob, options, out, fLOG)


def _euler_lorentz(conf, out, fLOG):
    mesh = _mesh(conf)
    b = make_field(conf['field'], alpha=conf['alpha'], bmag=conf['bmag'])
    config = PlasmaConfig(mesh, b, eps=conf['eps'], temperature=conf['temperature'],
                          dt=conf['dt'], n_boundary=conf['n_boundary'],
                          scheme=conf['scheme'], options=_options(conf))
    state = initial_state(config, m0=conf['m0'], n0=conf['n_boundary'],
                          perturbation=conf['perturbation'],
                          width=conf['perturbation_width'])
    res = run(config, state=state, t_final=conf['t_final'],
              n_steps=conf['n_steps'], cfl=conf['cfl'], dt_mult=conf['dt_mult'],
              snapshots=conf['snapshots'], verbose=conf['verbose'], fLOG=fLOG)
    for name in res.write(out):
        fLOG("[apaniso] wrote '{0}'".format(name))


def _sweep(command, conf, out, fLOG):
    common = dict(options=_options(conf), n_jobs=conf['n_jobs'],
                  verbose=conf['verbose'], fLOG=fLOG)
    if command == 'convergence':
        res = convergence_study(case=conf['case'], grids=conf['grids'],
                                eps=conf['eps'], alpha=conf['alpha'], **common)
    elif command == 'angle-sweep':
        res = angle_sweep(eps=conf['eps'], n=conf['nx'], n_angles=conf['n_angles'],
                          alpha_min=conf['alpha_min'], alpha_max=conf['alpha_max'],
                          **common)
    elif command == 'p-study':
        res = p_accuracy_study(alpha=conf['alpha'], eps_list=conf['eps_list'],
                               n=conf['nx'], zero_f0=conf['zero_f0'], **common)
    else:
        res = el_compare(field=conf['field'], eps=conf['eps'], nx=conf['nx'],
                         ny=conf['ny'], schemes=conf['schemes'],
                         dt_mult=conf['dt_mult'], t_final=conf['t_final'],
                         temperature=conf['temperature'], cfl=conf['cfl'],
                         m0=conf['m0'], n_boundary=conf['n_boundary'],
                         perturbation=conf['perturbation'],
                         perturbation_width=conf['perturbation_width'],
                         alpha=conf['alpha'], bmag=conf['bmag'],
                         box=(conf['x0'], conf['x1'], conf['y0'], conf['y1']),
                         **common)
        for (scheme, mult), run_res in sorted(res.runs.items()):
            run_res.write(os.path.join(out, "{0}_x{1:g}".format(scheme, mult)))
    name = command.replace('-', '_')
    _write(res.data, out, name + ".csv", fLOG)
    _write(res.summary_dataframe(), out, name + "_summary.csv", fLOG)


def build_parser():
    """
    Returns the parser of the command line.
    """
    parser = argparse.ArgumentParser(
        prog="apaniso",
        description="Asymptotic-preserving solvers for degenerate anisotropic "
                    "problems and the Euler-Lorentz model.")
    sub = parser.add_subparsers(dest="command")
    for command in sorted(SCHEMAS):
        p = sub.add_parser(command)
        p.add_argument("--config", default=None, help="key = value file")
        p.add_argument("--out", default=".", help="output folder")
        p.add_argument("--eps", type=float, default=None)
        p.add_argument("--verbose", type=int, default=None)
        if command == 'solve-elliptic':
            p.add_argument("--case", default=None)
            p.add_argument("--dump", action="store_true",
                           help="writes the stencils and the assembled matrices")
        if command in ('solve-elliptic', 'euler-lorentz', 'angle-sweep',
                       'p-study', 'el-compare'):
            p.add_argument("--nx", type=int, default=None)
        if command in ('euler-lorentz', 'el-compare', 'solve-elliptic'):
            p.add_argument("--ny", type=int, default=None)
        if command == 'euler-lorentz':
            p.add_argument("--scheme", choices=["ap", "classical"], default=None)
            p.add_argument("--dt-mult", dest="dt_mult", type=float, default=None)
        if command == 'convergence':
            p.add_argument("--case", default=None)
    return parser


def main(args=None, fLOG=print):
    """
    Runs the command line.

    @param      args        list of arguments, *sys.argv* if None
    @param      fLOG        logging function
    @return                 exit code
    """
    parser = build_parser()
    ns = parser.parse_args(args)
    if ns.command is None:
        parser.print_help()
        return 2
    overrides = {k: v for k, v in vars(ns).items()
                 if k not in ('command', 'config', 'out', 'dump') and v is not None}
    try:
        values = read_config(ns.config) if ns.config else {}
        conf = make_config(ns.command, values, **overrides)
        if 'case' in conf:
            try:
                case_box(conf['case'])
            except ValueError as e:
                raise ConfigError(str(e)) from e
        if not os.path.exists(ns.out):
            os.makedirs(ns.out)
    except (ConfigError, OSError) as e:
        fLOG("[apaniso] invalid configuration: {0}".format(e))
        return 2
    try:
        if ns.command == 'solve-elliptic':
            _solve_elliptic(conf, ns.out, ns.dump, fLOG)
        elif ns.command == 'euler-lorentz':
            _euler_lorentz(conf, ns.out, fLOG)
        else:
            _sweep(ns.command, conf, ns.out, fLOG)
    except DomainError as e:
        fLOG("[apaniso] invalid configuration: {0}".format(e))
        return 2
    except InstabilityError as e:
        fLOG("[apaniso] instability at step {0}, time {1}: {2}".format(
            e.step, e.time, e))
        return 3
    except SolverFailureError as e:
        fLOG("[apaniso] solver failure: {0}".format(e))
        return 1
    except UndefinedRatioError as e:
        fLOG("[apaniso] undefined error ratio: {0}".format(e))
        return 4
    return 0
