"""
@file
@brief Experiments: convergence under refinement, sensitivity
to the angle of the field, accuracy of *p* with respect to
:math:`\\varepsilon` and comparison of both schemes for the
Euler-Lorentz model. Every experiment returns a @see cl SweepResult
which can be saved as CSV.
"""
import math
import warnings
import numpy
import pandas
from joblib import Parallel, delayed
from sklearn.linear_model import LinearRegression
from sklearn.metrics import r2_score
from sklearn.model_selection import ParameterGrid
from ..mesh import build_mesh
from ..bfield import make_field
from ..linsolve import SolverFailureError, SolverOptions, FactorizationCache
from ..elliptic import solve
from ..plasma import PlasmaConfig, initial_state, run, InstabilityError
from ..helpers.parameters import format_function_call
from .norms import error_norms
from .manufactured import make_case, case_box, oblique_manufactured


class SweepResult:
    """
    Rows of an experiment, fitted slopes and a summary.
    """

    def __init__(self, name, rows, slopes=None, summary=None, runs=None):
        """
        @param      name        experiment name
        @param      rows        list of dictionaries, one per point
        @param      slopes      dictionary ``{column: (slope, r2)}``
        @param      summary     dictionary of aggregated values
        @param      runs        optional objects attached to the points
        """
        self.name = name
        self.data = pandas.DataFrame(rows)
        self.slopes = slopes or {}
        self.summary = summary or {}
        self.runs = runs or {}

    def __repr__(self):
        return format_function_call("SweepResult", dict(
            name=self.name, rows=self.data.shape[0], slopes=self.slopes))

    def __len__(self):
        return self.data.shape[0]

    def __getitem__(self, column):
        return self.data[column]

    def to_csv(self, filename):
        "Writes the rows into a CSV file."
        self.data.to_csv(filename, index=False, float_format="%.17g")

    def summary_dataframe(self):
        """
        Returns the slopes and the summary as a dataframe
        with columns *name, value, r2*.
        """
        rows = [dict(name="slope_" + k, value=v[0], r2=v[1])
                for k, v in self.slopes.items()]
        rows.extend(dict(name=k, value=v, r2=numpy.nan)
                    for k, v in self.summary.items())
        return pandas.DataFrame(rows)


def fit_slope(x, y):
    """
    Fits :math:`\\log_{10} y = a \\log_{10} x + c` by least squares.

    @param      x, y        positive values
    @return                 slope *a*, coefficient of determination
    """
    x = numpy.asarray(x, dtype=numpy.float64)
    y = numpy.asarray(y, dtype=numpy.float64)
    keep = (x > 0) & (y > 0) & numpy.isfinite(y)
    if keep.sum() < 2:
        raise ValueError("At least two positive points are needed to fit a slope.")
    if keep.sum() < 3:
        warnings.warn("Slope fitted on {0} points only.".format(keep.sum()))
    lx = numpy.log10(x[keep]).reshape((-1, 1))
    ly = numpy.log10(y[keep])
    reg = LinearRegression().fit(lx, ly)
    return float(reg.coef_[0]), float(r2_score(ly, reg.predict(lx)))


def _parallel(fct, grid, n_jobs, verbose):
    points = list(grid)
    if verbose:
        try:
            from tqdm import tqdm
            points = tqdm(points)
        except ImportError:  # pragma: no cover
            pass
    return Parallel(n_jobs=n_jobs)(delayed(fct)(**p) for p in points)


def _solve_point(case, eps, n, alpha, options):
    box = case_box(case)
    mesh = build_mesh(box[0], box[1], box[2], box[3], n, n)
    prob, exact, p_exact, q_exact = make_case(case, eps, mesh, alpha=alpha)
    sol = solve(prob, options=options, cache=FactorizationCache("point"))
    row = dict(case=case, eps=eps, n=n, h=max(mesh.dx, mesh.dy), alpha=alpha)
    row.update(error_norms(sol.phi, exact).to_dict())
    if p_exact is not None:
        row.update(error_norms(sol.p, p_exact).to_dict("p_"))
        if q_exact.norm_inf() > 0:
            row.update(error_norms(sol.q, q_exact).to_dict("q_"))
    row['orthogonality'] = sol.orthogonality_defect()
    row['div_p'] = sol.div_p_norm()
    row['eps_p'] = sol.scaled_p_norm()
    for name, rep in sol.reports.items():
        row[name + '_residual'] = rep.residual
        row[name + '_time'] = rep.wall_time
    return row


def convergence_study(case='oblique', grids=(20, 40, 80, 160), eps=1e-6,
                      alpha=math.pi / 3, options=None, n_jobs=1,
                      verbose=0, fLOG=None):
    """
    Solves a test case on a list of grids and fits the order
    of convergence of every norm.

    @param      case        see @see fn make_case
    @param      grids       number of cells along each axis
    @param      eps         :math:`\\varepsilon`
    @param      alpha       angle of the oblique field
    @param      options     @see cl SolverOptions
    @param      n_jobs      number of parallel jobs
    @param      verbose     verbosity
    @param      fLOG        logging function
    @return                 @see cl SweepResult, slopes for
                            *e1, e2, einf* when there are at least two grids
    """
    grid = ParameterGrid(dict(case=[case], eps=[eps], n=list(grids),
                              alpha=[alpha], options=[options]))
    rows = _parallel(_solve_point, grid, n_jobs, verbose)
    rows.sort(key=lambda r: r['n'])
    slopes = {}
    if len(rows) >= 2:
        h = [r['h'] for r in rows]
        for col in ['e1', 'e2', 'einf', 'q_e2']:
            if col in rows[0]:
                slopes[col] = fit_slope(h, [r[col] for r in rows])
    if verbose and fLOG:
        fLOG("[convergence_study] {0} eps={1} slopes={2}".format(case, eps, slopes))
    return SweepResult("convergence", rows, slopes=slopes)


def _angle_point(alpha, eps, n, options):
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            row = _solve_point('oblique', eps, n, alpha, options)
        row['status'] = 'ok'
    except SolverFailureError as e:
        row = dict(case='oblique', eps=eps, n=n, alpha=alpha, status='failed',
                   message=str(e))
    return row


def angle_sweep(eps=1e-9, n=40, alphas=None, n_angles=16, alpha_min=0.05,
                alpha_max=math.pi / 2 - 0.05, options=None, n_jobs=1,
                verbose=0, fLOG=None):
    """
    Solves the oblique case for several angles of the field.

    @param      eps         :math:`\\varepsilon`
    @param      n           number of cells along each axis
    @param      alphas      list of angles, *n_angles* angles evenly
                            spaced in *[alpha_min, alpha_max]* if None
    @param      options     @see cl SolverOptions
    @param      n_jobs      number of parallel jobs
    @param      verbose     verbosity
    @param      fLOG        logging function
    @return                 @see cl SweepResult, the summary holds
                            the ratio max / min of every norm
                            and the number of failed angles

    A failing solve does not stop the sweep, its row has
    the status ``'failed'``.
    """
    if alphas is None:
        alphas = numpy.linspace(alpha_min, alpha_max, n_angles).tolist()
    grid = ParameterGrid(dict(alpha=list(alphas), eps=[eps], n=[n],
                              options=[options]))
    rows = _parallel(_angle_point, grid, n_jobs, verbose)
    rows.sort(key=lambda r: r['alpha'])
    ok = [r for r in rows if r['status'] == 'ok']
    failed = len(rows) - len(ok)
    if failed:
        warnings.warn("{0} angle(s) failed.".format(failed))
    summary = dict(failed=failed)
    for col in ['e1', 'e2', 'einf']:
        values = [r[col] for r in ok]
        if values and min(values) > 0:
            summary['ratio_' + col] = max(values) / min(values)
    if verbose and fLOG:
        fLOG("[angle_sweep] {0}".format(summary))
    return SweepResult("angle", rows, summary=summary)


def _p_point(alpha, eps, n, zero_f0, options):
    mesh = build_mesh(0., 1., 0., 1., n, n)
    prob, _, p_exact, _ = oblique_manufactured(
        alpha, eps, mesh, zero_f0=zero_f0, return_parts=True)
    sol = solve(prob, options=options, cache=FactorizationCache("point"))
    err = error_norms(sol.p, p_exact)
    return dict(eps=eps, n=n, alpha=alpha, zero_f0=zero_f0,
                einf_p=err.einf, e2_p=err.e2, div_p=sol.div_p_norm(),
                eps_p=sol.scaled_p_norm(), g_residual=sol.reports['g'].residual)


def p_accuracy_study(alpha=math.pi / 3, eps_list=None, n=60, zero_f0=False,
                     plateau_eps=1e-6, options=None, n_jobs=1, verbose=0,
                     fLOG=None):
    """
    Studies the accuracy of *p* when :math:`\\varepsilon` decreases.
    For large values, the error is the discretization error and does
    not depend on :math:`\\varepsilon` (plateau). Below a threshold, the
    round-off errors of the *g*-problem divided by :math:`\\varepsilon`
    dominate and the error grows like :math:`1/\\varepsilon`,
    unless *zero_f0* is True. The default options keep every computation
    in double precision (*refine=0*), iterative refinement in extended
    precision moves the threshold towards smaller values.

    @param      alpha       angle of the field
    @param      eps_list    values of :math:`\\varepsilon`,
                            :math:`10^{-2}` to :math:`10^{-12}` if None
    @param      n           number of cells along each axis
    @param      zero_f0     uses a right-hand side :math:`\\varepsilon f_1`
    @param      plateau_eps values above this one define the plateau
    @param      options     @see cl SolverOptions, *SolverOptions(refine=0)* if None
    @param      n_jobs      number of parallel jobs
    @param      verbose     verbosity
    @param      fLOG        logging function
    @return                 @see cl SweepResult, column *regime* is
                            ``'plateau'`` or ``'roundoff'``, the summary
                            holds the plateau value, the threshold and
                            the slopes of the error and of
                            :math:`\\|\\nabla \\cdot (b p)_{app}\\|_\\infty`
                            with respect to :math:`1 / \\varepsilon`
    """
    if eps_list is None:
        eps_list = [10. ** (-k) for k in range(2, 13)]
    if options is None:
        options = SolverOptions(refine=0)
    grid = ParameterGrid(dict(alpha=[alpha], eps=list(eps_list), n=[n],
                              zero_f0=[zero_f0], options=[options]))
    rows = _parallel(_p_point, grid, n_jobs, verbose)
    rows.sort(key=lambda r: -r['eps'])
    high = [r['einf_p'] for r in rows if r['eps'] >= plateau_eps]
    plateau = float(numpy.median(high)) if high else float(rows[0]['einf_p'])
    floor = None
    for r in rows:
        if r['eps'] < plateau_eps and r['einf_p'] > 3 * plateau:
            floor = r['eps']
            break
    for r in rows:
        r['regime'] = 'roundoff' if floor is not None and r['eps'] <= floor else 'plateau'
    summary = dict(plateau=plateau, floor_eps=floor)
    inv = [1. / r['eps'] for r in rows]
    if len(rows) >= 2:
        summary['div_p_slope'] = fit_slope(inv, [r['div_p'] for r in rows])[0]
    low = [r for r in rows if r['regime'] == 'roundoff']
    if len(low) >= 2:
        summary['roundoff_slope'] = fit_slope(
            [1. / r['eps'] for r in low], [r['einf_p'] for r in low])[0]
    if verbose and fLOG:
        fLOG("[p_accuracy_study] {0}".format(summary))
    return SweepResult("p_accuracy", rows, summary=summary)


def _el_run(base, scheme, dt_mult, perturbation):
    box = base['box']
    mesh = build_mesh(box[0], box[1], box[2], box[3], base['nx'], base['ny'])
    b = make_field(base['field'], alpha=base['alpha'], bmag=base['bmag'])
    config = PlasmaConfig(mesh, b, eps=base['eps'], temperature=base['temperature'],
                          n_boundary=base['n_boundary'], scheme=scheme,
                          options=base['options'])
    state = initial_state(config, m0=base['m0'], n0=base['n_boundary'],
                          perturbation=perturbation, width=base['width'])
    return run(config, state=state, t_final=base['t_final'],
               n_steps=base['n_steps'], cfl=base['cfl'], dt_mult=dt_mult,
               cfl_scheme='classical', snapshots=base['snapshots'])


def _el_point(scheme, dt_mult, base):
    row = dict(field=base['field'], eps=base['eps'], scheme=scheme,
               dt_mult=dt_mult)
    try:
        res = _el_run(base, scheme, dt_mult, base['perturbation'])
    except (InstabilityError, SolverFailureError) as e:
        row.update(status='unstable', step=getattr(e, 'step', None),
                   time=getattr(e, 'time', None), message=str(e))
        return row, None
    state = res.state
    norms = state.max_norms()
    row.update(status='ok', steps=res.n_steps, dt=res.dt, time=state.time,
               min_n=float(state.n.values.min()), max_n=norms['n'],
               max_m=max(norms['mx'], norms['my'], norms['mz']),
               max_residual=max((r.max_residual() for r in res.reports), default=0.),
               mass_defect=max((abs(r.mass_change + r.boundary_flux)
                                for r in res.reports), default=0.))
    if base['perturbation']:
        try:
            ref = _el_run(base, scheme, dt_mult, None)
        except (InstabilityError, SolverFailureError) as e:
            row['reference'] = 'unstable: {0}'.format(e)
        else:
            diff = state.distance(ref.state)
            row.update(diff_n=diff['n'],
                       diff_m=max(diff['mx'], diff['my'], diff['mz']))
    return row, res


def el_compare(field='oblique', eps=1e-9, nx=40, ny=40, schemes=('ap', 'classical'),
               dt_mult=(1., 10.), t_final=3.95e-6, n_steps=None, temperature=1.,
               cfl=0.5, m0=(-1., 1., 0.), n_boundary=1., perturbation=None,
               perturbation_width=0.1, alpha=math.pi / 3, bmag=1., box=None,
               snapshots=1, options=None, n_jobs=1, verbose=0, fLOG=None):
    """
    Runs both schemes of the Euler-Lorentz model with several time
    steps, multiples of the CFL step of the classical scheme.
    An instability is recorded in the row, it does not stop the
    comparison. With a perturbation, every run is compared with the
    unperturbed run (columns *diff_n*, *diff_m*).

    @param      field               ``'oblique'`` or ``'radial'``
    @param      eps                 :math:`\\varepsilon`
    @param      nx, ny              grid
    @param      schemes             list of schemes
    @param      dt_mult             list of multipliers of the time step
    @param      t_final             final time
    @param      n_steps             number of steps, overwrites *t_final*
    @param      temperature         *T*
    @param      cfl                 safety factor
    @param      m0                  initial momentum
    @param      n_boundary          boundary and initial density
    @param      perturbation        amplitude of the density bump
    @param      perturbation_width  width of the bump
    @param      alpha, bmag         field parameters
    @param      box                 domain, depends on the field if None
    @param      snapshots           number of kept states per run
    @param      options             @see cl SolverOptions
    @param      n_jobs              number of parallel jobs
    @param      verbose             verbosity
    @param      fLOG                logging function
    @return                         @see cl SweepResult, attribute *runs*
                                    maps *(scheme, dt_mult)* to the
                                    @see cl RunResult of successful runs
    """
    if box is None:
        box = case_box('radial' if field == 'radial' else 'oblique')
    base = dict(field=field, eps=eps, nx=nx, ny=ny, t_final=t_final,
                n_steps=n_steps, temperature=temperature, cfl=cfl, m0=tuple(m0),
                n_boundary=n_boundary, perturbation=perturbation,
                width=perturbation_width, alpha=alpha, bmag=bmag, box=box,
                snapshots=snapshots, options=options)
    grid = ParameterGrid(dict(scheme=list(schemes), dt_mult=list(dt_mult),
                              base=[base]))
    results = _parallel(_el_point, grid, n_jobs, verbose)
    rows = [r[0] for r in results]
    runs = {(r[0]['scheme'], r[0]['dt_mult']): r[1] for r in results
            if r[1] is not None}
    if verbose and fLOG:
        for row in rows:
            fLOG("[el_compare] {0} x{1}: {2}".format(
                row['scheme'], row['dt_mult'], row['status']))
    return SweepResult("el_compare", rows, runs=runs)
