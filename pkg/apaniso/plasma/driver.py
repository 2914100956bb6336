"""
@file
@brief Runs the Euler-Lorentz model over a time interval.
"""
import math
import os
import numpy
import pandas
from ..mesh import PrimalField
from ..helpers.parameters import format_function_call
from .state import PlasmaState
from .scheme import cfl_dt, check_state, step as one_step


def initial_state(config, m0=(-1., 1., 0.), n0=1., perturbation=None,
                  width=0.1, center=None):
    """
    Builds the initial state, a uniform momentum and a density
    :math:`n_0 + a \\exp(-|x - c|^2 / w^2)`.

    @param      config          @see cl PlasmaConfig
    @param      m0              uniform momentum, with
                                :math:`E = (0, 0, B_x + B_y)` the state
                                :math:`n = 1, nu = (-1, 1, 0)` is stationary
    @param      n0              uniform density
    @param      perturbation    amplitude *a* of the density bump, None for none
    @param      width           width *w* of the bump
    @param      center          center *c*, the center of the domain if None
    @return                     @see cl PlasmaState
    """
    mesh = config.mesh
    if len(m0) != 3:
        raise ValueError("m0 must have three components not {0}".format(len(m0)))
    x, y = mesh.primal_coordinates()
    n = numpy.full(mesh.primal_shape, float(n0))
    if perturbation:
        if center is None:
            center = (0.5 * (mesh.x0 + mesh.x1), 0.5 * (mesh.y0 + mesh.y1))
        r2 = (x - center[0]) ** 2 + (y - center[1]) ** 2
        n = n + perturbation * numpy.exp(-r2 / width ** 2)
    ms = [PrimalField(mesh, numpy.full(mesh.primal_shape, float(v))) for v in m0]
    return PlasmaState(PrimalField(mesh, n), *ms, time=0.)


class RunResult:
    """
    Results of @see fn run.
    """

    def __init__(self, state, reports, snapshots, dt, n_steps):
        """
        @param      state       final @see cl PlasmaState
        @param      reports     list of @see cl StepReport
        @param      snapshots   list of @see cl PlasmaState
        @param      dt          time step
        @param      n_steps     number of steps
        """
        self.state = state
        self.reports = reports
        self.snapshots = snapshots
        self.dt = dt
        self.n_steps = n_steps

    def __repr__(self):
        return format_function_call("RunResult", dict(
            time=self.state.time, dt=self.dt, n_steps=self.n_steps,
            snapshots=len(self.snapshots)))

    def to_dataframe(self):
        "Returns the step reports as a dataframe."
        return pandas.DataFrame([r.to_dict() for r in self.reports])

    def write(self, folder):
        """
        Writes every snapshot into ``state_t<time>.csv``
        and the reports into ``report.csv``.

        @param      folder      destination folder, created if missing
        @return                 list of written files
        """
        if not os.path.exists(folder):
            os.makedirs(folder)
        names = []
        for snap in self.snapshots:
            name = os.path.join(folder, "state_t{0:.6e}.csv".format(snap.time))
            snap.to_dataframe().to_csv(name, index=False, float_format="%.17g")
            names.append(name)
        name = os.path.join(folder, "report.csv")
        self.to_dataframe().to_csv(name, index=False, float_format="%.17g")
        names.append(name)
        return names


def time_steps(dt, t_final=None, n_steps=None):
    """
    Returns the list of time steps, the last one is shortened
    to stop exactly at *t_final*.
    """
    if n_steps is not None:
        return [dt] * int(n_steps)
    if t_final is None:
        raise ValueError("t_final or n_steps must be specified.")
    if not t_final > 0:
        raise ValueError("t_final must be positive not {0}".format(t_final))
    n = max(int(math.ceil(t_final / dt - 1e-9)), 1)
    steps = [dt] * n
    steps[-1] = t_final - dt * (n - 1)
    return steps


def run(config, state=None, t_final=None, n_steps=None, cfl=0.5, dt_mult=1.,
        cfl_scheme='classical', snapshots=1, monitor=None, verbose=0, fLOG=None):
    """
    Runs the scheme of *config* from *state*.

    @param      config      @see cl PlasmaConfig, if *dt* is None, the time
                            step is *dt_mult* times the CFL step
                            of *cfl_scheme*
    @param      state       initial @see cl PlasmaState,
                            @see fn initial_state if None
    @param      t_final     final time
    @param      n_steps     number of steps (overwrites *t_final*)
    @param      cfl         safety factor
    @param      dt_mult     multiplies the CFL time step
    @param      cfl_scheme  ``'classical'`` (acoustic) or ``'ap'`` (material)
    @param      snapshots   number of intermediate states to keep,
                            the initial and final states are always kept
    @param      monitor     function *monitor(state, report)* called
                            after every step
    @param      verbose     verbosity
    @param      fLOG        logging function
    @return                 @see cl RunResult
    @raises     InstabilityError when a step fails

    .. runpython::
        :showcode:

        import math
        from apaniso.mesh import build_mesh
        from apaniso.bfield import oblique_field
        from apaniso.plasma import PlasmaConfig, run

        mesh = build_mesh(0, 1, 0, 1, 10, 10)
        config = PlasmaConfig(mesh, oblique_field(math.pi / 3), eps=1e-6)
        res = run(config, n_steps=5, cfl_scheme='ap')
        print(res)
        print(res.to_dataframe()[['step', 'time', 'residual']])
    """
    # shallow copy, the factorization cache stays shared
    config = config.__class__(**config.get_params(deep=False)).validate()
    if state is None:
        state = initial_state(config)
    check_state(state, step=0)
    dt = config.dt
    if dt is None:
        dt = dt_mult * cfl_dt(state, config, safety=cfl, scheme=cfl_scheme)
    steps = time_steps(dt, t_final=t_final, n_steps=n_steps)
    every = max(len(steps) // max(snapshots, 1), 1)
    reference = state.max_norms()
    kept = [state]
    reports = []

    loop = enumerate(steps)
    if verbose:
        try:
            from tqdm import tqdm
            loop = tqdm(list(loop))
        except ImportError:  # pragma: no cover
            pass

    for i, delta in loop:
        config.set_params(dt=delta)
        state, report = one_step(state, config, step_index=i + 1)
        check_state(state, step=i + 1, reference=reference,
                    growth_limit=config.growth_limit)
        reports.append(report)
        if monitor is not None:
            monitor(state, report)
        if verbose and fLOG:
            fLOG("[run] step {0} t={1:.6g} dt={2:.3g} residual={3:.3g}".format(
                i + 1, state.time, delta, report.max_residual()))
        if (i + 1) % every == 0 or i + 1 == len(steps):
            if kept[-1] is not state:
                kept.append(state)
    return RunResult(state, reports, kept, dt, len(steps))
