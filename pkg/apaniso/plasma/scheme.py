"""
@file
@brief Time steps of the isothermal Euler-Lorentz model
:math:`\\partial_t n + \\nabla \\cdot (nu) = 0`,
:math:`\\varepsilon (\\partial_t (nu) + \\nabla \\cdot (nu \\otimes u))
+ T \\nabla n = n E + nu \\times B`.

The asymptotic-preserving step treats the parallel pressure gradient
implicitly: the parallel momentum is the solution of an anisotropic
elliptic problem solved with the decomposition of
@see fn solve. The classical step is explicit except for
the Lorentz force.
"""
import numpy
from ..mesh import PrimalField, DualField
from ..discrete.operators import b_grad_app, div_b_app, node_divergence, cell_gradient
from ..elliptic import EllipticProblem, solve
from .state import PlasmaState, StepReport, InstabilityError
from .hyperbolic import (
    fill_ghosts, convective_divergence, momentum_divergence,
    boundary_flux, density_nodes, density_gradient)


def _max_speed(state):
    ux, uy, _ = state.velocity()
    return float(numpy.sqrt(ux ** 2 + uy ** 2).max())


def cfl_dt(state, config, safety=0.5, scheme=None):
    """
    Computes the time step allowed by the CFL condition,
    :math:`\\Delta t = s \\frac{h}{\\max |u| + \\sqrt{T / \\varepsilon}}`
    for the classical scheme, :math:`s \\frac{h}{\\max |u|}` for the
    asymptotic-preserving scheme.

    @param      state       @see cl PlasmaState
    @param      config      @see cl PlasmaConfig
    @param      safety      safety factor *s* in :math:`]0, 1]`
    @param      scheme      overwrites *config.scheme*
    @return                 time step, *config.dt_max* if no speed bounds it
    """
    if not 0 < safety <= 1:
        raise ValueError("safety must be in ]0, 1] not {0}".format(safety))
    scheme = scheme or config.scheme
    h = min(state.mesh.dx, state.mesh.dy)
    speed = _max_speed(state)
    if scheme == 'classical':
        speed += numpy.sqrt(config.temperature / config.eps)
    elif scheme != 'ap':
        raise ValueError("Unknown scheme '{0}'".format(scheme))
    if speed == 0:
        return config.dt_max
    return min(safety * h / speed, config.dt_max)


def lorentz_solve(rhs, a, bfield, perpendicular=False):
    """
    Solves on every cell :math:`a\\, m + B \\times m = R`, that is
    :math:`a\\, m - m \\times B = R`, with
    :math:`m = \\frac{a^2 R - a B \\times R + B (B \\cdot R)}{a (a^2 + |B|^2)}`.
    The determinant :math:`a (a^2 + |B|^2)` is positive for *a > 0*.

    @param      rhs             three arrays, *R*
    @param      a               positive scalar
    @param      bfield          three arrays, *B*
    @param      perpendicular   returns only the component orthogonal to *B*,
                                :math:`\\frac{a R_\\perp - B \\times R}{a^2 + |B|^2}`,
                                which is still defined when *a = 0*
    @return                     three arrays
    """
    R = numpy.stack([numpy.asarray(r, dtype=numpy.float64) for r in rhs], axis=-1)
    B = numpy.stack([numpy.broadcast_to(b, R.shape[:-1]) for b in bfield], axis=-1)
    b2 = (B ** 2).sum(axis=-1, keepdims=True)
    bxr = numpy.cross(B, R)
    bdotr = (B * R).sum(axis=-1, keepdims=True)
    if perpendicular:
        ratio = numpy.divide(bdotr, b2, out=numpy.zeros_like(bdotr), where=b2 > 0)
        res = (a * (R - ratio * B) - bxr) / (a ** 2 + b2)
    else:
        if not a > 0:
            raise ValueError("a must be positive not {0}".format(a))
        res = (a ** 2 * R - a * bxr + B * bdotr) / (a * (a ** 2 + b2))
    return res[..., 0], res[..., 1], res[..., 2]


def _require_dt(config):
    if config.dt is None:
        raise ValueError("config.dt must be specified before a time step.")
    return config.dt


def _interior(fields):
    return {k: v[1:-1, 1:-1] for k, v in fields.items()}


def _bvector(fields):
    return (fields['bx'] * fields['bmag'], fields['by'] * fields['bmag'],
            numpy.zeros_like(fields['bx']))


def _momentum_rhs(state, config, conv, gx, gy, fields):
    # R = (eps / dt) m - eps C - T grad n + n E
    dt = config.dt
    eps, temp = config.eps, config.temperature
    n = state.n.values
    mx, my, mz = state.momentum()
    a = eps / dt
    return (a * mx - eps * conv[0].values - temp * gx + n * fields['ex'],
            a * my - eps * conv[1].values - temp * gy + n * fields['ey'],
            a * mz - eps * conv[2].values + n * fields['ez'])


def predict_perpendicular(state, config, padded=None, conv=None, fields=None):
    """
    Predicts the perpendicular momentum at the next time step with
    the explicit density gradient, the perpendicular component of the
    cell-wise Lorentz solve. It tends to the drift
    :math:`\\frac{1}{|B|} b \\times (T \\nabla n - n E)` when
    :math:`\\varepsilon \\to 0`.

    @return     three arrays
    """
    dt = _require_dt(config)
    if fields is None:
        fields = _interior(config.cell_fields(ghost=1))
    if padded is None:
        padded = fill_ghosts(state, config)
    if conv is None:
        conv = convective_divergence(state, config, padded=padded)
    gx, gy = density_gradient(state.n.values, state.mesh, config.n_boundary)
    rhs = _momentum_rhs(state, config, conv, gx, gy, fields)
    return lorentz_solve(rhs, config.eps / dt, _bvector(fields), perpendicular=True)


def _pad_momentum(state, config, m, ghost_fields):
    tmp = PlasmaState.from_arrays(state.mesh, state.n.values, *m, time=state.time)
    return fill_ghosts(tmp, config, fields=ghost_fields)


def build_parallel_rhs(state, config, m_perp=None, padded=None, conv=None,
                       fields=None):
    """
    Builds the data of the parallel momentum problem,
    the scaled form of
    :math:`\\frac{\\varepsilon}{\\Delta t} (nu)_\\parallel -
    T \\Delta t \\nabla_\\parallel (\\nabla \\cdot (b (nu)_\\parallel)) = ...`
    divided by :math:`T \\Delta t`:

    * :math:`\\kappa = \\nabla \\cdot (nu)_\\perp^{m+1}` on the dual nodes,
    * :math:`f_1 = (b \\cdot \\nabla)_{app} \\kappa`,
    * :math:`f_2 = [\\varepsilon' (nu)^m - \\frac{\\varepsilon}{T \\Delta t}
      \\nabla \\cdot (nu \\otimes u)^m + \\frac{n^m E}{T \\Delta t}]_\\parallel
      - \\frac{1}{\\Delta t} (b \\cdot \\nabla)_{app} n^m`
      with :math:`\\varepsilon' = \\frac{\\varepsilon}{T \\Delta t^2}`.

    The density on the boundary nodes is the boundary density.

    @param      state       @see cl PlasmaState
    @param      config      @see cl PlasmaConfig
    @param      m_perp      predicted perpendicular momentum,
                            computed with @see fn predict_perpendicular if None
    @return                 *f1* (@see cl PrimalField), *f2* (@see cl PrimalField),
                            :math:`\\kappa` (@see cl DualField)
    """
    dt = _require_dt(config)
    mesh, b = state.mesh, config.anisotropy
    ghost_fields = config.cell_fields(ghost=1)
    if fields is None:
        fields = _interior(ghost_fields)
    if padded is None:
        padded = fill_ghosts(state, config, fields=ghost_fields)
    if conv is None:
        conv = convective_divergence(state, config, padded=padded)
    if m_perp is None:
        m_perp = predict_perpendicular(state, config, padded=padded, conv=conv,
                                       fields=fields)
    pad = _pad_momentum(state, config, m_perp, ghost_fields)
    pbx, pby = ghost_fields['bx'], ghost_fields['by']
    # the ghost cells of m_perp are kept perpendicular
    par = pad['mx'] * pbx + pad['my'] * pby
    kappa = DualField(mesh, node_divergence(pad['mx'] - par * pbx,
                                            pad['my'] - par * pby, mesh), check=False)
    eps, temp = config.eps, config.temperature
    eps_p = eps / (temp * dt ** 2)
    n = state.n.values
    mx, my, _ = state.momentum()
    bx, by = fields['bx'], fields['by']
    m_par = mx * bx + my * by
    c_par = conv[0].values * bx + conv[1].values * by
    e_par = fields['ex'] * bx + fields['ey'] * by
    n_dual = density_nodes(n, config.n_boundary)
    grad_n = b_grad_app(n_dual, b, mesh).values
    f2 = (eps_p * m_par - eps / (temp * dt) * c_par + n * e_par / (temp * dt) -
          grad_n / dt)
    f1 = b_grad_app(kappa, b, mesh)
    return f1, PrimalField(mesh, f2, check=False), kappa


def parallel_momentum_solve(state, config, rhs, reports=None):
    """
    Solves the parallel momentum problem
    :math:`-(b \\cdot \\nabla)(\\nabla \\cdot (b \\phi)) + \\varepsilon' \\phi
    = f_2 + (b \\cdot \\nabla) \\kappa` with the boundary condition
    :math:`\\nabla \\cdot (b \\phi) = -\\kappa`,
    :math:`\\varepsilon' = \\varepsilon / (T \\Delta t^2)`.

    @param      state       @see cl PlasmaState
    @param      config      @see cl PlasmaConfig
    @param      rhs         result of @see fn build_parallel_rhs
    @param      reports     if not None, a dictionary receiving the
                            @see cl SolveReport of the three solves
    @return                 @see cl PrimalField, :math:`(nu)_\\parallel`
    """
    dt = _require_dt(config)
    _, f2, kappa = rhs
    eps_p = config.eps / (config.temperature * dt ** 2)
    prob = EllipticProblem(eps_p, config.anisotropy, state.mesh, rhs_f2=f2,
                           kappa=kappa, name="parallel")
    sol = solve(prob, options=config.get_options(), cache=config.cache)
    if reports is not None:
        reports.update(sol.reports)
    return sol.phi


def perpendicular_momentum_update(state, config, parallel, grad_n_sharp,
                                  conv=None, fields=None):
    """
    Updates the perpendicular momentum with the Lorentz solve using
    :math:`(\\nabla n^\\#)^{m+1}` and adds the parallel momentum,
    :math:`m^{m+1} = m_\\perp + (nu)_\\parallel b`.

    @param      state           @see cl PlasmaState
    @param      config          @see cl PlasmaConfig
    @param      parallel        @see cl PrimalField, parallel momentum
    @param      grad_n_sharp    two arrays,
                                :math:`(\\nabla n^m)_\\perp + (\\nabla n^{m+1})_\\parallel b`
    @return                     three @see cl PrimalField
    """
    dt = _require_dt(config)
    if fields is None:
        fields = _interior(config.cell_fields(ghost=1))
    if conv is None:
        conv = convective_divergence(state, config)
    rhs = _momentum_rhs(state, config, conv, grad_n_sharp[0], grad_n_sharp[1],
                        fields)
    px, py, pz = lorentz_solve(rhs, config.eps / dt, _bvector(fields),
                               perpendicular=True)
    par = getattr(parallel, 'values', parallel)
    mesh = state.mesh
    return (PrimalField(mesh, px + par * fields['bx'], check=False),
            PrimalField(mesh, py + par * fields['by'], check=False),
            PrimalField(mesh, pz, check=False))


def density_update(state, config, m_new, step=None, ghost_fields=None):
    """
    Computes :math:`n^{m+1} = n^m - \\Delta t \\nabla \\cdot (nu)^{m+1}`.

    @param      state           @see cl PlasmaState
    @param      config          @see cl PlasmaConfig
    @param      m_new           three fields or arrays, :math:`(nu)^{m+1}`
    @param      step            step index used in error messages
    @return                     @see cl PrimalField
    @raises     InstabilityError if the density is not positive
    """
    dt = _require_dt(config)
    n = _updated_density(state, config, m_new, ghost_fields)[0]
    if not numpy.isfinite(n).all() or (n <= 0).any():
        raise InstabilityError(
            "Non positive or non finite density at step {0}, min={1}".format(
                step, numpy.nanmin(n)),
            step=step, time=state.time + dt, reason="density")
    return PrimalField(state.mesh, n, check=False)


def _updated_density(state, config, m_new, ghost_fields):
    m_new = tuple(getattr(m, 'values', m) for m in m_new)
    pad = _pad_momentum(state, config, m_new, ghost_fields)
    div = momentum_divergence(pad['mx'], pad['my'], state.mesh)
    flux = boundary_flux(pad['mx'], pad['my'], state.mesh)
    return state.n.values - config.dt * div, flux


def check_state(state, step=None, reference=None, growth_limit=1e6):
    """
    Raises @see cl InstabilityError if a field is not finite, if the
    density is not positive or if a field grows beyond *growth_limit*
    times its reference maximum.

    @param      state           @see cl PlasmaState
    @param      step            step index
    @param      reference       dictionary returned by
                                @see me PlasmaState.max_norms, None to skip
                                the growth test
    @param      growth_limit    ratio
    """
    if not state.is_finite():
        raise InstabilityError("Non finite values at step {0}.".format(step),
                               step=step, time=state.time, reason="nan")
    if (state.n.values <= 0).any():
        raise InstabilityError(
            "Non positive density at step {0}.".format(step),
            step=step, time=state.time, reason="density")
    if reference is not None:
        norms = state.max_norms()
        scale = max(reference.values())
        for k, v in norms.items():
            if v > growth_limit * max(reference[k], scale):
                raise InstabilityError(
                    "Field {0} grew to {1} at step {2}.".format(k, v, step),
                    step=step, time=state.time, reason="growth")


def _report(state, new_state, config, step, reports, mass_flux, fields):
    mesh = state.mesh
    dt = config.dt
    mx, my, _ = new_state.momentum()
    par = mx * fields['bx'] + my * fields['by']
    div_par = div_b_app(par, config.anisotropy, mesh).values[1:-1, 1:-1]
    h = min(mesh.dx, mesh.dy)
    speed = _max_speed(state)
    return StepReport(
        step, new_state.time, dt, config.scheme, solve_reports=reports,
        div_parallel=float(numpy.abs(div_par).max()) if div_par.size else 0.,
        cfl_material=dt * speed / h,
        cfl_acoustic=dt * (speed + numpy.sqrt(config.temperature / config.eps)) / h,
        mass_change=new_state.mass() - state.mass(),
        boundary_flux=dt * mass_flux)


def step_ap(state, config, step=0):
    """
    One step of the asymptotic-preserving scheme.

    1. prediction of the perpendicular momentum,
    2. :math:`\\kappa` and the right-hand side of the parallel problem,
    3. elliptic solve of the parallel momentum,
    4. provisional density, :math:`(\\nabla n^\\#)^{m+1}` and final
       perpendicular momentum,
    5. density update.

    Ghost cells are refilled from the state each time they are needed.

    @param      state       @see cl PlasmaState
    @param      config      @see cl PlasmaConfig
    @param      step        step index
    @return                 @see cl PlasmaState, @see cl StepReport
    """
    dt = _require_dt(config)
    mesh = state.mesh
    ghost_fields = config.cell_fields(ghost=1)
    fields = _interior(ghost_fields)
    padded = fill_ghosts(state, config, fields=ghost_fields)
    conv = convective_divergence(state, config, padded=padded)

    m_perp = predict_perpendicular(state, config, padded=padded, conv=conv,
                                   fields=fields)
    rhs = build_parallel_rhs(state, config, m_perp=m_perp, padded=padded,
                             conv=conv, fields=fields)
    reports = {}
    parallel = parallel_momentum_solve(state, config, rhs, reports=reports)

    bx, by = fields['bx'], fields['by']
    par = parallel.values
    m_prov = (m_perp[0] + par * bx, m_perp[1] + par * by, m_perp[2])
    n_prov, _ = _updated_density(state, config, m_prov, ghost_fields)
    gx, gy = density_gradient(state.n.values, mesh, config.n_boundary)
    px, py = cell_gradient(density_nodes(n_prov, config.n_boundary), mesh)
    old_par = gx * bx + gy * by
    new_par = px * bx + py * by
    sharp = (gx + (new_par - old_par) * bx, gy + (new_par - old_par) * by)

    m_new = perpendicular_momentum_update(state, config, parallel, sharp,
                                          conv=conv, fields=fields)
    n_new = density_update(state, config, m_new, step=step,
                           ghost_fields=ghost_fields)
    _, flux = _updated_density(state, config, m_new, ghost_fields)
    new_state = PlasmaState(n_new, *m_new, time=state.time + dt)
    check_state(new_state, step=step)
    return new_state, _report(state, new_state, config, step, reports, flux, fields)


def step_classical(state, config, step=0):
    """
    One step of the classical scheme, the density is updated with
    the current momentum, the momentum with the explicit pressure
    gradient and the implicit Lorentz force.

    @param      state       @see cl PlasmaState
    @param      config      @see cl PlasmaConfig
    @param      step        step index
    @return                 @see cl PlasmaState, @see cl StepReport
    """
    dt = _require_dt(config)
    mesh = state.mesh
    ghost_fields = config.cell_fields(ghost=1)
    fields = _interior(ghost_fields)
    padded = fill_ghosts(state, config, fields=ghost_fields)
    conv = convective_divergence(state, config, padded=padded)

    flux = boundary_flux(padded['mx'], padded['my'], mesh)
    n = state.n.values - dt * momentum_divergence(padded['mx'], padded['my'], mesh)
    if not numpy.isfinite(n).all() or (n <= 0).any():
        raise InstabilityError(
            "Non positive or non finite density at step {0}, min={1}".format(
                step, numpy.nanmin(n)),
            step=step, time=state.time + dt, reason="density")

    gx, gy = density_gradient(state.n.values, mesh, config.n_boundary)
    rhs = _momentum_rhs(state, config, conv, gx, gy, fields)
    m = lorentz_solve(rhs, config.eps / dt, _bvector(fields))
    new_state = PlasmaState.from_arrays(mesh, n, *m, time=state.time + dt)
    check_state(new_state, step=step)
    return new_state, _report(state, new_state, config, step, {}, flux, fields)


def step(state, config, step_index=0):
    """
    Calls @see fn step_ap or @see fn step_classical
    depending on *config.scheme*.
    """
    if config.scheme == 'ap':
        return step_ap(state, config, step=step_index)
    if config.scheme == 'classical':
        return step_classical(state, config, step=step_index)
    raise ValueError("Unknown scheme '{0}'".format(config.scheme))
