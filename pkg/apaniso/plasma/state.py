"""
@file
@brief State, parameters and step reports of the isothermal
Euler-Lorentz model.
"""
import numpy
from sklearn.base import BaseEstimator
from ..mesh import PrimalField, fields_to_dataframe
from ..bfield import test_electric_field
from ..linsolve import SolverOptions
from ..helpers.parameters import format_function_call


class InstabilityError(RuntimeError):
    """
    Raised when a time step produces a state which cannot be
    continued: non finite values, non positive density, or
    values growing beyond a limit.
    """

    def __init__(self, msg, step=None, time=None, reason=None):
        RuntimeError.__init__(self, msg)
        self.step = step
        self.time = time
        self.reason = reason


class PlasmaState:
    """
    Density and momentum :math:`(nu)_x, (nu)_y, (nu)_z`
    on the primal cells.
    """

    def __init__(self, n, mx, my, mz, time=0.):
        """
        @param      n           @see cl PrimalField, density
        @param      mx, my, mz  @see cl PrimalField, momentum components
        @param      time        time
        """
        for name, f in [('n', n), ('mx', mx), ('my', my), ('mz', mz)]:
            if not isinstance(f, PrimalField):
                raise TypeError("{0} must be a PrimalField not {1}".format(
                    name, type(f)))
            if f.mesh != n.mesh:
                raise ValueError("{0} is defined on another mesh.".format(name))
        self.n = n
        self.mx = mx
        self.my = my
        self.mz = mz
        self.time = float(time)

    @property
    def mesh(self):
        "Mesh of the state."
        return self.n.mesh

    @staticmethod
    def from_arrays(mesh, n, mx, my, mz, time=0., check=False):
        """
        Builds a state from arrays, *check* verifies every value is finite.
        """
        return PlasmaState(PrimalField(mesh, n, check=check),
                           PrimalField(mesh, mx, check=check),
                           PrimalField(mesh, my, check=check),
                           PrimalField(mesh, mz, check=check), time=time)

    def momentum(self):
        "Returns the three momentum arrays."
        return self.mx.values, self.my.values, self.mz.values

    def velocity(self):
        "Returns the three velocity arrays :math:`u = nu / n`."
        n = self.n.values
        return self.mx.values / n, self.my.values / n, self.mz.values / n

    def mass(self):
        "Total mass :math:`\\sum_R n |R|`."
        return float(self.n.values.sum() * self.mesh.cell_area)

    def max_norms(self):
        "Maximum absolute value of every field."
        return {k: float(numpy.abs(getattr(self, k).values).max())
                for k in ['n', 'mx', 'my', 'mz']}

    def is_finite(self):
        "Tells if every value is finite."
        return all(numpy.isfinite(getattr(self, k).values).all()
                   for k in ['n', 'mx', 'my', 'mz'])

    def distance(self, other):
        """
        Returns the maximum absolute difference per field
        with another state.
        """
        return {k: float(numpy.abs(getattr(self, k).values -
                                   getattr(other, k).values).max())
                for k in ['n', 'mx', 'my', 'mz']}

    def to_dataframe(self):
        "Returns a dataframe with columns *i, j, x, y, n, mx, my, mz*."
        return fields_to_dataframe(self.mesh, 'primal', n=self.n, mx=self.mx,
                                   my=self.my, mz=self.mz)

    def __repr__(self):
        return format_function_call("PlasmaState", dict(
            time=self.time, nx=self.mesh.nx, ny=self.mesh.ny))


class PlasmaConfig(BaseEstimator):
    """
    Parameters of the Euler-Lorentz model and of its time discretization.
    """

    def __init__(self, mesh=None, anisotropy=None, eps=1e-9, temperature=1.,
                 dt=None, efield=None, n_boundary=1., scheme='ap',
                 dt_max=1., growth_limit=1e6, options=None, cache='default'):
        """
        @param      mesh            @see cl Mesh
        @param      anisotropy      @see cl AnisotropyField, magnetic field
        @param      eps             :math:`\\varepsilon > 0`
        @param      temperature     *T > 0*
        @param      dt              time step, None to let the driver
                                    compute it
        @param      efield          @see cl ElectricField, None for
                                    :math:`E = (0, 0, B_x + B_y)`
        @param      n_boundary      density imposed on the boundary
        @param      scheme          ``'ap'`` or ``'classical'``
        @param      dt_max          time step returned by @see fn cfl_dt
                                    when no wave speed bounds it
        @param      growth_limit    a field growing beyond this ratio of its
                                    initial maximum stops the simulation
        @param      options         @see cl SolverOptions of the elliptic solves
        @param      cache           factorization cache, see @see fn solve
        """
        BaseEstimator.__init__(self)
        self.mesh = mesh
        self.anisotropy = anisotropy
        self.eps = eps
        self.temperature = temperature
        self.dt = dt
        self.efield = efield
        self.n_boundary = n_boundary
        self.scheme = scheme
        self.dt_max = dt_max
        self.growth_limit = growth_limit
        self.options = options
        self.cache = cache

    def validate(self):
        """
        Checks the parameters, raises an exception if one is invalid.
        """
        if self.mesh is None or self.anisotropy is None:
            raise ValueError("mesh and anisotropy must be specified.")
        for name in ['eps', 'temperature', 'n_boundary', 'dt_max']:
            v = getattr(self, name)
            if not v > 0:
                raise ValueError("{0} must be positive not {1}".format(name, v))
        if self.dt is not None and not self.dt > 0:
            raise ValueError("dt must be positive not {0}".format(self.dt))
        if self.scheme not in ('ap', 'classical'):
            raise ValueError("scheme must be 'ap' or 'classical' not '{0}'".format(
                self.scheme))
        return self

    def get_efield(self):
        "Returns the electric field, the default one if *efield* is None."
        if self.efield is None:
            return test_electric_field(self.anisotropy)
        return self.efield

    def get_options(self):
        "Returns the solver options."
        return self.options if self.options is not None else SolverOptions()

    def cell_fields(self, ghost=0):
        """
        Samples the magnetic and electric fields at the cell centers.

        @param      ghost       number of layers of ghost cells
        @return                 dictionary with keys *bx, by, bmag, ex, ey, ez*
        """
        x, y = self.mesh.primal_coordinates(ghost=ghost)
        bx, by = self.anisotropy.direction(x, y)
        bmag = numpy.broadcast_to(self.anisotropy.magnitude(x, y), x.shape)
        ex, ey, ez = self.get_efield()(x, y)
        return dict(bx=numpy.asarray(bx), by=numpy.asarray(by),
                    bmag=numpy.asarray(bmag), ex=numpy.asarray(ex),
                    ey=numpy.asarray(ey), ez=numpy.asarray(ez))


class StepReport:
    """
    Diagnostics of one time step.
    """

    def __init__(self, step, time, dt, scheme, solve_reports=None,
                 div_parallel=None, cfl_material=None, cfl_acoustic=None,
                 mass_change=None, boundary_flux=None):
        """
        @param      step            step index
        @param      time            time at the end of the step
        @param      dt              time step
        @param      scheme          ``'ap'`` or ``'classical'``
        @param      solve_reports   dictionary of @see cl SolveReport
        @param      div_parallel    :math:`\\max |\\nabla \\cdot (b (nu)_\\parallel)|`
                                    on interior nodes
        @param      cfl_material    :math:`\\Delta t \\max|u| / h`
        @param      cfl_acoustic    :math:`\\Delta t (\\max|u| + \\sqrt{T/\\varepsilon}) / h`
        @param      mass_change     :math:`\\sum (n^{m+1} - n^m) |R|`
        @param      boundary_flux   :math:`\\Delta t` times the outgoing
                                    momentum flux through the boundary
        """
        self.step = step
        self.time = time
        self.dt = dt
        self.scheme = scheme
        self.solve_reports = solve_reports or {}
        self.div_parallel = div_parallel
        self.cfl_material = cfl_material
        self.cfl_acoustic = cfl_acoustic
        self.mass_change = mass_change
        self.boundary_flux = boundary_flux

    def max_residual(self):
        "Maximum backward error of the elliptic solves, 0 without any."
        if not self.solve_reports:
            return 0.
        return max(r.residual for r in self.solve_reports.values())

    def to_dict(self):
        "Returns the report as a flat dictionary."
        res = dict(step=self.step, time=self.time, dt=self.dt,
                   scheme=self.scheme, residual=self.max_residual(),
                   div_parallel=self.div_parallel,
                   cfl_material=self.cfl_material,
                   cfl_acoustic=self.cfl_acoustic,
                   mass_change=self.mass_change,
                   boundary_flux=self.boundary_flux)
        for name, rep in self.solve_reports.items():
            res[name + "_residual"] = rep.residual
        return res

    def __repr__(self):
        return format_function_call("StepReport", dict(
            step=self.step, time=self.time, dt=self.dt, scheme=self.scheme))
