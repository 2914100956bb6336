"""
@file
@brief Data of the degenerate anisotropic problem
:math:`-(b \\cdot \\nabla)(\\nabla \\cdot (b \\phi)) + \\varepsilon \\phi = f`
with Neumann boundary conditions and its decomposed solution.
"""
import numpy
from ..mesh import PrimalField, DualField
from ..discrete.operators import b_grad_app, b_grad_extended, div_b_app
from ..linsolve import assemble_second_order, solve_array, SolverOptions
from ..helpers.parameters import format_function_call


class EllipticProblem:
    """
    Degenerate elliptic problem. The right-hand side is either *f*
    (homogeneous Neumann condition) or :math:`b \\cdot \\nabla \\kappa + f_2`
    with the condition :math:`(b \\cdot \\nu) \\nabla \\cdot (b \\phi) =
    -(b \\cdot \\nu) \\kappa` on the boundary.
    """

    def __init__(self, eps, anisotropy, mesh, rhs_f=None, rhs_f2=None,
                 kappa=None, f0=None, f1=None, name="problem"):
        """
        @param      eps         :math:`\\varepsilon > 0`
        @param      anisotropy  @see cl AnisotropyField
        @param      mesh        @see cl Mesh
        @param      rhs_f       @see cl PrimalField, homogeneous case
        @param      rhs_f2      @see cl PrimalField, inhomogeneous case
        @param      kappa       @see cl DualField on every node,
                                inhomogeneous case
        @param      f0, f1      optional split of the source
                                (*rhs_f* or *rhs_f2*) :math:`f_0 + \\varepsilon f_1`
        @param      name        name of the problem
        """
        if not eps > 0:
            raise ValueError("eps must be positive not {0}".format(eps))
        if (rhs_f is None) == (rhs_f2 is None):
            raise ValueError("Exactly one of rhs_f, rhs_f2 must be specified.")
        if rhs_f is not None and kappa is not None:
            raise ValueError("kappa requires rhs_f2 (inhomogeneous case).")
        self.eps = float(eps)
        self.anisotropy = anisotropy
        self.mesh = mesh
        self.name = name
        self.inhomogeneous = rhs_f2 is not None
        source = rhs_f if rhs_f is not None else rhs_f2
        self.source = self._primal(source, 'source')
        if self.inhomogeneous:
            self.kappa = (DualField.zeros(mesh) if kappa is None
                          else self._dual(kappa, 'kappa'))
        else:
            self.kappa = None
        if (f0 is None) != (f1 is None):
            raise ValueError("f0 and f1 must be both specified or both None.")
        self.f0 = None if f0 is None else self._primal(f0, 'f0')
        self.f1 = None if f1 is None else self._primal(f1, 'f1')
        if self.f0 is not None:
            diff = numpy.abs(self.f0.values + self.eps * self.f1.values -
                             self.source.values).max()
            if diff > 1e-12 * max(self.source.norm_inf(), 1e-300):
                raise ValueError(
                    "f0 + eps f1 differs from the source by {0}.".format(diff))

    def _primal(self, f, name):
        if isinstance(f, PrimalField):
            if f.mesh != self.mesh:
                raise ValueError("{0} is defined on another mesh.".format(name))
            return f
        return PrimalField(self.mesh, f)

    def _dual(self, f, name):
        if isinstance(f, DualField):
            if f.mesh != self.mesh:
                raise ValueError("{0} is defined on another mesh.".format(name))
            return f
        return DualField(self.mesh, f)

    def __repr__(self):
        return format_function_call("EllipticProblem", dict(
            name=self.name, eps=self.eps, anisotropy=repr(self.anisotropy),
            nx=self.mesh.nx, ny=self.mesh.ny, inhomogeneous=self.inhomogeneous))

    @property
    def rhs_f(self):
        "Source of the homogeneous case."
        return None if self.inhomogeneous else self.source

    @property
    def rhs_f2(self):
        "Source :math:`f_2` of the inhomogeneous case."
        return self.source if self.inhomogeneous else None

    def effective_rhs(self):
        """
        Right-hand side of the discrete problem once the boundary
        condition is taken into account, :math:`f` or
        :math:`f_2 + (b \\cdot \\nabla)_{app} \\kappa_I` where
        :math:`\\kappa_I` is :math:`\\kappa` set to zero on the boundary.
        """
        if not self.inhomogeneous:
            return self.source
        kint = self.kappa.with_boundary(0.)
        return self.source + b_grad_app(kint, self.anisotropy, self.mesh)

    def compatibility_defect(self, options=None):
        """
        Returns the relative norm of the component of :math:`f_0` in the
        kernel of :math:`\\nabla \\cdot (b\\, \\cdot)_{app}`,
        :math:`\\|f_0 + (b \\cdot \\nabla)_{app} g_0\\|_\\infty / \\|f_0\\|_\\infty`
        where :math:`g_0` solves the g-problem with :math:`f_0`.
        It is small when :math:`f_0` is orthogonal to the kernel,
        None without split.

        @param      options     @see cl SolverOptions
        @return                 float or None
        """
        if self.f0 is None:
            return None
        scale = self.f0.norm_inf()
        if scale == 0:
            return 0.
        b, mesh = self.anisotropy, self.mesh
        options = options or SolverOptions()
        system = assemble_second_order(
            b, mesh, sign=-1, dirichlet=0., rhs=div_b_app(self.f0, b, mesh),
            bc_mode=options.bc_mode, shift=options.shift, name="g0")
        g0, _ = solve_array(system, options=options)
        kernel = b_grad_extended(g0, b, mesh, offset=self.f0)
        return float(numpy.abs(kernel).max() / scale)


class DecomposedSolution:
    """
    Solution :math:`\\phi = p + q` where *p* belongs to the kernel of
    :math:`\\nabla \\cdot (b\\, \\cdot)_{app}` and
    :math:`q = (b \\cdot \\nabla)_{app} h` is orthogonal to it.
    """

    def __init__(self, problem, p, q, g, u, h, reports):
        self.problem = problem
        self.p = p
        self.q = q
        self.phi = p + q
        self.g = g
        self.u = u
        self.h = h
        self.reports = reports

    def __repr__(self):
        return format_function_call("DecomposedSolution", dict(
            problem=self.problem.name, eps=self.problem.eps,
            solves=len(self.reports)))

    def orthogonality_defect(self):
        """
        Returns :math:`|\\langle p, q \\rangle| / (\\|p\\|_2 \\|q\\|_2)`.
        """
        den = numpy.sqrt(self.p.dot(self.p) * self.q.dot(self.q))
        if den == 0:
            return 0.
        return abs(self.p.dot(self.q)) / den

    def div_p_norm(self):
        """
        Returns :math:`\\|\\nabla \\cdot (b p)_{app}\\|_\\infty` on the
        unconstrained nodes.
        """
        prob = self.problem
        d = div_b_app(self.p, prob.anisotropy, prob.mesh).values
        return float(numpy.abs(d[1:-1, 1:-1]).max()) if d[1:-1, 1:-1].size else 0.

    def scaled_p_norm(self):
        """
        Returns :math:`\\varepsilon \\|p\\|_\\infty`, it stays close to
        :math:`\\|f_0\\|_\\infty` when the source is not compatible.
        """
        return self.problem.eps * self.p.norm_inf()

    def variational_residual(self, n_tests=20, random_state=0):
        """
        Checks the variational formulation of the problem on *h*:
        :math:`\\sum_D u \\, (b \\otimes b \\nabla \\theta) +
        \\varepsilon \\sum_R (b \\cdot \\nabla h)(b \\cdot \\nabla \\theta) =
        \\sum_R f \\, (b \\cdot \\nabla \\theta)` for random
        test fields :math:`\\theta` vanishing on the boundary.

        @param      n_tests         number of test fields
        @param      random_state    seed
        @return                     maximum relative defect
        """
        prob = self.problem
        mesh, b = prob.mesh, prob.anisotropy
        rnd = numpy.random.RandomState(random_state)
        free = ~mesh.boundary_mask()
        f = prob.effective_rhs().values
        gh = b_grad_app(self.h, b, mesh).values
        area = mesh.cell_area
        worst = 0.
        for _ in range(n_tests):
            theta = numpy.where(free, rnd.randn(*mesh.dual_shape), 0.)
            gt = b_grad_app(theta, b, mesh).values
            st = -div_b_app(gt, b, mesh).values
            t1 = (self.u.values * st)[free].sum() * area
            t2 = prob.eps * (gh * gt).sum() * area
            rhs = (f * gt).sum() * area
            scale = abs(t1) + abs(t2) + abs(rhs)
            if scale > 0:
                worst = max(worst, abs(t1 + t2 - rhs) / scale)
        return worst

    def diagnostics(self):
        """
        Returns a dictionary with every diagnostic of the solution.
        """
        res = dict(eps=self.problem.eps,
                   orthogonality=self.orthogonality_defect(),
                   div_p=self.div_p_norm(),
                   eps_p=self.scaled_p_norm(),
                   variational=self.variational_residual(n_tests=5))
        defect = self.problem.compatibility_defect()
        if defect is not None:
            res['compatibility'] = defect
        for name, rep in self.reports.items():
            res.update(rep.to_dict(prefix=name + "_"))
            del res[name + "_name"]
        return res
