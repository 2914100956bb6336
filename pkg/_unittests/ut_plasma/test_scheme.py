# -*- coding: utf-8 -*-
"""
@brief      test log(time=10s)
"""
import math
import unittest
import numpy
from pyquickhelper.pycode import ExtTestCase
from apaniso.mesh import build_mesh
from apaniso.bfield import oblique_field, radial_circular_field
from apaniso.linsolve import FactorizationCache
from apaniso.plasma import (
    PlasmaConfig, PlasmaState, InstabilityError, initial_state, cfl_dt,
    step, step_ap, step_classical, check_state, build_parallel_rhs,
    predict_perpendicular, density_gradient, drift_momentum, run)


class TestScheme(ExtTestCase):

    def _config(self, n=8, eps=1e-9, scheme='ap', field='oblique', **kwargs):
        if field == 'oblique':
            mesh = build_mesh(0, 1, 0, 1, n, n)
            b = oblique_field(math.pi / 3)
        else:
            mesh = build_mesh(1, 2, 1, 2, n, n)
            b = radial_circular_field()
        return PlasmaConfig(mesh, b, eps=eps, scheme=scheme,
                            cache=FactorizationCache("scheme"), **kwargs)

    def test_cfl(self):
        config = self._config(n=10, eps=1e-2)
        state = initial_state(config)
        h = 0.1
        self.assertEqualFloat(cfl_dt(state, config), 0.5 * h / math.sqrt(2))
        self.assertEqualFloat(cfl_dt(state, config, scheme='classical', safety=1.),
                              h / (math.sqrt(2) + 10.))
        still = initial_state(config, m0=(0., 0., 0.))
        self.assertEqual(cfl_dt(still, config), config.dt_max)
        self.assertRaise(lambda: cfl_dt(state, config, safety=0.), ValueError)
        self.assertRaise(lambda: cfl_dt(state, config, safety=1.5), ValueError)
        self.assertRaise(lambda: cfl_dt(state, config, scheme='rk4'), ValueError)

    def test_dt_required(self):
        config = self._config()
        state = initial_state(config)
        self.assertRaise(lambda: step_ap(state, config), ValueError)
        self.assertRaise(lambda: step_classical(state, config), ValueError)
        config.set_params(dt=0.01, scheme='other')
        self.assertRaise(lambda: step(state, config), ValueError)

    def test_stationary(self):
        for scheme in ['ap', 'classical']:
            config = self._config(scheme=scheme)
            state = initial_state(config)
            config.set_params(dt=cfl_dt(state, config))
            current = state
            for i in range(100):
                current, report = step(current, config, step_index=i + 1)
            diff = current.distance(state)
            self.assertLesser(diff['n'], 1e-9)
            self.assertLesser(max(diff['mx'], diff['my'], diff['mz']), 1e-8)
            self.assertEqual(report.step, 100)
            self.assertEqualFloat(current.time, 100 * config.dt)

    def test_stationary_parallel_rhs(self):
        config = self._config()
        state = initial_state(config)
        config.set_params(dt=0.01)
        f1, f2, kappa = build_parallel_rhs(state, config)
        self.assertLesser(kappa.norm_inf(), 1e-12)
        self.assertLesser(f1.norm_inf(), 1e-10)
        eps_p = config.eps / (config.temperature * config.dt ** 2)
        m_par = -math.sin(math.pi / 3) + math.cos(math.pi / 3)
        self.assertEqualArray(f2.values, numpy.full((8, 8), eps_p * m_par), decimal=12)
        perp = predict_perpendicular(state, config)
        bx, by = math.sin(math.pi / 3), math.cos(math.pi / 3)
        self.assertEqualArray(perp[0], numpy.full((8, 8), -1 - m_par * bx), decimal=10)
        self.assertEqualArray(perp[1], numpy.full((8, 8), 1 - m_par * by), decimal=10)

    def test_mass_bookkeeping(self):
        for scheme in ['ap', 'classical']:
            config = self._config(n=10, eps=1e-2, scheme=scheme)
            state = initial_state(config, perturbation=0.1, width=0.2)
            config.set_params(dt=cfl_dt(state, config, scheme='classical'))
            new_state, report = step(state, config, step_index=1)
            self.assertGreater(abs(report.boundary_flux), 0.)
            defect = abs(report.mass_change + report.boundary_flux)
            self.assertLesser(defect, 1e-12 * state.mass())
            self.assertEqualFloat(report.mass_change, new_state.mass() - state.mass())

    def test_report(self):
        config = self._config()
        state = initial_state(config)
        config.set_params(dt=cfl_dt(state, config))
        _, report = step_ap(state, config, step=1)
        self.assertEqual(set(report.solve_reports), {'g', 'u', 'h'})
        self.assertLesser(report.max_residual(), 1e-12)
        self.assertLesser(report.div_parallel, 1e-6)
        self.assertEqualFloat(report.cfl_material, 0.5)
        self.assertGreater(report.cfl_acoustic, 1e3)
        _, report = step_classical(state, config, step=1)
        self.assertEqual(report.solve_reports, {})
        self.assertEqual(report.to_dict()['scheme'], 'classical')

    def test_check_state(self):
        mesh = build_mesh(0, 1, 0, 1, 2, 2)
        ones = numpy.ones(4)
        good = PlasmaState.from_arrays(mesh, ones, ones, ones, ones)
        check_state(good, step=1, reference=good.max_norms())
        bad = PlasmaState.from_arrays(mesh, ones, [1, numpy.inf, 1, 1], ones, ones)
        try:
            check_state(bad, step=3)
            raise AssertionError("InstabilityError expected")
        except InstabilityError as e:
            self.assertEqual((e.step, e.reason), (3, "nan"))
        neg = PlasmaState.from_arrays(mesh, [1, 1, 0, 1], ones, ones, ones)
        self.assertRaise(lambda: check_state(neg), InstabilityError)
        big = PlasmaState.from_arrays(mesh, ones, ones * 1e7, ones, ones)
        self.assertRaise(lambda: check_state(big, reference=good.max_norms()),
                         InstabilityError)
        check_state(big)

    def test_drift_limit(self):
        # one step with a large time step, the perpendicular momentum
        # follows the drift of the current density
        config = self._config(n=16, eps=1e-9)
        state = initial_state(config, perturbation=0.1, width=0.2)
        config.set_params(dt=1e-2)
        new_state, _ = step_ap(state, config, step=1)
        fields = config.cell_fields()
        gx, gy = density_gradient(state.n.values, state.mesh, config.n_boundary)
        drift = drift_momentum(state.n.values, gx, gy, fields, config.temperature)
        bx, by = fields['bx'], fields['by']
        mx, my, mz = new_state.momentum()
        par = mx * bx + my * by
        perp = (mx - par * bx, my - par * by, mz)
        scale = max(numpy.abs(d).max() for d in drift)
        err = max(numpy.abs(p - d).max() for p, d in zip(perp, drift))
        self.assertLesser(err / scale, 1e-6)

    def test_resolved_agreement(self):
        # both schemes agree at first order in time when eps = 1
        def difference(dt, n_steps):
            states = {}
            for scheme in ['ap', 'classical']:
                config = self._config(n=20, eps=1., scheme=scheme, dt=dt)
                state = initial_state(config, perturbation=0.1, width=0.2)
                states[scheme] = run(config, state=state, n_steps=n_steps).state
            return states['ap'].distance(states['classical'])['n']

        d1 = difference(0.01, 10)
        d2 = difference(0.005, 20)
        self.assertGreater(d1, 0.)
        self.assertLesser(d2, 0.75 * d1)

    def test_perturbation_linearity(self):
        config = self._config(n=20, eps=1e-9, field='radial')
        ref = run(config, n_steps=10, cfl_scheme='ap')
        state = initial_state(config, perturbation=config.eps, width=0.1)
        config.set_params(dt=ref.dt)
        res = run(config, state=state, n_steps=10)
        diff = res.state.distance(ref.state)
        self.assertLesser(diff['n'], 1e-8)
        self.assertLesser(max(diff['mx'], diff['my'], diff['mz']), 1e-4)


if __name__ == "__main__":
    unittest.main()
