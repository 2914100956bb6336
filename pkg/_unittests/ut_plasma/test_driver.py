# -*- coding: utf-8 -*-
"""
@brief      test log(time=3s)
"""
import math
import os
import unittest
import numpy
from pyquickhelper.pycode import ExtTestCase, get_temp_folder
from apaniso.mesh import build_mesh
from apaniso.bfield import oblique_field
from apaniso.plasma import PlasmaConfig, initial_state, run, time_steps


class TestDriver(ExtTestCase):

    def _config(self, n=6, eps=1e-6, **kwargs):
        mesh = build_mesh(0, 1, 0, 1, n, n)
        return PlasmaConfig(mesh, oblique_field(math.pi / 3), eps=eps, **kwargs)

    def test_time_steps(self):
        steps = time_steps(0.3, t_final=1.)
        self.assertEqual(len(steps), 4)
        self.assertEqualFloat(steps[-1], 0.1, precision=1e-12)
        self.assertEqualFloat(sum(steps), 1., precision=1e-12)
        self.assertEqual(time_steps(0.25, t_final=1.), [0.25] * 4)
        self.assertEqual(time_steps(0.1, n_steps=3), [0.1] * 3)
        self.assertEqual(time_steps(0.1, t_final=10., n_steps=2), [0.1] * 2)
        self.assertRaise(lambda: time_steps(0.1), ValueError)
        self.assertRaise(lambda: time_steps(0.1, t_final=0.), ValueError)

    def test_initial_state(self):
        config = self._config()
        state = initial_state(config)
        self.assertEqualArray(numpy.ones((6, 6)), state.n.values)
        self.assertEqualArray(numpy.full((6, 6), -1.), state.mx.values)
        self.assertEqualArray(numpy.full((6, 6), 1.), state.my.values)
        self.assertEqual(state.time, 0.)
        bump = initial_state(config, perturbation=0.1, width=0.2)
        self.assertGreater(bump.n.values.max(), 1.)
        self.assertLesser(bump.n.values.max(), 1.1)
        self.assertGreater(bump.n.values.min(), 1.)
        self.assertRaise(lambda: initial_state(config, m0=(1., 0.)), ValueError)

    def test_run(self):
        config = self._config(scheme='ap')
        calls = []
        res = run(config, n_steps=4, snapshots=2, cfl_scheme='ap',
                  monitor=lambda state, report: calls.append(report.step))
        self.assertEqual(calls, [1, 2, 3, 4])
        self.assertEqual(res.n_steps, 4)
        self.assertEqual(len(res.reports), 4)
        self.assertEqual(len(res.snapshots), 3)
        self.assertEqual(res.snapshots[0].time, 0.)
        self.assertIs(res.snapshots[-1], res.state)
        self.assertEqualFloat(res.state.time, 4 * res.dt, precision=1e-12)
        self.assertIsNone(config.dt)
        self.assertTrue(res.state.is_finite())
        self.assertIn("RunResult(", repr(res))

        df = res.to_dataframe()
        self.assertEqual(df.shape[0], 4)
        for col in ['step', 'time', 'dt', 'scheme', 'residual', 'mass_change']:
            self.assertIn(col, df.columns)
        self.assertEqual(list(df['step']), [1, 2, 3, 4])

    def test_run_t_final(self):
        config = self._config(scheme='classical', eps=1e-2)
        res = run(config, t_final=1e-3)
        self.assertEqualFloat(res.state.time, 1e-3, precision=1e-12)
        self.assertLesser(res.reports[-1].dt, res.dt * (1 + 1e-12))

    def test_run_dt_mult(self):
        config = self._config(scheme='classical', eps=1e-2)
        res1 = run(config, n_steps=1)
        res2 = run(config, n_steps=1, dt_mult=0.5)
        self.assertEqualFloat(res2.dt, 0.5 * res1.dt, precision=1e-12)
        fixed = run(self._config(scheme='classical', eps=1e-2, dt=1e-4), n_steps=1)
        self.assertEqual(fixed.dt, 1e-4)

    def test_run_verbose(self):
        config = self._config(scheme='ap')
        logs = []
        run(config, n_steps=2, cfl_scheme='ap', verbose=1,
            fLOG=lambda *args: logs.append(args))
        self.assertEqual(len(logs), 2)
        self.assertIn("[run] step 1", logs[0][0])

    def test_write(self):
        temp = get_temp_folder(__file__, "temp_driver_write")
        config = self._config(scheme='ap')
        res = run(config, n_steps=4, snapshots=2, cfl_scheme='ap')
        names = res.write(os.path.join(temp, "out"))
        self.assertEqual(len(names), 4)
        for name in names:
            self.assertExists(name)
        self.assertEqual(os.path.split(names[-1])[-1], "report.csv")


if __name__ == "__main__":
    unittest.main()
