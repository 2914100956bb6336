# -*- coding: utf-8 -*-
"""
@brief      test log(time=1s)
"""
import os
import math
import unittest
from pyquickhelper.pycode import ExtTestCase, get_temp_folder
from apaniso.helpers import (
    ConfigError, read_config, make_config, check_config, parse_value)


class TestConfig(ExtTestCase):

    def test_parse_value(self):
        self.assertEqual(parse_value("3"), 3)
        self.assertEqual(parse_value(" 1e-9 "), 1e-9)
        self.assertEqualFloat(parse_value("pi/3"), math.pi / 3)
        self.assertEqualFloat(parse_value("0.25*pi"), math.pi / 4)
        self.assertEqualFloat(parse_value("pi"), math.pi)
        self.assertEqual(parse_value("20, 40"), [20, 40])
        self.assertEqual(parse_value("true"), True)
        self.assertEqual(parse_value("No"), False)
        self.assertEqual(parse_value("none"), None)
        self.assertEqual(parse_value("oblique"), "oblique")

    def test_read_config_lines(self):
        lines = ["# comment", "", "field = radial",
                 "eps = 1e-3  # small", "grids = 20, 40"]
        conf = read_config(lines)
        self.assertEqual(conf, dict(field="radial", eps=1e-3, grids=[20, 40]))

    def test_read_config_errors(self):
        self.assertRaise(lambda: read_config(["eps = 1", "eps = 2"]), ConfigError)
        self.assertRaise(lambda: read_config(["eps 1"]), ConfigError)

    def test_read_config_file(self):
        temp = get_temp_folder(__file__, "temp_read_config")
        name = os.path.join(temp, "conf.txt")
        with open(name, "w", encoding="utf-8") as f:
            f.write("alpha = pi/3\nnx = 20\n")
        conf = read_config(name)
        self.assertEqual(conf['nx'], 20)
        self.assertEqualFloat(conf['alpha'], math.pi / 3)

    def test_make_config(self):
        conf = make_config('convergence', dict(eps=1e-3))
        self.assertEqual(conf['grids'], [20, 40, 80, 160])
        self.assertEqual(conf['eps'], 1e-3)
        self.assertEqual((conf['x0'], conf['x1']), (0., 1.))
        conf = make_config('convergence', dict(grids=20))
        self.assertEqual(conf['grids'], [20])

    def test_make_config_radial(self):
        conf = make_config('euler-lorentz', {}, field='radial', nx=None)
        self.assertEqual((conf['x0'], conf['x1'], conf['y0'], conf['y1']),
                         (1., 2., 1., 2.))
        self.assertEqual(conf['dt_mult'], 1.)
        self.assertEqual(conf['nx'], 40)
        self.assertEqual(conf['m0'], [-1., 1., 0.])

    def test_make_config_errors(self):
        self.assertRaise(lambda: make_config('p-study', dict(unknown=1)), ConfigError)
        self.assertRaise(lambda: make_config('p-study', {}, eps=1.), ConfigError)
        self.assertRaise(lambda: make_config('unknown'), ConfigError)
        self.assertRaise(lambda: make_config('convergence', dict(field='foo')),
                         ConfigError)

    def test_check_config(self):
        conf = make_config('euler-lorentz', {})
        self.assertEqual(conf['refine'], 6)
        self.assertEqual(make_config('p-study')['refine'], 0)
        for values in [dict(nx=0), dict(nx=2.5), dict(eps=-1.), dict(scheme='rk4'),
                       dict(method='lu'), dict(tol="small"), dict(refine=-1),
                       dict(x0=2., x1=1.), dict(dt_mult=True)]:
            with self.subTest(values=values):
                self.assertRaise(lambda v=values: make_config('euler-lorentz', v),
                                 ConfigError)
        self.assertRaise(lambda: make_config('el-compare', dict(schemes=['ap', 'x'])),
                         ConfigError)
        self.assertRaise(lambda: make_config('convergence', dict(grids=[20, -40])),
                         ConfigError)
        conf = make_config('euler-lorentz', dict(n_steps=None, perturbation=None))
        check_config(conf)


if __name__ == "__main__":
    unittest.main()
