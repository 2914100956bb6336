# -*- coding: utf-8 -*-
"""
@brief      test log(time=1s)
"""
import math
import unittest
import numpy
from pyquickhelper.pycode import ExtTestCase
from apaniso.bfield import (
    oblique_field, radial_circular_field, make_field, test_electric_field,
    ElectricField, DomainError, ObliqueField)
from apaniso.harness import fit_slope


class TestFields(ExtTestCase):

    def test_oblique(self):
        b = oblique_field(math.pi / 3)
        x = numpy.array([[0., 0.5], [1., 0.2]])
        bx, by = b.direction(x, x)
        self.assertEqual(bx.shape, (2, 2))
        self.assertEqualArray(bx, numpy.full((2, 2), math.sqrt(3) / 2))
        self.assertEqualArray(by, numpy.full((2, 2), 0.5), decimal=15)
        self.assertEqualArray(b.magnitude(x, x), numpy.ones((2, 2)))
        self.assertEqual(b.key, ('oblique', math.pi / 3, 1.))
        self.assertIn("alpha=", repr(b))

    def test_oblique_limits(self):
        bx, by = oblique_field(0.).direction(0.5, 0.5)
        self.assertEqual((float(bx), float(by)), (0., 1.))
        bx, _ = oblique_field(math.pi / 2).direction(0.5, 0.5)
        self.assertEqualFloat(float(bx), 1.)
        self.assertRaise(lambda: oblique_field(-0.1), ValueError)
        self.assertRaise(lambda: oblique_field(2.), ValueError)
        self.assertRaise(lambda: ObliqueField(0.5, bmag=0.), ValueError)

    def test_radial(self):
        b = radial_circular_field(bmag=2.)
        x = numpy.array([1., 1.5, 2.])
        y = numpy.array([2., 1., 1.])
        bx, by = b.direction(x, y)
        self.assertEqualArray(bx ** 2 + by ** 2, numpy.ones(3))
        # tangent to the circles
        self.assertEqualArray(bx * x + by * y, numpy.zeros(3), decimal=15)
        fx, fy, fz = b.field(x, y)
        self.assertEqualArray(fx, 2 * bx)
        self.assertEqualArray(fy, 2 * by)
        self.assertEqualArray(fz, numpy.zeros(3))
        self.assertRaise(lambda: b.direction(numpy.array([0., 1.]),
                                             numpy.array([0., 1.])), DomainError)

    def test_make_field(self):
        self.assertIsInstance(make_field('oblique', alpha=0.3), ObliqueField)
        self.assertEqual(make_field('radial').key, ('radial', 1.))
        self.assertRaise(lambda: make_field('toroidal'), ValueError)

    def test_electric_field(self):
        b = oblique_field(math.pi / 3, bmag=3.)
        e = test_electric_field(b)
        x = numpy.zeros((2, 3))
        ex, ey, ez = e(x, x)
        self.assertEqual(ex.shape, (2, 3))
        self.assertEqualArray(ex, x)
        self.assertEqualArray(ey, x)
        bx, by, _ = b.field(x, x)
        self.assertEqualArray(ez, bx + by)
        # n E + u x B = 0 with n = 1 and u = (-1, 1, 0)
        self.assertEqualArray(ez - bx - by, x)
        self.assertIn("test", repr(e))

    def test_custom_electric_field(self):
        e = ElectricField(lambda x, y: (x, y, 1.), name="linear")
        ex, ey, ez = e(numpy.array([1., 2.]), numpy.array([3., 4.]))
        self.assertEqualArray(ex, numpy.array([1., 2.]))
        self.assertEqualArray(ey, numpy.array([3., 4.]))
        self.assertEqualArray(ez, numpy.ones(2))

    def test_unit_norm(self):
        rnd = numpy.random.RandomState(0)
        x = rnd.uniform(1, 2, 1000000)
        y = rnd.uniform(1, 2, 1000000)
        for b in [radial_circular_field(), oblique_field(0.7)]:
            bx, by = b.direction(x, y)
            self.assertLesser(numpy.abs(bx ** 2 + by ** 2 - 1).max(), 1e-14)

    def test_divergence_free(self):
        errors = []
        for n in [20, 40, 80]:
            h = 1. / n
            x, y = numpy.meshgrid(numpy.linspace(1 + h, 2 - h, n - 1),
                                  numpy.linspace(1 + h, 2 - h, n - 1), indexing="ij")
            for b in [radial_circular_field(), oblique_field(math.pi / 3)]:
                fx1, _, _ = b.field(x + h, y)
                fx0, _, _ = b.field(x - h, y)
                _, fy1, _ = b.field(x, y + h)
                _, fy0, _ = b.field(x, y - h)
                div = (fx1 - fx0 + fy1 - fy0) / (2 * h)
                if isinstance(b, ObliqueField):
                    self.assertEqual(numpy.abs(div).max(), 0.)
                else:
                    errors.append(numpy.abs(div).max())
        slope, _ = fit_slope([20, 40, 80], errors)
        self.assertLesser(abs(slope + 2), 0.2)


if __name__ == "__main__":
    unittest.main()
