# -*- coding: utf-8 -*-
"""
@brief      test log(time=2s)
"""
import unittest
import numpy
from pyquickhelper.pycode import ExtTestCase
from apaniso.helpers.parameters import (
    format_value, format_parameters, format_function_call)


class TestParameters(ExtTestCase):

    def test_format_value(self):
        self.assertEqual("3", format_value(3))
        self.assertEqual("'3'", format_value("3"))
        self.assertEqual("1e-09", format_value(1e-9))
        self.assertEqual("0.1", format_value(numpy.float64(0.1)))
        self.assertEqual("array(shape=(2, 3))", format_value(numpy.zeros((2, 3))))
        self.assertEqual("[1, 'a']", format_value([1, 'a']))
        self.assertEqual("(1, 2.5)", format_value((1, 2.5)))

    def test_format_parameters(self):
        self.assertEqual("a='x', b=1", format_parameters(dict(b=1, a='x')))

    def test_format_function_call(self):
        self.assertEqual("Mesh(nx=2)", format_function_call("Mesh", dict(nx=2)))
        long = format_function_call("F", {"p%d" % i: i for i in range(30)})
        self.assertIn("\n", long)
        self.assertTrue(long.startswith("F(p0=0, p1=1"))


if __name__ == "__main__":
    unittest.main()
