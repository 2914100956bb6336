# -*- coding: utf-8 -*-
"""
@brief      test log(time=2s)
"""
import math
import unittest
import numpy
from joblib import Parallel, delayed
from pyquickhelper.pycode import ExtTestCase
from apaniso.mesh import build_mesh, PrimalField, DualField
from apaniso.bfield import oblique_field, radial_circular_field
from apaniso.discrete import (
    b_grad_app, b_grad_extended, div_b_app, second_order_app, b_grad_matrix,
    div_b_matrix, operator_cache,
    second_order_matrix, gradient_matrices, operator_stencils,
    node_average, node_divergence, cell_gradient)
from apaniso.harness import fit_slope


class TestOperators(ExtTestCase):

    def test_adjoint(self):
        rnd = numpy.random.RandomState(0)
        for n in [10, 20, 40]:
            for b, box in [(oblique_field(math.pi / 3), (0, 1, 0, 1)),
                           (radial_circular_field(), (1, 2, 1, 2))]:
                mesh = build_mesh(*box, n, n)
                for _ in range(5):
                    psi = DualField(mesh, rnd.randn(mesh.n_dual))
                    phi = PrimalField(mesh, rnd.randn(mesh.n_primal))
                    left = (b_grad_app(psi, b, mesh).values * phi.values).sum()
                    right = -(psi.values * div_b_app(phi, b, mesh).values).sum()
                    scale = (numpy.abs(psi.values).max() * numpy.abs(phi.values).max() *
                             mesh.n_primal / mesh.dx)
                    self.assertLesser(abs(left - right) / scale, 1e-12)

    def test_matrices(self):
        mesh = build_mesh(0, 1, 0, 1, 5, 4)
        b = oblique_field(0.4)
        g = b_grad_matrix(b, mesh)
        d = div_b_matrix(b, mesh)
        s = second_order_matrix(b, mesh)
        self.assertEqual(g.shape, (20, 30))
        self.assertEqual(d.shape, (30, 20))
        self.assertEqualArray((d + g.T).toarray(), numpy.zeros((30, 20)))
        dense = s.toarray()
        self.assertEqualArray(dense, dense.T, decimal=12)
        self.assertEqualArray(dense, (d @ g).toarray(), decimal=12)
        eig = numpy.linalg.eigvalsh(dense)
        self.assertLesser(eig.max(), 1e-9)
        gx, gy = gradient_matrices(mesh)
        self.assertEqual(gx.shape, (20, 30))
        self.assertEqual(gy.shape, (20, 30))

    def test_linear_exact(self):
        mesh = build_mesh(0, 1, 0, 1, 6, 7)
        alpha = math.pi / 5
        b = oblique_field(alpha)
        psi = DualField.from_function(mesh, lambda x, y: 2 * x + 3 * y)
        expected = 2 * math.sin(alpha) + 3 * math.cos(alpha)
        got = b_grad_app(psi, b, mesh)
        self.assertIsInstance(got, PrimalField)
        self.assertEqualArray(got.values, numpy.full(mesh.primal_shape, expected),
                              decimal=12)

    def test_kernel(self):
        mesh = build_mesh(1, 2, 1, 2, 6, 6)
        b = radial_circular_field()
        ones = DualField(mesh, numpy.ones(mesh.n_dual))
        self.assertLesser(b_grad_app(ones, b, mesh).norm_inf(), 1e-12)
        i, j = numpy.meshgrid(numpy.arange(7), numpy.arange(7), indexing='ij')
        checker = DualField(mesh, (-1.) ** (i + j))
        self.assertLesser(b_grad_app(checker, b, mesh).norm_inf(), 1e-12)

    def test_second_order(self):
        mesh = build_mesh(0, 1, 0, 1, 8, 8)
        b = oblique_field(math.pi / 3)
        psi = DualField.from_function(mesh, lambda x, y: numpy.sin(x) * y)
        got = second_order_app(psi, b, mesh)
        expected = second_order_matrix(b, mesh) @ psi.ravel()
        self.assertIsInstance(got, DualField)
        self.assertEqualArray(got.ravel(), expected, decimal=10)

    def test_errors(self):
        mesh = build_mesh(0, 1, 0, 1, 3, 3)
        other = build_mesh(0, 1, 0, 1, 4, 4)
        b = oblique_field(0.5)
        self.assertRaise(lambda: b_grad_app(PrimalField.zeros(mesh), b, mesh), TypeError)
        self.assertRaise(lambda: div_b_app(PrimalField.zeros(other), b, mesh), ValueError)
        self.assertRaise(lambda: b_grad_app(numpy.zeros(3), b, mesh), ValueError)
        got = b_grad_app(numpy.zeros(16), b, mesh)
        self.assertEqual(got.values.shape, (3, 3))

    def test_stencils(self):
        mesh = build_mesh(0, 1, 0, 1, 2, 2)
        st = operator_stencils(oblique_field(math.pi / 2), mesh)
        self.assertEqual(set(st), {'b_grad', 'div_b'})
        self.assertEqual(st['b_grad'].width(), 4)
        self.assertEqual(st['div_b'].width(), 4)
        row = st['b_grad'][0]
        self.assertEqual([c for c, _ in row], [0, 1, 3, 4])
        self.assertEqualArray(numpy.array([v for _, v in row]),
                              numpy.array([-1., -1., 1., 1.]), decimal=12)
        self.assertEqual(len(st['div_b'][0]), 1)
        df = st['b_grad'].to_dataframe()
        self.assertEqual(list(df.columns), ['row', 'col', 'coeff'])
        diff = st['b_grad'].to_matrix() - b_grad_matrix(oblique_field(math.pi / 2), mesh)
        self.assertLesser(abs(diff).max(), 1e-15)

    def test_node_helpers(self):
        mesh = build_mesh(0, 1, 0, 1, 4, 5)
        x, y = mesh.primal_coordinates(ghost=1)
        div = node_divergence(x, 2 * y, mesh)
        self.assertEqual(div.shape, mesh.dual_shape)
        self.assertEqualArray(div, numpy.full(mesh.dual_shape, 3.), decimal=12)
        avg = node_average(x + y)
        xd, yd = mesh.dual_coordinates()
        self.assertEqualArray(avg, xd + yd, decimal=12)
        avg = node_average(x + y, n_boundary=7.)
        self.assertEqual(avg[0, 2], 7.)
        self.assertEqualFloat(avg[2, 2], xd[2, 2] + yd[2, 2])
        psi = xd * 2 - yd
        gx, gy = cell_gradient(psi, mesh)
        self.assertEqualArray(gx, numpy.full(mesh.primal_shape, 2.), decimal=12)
        self.assertEqualArray(gy, numpy.full(mesh.primal_shape, -1.), decimal=12)
        mx, my = gradient_matrices(mesh)
        self.assertEqualArray((mx @ psi.ravel()).reshape(mesh.primal_shape), gx,
                              decimal=12)
        self.assertEqualArray((my @ psi.ravel()).reshape(mesh.primal_shape), gy,
                              decimal=12)

    def test_consistency_order(self):
        alpha = math.pi / 3
        b = oblique_field(alpha)
        sa, ca = math.sin(alpha), math.cos(alpha)
        errors = []
        for n in [20, 40, 80, 160]:
            mesh = build_mesh(0, 1, 0, 1, n, n)
            psi = DualField.from_function(mesh, lambda x, y: numpy.sin(x) * y)
            got = second_order_app(psi, b, mesh).values[1:-1, 1:-1]
            x, y = mesh.dual_coordinates()
            exact = -sa ** 2 * y * numpy.sin(x) + 2 * sa * ca * numpy.cos(x)
            errors.append(numpy.abs(got - exact[1:-1, 1:-1]).max())
        slope, _ = fit_slope([20, 40, 80, 160], errors)
        self.assertLesser(abs(slope + 2), 0.2)

    def test_aligned_examples(self):
        b = oblique_field(0.)
        mesh = build_mesh(0, 1, 0, 1, 10, 10)
        phi = PrimalField.from_function(mesh, lambda x, y: y)
        got = div_b_app(phi, b, mesh).values[1:-1, 1:-1]
        self.assertEqualArray(got, numpy.ones((9, 9)), decimal=10)
        psi = DualField.from_function(mesh, lambda x, y: y ** 2)
        got = second_order_app(psi, b, mesh).values[1:-1, 1:-1]
        self.assertEqualArray(got, numpy.full((9, 9), 2.), decimal=8)

    def test_radial_tangency(self):
        # the stencil differentiates quadratics exactly and b is orthogonal
        # to the radius at the cell centers
        b = radial_circular_field()
        for n in [10, 20, 40]:
            mesh = build_mesh(1, 2, 1, 2, n, n)
            psi = DualField.from_function(mesh, lambda x, y: x ** 2 + y ** 2)
            self.assertLesser(b_grad_app(psi, b, mesh).norm_inf(), 1e-11)
            got = second_order_app(psi, b, mesh).values[1:-1, 1:-1]
            self.assertLesser(numpy.abs(got).max(), 1e-8)

    def test_operator_cache(self):
        cache = operator_cache()
        mesh = build_mesh(0, 1, 0, 1, 7, 5)
        b = oblique_field(0.3)
        m1 = b_grad_matrix(b, mesh)
        key = ('grad', mesh.key, b.key)
        count = cache.count(key)
        m2 = b_grad_matrix(b, mesh)
        self.assertEqual(cache.count(key), count + 1)
        m2.data[:] = 0
        self.assertEqualArray(b_grad_matrix(b, mesh).toarray(), m1.toarray())

    def test_operator_cache_threads(self):
        mesh = build_mesh(0, 1, 0, 1, 9, 11)
        b = oblique_field(0.45)
        res = Parallel(n_jobs=4, backend='threading')(
            delayed(second_order_matrix)(b, mesh) for _ in range(16))
        expected = res[0].toarray()
        for m in res[1:]:
            self.assertEqualArray(m.toarray(), expected)
        self.assertIsNotNone(operator_cache().get(('second', mesh.key, b.key)))

    def test_b_grad_extended(self):
        mesh = build_mesh(0, 1, 0, 1, 6, 5)
        b = oblique_field(math.pi / 3)
        psi = DualField.from_function(mesh, lambda x, y: numpy.sin(x + 2 * y))
        f = PrimalField.from_function(mesh, lambda x, y: x * y)
        got = b_grad_extended(psi, b, mesh, offset=f)
        self.assertEqual(got.dtype, numpy.longdouble)
        expected = (b_grad_app(psi, b, mesh) + f).values.ravel()
        self.assertEqualArray(got.astype(numpy.float64), expected, decimal=12)
        ld = psi.values.ravel().astype(numpy.longdouble)
        self.assertEqualArray(b_grad_extended(ld, b, mesh).astype(numpy.float64),
                              b_grad_app(psi, b, mesh).values.ravel(), decimal=12)
        self.assertRaise(lambda: b_grad_extended(numpy.zeros(5), b, mesh), ValueError)


if __name__ == "__main__":
    unittest.main()
