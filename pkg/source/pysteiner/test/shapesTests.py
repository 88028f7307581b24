"""
Unit tests for the shapes module

Copyright 2016, University Corporation for Atmospheric Research
See the LICENSE.rst file for details
"""

import unittest
from math import sqrt

from pysteiner import shapes
from pysteiner.geometry import (inradius, absolute_rank, polytope_volume,
                                facet_polytope)
from pysteiner.steiner import inner_volume_function
from pysteiner.specification import get_specifier
from pysteiner.errors import InvalidShapeError, error_kind
from pysteiner.test import mkTestData


class ConstructionTests(unittest.TestCase):

    def test_rectangle_fail(self):
        self.assertRaises(ValueError, shapes.make_rectangle, [1.0, -1.0])
        self.assertRaises(ValueError, shapes.make_rectangle, [0.0])

    def test_rectangle_closed_form(self):
        V = shapes.rectangle_closed_form([1, 2, 3])
        self.assertAlmostEqual(V(0.5), 48.0 - 8.0 * 0.5 * 1.5 * 2.5, 12,
                               'Closed form of R_{1,2,3} is wrong at 0.5')
        self.assertAlmostEqual(V(4.0), 48.0, 12, 'Closed form does not stabilize at 48')

    def test_regular_polygon(self):
        hexagon = shapes.make_regular_polygon(6, 1.0)
        self.assertEqual(len(hexagon), 6, 'Hexagon does not have 6 sides')
        self.assertAlmostEqual(inradius(hexagon).g, 1.0, 9, 'Hexagon inradius is not 1')
        self.assertRaises(ValueError, shapes.make_regular_polygon, 2)

    def test_regular_simplex(self):
        simplex = shapes.make_regular_simplex(3, 0.5)
        self.assertEqual(len(simplex), 4, 'Regular simplex does not have 4 facets')
        self.assertAlmostEqual(inradius(simplex).g, 0.5, 9,
                               'Regular simplex inradius is not 0.5')

    def test_cut_dodecahedron_areas(self):
        D = shapes.make_cut_dodecahedron()
        areas = sorted(polytope_volume(facet_polytope(D, j)) for j in range(len(D)))
        small = 0.5 * sqrt(15.0 - 5.0 * shapes.GOLDEN_RATIO)
        for area in areas[:10]:
            self.assertAlmostEqual(area, small, 9, 'Small facet area is wrong')
        for area in areas[10:]:
            self.assertAlmostEqual(area, 2.0 * small, 9, 'Large facet area is wrong')

    def test_multiphase_polygon(self):
        pentagon = shapes.make_multiphase_polygon()
        self.assertEqual(len(pentagon), 5, 'Pentagon does not have 5 sides')
        self.assertAlmostEqual(polytope_volume(pentagon), 5.815, 9,
                               'Pentagon area is not 5.815')
        self.assertAlmostEqual(inradius(pentagon).g, 1.0, 9, 'Pentagon inradius is not 1')


class RoofTests(unittest.TestCase):

    def test_square_roof(self):
        roof = shapes.make_roof(shapes.make_square())
        self.assertEqual(roof.dim, 3, 'Roof is not one dimension up')
        self.assertEqual(len(roof), 5, 'Square roof does not have 5 facets')
        self.assertAlmostEqual(inradius(roof).g, sqrt(2.0) - 1.0, 9,
                               'Square roof inradius is not sqrt(2) - 1')
        self.assertAlmostEqual(polytope_volume(roof), 4.0 / 3.0, 9,
                               'Square roof volume is not 4/3')

    def test_roof_inradius(self):
        base = shapes.make_rectangle([1, 2])
        roof = shapes.make_roof(base)
        self.assertAlmostEqual(inradius(roof).g, 1.0 / shapes.ROOF_FACTOR, 9,
                               'Roof inradius is not g / (1 + sqrt(2))')

    def test_roof_rank(self):
        roof = shapes.make_roof(shapes.make_square())
        self.assertEqual(absolute_rank(roof.normals), 2, 'Square roof rank is not 2')

    def test_iterated_roof_fail(self):
        self.assertRaises(ValueError, shapes.make_iterated_roof, shapes.make_square(), -1)

    def test_roof_derivative_identity(self):
        for base in (shapes.make_segment(), shapes.make_square(),
                     shapes.make_rectangle([1, 2])):
            residual = shapes.roof_derivative_residual(base)
            scale = max(1.0, polytope_volume(base))
            self.assertTrue(residual <= 1e-7 * scale,
                            'Roof derivative residual {0} for {1}'.format(residual, base))
            g = inradius(base).g
            self.assertAlmostEqual(inradius(shapes.make_roof(base)).g, g / shapes.ROOF_FACTOR,
                                   8, 'Roof inradius is not g / (1 + sqrt(2))')


class RankClassTests(unittest.TestCase):

    def test_instances(self):
        for k, s, d in ((1, 1, 2), (1, 2, 3), (2, 2, 3), (2, 3, 4)):
            poly = shapes.make_rank_class_instance(k, s, d)
            self.assertEqual(poly.dim, d, 'Instance {0} has the wrong dimension'.format((k, s, d)))
            self.assertEqual(absolute_rank(poly.normals), k,
                             'Instance {0} has the wrong absolute rank'.format((k, s, d)))
            inner = inner_volume_function(poly)
            self.assertEqual(inner.measured_class, s - 1,
                             'Instance {0} has the wrong class'.format((k, s, d)))
            self.assertTrue(inner.measured_class >= inner.class_bound,
                            'Instance {0} is below its class bound'.format((k, s, d)))

    def test_class_jump(self):
        smooth_tol = get_specifier().smooth_tol
        for k, s, d in ((1, 1, 2), (1, 2, 3), (2, 2, 3), (2, 3, 4)):
            V = inner_volume_function(shapes.make_rank_class_instance(k, s, d)).V.normalize()
            segs = V.segments()
            scale = max(1.0, V.value_scale() / V.length_scale() ** s)
            jump = max(abs(float(left.deriv(s)(b)) - float(right.deriv(s)(b)))
                       for b, left, right in zip(V.interior_breakpoints(), segs[:-1], segs[1:]))
            self.assertTrue(jump >= 10 * smooth_tol * scale,
                            'Instance {0}: derivative {1} jumps by only {2}'.format(
                                (k, s, d), s, jump))

    def test_instance_fail(self):
        self.assertRaises(ValueError, shapes.make_rank_class_instance, 2, 1, 3)
        self.assertRaises(ValueError, shapes.make_rank_class_instance, 1, 1, 2, 2.0, 1.0)


class DiphaseTests(unittest.TestCase):

    def test_ball_coefficients(self):
        self.assertEqual(shapes.ball_coefficients(3, 8.0, 1.0), [8.0, -24.0, 24.0],
                         'Ball coefficients of the cube are wrong')

    def test_cube(self):
        report = shapes.diphase_inscribed_check(shapes.make_cube())
        self.assertTrue(report.inscribed, 'Cube has no inscribed ball')
        self.assertTrue(report.diphase_and_smooth, 'Cube V is not diphase of class 2')
        self.assertTrue(report.holds, 'Inscribed-ball check does not hold for the cube')
        self.assertTrue(report.kappa_residual <= 1e-8,
                        'Cube kappas differ from the ball by {0}'.format(report.kappa_residual))
        for got, want in zip(report.engine_kappas, report.kappas):
            self.assertAlmostEqual(got, want, 9, 'Engine kappas differ from the ball')

    def test_regular_simplex(self):
        report = shapes.diphase_inscribed_check(shapes.make_regular_simplex(3))
        self.assertTrue(report.inscribed, 'Regular simplex has no inscribed ball')
        self.assertTrue(report.diphase_and_smooth, 'Regular simplex V is not diphase of class 2')
        self.assertTrue(report.holds, 'Inscribed-ball check does not hold for the simplex')
        self.assertTrue('kappa_residual' in report.to_dict(), 'Kappa residual not reported')

    def test_regular_polygon(self):
        report = shapes.diphase_inscribed_check(shapes.make_regular_polygon(5))
        self.assertTrue(report.inscribed, 'Pentagon has no inscribed circle')
        self.assertTrue(report.diphase_and_smooth, 'Pentagon V is not diphase of class 1')
        self.assertTrue(report.holds, 'Inscribed-ball check does not hold for the pentagon')

    def test_rectangle(self):
        report = shapes.diphase_inscribed_check(shapes.make_rectangle([1, 2]))
        self.assertFalse(report.inscribed, 'R_{1,2} reported an inscribed ball')
        self.assertFalse(report.diphase_and_smooth, 'R_{1,2} V reported of class 1')
        self.assertFalse('kappas' in report.to_dict(), 'Ball kappas reported')

    def test_rectangle_123(self):
        report = shapes.diphase_inscribed_check(shapes.make_rectangle([1, 2, 3]))
        self.assertFalse(report.inscribed, 'R_{1,2,3} reported an inscribed ball')
        self.assertFalse(report.diphase_and_smooth, 'R_{1,2,3} V reported of class 2')
        self.assertTrue(report.holds, 'Inscribed-ball check does not hold for R_{1,2,3}')
        self.assertEqual(report.kappa_residual, None, 'Kappa residual without a ball')


class BuildShapeTests(unittest.TestCase):

    def setUp(self):
        mkTestData.generate_data()

    def tearDown(self):
        mkTestData.remove_data()

    def test_kinds(self):
        self.assertAlmostEqual(polytope_volume(shapes.build_shape('cube', [2])), 64.0, 9,
                               'Cube of half-side 2 does not have volume 64')
        self.assertAlmostEqual(polytope_volume(shapes.build_shape('rect', [1, 2])), 8.0, 9,
                               'R_{1,2} does not have area 8')
        self.assertEqual(shapes.build_shape('simplex', [2]).dim, 2,
                         'Simplex dimension not taken from the parameters')
        self.assertEqual(shapes.build_shape('polygon', [7]).dim, 2, 'Polygon is not planar')
        self.assertEqual(len(shapes.build_shape('regular_polygon', ['6'])), 6,
                         'Regular polygon does not have 6 sides')
        self.assertEqual(shapes.build_shape('rank-class', [2, 2, 3]).dim, 3,
                         'Rank-class instance has the wrong dimension')

    def test_roof_of(self):
        roof = shapes.build_shape('roof-of', ['square', '1'])
        self.assertEqual(roof.dim, 3, 'Roof of the square is not 3D')
        self.assertAlmostEqual(polytope_volume(roof), 4.0 / 3.0, 9,
                               'Roof of the square does not have volume 4/3')

    def test_iterated_roof(self):
        poly = shapes.build_shape('iterated_roof', [2, 'segment', 1])
        self.assertEqual(poly.dim, 3, 'Twice-roofed segment is not 3D')
        self.assertEqual(absolute_rank(poly.normals), 3,
                         'Twice-roofed segment does not have absolute rank 3')
        self.assertRaises(InvalidShapeError, shapes.build_shape, 'iterated-roof',
                          [0, 'square'])

    def test_custom(self):
        poly = shapes.build_shape('custom', [mkTestData.rect123])
        self.assertAlmostEqual(polytope_volume(poly), 48.0, 9,
                               'Custom R_{1,2,3} does not have volume 48')

    def test_unknown_fail(self):
        self.assertRaises(InvalidShapeError, shapes.build_shape, 'torus', [])

    def test_params_fail(self):
        self.assertRaises(InvalidShapeError, shapes.build_shape, 'rank-class', [1, 1])
        self.assertRaises(InvalidShapeError, shapes.build_shape, 'rect', ['wide'])
        self.assertRaises(InvalidShapeError, shapes.build_shape, 'roof-of', [])
        with self.assertRaises(InvalidShapeError) as context:
            shapes.build_shape('cube', [1, 2])
        self.assertEqual(error_kind(context.exception), 'InvalidShape',
                         'Shape error kind is not InvalidShape')


if __name__ == "__main__":
    unittest.main()
