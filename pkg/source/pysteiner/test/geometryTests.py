"""
Unit tests for the geometry module

Copyright 2016, University Corporation for Atmospheric Research
See the LICENSE.rst file for details
"""

import io
import unittest
from os import linesep
from math import sqrt

import numpy

from pysteiner import geometry
from pysteiner.errors import (ZeroNormalError, DimensionMismatchError,
                              UnboundedInputError, LowerDimensionalError,
                              EmptyPolytopeError)
from pysteiner.shapes import make_rectangle, make_cube, make_simplex


#==============================================================================
# print_test_msg
#==============================================================================
def print_test_msg(testname, indata=None, actual=None, expected=None):
    msg = '{0}:{1}'.format(testname, linesep)
    if indata is not None:
        msg += '   - input:    {0!r}{1}'.format(indata, linesep)
    if actual is not None:
        msg += '   - actual:   {0!r}{1}'.format(actual, linesep)
    if expected is not None:
        msg += '   - expected: {0!r}{1}'.format(expected, linesep)
    print(msg)


def _planes(rows):
    return [geometry.normalize_halfspace(a, b, sense) for a, b, sense in rows]


class HyperplaneTests(unittest.TestCase):

    def test_normalize_le(self):
        plane = geometry.normalize_halfspace([2.0, 0.0], 4.0, '<=')
        self.assertTrue(numpy.allclose(plane.normal, [-1.0, 0.0]),
                        'Normal of 2x <= 4 is not (-1, 0)')
        self.assertAlmostEqual(plane.offset, -2.0, 14,
                               'Offset of 2x <= 4 is not -2')

    def test_normalize_ge(self):
        plane = geometry.normalize_halfspace([3.0, 4.0], 10.0, '>=')
        self.assertTrue(numpy.allclose(plane.normal, [0.6, 0.8]),
                        'Normal of 3x + 4y >= 10 is not (0.6, 0.8)')
        self.assertAlmostEqual(plane.offset, 2.0, 14,
                               'Offset of 3x + 4y >= 10 is not 2')

    def test_normalize_zero_fail(self):
        self.assertRaises(ZeroNormalError, geometry.normalize_halfspace,
                          [0.0, 0.0], 1.0, '<=')

    def test_normalize_sense_fail(self):
        self.assertRaises(ValueError, geometry.normalize_halfspace,
                          [1.0, 0.0], 1.0, '<')

    def test_hyperplane_not_unit_fail(self):
        self.assertRaises(ValueError, geometry.Hyperplane, [2.0, 0.0], 1.0)

    def test_signed_distance(self):
        plane = geometry.Hyperplane([0.0, 1.0], -1.0)
        self.assertAlmostEqual(geometry.signed_distance([5.0, 0.5], plane), 1.5, 14,
                               'Signed distance from y >= -1 is wrong')

    def test_signed_distance_dim_fail(self):
        plane = geometry.Hyperplane([0.0, 1.0], -1.0)
        self.assertRaises(DimensionMismatchError, geometry.signed_distance,
                          [1.0, 2.0, 3.0], plane)


class LinearProgramTests(unittest.TestCase):

    def test_optimal(self):
        cons = [([1.0, 0.0], 1.0, '<='), ([0.0, 1.0], 2.0, '<='),
                ([1.0, 0.0], 0.0, '>='), ([0.0, 1.0], 0.0, '>=')]
        result = geometry.solve_lp([1.0, 1.0], cons)
        print_test_msg('solve_lp: box', indata=cons, actual=result.optimum, expected=3.0)
        self.assertEqual(result.status, 'optimal', 'Bounded LP not optimal')
        self.assertAlmostEqual(result.optimum, 3.0, 9, 'LP optimum is not 3')
        self.assertTrue(numpy.allclose(result.witness, [1.0, 2.0]),
                        'LP witness is not (1, 2)')

    def test_minimize_free_variables(self):
        cons = [([1.0, 1.0], -3.0, '>='), ([1.0, -1.0], 1.0, '<='),
                ([1.0, 0.0], -5.0, '>=')]
        result = geometry.solve_lp([1.0, 0.0], cons, maximize=False)
        self.assertEqual(result.status, 'optimal', 'Free variable LP not optimal')
        self.assertAlmostEqual(result.optimum, -5.0, 9, 'LP minimum is not -5')

    def test_equality(self):
        cons = [([1.0, 1.0], 1.0, '=='), ([1.0, 0.0], 0.0, '>='),
                ([0.0, 1.0], 0.0, '>=')]
        result = geometry.solve_lp([2.0, 1.0], cons)
        self.assertAlmostEqual(result.optimum, 2.0, 9, 'Equality LP optimum is not 2')

    def test_infeasible(self):
        cons = [([1.0], 1.0, '>='), ([1.0], 0.0, '<=')]
        result = geometry.solve_lp([1.0], cons)
        self.assertEqual(result.status, 'infeasible', 'Empty LP not infeasible')
        self.assertFalse(result.optimal, 'Infeasible LP reported optimal')

    def test_unbounded(self):
        result = geometry.solve_lp([1.0], [([1.0], 0.0, '>=')])
        self.assertEqual(result.status, 'unbounded', 'Open LP not unbounded')


class PolytopeTests(unittest.TestCase):

    def test_remove_redundant(self):
        planes = _planes([([1, 0], 0, '>='), ([0, 1], 0, '>='),
                          ([1, 1], 1, '<='), ([1, 1], 5, '<=')])
        poly = geometry.remove_redundant(planes)
        self.assertEqual(len(poly), 3, 'Redundant halfspace x + y <= 5 not removed')

    def test_remove_duplicate(self):
        planes = _planes([([1, 0], 0, '>='), ([0, 1], 0, '>='),
                          ([1, 1], 1, '<='), ([2, 2], 2, '<=')])
        poly = geometry.remove_redundant(planes)
        self.assertEqual(len(poly), 3, 'Duplicate halfspace not removed')

    def test_unbounded_fail(self):
        planes = _planes([([1, 0], 0, '>='), ([0, 1], 0, '>=')])
        self.assertRaises(UnboundedInputError, geometry.remove_redundant, planes)

    def test_slab_unbounded_fail(self):
        planes = _planes([([1, 0], 0, '>='), ([1, 0], 1, '<=')])
        self.assertRaises(UnboundedInputError, geometry.remove_redundant, planes)

    def test_empty_fail(self):
        planes = _planes([([1], 1, '>='), ([1], 0, '<=')])
        self.assertRaises(EmptyPolytopeError, geometry.remove_redundant, planes)

    def test_lower_dimensional_fail(self):
        planes = _planes([([1, 0], 0, '>='), ([1, 0], 0, '<='),
                          ([0, 1], 0, '>='), ([0, 1], 1, '<=')])
        self.assertRaises(LowerDimensionalError, geometry.remove_redundant, planes)

    def test_empty_list_fail(self):
        self.assertRaises(UnboundedInputError, geometry.remove_redundant, [])

    def test_cube_vertices(self):
        vset = geometry.enumerate_vertices(make_cube())
        print_test_msg('enumerate_vertices: cube', actual=len(vset), expected=8)
        self.assertEqual(len(vset), 8, 'Cube does not have 8 vertices')
        for k in range(len(vset)):
            self.assertEqual(len(vset.active[k]), 3,
                             'Cube vertex not on exactly 3 facets')

    def test_simplex_vertices(self):
        vset = geometry.enumerate_vertices(make_simplex(3))
        self.assertEqual(len(vset), 4, 'Simplex does not have 4 vertices')

    def test_volumes(self):
        self.assertAlmostEqual(geometry.polytope_volume(make_cube()), 8.0, 10,
                               'Cube volume is not 8')
        self.assertAlmostEqual(geometry.polytope_volume(make_rectangle([1, 2, 3])),
                               48.0, 10, 'R_{1,2,3} volume is not 48')
        self.assertAlmostEqual(geometry.polytope_volume(make_simplex(3)), 1.0 / 6, 10,
                               'Unit simplex volume is not 1/6')
        self.assertAlmostEqual(geometry.polytope_volume(make_rectangle([2.5])), 5.0, 12,
                               'Segment length is not 5')

    def test_surface_area(self):
        self.assertAlmostEqual(geometry.surface_area(make_rectangle([1, 2, 3])),
                               88.0, 10, 'R_{1,2,3} surface area is not 88')
        self.assertAlmostEqual(geometry.surface_area(make_simplex(2)), 2.0 + sqrt(2.0),
                               10, 'Triangle perimeter is not 2 + sqrt(2)')

    def test_facet_polytope(self):
        cube = make_cube()
        facet = geometry.facet_polytope(cube, 0)
        self.assertEqual(facet.dim, 2, 'Cube facet is not 2-dimensional')
        self.assertEqual(len(facet), 4, 'Cube facet does not have 4 edges')
        self.assertEqual(len(facet.vertex_index), 4, 'Cube facet does not have 4 vertices')
        self.assertAlmostEqual(geometry.polytope_volume(facet), 4.0, 10,
                               'Cube facet area is not 4')

    def test_complement_frame(self):
        normal = numpy.array([1.0, 2.0, 2.0]) / 3.0
        frame = geometry.complement_frame(normal)
        self.assertEqual(frame.shape, (3, 2), 'Frame shape is not (3, 2)')
        self.assertTrue(numpy.allclose(numpy.dot(frame.T, frame), numpy.eye(2)),
                        'Frame columns are not orthonormal')
        self.assertTrue(numpy.allclose(numpy.dot(normal, frame), 0.0),
                        'Frame is not orthogonal to the normal')

    def test_inradius_rectangle(self):
        ball = geometry.inradius(make_rectangle([1, 2, 3]))
        print_test_msg('inradius: R_{1,2,3}', actual=ball.g, expected=1.0)
        self.assertAlmostEqual(ball.g, 1.0, 9, 'R_{1,2,3} inradius is not 1')

    def test_inradius_simplex(self):
        ball = geometry.inradius(make_simplex(2))
        self.assertAlmostEqual(ball.g, 1.0 / (2.0 + sqrt(2.0)), 9,
                               'Right triangle inradius is wrong')

    def test_interior_polytope(self):
        inner = geometry.interior_polytope(make_rectangle([1, 2, 3]), 0.5)
        self.assertAlmostEqual(geometry.polytope_volume(inner), 8 * 0.5 * 1.5 * 2.5, 10,
                               'Eroded R_{1,2,3} volume is wrong')

    def test_interior_polytope_collapse_fail(self):
        self.assertRaises(LowerDimensionalError, geometry.interior_polytope,
                          make_cube(), 1.0)

    def test_absolute_rank(self):
        self.assertEqual(geometry.absolute_rank(make_cube().normals), 1,
                         'Cube normals do not have absolute rank 1')
        normals = make_simplex(3).normals
        rank, saturated = geometry.absolute_rank(normals, full_output=True)
        self.assertEqual(rank, 3, 'Simplex normals do not have absolute rank 3')
        self.assertFalse(saturated, 'Simplex normals reported saturated')

    def test_absolute_rank_saturated(self):
        rank, saturated = geometry.absolute_rank(numpy.eye(3)[:2], full_output=True)
        self.assertEqual(rank, 2, 'Two independent vectors not of rank 2')
        self.assertTrue(saturated, 'Independent family not reported saturated')

    def test_json(self):
        rect = make_rectangle([1, 2])
        stream = io.StringIO()
        geometry.dump_polytope(rect, stream)
        stream.seek(0)
        loaded = geometry.load_polytope(stream)
        self.assertEqual(len(loaded), 4, 'Loaded rectangle does not have 4 facets')
        self.assertAlmostEqual(geometry.polytope_volume(loaded), 8.0, 10,
                               'Loaded rectangle volume is not 8')

    def test_json_dim_fail(self):
        data = {'dim': 3, 'halfspaces': [{'a': [1, 0], 'b': 0, 'sense': '>='}]}
        self.assertRaises(DimensionMismatchError, geometry.polytope_from_dict, data)


if __name__ == "__main__":
    unittest.main()
