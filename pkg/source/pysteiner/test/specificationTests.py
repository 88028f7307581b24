"""
Unit tests for the Specifier class

Copyright 2016, University Corporation for Atmospheric Research
See the LICENSE.rst file for details
"""

import os
import unittest

from pysteiner import specification


class SpecifierTests(unittest.TestCase):

    """
    SpecifierTests Class

    This class defines all of the unit tests for the specification module.
    """

    def test_init(self):
        spec = specification.Specifier()
        self.assertEqual(spec.feas_tol, 1e-9, 'Feasibility tolerance not initialized to 1e-9')
        self.assertEqual(spec.lp_tol, 1e-9, 'LP tolerance not initialized to 1e-9')
        self.assertEqual(spec.vertex_tol, 1e-8, 'Vertex tolerance not initialized to 1e-8')
        self.assertEqual(spec.smooth_tol, 1e-7, 'Smoothness tolerance not initialized to 1e-7')
        self.assertEqual(spec.angle_tol, 1e-8, 'Angle tolerance not initialized to 1e-8')
        self.assertEqual(spec.window_margin, 0.1, 'Window margin not initialized to 0.1')
        self.assertEqual(len(spec.options), 0, 'Options not initialized to empty')

    def test_init_full(self):
        spec = specification.Specifier(feas_tol=1e-10, window_margin=0.5,
                                       lp_max_iter=100, label='run')
        self.assertEqual(spec.feas_tol, 1e-10, 'Feasibility tolerance not set properly')
        self.assertEqual(spec.window_margin, 0.5, 'Window margin not set properly')
        self.assertEqual(spec.lp_max_iter, 100, 'Pivot budget not set properly')
        self.assertEqual(spec.options['label'], 'run', 'Options not set properly')

    def test_create_specifier(self):
        spec = specification.create_specifier(cont_tol=1e-8)
        self.assertIsInstance(spec, specification.Specifier,
                              'create_specifier did not return a Specifier')
        self.assertEqual(spec.cont_tol, 1e-8, 'Continuity tolerance not set properly')

    def test_get_specifier(self):
        spec = specification.get_specifier()
        self.assertIs(spec, specification.get_specifier(),
                      'Default specifier is not shared')
        mine = specification.Specifier()
        self.assertIs(specification.get_specifier(mine), mine,
                      'Given specifier not returned')
        self.assertRaises(TypeError, specification.get_specifier, 'spec')

    def test_validate_types_fail_tolerance(self):
        spec = specification.Specifier(feas_tol='small')
        self.assertRaises(TypeError, spec.validate)

    def test_validate_types_fail_count(self):
        spec = specification.Specifier(lp_max_iter=10.5)
        self.assertRaises(TypeError, spec.validate)

    def test_validate_values_fail_negative(self):
        spec = specification.Specifier(lp_tol=-1e-9)
        self.assertRaises(ValueError, spec.validate)

    def test_validate_values_fail_cond(self):
        spec = specification.Specifier(cond_limit=0.5)
        self.assertRaises(ValueError, spec.validate)

    def test_validate_values_fail_grid(self):
        spec = specification.Specifier(grid_cell_cap=4)
        self.assertRaises(ValueError, spec.validate)

    def test_write_read(self):
        fname = 'specifierTests.json'
        spec = specification.Specifier(rank_tol=1e-11, grid_cell_cap=4096)
        spec.write(fname)
        try:
            back = specification.read_specifier(fname)
        finally:
            os.remove(fname)
        self.assertEqual(back.rank_tol, 1e-11, 'Rank tolerance not read back')
        self.assertEqual(back.grid_cell_cap, 4096, 'Grid cap not read back')
        self.assertEqual(back.to_dict(), spec.to_dict(), 'Specifier data not read back')


if __name__ == "__main__":
    unittest.main()
