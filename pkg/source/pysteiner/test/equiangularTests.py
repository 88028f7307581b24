"""
Unit tests for the equiangular module

Copyright 2016, University Corporation for Atmospheric Research
See the LICENSE.rst file for details
"""

import unittest
from math import sqrt, atan, pi

from pysteiner import equiangular
from pysteiner.steiner import inner_volume_function
from pysteiner.shapes import (make_cube, make_rectangle, make_regular_simplex,
                              make_square_pyramid, make_cut_dodecahedron,
                              GOLDEN_RATIO)
from pysteiner.errors import NotEquiangularError, NotUniformError

PHI = GOLDEN_RATIO


def _counts(lattice):
    return [len(lattice.faces(k)) for k in range(lattice.dim - 1, -1, -1)]


class FaceLatticeTests(unittest.TestCase):

    def test_cube_counts(self):
        lattice = equiangular.face_lattice(make_cube())
        self.assertEqual(_counts(lattice), [6, 12, 8], 'Cube lattice counts are wrong')

    def test_simplex_counts(self):
        lattice = equiangular.face_lattice(make_regular_simplex(3))
        self.assertEqual(_counts(lattice), [4, 6, 4], 'Simplex lattice counts are wrong')

    def test_dodecahedron_counts(self):
        lattice = equiangular.face_lattice(make_cut_dodecahedron())
        self.assertEqual(_counts(lattice), [12, 30, 20],
                         'Cut dodecahedron lattice counts are wrong')

    def test_faces_shared(self):
        lattice = equiangular.face_lattice(make_cube())
        for edge in lattice.faces(1):
            self.assertEqual(len(edge.parents), 2, 'Cube edge not shared by 2 facets')
        for vertex in lattice.faces(0):
            self.assertEqual(len(vertex.parents), 3, 'Cube vertex not on 3 edges')


class DihedralAngleTests(unittest.TestCase):

    def test_cube(self):
        cube = make_cube()
        self.assertAlmostEqual(equiangular.dihedral_angle(cube, 0, 2), 0.5 * pi, 12,
                               'Cube dihedral angle is not pi/2')
        self.assertEqual(equiangular.dihedral_angle(cube, 0, 1), None,
                         'Opposite cube facets reported adjacent')

    def test_same_facet_fail(self):
        self.assertRaises(ValueError, equiangular.dihedral_angle, make_cube(), 1, 1)

    def test_dodecahedron(self):
        D = make_cut_dodecahedron()
        for i in range(len(D)):
            for j in range(i + 1, len(D)):
                angle = equiangular.dihedral_angle(D, i, j)
                if angle is not None:
                    self.assertAlmostEqual(angle, atan(2.0), 9,
                                           'Dodecahedron angle is not arctan 2')


class EquiangularCheckTests(unittest.TestCase):

    def test_cube_profile(self):
        profile = equiangular.check_dimensionwise_equiangular(make_cube())
        self.assertIsInstance(profile, equiangular.EquiangularProfile,
                              'Cube not dimension-wise equiangular')
        for g in profile.gammas:
            self.assertAlmostEqual(g, 1.0, 12, 'Cube gamma is not 1')
        self.assertEqual(profile.mus, [3, 2, 1], 'Cube incidence counts are wrong')

    def test_cube_omegas(self):
        lattice = equiangular.face_lattice(make_cube())
        omegas = [equiangular.omega(lattice, k) for k in range(4)]
        for got, want in zip(omegas, [48.0, 48.0, 24.0, 8.0]):
            self.assertAlmostEqual(got, want, 9, 'Cube Omega sums are wrong')
        for k in range(4):
            self.assertAlmostEqual(equiangular.omega_by_flags(lattice, k), omegas[k], 9,
                                   'Flag form of Omega_{0} differs'.format(k))

    def test_omega_level_fail(self):
        lattice = equiangular.face_lattice(make_cube())
        self.assertRaises(ValueError, equiangular.omega, lattice, 4)

    def test_dodecahedron_profile(self):
        profile = equiangular.check_dimensionwise_equiangular(make_cut_dodecahedron())
        gammas = profile.gammas
        self.assertAlmostEqual(profile.alphas[3], atan(2.0), 9, 'alpha_3 is not arctan 2')
        self.assertAlmostEqual(gammas[0], sqrt(18.0 - 11.0 * PHI), 9, 'gamma_1 is wrong')
        self.assertAlmostEqual(gammas[1], PHI - 1.0, 9, 'gamma_2 is not phi - 1')
        self.assertAlmostEqual(gammas[2], 1.0, 12, 'gamma_3 is not 1')
        self.assertAlmostEqual(profile.omegas[1], 20.0 + 60.0 / PHI, 7, 'Omega_1 is wrong')
        self.assertAlmostEqual(profile.omegas[0], 120.0, 9, 'Omega_0 is not 120')

    def test_pyramid_witness(self):
        witness = equiangular.check_dimensionwise_equiangular(make_square_pyramid())
        self.assertIsInstance(witness, equiangular.NotEquiangular,
                              'Square pyramid reported equiangular')
        self.assertEqual(witness.level, 3, 'Witness not at the top level')


class VolumePolynomialTests(unittest.TestCase):

    def test_cube(self):
        result = equiangular.equiangular_volume_polynomial(make_cube())
        coeffs = result.poly.padded(3)
        for got, want in zip(coeffs, [8.0, -24.0, 24.0, -8.0]):
            self.assertAlmostEqual(got, want, 9, 'Cube W is not 8 (1 - r)^3')
        self.assertAlmostEqual(result.valid_on[1], 1.0, 9, 'Cube form not valid up to 1')

    def test_dodecahedron(self):
        D = make_cut_dodecahedron()
        inner = inner_volume_function(D)
        result = equiangular.equiangular_volume_polynomial(D, inner=inner)
        coeffs = result.poly.padded(3)
        self.assertAlmostEqual(coeffs[1], -7.0 * sqrt(15.0 - 5.0 * PHI), delta=1e-6,
                               msg='Linear coefficient is not -7 sqrt(15 - 5 phi)')
        self.assertAlmostEqual(coeffs[2], 50.0 - 20.0 * PHI, delta=1e-6,
                               msg='Quadratic coefficient is not 50 - 20 phi')
        self.assertAlmostEqual(coeffs[3], -20.0 * sqrt(47.0 - 29.0 * PHI), delta=1e-6,
                               msg='Cubic coefficient is not -20 sqrt(47 - 29 phi)')
        self.assertAlmostEqual(coeffs[1], -18.4005889, delta=1e-6, msg='Linear coefficient is wrong')
        self.assertAlmostEqual(coeffs[2], 17.6393202, delta=1e-6, msg='Quadratic coefficient is wrong')

    def test_matches_engine(self):
        for poly in (make_cube(), make_rectangle([1, 1, 2]), make_cut_dodecahedron()):
            inner = inner_volume_function(poly)
            result = equiangular.equiangular_volume_polynomial(poly, inner=inner)
            engine = inner.W.pieces[0].padded(3)
            closed = result.poly.padded(3)
            for got, want in zip(engine, closed):
                self.assertTrue(abs(got - want) <= 1e-7 * max(1.0, abs(want)),
                                'Engine coefficient {0} differs from {1}'.format(got, want))

    def test_not_equiangular_fail(self):
        self.assertRaises(NotEquiangularError, equiangular.equiangular_volume_polynomial,
                          make_square_pyramid())

    def test_dict(self):
        data = equiangular.equiangular_volume_polynomial(make_cube()).to_dict()
        self.assertTrue(data['equiangular'], 'JSON does not report equiangular')
        self.assertEqual(len(data['poly']), 4, 'JSON polynomial is not cubic')
        self.assertEqual(len(data['gammas']), 3, 'JSON does not list 3 gammas')


class CorollaryFormTests(unittest.TestCase):

    def test_cube(self):
        form = equiangular.corollary_form(make_cube())
        self.assertEqual(form.mus, [3, 2, 1], 'Cube incidence counts are wrong')
        for got, want in zip(form.skeleton_vols, [8.0, 24.0, 24.0, 8.0]):
            self.assertAlmostEqual(got, want, 9, 'Cube skeleton volumes are wrong')
        closed = equiangular.equiangular_volume_polynomial(make_cube()).poly
        self.assertTrue(form.poly.isclose(closed, 1e-9),
                        'Incidence form differs from the Omega form')

    def test_pyramid_not_uniform(self):
        try:
            equiangular.corollary_form(make_square_pyramid())
        except NotUniformError as err:
            self.assertEqual(err.level, 1, 'Non-uniform level is not the vertex level')
            self.assertEqual(err.counts, [3, 4], 'Vertex counts are not 3 and 4')
        else:
            self.fail('Square pyramid reported uniform')

    def test_regular_identity(self):
        for poly in (make_cube(), make_regular_simplex(3)):
            for residual in equiangular.regular_identity_residuals(poly):
                self.assertTrue(residual < 1e-9, 'Regular identity residual too large')


if __name__ == "__main__":
    unittest.main()
