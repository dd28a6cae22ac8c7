"""
This work is licensed under CC BY-NC 4.0 International.

This document is part of the KiteCC central-configuration toolkit.
"""

"""
Residuals of the three-equal-mass conditions
"""

import unittest

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from kite_errors import DegenerateGeometry
from core_modules.angles_domain import AnglePair, ConfigKind, CriticalLine, FamilyId
from core_modules.equal_mass_conditions import (
    exceptional_line_check,
    residual_from_tangents,
    residual_full,
    residual_reduced,
)

angles = st.floats(min_value=1.0, max_value=80.0)


def deg(alpha, beta):
    return AnglePair.from_degrees(alpha, beta)


class TestResiduals(unittest.TestCase):
    """Full and reduced residuals of the four families"""

    def test_square_is_on_both_convex_curves(self):
        for family in (FamilyId.CONVEX_MU1, FamilyId.CONVEX_MU2):
            with self.subTest(family=family.value):
                self.assertAlmostEqual(residual_full(deg(45.0, 45.0), family), 0.0, places=14)

    @settings(deadline=None, max_examples=200)
    @given(angles, angles)
    def test_convex_exchange_symmetry(self, alpha, beta):
        ta, tb = deg(alpha, beta).tangents
        self.assertAlmostEqual(
            residual_from_tangents(ta, tb, FamilyId.CONVEX_MU2),
            residual_from_tangents(tb, ta, FamilyId.CONVEX_MU1),
            places=12,
        )

    @settings(deadline=None, max_examples=200)
    @given(angles, angles, st.sampled_from(list(FamilyId)))
    def test_reduced_matches_full(self, alpha, beta, family):
        if family.kind is ConfigKind.CONCAVE:
            assume(alpha > beta + 0.5)
        p = deg(alpha, beta)
        full = residual_full(p, family)
        self.assertAlmostEqual(residual_reduced(p, family), full, delta=1e-10 * (1.0 + abs(full)))

    def test_vectorized_matches_scalar(self):
        alpha = np.radians([40.0, 50.0, 70.0])
        beta = np.radians([10.0, 20.0, 30.0])
        values = residual_from_tangents(np.tan(alpha), np.tan(beta), FamilyId.CONCAVE_MU1)
        self.assertEqual(values.shape, (3,))
        for i in range(3):
            with self.subTest(i=i):
                p = AnglePair(alpha[i], beta[i])
                self.assertAlmostEqual(values[i], residual_full(p, FamilyId.CONCAVE_MU1), places=14)

    def test_scalar_input_gives_float(self):
        self.assertIsInstance(residual_from_tangents(1.0, 0.5, FamilyId.CONVEX_MU1), float)

    def test_concave_needs_alpha_above_beta(self):
        for family in (FamilyId.CONCAVE_MU1, FamilyId.CONCAVE_MU2):
            with self.subTest(family=family.value):
                with self.assertRaises(DegenerateGeometry):
                    residual_full(deg(30.0, 30.0), family)


class TestExceptionalLines(unittest.TestCase):
    """Lines on which the reduced conditions hold degenerately"""

    def test_convex_line(self):
        case = exceptional_line_check(deg(50.0, 20.0), ConfigKind.CONVEX)
        self.assertIsNotNone(case)
        self.assertEqual(case.line, CriticalLine.ALPHA_PLUS_2BETA_90)
        self.assertEqual((case.mu1, case.mu2), (1.0, 0.0))

    def test_concave_line(self):
        case = exceptional_line_check(deg(55.0, 20.0), ConfigKind.CONCAVE)
        self.assertEqual(case.line, CriticalLine.TWO_ALPHA_MINUS_BETA_90)
        self.assertEqual((case.mu1, case.mu2), (0.0, 1.0))

    def test_off_line(self):
        self.assertIsNone(exceptional_line_check(deg(45.0, 45.0), ConfigKind.CONVEX))
        self.assertIsNone(exceptional_line_check(deg(50.0, 20.0), ConfigKind.CONCAVE))

    def test_tolerance(self):
        p = deg(50.0 + 1e-5, 20.0)
        self.assertIsNone(exceptional_line_check(p, ConfigKind.CONVEX))
        self.assertIsNotNone(exceptional_line_check(p, ConfigKind.CONVEX, tolerance=1e-6))


if __name__ == '__main__':
    unittest.main(verbosity=2)
