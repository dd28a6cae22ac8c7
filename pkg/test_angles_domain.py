"""
This work is licensed under CC BY-NC 4.0 International.

This document is part of the KiteCC central-configuration toolkit.
"""

"""
Angle pairs, region classification, frame reconstruction and (k, l) transforms
"""

import math
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from kite_errors import DegenerateGeometry, InvalidAngles
from core_modules.angles_domain import (
    AnglePair,
    ConfigKind,
    CriticalLine,
    FamilyId,
    KLPoint,
    RegionKind,
    SingularPointId,
    classify_region,
    from_kl,
    reconstruct_positions,
    to_kl,
)

angles = st.floats(min_value=0.5, max_value=85.0, allow_nan=False)


def deg(alpha, beta):
    return AnglePair.from_degrees(alpha, beta)


class TestAnglePair(unittest.TestCase):
    """Construction and validation of angle pairs"""

    def test_rejects_out_of_range(self):
        for alpha, beta in [(-1.0, 10.0), (90.0, 10.0), (10.0, 95.0)]:
            with self.subTest(alpha=alpha, beta=beta):
                with self.assertRaises(InvalidAngles):
                    deg(alpha, beta)

    def test_rejects_non_finite(self):
        with self.assertRaises(InvalidAngles):
            AnglePair(float("nan"), 0.1)
        with self.assertRaises(InvalidAngles):
            AnglePair(0.1, float("inf"))

    def test_invalid_angles_is_value_error(self):
        with self.assertRaises(ValueError):
            deg(120.0, 0.0)

    def test_degrees_round_trip(self):
        p = deg(52.282, 60.0)
        self.assertAlmostEqual(p.alpha_deg, 52.282, places=12)
        self.assertAlmostEqual(p.beta_deg, 60.0, places=12)

    def test_error_record_names_module(self):
        try:
            deg(91.0, 0.0)
        except InvalidAngles as e:
            record = e.to_record()
        self.assertEqual(record["error"], "InvalidAngles")
        self.assertEqual(record["module"], "angles_domain")


class TestClassifyRegion(unittest.TestCase):
    """Regions of the (beta, alpha) plane"""

    def test_interiors(self):
        cases = [
            (deg(55.0, 20.0), None, RegionKind.CONVEX_INTERIOR),
            (deg(57.0, 10.0), ConfigKind.CONCAVE, RegionKind.CONCAVE_C1),
            (deg(62.0, 40.0), None, RegionKind.CONCAVE_C2),
        ]
        for p, kind, expected in cases:
            with self.subTest(p=str(p)):
                self.assertEqual(classify_region(p, kind).kind, expected)

    def test_overlap_prefers_convex_without_kind(self):
        p = deg(57.0, 20.0)
        self.assertEqual(classify_region(p).kind, RegionKind.CONVEX_INTERIOR)
        self.assertEqual(classify_region(p, ConfigKind.CONCAVE).kind, RegionKind.CONCAVE_C1)

    def test_singular_points(self):
        convex = classify_region(deg(30.0, 30.0))
        self.assertEqual(convex.kind, RegionKind.SINGULAR_POINT)
        self.assertEqual(convex.point, SingularPointId.S_CONVEX)
        concave = classify_region(deg(60.0, 30.0))
        self.assertEqual(concave.point, SingularPointId.S_CONCAVE)

    def test_critical_lines(self):
        cases = [
            (deg(60.0, 50.0), None, CriticalLine.ALPHA_60_CONVEX),
            (deg(50.0, 20.0), None, CriticalLine.ALPHA_PLUS_2BETA_90),
            (deg(50.0, 0.0), ConfigKind.CONCAVE, CriticalLine.BETA_0),
            (deg(65.0, 60.0), ConfigKind.CONCAVE, CriticalLine.BETA_60),
            (deg(55.0, 20.0), ConfigKind.CONCAVE, CriticalLine.TWO_ALPHA_MINUS_BETA_90),
        ]
        for p, kind, line in cases:
            with self.subTest(line=line.value):
                region = classify_region(p, kind)
                self.assertEqual(region.kind, RegionKind.ON_CRITICAL_LINE)
                self.assertEqual(region.line, line)

    def test_symmetry_edge_is_interior(self):
        self.assertEqual(classify_region(deg(45.0, 45.0)).kind, RegionKind.CONVEX_INTERIOR)

    def test_outside(self):
        self.assertEqual(classify_region(deg(10.0, 70.0)).kind, RegionKind.OUTSIDE)
        self.assertEqual(classify_region(deg(80.0, 20.0), ConfigKind.CONVEX).kind, RegionKind.OUTSIDE)

    def test_tolerance_widens_lines(self):
        p = deg(60.0 + 1e-6, 50.0)
        self.assertEqual(classify_region(p, ConfigKind.CONVEX).kind, RegionKind.OUTSIDE)
        self.assertEqual(classify_region(p, ConfigKind.CONVEX, tolerance=1e-6).line,
                         CriticalLine.ALPHA_60_CONVEX)

    @settings(deadline=None, max_examples=200)
    @given(angles, angles)
    def test_concave_regions_are_disjoint(self, alpha, beta):
        p = deg(alpha, beta)
        region = classify_region(p, ConfigKind.CONCAVE)
        c1 = 0 < beta and alpha < 60 and 2 * alpha - beta > 90
        c2 = alpha > 60 and beta < 60 and 2 * alpha - beta < 90
        self.assertFalse(c1 and c2)
        if region.kind is RegionKind.CONCAVE_C1:
            self.assertTrue(c1)
        if region.kind is RegionKind.CONCAVE_C2:
            self.assertTrue(c2)


class TestReconstructPositions(unittest.TestCase):
    """Planar kite frame"""

    def test_convex_frame(self):
        frame = reconstruct_positions(deg(45.0, 45.0), ConfigKind.CONVEX)
        np.testing.assert_allclose(frame.positions, [[0, 1], [0, -1], [1, 0], [-1, 0]], atol=1e-15)
        self.assertEqual(frame.labels, ("A", "B", "E", "E'"))

    def test_concave_frame(self):
        frame = reconstruct_positions(deg(60.0, 30.0), ConfigKind.CONCAVE)
        self.assertAlmostEqual(frame.positions[0, 1], math.sqrt(3.0), places=12)
        self.assertAlmostEqual(frame.positions[1, 1], 1.0 / math.sqrt(3.0), places=12)

    def test_concave_requires_alpha_above_beta(self):
        with self.assertRaises(DegenerateGeometry):
            reconstruct_positions(deg(30.0, 40.0), ConfigKind.CONCAVE)

    def test_convex_collision(self):
        with self.assertRaises(DegenerateGeometry):
            reconstruct_positions(deg(0.0, 0.0), ConfigKind.CONVEX)

    def test_frame_is_read_only(self):
        frame = reconstruct_positions(deg(50.0, 30.0), ConfigKind.CONVEX)
        with self.assertRaises(ValueError):
            frame.positions[0, 0] = 1.0


class TestKLTransforms(unittest.TestCase):
    """(k, l) coordinates"""

    def test_family_conventions(self):
        p = deg(50.0, 20.0)
        ta, tb = p.tangents
        expected = {
            FamilyId.CONVEX_MU1: (ta, tb),
            FamilyId.CONVEX_MU2: (tb, ta),
            FamilyId.CONCAVE_MU1: (ta, -tb),
            FamilyId.CONCAVE_MU2: (-tb, ta),
        }
        for family, (k, l) in expected.items():
            with self.subTest(family=family.value):
                point = to_kl(p, family)
                self.assertEqual((point.k, point.l), (k, l))

    def test_no_negative_zero(self):
        point = to_kl(deg(48.0, 0.0), FamilyId.CONCAVE_MU2)
        self.assertEqual(math.copysign(1.0, point.k), 1.0)

    def test_kl_must_be_finite(self):
        with self.assertRaises(ValueError):
            KLPoint(float("nan"), 1.0)

    @settings(deadline=None, max_examples=200)
    @given(angles, angles, st.sampled_from(list(FamilyId)))
    def test_inverse(self, alpha, beta, family):
        p = deg(alpha, beta)
        back = from_kl(to_kl(p, family), family)
        self.assertAlmostEqual(back.alpha, p.alpha, places=12)
        self.assertAlmostEqual(back.beta, p.beta, places=12)


class TestFamilyId(unittest.TestCase):

    def test_parse_spellings(self):
        for text in ("convex-mu1", "convex_mu1", "ConvexMu1", "CONVEX_MU1"):
            with self.subTest(text=text):
                self.assertIs(FamilyId.parse(text), FamilyId.CONVEX_MU1)
        with self.assertRaises(ValueError):
            FamilyId.parse("triangle")

    def test_properties(self):
        self.assertIs(FamilyId.CONCAVE_MU2.kind, ConfigKind.CONCAVE)
        self.assertEqual(FamilyId.CONCAVE_MU2.equal_body, 2)
        self.assertEqual(FamilyId.CONVEX_MU1.equal_body, 1)


if __name__ == '__main__':
    unittest.main(verbosity=2)
