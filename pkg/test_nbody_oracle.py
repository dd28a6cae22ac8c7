"""
This work is licensed under CC BY-NC 4.0 International.

This document is part of the KiteCC central-configuration toolkit.
"""

"""
Newtonian central-configuration oracle
"""

import math
import os
import unittest
from unittest.mock import patch

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from kite_config import thread_count
from kite_errors import CollisionSingularity, DegenerateBody
from core_modules.angles_domain import AnglePair, ConfigKind, reconstruct_positions
from core_modules.nbody_oracle import KiteConfiguration, accelerations, verify_central, verify_many

SQRT3 = math.sqrt(3.0)


def equilateral():
    return KiteConfiguration(
        [[0.0, 0.0], [1.0, 0.0], [0.5, SQRT3 / 2.0]],
        masses=[1.0 / 3.0] * 3,
    )


def square():
    return reconstruct_positions(AnglePair.from_degrees(45.0, 45.0), ConfigKind.CONVEX).with_masses([0.25] * 4)


class TestCentralConfigurations(unittest.TestCase):
    """Known central and non-central configurations"""

    def test_equilateral_triangle(self):
        report = verify_central(equilateral())
        self.assertTrue(report.is_central)
        self.assertAlmostEqual(report.lam, 1.0, places=12)
        self.assertLess(report.max_relative_residual, 1e-12)

    def test_square(self):
        report = verify_central(square())
        self.assertTrue(report.is_central)
        self.assertGreater(report.lam, 0.0)
        np.testing.assert_allclose(report.per_body_lambda, [report.lam] * 4, rtol=1e-12)
        np.testing.assert_allclose(report.barycenter_shift, [0.0, 0.0], atol=1e-15)

    def test_triangle_with_center_body(self):
        frame = reconstruct_positions(AnglePair.from_degrees(60.0, 30.0), ConfigKind.CONCAVE)
        report = verify_central(frame.with_masses([0.25] * 4))
        self.assertTrue(report.is_central)
        self.assertEqual(report.trivially_central, ("B",))
        self.assertTrue(math.isnan(report.per_body_lambda[1]))

    def test_unequal_square_is_not_central(self):
        report = verify_central(square().with_masses([0.4, 0.2, 0.2, 0.2]))
        self.assertFalse(report.is_central)
        self.assertGreater(report.max_relative_residual, 1e-3)

    def test_single_heavy_body(self):
        # massless bodies on a circle about the only massive one
        config = KiteConfiguration([[0.0, 0.0], [2.0, 0.0], [0.0, -2.0]], masses=[1.0, 0.0, 0.0])
        report = verify_central(config)
        self.assertTrue(report.is_central)
        self.assertAlmostEqual(report.lam, 1.0 / 8.0, places=14)
        self.assertEqual(report.trivially_central, ("body0",))

    def test_report_record(self):
        record = verify_central(equilateral()).to_dict()
        self.assertEqual(set(record), {"lambda", "max_relative_residual", "per_body_lambda",
                                       "barycenter_shift", "trivially_central"})


class TestFailures(unittest.TestCase):

    def test_collision(self):
        config = KiteConfiguration([[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]], masses=[0.2, 0.3, 0.5])
        with self.assertRaises(CollisionSingularity) as caught:
            verify_central(config)
        self.assertEqual(caught.exception.to_record()["module"], "nbody_oracle")

    def test_pulled_body_at_barycenter(self):
        config = KiteConfiguration([[-1.0, 0.0], [2.0, 0.0], [0.0, 0.0]], masses=[0.2, 0.1, 0.7])
        with self.assertRaises(DegenerateBody):
            verify_central(config)

    def test_mass_validation(self):
        positions = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]
        for masses in ([0.3, 0.3, 0.3], [0.5, 0.6, -0.1], [0.5, 0.5]):
            with self.subTest(masses=masses):
                with self.assertRaises(ValueError):
                    KiteConfiguration(positions, masses=masses)

    def test_masses_required(self):
        with self.assertRaises(ValueError):
            accelerations(KiteConfiguration([[0.0, 0.0], [1.0, 0.0]]))

    def test_position_shape(self):
        with self.assertRaises(ValueError):
            KiteConfiguration([[0.0, 0.0, 0.0]])


class TestInvariance(unittest.TestCase):
    """Translation and scaling behaviour of the centrality check"""

    @settings(deadline=None, max_examples=50)
    @given(st.floats(-10.0, 10.0), st.floats(-10.0, 10.0))
    def test_translation(self, dx, dy):
        base = verify_central(square())
        moved = verify_central(square().translated([dx, dy]))
        self.assertAlmostEqual(moved.lam, base.lam, places=9)
        self.assertLess(moved.max_relative_residual, 1e-9)
        self.assertAlmostEqual(moved.barycenter_shift[0], dx, places=9)

    @settings(deadline=None, max_examples=50)
    @given(st.floats(0.1, 10.0))
    def test_scaling(self, factor):
        base = verify_central(equilateral())
        scaled = verify_central(equilateral().scaled(factor))
        self.assertAlmostEqual(scaled.lam * factor ** 3, base.lam, places=9)
        self.assertLess(scaled.max_relative_residual, 1e-9)


class TestBatch(unittest.TestCase):

    def test_parallel_matches_sequential(self):
        configs = [
            reconstruct_positions(AnglePair.from_degrees(45.0 + i, 40.0), ConfigKind.CONVEX).with_masses([0.25] * 4)
            for i in range(8)
        ]
        sequential = verify_many(configs, workers=1)
        parallel = verify_many(configs, workers=4)
        self.assertEqual([r.to_dict() for r in sequential], [r.to_dict() for r in parallel])

    def test_thread_count_from_environment(self):
        with patch.dict(os.environ, {"KITECC_THREADS": "3"}):
            self.assertEqual(thread_count(), 3)
        with patch.dict(os.environ, {"KITECC_THREADS": "many"}):
            self.assertEqual(thread_count(), 1)


if __name__ == '__main__':
    unittest.main(verbosity=2)
