import numpy as np
from django.test import SimpleTestCase

from contests.services.config import OracleConfig
from contests.services.contest_core import Contest, enumerate_contests
from contests.services.errors import ContestSpecError
from contests.services.oracle import (
    ContinuationTable,
    _golden_section,
    check_grid_refinement,
    compare_with_characterization,
    oracle_solve,
)
from contests.services.payoff_model import make_linear, make_tullock

TULLOCK = make_tullock(1, 1)
LINEAR = make_linear(1, 1)


class OracleSolveTests(SimpleTestCase):

    def test_tullock_first_mover(self):
        outcome = oracle_solve(TULLOCK, Contest((1, 2)))
        self.assertAlmostEqual(outcome.x_star, 0.75, delta=1e-3)
        self.assertAlmostEqual(outcome.period_efforts[0], 0.375, delta=1e-3)
        self.assertAlmostEqual(outcome.period_efforts[1], 0.1875, delta=1e-3)

    def test_tullock_simultaneous_is_symmetric(self):
        outcome = oracle_solve(TULLOCK, Contest((3,)))
        self.assertAlmostEqual(outcome.x_star, 2 / 3, delta=1e-3)
        self.assertAlmostEqual(outcome.period_efforts[0], 2 / 9, delta=1e-3)

    def test_linear_leader_and_follower(self):
        outcome = oracle_solve(LINEAR, Contest((1, 1)))
        self.assertAlmostEqual(outcome.period_efforts[0], 0.5, delta=1e-3)
        self.assertAlmostEqual(outcome.period_efforts[1], 0.25, delta=1e-3)
        self.assertAlmostEqual(outcome.x_star, 0.75, delta=1e-3)

    def test_player_limit(self):
        with self.assertRaises(ContestSpecError):
            oracle_solve(TULLOCK, Contest((1, 1, 1, 1, 1)))

    def test_config_validation(self):
        with self.assertRaises(ValueError):
            OracleConfig(grid_points=2)
        with self.assertRaises(ValueError):
            OracleConfig(damping=0)
        with self.assertRaises(ValueError):
            OracleConfig(effort_max=2.0).resolve(1.0)
        self.assertAlmostEqual(OracleConfig(grid_points=2001).resolve(1.0).step, 5e-4)


class ContinuationTableTests(SimpleTestCase):

    def test_interpolates_and_extends_identity(self):
        table = ContinuationTable(np.array([0.0, 0.5, 1.0]), np.array([0.4, 0.7, 1.0]))
        np.testing.assert_allclose(table(np.array([0.25, 0.75, 1.5])), [0.55, 0.85, 1.5])


class CharacterizationAgreementTests(SimpleTestCase):

    def test_three_player_contests(self):
        for model in (TULLOCK, LINEAR):
            for contest in enumerate_contests(3):
                comparison = compare_with_characterization(model, contest)
                self.assertTrue(comparison.passed, f"{contest}: {comparison.discrepancy}")
                self.assertEqual(comparison.rows()[0][0], 'X_star')
                self.assertEqual(len(comparison.rows()), contest.num_periods + 1)

    def test_refinement_halves_discrepancy(self):
        self.assertTrue(check_grid_refinement(LINEAR, Contest((1, 1))).passed)
        self.assertTrue(check_grid_refinement(TULLOCK, Contest((3,)), OracleConfig(grid_points=501)).passed)

    def test_sequential_three_player_tullock(self):
        config = OracleConfig().resolve(TULLOCK.xbar)
        outcome = oracle_solve(TULLOCK, Contest((1, 1, 1)), config)
        self.assertAlmostEqual(outcome.x_star, (3 + np.sqrt(3)) / 6, delta=2 * config.step)
        exact = compare_with_characterization(TULLOCK, Contest((1, 1, 1)), config)
        self.assertLessEqual(exact.discrepancy, 2 * config.step)


class GoldenSectionTests(SimpleTestCase):

    def test_locates_rowwise_maxima(self):
        peaks = np.array([0.1, 0.35, 0.8])
        found = _golden_section(lambda x: -(x - peaks) ** 4, peaks - 0.07, peaks + 0.05)
        np.testing.assert_allclose(found, peaks, atol=1e-3)

    def test_boundary_maximum(self):
        found = _golden_section(lambda x: -x, np.array([0.0]), np.array([0.01]))
        self.assertLess(found[0], 1e-9)
