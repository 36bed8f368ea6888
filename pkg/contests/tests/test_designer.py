from django.test import SimpleTestCase

from contests.services.config import DEFAULT_OPTIONS
from contests.services.contest_core import Contest
from contests.services.designer import (
    FAIL,
    OBJECTIVES,
    PASS,
    SKIPPED,
    check_table,
    evaluate_all,
    evaluate_objectives,
    search,
    search_table,
    verify_propositions,
)
from contests.services.errors import ContestSpecError
from contests.services.payoff_model import make_linear, make_tullock

TULLOCK = make_tullock(1, 1)
LINEAR = make_linear(1, 1)


class ObjectiveTests(SimpleTestCase):

    def test_first_mover_objectives(self):
        report = evaluate_objectives(TULLOCK, Contest((1, 2)))
        self.assertAlmostEqual(report.total_effort, 0.75, places=9)
        self.assertAlmostEqual(report.highest_effort, 0.375, places=9)
        self.assertAlmostEqual(report.lowest_effort, 0.1875, places=9)
        self.assertAlmostEqual(report.effort_inequality, 0.1875, places=9)
        self.assertAlmostEqual(report.highest_payoff, 0.125, places=9)
        self.assertAlmostEqual(report.total_welfare, 0.25, places=9)
        self.assertEqual(set(report.to_record()), set(OBJECTIVES))

    def test_simultaneous_has_no_inequality(self):
        report = evaluate_objectives(TULLOCK, Contest((4,)))
        self.assertEqual(report.effort_inequality, 0.0)
        self.assertEqual(report.payoff_inequality, 0.0)

    def test_unknown_objective(self):
        report = evaluate_objectives(TULLOCK, Contest((2,)))
        with self.assertRaises(ValueError):
            report.value('median_effort')


class SearchTests(SimpleTestCase):

    def test_highest_payoff_min_three_players(self):
        result = search(TULLOCK, 3, 'highest_payoff', 'min')
        self.assertEqual(result.argopt, (Contest((2, 1)),))
        self.assertAlmostEqual(result.optimal_value, 0.09375, places=9)
        self.assertEqual(result.excluded, 0)

    def test_highest_effort_max_three_players(self):
        result = search(TULLOCK, 3, 'highest_effort', 'max')
        self.assertEqual(result.argopt, (Contest((1, 2)),))
        self.assertAlmostEqual(result.optimal_value, 0.375, places=9)

    def test_highest_payoff_max_seven_players(self):
        self.assertEqual(search(TULLOCK, 7, 'highest_payoff', 'max').argopt, (Contest((1, 6)),))

    def test_two_players(self):
        table = evaluate_all(LINEAR, 2)
        self.assertEqual([row.contest for row in table.rows], [Contest((2,)), Contest((1, 1))])
        self.assertEqual(search_table(table, 'total_effort', 'max').argopt, (Contest((1, 1)),))

    def test_ties_are_all_returned(self):
        table = evaluate_all(TULLOCK, 4)
        result = search_table(table, 'highest_effort', 'max')
        self.assertEqual(set(result.argopt), {Contest((1, 2, 1)), Contest((1, 1, 2))})

    def test_invalid_arguments(self):
        with self.assertRaises(ContestSpecError):
            evaluate_all(TULLOCK, 1)
        with self.assertRaises(ValueError):
            search(TULLOCK, 3, 'median_effort', 'min')
        with self.assertRaises(ValueError):
            search_table(evaluate_all(TULLOCK, 2), 'total_effort', 'sideways')

    def test_parallel_table_matches_serial(self):
        serial = evaluate_all(TULLOCK, 6, jobs=1)
        parallel = evaluate_all(TULLOCK, 6, jobs=2)
        self.assertEqual([row.contest for row in serial.rows], [row.contest for row in parallel.rows])
        self.assertEqual([row.report for row in serial.rows], [row.report for row in parallel.rows])


class TullockPropositionTests(SimpleTestCase):
    """Propositions and the summary table, checked by exhaustive search for 3 <= n <= 12."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.tables = {n: evaluate_all(TULLOCK, n) for n in range(3, 13)}

    def test_all_claims_pass(self):
        for n, table in self.tables.items():
            for check in check_table(table, DEFAULT_OPTIONS.tie_tolerance):
                self.assertEqual(check.status, PASS, f"{check.proposition} at n={n}: {check.witnesses}")

    def test_highest_effort_maximizers_pair_the_followers(self):
        for n, table in self.tables.items():
            argopt = search_table(table, 'highest_effort', 'max').argopt
            self.assertTrue(argopt)
            self.assertTrue(all(contest.is_leader_pairwise for contest in argopt), f"n={n}: {argopt}")

    def test_first_mover_maximizes_highest_payoff(self):
        for n, table in self.tables.items():
            self.assertEqual(search_table(table, 'highest_payoff', 'max').argopt, (Contest.first_mover(n),))
            self.assertEqual(search_table(table, 'payoff_inequality', 'max').argopt, (Contest.first_mover(n),))

    def test_sequential_maximizes_effort_inequality(self):
        for n, table in self.tables.items():
            self.assertEqual(search_table(table, 'effort_inequality', 'max').argopt, (Contest.sequential(n),))

    def test_payoff_inequality_scales_effort_inequality(self):
        for n, table in self.tables.items():
            for row in table.rows:
                report = row.report
                self.assertAlmostEqual(report.payoff_inequality,
                                       report.effort_inequality * row.outcome.h_at_x_star, delta=1e-8)

    def test_every_contest_solves(self):
        for table in self.tables.values():
            self.assertEqual(table.excluded, 0)


class VerificationReportTests(SimpleTestCase):

    def test_two_player_tullock_is_skipped_not_failed(self):
        report = verify_propositions(TULLOCK, [2])
        self.assertTrue(report.passed)
        self.assertEqual(report.by_status(FAIL), ())
        self.assertTrue(report.by_status(SKIPPED))
        skipped = report.by_status(SKIPPED)[0]
        self.assertIn('outside theory', skipped.detail)

    def test_linear_model_propositions(self):
        report = verify_propositions(LINEAR, range(2, 9), include_summary=False)
        self.assertEqual({check.status for check in report.checks}, {PASS})
        self.assertEqual(len(report.checks), 5 * 7)

    def test_invalid_player_count_is_reported(self):
        report = verify_propositions(TULLOCK, [1])
        self.assertFalse(report.passed)
        self.assertEqual(report.checks[0].proposition, 'evaluation')
        self.assertIn('ContestSpecError', report.checks[0].detail)

    def test_records(self):
        report = verify_propositions(TULLOCK, [3])
        records = report.to_records()
        self.assertEqual(len(records), 5 + 16)
        self.assertEqual(records[0]['proposition'], 'P1')
        self.assertIn('summary:highest_payoff:min', {record['proposition'] for record in records})
