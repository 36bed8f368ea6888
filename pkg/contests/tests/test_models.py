from django.test import TestCase

from contests.models import ContestEvaluation, SearchRun
from contests.services.config import DEFAULT_OPTIONS
from contests.services.payoff_model import make_tullock
from contests.services.runs import record_search

TULLOCK = make_tullock(1, 1)


class RecordSearchTests(TestCase):

    def test_completed_run_stores_every_contest(self):
        run, result = record_search(TULLOCK, 'tullock:1,1', 4, 'highest_payoff', 'max', DEFAULT_OPTIONS)
        run.refresh_from_db()
        self.assertEqual(run.status, 'completed')
        self.assertIsNotNone(run.completed_at)
        self.assertEqual(run.evaluation_count, 8)
        self.assertEqual(run.excluded_count, 0)
        self.assertAlmostEqual(run.optimal_value, result.optimal_value)
        self.assertEqual([e.composition for e in run.optimal_contests], ['1,3'])
        self.assertEqual(list(run.evaluations.values_list('contest_id', flat=True)), list(range(8)))

    def test_failed_run_keeps_error(self):
        run, result = record_search(TULLOCK, 'tullock:1,1', 1, 'total_effort', 'min', DEFAULT_OPTIONS)
        self.assertIsNone(result)
        run.refresh_from_db()
        self.assertEqual(run.status, 'error')
        self.assertIn('got 1', run.error_message)
        self.assertEqual(run.evaluation_count, 0)

    def test_string_forms(self):
        run = SearchRun.objects.create(model_spec='linear:1,1', objective='total_effort', direction='min', players=3)
        evaluation = ContestEvaluation.objects.create(run=run, contest_id=1, composition='1,2', value=0.5)
        self.assertEqual(str(run), 'min total_effort n=3 (linear:1,1)')
        self.assertEqual(str(evaluation), '(1,2)')
        self.assertEqual(run.status, 'pending')
