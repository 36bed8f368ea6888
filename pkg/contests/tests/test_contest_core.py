import itertools

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, strategies as st

from contests.services.contest_core import (
    Contest,
    enumerate_contests,
    info_measures,
    refines,
    strictly_refines,
    subcontest,
)
from contests.services.errors import ContestSpecError

periods_strategy = st.lists(st.integers(min_value=1, max_value=6), min_size=1, max_size=6)


class ContestTests(SimpleTestCase):

    def test_named_constructors(self):
        self.assertEqual(Contest.simultaneous(4).periods, (4,))
        self.assertEqual(Contest.sequential(3).periods, (1, 1, 1))
        self.assertEqual(Contest.first_mover(5).periods, (1, 4))

    def test_invalid_contests(self):
        with self.assertRaises(ContestSpecError):
            Contest(())
        with self.assertRaises(ContestSpecError):
            Contest((2, 0))
        with self.assertRaises(ContestSpecError):
            Contest.parse('1,x')
        with self.assertRaises(ContestSpecError):
            Contest.first_mover(1)

    def test_parse_and_label(self):
        contest = Contest.parse('1, 2,2,1')
        self.assertEqual(contest.periods, (1, 2, 2, 1))
        self.assertEqual(contest.label, '1,2,2,1')
        self.assertEqual(str(contest), '(1,2,2,1)')
        self.assertEqual(contest.n, 6)
        self.assertEqual(contest.num_periods, 4)

    def test_contest_id_matches_disclosure_positions(self):
        self.assertEqual(Contest((3,)).contest_id, 0)
        self.assertEqual(Contest((1, 2)).contest_id, 1)
        self.assertEqual(Contest((2, 1)).contest_id, 2)
        self.assertEqual(Contest((1, 1, 1)).contest_id, 3)

    def test_from_id_inverts_contest_id(self):
        for n in range(1, 11):
            for contest_id in range(2 ** (n - 1)):
                contest = Contest.from_id(n, contest_id)
                self.assertEqual(contest.n, n)
                self.assertEqual(contest.contest_id, contest_id)
        with self.assertRaises(ContestSpecError):
            Contest.from_id(3, 4)

    def test_shape_predicates(self):
        self.assertTrue(Contest((1, 2, 2)).is_leader_pairwise)
        self.assertTrue(Contest((1, 2, 1)).is_leader_pairwise)
        self.assertTrue(Contest((1, 1, 2)).is_leader_pairwise)
        self.assertFalse(Contest((1, 1, 1, 2)).is_leader_pairwise)
        self.assertFalse(Contest((2, 2, 1)).is_leader_pairwise)
        self.assertTrue(Contest((2, 1, 1)).is_two_then_singletons)
        self.assertFalse(Contest((1, 2, 1)).is_two_then_singletons)
        self.assertTrue(Contest((1, 3)).is_first_mover)
        self.assertTrue(Contest((1, 3)).is_single_leader)
        self.assertTrue(Contest((1,)).is_simultaneous)
        self.assertTrue(Contest((1,)).is_sequential)


class InfoMeasuresTests(SimpleTestCase):

    def test_examples(self):
        self.assertEqual(info_measures(Contest((1, 2, 3))).values, (6, 11, 6))
        self.assertEqual(info_measures(Contest((2, 2))).values, (4, 4))
        self.assertEqual(info_measures(Contest((5,))).values, (5,))
        self.assertEqual(info_measures(Contest.sequential(4)).values, (4, 6, 4, 1))
        self.assertEqual(info_measures(None).values, ())

    def test_one_indexed_access(self):
        measures = info_measures(Contest((1, 2, 3)))
        self.assertEqual(measures[1], 6)
        self.assertEqual(measures[3], 6)
        self.assertEqual(len(measures), 3)
        with self.assertRaises(IndexError):
            measures[0]

    def test_player_limit(self):
        with self.assertRaises(ContestSpecError):
            info_measures(Contest((3, 3)), max_players=5)

    @given(periods_strategy, st.randoms())
    def test_permutation_invariant(self, periods, random):
        shuffled = list(periods)
        random.shuffle(shuffled)
        self.assertEqual(info_measures(Contest(tuple(periods))), info_measures(Contest(tuple(shuffled))))

    @given(periods_strategy)
    def test_matches_polynomial_expansion(self, periods):
        # prod_t (z + n_t) has the measures as its lower coefficients
        coefficients = np.poly([-size for size in periods])
        expected = tuple(int(round(c)) for c in coefficients[1:])
        self.assertEqual(info_measures(Contest(tuple(periods))).values, expected)
        self.assertEqual(info_measures(Contest(tuple(periods)))[1], sum(periods))


class SubcontestTests(SimpleTestCase):

    def test_examples(self):
        contest = Contest((1, 2, 2, 1))
        self.assertEqual(subcontest(contest, 0), contest)
        self.assertEqual(subcontest(contest, 1), Contest((2, 2, 1)))
        self.assertEqual(subcontest(contest, 3), Contest((1,)))
        self.assertIsNone(subcontest(contest, 4))

    def test_out_of_range(self):
        with self.assertRaises(ContestSpecError):
            subcontest(Contest((1, 2)), 3)
        with self.assertRaises(ContestSpecError):
            subcontest(Contest((1, 2)), -1)


class RefinementTests(SimpleTestCase):

    def test_examples(self):
        self.assertTrue(refines(Contest((1, 1, 2)), Contest((2, 2))))
        self.assertFalse(refines(Contest((1, 2, 1)), Contest((2, 2))))
        self.assertTrue(refines(Contest((1, 1, 1)), Contest((3,))))
        self.assertTrue(refines(Contest((2, 1)), Contest((2, 1))))
        self.assertFalse(strictly_refines(Contest((2, 1)), Contest((2, 1))))

    def test_player_count_mismatch(self):
        with self.assertRaises(ContestSpecError):
            refines(Contest((1, 1)), Contest((3,)))

    def test_partial_order(self):
        for n in range(1, 8):
            contests = list(enumerate_contests(n))
            simultaneous, sequential = Contest.simultaneous(n), Contest.sequential(n)
            for a in contests:
                self.assertTrue(refines(a, a))
                self.assertTrue(refines(a, simultaneous))
                self.assertTrue(refines(sequential, a))
            for a, b in itertools.product(contests, repeat=2):
                if a != b and refines(a, b):
                    self.assertFalse(refines(b, a))
            for a, b, c in itertools.product(contests, repeat=3):
                if refines(a, b) and refines(b, c):
                    self.assertTrue(refines(a, c))

    def test_refinement_merges_consecutive_periods(self):
        for n in range(2, 9):
            for finer in enumerate_contests(n):
                for coarser in enumerate_contests(n):
                    if not refines(finer, coarser):
                        continue
                    # every coarser block is a run of consecutive finer blocks
                    boundaries = set(np.cumsum(finer.periods))
                    self.assertTrue(set(np.cumsum(coarser.periods)) <= boundaries)


class EnumerationTests(SimpleTestCase):

    def test_counts(self):
        for n in range(1, 13):
            self.assertEqual(len(list(enumerate_contests(n))), 2 ** (n - 1))
        total = sum(len(list(enumerate_contests(n))) for n in range(2, 13))
        self.assertEqual(total, 4094)

    def test_order(self):
        self.assertEqual(
            [c.periods for c in enumerate_contests(3)],
            [(3,), (1, 2), (2, 1), (1, 1, 1)],
        )
        ids = [c.contest_id for c in enumerate_contests(8)]
        self.assertEqual(ids, sorted(ids))
        self.assertEqual(len(set(enumerate_contests(8))), 128)

    def test_out_of_range(self):
        with self.assertRaises(ContestSpecError):
            list(enumerate_contests(0))
        with self.assertRaises(ContestSpecError):
            list(enumerate_contests(20, max_n=16))
