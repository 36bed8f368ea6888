"""
Disclosure structures as integer compositions.

A contest (n_1, ..., n_T) is identified by the bitmask of its disclosure
positions: bit j-1 is set when efforts are disclosed after player j, for
j = 1..n-1. Refinement is then a subset test on the bitmasks.
"""

import logging
from dataclasses import dataclass
from typing import Iterator

from .errors import ContestSpecError

logger = logging.getLogger(__name__)

DEFAULT_MAX_PLAYERS = 64


@dataclass(frozen=True)
class Contest:
    """Ordered composition (n_1, ..., n_T) of the player count."""
    periods: tuple[int, ...]

    def __post_init__(self):
        periods = tuple(self.periods)
        if not periods:
            raise ContestSpecError("a contest needs at least one period")
        if any(not isinstance(size, int) or isinstance(size, bool) or size < 1 for size in periods):
            raise ContestSpecError(f"period sizes must be positive integers, got {periods}")
        object.__setattr__(self, 'periods', periods)

    @classmethod
    def simultaneous(cls, n: int) -> 'Contest':
        return cls((n,))

    @classmethod
    def sequential(cls, n: int) -> 'Contest':
        return cls((1,) * n)

    @classmethod
    def first_mover(cls, n: int) -> 'Contest':
        if n < 2:
            raise ContestSpecError("a first-mover contest needs at least two players")
        return cls((1, n - 1))

    @classmethod
    def from_id(cls, n: int, contest_id: int) -> 'Contest':
        """Rebuild the contest whose disclosure bitmask is contest_id."""
        if n < 1 or not 0 <= contest_id < 2 ** (n - 1):
            raise ContestSpecError(f"contest id {contest_id} is out of range for n={n}")
        periods = []
        size = 0
        for player in range(1, n):
            size += 1
            if contest_id >> (player - 1) & 1:
                periods.append(size)
                size = 0
        periods.append(size + 1)
        return cls(tuple(periods))

    @classmethod
    def parse(cls, text: str) -> 'Contest':
        """Parse the comma literal "1,2,2,1"."""
        try:
            return cls(tuple(int(part) for part in text.replace(' ', '').split(',')))
        except ValueError as e:
            raise ContestSpecError(f"invalid contest literal '{text}': {e}") from e

    @property
    def n(self) -> int:
        return sum(self.periods)

    @property
    def num_periods(self) -> int:
        return len(self.periods)

    @property
    def contest_id(self) -> int:
        contest_id = 0
        position = 0
        for size in self.periods[:-1]:
            position += size
            contest_id |= 1 << (position - 1)
        return contest_id

    @property
    def label(self) -> str:
        return ','.join(str(size) for size in self.periods)

    def __str__(self):
        return f"({self.label})"

    @property
    def is_simultaneous(self) -> bool:
        return self.num_periods == 1

    @property
    def is_sequential(self) -> bool:
        return all(size == 1 for size in self.periods)

    @property
    def is_first_mover(self) -> bool:
        return self.n >= 2 and self.periods == (1, self.n - 1)

    @property
    def is_single_leader(self) -> bool:
        return self.periods[0] == 1

    @property
    def is_leader_pairwise(self) -> bool:
        """
        Single leader, followers in pairs plus one singleton when n is even.

        The singleton may sit in any follower period: permuting the followers
        leaves the leader's effort unchanged.
        """
        followers = self.n - 1
        pattern = [2] * (followers // 2) + ([1] if followers % 2 else [])
        return self.n >= 2 and self.periods[0] == 1 and sorted(self.periods[1:]) == sorted(pattern)

    @property
    def is_two_then_singletons(self) -> bool:
        return self.n >= 2 and self.periods == (2,) + (1,) * (self.n - 2)


@dataclass(frozen=True)
class InfoMeasures:
    """S_k(n) for k = 1..T: elementary symmetric polynomials of the periods."""
    values: tuple[int, ...]

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k: int) -> int:
        """S_k, 1-indexed as in f_t(X) = X - sum_k S_k g_k(X)."""
        if not 1 <= k <= len(self.values):
            raise IndexError(f"S_{k} is undefined for {len(self.values)} periods")
        return self.values[k - 1]


def info_measures(contest: Contest | None, max_players: int = DEFAULT_MAX_PLAYERS) -> InfoMeasures:
    """
    Elementary symmetric polynomials of the period sizes.

    Uses the product recurrence for prod_t (z + n_t) in exact integers; the
    empty subcontest (None) has no measures.
    """
    if contest is None:
        return InfoMeasures(())
    if contest.n > max_players:
        raise ContestSpecError(f"{contest.n} players exceed the configured maximum {max_players}")
    coefficients = [1]
    for size in contest.periods:
        coefficients = [
            (coefficients[k] if k < len(coefficients) else 0)
            + (size * coefficients[k - 1] if k >= 1 else 0)
            for k in range(len(coefficients) + 1)
        ]
    return InfoMeasures(tuple(coefficients[1:]))


def subcontest(contest: Contest, t: int) -> Contest | None:
    """Periods after period t: (n_{t+1}, ..., n_T); None when t = T."""
    if not 0 <= t <= contest.num_periods:
        raise ContestSpecError(f"period index {t} is out of range 0..{contest.num_periods}")
    if t == contest.num_periods:
        return None
    if t == 0:
        return contest
    return Contest(contest.periods[t:])


def refines(finer: Contest, coarser: Contest) -> bool:
    """True when coarser arises from finer by merging consecutive periods."""
    if finer.n != coarser.n:
        raise ContestSpecError(f"cannot compare contests with {finer.n} and {coarser.n} players")
    return coarser.contest_id & ~finer.contest_id == 0


def strictly_refines(finer: Contest, coarser: Contest) -> bool:
    return finer != coarser and refines(finer, coarser)


def enumerate_contests(n: int, max_n: int = DEFAULT_MAX_PLAYERS) -> Iterator[Contest]:
    """All 2^(n-1) compositions of n in ascending contest-id order."""
    if not 1 <= n <= max_n:
        raise ContestSpecError(f"n={n} is out of range 1..{max_n}")
    logger.debug(f"Enumerating {2 ** (n - 1)} contests for n={n}")
    for contest_id in range(2 ** (n - 1)):
        yield Contest.from_id(n, contest_id)
