"""
Competitive-limit approximations and closed-form extremal contests.

Near the limit, a player in period s exerts about X̄ / prod_{k<=s}(1 + n_k)
and h(X*) is about alpha * X̄ / prod_k (1 + n_k). The i-th highest effort or
payoff then has closed-form minimizers and maximizers, which this module
returns and cross-checks against exhaustive search.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .config import DEFAULT_OPTIONS, SolverOptions
from .contest_core import Contest, enumerate_contests
from .designer import DIRECTIONS, ContestTable, SearchResult, evaluate_all
from .equilibrium import EquilibriumOutcome, solve_equilibrium
from .errors import ContestSpecError
from .payoff_model import MarginalBenefit

logger = logging.getLogger(__name__)

KINDS = ('effort', 'payoff')
RELATIVE_TIE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ApproxOutcome:
    contest: Contest
    approx_efforts: tuple[float, ...]
    approx_h: float
    approx_X: float

    @property
    def approx_payoffs(self) -> tuple[float, ...]:
        return tuple(effort * self.approx_h for effort in self.approx_efforts)


def approx_equilibrium(model: MarginalBenefit, contest: Contest) -> ApproxOutcome:
    products = np.cumprod([1.0 + size for size in contest.periods])
    return ApproxOutcome(
        contest=contest,
        approx_efforts=tuple(float(model.xbar / p) for p in products),
        approx_h=float(model.alpha * model.xbar / products[-1]),
        approx_X=float(model.xbar * (1.0 - 1.0 / products[-1])),
    )


def player_period(contest: Contest, i: int) -> int:
    """0-based period of the i-th player (1-indexed)."""
    if not 1 <= i <= contest.n:
        raise ContestSpecError(f"player {i} is out of range 1..{contest.n}")
    return int(np.searchsorted(np.cumsum(contest.periods), i))


def ith_value(efforts: tuple[float, ...], payoffs: tuple[float, ...], contest: Contest, i: int, kind: str) -> float:
    """i-th highest effort or payoff; earlier periods rank higher."""
    period = player_period(contest, i)
    if kind == 'effort':
        return efforts[period]
    if kind == 'payoff':
        return payoffs[period]
    raise ValueError(f"kind must be one of {KINDS}, got '{kind}'")


@dataclass(frozen=True)
class ExtremalResult:
    """
    Closed-form extremal contests.

    When first_period is set, every contest whose first period has that size
    is optimal and `contests` holds the canonical representative.
    """
    n: int
    i: int
    kind: str
    direction: str
    contests: tuple[Contest, ...]
    first_period: int | None = None
    regime: str = 'linear h or large n'

    @property
    def is_family(self) -> bool:
        return self.first_period is not None

    def matches(self, contest: Contest) -> bool:
        if self.first_period is not None:
            return contest.periods[0] == self.first_period
        return contest in self.contests

    def to_record(self) -> dict:
        return {
            'n': self.n,
            'i': self.i,
            'kind': self.kind,
            'direction': self.direction,
            'contests': [c.label for c in self.contests],
            'family_first_period': self.first_period,
            'regime': self.regime,
        }


def _check_index(n: int, i: int, direction: str):
    if n < 1 or not 1 <= i <= n:
        raise ContestSpecError(f"i={i} is out of range 1..{n}")
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}, got '{direction}'")


def ith_effort_extremal(n: int, i: int, direction: str) -> ExtremalResult:
    """
    Contest minimizing or maximizing the i-th highest effort.

    The minimizer puts i - 1 singletons ahead of one block of n + 1 - i; any
    contest with i players in the first period maximizes.
    """
    _check_index(n, i, direction)
    if direction == 'min':
        return ExtremalResult(n, i, 'effort', direction, (Contest((1,) * (i - 1) + (n + 1 - i,)),))
    canonical = Contest((n,)) if i == n else Contest((i, n - i))
    return ExtremalResult(n, i, 'effort', direction, (canonical,), first_period=i)


def payoff_threshold(n: int) -> float:
    """ī = -1/2 + sqrt(5/4 + n); (i, n - i) beats (n) for i below it."""
    return -0.5 + math.sqrt(1.25 + n)


def ith_payoff_extremal(n: int, i: int, direction: str) -> ExtremalResult:
    """
    Contest minimizing or maximizing the i-th highest payoff.

    The maximizer compares (1+i)^2 (1+n-i) with (1+n)^2 in exact integers,
    which is the same test as i against ī; both contests come back on a tie.
    """
    _check_index(n, i, direction)
    if direction == 'min':
        if i == n:
            return ExtremalResult(n, i, 'payoff', direction, (Contest.sequential(n),))
        return ExtremalResult(n, i, 'payoff', direction, (Contest((1,) * (i - 1) + (2,) + (1,) * (n - i - 1)),))

    simultaneous = Contest.simultaneous(n)
    if i == n:
        return ExtremalResult(n, i, 'payoff', direction, (simultaneous,))
    split = (1 + i) ** 2 * (1 + n - i)
    single = (1 + n) ** 2
    if split < single:
        contests = (Contest((i, n - i)),)
    elif split == single:
        logger.info(f"Threshold tie at n={n}, i={i}: both (i, n-i) and (n) maximize")
        contests = (Contest((i, n - i)), simultaneous)
    else:
        contests = (simultaneous,)
    return ExtremalResult(n, i, 'payoff', direction, contests)


def ith_extremal(n: int, i: int, kind: str, direction: str) -> ExtremalResult:
    if kind == 'effort':
        return ith_effort_extremal(n, i, direction)
    if kind == 'payoff':
        return ith_payoff_extremal(n, i, direction)
    raise ValueError(f"kind must be one of {KINDS}, got '{kind}'")


def pool_size_weight(m: int) -> float:
    return (1 + m) ** 2 * 2.0 ** -m


def best_pool_size(limit: int = 16) -> int:
    """Block size maximizing (1+m)^2 2^-m over 1..limit, compared in integers."""
    return max(range(1, limit + 1), key=lambda m: ((1 + m) ** 2 * 2 ** (limit - m), -m))


def pool_size_stationary_point() -> float:
    """Continuous maximizer of (1+m)^2 2^-m."""
    return 2 / math.log(2) - 1


def _pick(values: list[float], direction: str, tolerance: float) -> tuple[float, list[int]]:
    optimum = min(values) if direction == 'min' else max(values)
    slack = tolerance * max(abs(optimum), 1.0)
    return optimum, [k for k, value in enumerate(values) if abs(value - optimum) <= slack]


def approx_search(model: MarginalBenefit, n: int, i: int, kind: str, direction: str,
                  options: SolverOptions = DEFAULT_OPTIONS) -> SearchResult:
    """Exhaustive search of the approximate i-th effort or payoff over all compositions of n."""
    _check_index(n, i, direction)
    contests = list(enumerate_contests(n, options.max_players))
    values = []
    for contest in contests:
        approx = approx_equilibrium(model, contest)
        values.append(ith_value(approx.approx_efforts, approx.approx_payoffs, contest, i, kind))
    optimum, winners = _pick(values, direction, RELATIVE_TIE_TOLERANCE)
    return SearchResult(f"approx_{kind}:{i}", direction, n, optimum, tuple(contests[k] for k in winners))


def exact_ith_search(table: ContestTable, i: int, kind: str, direction: str,
                     tie_tolerance: float = DEFAULT_OPTIONS.tie_tolerance) -> SearchResult:
    """Search of the exact i-th effort or payoff over a solved table."""
    _check_index(table.n, i, direction)
    solved = table.solved
    values = [
        ith_value(row.outcome.period_efforts, row.outcome.period_payoffs, row.contest, i, kind)
        for row in solved
    ]
    optimum = min(values) if direction == 'min' else max(values)
    argopt = tuple(row.contest for row, value in zip(solved, values) if abs(value - optimum) <= tie_tolerance)
    return SearchResult(f"{kind}:{i}", direction, table.n, optimum, argopt, table.excluded, table)


@dataclass(frozen=True)
class ApproxComparison:
    exact: EquilibriumOutcome
    approx: ApproxOutcome

    @property
    def contest(self) -> Contest:
        return self.exact.contest

    @property
    def total_gap(self) -> float:
        return abs(self.approx.approx_X - self.exact.x_star)

    def to_record(self) -> dict:
        return {
            'contest': self.contest.label,
            'exact_X': self.exact.x_star,
            'approx_X': self.approx.approx_X,
            'exact_efforts': list(self.exact.period_efforts),
            'approx_efforts': list(self.approx.approx_efforts),
        }


def compare_exact_approx(model: MarginalBenefit, contest: Contest,
                         options: SolverOptions = DEFAULT_OPTIONS) -> ApproxComparison:
    return ApproxComparison(solve_equilibrium(model, contest, options), approx_equilibrium(model, contest))


@dataclass(frozen=True)
class CrossoverResult:
    i: int
    kind: str
    direction: str
    agreement: tuple[tuple[int, bool], ...]

    @property
    def crossover_n(self) -> int | None:
        """Smallest n from which the closed form keeps matching the exact optimum."""
        crossover = None
        for n, agrees in self.agreement:
            if not agrees:
                crossover = None
            elif crossover is None:
                crossover = n
        return crossover


def empirical_crossover(model: MarginalBenefit, i: int, kind: str, direction: str,
                        n_range: Iterable[int], options: SolverOptions = DEFAULT_OPTIONS,
                        jobs: int = 1) -> CrossoverResult:
    """
    For each n >= i in n_range, whether the exact exhaustive optimum contains
    a closed-form extremal contest.
    """
    agreement = []
    for n in n_range:
        if n < max(i, 2):
            continue
        result = exact_ith_search(evaluate_all(model, n, options, jobs), i, kind, direction, options.tie_tolerance)
        closed_form = ith_extremal(n, i, kind, direction)
        agrees = any(closed_form.matches(contest) for contest in result.argopt)
        logger.debug(f"n={n}: exact {[c.label for c in result.argopt]} vs closed form {closed_form.to_record()}")
        agreement.append((n, agrees))
    return CrossoverResult(i, kind, direction, tuple(agreement))
