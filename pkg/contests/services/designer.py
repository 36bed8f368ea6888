"""
Designer objectives, exhaustive search and proposition checks.

Every contest of a player count is solved once; the resulting table feeds
all sixteen (objective, direction) searches for that count.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Iterable

from .config import DEFAULT_OPTIONS, SolverOptions
from .contest_core import Contest, enumerate_contests, strictly_refines
from .equilibrium import EquilibriumOutcome, solve_equilibrium
from .errors import ContestError, ContestSpecError
from .payoff_model import MarginalBenefit

logger = logging.getLogger(__name__)

OBJECTIVES = (
    'total_effort',
    'total_welfare',
    'lowest_effort',
    'lowest_payoff',
    'highest_effort',
    'highest_payoff',
    'effort_inequality',
    'payoff_inequality',
)
DIRECTIONS = ('min', 'max')

PASS = 'PASS'
FAIL = 'FAIL'
SKIPPED = 'SKIPPED'


@dataclass(frozen=True)
class ObjectiveReport:
    total_effort: float
    total_welfare: float
    lowest_effort: float
    lowest_payoff: float
    highest_effort: float
    highest_payoff: float
    effort_inequality: float
    payoff_inequality: float

    @classmethod
    def from_outcome(cls, outcome: EquilibriumOutcome) -> 'ObjectiveReport':
        # earlier movers exert more, so the extremes sit in the first and last periods
        efforts, payoffs = outcome.period_efforts, outcome.period_payoffs
        return cls(
            total_effort=outcome.x_star,
            total_welfare=outcome.welfare,
            lowest_effort=efforts[-1],
            lowest_payoff=payoffs[-1],
            highest_effort=efforts[0],
            highest_payoff=payoffs[0],
            effort_inequality=efforts[0] - efforts[-1],
            payoff_inequality=payoffs[0] - payoffs[-1],
        )

    def value(self, objective: str) -> float:
        if objective not in OBJECTIVES:
            raise ValueError(f"unknown objective '{objective}'")
        return getattr(self, objective)

    def to_record(self) -> dict:
        return {name: getattr(self, name) for name in OBJECTIVES}


def evaluate_objectives(model: MarginalBenefit, contest: Contest,
                        options: SolverOptions = DEFAULT_OPTIONS) -> ObjectiveReport:
    return ObjectiveReport.from_outcome(solve_equilibrium(model, contest, options))


@dataclass(frozen=True)
class EvaluatedContest:
    """One row of a search table; failed solves keep their error message."""
    contest: Contest
    outcome: EquilibriumOutcome | None = None
    report: ObjectiveReport | None = None
    error_message: str = ''

    @property
    def success(self) -> bool:
        return self.report is not None

    @property
    def outside_theory(self) -> bool:
        if not self.success:
            return True
        return self.outcome.flags is not None and self.outcome.flags.outside_theory


def _evaluate_one(contest: Contest, model: MarginalBenefit, options: SolverOptions) -> EvaluatedContest:
    try:
        outcome = solve_equilibrium(model, contest, options)
        return EvaluatedContest(contest, outcome, ObjectiveReport.from_outcome(outcome))
    except ContestError as e:
        logger.warning(f"Excluding {contest}: {type(e).__name__}: {e}")
        return EvaluatedContest(contest, error_message=f"{type(e).__name__}: {e}")


@dataclass(frozen=True)
class ContestTable:
    """All contests of one player count, in contest-id order."""
    model: MarginalBenefit
    n: int
    rows: tuple[EvaluatedContest, ...]

    @property
    def solved(self) -> tuple[EvaluatedContest, ...]:
        return tuple(row for row in self.rows if row.success)

    @property
    def excluded(self) -> int:
        return len(self.rows) - len(self.solved)

    @property
    def outside_theory(self) -> tuple[Contest, ...]:
        return tuple(row.contest for row in self.rows if row.outside_theory)


def evaluate_all(model: MarginalBenefit, n: int, options: SolverOptions = DEFAULT_OPTIONS,
                 jobs: int = 1) -> ContestTable:
    """
    Solve every composition of n.

    With jobs > 1 the contests are spread over a process pool; results come
    back in submission order, so the table does not depend on scheduling.
    """
    if not 2 <= n <= options.max_exhaustive_n:
        raise ContestSpecError(f"exhaustive search needs 2 <= n <= {options.max_exhaustive_n}, got {n}")
    contests = list(enumerate_contests(n, options.max_players))
    worker = partial(_evaluate_one, model=model, options=options)
    if jobs > 1 and len(contests) > 1:
        chunksize = max(1, len(contests) // (4 * jobs))
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            rows = tuple(executor.map(worker, contests, chunksize=chunksize))
    else:
        rows = tuple(worker(contest) for contest in contests)
    table = ContestTable(model, n, rows)
    logger.info(f"Evaluated {len(rows)} contests for n={n} ({table.excluded} excluded)")
    return table


@dataclass(frozen=True)
class SearchResult:
    objective: str
    direction: str
    n: int
    optimal_value: float
    argopt: tuple[Contest, ...]
    excluded: int = 0
    table: ContestTable | None = field(default=None, compare=False, repr=False)

    def to_record(self) -> dict:
        return {
            'objective': self.objective,
            'direction': self.direction,
            'n': self.n,
            'optimal_value': self.optimal_value,
            'argopt': [contest.label for contest in self.argopt],
            'excluded': self.excluded,
        }


def search_table(table: ContestTable, objective: str, direction: str,
                 tie_tolerance: float = DEFAULT_OPTIONS.tie_tolerance) -> SearchResult:
    """Optimum of one objective over a solved table, with every tied contest."""
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}, got '{direction}'")
    solved = table.solved
    if not solved:
        raise ContestError(f"no contest with n={table.n} could be solved")
    values = [row.report.value(objective) for row in solved]
    optimum = min(values) if direction == 'min' else max(values)
    argopt = tuple(row.contest for row, value in zip(solved, values) if abs(value - optimum) <= tie_tolerance)
    return SearchResult(objective, direction, table.n, optimum, argopt, table.excluded, table)


def search(model: MarginalBenefit, n: int, objective: str, direction: str,
           options: SolverOptions = DEFAULT_OPTIONS, jobs: int = 1) -> SearchResult:
    """Exhaustive search over all 2^(n-1) contests; failed solves are excluded and counted."""
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective '{objective}'")
    return search_table(evaluate_all(model, n, options, jobs), objective, direction, options.tie_tolerance)


@dataclass(frozen=True)
class PropositionCheck:
    proposition: str
    n: int
    status: str
    witnesses: tuple[str, ...] = ()
    detail: str = ''

    def to_record(self) -> dict:
        return {
            'proposition': self.proposition,
            'n': self.n,
            'status': self.status,
            'witnesses': list(self.witnesses),
            'detail': self.detail,
        }


@dataclass(frozen=True)
class VerificationReport:
    model: MarginalBenefit
    checks: tuple[PropositionCheck, ...]

    @property
    def passed(self) -> bool:
        return all(check.status != FAIL for check in self.checks)

    def by_status(self, status: str) -> tuple[PropositionCheck, ...]:
        return tuple(check for check in self.checks if check.status == status)

    def to_records(self) -> list[dict]:
        return [check.to_record() for check in self.checks]


def _only(argopt: Iterable[Contest], expected: Contest) -> bool:
    return set(argopt) == {expected}


def _none_strictly_refines(finer_set, coarser_set) -> bool:
    return not any(strictly_refines(a, b) for a in finer_set for b in coarser_set)


def _proposition_claims(results: dict[tuple[str, str], SearchResult], n: int) -> dict[str, tuple[bool, tuple]]:
    """Each claim as (holds, witness contests)."""
    simultaneous, sequential = Contest.simultaneous(n), Contest.sequential(n)
    arg = {key: result.argopt for key, result in results.items()}

    def leaders(contests):
        return all(c.is_single_leader for c in contests)

    effort_max = arg['highest_effort', 'max']
    payoff_max = arg['highest_payoff', 'max']
    ineq_max = arg['effort_inequality', 'max']
    pay_ineq_max = arg['payoff_inequality', 'max']
    return {
        'P1': (
            _only(arg['total_effort', 'min'], simultaneous) and _only(arg['total_effort', 'max'], sequential)
            and _only(arg['total_welfare', 'min'], sequential) and _only(arg['total_welfare', 'max'], simultaneous),
            arg['total_effort', 'min'] + arg['total_effort', 'max'],
        ),
        'P2': (
            all(_only(arg[objective, 'min'], sequential) and _only(arg[objective, 'max'], simultaneous)
                for objective in ('lowest_effort', 'lowest_payoff')),
            arg['lowest_effort', 'min'] + arg['lowest_effort', 'max'],
        ),
        'P3': (
            _only(arg['highest_effort', 'min'], simultaneous) and leaders(effort_max),
            effort_max,
        ),
        'P4': (
            all(c.periods[0] >= max(c.periods) for c in arg['highest_payoff', 'min'])
            and leaders(payoff_max)
            and _none_strictly_refines(payoff_max, effort_max),
            arg['highest_payoff', 'min'] + payoff_max,
        ),
        'P5': (
            _only(arg['effort_inequality', 'min'], simultaneous)
            and _only(arg['payoff_inequality', 'min'], simultaneous)
            and leaders(ineq_max)
            and _none_strictly_refines(effort_max, ineq_max)
            and leaders(pay_ineq_max)
            and _none_strictly_refines(payoff_max, pay_ineq_max)
            and _none_strictly_refines(pay_ineq_max, ineq_max),
            ineq_max + pay_ineq_max,
        ),
    }


def summary_expectations(n: int) -> dict[tuple[str, str], Callable[[tuple[Contest, ...]], bool]]:
    """Expected optimal contest for each (objective, direction) cell."""
    simultaneous, sequential = Contest.simultaneous(n), Contest.sequential(n)
    first_mover = Contest.first_mover(n)
    two_then_singletons = Contest((2,) + (1,) * (n - 2))

    def exactly(contest):
        return lambda argopt: _only(argopt, contest)

    return {
        ('total_effort', 'min'): exactly(simultaneous),
        ('total_effort', 'max'): exactly(sequential),
        ('total_welfare', 'min'): exactly(sequential),
        ('total_welfare', 'max'): exactly(simultaneous),
        ('lowest_effort', 'min'): exactly(sequential),
        ('lowest_effort', 'max'): exactly(simultaneous),
        ('lowest_payoff', 'min'): exactly(sequential),
        ('lowest_payoff', 'max'): exactly(simultaneous),
        ('highest_effort', 'min'): exactly(simultaneous),
        ('highest_effort', 'max'): lambda argopt: all(c.is_single_leader for c in argopt),
        ('highest_payoff', 'min'): exactly(two_then_singletons),
        ('highest_payoff', 'max'): exactly(first_mover),
        ('effort_inequality', 'min'): exactly(simultaneous),
        ('effort_inequality', 'max'): exactly(sequential),
        ('payoff_inequality', 'min'): exactly(simultaneous),
        ('payoff_inequality', 'max'): exactly(first_mover),
    }


def _status(holds: bool, table: ContestTable) -> str:
    if holds:
        return PASS
    return SKIPPED if table.outside_theory else FAIL


def check_table(table: ContestTable, tie_tolerance: float = DEFAULT_OPTIONS.tie_tolerance,
                include_summary: bool = True) -> list[PropositionCheck]:
    """Proposition and summary-cell checks for one solved table."""
    n = table.n
    results = {
        (objective, direction): search_table(table, objective, direction, tie_tolerance)
        for objective in OBJECTIVES for direction in DIRECTIONS
    }
    skipped_detail = ''
    if table.outside_theory:
        skipped_detail = 'outside theory: ' + ' '.join(str(c) for c in table.outside_theory)

    checks = []
    for name, (holds, witnesses) in _proposition_claims(results, n).items():
        status = _status(holds, table)
        checks.append(PropositionCheck(name, n, status, tuple(c.label for c in witnesses),
                                       skipped_detail if status == SKIPPED else ''))
    if include_summary:
        for (objective, direction), expected in summary_expectations(n).items():
            argopt = results[objective, direction].argopt
            status = _status(expected(argopt), table)
            checks.append(PropositionCheck(f"summary:{objective}:{direction}", n, status,
                                           tuple(c.label for c in argopt),
                                           skipped_detail if status == SKIPPED else ''))
    for check in checks:
        if check.status == FAIL:
            logger.warning(f"{check.proposition} fails at n={n}: witnesses {check.witnesses}")
    return checks


def verify_propositions(model: MarginalBenefit, n_range: Iterable[int],
                        options: SolverOptions = DEFAULT_OPTIONS, jobs: int = 1,
                        include_summary: bool = True) -> VerificationReport:
    """
    Check every proposition for each n in n_range against exhaustive search.

    Never raises: a player count whose table cannot be built is reported as a
    FAIL with the error in its detail.
    """
    checks = []
    for n in n_range:
        try:
            table = evaluate_all(model, n, options, jobs)
            checks.extend(check_table(table, options.tie_tolerance, include_summary))
        except Exception as e:
            logger.error(f"Verification failed for n={n}: {e}", exc_info=True)
            checks.append(PropositionCheck('evaluation', n, FAIL, detail=f"{type(e).__name__}: {e}"))
    report = VerificationReport(model, tuple(checks))
    logger.info(f"Verified {len(checks)} claims under {model.label}: "
                f"{len(report.by_status(FAIL))} failed, {len(report.by_status(SKIPPED))} skipped")
    return report
