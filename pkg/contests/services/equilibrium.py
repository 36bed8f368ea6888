"""
Characterization solver.

Total equilibrium effort X* is the highest root of
    f_0(X) = X - sum_{k=1}^{T} S_k(n) g_k(X),
and a player in period t (1-indexed) exerts
    x_t = g_1(X*) + sum_{k=1}^{T-t} S_k(n^t) g_{k+1}(X*).
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .config import DEFAULT_OPTIONS, SolverOptions
from .contest_core import Contest, info_measures, subcontest
from .errors import NegativeEffort, NonMonotoneAtRoot, NoRootFound, SolverError
from .payoff_model import DOMAIN_FLOOR, MarginalBenefit, g_tower, g_tower_with_slopes, grid_tower

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClauseResult:
    """One checked clause; violating_x is the first offending grid point."""
    clause: str
    index: int
    passed: bool
    violating_x: float | None = None


@dataclass(frozen=True)
class AssumptionDiagnostics:
    """Grid-level verdict on the well-behavedness and substitutes assumptions."""
    clauses: tuple[ClauseResult, ...]
    lowest_roots: tuple[float | None, ...]
    degenerate: bool

    @property
    def assumption1_ok(self) -> bool:
        return all(c.passed for c in self.clauses if c.clause != 'higher_order_substitutes')

    @property
    def assumption2_ok(self) -> bool:
        return all(c.passed for c in self.clauses if c.clause == 'higher_order_substitutes')

    @property
    def failures(self) -> tuple[ClauseResult, ...]:
        return tuple(c for c in self.clauses if not c.passed)


@dataclass(frozen=True)
class SolveFlags:
    assumption1_ok: bool
    assumption2_ok: bool
    degenerate: bool
    earlier_mover_strict: bool
    root_bracket: tuple[float, float]
    residual: float
    slope: float

    @property
    def outside_theory(self) -> bool:
        return self.degenerate or not (
            self.assumption1_ok and self.assumption2_ok and self.earlier_mover_strict
        )

    def to_record(self) -> dict:
        return {
            'assumption1_ok': self.assumption1_ok,
            'assumption2_ok': self.assumption2_ok,
            'degenerate': self.degenerate,
            'earlier_mover_strict': self.earlier_mover_strict,
            'root_bracket': list(self.root_bracket),
            'residual': self.residual,
            'slope': self.slope,
        }


@dataclass(frozen=True)
class EquilibriumOutcome:
    """Equilibrium of one contest; efforts and payoffs are per player, by period."""
    contest: Contest
    x_star: float
    period_efforts: tuple[float, ...]
    period_payoffs: tuple[float, ...]
    welfare: float
    h_at_x_star: float
    flags: SolveFlags | None = field(default=None, compare=False)

    def to_record(self) -> dict:
        return {
            'contest': self.contest.label,
            'contest_id': self.contest.contest_id,
            'X_star': self.x_star,
            'efforts': list(self.period_efforts),
            'payoffs': list(self.period_payoffs),
            'welfare': self.welfare,
            'flags': self.flags.to_record() if self.flags else {},
        }


def _measure_key(contest: Contest, t: int, options: SolverOptions) -> tuple[int, ...]:
    return info_measures(subcontest(contest, t), options.max_players).values


def _f_value(model, measures: tuple, x) -> float:
    return float(x - np.asarray(measures, dtype=float) @ g_tower(model, x, len(measures)))


def eval_f(model: MarginalBenefit, contest: Contest, t: int, x: float,
           options: SolverOptions = DEFAULT_OPTIONS) -> float:
    """Inverted best response f_t(X) = X - sum_k S_k(n^t) g_k(X); f_T(X) = X."""
    measures = _measure_key(contest, t, options)
    if not measures:
        return float(x)
    return _f_value(model, measures, x)


def _grid_f(model, measures: tuple, points: int):
    """f and f' on the scan grid for the measure vector."""
    grid, values, slopes = grid_tower(model, max(len(measures), 1), points)
    if not measures:
        return grid, grid.copy(), np.ones_like(grid)
    weights = np.asarray(measures, dtype=float)
    count = len(measures)
    return grid, grid - weights @ values[:count], 1.0 - weights @ slopes[:count]


def _bisect(func, lower, upper, f_lower, f_upper, tolerance):
    """Bisection on a sign-changing bracket, finished by one secant step."""
    while upper - lower >= tolerance:
        middle = 0.5 * (lower + upper)
        if middle <= lower or middle >= upper:
            break
        f_middle = func(middle)
        if f_middle == 0:
            return middle, (middle, middle)
        if f_middle < 0:
            lower, f_lower = middle, f_middle
        else:
            upper, f_upper = middle, f_middle
    root = lower - f_lower * (upper - lower) / (f_upper - f_lower)
    return min(max(root, lower), upper), (lower, upper)


@dataclass(frozen=True)
class RootReport:
    x_star: float
    bracket: tuple[float, float]
    residual: float
    degenerate: bool
    slope: float = 0.0


@lru_cache(maxsize=4096)
def _root_report(model: MarginalBenefit, measures: tuple, options: SolverOptions) -> RootReport:
    """
    Highest root of X - sum_k S_k g_k(X).

    Keyed by the measure vector, so permuted contests share one search.
    """
    grid, f_values, _ = _grid_f(model, measures, options.grid_points)
    below = np.flatnonzero(f_values <= 0)
    if len(below) == 0:
        at_floor = _f_value(model, measures, DOMAIN_FLOOR)
        if abs(at_floor) <= options.assumption_tolerance:
            logger.warning(f"S={measures} under {model.label}: highest root is the boundary X = 0")
            return RootReport(0.0, (0.0, float(grid[0])), abs(at_floor), True)
        raise NoRootFound(f"f0 has no sign change on (0, {model.xbar:.12g}] for S={measures}")

    j = below[-1]
    if f_values[j] == 0 or j + 1 == len(grid):
        x_star, bracket = float(grid[j]), (float(grid[j]), float(grid[j]))
    else:
        x_star, bracket = _bisect(
            lambda x: _f_value(model, measures, x),
            float(grid[j]), float(grid[j + 1]), float(f_values[j]), float(f_values[j + 1]),
            options.root_tolerance,
        )
    residual = abs(_f_value(model, measures, x_star))
    _, slopes = g_tower_with_slopes(model, x_star, len(measures))
    slope = float(1.0 - np.asarray(measures, dtype=float) @ slopes)
    if slope <= 0:
        raise NonMonotoneAtRoot(x_star, slope)
    logger.debug(f"S={measures}: X*={x_star:.15g} bracket={bracket} residual={residual:.3g}")
    return RootReport(x_star, bracket, residual, False, slope)


def solve_total_effort(model: MarginalBenefit, contest: Contest,
                       options: SolverOptions = DEFAULT_OPTIONS) -> float:
    """
    Highest root of f_0 on (0, X̄].

    Scans the grid X̄·j/G downward for the first sign change, then bisects.

    Raises:
        NoRootFound: no sign change and no boundary root at 0
        NonMonotoneAtRoot: f_0'(X*) <= 0
    """
    return _root_report(model, _measure_key(contest, 0, options), options).x_star


def solve_equilibrium(model: MarginalBenefit, contest: Contest,
                      options: SolverOptions = DEFAULT_OPTIONS) -> EquilibriumOutcome:
    """
    Unique subgame-perfect equilibrium via the characterization.

    Raises:
        NoRootFound, NonMonotoneAtRoot: from the root search
        NegativeEffort: some period effort below -effort_tolerance
    """
    report = _root_report(model, _measure_key(contest, 0, options), options)
    periods = contest.num_periods
    if report.degenerate:
        zeros = (0.0,) * periods
        diagnostics = check_assumptions(model, contest, options, x_star=0.0)
        flags = SolveFlags(diagnostics.assumption1_ok, diagnostics.assumption2_ok, True,
                           False, report.bracket, report.residual, 0.0)
        return EquilibriumOutcome(contest, 0.0, zeros, zeros, 0.0, float('nan'), flags)

    x_star = report.x_star
    values = g_tower(model, x_star, periods)
    efforts = np.array([
        values[0] + np.asarray(measures, dtype=float) @ values[1:len(measures) + 1]
        for measures in (_measure_key(contest, t, options) for t in range(1, periods + 1))
    ])
    for t, effort in enumerate(efforts, start=1):
        if effort < -options.effort_tolerance:
            raise NegativeEffort(t, float(effort))
    h_star = float(model.h(x_star))
    payoffs = efforts * h_star
    strict = bool(np.all(np.diff(efforts) < -options.root_tolerance))
    diagnostics = check_assumptions(model, contest, options, x_star=x_star)
    if diagnostics.failures:
        logger.warning(f"{contest} under {model.label}: failed clauses {[c.clause for c in diagnostics.failures]}")
    flags = SolveFlags(
        assumption1_ok=diagnostics.assumption1_ok,
        assumption2_ok=diagnostics.assumption2_ok,
        degenerate=diagnostics.degenerate,
        earlier_mover_strict=strict,
        root_bracket=report.bracket,
        residual=report.residual,
        slope=report.slope,
    )
    return EquilibriumOutcome(
        contest=contest,
        x_star=x_star,
        period_efforts=tuple(float(e) for e in efforts),
        period_payoffs=tuple(float(u) for u in payoffs),
        welfare=x_star * h_star,
        h_at_x_star=h_star,
        flags=flags,
    )


def _grid_root(grid, f_values, lower_root, f_at_lower, tolerance):
    """Highest grid-level root of f_t above lower_root, or None."""
    candidates = np.flatnonzero((grid > lower_root) & (f_values <= 0))
    if len(candidates):
        j = candidates[-1]
        if f_values[j] == 0 or j + 1 == len(grid):
            return float(grid[j])
        f_lo, f_hi = f_values[j], f_values[j + 1]
        return float(grid[j] - f_lo * (grid[j + 1] - grid[j]) / (f_hi - f_lo))
    if abs(f_at_lower) <= tolerance:
        return lower_root
    return None


@lru_cache(maxsize=8192)
def _period_clauses(model: MarginalBenefit, measures: tuple, t: int, lower: float,
                    options: SolverOptions) -> tuple[float | None, tuple[ClauseResult, ...]]:
    """Root of f_t above `lower` plus the sign and slope clauses for period t."""
    tolerance = options.assumption_tolerance
    grid, f_values, f_slopes = _grid_f(model, measures, options.grid_points)
    root = _grid_root(grid, f_values, lower, _f_value(model, measures, max(lower, DOMAIN_FLOOR)), tolerance)
    if root is None:
        return None, (ClauseResult('root_exists', t, False),)

    below = (grid > lower + tolerance) & (grid < root - tolerance)
    bad_below = np.flatnonzero(below & (f_values >= 0))
    bad_above = np.flatnonzero((grid > root + tolerance) & (f_slopes <= 0))
    return root, (
        ClauseResult('root_exists', t, True),
        ClauseResult('negative_below_root', t, len(bad_below) == 0,
                     float(grid[bad_below[0]]) if len(bad_below) else None),
        ClauseResult('increasing_above_root', t, len(bad_above) == 0,
                     float(grid[bad_above[0]]) if len(bad_above) else None),
    )


def _refined_root(model, contest, grid_root, options):
    """Bisected X* where the solver finds one, else the grid-level root."""
    try:
        return _root_report(model, _measure_key(contest, 0, options), options).x_star
    except SolverError:
        return grid_root


def check_assumptions(model: MarginalBenefit, contest: Contest,
                      options: SolverOptions = DEFAULT_OPTIONS,
                      x_star: float | None = None) -> AssumptionDiagnostics:
    """
    Grid check of both assumptions; never raises.

    For t = T-1..0 it locates the highest root of f_t above the root of
    f_{t+1}, checks f_t < 0 between the two roots and f_t' > 0 above it, then
    checks g_k(X*) > 0 for k = 2..T. Values within assumption_tolerance of
    zero count as satisfied for the g_k signs.
    """
    periods = contest.num_periods
    clauses = []
    roots = [None] * (periods + 1)
    roots[periods] = 0.0
    degenerate = False
    try:
        for t in range(periods - 1, -1, -1):
            lower = roots[t + 1]
            if lower is None:
                clauses.append(ClauseResult('root_exists', t, False))
                continue
            roots[t], period_clauses = _period_clauses(
                model, _measure_key(contest, t, options), t, lower, options
            )
            clauses.extend(period_clauses)

        top = roots[0]
        interior = top is not None and 0 < top < model.xbar
        degenerate = top is not None and top <= 0
        clauses.append(ClauseResult('interior_root', 0, interior, None if interior else top))

        point = x_star
        if point is None and interior:
            point = _refined_root(model, contest, top, options)
        if point is not None and point > 0 and periods >= 2:
            values = g_tower(model, point, periods)
            for k in range(2, periods + 1):
                ok = bool(values[k - 1] > -options.assumption_tolerance)
                clauses.append(ClauseResult('higher_order_substitutes', k, ok, None if ok else float(point)))
    except Exception as e:
        logger.error(f"Assumption check failed for {contest}: {type(e).__name__}: {e}", exc_info=True)
        clauses.append(ClauseResult('evaluation', 0, False))
    return AssumptionDiagnostics(tuple(clauses), tuple(roots), degenerate)
