"""
Brute-force subgame-perfect equilibrium by backward induction on a grid.

The oracle never touches f_t or the g-tower. For each period, from the last
one backwards, it tabulates the symmetric within-period equilibrium against
every prior cumulative effort on a grid, and the resulting final total effort
becomes the continuation that earlier periods best-respond against.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_OPTIONS, OracleConfig, SolverOptions
from .contest_core import Contest
from .equilibrium import EquilibriumOutcome, solve_equilibrium
from .errors import ContestSpecError, OracleNoConvergence, OracleResolutionError
from .payoff_model import MarginalBenefit

logger = logging.getLogger(__name__)

MAX_ORACLE_PLAYERS = 4
H_FLOOR = 1e-12
CONVERGED_GAP = 1e-10
STALL_WINDOW = 25
BRACKET_STEPS = 2
GOLDEN_ITERATIONS = 60
INVERSE_PHI = (np.sqrt(5.0) - 1) / 2


@dataclass(frozen=True)
class ContinuationTable:
    """Final total effort as a function of cumulative effort entering a period."""
    nodes: np.ndarray
    totals: np.ndarray

    def __call__(self, cumulative):
        return np.where(cumulative > self.nodes[-1], cumulative,
                        np.interp(cumulative, self.nodes, self.totals))


def _payoff(model, base, efforts, continuation):
    final = base + efforts if continuation is None else continuation(base + efforts)
    return efforts * model.h(np.maximum(final, H_FLOOR))


def _golden_section(objective, lower, upper, iterations=GOLDEN_ITERATIONS):
    """Row-wise maximizer of objective on [lower, upper] by golden-section search."""
    lower, upper = lower.copy(), upper.copy()
    inner = upper - INVERSE_PHI * (upper - lower)
    outer = lower + INVERSE_PHI * (upper - lower)
    f_inner, f_outer = objective(inner), objective(outer)
    for _ in range(iterations):
        left = f_inner >= f_outer
        lower = np.where(left, lower, inner)
        upper = np.where(left, outer, upper)
        inner, outer = (np.where(left, upper - INVERSE_PHI * (upper - lower), outer),
                        np.where(left, inner, lower + INVERSE_PHI * (upper - lower)))
        f_new = objective(np.where(left, inner, outer))
        f_inner, f_outer = np.where(left, f_new, f_outer), np.where(left, f_inner, f_new)
    return 0.5 * (lower + upper)


def _best_response(model, nodes, others, size, efforts, continuation):
    """Grid argmax of x * h(final total), refined continuously within two steps of it."""
    base = nodes + (size - 1) * others
    payoff = _payoff(model, base[:, None], efforts[None, :], continuation)
    index = np.argmax(payoff, axis=1)

    last = len(efforts) - 1
    lower = efforts[np.maximum(index - BRACKET_STEPS, 0)]
    upper = efforts[np.minimum(index + BRACKET_STEPS, last)]
    response = _golden_section(lambda x: _payoff(model, base, x, continuation), lower, upper)
    grid_best = payoff[np.arange(len(index)), index]
    refined_best = _payoff(model, base, response, continuation)
    response = np.where(refined_best >= grid_best, response, efforts[index])
    return response, index


def _period_equilibrium(model, nodes, size, period, continuation, config: OracleConfig):
    """Symmetric within-period equilibrium at each node by damped iterated best response."""
    efforts = np.linspace(0.0, config.effort_max, config.grid_points)
    strategy = np.zeros_like(nodes)
    if size == 1:
        response, _ = _best_response(model, nodes, strategy, size, efforts, continuation)
        return response

    seen = {}
    cycle_length = None
    best_gap = np.inf
    stalled = 0
    gap = np.inf
    response = strategy
    for iteration in range(config.br_iterations):
        response, index = _best_response(model, nodes, strategy, size, efforts, continuation)
        gap = float(np.max(np.abs(response - strategy)))
        if gap < CONVERGED_GAP:
            return response
        key = index.tobytes()
        if key in seen:
            cycle_length = iteration - seen[key]
        seen[key] = iteration
        if gap < best_gap * (1 - 1e-3):
            best_gap, stalled = gap, 0
        else:
            stalled += 1
            if stalled >= STALL_WINDOW and gap <= config.br_tolerance:
                break
        strategy = (1 - config.damping) * strategy + config.damping * response

    if gap <= config.br_tolerance:
        logger.debug(f"Period {period}: best response settled at gap {gap:.3g}")
        return response
    if cycle_length is not None and cycle_length > 1:
        raise OracleNoConvergence(period, cycle_length)
    raise OracleResolutionError(
        f"period {period}: best-response gap {gap:.3g} exceeds tolerance {config.br_tolerance:.3g}"
    )


def _tabulate(model, size, period, continuation, config: OracleConfig) -> ContinuationTable:
    nodes = np.linspace(0.0, model.xbar, config.grid_points)
    totals = np.empty_like(nodes)
    for start in range(0, len(nodes), config.chunk_size):
        chunk = nodes[start:start + config.chunk_size]
        strategy = _period_equilibrium(model, chunk, size, period, continuation, config)
        after = chunk + size * strategy
        totals[start:start + len(chunk)] = after if continuation is None else continuation(after)
    return ContinuationTable(nodes, totals)


def oracle_solve(model: MarginalBenefit, contest: Contest,
                 config: OracleConfig | None = None) -> EquilibriumOutcome:
    """
    Solve a small contest by backward induction on the effort grid.

    Raises:
        ContestSpecError: more than MAX_ORACLE_PLAYERS players
        OracleNoConvergence: best responses cycle on the grid
        OracleResolutionError: best responses settle no closer than br_tolerance
    """
    if contest.n > MAX_ORACLE_PLAYERS:
        raise ContestSpecError(f"the oracle handles at most {MAX_ORACLE_PLAYERS} players, got {contest.n}")
    config = (config or OracleConfig()).resolve(model.xbar)
    periods = contest.periods

    continuations = [None] * (len(periods) + 1)
    for t in range(len(periods), 1, -1):
        continuations[t - 1] = _tabulate(model, periods[t - 1], t, continuations[t], config)
        logger.debug(f"Tabulated continuation entering period {t} of {contest}")

    cumulative = 0.0
    efforts = []
    for t, size in enumerate(periods, start=1):
        strategy = _period_equilibrium(model, np.array([cumulative]), size, t, continuations[t], config)
        efforts.append(float(strategy[0]))
        cumulative += size * efforts[-1]

    h_star = float(model.h(max(cumulative, H_FLOOR)))
    logger.info(f"Oracle solved {contest} under {model.label}: X*={cumulative:.12g}")
    return EquilibriumOutcome(
        contest=contest,
        x_star=cumulative,
        period_efforts=tuple(efforts),
        period_payoffs=tuple(e * h_star for e in efforts),
        welfare=cumulative * h_star,
        h_at_x_star=h_star,
    )


@dataclass(frozen=True)
class OracleComparison:
    exact: EquilibriumOutcome
    oracle: EquilibriumOutcome
    step: float

    @property
    def contest(self) -> Contest:
        return self.exact.contest

    @property
    def discrepancy(self) -> float:
        gaps = [abs(self.exact.x_star - self.oracle.x_star)]
        gaps += [abs(a - b) for a, b in zip(self.exact.period_efforts, self.oracle.period_efforts)]
        return max(gaps)

    @property
    def passed(self) -> bool:
        return self.discrepancy <= 2 * self.step

    def rows(self) -> list[tuple[str, float, float]]:
        """(quantity, characterization, oracle) triples for side-by-side output."""
        rows = [('X_star', self.exact.x_star, self.oracle.x_star)]
        for t, (a, b) in enumerate(zip(self.exact.period_efforts, self.oracle.period_efforts), start=1):
            rows.append((f'effort_{t}', a, b))
        return rows


def compare_with_characterization(model: MarginalBenefit, contest: Contest,
                                  config: OracleConfig | None = None,
                                  options: SolverOptions = DEFAULT_OPTIONS) -> OracleComparison:
    config = (config or OracleConfig()).resolve(model.xbar)
    exact = solve_equilibrium(model, contest, options)
    oracle = oracle_solve(model, contest, config)
    comparison = OracleComparison(exact, oracle, config.step)
    if not comparison.passed:
        logger.warning(f"Oracle disagrees on {contest}: discrepancy {comparison.discrepancy:.3g}")
    return comparison


@dataclass(frozen=True)
class RefinementCheck:
    coarse: OracleComparison
    fine: OracleComparison

    @property
    def passed(self) -> bool:
        return self.fine.discrepancy <= max(self.coarse.discrepancy / 2, self.fine.step)


def check_grid_refinement(model: MarginalBenefit, contest: Contest,
                          config: OracleConfig | None = None,
                          options: SolverOptions = DEFAULT_OPTIONS) -> RefinementCheck:
    """Rerun with the grid doubled; the discrepancy should at least halve."""
    config = config or OracleConfig()
    finer = OracleConfig(
        grid_points=2 * config.grid_points - 1,
        effort_max=config.effort_max,
        br_iterations=config.br_iterations,
        damping=config.damping,
        chunk_size=config.chunk_size,
    )
    return RefinementCheck(
        coarse=compare_with_characterization(model, contest, config, options),
        fine=compare_with_characterization(model, contest, finer, options),
    )
