"""
CSV and JSON output.

Floats are written with 12 significant digits and rows are ordered by
(n, contest id), so output is byte-identical for a fixed configuration.
"""

import csv
import json
import logging
from pathlib import Path
from typing import Iterable, TextIO

from .asymptotics import ApproxComparison
from .designer import OBJECTIVES, ContestTable, ObjectiveReport, SearchResult, VerificationReport
from .equilibrium import EquilibriumOutcome
from .oracle import OracleComparison

logger = logging.getLogger(__name__)

FIGURE_HEADER = (
    'n', 'contest_id', 'composition', 'value',
    'is_sequential', 'is_simultaneous', 'is_first_mover', 'is_leader_pairwise', 'is_two_then_singletons',
)


def format_value(value) -> str:
    if isinstance(value, bool):
        return '1' if value else '0'
    if isinstance(value, float):
        return f"{value:.12g}"
    if value is None:
        return ''
    return str(value)


def _normalise(value):
    """Round floats for JSON the same way CSV cells are written."""
    if isinstance(value, float):
        return float(f"{value:.12g}")
    if isinstance(value, dict):
        return {key: _normalise(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_normalise(item) for item in value]
    return value


def write_csv(out: TextIO, header: Iterable[str], rows: Iterable[Iterable]) -> None:
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(value) for value in row])


def write_json(out: TextIO, payload) -> None:
    json.dump(_normalise(payload), out, indent=2)
    out.write('\n')


def outcome_rows(outcome: EquilibriumOutcome, report: ObjectiveReport | None = None) -> list[tuple]:
    rows = [('X_star', outcome.x_star), ('h_at_X_star', outcome.h_at_x_star), ('welfare', outcome.welfare)]
    for t, (effort, payoff) in enumerate(zip(outcome.period_efforts, outcome.period_payoffs), start=1):
        rows.append((f'effort_{t}', effort))
        rows.append((f'payoff_{t}', payoff))
    if report is not None:
        rows.extend((name, report.value(name)) for name in OBJECTIVES)
    return rows


def write_outcome(out: TextIO, outcome: EquilibriumOutcome, report: ObjectiveReport | None = None,
                  output_format: str = 'csv') -> None:
    if output_format == 'json':
        payload = outcome.to_record()
        if report is not None:
            payload['objectives'] = report.to_record()
        write_json(out, payload)
        return
    write_csv(out, ('quantity', 'value'), outcome_rows(outcome, report))


def write_search(out: TextIO, results: list[SearchResult], output_format: str = 'csv') -> None:
    """Every contest's objective value with the optimal ones marked."""
    if output_format == 'json':
        payload = []
        for result in results:
            record = result.to_record()
            if result.table is not None:
                record['contests'] = [
                    {'contest_id': row.contest.contest_id, 'composition': row.contest.label,
                     'value': row.report.value(result.objective) if row.success else None,
                     'error': row.error_message or None}
                    for row in result.table.rows
                ]
            payload.append(record)
        write_json(out, payload)
        return
    rows = []
    for result in results:
        winners = set(result.argopt)
        if result.table is None:
            rows.extend((result.n, c.contest_id, c.label, result.optimal_value, True) for c in result.argopt)
            continue
        for row in result.table.rows:
            value = row.report.value(result.objective) if row.success else None
            rows.append((result.n, row.contest.contest_id, row.contest.label, value, row.contest in winners))
    write_csv(out, ('n', 'contest_id', 'composition', 'value', 'is_optimal'), rows)


def write_verification(out: TextIO, report: VerificationReport, output_format: str = 'csv') -> None:
    if output_format == 'json':
        write_json(out, report.to_records())
        return
    write_csv(out, ('proposition', 'n', 'status', 'witnesses', 'detail'), [
        (check.proposition, check.n, check.status, ';'.join(f"({w})" for w in check.witnesses), check.detail)
        for check in report.checks
    ])


def figure_rows(tables: Iterable[ContestTable], objective: str) -> list[tuple]:
    rows = []
    for table in sorted(tables, key=lambda t: t.n):
        for row in sorted(table.rows, key=lambda r: r.contest.contest_id):
            contest = row.contest
            rows.append((
                table.n, contest.contest_id, contest.label,
                row.report.value(objective) if row.success else None,
                contest.is_sequential, contest.is_simultaneous, contest.is_first_mover,
                contest.is_leader_pairwise, contest.is_two_then_singletons,
            ))
    return rows


def write_figures(directory: Path, tables: list[ContestTable], objectives: Iterable[str] = OBJECTIVES) -> list[Path]:
    """One CSV per objective panel, e.g. highest_effort.csv."""
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for objective in objectives:
        path = directory / f"{objective}.csv"
        with path.open('w', newline='') as out:
            write_csv(out, FIGURE_HEADER, figure_rows(tables, objective))
        written.append(path)
        logger.info(f"Wrote {path}")
    return written


def write_oracle(out: TextIO, comparisons: list[OracleComparison], output_format: str = 'csv') -> None:
    if output_format == 'json':
        write_json(out, [
            {'contest': c.contest.label, 'step': c.step, 'discrepancy': c.discrepancy, 'passed': c.passed,
             'rows': [{'quantity': q, 'characterization': a, 'oracle': b} for q, a, b in c.rows()]}
            for c in comparisons
        ])
        return
    rows = []
    for comparison in comparisons:
        for quantity, exact, oracle in comparison.rows():
            rows.append((comparison.contest.label, quantity, exact, oracle, abs(exact - oracle),
                         comparison.passed))
    write_csv(out, ('contest', 'quantity', 'characterization', 'oracle', 'difference', 'passed'), rows)


def write_asymptotics(out: TextIO, comparisons: list[ApproxComparison], output_format: str = 'csv') -> None:
    if output_format == 'json':
        write_json(out, [c.to_record() for c in comparisons])
        return
    rows = []
    for comparison in comparisons:
        exact, approx = comparison.exact, comparison.approx
        for t, (e, a) in enumerate(zip(exact.period_efforts, approx.approx_efforts), start=1):
            rows.append((comparison.contest.label, exact.x_star, approx.approx_X, t, e, a))
    write_csv(out, ('contest', 'exact_X', 'approx_X', 'period', 'exact_effort', 'approx_effort'), rows)
