from ...services.asymptotics import (
    KINDS,
    approx_search,
    compare_exact_approx,
    empirical_crossover,
    ith_extremal,
    payoff_threshold,
)
from ...services.contest_core import Contest
from ...services.designer import DIRECTIONS
from ...services.reporting import write_asymptotics, write_csv, write_json
from ..base import ContestCommand


def _write_extremal(out, rows, output_format):
    header = ('n', 'i', 'kind', 'direction', 'threshold', 'closed_form', 'family_first_period', 'approx_argopt', 'agrees')
    if output_format == 'json':
        write_json(out, [dict(zip(header, row)) for row in rows])
        return
    write_csv(out, header, rows)


def _write_crossover(out, result, output_format):
    if output_format == 'json':
        write_json(out, {'i': result.i, 'kind': result.kind, 'direction': result.direction,
                         'crossover_n': result.crossover_n, 'agreement': [list(a) for a in result.agreement]})
        return
    write_csv(out, ('n', 'agrees', 'crossover_n'),
              [(n, agrees, result.crossover_n) for n, agrees in result.agreement])


class Command(ContestCommand):
    help = 'Compare exact equilibria with the competitive-limit approximation'

    default_players = '4..12'

    def add_command_arguments(self, parser):
        parser.add_argument('--contest', help='Contest literal; several separated by ";"')
        parser.add_argument('--n', help='Player counts for sequential contests (default 4..12)')
        parser.add_argument('--ith', type=int, help='Report closed-form extremal contests for the i-th player')
        parser.add_argument('--kind', choices=KINDS, default='effort')
        parser.add_argument('--dir', dest='direction', choices=DIRECTIONS, default='max')
        parser.add_argument('--crossover', action='store_true',
                            help='With --ith, find where exact search starts matching the closed form')

    def run(self, config, options):
        i, kind, direction = options['ith'], options['kind'], options['direction']
        if i is None:
            contests = config.contests or [Contest.sequential(n) for n in config.players]
            comparisons = [compare_exact_approx(config.model, contest, config.options) for contest in contests]
            self.emit(config, write_asymptotics, comparisons)
            return

        if options['crossover']:
            result = empirical_crossover(config.model, i, kind, direction, config.players, config.options, config.jobs)
            self.emit(config, _write_crossover, result)
            return

        rows = []
        for n in config.players:
            if n < max(i, 2):
                continue
            closed_form = ith_extremal(n, i, kind, direction)
            approx = approx_search(config.model, n, i, kind, direction, config.options)
            rows.append((
                n, i, kind, direction, payoff_threshold(n),
                ';'.join(f"({c.label})" for c in closed_form.contests),
                closed_form.first_period,
                ';'.join(f"({c.label})" for c in approx.argopt),
                all(closed_form.matches(c) for c in approx.argopt),
            ))
        self.emit(config, _write_extremal, rows)
