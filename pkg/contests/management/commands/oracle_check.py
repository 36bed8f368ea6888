from django.core.management.base import CommandError

from ...services.contest_core import enumerate_contests
from ...services.oracle import check_grid_refinement, compare_with_characterization
from ...services.reporting import write_oracle
from ..base import EXIT_VERIFICATION, ContestCommand


class Command(ContestCommand):
    help = ('Compare the characterization solver with the backward-induction oracle '
            '(oracle-check)')

    default_players = '3'

    def add_command_arguments(self, parser):
        parser.add_argument('--contest', help='Contest literal; several separated by ";"')
        parser.add_argument('--n', help='Check every contest of these player counts (default 3)')
        parser.add_argument('--oracle-grid', type=int, help='Oracle effort grid points')
        parser.add_argument('--refine', action='store_true', help='Also rerun on a doubled grid')

    def run(self, config, options):
        contests = config.contests or [
            contest for n in config.players for contest in enumerate_contests(n, config.options.max_players)
        ]
        comparisons = []
        failures = []
        for contest in contests:
            if options['refine']:
                check = check_grid_refinement(config.model, contest, config.oracle, config.options)
                comparisons.append(check.coarse)
                if not check.passed:
                    failures.append(f"{contest} (refinement)")
            else:
                comparisons.append(compare_with_characterization(config.model, contest, config.oracle, config.options))
        failures += [str(c.contest) for c in comparisons if not c.passed]
        self.emit(config, write_oracle, comparisons)
        if failures:
            raise CommandError(f"Oracle discrepancy above two grid steps: {', '.join(failures)}",
                               returncode=EXIT_VERIFICATION)
