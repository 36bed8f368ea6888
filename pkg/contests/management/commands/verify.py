from django.core.management.base import CommandError

from ...services.designer import FAIL, verify_propositions
from ...services.errors import ContestSpecError
from ...services.reporting import write_verification
from ..base import EXIT_VERIFICATION, ContestCommand


class Command(ContestCommand):
    help = 'Check the designer propositions and summary table against exhaustive search'

    default_players = '2..12'

    def add_command_arguments(self, parser):
        parser.add_argument('--n', help='Player count or range (default 2..12)')
        parser.add_argument('--no-summary', action='store_true', help='Skip the per-cell summary checks')

    def run(self, config, options):
        if min(config.players) < 2:
            raise ContestSpecError(f"verification needs at least two players, got {min(config.players)}")
        report = verify_propositions(config.model, config.players, config.options, config.jobs,
                                     include_summary=not options['no_summary'])
        self.emit(config, write_verification, report)
        if not report.passed:
            failed = ', '.join(f"{c.proposition}@n={c.n}" for c in report.by_status(FAIL))
            raise CommandError(f"Verification failed: {failed}", returncode=EXIT_VERIFICATION)
