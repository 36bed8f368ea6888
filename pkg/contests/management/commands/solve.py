from django.core.management.base import CommandError

from ...services.designer import ObjectiveReport
from ...services.equilibrium import solve_equilibrium
from ...services.reporting import write_outcome
from ..base import EXIT_USAGE, ContestCommand


class Command(ContestCommand):
    help = 'Solve one contest and print its equilibrium and objective values'

    def add_command_arguments(self, parser):
        parser.add_argument('--contest', required=True, help='Contest literal, e.g. 1,2')

    def run(self, config, options):
        if len(config.contests) != 1:
            raise CommandError("solve takes exactly one contest", returncode=EXIT_USAGE)
        outcome = solve_equilibrium(config.model, config.contests[0], config.options)
        self.emit(config, write_outcome, outcome, ObjectiveReport.from_outcome(outcome))
