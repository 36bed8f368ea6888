from django.core.management.base import CommandError

from ...services.designer import DIRECTIONS, OBJECTIVES, search
from ...services.reporting import write_search
from ...services.runs import record_search
from ..base import EXIT_SOLVER, ContestCommand


class Command(ContestCommand):
    help = 'Exhaustively search all contests of each player count for one objective'

    def add_command_arguments(self, parser):
        parser.add_argument('--n', required=True, help='Player count or range, e.g. 7 or 2..12')
        parser.add_argument('--objective', required=True, choices=OBJECTIVES)
        parser.add_argument('--dir', dest='direction', required=True, choices=DIRECTIONS)
        parser.add_argument('--save', action='store_true', help='Store the run in the database')

    def run(self, config, options):
        results = []
        for n in config.players:
            if options['save']:
                run, result = record_search(config.model, options['model'], n, options['objective'],
                                            options['direction'], config.options, config.jobs)
                if result is None:
                    raise CommandError(f"Search run {run.id} failed: {run.error_message}", returncode=EXIT_SOLVER)
            else:
                result = search(config.model, n, options['objective'], options['direction'],
                                config.options, config.jobs)
            results.append(result)
        self.emit(config, write_search, results)
