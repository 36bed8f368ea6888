from pathlib import Path

from ...services.designer import OBJECTIVES, evaluate_all
from ...services.reporting import write_figures
from ..base import ContestCommand


class Command(ContestCommand):
    help = 'Write one CSV per objective with every contest of every player count'

    default_players = '2..12'

    def add_command_arguments(self, parser):
        parser.add_argument('--n', help='Player count or range (default 2..12)')
        parser.add_argument('--objective', choices=OBJECTIVES, action='append',
                            help='Limit to these panels (repeatable)')

    def run(self, config, options):
        tables = [evaluate_all(config.model, n, config.options, config.jobs) for n in config.players]
        directory = config.output or Path('figures')
        for path in write_figures(directory, tables, options['objective'] or OBJECTIVES):
            self.stdout.write(str(path))
