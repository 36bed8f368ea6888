"""
Shared plumbing for the contest management commands.

Exit codes: 2 for usage and parse errors, 3 for solver errors, 4 when a
verification does not pass.
"""

import io
import logging
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from ..services.config import OracleConfig, RunConfig, SolverOptions, default_jobs
from ..services.errors import ContestError, ContestSpecError, ModelSpecError
from ..services.parser import (
    parse_contest,
    parse_model,
    parse_n_range,
    validate_contest_literal,
    validate_model_spec,
)

logger = logging.getLogger(__name__)

EXIT_USAGE = 2
EXIT_SOLVER = 3
EXIT_VERIFICATION = 4

DEFAULT_MODEL = 'tullock:1,1'


class ContestCommand(BaseCommand):
    """Base command: parses shared flags into a RunConfig and maps errors to exit codes."""

    default_players = None

    def add_arguments(self, parser):
        parser.add_argument('--model', default=DEFAULT_MODEL,
                            help='family:p1,p2 literal, JSON object or path to a JSON file')
        parser.add_argument('--out', help='Output path (default: stdout)')
        parser.add_argument('--format', dest='output_format', choices=['csv', 'json'], default='csv')
        parser.add_argument('--grid', type=int, help='Root-scan grid points')
        parser.add_argument('--tol', type=float, help='Root bracket tolerance')
        parser.add_argument('--jobs', type=int, help='Worker processes (default: available cores)')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def validate_literals(self, options):
        """Reject malformed --model and --contest text with the validator message."""
        is_valid, error_msg = validate_model_spec(options['model'])
        if not is_valid:
            raise CommandError(f"Invalid --model: {error_msg}", returncode=EXIT_USAGE)
        contest_text = options.get('contest')
        for text in contest_text.split(';') if contest_text else ():
            is_valid, error_msg = validate_contest_literal(text)
            if not is_valid:
                raise CommandError(f"Invalid --contest: {error_msg}", returncode=EXIT_USAGE)

    def build_config(self, options) -> RunConfig:
        self.validate_literals(options)
        model = parse_model(options['model'])
        contest_text = options.get('contest')
        contests = tuple(parse_contest(text) for text in contest_text.split(';')) if contest_text else ()
        n_text = options.get('n') or self.default_players
        players = parse_n_range(n_text) if n_text else ()
        jobs = options.get('jobs') or getattr(settings, 'CONTEST_JOBS', 0) or default_jobs()
        return RunConfig(
            command=self.__module__.rsplit('.', 1)[-1],
            model=model,
            contests=contests,
            players=players,
            output=Path(options['out']) if options.get('out') else None,
            output_format=options['output_format'],
            options=SolverOptions.from_settings(grid_points=options.get('grid'), root_tolerance=options.get('tol')),
            oracle=OracleConfig.from_settings(grid_points=options.get('oracle_grid')),
            jobs=jobs,
        )

    def handle(self, *args, **options):
        try:
            config = self.build_config(options)
        except (ContestError, ValueError) as e:
            raise CommandError(f"Invalid arguments: {e}", returncode=EXIT_USAGE) from e

        try:
            self.run(config, options)
        except (ModelSpecError, ContestSpecError) as e:
            raise CommandError(str(e), returncode=EXIT_USAGE) from e
        except ContestError as e:
            raise CommandError(f"{type(e).__name__}: {e}", returncode=EXIT_SOLVER) from e

    def run(self, config: RunConfig, options):
        raise NotImplementedError

    def emit(self, config: RunConfig, writer, *args):
        """Render with writer(out, *args, fmt) to --out or stdout."""
        buffer = io.StringIO()
        writer(buffer, *args, config.output_format)
        if config.output is None:
            self.stdout.write(buffer.getvalue(), ending='')
            return
        config.output.parent.mkdir(parents=True, exist_ok=True)
        config.output.write_text(buffer.getvalue())
        logger.info(f"Wrote {config.output}")
