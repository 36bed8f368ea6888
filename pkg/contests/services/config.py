"""
Solver, oracle and run configuration.

Services take these frozen dataclasses explicitly; only the `from_settings`
constructors touch Django settings.
"""

import os
from dataclasses import dataclass, field, replace
from pathlib import Path


@dataclass(frozen=True)
class SolverOptions:
    """Knobs for the characterization solver and the exhaustive search."""
    grid_points: int = 4096
    root_tolerance: float = 1e-12
    assumption_tolerance: float = 1e-9
    effort_tolerance: float = 1e-9
    tie_tolerance: float = 1e-9
    max_players: int = 64
    max_exhaustive_n: int = 16

    def __post_init__(self):
        if self.grid_points < 2:
            raise ValueError("grid_points must be at least 2")
        if self.root_tolerance <= 0:
            raise ValueError("root_tolerance must be positive")

    @classmethod
    def from_settings(cls, **overrides) -> 'SolverOptions':
        from django.conf import settings

        options = cls(
            grid_points=getattr(settings, 'CONTEST_ROOT_GRID', cls.grid_points),
            root_tolerance=getattr(settings, 'CONTEST_ROOT_TOLERANCE', cls.root_tolerance),
            assumption_tolerance=getattr(settings, 'CONTEST_ASSUMPTION_TOLERANCE', cls.assumption_tolerance),
            tie_tolerance=getattr(settings, 'CONTEST_TIE_TOLERANCE', cls.tie_tolerance),
            max_players=getattr(settings, 'CONTEST_MAX_PLAYERS', cls.max_players),
            max_exhaustive_n=getattr(settings, 'CONTEST_MAX_N', cls.max_exhaustive_n),
        )
        overrides = {key: value for key, value in overrides.items() if value is not None}
        return replace(options, **overrides)


DEFAULT_OPTIONS = SolverOptions()


@dataclass(frozen=True)
class OracleConfig:
    """
    Resolution of the backward-induction oracle.

    effort_max and br_tolerance default to X̄ and one grid step of the model
    being solved; `resolve` fills them in.
    """
    grid_points: int = 2001
    effort_max: float | None = None
    br_iterations: int = 500
    br_tolerance: float | None = None
    damping: float = 0.5
    chunk_size: int = 256

    def __post_init__(self):
        if self.grid_points < 3:
            raise ValueError("oracle grid_points must be at least 3")
        if self.br_iterations < 1:
            raise ValueError("br_iterations must be positive")
        if not 0 < self.damping <= 1:
            raise ValueError("damping must lie in (0, 1]")

    def resolve(self, xbar: float) -> 'OracleConfig':
        effort_max = xbar if self.effort_max is None else self.effort_max
        if effort_max > xbar * (1 + 1e-12) or effort_max <= 0:
            raise ValueError(f"effort_max must lie in (0, {xbar:.12g}]")
        step = effort_max / (self.grid_points - 1)
        tolerance = step if self.br_tolerance is None else self.br_tolerance
        return replace(self, effort_max=effort_max, br_tolerance=tolerance)

    @property
    def step(self) -> float:
        if self.effort_max is None:
            raise ValueError("resolve the oracle config against a model first")
        return self.effort_max / (self.grid_points - 1)

    @classmethod
    def from_settings(cls, **overrides) -> 'OracleConfig':
        from django.conf import settings

        config = cls(
            grid_points=getattr(settings, 'ORACLE_GRID_POINTS', cls.grid_points),
            br_iterations=getattr(settings, 'ORACLE_BR_ITERATIONS', cls.br_iterations),
        )
        overrides = {key: value for key, value in overrides.items() if value is not None}
        return replace(config, **overrides)


def default_jobs() -> int:
    return os.cpu_count() or 1


@dataclass(frozen=True)
class RunConfig:
    """Everything one command invocation needs, validated up front."""
    command: str
    model: object
    contests: tuple = ()
    players: tuple[int, ...] = ()
    output: Path | None = None
    output_format: str = 'csv'
    options: SolverOptions = field(default_factory=SolverOptions)
    oracle: OracleConfig = field(default_factory=OracleConfig)
    jobs: int = 1

    def __post_init__(self):
        if self.output_format not in ('csv', 'json'):
            raise ValueError(f"unknown output format '{self.output_format}'")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
