"""
Literal Parser Service

Parses command-line and file literals into domain objects.
Supports:
1. Model specs as JSON ({"family": "tullock", "v": 1, "c": 1})
2. Model specs as a path to a JSON file
3. Shell-friendly model literals (tullock:1,1)
4. Contest literals (1,2,2,1) and player-count ranges (2..12)
"""

import json
import logging
from pathlib import Path

from django.utils.module_loading import import_string

from .contest_core import Contest
from .errors import ContestSpecError, ModelSpecError
from .payoff_model import (
    PARAMETER_NAMES,
    MarginalBenefit,
    make_exponential,
    make_exponential_decay,
    make_linear,
    make_power_series,
    make_tullock,
)

logger = logging.getLogger(__name__)

CONSTRUCTORS = {
    'tullock': make_tullock,
    'linear': make_linear,
    'exponential': make_exponential,
    'exponential_decay': make_exponential_decay,
}


def parse_model(content: str) -> MarginalBenefit:
    """
    Parse a model spec.

    Tries in order:
    1. JSON object
    2. Path to a JSON file
    3. family:param,param literal

    Args:
        content: Model spec as given on the command line

    Returns:
        Validated MarginalBenefit

    Raises:
        ModelSpecError: the spec is malformed or fails validation
    """
    content = content.strip()
    if not content:
        raise ModelSpecError("empty model spec")

    data = _parse_json_format(content)
    if data is None and content.endswith('.json'):
        data = _read_json_file(content)
    if data is not None:
        return _model_from_record(data)
    return _parse_literal(content)


def _parse_json_format(content: str) -> dict | None:
    if not content.startswith('{'):
        logger.debug(f"Model spec doesn't look like JSON: {content[:100]}")
        return None
    try:
        data = json.loads(content)
    except json.JSONDecodeError as e:
        raise ModelSpecError(f"invalid JSON model spec: {e}") from e
    if not isinstance(data, dict):
        raise ModelSpecError("a JSON model spec must be an object")
    return data


def _read_json_file(path: str) -> dict:
    file_path = Path(path)
    if not file_path.is_file():
        raise ModelSpecError(f"model file not found: {path}")
    logger.debug(f"Reading model spec from {file_path}")
    return _parse_json_format(file_path.read_text().strip()) or {}


def _model_from_record(data: dict) -> MarginalBenefit:
    family = str(data.get('family', '')).lower()
    if family == 'power_series':
        try:
            generator = import_string(data['coefficients'])
        except KeyError as e:
            raise ModelSpecError("power_series needs a 'coefficients' dotted path") from e
        except ImportError as e:
            raise ModelSpecError(f"cannot import coefficient generator: {e}") from e
        if 'xbar' not in data:
            raise ModelSpecError("power_series needs 'xbar'")
        return make_power_series(generator, float(data['xbar']))

    if family not in CONSTRUCTORS:
        raise ModelSpecError(f"unknown model family '{family}'")
    names = PARAMETER_NAMES[family]
    missing = [name for name in names if name not in data]
    if missing:
        raise ModelSpecError(f"{family} model is missing {', '.join(missing)}")
    try:
        return CONSTRUCTORS[family](*(float(data[name]) for name in names))
    except ModelSpecError:
        raise
    except (TypeError, ValueError) as e:
        raise ModelSpecError(f"invalid {family} parameters: {e}") from e


def _parse_literal(content: str) -> MarginalBenefit:
    family, _, params = content.partition(':')
    family = family.strip().lower()
    if family not in CONSTRUCTORS:
        raise ModelSpecError(f"unknown model family '{family}'")
    try:
        values = [float(part) for part in params.split(',') if part.strip()]
    except ValueError as e:
        raise ModelSpecError(f"invalid parameters in '{content}': {e}") from e
    expected = len(PARAMETER_NAMES[family])
    if len(values) != expected:
        raise ModelSpecError(f"{family} takes {expected} parameters, got {len(values)}")
    return CONSTRUCTORS[family](*values)


def parse_contest(content: str) -> Contest:
    return Contest.parse(content.strip())


def parse_n_range(content: str) -> tuple[int, ...]:
    """Parse "7", "2..12" or "2,3,5" into player counts."""
    content = content.strip()
    try:
        if '..' in content:
            low, high = (int(part) for part in content.split('..', 1))
            if low > high:
                raise ContestSpecError(f"empty player range '{content}'")
            values = tuple(range(low, high + 1))
        else:
            values = tuple(int(part) for part in content.split(',') if part.strip())
    except ValueError as e:
        raise ContestSpecError(f"invalid player range '{content}': {e}") from e
    if not values or any(n < 1 for n in values):
        raise ContestSpecError(f"player counts must be positive, got '{content}'")
    return values


def validate_model_spec(content: str) -> tuple[bool, str]:
    """Validate a model spec without raising."""
    try:
        parse_model(content)
    except ModelSpecError as e:
        return False, str(e)
    return True, ""


def validate_contest_literal(content: str, n: int | None = None) -> tuple[bool, str]:
    """Validate a contest literal, optionally against a player count."""
    try:
        contest = parse_contest(content)
    except ContestSpecError as e:
        return False, str(e)
    if n is not None and contest.n != n:
        return False, f"contest {contest} has {contest.n} players, expected {n}"
    return True, ""
