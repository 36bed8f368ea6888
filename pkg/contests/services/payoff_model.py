"""
Marginal-benefit primitive h(X) and its g-tower.

The tower is g_1 = -h/h' and g_{k+1} = -g_k' * g_1. It is evaluated with
SeriesJet arithmetic at the query point, so the same code path serves every
family, including user-supplied power series.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import DomainError, ModelSpecError
from .jets import SeriesJet, exp

logger = logging.getLogger(__name__)

DOMAIN_FLOOR = 1e-12
VALIDATION_POINTS = 1000
SATURATION_TOLERANCE = 1e-10


def _tullock(x, v, c):
    return v / x - c


def _linear(x, a, xbar):
    return a * (xbar - x)


def _exponential(x, a, b, c):
    return (a - c) - exp(x * math.log(b))


def _exponential_decay(x, scale, base, xbar):
    return scale * (exp(x * -math.log(base)) - base ** -xbar)


FAMILIES = {
    'tullock': _tullock,
    'linear': _linear,
    'exponential': _exponential,
    'exponential_decay': _exponential_decay,
}


@dataclass(frozen=True)
class MarginalBenefit:
    """
    Common marginal benefit h(X), strictly decreasing on (0, X̄] with h(X̄) = 0.

    Build instances through the make_* constructors, which validate the
    parameters and the sign conditions on a grid.
    """
    family: str
    params: tuple[float, ...]
    xbar: float
    alpha: float
    coefficients: Callable | None = None

    def jet(self, x, order: int) -> SeriesJet:
        """Taylor jet of h at x (scalar or array) up to `order`."""
        if self.family == 'power_series':
            return SeriesJet(np.asarray(self.coefficients(np.asarray(x, dtype=float), order), dtype=float))
        return FAMILIES[self.family](SeriesJet.variable(x, order), *self.params)

    def h(self, x):
        """h evaluated at a float or array."""
        if self.family == 'power_series':
            return self.jet(x, 0).value
        return FAMILIES[self.family](np.asarray(x, dtype=float), *self.params)

    def h_prime(self, x):
        return self.jet(x, 1).coefficients[1]

    @property
    def label(self) -> str:
        if self.family == 'power_series':
            return f"power_series:{self.xbar:.12g}"
        return f"{self.family}:" + ','.join(f"{p:.12g}" for p in self.params)

    def to_record(self) -> dict:
        record = {'family': self.family, 'xbar': self.xbar, 'alpha': self.alpha}
        names = PARAMETER_NAMES.get(self.family, ())
        record.update(zip(names, self.params))
        return record


PARAMETER_NAMES = {
    'tullock': ('v', 'c'),
    'linear': ('a', 'xbar'),
    'exponential': ('a', 'b', 'c'),
    'exponential_decay': ('scale', 'base', 'xbar'),
}


def _require_positive(**values):
    for name, value in values.items():
        if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
            raise ModelSpecError(f"{name} must be a positive real, got {value!r}")


def _validated(model: MarginalBenefit) -> MarginalBenefit:
    """Check h(X̄) = 0, alpha > 0 and h' < 0 on a grid over (0, X̄]."""
    if not (math.isfinite(model.xbar) and model.xbar > 0):
        raise ModelSpecError(f"saturation point must be positive, got {model.xbar!r}")
    at_saturation = float(model.h(model.xbar))
    if abs(at_saturation) > SATURATION_TOLERANCE:
        raise ModelSpecError(f"h(X̄) = {at_saturation:.3g}, expected 0")
    if not model.alpha > 0:
        raise ModelSpecError(f"alpha = -h'(X̄) must be positive, got {model.alpha:.6g}")
    grid = np.linspace(model.xbar / VALIDATION_POINTS, model.xbar, VALIDATION_POINTS)
    slopes = model.h_prime(grid)
    if not np.all(slopes < 0):
        bad = grid[np.argmax(slopes >= 0)]
        raise ModelSpecError(f"h is not strictly decreasing: h'({bad:.6g}) >= 0")
    logger.debug(f"Validated {model.label}: xbar={model.xbar:.12g}, alpha={model.alpha:.12g}")
    return model


def _build(family: str, params: tuple, xbar: float) -> MarginalBenefit:
    draft = MarginalBenefit(family, tuple(float(p) for p in params), float(xbar), 1.0)
    alpha = -float(draft.h_prime(draft.xbar))
    return _validated(MarginalBenefit(draft.family, draft.params, draft.xbar, alpha))


def make_tullock(v: float, c: float) -> MarginalBenefit:
    """Tullock contest h(X) = v/X - c with X̄ = v/c."""
    _require_positive(v=v, c=c)
    return _build('tullock', (v, c), v / c)


def make_linear(a: float, xbar: float) -> MarginalBenefit:
    """Linear h(X) = a(X̄ - X); every g_k equals X̄ - X."""
    _require_positive(a=a, xbar=xbar)
    return _build('linear', (a, xbar), xbar)


def make_exponential(a: float, b: float, c: float) -> MarginalBenefit:
    """Oligopoly with inverse demand a - b^X and marginal cost c."""
    if not (a > 1 and b > 1 and c >= 0):
        raise ModelSpecError(f"exponential needs a > 1, b > 1, c >= 0; got a={a}, b={b}, c={c}")
    if not a - c > 1:
        raise ModelSpecError(f"a - c = {a - c:.6g} must exceed 1 for a positive saturation point")
    return _build('exponential', (a, b, c), math.log(a - c) / math.log(b))


def make_exponential_decay(scale: float, base: float, xbar: float) -> MarginalBenefit:
    """h(X) = scale * (base^-X - base^-X̄), e.g. (1/log 2)(2^-X - 2^-1)."""
    _require_positive(scale=scale, xbar=xbar)
    if not base > 1:
        raise ModelSpecError(f"base must exceed 1, got {base!r}")
    return _build('exponential_decay', (scale, base, xbar), xbar)


def make_power_series(coefficients: Callable, xbar: float) -> MarginalBenefit:
    """
    User-supplied h given by its jet.

    Args:
        coefficients: callable (x0, order) -> sequence of order + 1 Taylor
            coefficients of h at x0; x0 may be an array.
        xbar: saturation point, h(xbar) = 0.
    """
    _require_positive(xbar=xbar)
    draft = MarginalBenefit('power_series', (), float(xbar), 1.0, coefficients)
    try:
        alpha = -float(draft.h_prime(draft.xbar))
    except Exception as e:
        raise ModelSpecError(f"coefficient generator failed: {e}") from e
    return _validated(MarginalBenefit('power_series', (), float(xbar), alpha, coefficients))


def _check_domain(model: MarginalBenefit, x):
    x = np.asarray(x, dtype=float)
    if np.any(x < DOMAIN_FLOOR) or np.any(x > model.xbar * (1 + 1e-12)):
        raise DomainError(f"g-tower queried outside (0, {model.xbar:.12g}]")
    return x


def _tower(model: MarginalBenefit, x, count: int, slopes: bool):
    order = count + (1 if slopes else 0)
    h = model.jet(x, order)
    g = -(h.truncate(order - 1) / h.derivative())
    jets = [g]
    for _ in range(count - 1):
        jets.append(-(jets[-1].derivative() * g))
    values = np.stack([jet.value for jet in jets])
    if not slopes:
        return values, None
    return values, np.stack([jet.coefficients[1] for jet in jets])


def g_tower(model: MarginalBenefit, x, count: int) -> np.ndarray:
    """
    Values (g_1(x), ..., g_count(x)).

    Args:
        model: marginal benefit
        x: point (or array of points) in (0, X̄]
        count: number of tower entries K

    Returns:
        Array of shape (count,) + shape(x)
    """
    if count < 1:
        raise ValueError("count must be positive")
    values, _ = _tower(model, _check_domain(model, x), count, slopes=False)
    return values


def g_tower_with_slopes(model: MarginalBenefit, x, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Tower values and first derivatives (g_k'(x)) for k = 1..count."""
    if count < 1:
        raise ValueError("count must be positive")
    return _tower(model, _check_domain(model, x), count, slopes=True)


@lru_cache(maxsize=64)
def grid_tower(model: MarginalBenefit, count: int, points: int):
    """
    Tower values and slopes on the uniform scan grid X̄·j/points, j = 1..points.

    Cached per model because every contest of a search shares it.
    """
    grid = model.xbar * np.arange(1, points + 1) / points
    values, slopes = g_tower_with_slopes(model, grid, count)
    logger.debug(f"Built grid tower for {model.label}: K={count}, G={points}")
    return grid, values, slopes
