"""
Truncated Taylor series ("jets").

A jet of order K at X0 stores the coefficients c_j = f^(j)(X0) / j! for
j = 0..K. Coefficients may carry a trailing batch shape, so one jet can
describe the expansion at every point of a grid at once.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import JetDivisionError


def _contract(a, b):
    """Sum over the leading axis of a * b, keeping batch axes."""
    return np.einsum('i...,i...->...', a, b)


@dataclass(frozen=True, eq=False)
class SeriesJet:
    """Truncated power series of a function around an expansion point."""

    coefficients: np.ndarray

    def __post_init__(self):
        coefficients = np.asarray(self.coefficients, dtype=float)
        if coefficients.ndim == 0 or len(coefficients) == 0:
            raise ValueError("a jet needs at least one coefficient")
        object.__setattr__(self, 'coefficients', coefficients)

    @classmethod
    def variable(cls, x0, order: int) -> 'SeriesJet':
        """Jet of the identity X -> X at x0."""
        x0 = np.asarray(x0, dtype=float)
        coefficients = np.zeros((order + 1,) + x0.shape)
        coefficients[0] = x0
        if order >= 1:
            coefficients[1] = 1.0
        return cls(coefficients)

    @classmethod
    def constant(cls, value, order: int) -> 'SeriesJet':
        value = np.asarray(value, dtype=float)
        coefficients = np.zeros((order + 1,) + value.shape)
        coefficients[0] = value
        return cls(coefficients)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @property
    def value(self):
        return self.coefficients[0]

    def derivatives(self) -> np.ndarray:
        """Derivatives f^(j)(X0) for j = 0..K."""
        factorials = np.array([math.factorial(j) for j in range(self.order + 1)], dtype=float)
        return self.coefficients * factorials.reshape((-1,) + (1,) * (self.coefficients.ndim - 1))

    def truncate(self, order: int) -> 'SeriesJet':
        if order > self.order:
            raise ValueError(f"cannot raise jet order from {self.order} to {order}")
        return SeriesJet(self.coefficients[:order + 1])

    def derivative(self) -> 'SeriesJet':
        """Jet of f' at the same point; the order drops by one."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        scale = np.arange(1, self.order + 1, dtype=float)
        scale = scale.reshape((-1,) + (1,) * (self.coefficients.ndim - 1))
        return SeriesJet(self.coefficients[1:] * scale)

    def _aligned(self, other: 'SeriesJet'):
        order = min(self.order, other.order)
        a, b = np.broadcast_arrays(self.coefficients[:order + 1], other.coefficients[:order + 1])
        return a, b

    def __neg__(self):
        return SeriesJet(-self.coefficients)

    def __add__(self, other):
        if isinstance(other, SeriesJet):
            a, b = self._aligned(other)
            return SeriesJet(a + b)
        coefficients = np.array(np.broadcast_arrays(self.coefficients, np.zeros(np.shape(other)))[0])
        coefficients[0] = coefficients[0] + other
        return SeriesJet(coefficients)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, SeriesJet):
            return SeriesJet(self.coefficients * np.asarray(other, dtype=float))
        a, b = self._aligned(other)
        if a.ndim == 1:
            return SeriesJet(np.convolve(a, b)[:len(a)])
        product = np.empty_like(a)
        for k in range(len(a)):
            product[k] = _contract(a[:k + 1], b[k::-1])
        return SeriesJet(product)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, SeriesJet):
            return SeriesJet(self.coefficients / np.asarray(other, dtype=float))
        a, b = self._aligned(other)
        if np.any(b[0] == 0):
            raise JetDivisionError("jet division needs a nonzero constant term")
        quotient = np.empty_like(a)
        quotient[0] = a[0] / b[0]
        for k in range(1, len(a)):
            quotient[k] = (a[k] - _contract(b[1:k + 1], quotient[k - 1::-1])) / b[0]
        return SeriesJet(quotient)

    def __rtruediv__(self, other):
        return SeriesJet.constant(np.broadcast_to(other, np.shape(self.value)), self.order) / self

    def compose(self, inner: 'SeriesJet') -> 'SeriesJet':
        """
        Jet of f(inner(X)) where self is the jet of f at inner's value.

        Horner evaluation in the shifted series inner - inner(X0).
        """
        order = min(self.order, inner.order)
        shifted = inner.truncate(order) - inner.value
        result = SeriesJet.constant(self.coefficients[order], order)
        for j in range(order - 1, -1, -1):
            result = result * shifted + self.coefficients[j]
        return result

    def exp(self) -> 'SeriesJet':
        base = np.exp(self.value)
        outer = np.stack([base / math.factorial(j) for j in range(self.order + 1)])
        return SeriesJet(outer).compose(self)


def exp(x):
    """exp that accepts floats, arrays and jets."""
    if isinstance(x, SeriesJet):
        return x.exp()
    return np.exp(x)
