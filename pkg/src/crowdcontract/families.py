"""Closed-form effort-cost and noise-variance function families.

A cost family maps effort to a strictly increasing cost; a noise family maps
effort to a strictly decreasing, nonnegative measurement variance. Every
family carries analytic first and second derivatives and an exact inverse,
so equilibrium solving and budget formulas downstream never depend on
numerical differentiation or generic root finding.

Built-in kinds:

    ExpCost(scale, rate)            a -> scale * exp(rate * a)
    PowerCost(scale, exponent, offset)
                                    a -> scale * a**exponent + offset
    HyperbolicNoise(scale)          a -> scale / (scale + a)
    ExpNoise(initial, rate)         a -> initial * exp(-rate * a)

All evaluation methods accept scalars or numpy arrays.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import ClassVar

import numpy as np

__all__ = [
    "DomainError",
    "RangeError",
    "FunctionFamily",
    "ExpCost",
    "PowerCost",
    "HyperbolicNoise",
    "ExpNoise",
    "inverse_by_bisection",
]


class DomainError(ValueError):
    """Evaluation requested at a negative effort."""


class RangeError(ValueError):
    """Inverse requested outside the attainable value range."""


# Positive sample grid used to spot-check monotonicity at construction time.
_SIGN_GRID = np.geomspace(1e-6, 1e3, 64)


def _checked_effort(a):
    if np.any(np.asarray(a) < 0):
        raise DomainError(f"effort must be nonnegative, got {a!r}")
    return a


class FunctionFamily(ABC):
    """Scalar function of effort with analytic derivatives and inverse."""

    role: ClassVar[str]  # "cost" or "noise"
    unbounded_above: ClassVar[bool]

    def value(self, a):
        """Evaluate the family at effort ``a`` (scalar or array)."""
        return self._value(_checked_effort(a))

    def deriv1(self, a):
        """Analytic first derivative at ``a``."""
        return self._deriv1(_checked_effort(a))

    def deriv2(self, a):
        """Analytic second derivative at ``a``."""
        return self._deriv2(_checked_effort(a))

    @abstractmethod
    def _value(self, a): ...

    @abstractmethod
    def _deriv1(self, a): ...

    @abstractmethod
    def _deriv2(self, a): ...

    @abstractmethod
    def inverse(self, v: float) -> float:
        """Effort ``a >= 0`` with ``value(a) == v``; raises RangeError outside range."""

    def value_range(self) -> tuple[float, float]:
        """Attainable (low, high) values over efforts ``a >= 0``.

        Cost families cover [value(0), inf); noise families cover
        (0, value(0)], with the lower end approached but never attained.
        """
        if self.role == "cost":
            return (float(self._value(0.0)), math.inf)
        return (0.0, float(self._value(0.0)))

    def _check_monotone(self) -> None:
        d = np.asarray(self._deriv1(_SIGN_GRID))
        v = np.asarray(self._value(_SIGN_GRID))
        if self.role == "cost":
            if not np.all(d > 0):
                raise ValueError(f"{self!r} is not strictly increasing")
        else:
            # fast decays underflow to exactly zero far out; that tail is fine
            if not np.all((d < 0) | (v == 0.0)):
                raise ValueError(f"{self!r} is not strictly decreasing")
            if not np.all(v >= 0):
                raise ValueError(f"{self!r} takes negative values")

    def _range_error(self, v) -> RangeError:
        lo, hi = self.value_range()
        if self.role == "cost":
            interval = f"[{lo:g}, inf)"
        else:
            interval = f"(0, {hi:g}]"
        return RangeError(f"{v!r} outside attainable range {interval} of {self!r}")


@dataclass(frozen=True)
class ExpCost(FunctionFamily):
    """Exponential effort cost: scale * exp(rate * a)."""

    scale: float = 1.0
    rate: float = 1.0

    role: ClassVar[str] = "cost"
    unbounded_above: ClassVar[bool] = True

    def __post_init__(self):
        if self.scale <= 0 or self.rate <= 0:
            raise ValueError(f"ExpCost needs scale > 0 and rate > 0, got {self!r}")
        self._check_monotone()

    def _value(self, a):
        # overflow to inf is the correct limit on wide diagnostic grids
        with np.errstate(over="ignore"):
            return self.scale * np.exp(self.rate * a)

    def _deriv1(self, a):
        with np.errstate(over="ignore"):
            return self.scale * self.rate * np.exp(self.rate * a)

    def _deriv2(self, a):
        with np.errstate(over="ignore"):
            return self.scale * self.rate**2 * np.exp(self.rate * a)

    def inverse(self, v: float) -> float:
        if v < self.scale:
            raise self._range_error(v)
        return math.log(v / self.scale) / self.rate


@dataclass(frozen=True)
class PowerCost(FunctionFamily):
    """Power-law effort cost: scale * a**exponent + offset.

    Exponents strictly between 1 and 2 have an unbounded second derivative
    at zero effort; sampled curvature checks elsewhere start strictly above
    zero, so such families are accepted but deriv2(0) is inf.
    """

    scale: float = 1.0
    exponent: float = 2.0
    offset: float = 0.0

    role: ClassVar[str] = "cost"
    unbounded_above: ClassVar[bool] = True

    def __post_init__(self):
        if self.scale <= 0 or self.exponent < 1 or self.offset < 0:
            raise ValueError(
                f"PowerCost needs scale > 0, exponent >= 1, offset >= 0, got {self!r}"
            )
        self._check_monotone()

    def _value(self, a):
        return self.scale * np.power(a, self.exponent) + self.offset

    def _deriv1(self, a):
        q = self.exponent
        if q == 1:
            return self.scale * np.ones_like(np.asarray(a, dtype=float))
        return self.scale * q * np.power(a, q - 1)

    def _deriv2(self, a):
        q = self.exponent
        arr = np.asarray(a, dtype=float)
        if q == 1:
            return np.zeros_like(arr)
        if q == 2:
            return 2.0 * self.scale * np.ones_like(arr)
        with np.errstate(divide="ignore"):
            return self.scale * q * (q - 1) * np.power(a, q - 2)

    def inverse(self, v: float) -> float:
        if v < self.offset:
            raise self._range_error(v)
        return ((v - self.offset) / self.scale) ** (1.0 / self.exponent)


@dataclass(frozen=True)
class HyperbolicNoise(FunctionFamily):
    """Hyperbolic noise variance: scale / (scale + a); equals 1 at zero effort."""

    scale: float = 1.0

    role: ClassVar[str] = "noise"
    unbounded_above: ClassVar[bool] = False

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError(f"HyperbolicNoise needs scale > 0, got {self!r}")
        self._check_monotone()

    def _value(self, a):
        return self.scale / (self.scale + a)

    def _deriv1(self, a):
        return -self.scale / (self.scale + a) ** 2

    def _deriv2(self, a):
        return 2.0 * self.scale / (self.scale + a) ** 3

    def inverse(self, v: float) -> float:
        if not 0 < v <= 1.0:
            raise self._range_error(v)
        return self.scale * (1.0 - v) / v


@dataclass(frozen=True)
class ExpNoise(FunctionFamily):
    """Exponentially decaying noise variance: initial * exp(-rate * a)."""

    initial: float = 1.0
    rate: float = 1.0

    role: ClassVar[str] = "noise"
    unbounded_above: ClassVar[bool] = False

    def __post_init__(self):
        if self.initial <= 0 or self.rate <= 0:
            raise ValueError(f"ExpNoise needs initial > 0 and rate > 0, got {self!r}")
        self._check_monotone()

    def _value(self, a):
        return self.initial * np.exp(-self.rate * a)

    def _deriv1(self, a):
        return -self.initial * self.rate * np.exp(-self.rate * a)

    def _deriv2(self, a):
        return self.initial * self.rate**2 * np.exp(-self.rate * a)

    def inverse(self, v: float) -> float:
        if not 0 < v <= self.initial:
            raise self._range_error(v)
        return math.log(self.initial / v) / self.rate


def inverse_by_bisection(family: FunctionFamily, v: float, tol: float = 1e-12) -> float:
    """Invert a family by bisection; fallback for families without closed forms.

    The bracket grows geometrically from [0, 1] until it straddles ``v``;
    bisection then runs until both the interval and the value residual are
    within ``tol`` (absolute). The built-in kinds all override ``inverse``
    with exact closed forms; this routine doubles as an independent oracle.
    """
    increasing = family.role == "cost"
    g0 = float(family.value(0.0)) - v
    if (increasing and g0 > 0) or (not increasing and g0 < 0):
        raise family._range_error(v)
    if g0 == 0.0:
        return 0.0
    hi = 1.0
    for _ in range(200):
        g_hi = float(family.value(hi)) - v
        if (increasing and g_hi >= 0) or (not increasing and g_hi <= 0):
            break
        hi *= 2.0
    else:
        raise family._range_error(v)
    lo = 0.0
    while True:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        g = float(family.value(mid)) - v
        if (g < 0) == increasing:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol and abs(float(family.value(0.5 * (lo + hi))) - v) <= tol:
            break
    return 0.5 * (lo + hi)
