"""Probability coercion and rendering shared by every module.

Values are kept in one of two modes.  Exact inputs (``int``, ``Fraction``,
``Decimal``, decimal strings such as ``"0.3"`` or ratios such as ``"5/9"``)
become :class:`fractions.Fraction`; ``float`` inputs stay ``float``.  Mixing
the two degrades to float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Iterator, Union

Real = Union[Fraction, float]

FLOAT_TOLERANCE = 1e-12


def to_real(value, name: str = "value") -> Real:
    if isinstance(value, bool):
        raise TypeError(f"{name} must be a number, not bool")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise ValueError(f"{name} must be finite, got {value}")
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"{name}: cannot parse {value!r} as a number") from exc
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value}")
        return value
    raise TypeError(f"{name} must be a number, got {type(value).__name__}")


def to_probability(value, name: str = "p") -> Real:
    x = to_real(value, name)
    if not 0 <= x <= 1:
        raise ValueError(f"{name} must lie in [0, 1], got {x}")
    return x


def is_exact(*values) -> bool:
    return all(isinstance(v, Fraction) for v in values)


def unify(*values: Real) -> tuple:
    """Return ``values`` in a common mode (all Fraction, or all float)."""
    if is_exact(*values):
        return values
    return tuple(float(v) for v in values)


def default_tolerance(*values: Real) -> Real:
    return Fraction(0) if is_exact(*values) else FLOAT_TOLERANCE


def check_tolerance(tolerance, *values: Real) -> Real:
    if tolerance is None:
        return default_tolerance(*values)
    tol = to_real(tolerance, "tolerance")
    if tol < 0:
        raise ValueError(f"tolerance must be nonnegative, got {tol}")
    return tol


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[low, high]``."""

    low: Real
    high: Real

    def __post_init__(self):
        if self.low > self.high:
            raise ValueError(f"inverted interval [{self.low}, {self.high}]")

    def __iter__(self) -> Iterator[Real]:
        yield self.low
        yield self.high

    def __contains__(self, x) -> bool:
        return self.low <= x <= self.high


def _terminates(den: int) -> bool:
    for f in (2, 5):
        while den % f == 0:
            den //= f
    return den == 1


def decimal_str(x: Real, max_digits: int = 40) -> str:
    """Full-precision decimal rendering.

    Fractions whose expansion terminates within ``max_digits`` places are
    written exactly; anything else falls back to the shortest float repr.
    """
    if isinstance(x, float):
        return repr(x)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    if _terminates(x.denominator):
        places = 0
        scaled = x
        while scaled.denominator != 1 and places < max_digits:
            scaled *= 10
            places += 1
        if scaled.denominator == 1:
            sign = "-" if scaled < 0 else ""
            digits = str(abs(scaled.numerator)).rjust(places + 1, "0")
            return f"{sign}{digits[:-places]}.{digits[-places:]}"
    return repr(float(x))


def two_decimals(x: Real) -> str:
    if isinstance(x, Fraction):
        return f"{float(round(x, 2)):.2f}"
    return f"{x:.2f}"


def exact_str(x: Real) -> str:
    """``num/den`` for fractions, float repr otherwise."""
    if isinstance(x, Fraction):
        return str(x)
    return repr(x)


def encode_number(x: Real):
    """JSON encoding: ``{"num", "den"}`` for rationals, decimal string for floats."""
    if x is None:
        return None
    if isinstance(x, bool):
        raise TypeError("bool is not a number here")
    if isinstance(x, (Fraction, int)):
        x = Fraction(x)
        return {"num": x.numerator, "den": x.denominator}
    return repr(float(x))


def decode_number(obj) -> Real:
    if obj is None:
        return None
    if isinstance(obj, dict):
        return Fraction(obj["num"], obj["den"])
    if isinstance(obj, str):
        return float(obj)
    raise TypeError(f"cannot decode number from {obj!r}")
