"""Exact rationals restricted to the closed unit interval.

:class:`UnitRational` is a :class:`fractions.Fraction` that refuses to leave
``[0, 1]``.  Arithmetic on it falls back to plain ``Fraction`` (the sum of two
unit values need not be a unit value); the operations that stay inside the
interval (``min``, ``max``, :func:`complement_value`) hand back ``UnitRational``.
"""
from __future__ import annotations

import re
from fractions import Fraction

__all__ = [
    "UnitRational",
    "RationalError",
    "RationalSyntaxError",
    "ZeroDenominatorError",
    "OutOfUnitIntervalError",
    "ZERO",
    "HALF",
    "ONE",
    "as_unit",
    "complement_value",
    "parse_rational",
    "format_rational",
]


class RationalError(ValueError):
    """Base class for everything :func:`parse_rational` can reject."""


class RationalSyntaxError(RationalError):
    pass


class ZeroDenominatorError(RationalError):
    pass


class OutOfUnitIntervalError(RationalError):
    pass


class UnitRational(Fraction):
    """A rational ``p/q`` with ``0 <= p/q <= 1``, kept in lowest terms."""

    __slots__ = ()

    def __new__(cls, numerator=0, denominator=None):
        if denominator is not None and denominator == 0:
            raise ZeroDenominatorError(f"zero denominator in {numerator}/0")
        self = super().__new__(cls, numerator, denominator)
        if not 0 <= self <= 1:
            raise OutOfUnitIntervalError(f"{Fraction(self)} is outside [0, 1]")
        return self

    def complement(self) -> UnitRational:
        return UnitRational(self.denominator - self.numerator, self.denominator)

    def __repr__(self):
        return f"UnitRational({self.numerator}, {self.denominator})"

    def __str__(self):
        return format_rational(self)

    # Fraction.__reduce__ would rebuild a plain Fraction
    def __reduce__(self):
        return (type(self), (self.numerator, self.denominator))

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self


ZERO = UnitRational(0)
HALF = UnitRational(1, 2)
ONE = UnitRational(1)


def as_unit(value) -> UnitRational:
    """Coerce ints, Fractions and ``"p/q"`` strings to :class:`UnitRational`."""
    if isinstance(value, UnitRational):
        return value
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise TypeError(f"expected an exact rational, got {type(value).__name__}")
    return UnitRational(value)


def complement_value(q: UnitRational) -> UnitRational:
    """``1 - q``, exactly."""
    return as_unit(q).complement()


_RATIONAL = re.compile(r"(?P<num>[0-9]+)(?:/(?P<den>[0-9]+))?")


def parse_rational(text: str) -> UnitRational:
    """Parse ``"p/q"`` or ``"p"`` (decimal digits only) into a unit rational.

    >>> parse_rational("2/4")
    UnitRational(1, 2)
    """
    m = _RATIONAL.fullmatch(text)
    if m is None:
        raise RationalSyntaxError(f"malformed rational {text!r}")
    num = int(m["num"])
    den = 1 if m["den"] is None else int(m["den"])
    if den == 0:
        raise ZeroDenominatorError(f"zero denominator in {text!r}")
    if num > den:
        raise OutOfUnitIntervalError(f"{text!r} is outside [0, 1]")
    return UnitRational(num, den)


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
