"""Rational number parsing/serialization helpers.

Exact values travel through JSON as strings ("3", "-1/2"); floats stay IEEE-754
doubles. `as_fraction` is the single choke point for turning external numeric
input into `fractions.Fraction` without silently accepting binary-float noise.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import InputError


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to Fraction.

    Floats are rejected: exact-mode data must be given exactly.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError("booleans are not rational values")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse rational {value!r}") from exc
    if isinstance(value, float):
        raise InputError(
            f"refusing to coerce float {value!r} to an exact rational; "
            "pass a 'p/q' string instead"
        )
    raise InputError(f"cannot interpret {type(value).__name__} as a rational")


def frac_str(value: Fraction) -> str:
    """Serialize a Fraction the way it was parsed ('3', '-1/2')."""
    return str(Fraction(value))


def lcm_int(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def common_denominator(fracs) -> int:
    """Positive lcm of the denominators of an iterable of Fractions."""
    den = 1
    for f in fracs:
        den = lcm_int(den, f.denominator)
    return den


def scaled_ints(fracs, den: int) -> list:
    """Integer numerators of `fracs` over the common denominator `den`."""
    return [int(f.numerator * (den // f.denominator)) for f in fracs]
