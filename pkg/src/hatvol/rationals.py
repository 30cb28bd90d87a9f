"""Rational scalars and their "p/q" wire format.

All exact quantities in this package are `fractions.Fraction` values,
which are kept in lowest terms with a positive denominator by the
standard library. They serialize as "p/q", or "p" when the denominator
is one.
"""

import math
from fractions import Fraction

from .errors import ValidationError


def parse_rational(value):
    """Parse an int, Fraction or "p/q" string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError("invalid-rational", f"cannot parse rational {value!r}") from exc
    raise ValidationError("invalid-rational", f"cannot parse rational from {type(value).__name__}")


def format_rational(x):
    """Format a Fraction as "p/q", or "p" when integral."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def fraction_floor(x):
    return math.floor(x)


def fraction_ceil(x):
    return math.ceil(x)
