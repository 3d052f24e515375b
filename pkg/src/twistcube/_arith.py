"""Checked 64-bit integer and exact rational helpers."""

from fractions import Fraction

from .errors import ArithmeticOverflowError

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


def checked(value):
    """Return ``value`` unchanged if it fits in a signed 64-bit integer.

    Works for ``int`` and ``Fraction``; a fraction is checked on both its
    numerator and denominator.
    """
    if type(value) is int:
        if INT64_MIN <= value <= INT64_MAX:
            return value
        raise ArithmeticOverflowError(f"integer {value} exceeds 64-bit range")
    if isinstance(value, Fraction):
        if not (INT64_MIN <= value.numerator <= INT64_MAX) or value.denominator > INT64_MAX:
            raise ArithmeticOverflowError(f"rational {value} exceeds 64-bit range")
        return value
    if not (INT64_MIN <= value <= INT64_MAX):
        raise ArithmeticOverflowError(f"integer {value} exceeds 64-bit range")
    return value


def as_exact(value):
    """Coerce ``value`` to ``int`` or ``Fraction``; floats are rejected."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")
