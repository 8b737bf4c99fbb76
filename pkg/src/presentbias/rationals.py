"""Exact rational parsing and formatting.

All quantities in this package are fractions.Fraction values; floats are
rejected everywhere so that ties and strict inequalities stay exact.
Rationals serialize as a bare integer when integral, else as "p/q".
"""

from fractions import Fraction


def rat(value) -> Fraction:
    """Coerce an int, "p/q" / "p" string, or Fraction to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"not a rational: {value!r} (floats are not accepted)")


def fmt(value: Fraction) -> str:
    """Render exactly: "3" for integers, "3/2" otherwise."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def json_number(value: Fraction):
    """Graph-file form: bare int when integral, else the "p/q" string."""
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return fmt(value)
