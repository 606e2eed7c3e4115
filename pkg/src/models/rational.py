"""
Exact rational scalars for pydantic models.

Every exact quantity in the package is a ``fractions.Fraction``. Inside models
it is declared with the ``Rational`` annotated type, which parses integers,
``Fraction`` objects and strings such as ``"3/4"`` or ``"1.2599"`` and dumps
back to canonical ``"num/den"`` strings (integers as ``"n"``).
"""

from fractions import Fraction
from typing import Annotated, Any

from pydantic import ConfigDict, PlainSerializer, PlainValidator


def parse_rational(value: Any) -> Fraction:
    """
    Convert user or JSON input into a canonical ``Fraction``.

    Args:
        value: int, Fraction or string ("p/q", "n", or a finite decimal)

    Returns:
        Canonical Fraction (reduced, positive denominator)

    Raises:
        ValueError: On floats, booleans or malformed strings

    Example:
        >>> parse_rational("6/8")
        Fraction(3, 4)
    """
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ValueError(f"floats are not accepted for exact quantities: {value!r} (quote it)")
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not a rational number: {value!r}") from e
    raise ValueError(f"cannot interpret {type(value).__name__} as a rational")


def format_rational(value: Fraction) -> str:
    """Canonical string form: "n" for integers, "num/den" otherwise."""
    return str(Fraction(value))


Rational = Annotated[
    Fraction,
    PlainValidator(parse_rational),
    PlainSerializer(format_rational, return_type=str),
]

# Shared model config for exact models holding Fractions.
EXACT_MODEL_CONFIG = ConfigDict(arbitrary_types_allowed=True, frozen=True)
