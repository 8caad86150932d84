"""Exact rational values.

``fractions.Fraction`` is the ExactRational of this package: always in lowest
terms with a positive denominator, and every operation on it is exact. This
module adds parsing from user text, the canonical ``"num/den"`` rendering and
a pydantic-aware ``Rational`` annotation so models serialise without loss.
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Annotated, Any

from pydantic import GetCoreSchemaHandler, GetJsonSchemaHandler
from pydantic.json_schema import JsonSchemaValue
from pydantic_core import core_schema

from .errors import InvalidArgumentError

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def parse_rational(value: Any) -> Fraction:
    """Convert user input to an exact Fraction.

    Accepts Fractions, ints, Decimals and strings of the forms ``"num/den"``,
    ``"17"`` and decimal literals such as ``"0.05"`` or ``"1e-3"`` (converted
    exactly through powers of ten). Floats are rejected: they are not exact.
    """
    if isinstance(value, bool):
        raise InvalidArgumentError(f"not a rational number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise InvalidArgumentError(f"not a finite number: {value}")
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidArgumentError(f"not a rational number: {value!r}") from exc
    raise InvalidArgumentError(f"expected an exact rational, got {type(value).__name__}: {value!r}")


def render_rational(value: Fraction) -> str:
    """Render as ``"num/den"``; the denominator is always written, even when 1."""
    return f"{value.numerator}/{value.denominator}"


def check_probability(p: Fraction, *, open_interval: bool = False, name: str = "p") -> Fraction:
    """Validate that p lies in [0, 1] (or (0, 1) when open_interval)."""
    if open_interval:
        if not ZERO < p < ONE:
            raise InvalidArgumentError(f"{name} must lie strictly between 0 and 1, got {render_rational(p)}")
    elif not ZERO <= p <= ONE:
        raise InvalidArgumentError(f"{name} must lie in [0, 1], got {render_rational(p)}")
    return p


def check_positive_int(value: int, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise InvalidArgumentError(f"{name} must be a positive integer, got {value!r}")
    return value


class _RationalAnnotation:
    """pydantic hook: validate with parse_rational, serialise to ``"num/den"`` in JSON."""

    @classmethod
    def __get_pydantic_core_schema__(cls, source_type: Any, handler: GetCoreSchemaHandler) -> core_schema.CoreSchema:
        return core_schema.no_info_plain_validator_function(
            parse_rational,
            serialization=core_schema.plain_serializer_function_ser_schema(
                render_rational, when_used="json"
            ),
        )

    @classmethod
    def __get_pydantic_json_schema__(
        cls, _schema: core_schema.CoreSchema, handler: GetJsonSchemaHandler
    ) -> JsonSchemaValue:
        return {"type": "string", "pattern": r"^-?\d+/\d+$", "examples": ["1/20"]}


Rational = Annotated[Fraction, _RationalAnnotation]
