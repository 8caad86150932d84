from fractions import Fraction
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

from .rational import HALF, ONE, ZERO, Rational

MomentMethod = Literal["composition", "binomsum", "recurrence", "bruteforce", "general"]
ValiditySource = Literal["computed", "user", "unverified", "off"]


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True)


class Composition(_Frozen):
    """An ordered integer partition (composition) of ``total``."""

    parts: tuple[int, ...]

    @field_validator("parts")
    @classmethod
    def _positive_parts(cls, parts: tuple[int, ...]) -> tuple[int, ...]:
        if not parts:
            raise ValueError("a composition has at least one part")
        if any(part < 1 for part in parts):
            raise ValueError("composition parts must be positive")
        return parts

    @computed_field
    @property
    def total(self) -> int:
        return sum(self.parts)

    @computed_field
    @property
    def size(self) -> int:
        return len(self.parts)


class MomentValue(_Frozen):
    """E S_n^{2m}(p) together with the route that produced it."""

    n: int = Field(ge=1)
    m: int = Field(ge=1)
    p: Rational
    value: Rational
    method: MomentMethod


class RecurrenceCoeffs(_Frozen):
    """Coefficients of the linear recurrence in m for E S_n^{2m}(1/2)."""

    n: int = Field(ge=1)
    ell: int = Field(ge=0)
    a: tuple[Rational, ...]
    c: tuple[Rational, ...]


class IntPolynomial(_Frozen):
    """Dense polynomial in p with exact integer coefficients; index = power of p."""

    coefficients: tuple[int, ...] = ()

    @field_validator("coefficients")
    @classmethod
    def _strip_leading_zeros(cls, coefficients: tuple[int, ...]) -> tuple[int, ...]:
        size = len(coefficients)
        while size and coefficients[size - 1] == 0:
            size -= 1
        return tuple(coefficients[:size])

    @computed_field
    @property
    def degree(self) -> int:
        """Highest nonzero index; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x: Fraction) -> Fraction:
        """Evaluate exactly by Horner's rule."""
        acc = ZERO
        for coefficient in reversed(self.coefficients):
            acc = acc * x + coefficient
        return acc


class RootInterval(_Frozen):
    """An interval certified to hold exactly one distinct real root.

    ``exact`` is set when bisection hit the root itself (for instance p = 1/2).
    """

    lo: Rational
    hi: Rational
    exact: Optional[Rational] = None
    multiplicity_note: Literal["simple", "unresolved"] = "simple"

    @model_validator(mode="after")
    def _ordered(self) -> "RootInterval":
        if not self.lo < self.hi:
            raise ValueError("root interval needs lo < hi")
        return self

    @computed_field
    @property
    def width(self) -> Rational:
        return self.hi - self.lo

    def mirrored(self) -> "RootInterval":
        """The interval reflected through p = 1/2."""
        exact = None if self.exact is None else ONE - self.exact
        return RootInterval(lo=ONE - self.hi, hi=ONE - self.lo, exact=exact, multiplicity_note=self.multiplicity_note)


class ArgmaxReport(_Frozen):
    n: int
    m: int
    is_half_argmax: bool
    maximizers: tuple[RootInterval, ...]
    critical_points: tuple[RootInterval, ...]
    max_value_bounds: tuple[Rational, Rational]
    value_at_half: Rational
    notes: tuple[str, ...] = ()

    @model_validator(mode="after")
    def _half_verdict_consistent(self) -> "ArgmaxReport":
        if self.is_half_argmax and [r.exact for r in self.maximizers] != [HALF]:
            raise ValueError("a half-argmax report must list exactly the point 1/2")
        return self


class MnRow(_Frozen):
    n: int
    m_n: int
    capped: bool
    warning: bool = False


class MnTable(_Frozen):
    m_cap: int
    rows: tuple[MnRow, ...]


class BoundRow(_Frozen):
    m: int
    bound: Rational
    selectable: bool = True
    asymptotic_bound: Optional[Rational] = None


class BoundProfile(_Frozen):
    n: int
    epsilon: Rational
    rows: tuple[BoundRow, ...]
    best_m: int
    best_bound: Rational
    validity_cap: Optional[int] = None
    validity_source: ValiditySource = "off"
    asymptotic_m_star: Optional[int] = None


class PlanQuery(_Frozen):
    epsilon: Rational
    delta: Optional[Rational] = None
    m: Optional[int] = Field(default=None, ge=1)
    m_cap: int = Field(default=25, ge=1)
    strict: bool = False
    coupled: bool = False

    @model_validator(mode="after")
    def _inside_unit_interval(self) -> "PlanQuery":
        delta = self.effective_delta
        if not ZERO < self.epsilon < ONE:
            raise ValueError("epsilon must lie strictly between 0 and 1")
        if delta is None:
            raise ValueError("delta is required unless the coupled form is requested")
        if not ZERO < delta < ONE:
            raise ValueError("delta must lie strictly between 0 and 1")
        return self

    @property
    def effective_delta(self) -> Optional[Fraction]:
        """The risk level; in the coupled form the tolerance doubles as the risk."""
        return self.epsilon if self.coupled else self.delta


class PlanResult(_Frozen):
    n_star: int
    m_used: int
    achieved_bound: Rational
    effective_sample_size: Rational
    epsilon: Rational
    delta: Rational
    validity_source: ValiditySource = "off"


class AsymptoticRow(_Frozen):
    m: int
    b: Rational


class AsymptoticProfile(_Frozen):
    ntilde: Rational
    b: tuple[AsymptoticRow, ...]
    m_star: int
    decreasing_through: int


class McTailResult(_Frozen):
    n: int
    p: float
    epsilon: float
    samples: int
    seed: int
    hits: int
    estimate: float
    stderr: float


class OutputRecord(BaseModel):
    """One CLI invocation: inputs and results, rationals rendered as ``"num/den"``."""

    command: str
    inputs: dict[str, Any]
    results: dict[str, Any]
    decimals: Optional[dict[str, str]] = None
