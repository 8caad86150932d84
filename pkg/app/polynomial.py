# Exact integer polynomials, Sturm sequences and real-root isolation.
#
# A raw polynomial is a list of int coefficients, index = power:
# [1, -8, 18, -12] is 1 - 8p + 18p^2 - 12p^3. Trailing zeros are stripped by
# normalize(); [] is the zero polynomial. The IntPolynomial model wraps these
# lists at the API boundary.

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import InternalConsistencyError, InvalidArgumentError
from .models import IntPolynomial, RootInterval
from .rational import parse_rational, render_rational

logger = logging.getLogger(__name__)

Raw = list[int]


def normalize(a: Sequence[int]) -> Raw:
    size = len(a)
    while size and a[size - 1] == 0:
        size -= 1
    return list(a[:size])


def add(a: Sequence[int], b: Sequence[int]) -> Raw:
    if len(a) < len(b):
        a, b = b, a
    res = list(a)
    for i, coefficient in enumerate(b):
        res[i] += coefficient
    return normalize(res)


def scale(a: Sequence[int], factor: int) -> Raw:
    return normalize([x * factor for x in a])


def mul(a: Sequence[int], b: Sequence[int]) -> Raw:
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] += x * y
    return normalize(res)


def power(a: Sequence[int], exponent: int) -> Raw:
    result: Raw = [1]
    base = normalize(a)
    while exponent:
        if exponent & 1:
            result = mul(result, base)
        exponent >>= 1
        if exponent:
            base = mul(base, base)
    return result


def der(a: Sequence[int]) -> Raw:
    return normalize([i * a[i] for i in range(1, len(a))])


def evaluate(a: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for coefficient in reversed(a):
        acc = acc * x + coefficient
    return acc


def sign_at(a: Sequence[int], x: Fraction) -> int:
    """Sign of a(x) from the homogenised integer value b^d a(num/b)."""
    num, den = x.numerator, x.denominator
    acc = 0
    den_power = 1
    for coefficient in reversed(a):
        acc = acc * num + coefficient * den_power
        den_power *= den
    return (acc > 0) - (acc < 0)


def content(a: Sequence[int]) -> int:
    return gcd(*a) if a else 0


def primitive(a: Sequence[int]) -> Raw:
    """Divide out the (positive) content; the sign of every coefficient is kept."""
    a = normalize(a)
    c = content(a)
    if c <= 1:
        return a
    return [x // c for x in a]


def pseudo_divmod(a: Sequence[int], b: Sequence[int]) -> tuple[Raw, Raw]:
    """Return (q, r) with |lc(b)|^(deg a - deg b + 1) * a = q * b + r.

    The multiplier is positive, so signs survive; that is what Sturm chains need.
    """
    a, b = normalize(a), normalize(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    shift = len(a) - len(b)
    lead = b[-1]
    rem = [x * abs(lead) ** (shift + 1) for x in a]
    quot = [0] * (shift + 1)
    for k in range(shift, -1, -1):
        top = rem[k + len(b) - 1]
        if top:
            coefficient, leftover = divmod(top, lead)
            if leftover:
                raise InternalConsistencyError(f"inexact pseudo-division step: {top} by {lead}")
            quot[k] = coefficient
            for i, y in enumerate(b):
                rem[k + i] -= coefficient * y
    return normalize(quot), normalize(rem)


def poly_gcd(a: Sequence[int], b: Sequence[int]) -> Raw:
    """gcd over Q, returned primitive with positive leading coefficient (primitive PRS)."""
    a, b = primitive(a), primitive(b)
    if not a:
        result = b
    elif not b:
        result = a
    else:
        while b:
            _, r = pseudo_divmod(a, b)
            a, b = b, primitive(r)
        result = a
    if result and result[-1] < 0:
        result = [-x for x in result]
    return result


def square_free_part(a: Sequence[int]) -> Raw:
    """a / gcd(a, a'), primitive, same sign orientation as a."""
    a = primitive(a)
    if len(a) <= 2:
        return a
    g = poly_gcd(a, der(a))
    if len(g) == 1:
        return a
    quot, rem = pseudo_divmod(a, g)
    if rem:
        raise InternalConsistencyError("gcd does not divide the polynomial")
    return primitive(quot)


def sturm_sequence(a: Sequence[int]) -> list[Raw]:
    """Sturm chain a, a', -rem(...), ... with each remainder scaled by a positive constant."""
    chain = [primitive(a)]
    if len(chain[0]) <= 1:
        return chain
    chain.append(primitive(der(chain[0])))
    while len(chain[-1]) > 1:
        _, r = pseudo_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append(primitive([-x for x in r]))
    return chain


def sign_variations(chain: Sequence[Sequence[int]], x: Fraction) -> int:
    signs = [s for s in (sign_at(poly, x) for poly in chain) if s]
    return sum(1 for left, right in zip(signs, signs[1:]) if left != right)


@dataclass(frozen=True)
class SturmChain:
    """A square-free polynomial with its Sturm chain, reusable across many counts."""

    poly: tuple[int, ...]
    chain: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, a: Sequence[int]) -> "SturmChain":
        sf = square_free_part(a)
        return cls(poly=tuple(sf), chain=tuple(tuple(p) for p in sturm_sequence(sf)))

    def count(self, lo: Fraction, hi: Fraction) -> int:
        """Distinct real roots in the half-open interval (lo, hi]."""
        if len(self.poly) <= 1:
            return 0
        return sign_variations(self.chain, lo) - sign_variations(self.chain, hi)

    def sign(self, x: Fraction) -> int:
        return sign_at(self.poly, x)


def _check_nonzero(poly: IntPolynomial) -> None:
    if poly.is_zero():
        raise InvalidArgumentError("the zero polynomial has infinitely many roots")


def derivative(poly: IntPolynomial) -> IntPolynomial:
    """Formal derivative; a constant differentiates to the zero polynomial."""
    return IntPolynomial(coefficients=tuple(der(poly.coefficients)))


def sturm_root_count(poly: IntPolynomial, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of poly in (lo, hi]."""
    _check_nonzero(poly)
    lo, hi = parse_rational(lo), parse_rational(hi)
    if not lo < hi:
        raise InvalidArgumentError(f"need lo < hi, got ({render_rational(lo)}, {render_rational(hi)})")
    return SturmChain.of(poly.coefficients).count(lo, hi)


def _exact_root_interval(
    sturm: SturmChain, root: Fraction, a: Fraction, b: Fraction, width: Fraction
) -> tuple[Fraction, Fraction]:
    radius = min(width / 2, (b - a) / 4)
    while True:
        lo, hi = root - radius, root + radius
        if sturm.sign(lo) and sturm.sign(hi) and sturm.count(lo, hi) == 1:
            return lo, hi
        radius /= 2


def _isolate(sturm: SturmChain, lo: Fraction, hi: Fraction, width: Fraction) -> list[tuple[Fraction, Fraction, Fraction | None]]:
    exclude_hi = sturm.sign(hi) == 0
    found: list[tuple[Fraction, Fraction, Fraction | None]] = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        count = sturm.count(a, b)
        if exclude_hi and b == hi:
            count -= 1
        if count <= 0:
            continue
        if count == 1 and b - a <= width:
            found.append((a, b, None))
            continue
        mid = (a + b) / 2
        if sturm.sign(mid) == 0:
            r_lo, r_hi = _exact_root_interval(sturm, mid, a, b, width)
            found.append((r_lo, r_hi, mid))
            stack.append((r_hi, b))
            stack.append((a, r_lo))
        else:
            stack.append((mid, b))
            stack.append((a, mid))
    found.sort(key=lambda item: item[0])
    logger.debug("isolated %d roots in (%s, %s]", len(found), lo, hi)
    return found


def refine_interval(sturm: SturmChain, interval: RootInterval, width: Fraction) -> RootInterval:
    """Shrink an isolating interval by bisection until it is no wider than width."""
    if interval.exact is not None:
        radius = min(width / 2, interval.width / 2)
        return interval.model_copy(update={"lo": interval.exact - radius, "hi": interval.exact + radius})
    a, b = interval.lo, interval.hi
    while b - a > width:
        mid = (a + b) / 2
        if sturm.sign(mid) == 0:
            return RootInterval(lo=mid - width / 4, hi=mid + width / 4, exact=mid,
                                multiplicity_note=interval.multiplicity_note)
        if sturm.count(a, mid) == 1:
            b = mid
        else:
            a = mid
    return interval.model_copy(update={"lo": a, "hi": b})


def isolate_roots(poly: IntPolynomial, lo: Fraction, hi: Fraction, width: Fraction) -> list[RootInterval]:
    """Disjoint intervals of width <= width, each holding exactly one distinct root in (lo, hi).

    Roots hit exactly by a bisection midpoint are reported with ``exact`` set.
    Roots of multiplicity > 1 in the original polynomial are marked "unresolved".
    """
    _check_nonzero(poly)
    lo, hi, width = parse_rational(lo), parse_rational(hi), parse_rational(width)
    if width <= 0:
        raise InvalidArgumentError(f"width must be positive, got {render_rational(width)}")
    if not lo < hi:
        raise InvalidArgumentError(f"need lo < hi, got ({render_rational(lo)}, {render_rational(hi)})")
    raw = normalize(poly.coefficients)
    sturm = SturmChain.of(raw)
    repeated = poly_gcd(raw, der(raw))
    repeated_chain = SturmChain.of(repeated) if len(repeated) > 1 else None
    intervals = []
    for a, b, exact in _isolate(sturm, lo, hi, width):
        note = "simple"
        if repeated_chain is not None:
            if exact is not None:
                multiple = sign_at(repeated, exact) == 0
            else:
                multiple = repeated_chain.count(a, b) > 0
            note = "unresolved" if multiple else "simple"
        intervals.append(RootInterval(lo=a, hi=b, exact=exact, multiplicity_note=note))
    return intervals
