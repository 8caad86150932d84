"""Where in p is E S_n^{2m}(p) largest?

The moment is an integer polynomial P_{n,m}(p) symmetric about p = 1/2. The
point 1/2 is the unique maximizer exactly when P' > 0 on (0, 1/2). That test
runs on the folded polynomial: P(1/2 + s/2) is even in s, so it is a
polynomial Q in v = s^2 of half the degree, and p in (0, 1/2) corresponds to
v in (0, 1) with sign P'(p) = -sign Q'(v).
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import comb
from typing import Optional

from . import polynomial as poly
from .config import get_settings
from .errors import IndistinguishableMaximaError, InternalConsistencyError, InvalidArgumentError
from .models import ArgmaxReport, IntPolynomial, MnRow, MnTable, RootInterval
from .polynomial import SturmChain, isolate_roots, refine_interval
from .rational import HALF, ONE, ZERO, check_positive_int, parse_rational, render_rational

logger = logging.getLogger(__name__)

DEFAULT_WIDTH = Fraction(1, 10**12)

# Radius^2 of maximizers 1/2 +- sqrt(r) with a known closed form, and the
# location quoted for the same case, which the certified intervals adjudicate.
_CLOSED_FORM_MAXIMIZERS = {(1, 2): (Fraction(1, 12), "1/2 ± √3/6", "6p^2 - 6p + 1")}
_QUOTED_MAXIMIZERS = {(1, 2): (Fraction(1, 8), "1/2 ± √2/4")}


def _check_nm(n: int, m: int) -> None:
    check_positive_int(n, "n")
    check_positive_int(m, "m")


def _moment_raw(n: int, m: int) -> list[int]:
    p, q = [0, 1], [1, -1]
    total: list[int] = []
    for k in range(n + 1):
        term = poly.mul(poly.power(p, k), poly.power(q, n - k))
        term = poly.mul(term, poly.power([k, -n], 2 * m))
        total = poly.add(total, poly.scale(term, comb(n, k)))
    return total


def moment_polynomial(n: int, m: int) -> IntPolynomial:
    """P_{n,m}(p) = sum_k binom(n,k) p^k (1-p)^(n-k) (k - np)^(2m), expanded exactly."""
    _check_nm(n, m)
    return IntPolynomial(coefficients=tuple(_moment_raw(n, m)))


def folded_moment_polynomial(n: int, m: int) -> IntPolynomial:
    """Q with Q(s^2) = 2^(n+2m) P_{n,m}((1+s)/2).

    Built directly in s from p = (1+s)/2, q = (1-s)/2 and k - np = (2k - n - ns)/2.
    The odd coefficients in s vanish by symmetry; a nonzero one is an internal error.
    """
    _check_nm(n, m)
    total: list[int] = []
    for k in range(n + 1):
        term = poly.mul(poly.power([1, 1], k), poly.power([1, -1], n - k))
        term = poly.mul(term, poly.power([2 * k - n, -n], 2 * m))
        total = poly.add(total, poly.scale(term, comb(n, k)))
    if any(total[1::2]):
        raise InternalConsistencyError(f"moment polynomial for n={n}, m={m} is not symmetric about 1/2")
    return IntPolynomial(coefficients=tuple(total[0::2]))


def _sign_scan_negative(dq: list[int]) -> bool:
    """True when dq <= 0 on (0, 1) with only isolated zeros (the square-factor fallback)."""
    intervals = isolate_roots(IntPolynomial(coefficients=tuple(dq)), ZERO, ONE, Fraction(1, 64))
    points = [Fraction(1, 4)] + [x for interval in intervals for x in (interval.lo, interval.hi)]
    return all(poly.sign_at(dq, x) < 0 for x in points if ZERO < x < ONE and poly.sign_at(dq, x) != 0)


def _open_unit_roots(a: list[int]) -> int:
    """Distinct roots in the open interval (0, 1); v = 1 is p = 0 and never counts."""
    chain = SturmChain.of(a)
    return chain.count(ZERO, ONE) - (1 if chain.sign(ONE) == 0 else 0)


def is_half_argmax(n: int, m: int) -> bool:
    """Decide whether p = 1/2 is the unique maximizer of E S_n^{2m}(p) on [0, 1].

    True iff P' has no sign change in (0, 1/2) and P'(1/4) > 0. A derivative
    root of even multiplicity in (0, 1/2) does not change the sign; it is
    detected through gcd(Q', Q'') and settled by a sign scan.
    """
    _check_nm(n, m)
    dq = poly.der(list(folded_moment_polynomial(n, m).coefficients))
    if not dq:
        raise InternalConsistencyError(f"moment polynomial for n={n}, m={m} is constant")
    roots = _open_unit_roots(dq)
    logger.debug("n=%d m=%d: %d folded derivative roots in (0, 1)", n, m, roots)
    if roots == 0:
        return poly.sign_at(dq, Fraction(1, 4)) < 0
    repeated = poly.poly_gcd(dq, poly.der(dq))
    if len(repeated) > 1 and _open_unit_roots(repeated) > 0:
        logger.debug("n=%d m=%d: repeated derivative root in (0, 1/2); scanning signs", n, m)
        return _sign_scan_negative(dq)
    return False


def _value_bounds(p_raw: list[int], dp_abs: list[int], interval: RootInterval) -> tuple[Fraction, Fraction]:
    """Exact bracket [lower, upper] for P at the critical point inside interval."""
    if interval.exact is not None:
        value = poly.evaluate(p_raw, interval.exact)
        return value, value
    lower = max(poly.evaluate(p_raw, interval.lo), poly.evaluate(p_raw, interval.hi))
    # |P'(x)| <= sum |c_i| hi^i on [0, hi]
    slope = poly.evaluate(dp_abs, interval.hi)
    return lower, lower + interval.width * slope


def _contains_half_minus_sqrt(interval: RootInterval, radius_sq: Fraction) -> bool:
    """Whether 1/2 - sqrt(radius_sq) lies in (lo, hi), decided without irrationals."""
    if interval.hi > HALF:
        return False
    return (HALF - interval.hi) ** 2 < radius_sq < (HALF - interval.lo) ** 2


def _closed_form_notes(n: int, m: int, left: Optional[RootInterval]) -> list[str]:
    notes = []
    if left is None or left.exact is not None:
        return notes
    if (n, m) in _CLOSED_FORM_MAXIMIZERS:
        radius_sq, label, factor = _CLOSED_FORM_MAXIMIZERS[(n, m)]
        if _contains_half_minus_sqrt(left, radius_sq):
            notes.append(f"maximizers certified at {label} (roots of {factor})")
        else:
            notes.append(f"closed form {label} is not inside the certified maximizer intervals")
    if (n, m) in _QUOTED_MAXIMIZERS:
        radius_sq, label = _QUOTED_MAXIMIZERS[(n, m)]
        if _contains_half_minus_sqrt(left, radius_sq):
            notes.append(f"certified maximizers agree with the quoted location {label}")
        else:
            notes.append(f"the quoted location {label} lies outside the certified maximizer intervals")
    return notes


def argmax_report(n: int, m: int, width: Fraction = DEFAULT_WIDTH) -> ArgmaxReport:
    """Critical points, maximizers and the bracketed maximum of P_{n,m} on [0, 1]."""
    _check_nm(n, m)
    width = parse_rational(width)
    if width <= 0:
        raise InvalidArgumentError(f"width must be positive, got {render_rational(width)}")
    p_raw = _moment_raw(n, m)
    dp = poly.der(p_raw)
    dp_abs = [abs(c) for c in dp]
    sturm = SturmChain.of(dp)
    critical = isolate_roots(IntPolynomial(coefficients=tuple(dp)), ZERO, ONE, width)
    value_at_half = poly.evaluate(p_raw, HALF)
    verdict = is_half_argmax(n, m)

    if verdict:
        half = next((c for c in critical if c.exact == HALF), None)
        if half is None:
            half = RootInterval(lo=HALF - width / 2, hi=HALF + width / 2, exact=HALF)
        return ArgmaxReport(
            n=n, m=m, is_half_argmax=True, maximizers=(half,), critical_points=tuple(critical),
            max_value_bounds=(value_at_half, value_at_half), value_at_half=value_at_half,
        )

    def is_local_max(interval: RootInterval) -> bool:
        return poly.sign_at(dp, interval.lo) > 0 and poly.sign_at(dp, interval.hi) < 0

    # Roots are symmetric about 1/2, so the i-th critical point mirrors the (L-1-i)-th;
    # one representative per class (the left member, or 1/2 itself) is refined.
    count = len(critical)
    classes = [critical[i] for i in range((count + 1) // 2) if is_local_max(critical[i])]
    if not classes:
        raise InternalConsistencyError(f"no interior local maximum found for n={n}, m={m}")

    floor = Fraction(1, 2 ** get_settings().refine_floor_bits)
    current = width
    while True:
        bounds = [_value_bounds(p_raw, dp_abs, c) for c in classes]
        best = max(range(len(classes)), key=lambda i: bounds[i][0])
        separated = all(bounds[best][0] > bounds[i][1] for i in range(len(classes)) if i != best)
        if separated:
            break
        current /= 2
        if current < floor:
            raise IndistinguishableMaximaError(
                f"maxima for n={n}, m={m} could not be separated at interval width {render_rational(floor)}"
            )
        logger.debug("refining %d maximizer candidates to width %s", len(classes), current)
        classes = [refine_interval(sturm, c, current) for c in classes]

    left = classes[best]
    maximizers = (left,) if left.exact == HALF else (left, left.mirrored())
    notes = _closed_form_notes(n, m, left)
    return ArgmaxReport(
        n=n, m=m, is_half_argmax=False, maximizers=maximizers, critical_points=tuple(critical),
        max_value_bounds=bounds[best], value_at_half=value_at_half, notes=tuple(notes),
    )


def compute_mn(n: int, m_cap: int) -> MnRow:
    """Largest m <= m_cap such that 1/2 is the argmax for every order up to 2m.

    The scan stops at the first failure even if a larger m would pass again.
    """
    check_positive_int(n, "n")
    check_positive_int(m_cap, "m_cap")
    m_n = 0
    for m in range(1, m_cap + 1):
        if not is_half_argmax(n, m):
            break
        m_n = m
    if m_n == 0:
        logger.warning("p = 1/2 is not the argmax already at m = 1 for n = %d", n)
    return MnRow(n=n, m_n=m_n, capped=m_n == m_cap, warning=m_n == 0)


def _mn_row(args: tuple[int, int]) -> MnRow:
    return compute_mn(*args)


def mn_table(n_min: int, n_max: int, m_cap: int, workers: int = 1) -> MnTable:
    """compute_mn for every n in [n_min, n_max]; rows always ordered by n."""
    check_positive_int(n_min, "n_min")
    check_positive_int(n_max, "n_max")
    check_positive_int(m_cap, "m_cap")
    if n_min > n_max:
        raise InvalidArgumentError(f"n_min ({n_min}) must not exceed n_max ({n_max})")
    jobs = [(n, m_cap) for n in range(n_min, n_max + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_mn_row, jobs))
    else:
        rows = [_mn_row(job) for job in jobs]
    logger.info("m_n table for n = %d..%d computed (cap %d)", n_min, n_max, m_cap)
    return MnTable(m_cap=m_cap, rows=tuple(rows))
