"""Moment-optimised Chebyshev bounds and sample-size planning.

For an even order 2m, P(|S_n(p)/n| > eps) <= E S_n^{2m}(1/2) / (n eps)^{2m},
uniformly in p whenever p = 1/2 maximises the 2m-th moment (m <= m_n).
"""

import logging
from fractions import Fraction
from math import ceil, comb, factorial, floor
from typing import Callable, Optional

from .argmax import compute_mn
from .config import get_settings
from .errors import InternalConsistencyError, InvalidArgumentError, ResourceLimitError
from .models import (
    AsymptoticProfile,
    AsymptoticRow,
    BoundProfile,
    BoundRow,
    PlanQuery,
    PlanResult,
    ValiditySource,
)
from .moments import moment_half_grouped
from .rational import ONE, ZERO, check_positive_int, check_probability, parse_rational, render_rational

logger = logging.getLogger(__name__)


def _check_epsilon(epsilon: Fraction) -> Fraction:
    epsilon = parse_rational(epsilon)
    if epsilon <= 0:
        raise InvalidArgumentError(f"epsilon must be positive, got {render_rational(epsilon)}")
    return epsilon


def cheb_bound(n: int, epsilon: Fraction, m: int) -> Fraction:
    """E S_n^{2m}(1/2) / (n eps)^{2m}, exact and unclipped (it may exceed 1)."""
    check_positive_int(n, "n")
    check_positive_int(m, "m")
    epsilon = _check_epsilon(epsilon)
    return moment_half_grouped(n, m) / (n * epsilon) ** (2 * m)


def asymptotic_bound(ntilde: Fraction, m: int) -> Fraction:
    """B_m = 2^(-3m) (2m)!/m! ntilde^(-m), the large-n limit of the order-2m bound."""
    return Fraction(factorial(2 * m), 8**m * factorial(m)) / ntilde**m


def _validity(n: int, m_cap: int, strict: bool, validity_cap: Optional[int]) -> tuple[Optional[int], ValiditySource]:
    if validity_cap is not None:
        return check_positive_int(validity_cap, "validity_cap"), "user"
    if not strict:
        return None, "off"
    limit = get_settings().strict_n_max
    if n > limit:
        logger.warning("m_n is only computed for n <= %d; rows for n = %d are unverified", limit, n)
        return None, "unverified"
    return compute_mn(n, m_cap).m_n, "computed"


def bound_profile(
    n: int,
    epsilon: Fraction,
    m_cap: int,
    *,
    strict: bool = True,
    validity_cap: Optional[int] = None,
) -> BoundProfile:
    """Exact bounds for m = 1..m_cap and the smallest minimiser among selectable rows.

    Rows beyond the validity cap (m_n computed in strict mode, or supplied by
    the caller) are reported but marked not selectable.
    """
    check_positive_int(n, "n")
    check_positive_int(m_cap, "m_cap")
    epsilon = _check_epsilon(epsilon)
    cap, source = _validity(n, m_cap, strict, validity_cap)
    ntilde = n * epsilon**2
    rows = tuple(
        BoundRow(
            m=m,
            bound=cheb_bound(n, epsilon, m),
            selectable=cap is None or m <= cap,
            asymptotic_bound=asymptotic_bound(ntilde, m),
        )
        for m in range(1, m_cap + 1)
    )
    candidates = [row for row in rows if row.selectable]
    if not candidates:
        raise InternalConsistencyError(f"no selectable moment order for n={n} (cap {cap})")
    best = min(candidates, key=lambda row: (row.bound, row.m))
    return BoundProfile(
        n=n,
        epsilon=epsilon,
        rows=rows,
        best_m=best.m,
        best_bound=best.bound,
        validity_cap=cap,
        validity_source=source,
        asymptotic_m_star=asymptotic_profile(ntilde, m_cap).m_star,
    )


def _first_passing(bound: Callable[[int], Fraction], delta: Fraction, limit: int) -> int:
    if bound(1) <= delta:
        return 1
    failing, passing = 1, 2
    while bound(passing) > delta:
        failing = passing
        if passing >= limit:
            raise ResourceLimitError(f"no sample size up to {limit} reaches the requested risk")
        passing = min(passing * 2, limit)
        logger.debug("bracketing: bound still above delta at n = %d", failing)
    while passing - failing > 1:
        mid = (failing + passing) // 2
        if bound(mid) <= delta:
            passing = mid
        else:
            failing = mid
    return passing


def min_sample_size(epsilon: Fraction, delta: Fraction, m: int) -> PlanResult:
    """Smallest n with cheb_bound(n, eps, m) <= delta.

    Exponential bracketing then binary search, both assuming the bound falls
    with n; the crossing is verified and a linear scan takes over if it is not
    the first one.
    """
    epsilon = check_probability(parse_rational(epsilon), open_interval=True, name="epsilon")
    delta = parse_rational(delta)
    if not ZERO < delta <= ONE:
        raise InvalidArgumentError(f"delta must lie in (0, 1], got {render_rational(delta)}")
    check_positive_int(m, "m")
    limit = get_settings().sample_size_limit

    def bound(n: int) -> Fraction:
        return cheb_bound(n, epsilon, m)

    n_star = _first_passing(bound, delta, limit)
    if n_star > 1 and bound(n_star - 1) <= delta:
        logger.warning("bound is not monotone below n = %d for m = %d; scanning linearly", n_star, m)
        n_star = next(n for n in range(1, n_star) if bound(n) <= delta)
    achieved = bound(n_star)
    if achieved > delta:
        raise InternalConsistencyError(f"plan n = {n_star} does not meet delta")
    return PlanResult(
        n_star=n_star,
        m_used=m,
        achieved_bound=achieved,
        effective_sample_size=n_star * epsilon**2,
        epsilon=epsilon,
        delta=delta,
    )


def _plan_validity(plan: PlanResult) -> Optional[ValiditySource]:
    """Return "computed" when m <= m_{n_star}, None when m exceeds it, "unverified" past strict_n_max."""
    if plan.n_star > get_settings().strict_n_max:
        return "unverified"
    return "computed" if compute_mn(plan.n_star, plan.m_used).m_n >= plan.m_used else None


def best_plan(query: PlanQuery) -> PlanResult:
    """min_sample_size over m = 1..m_cap (or the single query.m); smallest n, then smallest m.

    In strict mode a plan whose m exceeds m_{n_star} is discarded when m_n can
    be computed, and marked "unverified" when it cannot.
    """
    delta = query.effective_delta
    orders = [query.m] if query.m is not None else range(1, query.m_cap + 1)
    best: Optional[PlanResult] = None
    for m in orders:
        plan = min_sample_size(query.epsilon, delta, m)
        if query.strict:
            source = _plan_validity(plan)
            if source is None:
                logger.info("m = %d exceeds m_n at n = %d; plan discarded", m, plan.n_star)
                continue
            plan = plan.model_copy(update={"validity_source": source})
        if best is None or plan.n_star < best.n_star:
            best = plan
    if best is None:
        raise InvalidArgumentError("no moment order yields a plan valid under strict mode")
    logger.info("best plan: n = %d with m = %d", best.n_star, best.m_used)
    return best


def exact_tail(n: int, p: Fraction, epsilon: Fraction) -> Fraction:
    """P(|S_n(p)/n| > eps) summed exactly; the inequality is strict."""
    check_positive_int(n, "n")
    p = check_probability(parse_rational(p))
    epsilon = _check_epsilon(epsilon)
    a, b = p.numerator, p.denominator
    threshold = n * epsilon
    total = sum(
        comb(n, k) * a**k * (b - a) ** (n - k)
        for k in range(n + 1)
        if abs(k - n * p) > threshold
    )
    return Fraction(total, b**n)


def asymptotic_profile(ntilde: Fraction, m_cap: int) -> AsymptoticProfile:
    """B_m for m = 1..m_cap, its smallest minimiser, and the ratio criterion check.

    B_{m+1}/B_m = (2m+1)/(4 ntilde), so B falls while m <= 2 ntilde - 1/2.
    """
    ntilde = parse_rational(ntilde)
    if ntilde <= 0:
        raise InvalidArgumentError(f"effective sample size must be positive, got {render_rational(ntilde)}")
    check_positive_int(m_cap, "m_cap")
    values = [asymptotic_bound(ntilde, m) for m in range(1, m_cap + 1)]
    m_star = min(range(1, m_cap + 1), key=lambda m: (values[m - 1], m))
    decreasing_through = max(0, floor(2 * ntilde - Fraction(1, 2)))
    for m in range(1, min(decreasing_through, m_cap - 1) + 1):
        if values[m] > values[m - 1]:
            raise InternalConsistencyError(f"B_m rises at m = {m} although m <= 2 ntilde - 1/2")
    return AsymptoticProfile(
        ntilde=ntilde,
        b=tuple(AsymptoticRow(m=m, b=value) for m, value in enumerate(values, start=1)),
        m_star=m_star,
        decreasing_through=decreasing_through,
    )


def rule_of_thumb_order(ntilde: Fraction) -> int:
    """Optimal even order 2 m_star from the ratio criterion, roughly 4 ntilde.

    m_star is the first m with (2m+1)/(4 ntilde) >= 1; on equality B_{m+1} = B_m
    and the smaller order wins.
    """
    ntilde = parse_rational(ntilde)
    if ntilde <= 0:
        raise InvalidArgumentError(f"effective sample size must be positive, got {render_rational(ntilde)}")
    return 2 * max(1, ceil((4 * ntilde - 1) / 2))
