"""Exact even central moments E S_n^{2m}(p) of centred binomial sums.

S_n(p) = sum_j (X_j - p) for i.i.d. Bernoulli(p) variables. Every route below
returns an exact Fraction; the routes are independent enough to cross-check
one another:

* composition  -- sum over compositions of m at p = 1/2
* binomsum     -- 2^(-2m-n) sum_k binom(n,k) (2k-n)^(2m) at p = 1/2 (default)
* recurrence   -- linear recurrence in m seeded from binomsum
* general      -- definition-level sum over k for any p in [0, 1]
* bruteforce   -- all 2^n outcome tuples (oracle, n capped)
"""

import logging
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Optional

from .compositions import composition_size_weights, iter_compositions, multinomial
from .config import get_settings
from .errors import InternalConsistencyError, InvalidArgumentError, ResourceLimitError
from .models import MomentMethod, MomentValue, RecurrenceCoeffs
from .rational import HALF, ONE, ZERO, check_positive_int, check_probability, parse_rational

logger = logging.getLogger(__name__)


def f_term(mu_i: int, p: Fraction) -> Fraction:
    """E (X - p)^mu_i = p q^mu_i + q (-p)^mu_i for one Bernoulli(p) variable."""
    check_positive_int(mu_i, "mu_i")
    p = check_probability(parse_rational(p))
    q = ONE - p
    return p * q**mu_i + q * (-p) ** mu_i


def f_term_derivative(mu_i: int, p: Fraction) -> Fraction:
    """d/dp f_term in the form q^mu (1 - mu p/q) + (-1)^(mu+1) p^mu (1 - mu q/p).

    The form divides by p and q, so p must lie strictly inside (0, 1).
    """
    check_positive_int(mu_i, "mu_i")
    p = check_probability(parse_rational(p), open_interval=True)
    q = ONE - p
    sign = 1 if mu_i % 2 else -1
    return q**mu_i * (1 - p / q * mu_i) + sign * p**mu_i * (1 - q / p * mu_i)


def _check_nm(n: int, m: int) -> None:
    check_positive_int(n, "n")
    check_positive_int(m, "m")


def moment_half_composition(n: int, m: int) -> MomentValue:
    """4^(-m) sum over compositions mu of m with |mu| <= n of multinomial(2m; 2mu) binom(n, |mu|)."""
    _check_nm(n, m)
    cap = get_settings().composition_cap
    if m > cap:
        raise ResourceLimitError(f"the composition route enumerates 2^(m-1) terms and is capped at m = {cap}")
    total = 0
    for parts in iter_compositions(m):
        size = len(parts)
        if size > n:
            continue
        total += multinomial(2 * m, [2 * part for part in parts]) * comb(n, size)
    return MomentValue(n=n, m=m, p=HALF, value=Fraction(total, 4**m), method="composition")


def moment_half_grouped(n: int, m: int) -> Fraction:
    """The composition sum with terms grouped by composition size.

    Costs O(m^2) independent of n, which makes it the planner's fast path.
    """
    _check_nm(n, m)
    weights = composition_size_weights(m)
    total = sum(weights[k] * comb(n, k) for k in range(1, min(m, n) + 1))
    return Fraction(total, 4**m)


def _binomsum_numerator(n: int, m: int) -> int:
    total = 0
    weight = 1  # binom(n, k), updated incrementally
    for k in range(n + 1):
        total += weight * (2 * k - n) ** (2 * m)
        weight = weight * (n - k) // (k + 1)
    return total


def moment_half_binomsum(n: int, m: int) -> MomentValue:
    """2^(-2m-n) sum_{k=0}^{n} binom(n, k) (2k - n)^(2m)."""
    _check_nm(n, m)
    value = Fraction(_binomsum_numerator(n, m), 2 ** (2 * m + n))
    return MomentValue(n=n, m=m, p=HALF, value=value, method="binomsum")


def _solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gauss-Jordan elimination over the rationals; raises on a singular matrix."""
    size = len(matrix)
    rows = [list(row) + [value] for row, value in zip(matrix, rhs)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if pivot is None:
            raise InternalConsistencyError(f"singular system at column {col}")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        rows[col] = [value / lead for value in rows[col]]
        for r in range(size):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return [row[-1] for row in rows]


def _check_distinct_nodes(a: list[Fraction]) -> None:
    if len(set(a)) != len(a):
        raise InternalConsistencyError(f"Vandermonde nodes are not pairwise distinct: {a}")


def recurrence_coeffs(n: int) -> RecurrenceCoeffs:
    """Solve V c = rhs with V[k][j] = a_k^j, rhs[k] = a_k^(ell+1), a_k = (2k - n)^2.

    The residual is checked to be exactly zero before returning.
    """
    check_positive_int(n, "n")
    ell = (n - 1) // 2
    a = [Fraction((2 * k - n) ** 2) for k in range(ell + 1)]
    _check_distinct_nodes(a)
    matrix = [[a_k**j for j in range(ell + 1)] for a_k in a]
    rhs = [a_k ** (ell + 1) for a_k in a]
    c = _solve_exact(matrix, rhs)
    residual = [sum(v * c_j for v, c_j in zip(row, c)) - target for row, target in zip(matrix, rhs)]
    if any(residual):
        raise InternalConsistencyError(f"nonzero Vandermonde residual for n = {n}: {residual}")
    return RecurrenceCoeffs(n=n, ell=ell, a=tuple(a), c=tuple(c))


def moment_half_recurrence(n: int, m: int, coeffs: Optional[RecurrenceCoeffs] = None) -> MomentValue:
    """Iterate E_{m+ell+1} = sum_j c_j 2^(2j-2ell-2) E_{m+j} from binomsum seeds E_1..E_{ell+1}."""
    _check_nm(n, m)
    coeffs = coeffs or recurrence_coeffs(n)
    ell = coeffs.ell
    window = [moment_half_binomsum(n, k).value for k in range(1, min(m, ell + 1) + 1)]
    if m <= ell + 1:
        return MomentValue(n=n, m=m, p=HALF, value=window[m - 1], method="recurrence")
    scale = [Fraction(1, 2 ** (2 * ell + 2 - 2 * j)) for j in range(ell + 1)]
    for _ in range(m - ell - 1):
        following = sum(c_j * s_j * e_j for c_j, s_j, e_j in zip(coeffs.c, scale, window))
        window = window[1:] + [following]
    return MomentValue(n=n, m=m, p=HALF, value=window[-1], method="recurrence")


def _general_definition(n: int, m: int, p: Fraction) -> Fraction:
    q = ONE - p
    total = ZERO
    for k in range(n + 1):
        total += comb(n, k) * p**k * q ** (n - k) * (k - n * p) ** (2 * m)
    return total


def moment_general_composition(n: int, m: int, p: Fraction) -> Fraction:
    """sum over compositions mu of 2m of binom(n,|mu|) multinomial(2m; mu) prod_i f(mu_i, p).

    Compositions containing a part equal to 1 vanish (f(1, p) = 0) and are skipped.
    """
    _check_nm(n, m)
    p = check_probability(parse_rational(p))
    cap = get_settings().composition_cap
    if 2 * m > cap:
        raise ResourceLimitError(f"the composition route enumerates 2^(2m-1) terms and is capped at 2m = {cap}")
    f_cache: dict[int, Fraction] = {}
    total = ZERO
    for parts in iter_compositions(2 * m):
        if len(parts) > n or 1 in parts:
            continue
        product_f = ONE
        for part in parts:
            if part not in f_cache:
                f_cache[part] = f_term(part, p)
            product_f *= f_cache[part]
        total += comb(n, len(parts)) * multinomial(2 * m, parts) * product_f
    return total


def moment_derivative_composition(n: int, m: int, p: Fraction) -> Fraction:
    """d/dp E S_n^{2m}(p) by the composition expansion with f and f' terms (0 < p < 1)."""
    _check_nm(n, m)
    p = check_probability(parse_rational(p), open_interval=True)
    cap = get_settings().composition_cap
    if 2 * m > cap:
        raise ResourceLimitError(f"the composition route enumerates 2^(2m-1) terms and is capped at 2m = {cap}")
    f_values: dict[int, Fraction] = {}
    f_primes: dict[int, Fraction] = {}
    total = ZERO
    for parts in iter_compositions(2 * m):
        # f(1, p) and f'(1, p) both vanish, so any part equal to 1 kills the term
        if len(parts) > n or 1 in parts:
            continue
        for part in parts:
            if part not in f_values:
                f_values[part] = f_term(part, p)
                f_primes[part] = f_term_derivative(part, p)
        inner = ZERO
        for i, part in enumerate(parts):
            term = f_primes[part]
            for j, other in enumerate(parts):
                if j != i:
                    term *= f_values[other]
            inner += term
        total += comb(n, len(parts)) * multinomial(2 * m, parts) * inner
    return total


def moment_general(n: int, m: int, p: Fraction, *, verify: bool = False) -> MomentValue:
    """E S_n^{2m}(p) = sum_k binom(n,k) p^k q^(n-k) (k - np)^(2m) for any p in [0, 1].

    With verify=True the composition expansion is evaluated as well and the two
    routes must agree exactly.
    """
    _check_nm(n, m)
    p = check_probability(parse_rational(p))
    value = _general_definition(n, m, p)
    if verify:
        other = moment_general_composition(n, m, p)
        if other != value:
            raise InternalConsistencyError(
                f"general-p routes disagree for n={n}, m={m}, p={p}: {value} != {other}"
            )
    return MomentValue(n=n, m=m, p=p, value=value, method="general")


def moment_bruteforce(n: int, m: int, p: Fraction) -> MomentValue:
    """Sum over all 2^n outcome tuples; an oracle independent of every closed form."""
    _check_nm(n, m)
    p = check_probability(parse_rational(p))
    cap = get_settings().bruteforce_cap
    if n > cap:
        raise ResourceLimitError(f"brute-force enumeration is capped at n = {cap} (2^n outcomes); got n = {n}")
    a, b = p.numerator, p.denominator
    total = 0
    for outcome in product((0, 1), repeat=n):
        ones = sum(outcome)
        # weight * deviation^(2m), scaled by b^(n+2m) to stay in integers
        total += a**ones * (b - a) ** (n - ones) * (ones * b - n * a) ** (2 * m)
    value = Fraction(total, b ** (n + 2 * m))
    return MomentValue(n=n, m=m, p=p, value=value, method="bruteforce")


def moment(n: int, m: int, p: Fraction = HALF, method: MomentMethod = "binomsum") -> MomentValue:
    """Dispatch to one route. The p = 1/2 routes reject any other p."""
    p = parse_rational(p)
    if method in ("composition", "binomsum", "recurrence") and p != HALF:
        raise InvalidArgumentError(f"method {method!r} computes E S_n^(2m)(1/2) only; use 'general' for p = {p}")
    if method == "composition":
        return moment_half_composition(n, m)
    if method == "binomsum":
        return moment_half_binomsum(n, m)
    if method == "recurrence":
        return moment_half_recurrence(n, m)
    if method == "bruteforce":
        return moment_bruteforce(n, m, p)
    if method == "general":
        return moment_general(n, m, p)
    raise InvalidArgumentError(f"unknown method {method!r}")


def gaussian_even_moment(m: int) -> Fraction:
    """E Z^(2m) = 2^(-m) (2m)! / m! for a standard normal Z."""
    if isinstance(m, bool) or not isinstance(m, int) or m < 0:
        raise InvalidArgumentError(f"m must be a nonnegative integer, got {m!r}")
    return Fraction(factorial(2 * m), 2**m * factorial(m))
