import random
from fractions import Fraction as F

import pytest

from app import polynomial as poly
from app.argmax import moment_polynomial
from app.errors import InternalConsistencyError, InvalidArgumentError, ResourceLimitError
from app.moments import (
    _check_distinct_nodes,
    f_term,
    f_term_derivative,
    gaussian_even_moment,
    moment,
    moment_bruteforce,
    moment_derivative_composition,
    moment_general,
    moment_general_composition,
    moment_half_binomsum,
    moment_half_composition,
    moment_half_grouped,
    moment_half_recurrence,
    recurrence_coeffs,
)
from app.polynomial import derivative

HALF = F(1, 2)


@pytest.mark.parametrize(
    "mu, p, expected",
    [(2, HALF, F(1, 4)), (3, HALF, 0), (1, F(1, 3), 0), (4, HALF, F(1, 16))],
)
def test_f_term(mu, p, expected):
    assert f_term(mu, p) == expected


@pytest.mark.parametrize("mu", [1, 3, 5, 7])
def test_f_term_vanishes_at_half_for_odd_parts(mu):
    assert f_term(mu, HALF) == 0


@pytest.mark.parametrize("mu", [2, 4, 6])
def test_f_term_at_half_for_even_parts(mu):
    assert f_term(mu, HALF) == F(1, 2**mu)


def test_f_term_rejects_p_outside_unit_interval():
    with pytest.raises(InvalidArgumentError):
        f_term(2, F(3, 2))


@pytest.mark.parametrize(
    "mu, p, expected",
    [(2, HALF, 0), (3, HALF, F(-1, 2)), (1, F(1, 4), 0)],
)
def test_f_term_derivative(mu, p, expected):
    assert f_term_derivative(mu, p) == expected


@pytest.mark.parametrize("mu", [3, 5, 7])
def test_f_term_derivative_odd_parts_at_half(mu):
    assert f_term_derivative(mu, HALF) == F(-2 * (mu - 1), 2**mu)


@pytest.mark.parametrize("mu", range(1, 9))
def test_f_term_derivative_matches_central_difference_and_formal_derivative(mu):
    rng = random.Random(mu)
    # f(p) = p (1 - p)^mu + (1 - p) (-p)^mu as an integer polynomial in p
    raw = poly.add(poly.mul([0, 1], poly.power([1, -1], mu)), poly.mul([1, -1], [0] * mu + [(-1) ** mu]))
    h = F(1, 10**5)
    for _ in range(20):
        p = F(rng.randint(1, 999), 1000)
        exact = f_term_derivative(mu, p)
        assert exact == poly.evaluate(poly.der(raw), p)
        central = (f_term(mu, p + h) - f_term(mu, p - h)) / (2 * h)
        assert abs(central - exact) <= F(1, 10**6)


@pytest.mark.parametrize("p", [0, 1])
def test_f_term_derivative_needs_open_interval(p):
    with pytest.raises(InvalidArgumentError):
        f_term_derivative(2, F(p))


@pytest.mark.parametrize("n", [1, 2, 7, 40])
def test_second_moment_at_half_is_n_over_four(n):
    assert moment_half_composition(n, 1).value == F(n, 4)
    assert moment_half_binomsum(n, 1).value == F(n, 4)


def test_composition_route_examples():
    assert moment_half_composition(1, 3).value == F(1, 64)
    assert moment_half_composition(2, 2).value == HALF


@pytest.mark.parametrize(
    "n, m, expected",
    [(2, 3, HALF), (1, 2, F(1, 16)), (3, 2, F(21, 16)), (3, 3, F(183, 64))],
)
def test_binomsum_examples(n, m, expected):
    result = moment_half_binomsum(n, m)
    assert result.value == expected
    assert result.method == "binomsum"
    assert result.p == HALF


@pytest.mark.parametrize("n", range(1, 13))
@pytest.mark.parametrize("m", range(1, 9))
def test_half_routes_agree(n, m):
    expected = moment_half_binomsum(n, m).value
    assert moment_half_composition(n, m).value == expected
    assert moment_half_grouped(n, m) == expected
    assert moment_half_recurrence(n, m).value == expected
    assert moment_general(n, m, HALF).value == expected
    assert moment_bruteforce(n, m, HALF).value == expected


@pytest.mark.parametrize("n", range(1, 13))
def test_half_moments_lie_in_range_and_grow_in_norm(n):
    values = [moment_half_binomsum(n, m).value for m in range(1, 10)]
    for m, value in enumerate(values, start=1):
        assert 0 < value <= F(n, 2) ** (2 * m)
    # L^(2m) norms are nondecreasing in m
    for m, (value, following) in enumerate(zip(values, values[1:]), start=1):
        assert value ** (m + 1) <= following**m


def test_fourth_moment_closed_form():
    for n in (5, 50, 500):
        assert moment_half_grouped(n, 2) == F(n * (3 * n - 2), 16)


@pytest.mark.parametrize(
    "n, ell, a, c",
    [(3, 1, (9, 1), (-9, 10)), (1, 0, (1,), (1,)), (2, 0, (4,), (4,))],
)
def test_recurrence_coeffs(n, ell, a, c):
    coeffs = recurrence_coeffs(n)
    assert coeffs.ell == ell
    assert coeffs.a == tuple(F(x) for x in a)
    assert coeffs.c == tuple(F(x) for x in c)


def test_recurrence_examples():
    assert moment_half_recurrence(3, 3).value == F(183, 64)
    assert F(-9, 16) * F(3, 4) + F(10, 4) * F(21, 16) == F(183, 64)
    assert moment_half_recurrence(1, 5).value == F(1, 1024)
    assert moment_half_recurrence(4, 6).value == moment_half_binomsum(4, 6).value


@pytest.mark.parametrize("n", range(1, 10))
def test_recurrence_matches_binomsum_grid(n):
    coeffs = recurrence_coeffs(n)
    for a_k in coeffs.a:
        assert a_k ** (coeffs.ell + 1) == sum(c * a_k**j for j, c in enumerate(coeffs.c))
    for m in range(1, 13):
        assert moment_half_recurrence(n, m, coeffs).value == moment_half_binomsum(n, m).value


def test_repeated_vandermonde_nodes_are_an_internal_error():
    with pytest.raises(InternalConsistencyError, match="pairwise distinct"):
        _check_distinct_nodes([F(9), F(1), F(9)])
    _check_distinct_nodes([F(9), F(1)])


def test_recurrence_accepts_precomputed_coefficients():
    coeffs = recurrence_coeffs(6)
    values = [moment_half_recurrence(6, m, coeffs).value for m in range(1, 12)]
    assert values == [moment_half_binomsum(6, m).value for m in range(1, 12)]


def test_general_moment_single_variable_polynomial():
    for p in (F(1, 3), F(2, 7), F(9, 10)):
        expected = p - 4 * p**2 + 6 * p**3 - 3 * p**4
        assert moment_general(1, 2, p).value == expected


def test_general_moment_degenerate_p():
    assert moment_general(5, 3, F(0)).value == 0
    assert moment_general(5, 3, F(1)).value == 0


def test_general_moment_matches_bruteforce():
    p = F(1, 3)
    assert moment_general(3, 2, p).value == moment_bruteforce(3, 2, p).value


@pytest.mark.parametrize("p", [F(1, 5), F(1, 3), HALF, F(7, 9)])
def test_general_moment_verified_by_composition(p):
    result = moment_general(4, 3, p, verify=True)
    assert result.value == moment_general_composition(4, 3, p)


@pytest.mark.parametrize("p", [F(0), F(1, 6), F(2, 5), F(1)])
def test_general_moment_symmetric_about_half(p):
    assert moment_general(6, 2, p).value == moment_general(6, 2, 1 - p).value


@pytest.mark.parametrize("n, m", [(1, 2), (3, 2), (5, 3)])
@pytest.mark.parametrize("p", [F(1, 7), F(1, 3), F(3, 5)])
def test_derivative_composition_matches_formal_derivative(n, m, p):
    assert moment_derivative_composition(n, m, p) == derivative(moment_polynomial(n, m))(p)


@pytest.mark.parametrize("n, m", [(1, 1), (2, 3), (7, 4)])
def test_derivative_vanishes_at_half(n, m):
    assert moment_derivative_composition(n, m, HALF) == 0


def test_bruteforce_examples():
    assert moment_bruteforce(2, 2, HALF).value == HALF
    assert moment_bruteforce(1, 1, F(1, 4)).value == F(3, 16)
    assert moment_bruteforce(3, 1, HALF).value == F(3, 4)


def test_bruteforce_is_capped():
    with pytest.raises(ResourceLimitError, match="n = 20"):
        moment_bruteforce(21, 1, HALF)


def test_composition_route_is_capped(override_settings):
    override_settings(composition_cap=6)
    with pytest.raises(ResourceLimitError):
        moment_half_composition(5, 7)
    with pytest.raises(ResourceLimitError):
        moment_general_composition(5, 4, F(1, 3))


@pytest.mark.parametrize("method", ["composition", "binomsum", "recurrence", "bruteforce", "general"])
def test_dispatch_agrees_across_methods(method):
    assert moment(4, 3, HALF, method).value == moment_half_binomsum(4, 3).value


@pytest.mark.parametrize("method", ["composition", "binomsum", "recurrence"])
def test_half_only_methods_reject_other_p(method):
    with pytest.raises(InvalidArgumentError):
        moment(3, 2, F(1, 3), method)


@pytest.mark.parametrize("n, m", [(0, 1), (1, 0), (-2, 3)])
def test_nonpositive_arguments_rejected(n, m):
    with pytest.raises(InvalidArgumentError):
        moment_half_binomsum(n, m)


@pytest.mark.parametrize("m, expected", [(0, 1), (1, 1), (2, 3), (3, 15), (4, 105)])
def test_gaussian_even_moment(m, expected):
    assert gaussian_even_moment(m) == expected


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_normalised_moment_approaches_gaussian(m):
    n = 10**4
    ratio = moment_half_grouped(n, m) / F(n, 4) ** m
    gaussian = gaussian_even_moment(m)
    assert abs(ratio - gaussian) / gaussian < F(1, 100)
