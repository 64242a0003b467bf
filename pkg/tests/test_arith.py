import math
import random
from fractions import Fraction

import pytest
from sympy import Integer
from sympy.core.intfunc import igcdex

from arith.finite_field import FiniteField
from arith.hilbert import (
    INFINITE_PLACE,
    conic_is_split,
    find_conic_point,
    hilbert_symbol,
    local_symbols,
)
from arith.rationals import (
    factor_rational,
    format_rational,
    nth_power_free_part,
    parse_rational,
    prime_support,
    rational_nth_root,
    to_fraction,
    valuation,
)
from arith.sunits import (
    all_sunit_solutions,
    is_s_unit,
    lambda_orbit,
    s_unit_classes,
    solve_sunit_equation,
)
from arith.unramified import newton_segments, residual_polynomial, splitting_field_unramified
from errors import ComputationError, DegenerateFormError, MalformedInputError


# --- rationals ---


def test_valuation_of_fractions():
    assert valuation(Fraction(12, 5), 2) == 2
    assert valuation(Fraction(3, 8), 2) == -3
    assert valuation(7, 3) == 0
    assert valuation(0, 5) == math.inf


def test_factor_rational_signed_exponents():
    assert factor_rational(Fraction(-12, 5)) == [(2, 2), (3, 1), (5, -1)]
    assert prime_support(Fraction(10, 9)) == [2, 3, 5]


def test_power_free_parts_and_roots():
    assert nth_power_free_part(-48, 4) == (Fraction(-3), Fraction(2))
    assert rational_nth_root(81, 4) == 3
    assert rational_nth_root(Fraction(-8, 27), 3) == Fraction(-2, 3)
    assert rational_nth_root(-16, 4) is None


def test_rational_literals():
    assert parse_rational(" 3/4 ") == Fraction(3, 4)
    assert format_rational(Fraction(6, 8)) == "3/4"
    assert format_rational(Fraction(-5)) == "-5"
    with pytest.raises(MalformedInputError):
        parse_rational("x/2")


def test_to_fraction_accepts_any_integral_type():
    x, y, g = igcdex(10, 4)
    assert 10 * to_fraction(x) + 4 * to_fraction(y) == to_fraction(g) == 2
    assert to_fraction(Integer(-7)) == Fraction(-7)
    assert to_fraction(True) == 1
    with pytest.raises(TypeError):
        to_fraction(1.5)


def test_non_prime_is_rejected():
    with pytest.raises(ValueError):
        hilbert_symbol(2, 3, 4)


# --- hilbert ---


@pytest.mark.parametrize(
    "a, b, split",
    [(-1, 3, False), (2, -6, False), (-2, 6, True), (1, 7, True), (-1, -1, False)],
)
def test_conic_splitting(a, b, split):
    assert conic_is_split(a, b) is split


def test_witness_for_the_split_conic():
    assert find_conic_point(-2, 6, 50) == (1, 1, 2)
    assert find_conic_point(-1, 3, 50) is None


def test_symbols_at_single_places():
    assert hilbert_symbol(-1, -1, INFINITE_PLACE) == -1
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(-1, 3, 3) == -1
    assert hilbert_symbol(5, 7, 3) == 1


def test_product_formula_on_random_pairs():
    rng = random.Random(20240517)
    for _ in range(100):
        a = rng.choice([-1, 1]) * rng.randint(1, 400)
        b = rng.choice([-1, 1]) * Fraction(rng.randint(1, 400), rng.randint(1, 30))
        assert math.prod(local_symbols(a, b).values()) == 1


def test_primes_cancelling_in_the_product_are_still_places():
    symbols = local_symbols(65, Fraction(2, 65))
    assert symbols[5] == -1 and symbols[13] == -1
    assert conic_is_split(65, Fraction(2, 65)) is False
    symbols = local_symbols(-240, Fraction(-64, 5))
    assert 5 in symbols
    assert math.prod(symbols.values()) == 1


def test_hilbert_symbol_rejects_zero():
    with pytest.raises(ValueError):
        hilbert_symbol(0, 3, 3)


# --- S-units ---


def test_sunit_solutions_for_two():
    assert all_sunit_solutions([2], 1) == [Fraction(-1), Fraction(1, 2), Fraction(2)]
    assert solve_sunit_equation([2], 3) == [Fraction(2)]


def test_three_alone_has_no_solutions():
    assert solve_sunit_equation([3], 6) == []


def test_sunit_solutions_stable_under_bound_doubling():
    assert solve_sunit_equation([2, 3], 4) == solve_sunit_equation([2, 3], 8)


def test_every_solution_solves_the_equation():
    for lam in all_sunit_solutions([2, 3], 4):
        assert is_s_unit(lam, [2, 3]) and is_s_unit(1 - lam, [2, 3])
    assert Fraction(9) in all_sunit_solutions([2, 3], 4)


def test_orbit_and_classes():
    assert lambda_orbit(Fraction(2)) == {Fraction(2), Fraction(-1), Fraction(1, 2)}
    assert len(s_unit_classes([2, 3], 3)) == 18
    assert is_s_unit(Fraction(-9, 8), [2, 3])
    assert not is_s_unit(10, [2, 3])
    with pytest.raises(ValueError):
        s_unit_classes([], 3)


# --- finite fields ---


def test_field_of_four_elements():
    field = FiniteField(2, 2)
    t = field.generator
    assert field.order == 4
    assert len(list(field.elements())) == 4
    assert t**3 == field.one
    assert t.frobenius() == t * t
    assert t * t.inverse() == field.one


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        FiniteField(5).zero.inverse()


# --- unramified splitting fields ---


@pytest.mark.parametrize(
    "coeffs, p, unramified",
    [
        ([1, 0, 1], 2, False),
        ([1, 0, 1], 3, True),
        ([1, 1, 1], 2, True),
        ([1, 0, 0, -2], 2, False),
        ([1, 0, 0, -2], 3, False),
        ([1, 0, 0, -2], 5, True),
        # (x + 2)^2 - 50 and (x + 2)^2 - 45 need one residual shift at 5
        ([1, 4, -46], 5, True),
        ([1, 4, -41], 5, False),
        ([1, 31375, 246109375], 5, True),
    ],
)
def test_splitting_field_ramification(coeffs, p, unramified):
    assert splitting_field_unramified(coeffs, p) is unramified


def test_repeated_roots_are_rejected():
    with pytest.raises(DegenerateFormError):
        splitting_field_unramified([1, -2, 1], 5)


def test_repeated_residual_factor_falls_back_to_field_discriminant(mocker):
    # x^4 + 2x^3 + 3x^2 + 2x + 3 is (x^2 + x + 1)^2 mod 2
    coeffs = [1, 2, 3, 2, 3]
    field_disc = mocker.patch("arith.unramified.round_two", return_value=(None, -3 * 5))
    assert splitting_field_unramified(coeffs, 2) is True
    field_disc.assert_called_once()
    field_disc.return_value = (None, -4 * 5)
    assert splitting_field_unramified(coeffs, 2) is False


def test_failed_field_discriminant_is_a_computation_error(mocker):
    mocker.patch("arith.unramified.round_two", side_effect=AssertionError)
    with pytest.raises(ComputationError):
        splitting_field_unramified([1, 2, 3, 2, 3], 2)


def test_newton_segments_and_residuals():
    # x^2 + 31375 x + 246109375 = x^2 + 5^3 * 251 x + 5^6 * 15751
    coeffs = [246109375, 31375, 1]
    assert newton_segments(coeffs, 5) == [(Fraction(3), 0, 2)]
    assert residual_polynomial(coeffs, 5, 3, 0, 2) == [1, 1, 1]
    assert newton_segments([-2, 0, 0, 1], 2) == [(Fraction(1, 3), 0, 3)]
