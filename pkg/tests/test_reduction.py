from fractions import Fraction

import pytest

from curves.curve import PicardCurve
from curves.minimization import minimize_at_prime
from curves.models import NonspecialShort, SpecialShort
from errors import MalformedInputError
from forms.binary_quartic import BinaryQuartic
from reduction.conductor import (
    conductor_bounds,
    conductor_from_exponents,
    conductor_within_disc,
    special_f3_family,
    validate_conductor_exponents,
)
from reduction.good_reduction import (
    ReductionVerdict,
    bad_primes,
    good_reduction_marked_line,
    has_good_reduction_nonspecial,
    has_good_reduction_special,
    reduced_short_weierstrass,
    reduced_special_valuation,
    reduction_is_smooth,
    reduction_verdict,
    singular_points_mod_p,
    special_pair,
)
from tests.factories import make_record, random_quartic

SPECIAL_G = BinaryQuartic.of(1, 0, 6, 0, -3)  # y^4 + 6 y^2 - 3


# --- nonspecial criterion ---


def test_unit_discriminant_is_good(standard_curve):
    verdict = has_good_reduction_nonspecial(standard_curve.model, 5)
    assert verdict.is_good
    assert verdict.reason == "disc-unit"


def test_three_is_always_bad():
    model = NonspecialShort(1, BinaryQuartic.of(1, 0, 1, 0, 1))
    assert has_good_reduction_nonspecial(model, 3).reason == "odd-3-valuation"
    with pytest.raises(ValueError):
        reduced_short_weierstrass(model, 3)


def test_good_reduction_after_rescaling():
    # 5 y^3 = x^4 + 125 x + 625 becomes Y^3 = X^4 + X + 1 with x = 5 X, y = 5 Y
    model = NonspecialShort(5, BinaryQuartic.of(1, 0, 0, 125, 625))
    c, f0 = reduced_short_weierstrass(model, 5)
    assert c == 1
    assert f0 == BinaryQuartic.of(1, 0, 0, 1, 1)
    verdict = has_good_reduction_nonspecial(model, 5)
    assert verdict.is_good
    assert verdict.reason == "criterion-pass"


def test_non_cube_scaling_is_bad():
    model = NonspecialShort(1, BinaryQuartic.of(1, 0, 0, 125, 625))
    verdict = has_good_reduction_nonspecial(model, 5)
    assert not verdict.is_good
    assert verdict.reason == "c-valuation"


def test_branch_discriminant_decides():
    # x^4 + x^2 + 1 = (x^2 + x + 1)^2 mod 2
    model = NonspecialShort(1, BinaryQuartic.of(1, 0, 1, 0, 1))
    assert has_good_reduction_nonspecial(model, 2).reason == "branch-disc"
    assert bad_primes(PicardCurve(model)) == [2, 3]


def test_marked_line_criterion():
    assert good_reduction_marked_line(BinaryQuartic.of(1, 0, 0, 125, 625), 5)
    assert not good_reduction_marked_line(BinaryQuartic.of(1, 0, 0, 0, 5**5), 5)


def test_non_integral_model_is_not_trusted_on_its_discriminant():
    # y^3 / 5 = x^4 - 8 x^3 + 3 x - 6 is y^3 = 5 (x^4 - 8 x^3 + 3 x - 6)
    f = BinaryQuartic.of(1, -8, 0, 3, -6)
    model = NonspecialShort(Fraction(1, 5), f)
    assert model.disc_valuation(5) == 0
    verdict = has_good_reduction_nonspecial(model, 5)
    assert verdict.reason == "c-valuation"
    assert bad_primes(PicardCurve(model)) == bad_primes(PicardCurve(NonspecialShort(1, f.scale(5))))
    assert 5 in bad_primes(PicardCurve(model))


def _disguises(model: NonspecialShort, p: int, shift: int) -> list[NonspecialShort]:
    """Models of the same curve that are not reduced at p."""
    return [
        model.scaled(Fraction(1, p)),
        NonspecialShort(model.b * p**3, model.f),
        NonspecialShort(model.b, model.f.compose(p, 0, 0, 1)),
        NonspecialShort(model.b, model.f.compose(1, shift, 0, 1)),
    ]


def test_verdict_does_not_depend_on_the_model(rng):
    for _ in range(100):
        p = rng.choice([5, 7, 11, 13])
        base = NonspecialShort(1, random_quartic(rng, size=3))
        expected = reduction_verdict(PicardCurve(base), p).is_good
        if base.disc_valuation(p) == 0:
            assert expected
        for model in _disguises(base, p, rng.randint(-3, 3)):
            assert reduction_verdict(PicardCurve(model), p).is_good is expected, (base, model, p)


@pytest.mark.slow
def test_unit_discriminant_means_smooth_reduction(rng):
    # singular points of y^3 = f(x) with f monic come from repeated roots, all in F_{p^2}
    for _ in range(40):
        p = rng.choice([5, 7])
        curve = PicardCurve(NonspecialShort(rng.choice([1, 2, p]), random_quartic(rng, size=p, monic=True)))
        assert reduction_is_smooth(curve.ternary(), p, 2) is (curve.disc_valuation(p) == 0), curve


@pytest.mark.slow
def test_minimized_unit_discriminant_implies_good_reduction(rng):
    for _ in range(100):
        p = rng.choice([5, 7, 11, 13])
        base = NonspecialShort(1, random_quartic(rng, size=3))
        curve = PicardCurve(rng.choice(_disguises(base, p, rng.randint(-3, 3))))
        minimal = minimize_at_prime(curve, p)
        if minimal.disc_valuation(p) == 0:
            assert reduction_verdict(curve, p).is_good, curve


# --- special criterion ---


def test_special_pair_moves_root_at_infinity(special_curve):
    a, g = special_pair(special_curve.model)
    assert g.is_monic
    assert a != 0


@pytest.mark.parametrize(
    "b, p, good, reason",
    [
        (12, 5, True, "disc-unit"),
        (5, 5, False, "a-mod-4"),
        (5**4, 5, True, "criterion-pass"),
        (12, 2, False, "wild-p2-special"),
        (12, 3, False, "odd-3-valuation"),
    ],
)
def test_special_verdicts(b, p, good, reason):
    # x^4 = b (y^4 + 6 y^2 - 3)
    model = SpecialShort(1, SPECIAL_G.scale(b))
    verdict = has_good_reduction_special(model, p)
    assert verdict.is_good is good
    assert verdict.reason == reason


def test_special_verdict_survives_a_change_of_model():
    # x^4 = y^3 - 5^9 becomes X^4 = 5 (Y^3 - 1) with x = 25 X, y = 125 Y
    first = SpecialShort(1, BinaryQuartic.of(0, 1, 0, 0, -(5**9)))
    second = SpecialShort(1, BinaryQuartic.of(0, 5, 0, 0, -5))
    assert reduced_special_valuation(first, 5) == 9
    assert reduced_special_valuation(second, 5) == 1
    for model in (first, second):
        assert has_good_reduction_special(model, 5).reason == "a-mod-4"


def test_fourth_power_content_is_good():
    model = SpecialShort(1, BinaryQuartic.of(0, 5**4, 0, 0, -(5**16)))
    assert reduced_special_valuation(model, 5) == 16
    assert has_good_reduction_special(model, 5).reason == "criterion-pass"


def test_quadratic_branch_field_with_deep_residual_roots():
    # branch points generate Q(sqrt(-3)) through x^2 + 31375 x + 246109375 at 5
    curve = PicardCurve(NonspecialShort(1, BinaryQuartic.of(1, 0, 0, 0, 5**9)))
    assert curve.is_special
    assert reduction_verdict(curve, 5).reason == "a-mod-4"
    assert bad_primes(curve) == [2, 3, 5]


def test_special_curve_bad_primes():
    curve = PicardCurve(SpecialShort(1, SPECIAL_G.scale(12)))
    assert bad_primes(curve) == [2, 3]
    assert reduction_verdict(curve, 5).is_good


def test_nonspecial_shape_of_special_curve_uses_special_criterion(standard_curve):
    assert reduction_verdict(standard_curve, 2).reason == "wild-p2-special"
    assert bad_primes(standard_curve) == [2, 3]


def test_verdict_serializes():
    verdict = ReductionVerdict(prime=7, verdict="good", reason="disc-unit")
    assert ReductionVerdict.model_validate_json(verdict.model_dump_json()) == verdict


# --- smoothness of the reduction ---


def test_reduction_singularities(standard_curve):
    form = standard_curve.ternary()
    assert reduction_is_smooth(form, 5)
    assert not reduction_is_smooth(form, 2)
    singular = singular_points_mod_p(form, 3)
    assert len(singular) == 1
    y, x, z = singular[0]
    assert x.is_zero()


# --- conductor bounds ---


def test_conductor_bounds_per_kind():
    assert conductor_bounds("special").lower_bounds == {2: 6, 3: 4}
    assert conductor_bounds("special", "potentially_good").lower_bounds[3] == 6
    assert conductor_bounds("nonspecial", "loops").lower_bounds == {3: 5}
    assert conductor_bounds("nonspecial").allowed_odd is None
    with pytest.raises(MalformedInputError):
        conductor_bounds("nonspecial", "semistable")


def test_conductor_from_exponents():
    assert conductor_from_exponents({2: 6, 3: 6}) == 2**6 * 3**6


def test_low_exponent_at_three_is_flagged():
    violations = validate_conductor_exponents(make_record(exponents={3: 3}))
    assert violations == ["f_3 = 3 < 4"]


def test_wild_exponent_five_at_three_is_accepted():
    # y^3 = x^4 + x^3 + 27 x^2 + 243 x has f_3 = 4 + 1
    record = make_record(exponents={3: 5}, bad=(3,))
    assert validate_conductor_exponents(record) == []
    assert validate_conductor_exponents(record.model_copy(update={"reduction_type_at_3": "loops"})) == []


def test_special_conductor_floor():
    violations = validate_conductor_exponents(make_record("special", {2: 6, 3: 4}))
    assert violations == [f"N = {2**6 * 3**4} < {2**6 * 3**6}"]


def test_special_exponents_outside_allowed_set():
    record = make_record("special", {2: 4, 3: 6, 5: 2}, bad=(2, 3, 5))
    violations = validate_conductor_exponents(record)
    assert "f_2 = 4 < 6" in violations
    assert "f_5 = 2 not in [0, 4, 6]" in violations


def test_exponent_at_good_prime_and_unknowns():
    record = make_record(exponents={2: None, 3: 6, 7: 4}, bad=(3,))
    assert validate_conductor_exponents(record) == ["f_7 = 4 at a prime of good reduction"]
    assert validate_conductor_exponents(make_record(exponents={3: -1})) == ["f_3 = -1 is negative"]
    assert validate_conductor_exponents(make_record()) == []


def test_conductor_within_discriminant():
    assert conductor_within_disc({2: 6, 3: 10}, [(2, 7), (3, 9)]) == {2: True, 3: False}
    record = make_record(exponents={2: 6, 3: 10}).with_conductor_check()
    assert record.conductor_within_disc == {2: True, 3: False}


# --- special family at 3 ---


@pytest.mark.parametrize("a, expected", [(12, 4), (1, 6), (45, 4), (27, 6)])
def test_special_f3_family(a, expected):
    assert special_f3_family(a, SPECIAL_G) == expected


def test_special_f3_family_rejects_other_polynomials():
    with pytest.raises(ValueError):
        special_f3_family(12, BinaryQuartic.of(1, 0, 0, 1, 0))
    with pytest.raises(ValueError):
        special_f3_family(12, BinaryQuartic.of(1, 0, 18, 0, -27))
    with pytest.raises(ValueError):
        special_f3_family(81, SPECIAL_G)
