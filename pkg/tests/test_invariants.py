import random
from fractions import Fraction

import pytest

from curves.curve import PicardCurve
from curves.models import NonspecialShort, SpecialShort
from errors import DegenerateFormError
from forms.binary_quartic import BinaryQuartic, act_mobius
from invariants.isomorphism import (
    automorphism_type,
    is_isomorphic_Q,
    is_isomorphic_Qbar,
    is_isomorphic_special,
    is_special,
    isomorphism_Q,
    special_isomorphism,
    weighted_point,
)
from invariants.twists import point_model, twist, twist_point, twists_with_good_reduction_outside
from invariants.weighted_point import (
    AutType,
    WeightedPoint,
    normalize,
    normalize_weighted_point,
    scaling_between,
)
from reduction.good_reduction import bad_primes, special_pair
from tests.factories import random_quartic

# --- weighted points ---


def test_normalize_removes_weighted_powers_and_fixes_sign():
    assert normalize_weighted_point(2**6 * 3, -(2**9), 2**12 * 5) == WeightedPoint(3, 1, 5)


def test_special_points_share_one_representative():
    assert normalize(WeightedPoint(0, 0, 7)) == WeightedPoint(0, 0, 1)
    assert WeightedPoint(0, 0, 7).is_special
    with pytest.raises(DegenerateFormError):
        WeightedPoint(0, 0, 0)


@pytest.mark.parametrize(
    "point, expected",
    [
        (WeightedPoint(1, 0, 1), AutType.Z6),
        (WeightedPoint(0, 1, 0), AutType.Z9),
        (WeightedPoint(1, 1, 1), AutType.Z3),
        (WeightedPoint(0, 1, 1), AutType.Z3),
    ],
)
def test_automorphism_types(point, expected):
    assert point.automorphism_type() == expected


def test_qbar_class_is_scaling_invariant():
    rng = random.Random(37)
    for _ in range(100):
        point = WeightedPoint(*(rng.randint(-9, 9) or 1 for _ in range(3)))
        nu = Fraction(rng.randint(1, 6), rng.randint(1, 6)) * rng.choice([1, -1])
        scaled = point.scaled(nu)
        assert scaled.qbar_class() == point.qbar_class()
        assert normalize(scaled) == normalize(point)
        assert scaled.scaled(1 / nu) == point


def test_scaling_between_points():
    point = WeightedPoint(1, 2, 3)
    assert scaling_between(point.scaled(2), point) == 2
    assert scaling_between(WeightedPoint(1, 0, 1), WeightedPoint(0, 1, 0)) is None


# --- isomorphism ---


def test_weighted_point_of_non_monic_model():
    # 2 y^3 = 3 x^4 + x only has the c3 coordinate
    model = NonspecialShort(2, BinaryQuartic.of(3, 0, 0, 1, 0))
    point = weighted_point(model)
    assert point.c2 == point.c4 == 0
    assert automorphism_type(model) == AutType.Z9
    assert normalize(point) == WeightedPoint(0, 576, 0)
    assert is_isomorphic_Q(model, point_model(WeightedPoint(0, 576, 0)))


def test_isomorphic_models_over_Q():
    rng = random.Random(41)
    for _ in range(100):
        model = NonspecialShort(rng.choice([1, -1, 2, 3]), random_quartic(rng, size=3))
        if weighted_point(model).is_special:
            continue
        lam = Fraction(rng.choice([1, -1, 2, 3]))
        scale = Fraction(rng.randint(1, 4))
        alpha, beta = rng.choice([1, -1, 2, Fraction(1, 2)]), rng.randint(-3, 3)
        other = NonspecialShort(scale * model.b * lam**3, model.f.compose(alpha, beta, 0, 1).scale(scale))
        witness = isomorphism_Q(model, other)
        assert witness is not None
        assert other.ternary().transform(witness.change) == model.ternary().scale(witness.factor)
        assert is_isomorphic_Q(model, other)


def test_cube_twist_is_only_isomorphic_over_Qbar():
    model = NonspecialShort(1, BinaryQuartic.of(1, 0, 1, 1, 1))
    other = NonspecialShort(2, BinaryQuartic.of(1, 0, 1, 1, 1))
    assert is_isomorphic_Qbar(model, other)
    assert not is_isomorphic_Q(model, other)
    assert isomorphism_Q(model, other) is None


def test_special_isomorphism(standard_curve, special_curve):
    witness = special_isomorphism(special_curve, standard_curve)
    assert witness is not None
    _, g1 = special_pair(special_curve.model)
    _, g2 = special_pair(SpecialShort(1, BinaryQuartic.of(0, 1, 0, 0, 1)))
    assert act_mobius(g1, witness.mobius) == g2.scale(witness.mu)
    other = PicardCurve(SpecialShort(1, BinaryQuartic.of(1, 0, 6, 0, -3)))
    assert not is_isomorphic_special(special_curve, other)
    assert not is_isomorphic_Q(special_curve, PicardCurve(point_model(WeightedPoint(1, 0, 1))))


def test_is_special_accepts_forms_and_models(standard_curve):
    assert is_special(standard_curve.ternary())
    assert is_special(standard_curve.model)
    assert not is_special(NonspecialShort(1, BinaryQuartic.of(1, 0, 1, 0, 1)))
    with pytest.raises(ValueError):
        automorphism_type(standard_curve)


# --- twists ---


def test_sextic_twist():
    base = NonspecialShort(1, BinaryQuartic.of(1, 0, 1, 0, 1))
    twisted = twist(base, 4)
    assert twisted == NonspecialShort(1, BinaryQuartic.of(1, 0, 4, 0, 16))
    assert is_isomorphic_Qbar(base, twisted)
    assert not is_isomorphic_Q(base, twisted)


def test_twist_point_by_type():
    assert twist_point(WeightedPoint(1, 1, 1), 2) == WeightedPoint(4, 8, 16)
    assert twist_point(WeightedPoint(0, 3, 0), 2) == WeightedPoint(0, 6, 0)


def test_twists_with_good_reduction_outside_three():
    model = NonspecialShort(1, BinaryQuartic.of(1, 0, 0, 1, 0))  # y^3 = x^4 + x
    found = twists_with_good_reduction_outside(model, [3])
    assert point_model(WeightedPoint(0, 1, 0)) in found
    assert all(bad_primes(PicardCurve(m)) == [3] for m in found)


def test_twists_outside_two_and_three_are_distinct():
    model = NonspecialShort(1, BinaryQuartic.of(1, 0, 0, 1, 0))
    found = twists_with_good_reduction_outside(model, [2, 3])
    points = [normalize(weighted_point(m)) for m in found]
    assert len(set(points)) == len(points)
    assert len(found) >= len(twists_with_good_reduction_outside(model, [3]))
    assert all(set(bad_primes(PicardCurve(m))) <= {2, 3} for m in found)
    assert all(is_isomorphic_Qbar(model, m) for m in found)


def test_twists_need_three_and_a_nonspecial_curve(standard_curve):
    model = NonspecialShort(1, BinaryQuartic.of(1, 0, 0, 1, 0))
    with pytest.raises(ValueError):
        twists_with_good_reduction_outside(model, [2])
    with pytest.raises(ValueError):
        twists_with_good_reduction_outside(standard_curve, [2, 3])
