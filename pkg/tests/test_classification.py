import random

import pytest

from classification import field_data
from classification.special_class import (
    STANDARD_DISCRIMINANT,
    classify_special_good_outside_23,
    enumerate_special_twists_23,
    special_twist,
    standard_special_curve,
    twist_parameters,
    twist_representatives,
)
from classification.special_polynomials import (
    SpecialPolynomial,
    biquadratic_obstruction,
    biquadratic_witness,
    is_special_polynomial,
    special_poly_discriminant,
)
from errors import VerificationError
from forms.binary_quartic import BinaryQuartic, disc_binary, invariant_I
from reduction.good_reduction import bad_primes
from curves.curve import PicardCurve

SELF_SHADOW = {"x^4+x", "x^4-12*x^2+32*x-12"}


def test_special_polynomial_discriminant():
    rng = random.Random(43)
    for _ in range(100):
        sp = SpecialPolynomial(rng.randint(-6, 6), rng.randint(-12, 12))
        g = sp.quartic()
        assert invariant_I(g) == 0
        assert special_poly_discriminant(sp) == disc_binary(g)
        assert is_special_polynomial(g) == (disc_binary(g) != 0)
        assert SpecialPolynomial.from_quartic(g) == sp


def test_from_quartic_rejects_other_shapes():
    assert SpecialPolynomial.from_quartic(BinaryQuartic.of(1, 1, 0, 0, 1)) is None
    assert SpecialPolynomial.from_quartic(BinaryQuartic.of(1, 0, 6, 0, 3)) is None


@pytest.mark.parametrize("d1, d2, obstructed", [(-1, 3, True), (2, -6, True), (-2, 6, False)])
def test_biquadratic_obstruction(d1, d2, obstructed):
    assert biquadratic_obstruction(d1, d2) is obstructed


def test_biquadratic_witness():
    x, y, z = biquadratic_witness(-2, 6)
    assert -2 * x**2 + 6 * y**2 == z**2
    assert (x, y, z) == (1, 1, 2)
    with pytest.raises(ValueError):
        biquadratic_obstruction(1, 1)


def test_standard_special_curve():
    model = standard_special_curve()
    assert abs(model.discriminant()) == STANDARD_DISCRIMINANT
    assert bad_primes(PicardCurve(model)) == [2, 3]


def test_twist_parameters_cover_signs_and_exponents():
    keys = twist_parameters()
    assert len(keys) == 32
    assert keys[0] == (0, 0, 0)


@pytest.mark.slow
def test_classification_table():
    table = classify_special_good_outside_23()
    assert len(table) == field_data.EXPECTED_CLASS_COUNT
    assert len(table.shadow_pairs()) == 12
    assert {row.text for row in table if row.self_shadow} == SELF_SHADOW
    assert table.certificate["pairs_checked"] == 26 * 25 // 2
    assert table.certificate["biquadratic"][0]["pair"] == (-2, 6)


@pytest.mark.slow
def test_twist_counts():
    table = classify_special_good_outside_23()
    sizes = {row.text: len(twist_representatives(row)) for row in table}
    assert all(sizes[text] == 16 for text in SELF_SHADOW)
    assert all(size == 32 for text, size in sizes.items() if text not in SELF_SHADOW)
    assert len(enumerate_special_twists_23(table)) == field_data.EXPECTED_TWIST_COUNT


@pytest.mark.slow
def test_twists_have_bad_reduction_only_at_two_and_three():
    table = classify_special_good_outside_23()
    rng = random.Random(47)
    for row in rng.sample(list(table), 5):
        for a in twist_representatives(row)[:4]:
            assert bad_primes(PicardCurve(special_twist(row, a))) == [2, 3]


@pytest.mark.slow
def test_failed_certificate_raises(mocker):
    classify_special_good_outside_23.cache_clear()
    mocker.patch("classification.special_class.are_equivalent", return_value=("map", 1))
    with pytest.raises(VerificationError) as info:
        classify_special_good_outside_23()
    assert "rows" in info.value.certificate
    classify_special_good_outside_23.cache_clear()


def test_wrong_twist_count_fails_the_certificate(mocker):
    mocker.patch(
        "classification.special_class.special_twist_families",
        return_value=[(None, 1, None)] * 799,
    )
    with pytest.raises(VerificationError) as info:
        enumerate_special_twists_23()
    assert info.value.certificate["count"] == 799
