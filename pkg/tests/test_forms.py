import random
from fractions import Fraction

import pytest

from arith.rationals import valuation
from curves.models import NonspecialShort
from errors import ComputationError, DegenerateFormError, MalformedInputError
from forms import binary_forms as bf
from forms.binary_quartic import (
    BinaryQuartic,
    MobiusMap,
    act_affine,
    act_mobius,
    disc_binary,
    hessian_shadow,
    invariant_I,
    invariant_J,
    is_reduced_sufficient,
    j_invariant,
    lambda_slope,
    reduce_quartic,
)
from forms.closed_forms import disc_short_nonspecial, disc_short_special
from forms.equivalence import (
    are_equivalent,
    brute_force_equivalences,
    degree_pattern,
    equivalence_obstructed,
    rational_symmetries,
    scalar_candidates,
)
from forms.macaulay import disc_ternary, macaulay_resultant
from forms.ternary_form import LinearChange3, TernaryForm
from tests.factories import random_matrix, random_quartic, random_special_short

FERMAT = TernaryForm.quartic({(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1})


# --- binary forms ---


def test_compose_substitutes_linear_forms():
    # (x + z)^2 = x^2 + 2 x z + z^2
    assert bf.compose((1, 0, 0), 1, 1, 0, 1) == (1, 2, 1)
    assert bf.form_mul((1, 1), (1, -1)) == (1, 0, -1)


def test_parse_univariate_literal():
    assert BinaryQuartic.parse("t^4+6*t^2-3").coeffs == (1, 0, 6, 0, -3)
    assert BinaryQuartic.parse("x^3 - 2").polynomial_degree == 3
    with pytest.raises(MalformedInputError):
        BinaryQuartic.parse("x^2*y + 1")


def test_invariants_of_known_quartics():
    f = BinaryQuartic.of(1, 0, 0, 0, -1)
    assert invariant_I(f) == -12
    assert invariant_J(f) == 0
    assert disc_binary(f) == -256
    assert j_invariant(f) == 1728

    g = BinaryQuartic.of(1, 0, 0, 1, 0)
    assert invariant_I(g) == 0
    assert disc_binary(g) == -27


def test_zero_form_rejected():
    with pytest.raises(DegenerateFormError):
        BinaryQuartic.of(0, 0, 0, 0, 0)
    with pytest.raises(DegenerateFormError):
        j_invariant(BinaryQuartic.of(1, -2, 1, 0, 0))


def test_invariants_transform_with_determinant():
    rng = random.Random(7)
    for _ in range(100):
        f = random_quartic(rng)
        a, b, c, d = random_matrix(rng)
        det = a * d - b * c
        g = f.compose(a, b, c, d)
        assert invariant_I(g) == det**4 * invariant_I(f)
        assert invariant_J(g) == det**6 * invariant_J(f)
        assert disc_binary(g) == det**12 * disc_binary(f)


def test_mobius_composition_matches_matrix_product():
    rng = random.Random(11)
    for _ in range(100):
        f = random_quartic(rng)
        m = MobiusMap(*random_matrix(rng), scalar=Fraction(rng.randint(1, 5), rng.randint(1, 5)))
        n = MobiusMap(*random_matrix(rng))
        assert act_mobius(act_mobius(f, m), n) == act_mobius(f, m.then(n))
        assert act_mobius(act_mobius(f, m), m.inverse()) == f


def test_affine_action_on_monic_quartics():
    f = BinaryQuartic.of(1, 0, 0, 0, 5**5)
    assert act_affine(f, 5, 0) == BinaryQuartic.of(1, 0, 0, 0, 5)
    assert act_affine(f, 1, 0) == f
    g = act_affine(f, 1, -1)
    assert g.is_monic
    assert disc_binary(g) == disc_binary(f)
    assert act_affine(act_affine(f, 5, 1), Fraction(1, 5), -1) == act_affine(f, 1, -4)
    with pytest.raises(ValueError):
        act_affine(f, 0, 1)


# --- reduction at a prime ---


def test_reduce_quartic_scales_out_fifth_power():
    f = BinaryQuartic.of(1, 0, 0, 0, 5**5)
    reduced, mobius = reduce_quartic(f, 5)
    assert reduced == BinaryQuartic.of(1, 0, 0, 0, 5)
    assert mobius.apply(f) == reduced
    assert (mobius.alpha, mobius.beta) == (5, 0)


def test_reduce_quartic_shifts_residual_fourth_power():
    f = BinaryQuartic.of(1, 0, 0, 0, 5**5).compose(1, -1, 0, 1)  # (x - 1)^4 + 5^5
    reduced, mobius = reduce_quartic(f, 5)
    assert reduced == BinaryQuartic.of(1, 0, 0, 0, 5)
    assert mobius.apply(f) == reduced


def test_reduce_quartic_keeps_reduced_input():
    f = BinaryQuartic.of(1, 0, 0, 0, 25).compose(1, -1, 0, 1)  # (x - 1)^4 + 5^2
    reduced, mobius = reduce_quartic(f, 5)
    assert reduced == f
    assert act_mobius(f, mobius) == f
    assert lambda_slope(f, 5) == 0
    assert is_reduced_sufficient(BinaryQuartic.of(1, 0, 0, 0, 5), 5)


def test_reduce_quartic_rejects_bad_input():
    with pytest.raises(ValueError):
        reduce_quartic(BinaryQuartic.of(2, 0, 0, 0, 1), 3)
    with pytest.raises(DegenerateFormError):
        reduce_quartic(BinaryQuartic.of(1, -2, 1, 0, 0), 3)


def test_reduced_quartics_have_slope_in_unit_interval():
    rng = random.Random(13)
    for _ in range(100):
        p = rng.choice([2, 3, 5, 7])
        f = random_quartic(rng, monic=True).compose(p ** rng.randint(0, 2), rng.randint(-3, 3), 0, 1)
        f = f.scale(1 / f.coeffs[0])
        reduced, mobius = reduce_quartic(f, p)
        assert mobius.apply(f) == reduced
        assert 0 <= lambda_slope(reduced, p) < 1


def test_reduce_quartic_is_idempotent_and_never_raises_the_discriminant():
    rng = random.Random(29)
    for _ in range(100):
        p = rng.choice([2, 3, 5, 7])
        f = random_quartic(rng, monic=True).compose(1, rng.randint(-3, 3), 0, 1)
        # p^4k f(x / p^k) stays integral and monic
        f = act_affine(f, Fraction(1, p ** rng.randint(0, 2)), 0)
        reduced, _ = reduce_quartic(f, p)
        again, mobius = reduce_quartic(reduced, p)
        assert again == reduced
        assert mobius.apply(reduced) == reduced
        assert valuation(disc_binary(reduced), p) <= valuation(disc_binary(f), p)


# --- Hessian shadow ---


def test_hessian_shadow_of_equianharmonic_quartic():
    shadow = hessian_shadow(BinaryQuartic.of(1, 0, 0, 1, 0))
    assert shadow.coeffs == (0, 1, 0, 0, Fraction(-1, 8))
    assert invariant_I(shadow) == 0


def test_hessian_shadow_needs_vanishing_I():
    with pytest.raises(DegenerateFormError):
        hessian_shadow(BinaryQuartic.of(1, 0, 0, 0, -1))


# --- equivalence ---


def test_pre_filters():
    assert degree_pattern(BinaryQuartic.of(1, 0, 0, 0, -1)) == (1, 1, 2)
    assert degree_pattern(BinaryQuartic.of(0, 1, 0, 0, -2)) == (1, 3)
    g = BinaryQuartic.of(1, 0, 2, 1, 3)
    assert scalar_candidates(g, g.scale(5)) == [Fraction(1, 5)]
    assert equivalence_obstructed(BinaryQuartic.of(1, 0, 0, 0, -1), BinaryQuartic.of(1, 0, 0, 0, 1))


def test_equivalence_witness_maps_first_form_onto_second():
    g1 = BinaryQuartic.of(1, 0, 2, 1, 3)
    g2 = g1.compose(1, 1, 0, 1)
    witness = are_equivalent(g1, g2)
    assert witness is not None
    mobius, mu = witness
    assert act_mobius(g1, mobius) == g2.scale(mu)


def test_equivalence_solver_contains_brute_force_maps():
    g1 = BinaryQuartic.of(1, 0, 2, 1, 3)
    g2 = g1.compose(2, 1, 1, 1)
    solved = {(m.alpha, m.beta, m.gamma, m.delta) for m, _ in rational_symmetries(g1)}
    found = are_equivalent(g1, g2)
    assert found is not None
    brute = brute_force_equivalences(g1, g2, 2)
    assert brute
    for m in brute_force_equivalences(g1, g1, 2):
        assert (m.alpha, m.beta, m.gamma, m.delta) in solved


def test_inequivalent_quartics():
    assert are_equivalent(BinaryQuartic.of(1, 0, 0, 0, -1), BinaryQuartic.of(1, 0, 0, 0, 1)) is None


def test_symmetries_start_with_identity():
    g = BinaryQuartic.of(1, 0, 0, 0, -1)
    symmetries = rational_symmetries(g)
    first, mu = symmetries[0]
    assert (first.alpha, first.beta, first.gamma, first.delta) == (1, 0, 0, 1)
    assert mu == 1
    for mobius, scalar in symmetries:
        assert act_mobius(g, mobius) == g.scale(scalar)
    # x -> -x fixes g and swapping x, z negates it
    maps = {(m.alpha, m.beta, m.gamma, m.delta): s for m, s in symmetries}
    assert maps[(-1, 0, 0, 1)] == 1
    assert maps[(0, 1, 1, 0)] == -1


# --- ternary forms ---


def test_ternary_transform_composes_and_inverts():
    rng = random.Random(17)
    form = NonspecialShort(2, BinaryQuartic.of(1, 0, 3, -1, 5)).ternary()
    for _ in range(100):
        entries = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
        for i in range(3):
            entries[i][i] = rng.choice([1, 2, 3])
        t = LinearChange3(tuple(tuple(row) for row in entries))
        if t.determinant == 0:
            continue
        u = LinearChange3.diagonal(1, rng.randint(1, 3), 1)
        assert form.transform(t).transform(u) == form.transform(t.then(u))
        assert form.transform(t).transform(t.inverse()) == form


def test_partials_and_evaluation():
    form = TernaryForm.quartic({(3, 0, 1): -1, (0, 4, 0): 1, (0, 0, 4): -1})
    assert form.partial(0) == TernaryForm.from_dict(3, {(2, 0, 1): -3})
    assert form.evaluate((0, 1, 1)) == 0
    with pytest.raises(DegenerateFormError):
        TernaryForm.quartic({})


# --- Macaulay discriminant ---


def test_fermat_quartic_discriminant():
    assert disc_ternary(FERMAT) == 2**40


def test_standard_curve_discriminant_magnitude(standard_curve):
    assert abs(disc_ternary(standard_curve.ternary())) == 2**16 * 3**9
    assert abs(standard_curve.discriminant()) == 2**16 * 3**9


def test_discriminant_is_homogeneous_of_degree_27(standard_curve):
    form = standard_curve.ternary()
    assert disc_ternary(form.scale(2)) == 2**27 * disc_ternary(form)


def test_singular_quartic_has_zero_discriminant():
    # y^3 z = x^4 - x^2 z^2 is singular at (0:0:1)
    form = TernaryForm.quartic({(0, 4, 0): 1, (0, 2, 2): -1, (3, 0, 1): -1})
    assert disc_ternary(form) == 0


def test_resultant_of_coordinate_powers_is_one():
    y3 = TernaryForm.from_dict(3, {(3, 0, 0): 1})
    x3 = TernaryForm.from_dict(3, {(0, 3, 0): 1})
    z3 = TernaryForm.from_dict(3, {(0, 0, 3): 1})
    assert macaulay_resultant(y3, x3, z3) == 1


def test_vanishing_extraneous_minor_is_retried(mocker):
    patched = mocker.patch("forms.macaulay._quotient", side_effect=[None, Fraction(5)])
    assert macaulay_resultant(*FERMAT.partials()) == 5
    assert patched.call_count == 2


def test_vanishing_extraneous_minor_exhausts_retries(mocker):
    mocker.patch("forms.macaulay._quotient", return_value=None)
    with pytest.raises(ComputationError):
        disc_ternary(FERMAT)


@pytest.mark.slow
def test_closed_forms_agree_with_macaulay():
    rng = random.Random(19)
    for _ in range(100):
        if rng.random() < 0.5:
            model = NonspecialShort(rng.choice([1, -1, 2, 3]), random_quartic(rng, size=3))
            closed = disc_short_nonspecial(model.b, model.f)
        else:
            model = random_special_short(rng)
            closed = model.discriminant()
            if model.f.coeffs[0] != 0:
                assert closed == disc_short_special(model.b, model.f)
        assert disc_ternary(model.ternary()) == closed


@pytest.mark.slow
@pytest.mark.parametrize(
    "rows",
    [
        ((1, 0, 0), (0, 2, 0), (0, 0, 1)),
        ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
        ((2, 0, 1), (0, 1, -1), (1, 0, 1)),
    ],
)
def test_ternary_discriminant_has_weight_36(rows):
    form = NonspecialShort(2, BinaryQuartic.of(1, 0, 3, -1, 5)).ternary()
    change = LinearChange3(rows)
    assert disc_ternary(form.transform(change)) == change.determinant**36 * disc_ternary(form)
