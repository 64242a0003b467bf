"""Derives every stored field of a curve record from a Picard curve."""

from loguru import logger

from arith.rationals import format_rational, nth_power_free_part
from curves.conversions import (
    as_special_short,
    short_to_long_nonspecial,
    short_to_long_special,
    to_short,
)
from curves.curve import PicardCurve
from curves.minimization import global_minimal_model
from curves.models import NonspecialShort, make_integral
from database.curve_record import CurveRecord
from forms.binary_quartic import BinaryQuartic
from invariants.isomorphism import weighted_point
from invariants.weighted_point import WeightedPoint, normalize
from reduction.good_reduction import special_pair

SPECIAL_POINT = WeightedPoint(0, 0, 1)


def _strings(values) -> list[str]:
    return [format_rational(v) for v in values]


def _polynomial_key(g: BinaryQuartic) -> str:
    return ",".join(_strings(g.coeffs))


def reduced_nonspecial(model: NonspecialShort) -> tuple:
    """y^3 = c f0(x) with f0 monic and c cube-free: multiply b y^3 = c0 g by b^2."""
    c0 = model.f.coeffs[0]
    c, _ = nth_power_free_part(model.b**2 * c0, 3)
    return c, model.f.scale(1 / c0)


def short_and_long(model, special: bool) -> tuple:
    """The short model (scaled to be integral) and a long model of a minimal curve."""
    short = make_integral(as_special_short(model)[0] if special else to_short(model)[0])
    if model.shape == ("special-long" if special else "nonspecial-long"):
        return short, model
    to_long = short_to_long_special if special else short_to_long_nonspecial
    return short, to_long(short)[0]


def twist_key_of(curve: PicardCurve, family: str | None = None) -> str:
    """
    Nonspecial curves are keyed by their class over the algebraic closure.
    Special curves are all isomorphic there, so they are keyed by the family
    of twists a x^4 = g(y) of one polynomial g.
    """
    if curve.is_special:
        if family is not None:
            return f"special:{family}"
        _, g = special_pair(as_special_short(curve.model)[0])
        return f"special:{_polynomial_key(g)}"
    qbar = weighted_point(curve.model).qbar_class()
    return "qbar:" + ",".join(_strings(qbar))


def q_key_of(record: CurveRecord) -> str:
    """Index key for Q-isomorphism; special records only share a coarse key."""
    if record.kind == "special":
        return record.twist_key
    return "Q:" + ",".join(record.weighted_point)


def build_record(
    curve: PicardCurve,
    conductor_exponents: dict[int, int | None] | None = None,
    reduction_type_at_3: str | None = None,
    family: str | None = None,
) -> CurveRecord:
    """A record without label; labels are assigned when the database is built."""
    # --- 1. Minimal model ---
    minimal = global_minimal_model(curve)
    short, long_model = short_and_long(minimal.curve.model, curve.is_special)
    if minimal.local_only_primes:
        logger.warning(
            f"{curve.equation()}: minimality only move-set-local at {minimal.local_only_primes}"
        )

    # --- 2. Invariants ---
    if curve.is_special:
        a, g = special_pair(short)
        reduced = [a, *g.coeffs]
        point = SPECIAL_POINT
    else:
        c, f0 = reduced_nonspecial(short)
        reduced = [c, *f0.coeffs]
        point = normalize(weighted_point(short))

    # --- 3. Record ---
    record = CurveRecord(
        label="",
        kind=curve.kind,
        reduced_model=_strings(reduced),
        minimal_short=short.equation(),
        minimal_long=long_model.equation(),
        weighted_point=point.as_strings(),
        qbar_class=_strings(point.qbar_class()),
        twist_key=twist_key_of(curve, family),
        disc_factorization=list(minimal.factorization),
        bad_primes=[p for p, _ in minimal.factorization],
        conductor_exponents=conductor_exponents,
        reduction_type_at_3=reduction_type_at_3,
        provenance=curve.provenance,
    )
    logger.debug(f"Built record for {curve.equation()}: {minimal.factorization}")
    return record.with_conductor_check()
