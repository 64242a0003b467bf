"""
Local minimization of the discriminant exponent of a Picard curve at a prime.

Every candidate move is an integral change of variables combined with
division by the largest power of p that keeps the plane quartic integral.
A move with det(T) = p^t and division by p^s changes v_p(Delta) by 36 t - 27 s,
so the search scores candidates without computing discriminants. The
lattices [[p^a, j], [0, p^b]] are the vertices of the Bruhat-Tits tree at
distance a + b from the current model.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from loguru import logger
from pydantic import BaseModel, Field

import config
from arith.rationals import check_prime, prime_support, valuation
from curves.conversions import (
    as_special_short,
    short_to_long_nonspecial,
    short_to_long_special,
    simplify_model,
    to_short,
)
from curves.curve import PicardCurve
from curves.models import (
    NonspecialLong,
    NonspecialShort,
    PicardModel,
    SpecialLong,
    SpecialShort,
    gauss_valuation,
    make_integral,
)
from errors import ComputationError
from forms import binary_forms as bf
from forms.binary_quartic import BinaryQuartic
from reduction.good_reduction import reduced_short_weierstrass

Vertex = tuple[int, int, int]


class MinimizationReport(BaseModel):
    """Outcome of the local search at one prime."""

    prime: int = Field(description="Prime at which the model was minimized")
    initial_exponent: int = Field(description="v_p of the discriminant before minimization")
    final_exponent: int = Field(description="v_p of the discriminant after minimization")
    steps: int = Field(description="Number of improving moves applied")
    certified: bool = Field(
        description="True when the exponent is below 9, hence minimal among all integral models"
    )
    shape: str = Field(description="Shape of the model the search worked on")


@dataclass(frozen=True)
class MinimalModel:
    curve: PicardCurve
    factorization: list[tuple[int, int]]
    reports: list[MinimizationReport]

    @property
    def local_only_primes(self) -> list[int]:
        return [r.prime for r in self.reports if not r.certified]


# --- Search space ---


def _vertex_count(p: int, depth: int) -> int:
    count = 0
    for a in range(depth + 1):
        for b in range(depth + 1 - a):
            count += p**a - p ** (a - 1) if a > 0 and b > 0 else p**a
    return count


@lru_cache(maxsize=64)
def lattice_vertices(p: int, depth: int) -> tuple[Vertex, ...]:
    """
    Triples (a, b, j) for the substitutions (x, z) -> (p^a x + j z, p^b z) with
    a + b <= depth. The depth shrinks until the count fits MAX_CANDIDATES_PER_STEP.
    """
    while depth > 0 and _vertex_count(p, depth) > config.MAX_CANDIDATES_PER_STEP:
        depth -= 1
    vertices = []
    for total in range(depth + 1):
        for a in range(total + 1):
            b = total - a
            for j in range(p**a):
                if a > 0 and b > 0 and j % p == 0:
                    continue
                vertices.append((a, b, j))
    return tuple(vertices)


def _shift_vectors(p: int, m: int) -> list[tuple[int, int]]:
    if m < 0:
        return [(0, 0)]
    size = p ** max(m, 1)
    return [(n0, n1) for n0 in range(size) for n1 in range(size)]


def _balanced_exponents(gap, weight: int) -> set[int]:
    """The two integers m nearest to gap / weight."""
    ratio = Fraction(gap, weight)
    return {math.floor(ratio), math.ceil(ratio)}


def _power(p: int, e: int) -> Fraction:
    return Fraction(p) ** e


@dataclass(frozen=True)
class _Candidate:
    exponent: int
    model: PicardModel


# --- Moves on short models ---


def _best_short_move(model, p: int, vertices, weight: int) -> _Candidate | None:
    """
    Short models b y^3 z = f(x, z) (weight 3) or b x^4 = f(y, z) (weight 4):
    the branch quartic moves along the tree, the remaining variable is scaled
    by p^m to balance b against the content of the new quartic.
    """
    v = int(model.disc_valuation(p))
    vb = valuation(model.b, p)
    best: tuple | None = None
    for a, b_exp, j in vertices:
        moved = bf.compose(model.f.coeffs, p**a, j, 0, p**b_exp)
        g = bf.gauss_valuation(moved, p)
        # y^3 z also picks up the z-scaling; x^4 does not
        base = vb + (b_exp if weight == 3 else 0)
        for m in _balanced_exponents(g - base, weight):
            s = min(base + weight * m, g)
            exponent = v + 36 * (a + b_exp + m) - 27 * s
            if exponent < (best[0] if best else v):
                best = (exponent, base + weight * m - vb, s, moved)
    if best is None:
        return None
    exponent, b_shift, s, moved = best
    new_b = model.b * _power(p, b_shift - s)
    new_f = BinaryQuartic(bf.form_scale(moved, _power(p, -s)))
    new_model = type(model)(new_b, new_f)
    return _Candidate(exponent, new_model)


# --- Moves on long models ---


def _zero(degree: int) -> bf.Form:
    return tuple(Fraction(0) for _ in range(degree + 1))


def _power_forms(mu: bf.Form, top: int) -> list[bf.Form]:
    powers = [(Fraction(1),)]
    for _ in range(top):
        powers.append(bf.form_mul(powers[-1], mu))
    return powers


def _nonspecial_long_candidates(model: NonspecialLong, p: int, a: int, b_exp: int, j: int):
    scale_z = _power(p, b_exp)
    A1 = bf.compose(model.a1, p**a, j, 0, p**b_exp)
    A2 = bf.compose(model.a2, p**a, j, 0, p**b_exp)
    A4 = bf.compose(model.a4.coeffs, p**a, j, 0, p**b_exp)
    a0 = model.a0
    for m in range(-1, config.SHIFT_DEPTH + 1):
        pm = _power(p, m)
        for nu in _shift_vectors(p, m):
            nu_form = bf.as_form(nu)
            nu2 = bf.form_mul(nu_form, nu_form)
            new_a0 = scale_z * a0 * pm**3
            new_a1 = bf.form_scale(bf.form_add(bf.form_scale(nu_form, 3 * a0), A1), scale_z * pm**2)
            middle = bf.form_add(
                bf.form_add(bf.form_scale(nu2, 3 * a0), bf.form_scale(bf.form_mul(A1, nu_form), 2)),
                A2,
            )
            new_a2 = bf.form_scale(middle, scale_z * pm)
            constant = bf.form_add(
                bf.form_add(
                    bf.form_scale(bf.form_mul(nu2, nu_form), a0), bf.form_mul(A1, nu2)
                ),
                bf.form_mul(A2, nu_form),
            )
            new_a4 = bf.form_sub(A4, bf.form_scale(bf.form_mul(constant, (0, 1)), scale_z))
            yield m, (new_a0, new_a1, new_a2, new_a4)


def _special_long_candidates(model: SpecialLong, p: int, a: int, b_exp: int, j: int):
    parts = [(model.a0,)] + [
        bf.compose(form, p**a, j, 0, p**b_exp) for form in (model.a1, model.a2, model.a3)
    ]
    A4 = bf.compose(model.a4.coeffs, p**a, j, 0, p**b_exp)
    for m in range(-1, config.SHIFT_DEPTH + 1):
        pm = _power(p, m)
        for mu in _shift_vectors(p, m):
            powers = _power_forms(bf.as_form(mu), 4)
            new_parts = []
            for r in range(4):
                acc = _zero(r)
                for k in range(r + 1):
                    term = bf.form_mul(parts[k], powers[r - k])
                    acc = bf.form_add(acc, bf.form_scale(term, comb(4 - k, 4 - r)))
                new_parts.append(bf.form_scale(acc, pm ** (4 - r)))
            constant = _zero(4)
            for k in range(4):
                constant = bf.form_add(constant, bf.form_mul(parts[k], powers[4 - k]))
            new_a4 = bf.form_sub(A4, constant)
            yield m, (new_parts[0][0], new_parts[1], new_parts[2], new_parts[3], new_a4)


def _content_valuation(forms, p: int):
    return min(
        (valuation(c, p) for form in forms for c in form if c != 0),
        default=math.inf,
    )


def _best_long_move(model, p: int, vertices) -> _Candidate | None:
    v = int(model.disc_valuation(p))
    special = isinstance(model, SpecialLong)
    candidates = _special_long_candidates if special else _nonspecial_long_candidates
    best: tuple | None = None
    for a, b_exp, j in vertices:
        for m, coefficients in candidates(model, p, a, b_exp, j):
            head, *forms = coefficients
            s = _content_valuation([(head,), *forms], p)
            exponent = v + 36 * (a + b_exp + m) - 27 * s
            if exponent < (best[0] if best else v):
                best = (exponent, s, coefficients)
    if best is None:
        return None
    exponent, s, coefficients = best
    factor = _power(p, -s)
    head, *forms = coefficients
    scaled = [bf.form_scale(form, factor) for form in forms]
    scaled[-1] = BinaryQuartic(scaled[-1])
    new_model = type(model)(head * factor, *scaled)
    return _Candidate(exponent, new_model)


# --- Driver ---


def _search_shape(curve: PicardCurve, p: int) -> PicardModel:
    """Special curves use the special shape, long at 2; nonspecial curves are long at 3."""
    if curve.is_special:
        model, _ = as_special_short(curve.model)
        return short_to_long_special(model)[0] if p == 2 else model
    model, _ = to_short(curve.model)
    return short_to_long_nonspecial(model)[0] if p == 3 else model


def _normalize_content(model: PicardModel, p: int) -> PicardModel:
    g = gauss_valuation(model, p)
    if g < 0:
        logger.warning(f"Model is not {p}-integral; scaling by {p}^{-g}.")
    return model if g == 0 else model.scaled(_power(p, -g))


def _only_changes_at(before: PicardModel, after: PicardModel, p: int) -> bool:
    ratio = after.discriminant() / before.discriminant()
    return set(prime_support(ratio)) <= {p}


def _seeded(model: NonspecialShort, p: int) -> NonspecialShort:
    """The reduced model y^3 = c f0(x) when it is integral and only moves v_p."""
    c, f0 = reduced_short_weierstrass(model, p)
    seed = NonspecialShort(1, f0.scale(c))
    if make_integral(seed) != seed or not _only_changes_at(model, seed, p):
        return model
    if seed.disc_valuation(p) < model.disc_valuation(p):
        logger.debug(f"Seeding the search at {p} with the reduced model {seed.equation()}")
        return seed
    return model


def _improve(model: PicardModel, p: int, vertices) -> _Candidate | None:
    match model:
        case NonspecialShort():
            return _best_short_move(model, p, vertices, 3)
        case SpecialShort():
            return _best_short_move(model, p, vertices, 4)
        case _:
            return _best_long_move(model, p, vertices)


def minimize_with_report(
    curve: PicardCurve, p: int, depth: int | None = None, traceless: bool = False
) -> tuple[PicardCurve, MinimizationReport]:
    check_prime(p)
    depth = config.MINIMIZE_DEPTH if depth is None else depth
    initial = int(curve.disc_valuation(p))
    if traceless:
        model = traceless_minimum(curve, p)
        steps = 1
    else:
        model = _normalize_content(_search_shape(curve, p), p)
        if isinstance(model, NonspecialShort) and p != 3:
            model = _seeded(model, p)
        vertices = lattice_vertices(p, depth)
        steps = 0
        while steps < config.MAX_MINIMIZE_STEPS:
            candidate = _improve(model, p, vertices)
            if candidate is None:
                break
            if candidate.model.disc_valuation(p) != candidate.exponent:
                raise ComputationError(
                    f"Move at {p} predicted exponent {candidate.exponent}, "
                    f"got {candidate.model.disc_valuation(p)}"
                )
            model = candidate.model
            steps += 1
            logger.debug(f"Minimization at {p}: step {steps} reaches exponent {candidate.exponent}")
        model = simplify_model(model)

    final = int(model.disc_valuation(p))
    shape = model.shape
    if final > initial and not traceless:
        model, final, shape = curve.model, initial, curve.model.shape
    report = MinimizationReport(
        prime=p,
        initial_exponent=initial,
        final_exponent=final,
        steps=steps,
        certified=final < 9,
        shape=shape,
    )
    if not report.certified:
        logger.warning(f"Exponent {final} at {p} is minimal only for the searched moves")
    return curve.with_model(model), report


def minimize_at_prime(
    curve: PicardCurve, p: int, depth: int | None = None, traceless: bool = False
) -> PicardCurve:
    return minimize_with_report(curve, p, depth, traceless)[0]


def global_minimal_model(curve: PicardCurve, depth: int | None = None) -> MinimalModel:
    """Minimizes at every prime dividing the discriminant, the wild prime last."""
    curve = curve.with_model(make_integral(curve.model))
    primes = prime_support(curve.discriminant())
    wild = 2 if curve.is_special else 3
    reports = []
    for p in sorted(primes, key=lambda q: (q == wild, q)):
        curve, report = minimize_with_report(curve, p, depth)
        reports.append(report)
    reports.sort(key=lambda r: r.prime)
    factorization = [(r.prime, r.final_exponent) for r in reports if r.final_exponent > 0]
    logger.info(f"Minimal model candidate {curve.equation()} with exponents {factorization}")
    return MinimalModel(curve=curve, factorization=factorization, reports=reports)


# --- Restricted diagonal search ---


def _diagonal_minimum(terms, exponent: int, p: int) -> tuple[int, int, int, int]:
    """
    terms are (valuation, weight of i, weight of j) per coefficient under
    x -> p^i x, y -> p^j y; returns (exponent, i, j, k) with k the content removed.
    """
    radius = max(abs(val) for val, _, _ in terms) + 12
    best = None
    for i in range(-radius, radius + 1):
        for j in range(-radius, radius + 1):
            k = min(val + wi * i + wj * j for val, wi, wj in terms)
            e = exponent + 36 * (i + j) - 27 * k
            if best is None or e < best[0]:
                best = (e, i, j, k)
    return best


def traceless_minimum(curve: PicardCurve, p: int) -> PicardModel:
    """
    The smallest exponent over the models obtained from the traceless form
    b y^3 = c0 x^4 + c2 x^2 + c3 x + c4 (or the special short form) by the
    diagonal moves x -> p^i x, y -> p^j y alone.
    """
    check_prime(p)
    if curve.is_special:
        model, _ = as_special_short(curve.model)
    else:
        short, _ = to_short(curve.model)
        c0, c1 = short.f.coeffs[:2]
        model = NonspecialShort(short.b, short.f.compose(1, -c1 / (4 * c0), 0, 1))
    special = isinstance(model, SpecialShort)
    coeffs = model.f.coeffs
    b_weights = (4, 0) if special else (0, 3)
    terms = [(valuation(model.b, p), *b_weights)]
    for n, c in enumerate(coeffs):
        if c != 0:
            terms.append((valuation(c, p), 0, 4 - n) if special else (valuation(c, p), 4 - n, 0))

    exponent, i, j, k = _diagonal_minimum(terms, int(model.disc_valuation(p)), p)
    if special:
        new_b = model.b * _power(p, 4 * i - k)
        new_f = tuple(c * _power(p, (4 - n) * j - k) for n, c in enumerate(coeffs))
    else:
        new_b = model.b * _power(p, 3 * j - k)
        new_f = tuple(c * _power(p, (4 - n) * i - k) for n, c in enumerate(coeffs))
    logger.debug(f"Diagonal search at {p}: i={i}, j={j}, content {k}, exponent {exponent}")
    return type(model)(new_b, BinaryQuartic(new_f))
