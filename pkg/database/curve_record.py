"""One database line: a Picard curve over Q with its minimal models and invariants."""

from typing import Literal

from pydantic import BaseModel, Field

from reduction.conductor import ReductionTypeAt3, conductor_within_disc


class CurveRecord(BaseModel):
    """
    Rationals are kept as "num/den" strings so that arbitrary precision
    survives the text round-trip. Field order is the line layout on disk.
    """

    label: str = Field(description="N.p1ep1_p2ep2.index with N the minimal discriminant")
    kind: Literal["special", "nonspecial"] = Field(description="Special or nonspecial curve")
    reduced_model: list[str] = Field(
        description="(c; c0..c4) of y^3 = c f0(x) or (a; g0..g4) of a x^4 = g(y)"
    )
    minimal_short: str = Field(description="Short Weierstrass equation of the minimal model")
    minimal_long: str = Field(description="Minimal model as found, in long Weierstrass shape")
    weighted_point: list[str] = Field(description="Normalized (c2, c3, c4)")
    qbar_class: list[str] = Field(description="Invariants of the twist class")
    twist_key: str = Field(description="Key shared by all twists of the curve")
    disc_factorization: list[tuple[int, int]] = Field(
        description="(p, v_p) of the minimal discriminant"
    )
    bad_primes: list[int] = Field(description="Primes with positive minimal discriminant exponent")
    conductor_exponents: dict[int, int | None] | None = Field(
        default=None, description="Known conductor exponents; None marks an unknown prime"
    )
    conductor_within_disc: dict[int, bool] | None = Field(
        default=None, description="Per prime with both values known, whether f_p <= v_p"
    )
    reduction_type_at_3: ReductionTypeAt3 | None = Field(
        default=None, description="Stable reduction type at 3, when known"
    )
    provenance: str = Field(default="", description="Where the curve came from")

    @property
    def known_conductor_exponents(self) -> dict[int, int]:
        return {p: f for p, f in (self.conductor_exponents or {}).items() if f is not None}

    def with_conductor_check(self) -> "CurveRecord":
        """Fills conductor_within_disc from the known exponents."""
        known = self.known_conductor_exponents
        if not known:
            return self.model_copy(update={"conductor_within_disc": None})
        flags = conductor_within_disc(known, self.disc_factorization)
        return self.model_copy(update={"conductor_within_disc": flags})

    def to_line(self) -> str:
        return self.model_dump_json()

    @classmethod
    def from_line(cls, line: str) -> "CurveRecord":
        return cls.model_validate_json(line)
