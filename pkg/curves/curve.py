from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Literal

from curves.models import (
    NonspecialLong,
    NonspecialShort,
    PicardModel,
    SpecialLong,
    SpecialShort,
)
from curves.normal_form import tschirnhausen
from forms.ternary_form import TernaryForm

CurveKind = Literal["special", "nonspecial"]


def model_kind(model: PicardModel) -> CurveKind:
    """A curve is special iff its Tschirnhausen form has c2 = c3 = 0."""
    match model:
        case SpecialShort() | SpecialLong():
            return "special"
        case NonspecialLong():
            short = model.shortened()
        case NonspecialShort():
            short = model
    normal = tschirnhausen(short)
    return "special" if normal.c2 == 0 and normal.c3 == 0 else "nonspecial"


@dataclass(frozen=True)
class PicardCurve:
    """A Picard curve over Q given by one of its Weierstrass models."""

    model: PicardModel
    provenance: str = ""

    @cached_property
    def kind(self) -> CurveKind:
        return model_kind(self.model)

    @property
    def is_special(self) -> bool:
        return self.kind == "special"

    def ternary(self) -> TernaryForm:
        return self.model.ternary()

    def discriminant(self) -> Fraction:
        return self.model.discriminant()

    def disc_valuation(self, p: int):
        return self.model.disc_valuation(p)

    def equation(self) -> str:
        return self.model.equation()

    def with_model(self, model: PicardModel, note: str | None = None) -> "PicardCurve":
        provenance = self.provenance
        if note:
            provenance = f"{provenance}; {note}" if provenance else note
        return PicardCurve(model, provenance)

    def __str__(self) -> str:
        return self.equation()
