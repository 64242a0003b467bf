from sympy import Poly, Symbol, expand
from sympy.parsing.sympy_parser import parse_expr

from errors import MalformedInputError
from forms.binary_quartic import TRANSFORMATIONS
from forms.ternary_form import TernaryForm, X, Y, Z

from .base_parser import BaseCurveParser

NAMES = {"x": X, "y": Y, "z": Z}


def parse_side(text: str):
    try:
        expr = parse_expr(text, local_dict=NAMES, transformations=TRANSFORMATIONS)
    except Exception as e:
        raise MalformedInputError(f"Cannot parse {text!r}: {e}") from e
    unknown = {s for s in expr.free_symbols if isinstance(s, Symbol)} - {X, Y, Z}
    if unknown:
        raise MalformedInputError(f"Unknown variables {sorted(map(str, unknown))} in {text!r}")
    return expr


def homogenize(expr):
    """The plane quartic of an affine quartic equation in x and y."""
    poly = Poly(expand(expr), X, Y)
    if poly.total_degree() != 4:
        raise MalformedInputError(f"{expr} = 0 is not a quartic equation.")
    return poly.homogenize(Z).as_expr()


class EquationParser(BaseCurveParser):
    """
    Parser for affine equations 'lhs = rhs' in x and y, e.g. 'y^3 = x^4 - 1'
    """

    @staticmethod
    def get_format_name() -> str:
        return "equation"

    def can_parse(self, text: str) -> bool:
        return text.count("=") == 1

    def parse(self, text: str) -> tuple[TernaryForm, str | None]:
        lhs_text, rhs_text = (side.strip() for side in text.split("="))
        if not lhs_text or not rhs_text:
            raise MalformedInputError(f"Both sides of {text!r} must be nonempty.")
        lhs, rhs = parse_side(lhs_text), parse_side(rhs_text)
        difference = expand(rhs - lhs)
        if Z not in difference.free_symbols:
            difference = homogenize(difference)
        try:
            form = TernaryForm.from_expr(difference, 4)
        except ValueError as e:
            raise MalformedInputError(f"{text!r} is not a quartic equation: {e}") from e
        # 'a*x^4 = ...' reads as a special model when both shapes fit
        lone_x4 = lhs.free_symbols <= {X} and Poly(lhs, X, Y, Z).monoms() == [(4, 0, 0)]
        return form, "special" if lone_x4 else None
