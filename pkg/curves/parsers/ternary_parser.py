from errors import MalformedInputError
from forms.ternary_form import TernaryForm

from .base_parser import BaseCurveParser
from .equation_parser import parse_side


class TernaryParser(BaseCurveParser):
    """
    Parser for bare homogeneous quartics in y, x, z, e.g. 'y^3*z - x^4 + z^4'
    """

    @staticmethod
    def get_format_name() -> str:
        return "ternary"

    def can_parse(self, text: str) -> bool:
        return "=" not in text and "z" in text

    def parse(self, text: str) -> tuple[TernaryForm, str | None]:
        try:
            form = TernaryForm.from_expr(parse_side(text), 4)
        except ValueError as e:
            raise MalformedInputError(f"{text!r} is not a ternary quartic: {e}") from e
        return form, None
