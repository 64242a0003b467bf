from abc import ABC, abstractmethod

from forms.ternary_form import TernaryForm


class BaseCurveParser(ABC):
    """
    Abstract class defining the interface for curve literal parsers
    """

    @staticmethod
    @abstractmethod
    def get_format_name() -> str:
        """Returns the name of the literal format this parser handles."""
        pass

    @abstractmethod
    def can_parse(self, text: str) -> bool:
        """True if the literal looks like this parser's format."""
        pass

    @abstractmethod
    def parse(self, text: str) -> tuple[TernaryForm, str | None]:
        """
        Parses the literal into a plane quartic and the preferred model
        shape ('special' or None) for quartics that fit both shapes.
        """
        pass
