import re
from fractions import Fraction

from src.core.indicators.exceptions import ValidationError
from src.utils.logger import get_logger

# Logger setup
logger = get_logger(__name__)


class InputValidator:
    PATTERNS = {
        # Citation counts are plain non-negative integers
        "citations": r"^\d+$",
        "integer": r"^[+-]?\d+$",
        # Exact rationals: finite decimals or num/den fractions
        "decimal": r"^[+-]?(\d+(\.\d*)?|\.\d+)$",
        "fraction": r"^[+-]?\d+/\d+$",
        # Identifiers must be non-empty without surrounding whitespace
        "identifier": r"^\S(.*\S)?$",
    }

    @classmethod
    def matches(cls, kind: str, text: str) -> bool:
        """
        Check a raw string against one of the known input patterns.

        :param kind: Pattern name (e.g. "citations", "fraction")
        :param text: The raw value as read from the input
        :return: True if the value has the expected shape, else False
        """
        pattern = cls.PATTERNS.get(kind)

        if not pattern:
            logger.warning(f"Input kind {kind} has no validation pattern.")
            return False

        return re.fullmatch(pattern, text) is not None

    @classmethod
    def parse_citations(cls, text) -> int:
        if isinstance(text, bool):
            raise ValidationError(f"Citation count must be an integer, got {text!r}")
        if isinstance(text, int):
            value = text
        else:
            raw = str(text).strip()
            if cls.matches("citations", raw):
                return int(raw)
            if not cls.matches("integer", raw):
                raise ValidationError(f"Citation count must be a non-negative integer, got {raw!r}")
            value = int(raw)
        if value < 0:
            raise ValidationError(f"Citation count must be non-negative, got {value}")
        return value

    @classmethod
    def parse_rational(cls, text) -> Fraction:
        """Parse "9/10" or "0.95" into an exact Fraction; binary floats are rejected."""
        if isinstance(text, Fraction):
            return text
        if isinstance(text, int) and not isinstance(text, bool):
            return Fraction(text)
        if not isinstance(text, str):
            raise ValidationError(f"Rational values must be given as strings, got {text!r}")
        raw = text.strip()
        if not (cls.matches("decimal", raw) or cls.matches("fraction", raw)):
            raise ValidationError(f"Not an exact rational: {raw!r}")
        try:
            return Fraction(raw)
        except ZeroDivisionError:
            raise ValidationError(f"Zero denominator in {raw!r}")

    @classmethod
    def parse_identifier(cls, text, what: str = "identifier") -> str:
        raw = "" if text is None else str(text).strip()
        if not cls.matches("identifier", raw):
            raise ValidationError(f"Missing {what}")
        return raw
