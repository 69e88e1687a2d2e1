"""
Errors raised by the percentile indicator core and its parsers
"""

from typing import Optional


class IndicatorError(Exception):
    """Base class for every error the CLI reports with a nonzero exit status"""


class ValidationError(IndicatorError, ValueError):
    """Input value violates a domain constraint"""


class ParseError(IndicatorError):
    """Input could not be decoded into records"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicatePublication(ValidationError):
    def __init__(self, pub_id: str, line: Optional[int] = None):
        self.pub_id = pub_id
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"Duplicate publication id '{pub_id}'{where}")


class EmptyDataset(ValidationError):
    pass


class InvalidScheme(ValidationError):
    pass


class UndefinedSegment(IndicatorError, ValueError):
    """c_i = 0, so [q_i, q_{i+1}] is degenerate"""


class UndefinedScore(IndicatorError, ValueError):
    """Score requested for a citation count no publication of the field has"""


class EmptyGroup(IndicatorError, ValueError):
    pass


class InconsistentDataset(IndicatorError, ValueError):
    """Group members that do not match the supplied distributions"""


class ApproachSchemeMismatch(IndicatorError, ValueError):
    """A top-x-only approach was given a general percentile scheme"""
