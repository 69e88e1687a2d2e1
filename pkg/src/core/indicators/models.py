"""
Data models for percentile-based citation indicators
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, Optional, Tuple, Union

from .exceptions import ValidationError


def exact_fraction(value, what: str = "value", error=ValidationError) -> Fraction:
    """Fraction from an int, Fraction, Decimal or rational string; binary floats are refused."""
    if isinstance(value, (float, bool)):
        raise error(f"{what} must be an exact rational such as '9/10' or Fraction(9, 10), got {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise error(f"{what} is not a rational number: {value!r}")


class ApproachId(Enum):
    """Ways of turning a citation count into a percentile score"""
    FRACTIONAL = "fractional"
    LEYDESDORFF = "leydesdorff"
    NSB = "nsb"
    PUDOVKIN_GARFIELD = "pudovkin_garfield"
    SCIMAGO = "scimago"
    ROUSSEAU = "rousseau"
    SCHREIBER = "schreiber"
    SCHREIBER_INCLUSIVE = "schreiber_inclusive"
    CWTS = "cwts"

    @property
    def top_x_only(self) -> bool:
        return self in (
            ApproachId.SCIMAGO, ApproachId.ROUSSEAU,
            ApproachId.SCHREIBER, ApproachId.SCHREIBER_INCLUSIVE,
            ApproachId.CWTS,
        )

    @property
    def rank(self) -> int:
        return list(ApproachId).index(self)


@dataclass(frozen=True)
class PublicationRecord:
    """One publication with its final citation count"""
    pub_id: str
    field_id: str
    citations: int
    groups: FrozenSet[str] = frozenset()

    def __post_init__(self):
        if isinstance(self.citations, bool) or not isinstance(self.citations, int):
            raise ValidationError(f"Publication {self.pub_id}: citations must be an integer")
        if self.citations < 0:
            raise ValidationError(f"Publication {self.pub_id}: citations must be non-negative")
        if not isinstance(self.groups, frozenset):
            object.__setattr__(self, "groups", frozenset(self.groups))


@dataclass(frozen=True)
class Interval:
    """Closed interval with exact rational endpoints"""
    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lower", exact_fraction(self.lower, "Interval bound"))
        object.__setattr__(self, "upper", exact_fraction(self.upper, "Interval bound"))
        if self.lower > self.upper:
            raise ValidationError(f"Interval lower bound {self.lower} exceeds upper bound {self.upper}")

    @property
    def length(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, other: "Interval") -> bool:
        return self.lower <= other.lower and other.upper <= self.upper


@dataclass(frozen=True)
class Score:
    """S_i of a citation count within a field, with its per-interval fractions"""
    field_id: str
    citations: int
    value: Fraction
    breakdown: Tuple[Fraction, ...]


@dataclass(frozen=True)
class BandStats:
    """Shares of a field below, exactly at and above a citation threshold"""
    below: Fraction
    at: Fraction
    above: Fraction

    def __iter__(self):
        return iter((self.below, self.at, self.above))


@dataclass(frozen=True)
class CwtsCalibration:
    """Min-deviation threshold and its normalization factor"""
    field_id: str
    x: Fraction
    threshold: int
    raw_share: Fraction

    @property
    def factor(self) -> Fraction:
        return self.x / self.raw_share


@dataclass(frozen=True)
class AuditEntry:
    """Whole-field indicator of one approach against the scheme's target"""
    field_id: str
    approach: ApproachId
    observed: Optional[Fraction]
    target: Fraction
    calibration: Optional[CwtsCalibration] = None

    @property
    def applicable(self) -> bool:
        return self.observed is not None

    @property
    def deviation(self) -> Optional[Fraction]:
        if self.observed is None:
            return None
        return self.observed - self.target

    @property
    def exact_match(self) -> bool:
        return self.observed == self.target


@dataclass(frozen=True)
class Dataset:
    """Validated publication records and where they came from"""
    records: Tuple[PublicationRecord, ...]
    source: str
    declared_groups: FrozenSet[str] = frozenset()

    @property
    def groups(self) -> FrozenSet[str]:
        found = set(self.declared_groups)
        for record in self.records:
            found.update(record.groups)
        return frozenset(found)

    def members(self, group_id: str) -> Tuple[PublicationRecord, ...]:
        return tuple(r for r in self.records if group_id in r.groups)


Cell = Union[Fraction, int, str, None]


@dataclass
class ReportRow:
    """One output row; extras hold the command-specific columns"""
    subject: str
    approach: Optional[str] = None
    scheme: Optional[str] = None
    value: Optional[Fraction] = None
    extras: Dict[str, Cell] = field(default_factory=dict)

    def cell(self, column: str) -> Cell:
        if column in ("subject", "approach", "scheme", "value"):
            return getattr(self, column)
        return self.extras.get(column)
