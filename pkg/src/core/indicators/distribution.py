"""
Per-field citation distributions

A distribution stores c_i sparsely and answers cumulative questions
(q_i, shares at or above a count, percentile thresholds) with exact
Fractions.
"""

from bisect import bisect_left
from collections import Counter
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from src.utils.logger import get_logger
from .exceptions import DuplicatePublication, EmptyDataset, UndefinedSegment, ValidationError
from .models import BandStats, Interval, PublicationRecord, exact_fraction

logger = get_logger(__name__)


class CitationDistribution:
    """Histogram of citation counts for one field. Immutable."""

    __slots__ = ("_field_id", "_counts", "_keys", "_below", "_total")

    def __init__(self, field_id: str, counts: Mapping[int, int]):
        cleaned: Dict[int, int] = {}
        for i, c in counts.items():
            if isinstance(i, bool) or not isinstance(i, int) or i < 0:
                raise ValidationError(f"Field {field_id}: citation count {i!r} is not a non-negative integer")
            if isinstance(c, bool) or not isinstance(c, int) or c < 0:
                raise ValidationError(f"Field {field_id}: publication count {c!r} for {i} citations is invalid")
            if c:
                cleaned[i] = c
        if not cleaned:
            raise EmptyDataset(f"Field {field_id} has no publications")

        keys = tuple(sorted(cleaned))
        below = [0]
        for i in keys:
            below.append(below[-1] + cleaned[i])

        self._field_id = field_id
        self._counts = cleaned
        self._keys = keys
        self._below = tuple(below)
        self._total = below[-1]

    @classmethod
    def from_citations(cls, field_id: str, citations: Iterable[int]) -> "CitationDistribution":
        return cls(field_id, Counter(citations))

    @property
    def field_id(self) -> str:
        return self._field_id

    @property
    def counts(self) -> Mapping[int, int]:
        return MappingProxyType(self._counts)

    @property
    def total(self) -> int:
        return self._total

    @property
    def citation_counts(self) -> Tuple[int, ...]:
        return self._keys

    @property
    def max_citations(self) -> int:
        return self._keys[-1]

    def count(self, i: int) -> int:
        return self._counts.get(i, 0)

    def count_below(self, i: int) -> int:
        """Number of publications with fewer than i citations"""
        return self._below[bisect_left(self._keys, i)]

    def count_at_least(self, i: int) -> int:
        return self._total - self.count_below(i)

    def share_at_least(self, i: int) -> Fraction:
        return Fraction(self.count_at_least(i), self._total)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CitationDistribution):
            return NotImplemented
        return self._field_id == other._field_id and self._counts == other._counts

    def __hash__(self) -> int:
        return hash((self._field_id, tuple(sorted(self._counts.items()))))

    def __repr__(self) -> str:
        return f"CitationDistribution({self._field_id!r}, {dict(sorted(self._counts.items()))!r})"


def build_distributions(records: Sequence[PublicationRecord]) -> Dict[str, CitationDistribution]:
    """Group records by field and count publications per citation count."""
    if not records:
        raise EmptyDataset("No publication records supplied")

    seen = set()
    histograms: Dict[str, Counter] = {}
    for record in records:
        if record.pub_id in seen:
            raise DuplicatePublication(record.pub_id)
        seen.add(record.pub_id)
        histograms.setdefault(record.field_id, Counter())[record.citations] += 1

    distributions = {
        field_id: CitationDistribution(field_id, histogram)
        for field_id, histogram in histograms.items()
    }
    logger.debug(f"Built {len(distributions)} distributions from {len(records)} records")
    return distributions


def group_histogram(members: Iterable[PublicationRecord]) -> Dict[str, Counter]:
    """n_i of a group, keyed by field then citation count"""
    histogram: Dict[str, Counter] = {}
    for record in members:
        histogram.setdefault(record.field_id, Counter())[record.citations] += 1
    return histogram


def cumulative_below(dist: CitationDistribution, i: int) -> Fraction:
    """q_i: proportion of the field with fewer than i citations."""
    return Fraction(dist.count_below(i), dist.total)


def segment(dist: CitationDistribution, i: int) -> Interval:
    """[q_i, q_{i+1}], the slice of the field taken by publications with i citations."""
    c = dist.count(i)
    if c == 0:
        raise UndefinedSegment(f"Field {dist.field_id} has no publications with {i} citations")
    below = dist.count_below(i)
    return Interval(Fraction(below, dist.total), Fraction(below + c, dist.total))


def percentile_threshold(dist: CitationDistribution, p) -> int:
    """
    Smallest stored citation count t whose cumulative share (<= t) reaches p.

    With 9 uncited publications and 1 publication with 10 citations this
    gives 0 for p = 0.9; the threshold is always an attained count.
    """
    p = exact_fraction(p, "Percentile")
    if not 0 < p < 1:
        raise ValidationError(f"Percentile must lie strictly between 0 and 1, got {p}")
    # _below[j] is the number of publications with at most keys[j - 1] citations
    j = bisect_left(dist._below, p * dist.total, 1)
    return dist._keys[j - 1]


def band_stats(dist: CitationDistribution, t: int) -> BandStats:
    below = dist.count_below(t)
    at = dist.count(t)
    above = dist.total - below - at
    return BandStats(
        Fraction(below, dist.total),
        Fraction(at, dist.total),
        Fraction(above, dist.total),
    )


def reassign(dist: CitationDistribution, from_i: int, to_i: int, n: int = 1) -> CitationDistribution:
    """Copy of dist in which n publications with from_i citations now have to_i."""
    if n < 0 or to_i < 0:
        raise ValidationError("Reassignment needs a non-negative count and target")
    if dist.count(from_i) < n:
        raise ValidationError(
            f"Field {dist.field_id} has only {dist.count(from_i)} publications with {from_i} citations"
        )
    counts = Counter(dist.counts)
    counts[from_i] -= n
    counts[to_i] += n
    return CitationDistribution(dist.field_id, counts)
