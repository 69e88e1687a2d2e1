"""
Fractional assignment of tied publications to percentile intervals

A block of c_i publications with i citations occupies the segment
[q_i, q_{i+1}] of its field. Each publication is assigned to interval k
with fraction O_ik / (q_{i+1} - q_i), where O_ik is the overlap of the
segment with [p_{k-1}, p_k]. Averaged over a whole field this yields
exactly sum_k (p_k - p_{k-1}) s_k, whatever the citation distribution.
"""

from fractions import Fraction
from typing import Dict, Mapping, Sequence

from src.utils.logger import get_logger
from .distribution import CitationDistribution, group_histogram, segment
from .exceptions import EmptyGroup, InconsistentDataset, UndefinedScore
from .models import ApproachId, AuditEntry, Interval, PublicationRecord, Score
from .scheme import PercentileScheme, expected_value

logger = get_logger(__name__)


def interval_overlap(a: Interval, b: Interval) -> Fraction:
    """Length of the intersection of two closed intervals; 0 when they only touch."""
    return max(min(a.upper, b.upper) - max(a.lower, b.lower), Fraction(0))


def publication_score(dist: CitationDistribution, scheme: PercentileScheme, i: int) -> Score:
    if dist.count(i) == 0:
        raise UndefinedScore(f"S_{i} is undefined: field {dist.field_id} has no publications with {i} citations")

    seg = segment(dist, i)
    breakdown = tuple(interval_overlap(interval, seg) / seg.length for interval in scheme.intervals())
    value = sum((f * s for f, s in zip(breakdown, scheme.scores)), Fraction(0))
    return Score(dist.field_id, i, value, breakdown)


def score_table(dist: CitationDistribution, scheme: PercentileScheme) -> Dict[int, Score]:
    """S_i for every citation count present in the field"""
    return {i: publication_score(dist, scheme, i) for i in dist.citation_counts}


def group_indicator(
    members: Sequence[PublicationRecord],
    dists: Mapping[str, CitationDistribution],
    scheme: PercentileScheme,
) -> Fraction:
    """Average S_i over the group, each publication scored within its own field."""
    if not members:
        raise EmptyGroup("Cannot evaluate a group without publications")

    total = Fraction(0)
    for field_id, histogram in sorted(group_histogram(members).items()):
        dist = dists.get(field_id)
        if dist is None:
            raise InconsistentDataset(f"Group has publications in field {field_id}, which has no distribution")
        absent = sorted(i for i in histogram if dist.count(i) == 0)
        if absent:
            raise InconsistentDataset(
                f"Group has publications with {absent[0]} citations, a count not present in field {field_id}"
            )
        table = score_table(dist, scheme)
        total += sum((n * table[i].value for i, n in histogram.items()), Fraction(0))
    return total / len(members)


def field_indicator(dist: CitationDistribution, scheme: PercentileScheme) -> Fraction:
    """Group indicator of the field taken as a whole (n_i = c_i)"""
    weighted = sum(
        (dist.count(i) * score.value for i, score in score_table(dist, scheme).items()),
        Fraction(0),
    )
    return weighted / dist.total


def field_audit(dist: CitationDistribution, scheme: PercentileScheme) -> AuditEntry:
    entry = AuditEntry(
        field_id=dist.field_id,
        approach=ApproachId.FRACTIONAL,
        observed=field_indicator(dist, scheme),
        target=expected_value(scheme),
    )
    if not entry.exact_match:
        logger.error(f"Field {dist.field_id}: whole-field indicator {entry.observed} != {entry.target}")
    return entry
