"""
Earlier ways of handling ties at percentile boundaries

Each approach maps a stored citation count of a field to a score:
interval scores for percentile-based approaches (Leydesdorff et al. / NSB,
Pudovkin-Garfield), 0/1 memberships or fractions for top-x% approaches
(Scimago / Rousseau, NSB, Schreiber) and normalized memberships for the
CWTS threshold approach. Random tie orderings are replaced by their
exact closed forms.
"""

import math
from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Union

from src.utils.logger import get_logger
from . import fractional
from .distribution import CitationDistribution, cumulative_below
from .exceptions import ApproachSchemeMismatch, EmptyGroup, InconsistentDataset, UndefinedScore
from .models import ApproachId, AuditEntry, CwtsCalibration, PublicationRecord, exact_fraction
from .scheme import PercentileScheme, expected_value, top_x_scheme

logger = get_logger(__name__)


def _require_defined(dist: CitationDistribution, i: int):
    if dist.count(i) == 0:
        raise UndefinedScore(f"Field {dist.field_id} has no publications with {i} citations")


def _top_share(scheme: PercentileScheme, approach: ApproachId) -> Fraction:
    x = scheme.top_share
    if x is None:
        raise ApproachSchemeMismatch(
            f"Approach {approach.value} is only defined for top-x% schemes, not {scheme.name}"
        )
    return x


def leydesdorff_percentile(dist: CitationDistribution, i: int) -> Fraction:
    """Share of the field with fewer citations than i (q_i, unrounded)."""
    _require_defined(dist, i)
    return cumulative_below(dist, i)


def legacy_interval_score(scheme: PercentileScheme, percentile) -> Fraction:
    """s_k of the interval with p_{k-1} <= percentile < p_k."""
    return scheme.scores[scheme.interval_index(percentile) - 1]


def pudovkin_garfield_percentile(dist: CitationDistribution, i: int) -> Fraction:
    """Mean of the rank percentiles (below + j) / total, j = 1..c_i, of a tied block."""
    _require_defined(dist, i)
    return (dist.count_below(i) + Fraction(dist.count(i) + 1, 2)) / dist.total


def scimago_threshold(dist: CitationDistribution, x) -> int:
    """Largest stored count t with share(>= t) >= x."""
    x = exact_fraction(x, "Top share")
    threshold = dist.citation_counts[0]
    for t in dist.citation_counts:
        if dist.share_at_least(t) >= x:
            threshold = t
    return threshold


def scimago_membership(dist: CitationDistribution, x, i: int) -> int:
    _require_defined(dist, i)
    return int(i >= scimago_threshold(dist, x))


def nsb_threshold(dist: CitationDistribution, x) -> Optional[int]:
    """Smallest stored count t with share(>= t) <= x; None if no count qualifies."""
    x = exact_fraction(x, "Top share")
    for t in dist.citation_counts:
        if dist.share_at_least(t) <= x:
            return t
    return None


def nsb_membership(dist: CitationDistribution, x, i: int) -> int:
    _require_defined(dist, i)
    threshold = nsb_threshold(dist, x)
    return int(threshold is not None and i >= threshold)


def schreiber_fraction(dist: CitationDistribution, x, i: int, inclusive: bool = False) -> Fraction:
    """
    Share of a tied block whose rank percentiles reach 1 - x.

    Ranks are (below + j) / total with j = 0..c_i - 1, or j = 1..c_i when
    the publication itself is counted in the numerator.
    """
    _require_defined(dist, i)
    x = exact_fraction(x, "Top share")
    size = dist.count(i)
    first_rank = 1 if inclusive else 0
    # smallest j with (below + j) / total >= 1 - x
    cutoff = max(math.ceil((1 - x) * dist.total - dist.count_below(i)), first_rank)
    qualifying = min(max(size + first_rank - cutoff, 0), size)
    return Fraction(qualifying, size)


def cwts_calibrate(dist: CitationDistribution, x) -> CwtsCalibration:
    """Threshold minimizing |share(>= t) - x|; exact ties go to the larger threshold."""
    x = exact_fraction(x, "Top share")
    best = None
    best_deviation = None
    for t in dist.citation_counts:
        deviation = abs(dist.share_at_least(t) - x)
        if best_deviation is None or deviation <= best_deviation:
            best, best_deviation = t, deviation
    return CwtsCalibration(dist.field_id, x, best, dist.share_at_least(best))


def cwts_group_indicator(
    members: Sequence[PublicationRecord],
    dist: CitationDistribution,
    calibration: CwtsCalibration,
) -> Fraction:
    if not members:
        raise EmptyGroup("Cannot evaluate a group without publications")
    for record in members:
        if record.field_id != calibration.field_id:
            raise InconsistentDataset(
                f"Publication {record.pub_id} belongs to {record.field_id}, "
                f"calibration is for {calibration.field_id}"
            )
    above = sum(1 for record in members if record.citations >= calibration.threshold)
    return calibration.factor * Fraction(above, len(members))


def approach_scores(
    approach: ApproachId,
    dist: CitationDistribution,
    scheme: PercentileScheme,
) -> Dict[int, Fraction]:
    """Per-publication score of every stored citation count under one approach."""
    counts = dist.citation_counts

    if approach is ApproachId.FRACTIONAL:
        return {i: score.value for i, score in fractional.score_table(dist, scheme).items()}

    if approach in (ApproachId.LEYDESDORFF, ApproachId.NSB):
        return {i: legacy_interval_score(scheme, leydesdorff_percentile(dist, i)) for i in counts}

    if approach is ApproachId.PUDOVKIN_GARFIELD:
        return {i: legacy_interval_score(scheme, pudovkin_garfield_percentile(dist, i)) for i in counts}

    x = _top_share(scheme, approach)

    if approach in (ApproachId.SCIMAGO, ApproachId.ROUSSEAU):
        threshold = scimago_threshold(dist, x)
        return {i: Fraction(int(i >= threshold)) for i in counts}

    if approach in (ApproachId.SCHREIBER, ApproachId.SCHREIBER_INCLUSIVE):
        inclusive = approach is ApproachId.SCHREIBER_INCLUSIVE
        return {i: schreiber_fraction(dist, x, i, inclusive) for i in counts}

    calibration = cwts_calibrate(dist, x)
    return {i: calibration.factor * int(i >= calibration.threshold) for i in counts}


def _as_scheme(x_or_scheme: Union[PercentileScheme, Fraction, str, int]) -> PercentileScheme:
    if isinstance(x_or_scheme, PercentileScheme):
        return x_or_scheme
    return top_x_scheme(x_or_scheme)


def legacy_group_indicator(
    members: Sequence[PublicationRecord],
    dists: Mapping[str, CitationDistribution],
    approach: ApproachId,
    x_or_scheme,
) -> Fraction:
    """Mean per-publication score of the group; every field is calibrated on its own."""
    scheme = _as_scheme(x_or_scheme)
    if not members:
        raise EmptyGroup("Cannot evaluate a group without publications")
    if approach.top_x_only:
        _top_share(scheme, approach)

    tables: Dict[str, Dict[int, Fraction]] = {}
    total = Fraction(0)
    for record in members:
        dist = dists.get(record.field_id)
        if dist is None:
            raise InconsistentDataset(
                f"Publication {record.pub_id}: no distribution for field {record.field_id}"
            )
        if record.field_id not in tables:
            tables[record.field_id] = approach_scores(approach, dist, scheme)
        table = tables[record.field_id]
        if record.citations not in table:
            raise InconsistentDataset(
                f"Publication {record.pub_id}: {record.citations} citations not present in field {record.field_id}"
            )
        total += table[record.citations]
    return total / len(members)


def field_indicator(approach: ApproachId, dist: CitationDistribution, scheme: PercentileScheme) -> Fraction:
    scores = approach_scores(approach, dist, scheme)
    return sum((dist.count(i) * score for i, score in scores.items()), Fraction(0)) / dist.total


def approach_audit(dist: CitationDistribution, scheme: PercentileScheme, approach: ApproachId) -> AuditEntry:
    """Whole-field indicator of any approach against expected_value(scheme)."""
    if approach is ApproachId.FRACTIONAL:
        return fractional.field_audit(dist, scheme)

    target = expected_value(scheme)
    if approach.top_x_only and scheme.top_share is None:
        logger.info(f"Skipping {approach.value} for field {dist.field_id}: scheme {scheme.name} is not top-x%")
        return AuditEntry(dist.field_id, approach, None, target)

    calibration = cwts_calibrate(dist, scheme.top_share) if approach is ApproachId.CWTS else None
    return AuditEntry(dist.field_id, approach, field_indicator(approach, dist, scheme), target, calibration)
