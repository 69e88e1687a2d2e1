"""
Report assembly for scoring, group evaluation, field audits and thresholds
"""

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.core.reporting.formatter import RationalFormatter
from src.core.reporting.layout import INTEGER, PERCENT, RATIONAL, TEXT, ReportLayout
from src.utils.logger import get_logger
from . import fractional, legacy
from .distribution import CitationDistribution, band_stats, build_distributions, percentile_threshold
from .exceptions import EmptyGroup
from .models import ApproachId, AuditEntry, Dataset, PublicationRecord, ReportRow
from .scheme import PercentileScheme

logger = get_logger(__name__)

NOT_APPLICABLE = "not applicable"


def ordered_approaches(approaches: Iterable[ApproachId]) -> Tuple[ApproachId, ...]:
    return tuple(sorted(set(approaches), key=lambda a: a.rank))


def _row_key(row: ReportRow):
    approach_rank = ApproachId(row.approach).rank if row.approach else -1
    return (row.subject, approach_rank)


class IndicatorService:
    """Evaluates a dataset under one scheme and a selection of approaches"""

    def __init__(
        self,
        dataset: Dataset,
        scheme: PercentileScheme,
        approaches: Sequence[ApproachId] = (ApproachId.FRACTIONAL,),
        workers: int = 1,
    ):
        self.dataset = dataset
        self.scheme = scheme
        self.approaches = ordered_approaches(approaches)
        self.workers = max(1, workers)
        self.distributions: Dict[str, CitationDistribution] = build_distributions(dataset.records)
        self._tables: Dict[Tuple[ApproachId, str], Optional[Dict[int, Fraction]]] = {}
        logger.info(
            f"Loaded {len(dataset.records)} publications in {len(self.distributions)} fields "
            f"from {dataset.source}"
        )

    @property
    def is_share_scheme(self) -> bool:
        return self.scheme.top_share is not None

    def _applicable(self, approach: ApproachId) -> bool:
        return not (approach.top_x_only and not self.is_share_scheme)

    def _scores(self, approach: ApproachId, field_id: str) -> Optional[Dict[int, Fraction]]:
        key = (approach, field_id)
        if key not in self._tables:
            if self._applicable(approach):
                self._tables[key] = legacy.approach_scores(approach, self.distributions[field_id], self.scheme)
            else:
                self._tables[key] = None
        return self._tables[key]

    def _value_columns(self) -> List[Tuple[str, str]]:
        columns = [("value", RATIONAL)]
        if self.is_share_scheme:
            columns.append(("value_pct", PERCENT))
        return columns

    def _with_pct(self, extras: Dict, value: Optional[Fraction]) -> Dict:
        if self.is_share_scheme:
            extras["value_pct"] = value
        return extras

    def score_rows(self) -> Tuple[ReportLayout, List[ReportRow]]:
        """One row per publication and approach; fractional rows carry their interval fractions."""
        n = self.scheme.n_intervals
        layout = ReportLayout(tuple(
            [("subject", TEXT), ("field", TEXT), ("citations", INTEGER), ("approach", TEXT), ("scheme", TEXT)]
            + self._value_columns()
            + [("percentile", RATIONAL), ("percentile_display", TEXT)]
            + [(f"interval_{k}", RATIONAL) for k in range(1, n + 1)]
            + [("note", TEXT)]
        ))

        breakdowns: Dict[str, Dict] = {}
        rows = []
        for record in self.dataset.records:
            dist = self.distributions[record.field_id]
            for approach in self.approaches:
                extras = {"field": record.field_id, "citations": record.citations}
                table = self._scores(approach, record.field_id)
                if table is None:
                    extras["note"] = NOT_APPLICABLE
                    rows.append(ReportRow(record.pub_id, approach.value, self.scheme.name, None, extras))
                    continue

                value = table[record.citations]
                self._with_pct(extras, value)
                if approach is ApproachId.FRACTIONAL:
                    if record.field_id not in breakdowns:
                        breakdowns[record.field_id] = fractional.score_table(dist, self.scheme)
                    score = breakdowns[record.field_id][record.citations]
                    for k, share in enumerate(score.breakdown, start=1):
                        extras[f"interval_{k}"] = share
                elif approach in (ApproachId.LEYDESDORFF, ApproachId.NSB):
                    percentile = legacy.leydesdorff_percentile(dist, record.citations)
                    extras["percentile"] = percentile
                    extras["percentile_display"] = RationalFormatter.percentile_display(percentile, 0)
                elif approach is ApproachId.PUDOVKIN_GARFIELD:
                    percentile = legacy.pudovkin_garfield_percentile(dist, record.citations)
                    extras["percentile"] = percentile
                    extras["percentile_display"] = RationalFormatter.percentile_display(percentile, 1)
                rows.append(ReportRow(record.pub_id, approach.value, self.scheme.name, value, extras))

        rows.sort(key=_row_key)
        return layout, rows

    def evaluate_rows(self) -> Tuple[ReportLayout, List[ReportRow]]:
        """One row per group and approach: the average score of the group's publications."""
        layout = ReportLayout(tuple(
            [("subject", TEXT), ("approach", TEXT), ("scheme", TEXT)]
            + self._value_columns()
            + [("n_publications", INTEGER), ("threshold", INTEGER), ("raw_share", RATIONAL),
               ("factor", RATIONAL), ("note", TEXT)]
        ))

        rows = []
        for group_id in sorted(self.dataset.groups):
            members = self.dataset.members(group_id)
            if not members:
                logger.warning(f"Group {group_id} has no publications in the dataset; omitted")
                continue
            fields = {record.field_id for record in members}
            for approach in self.approaches:
                extras = {"n_publications": len(members)}
                if not self._applicable(approach):
                    extras["note"] = NOT_APPLICABLE
                    rows.append(ReportRow(group_id, approach.value, self.scheme.name, None, extras))
                    continue

                value = self._group_value(members, approach)
                self._with_pct(extras, value)
                if approach is ApproachId.CWTS and len(fields) == 1:
                    calibration = legacy.cwts_calibrate(self.distributions[next(iter(fields))], self.scheme.top_share)
                    extras.update(
                        threshold=calibration.threshold,
                        raw_share=calibration.raw_share,
                        factor=calibration.factor,
                    )
                rows.append(ReportRow(group_id, approach.value, self.scheme.name, value, extras))

        rows.sort(key=_row_key)
        return layout, rows

    def _group_value(self, members: Sequence[PublicationRecord], approach: ApproachId) -> Fraction:
        if not members:
            raise EmptyGroup("Cannot evaluate a group without publications")
        total = Fraction(0)
        for record in members:
            total += self._scores(approach, record.field_id)[record.citations]
        return total / len(members)

    def audit_rows(self) -> Tuple[ReportLayout, List[ReportRow]]:
        """One row per field and approach: whole-field indicator against the scheme target."""
        layout = ReportLayout(tuple(
            [("subject", TEXT), ("approach", TEXT), ("scheme", TEXT)]
            + self._value_columns()
            + [("target", RATIONAL), ("deviation", RATIONAL), ("exact_match", TEXT),
               ("n_publications", INTEGER), ("threshold", INTEGER), ("raw_share", RATIONAL),
               ("factor", RATIONAL), ("note", TEXT)]
        ))

        field_ids = sorted(self.distributions)
        if self.workers > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                audits = list(pool.map(self._audit_field, field_ids))
        else:
            audits = [self._audit_field(field_id) for field_id in field_ids]

        rows = []
        for entries in audits:
            for entry in entries:
                rows.append(self._audit_row(entry))
        rows.sort(key=_row_key)
        return layout, rows

    def _audit_field(self, field_id: str) -> List[AuditEntry]:
        dist = self.distributions[field_id]
        return [legacy.approach_audit(dist, self.scheme, approach) for approach in self.approaches]

    def _audit_row(self, entry: AuditEntry) -> ReportRow:
        extras = {
            "target": entry.target,
            "n_publications": self.distributions[entry.field_id].total,
        }
        if not entry.applicable:
            extras["note"] = NOT_APPLICABLE
            return ReportRow(entry.field_id, entry.approach.value, self.scheme.name, None, extras)

        self._with_pct(extras, entry.observed)
        extras["deviation"] = entry.deviation
        extras["exact_match"] = "true" if entry.exact_match else "false"
        if entry.calibration is not None:
            extras.update(
                threshold=entry.calibration.threshold,
                raw_share=entry.calibration.raw_share,
                factor=entry.calibration.factor,
            )
        return ReportRow(entry.field_id, entry.approach.value, self.scheme.name, entry.observed, extras)

    def threshold_rows(self, p: Fraction) -> Tuple[ReportLayout, List[ReportRow]]:
        """Percentile threshold, below/at/above shares and the CWTS threshold per field."""
        layout = ReportLayout((
            ("subject", TEXT), ("percentile", RATIONAL), ("threshold", INTEGER),
            ("share_below", PERCENT), ("share_at", PERCENT), ("share_above", PERCENT),
            ("cwts_threshold", INTEGER), ("cwts_raw_share", RATIONAL), ("n_publications", INTEGER),
        ))

        rows = []
        for field_id in sorted(self.distributions):
            dist = self.distributions[field_id]
            threshold = percentile_threshold(dist, p)
            bands = band_stats(dist, threshold)
            calibration = legacy.cwts_calibrate(dist, 1 - p)
            rows.append(ReportRow(field_id, extras={
                "percentile": p,
                "threshold": threshold,
                "share_below": bands.below,
                "share_at": bands.at,
                "share_above": bands.above,
                "cwts_threshold": calibration.threshold,
                "cwts_raw_share": calibration.raw_share,
                "n_publications": dist.total,
            }))
        return layout, rows
