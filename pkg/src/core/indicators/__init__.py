"""
Percentile-based citation indicators
Exact fractional assignment of tied publications, earlier tie-handling approaches and field audits
"""

from .models import (
    ApproachId, AuditEntry, BandStats, CwtsCalibration, Dataset, Interval,
    PublicationRecord, ReportRow, Score,
)
from .distribution import CitationDistribution, build_distributions
from .scheme import PercentileScheme, expected_value, r6_scheme, top_x_scheme
from .fractional import field_audit, group_indicator, publication_score

__all__ = [
    'ApproachId',
    'AuditEntry',
    'BandStats',
    'CitationDistribution',
    'CwtsCalibration',
    'Dataset',
    'Interval',
    'PercentileScheme',
    'PublicationRecord',
    'ReportRow',
    'Score',
    'build_distributions',
    'expected_value',
    'field_audit',
    'group_indicator',
    'publication_score',
    'r6_scheme',
    'top_x_scheme',
]
