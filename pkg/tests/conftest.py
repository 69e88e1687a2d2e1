"""
Shared fixtures: the 105-publication example field and its perturbations
"""

import logging
from fractions import Fraction
from pathlib import Path

import pytest

from src.core.indicators.distribution import CitationDistribution
from src.core.indicators.models import PublicationRecord
from src.core.indicators.scheme import r6_scheme, top_x_scheme

FIXTURES = Path(__file__).parent / "fixtures"


def make_group(field_id, histogram, prefix="g"):
    """Publications of a research group from {citations: n_i}"""
    records = []
    for citations, n in sorted(histogram.items()):
        for k in range(n):
            records.append(PublicationRecord(f"{prefix}-{citations}-{k}", field_id, citations))
    return records


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def main_field():
    """90 uncited, 10 with 10 citations, 5 with 20"""
    return CitationDistribution("math", {0: 90, 10: 10, 20: 5})


@pytest.fixture
def tie_field():
    """94 uncited, 1 with 10 citations, 10 with 20"""
    return CitationDistribution("econ", {0: 94, 10: 1, 20: 10})


@pytest.fixture
def nine_field():
    """Main field after one publication drops from 10 to 9 citations"""
    return CitationDistribution("math", {0: 90, 9: 1, 10: 9, 20: 5})


@pytest.fixture
def eleven_field():
    """Main field after two publications rise from 10 to 11 citations"""
    return CitationDistribution("math", {0: 90, 10: 8, 11: 2, 20: 5})


@pytest.fixture
def singleton_field():
    return CitationDistribution("solo", {0: 1})


@pytest.fixture
def top10():
    return top_x_scheme(Fraction(1, 10))


@pytest.fixture
def r6():
    return r6_scheme()


@pytest.fixture
def top_group():
    """9 uncited publications and 1 with 20 citations"""
    return make_group("math", {0: 9, 20: 1}, prefix="top")


@pytest.fixture
def tie_group():
    """9 uncited publications and 1 with 10 citations"""
    return make_group("math", {0: 9, 10: 1}, prefix="tie")


@pytest.fixture(autouse=True)
def propagate_pbi_logs(monkeypatch):
    """Let caplog see records of the PBI logger, which does not propagate by default"""
    monkeypatch.setattr(logging.getLogger("PBI"), "propagate", True)
