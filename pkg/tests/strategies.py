"""
Hypothesis strategies for citation distributions and percentile schemes
"""

from fractions import Fraction

from hypothesis import strategies as st

from src.core.indicators.distribution import CitationDistribution
from src.core.indicators.scheme import PercentileScheme


@st.composite
def distributions(draw, max_counts=50, max_block=500, max_citations=10_000):
    counts = draw(st.dictionaries(
        st.integers(min_value=0, max_value=max_citations),
        st.integers(min_value=1, max_value=max_block),
        min_size=1,
        max_size=max_counts,
    ))
    return CitationDistribution("field", counts)


@st.composite
def small_distributions(draw, max_total=12, max_block=6):
    """Totals small enough to enumerate every ordering of a tied block"""
    counts = {}
    total = 0
    for i in draw(st.lists(st.integers(min_value=0, max_value=30), min_size=1, max_size=6, unique=True)):
        room = min(max_block, max_total - total)
        if room < 1:
            break
        c = draw(st.integers(min_value=1, max_value=room))
        counts[i] = c
        total += c
    return CitationDistribution("small", counts)


@st.composite
def schemes(draw, min_intervals=2, max_intervals=8, denominator=1000):
    n = draw(st.integers(min_value=min_intervals, max_value=max_intervals))
    inner = draw(st.sets(st.integers(min_value=1, max_value=denominator - 1), min_size=n - 1, max_size=n - 1))
    boundaries = [Fraction(0)] + [Fraction(b, denominator) for b in sorted(inner)] + [Fraction(1)]
    raw_scores = draw(st.sets(st.integers(min_value=-50, max_value=50), min_size=n, max_size=n))
    scale = draw(st.integers(min_value=1, max_value=7))
    scores = [Fraction(s, scale) for s in sorted(raw_scores)]
    return PercentileScheme("random", tuple(boundaries), tuple(scores))


top_shares = st.integers(min_value=1, max_value=99).map(lambda pct: Fraction(pct, 100))
