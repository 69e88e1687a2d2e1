"""
Percentile-interval schemes: boundaries p_0..p_N and scores s_1..s_N
"""

from bisect import bisect_right
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Optional, Tuple

from .exceptions import InvalidScheme, ValidationError
from .models import Interval, exact_fraction

R6_BOUNDARIES = ("0", "0.50", "0.75", "0.90", "0.95", "0.99", "1.00")
R6_SCORES = ("1", "2", "3", "4", "5", "6")


@dataclass(frozen=True)
class PercentileScheme:
    name: str
    boundaries: Tuple[Fraction, ...]
    scores: Tuple[Fraction, ...]

    def __post_init__(self):
        # Construction only normalizes; use validate() for the invariants
        boundaries = tuple(exact_fraction(p, "Scheme boundary", InvalidScheme) for p in self.boundaries)
        scores = tuple(exact_fraction(s, "Scheme score", InvalidScheme) for s in self.scores)
        object.__setattr__(self, "boundaries", boundaries)
        object.__setattr__(self, "scores", scores)

    @property
    def n_intervals(self) -> int:
        return len(self.boundaries) - 1

    def intervals(self) -> Tuple[Interval, ...]:
        return tuple(
            Interval(lower, upper)
            for lower, upper in zip(self.boundaries, self.boundaries[1:])
        )

    @property
    def top_share(self) -> Optional[Fraction]:
        """x for a top-x% scheme, None for any other scheme"""
        if self.n_intervals == 2 and self.scores == (0, 1):
            return 1 - self.boundaries[1]
        return None

    def interval_index(self, percentile: Fraction) -> int:
        """1-based k with p_{k-1} <= percentile < p_k; the top interval is closed above."""
        percentile = exact_fraction(percentile, "Percentile")
        if not 0 <= percentile <= 1:
            raise ValidationError(f"Percentile {percentile} outside [0, 1]")
        return min(bisect_right(self.boundaries, percentile), self.n_intervals)


def validate(scheme: PercentileScheme, strict_scores: bool = True) -> bool:
    """Raise InvalidScheme naming the first violated invariant."""
    p, s = scheme.boundaries, scheme.scores
    if len(p) < 3:
        raise InvalidScheme(f"Scheme {scheme.name}: at least two intervals are required (N >= 2)")
    if len(s) != len(p) - 1:
        raise InvalidScheme(
            f"Scheme {scheme.name}: {len(p) - 1} intervals but {len(s)} scores"
        )
    if p[0] != 0:
        raise InvalidScheme(f"Scheme {scheme.name}: first boundary must be 0, got {p[0]}")
    if p[-1] != 1:
        raise InvalidScheme(f"Scheme {scheme.name}: last boundary must be 1, got {p[-1]}")
    for k in range(1, len(p)):
        if p[k] <= p[k - 1]:
            raise InvalidScheme(
                f"Scheme {scheme.name}: boundaries not strictly increasing at p_{k} = {p[k]}"
            )
    if strict_scores:
        for k in range(1, len(s)):
            if s[k] <= s[k - 1]:
                raise InvalidScheme(
                    f"Scheme {scheme.name}: scores not strictly increasing at s_{k + 1} = {s[k]}"
                )
    return True


def make_scheme(name: str, boundaries: Iterable, scores: Iterable) -> PercentileScheme:
    scheme = PercentileScheme(name, tuple(boundaries), tuple(scores))
    validate(scheme)
    return scheme


def _percent_label(x: Fraction) -> str:
    pct = x * 100
    if pct.denominator == 1:
        return str(pct.numerator)
    return format(Decimal(pct.numerator) / Decimal(pct.denominator), "f").rstrip("0")


def top_x_scheme(x, name: Optional[str] = None) -> PercentileScheme:
    """PP_top x%: boundaries (0, 1 - x, 1), scores (0, 1)."""
    x = exact_fraction(x, "Top share", InvalidScheme)
    if not 0 < x < 1:
        raise InvalidScheme(f"Top share must lie strictly between 0 and 1, got {x}")
    return make_scheme(name or f"top{_percent_label(x)}", (0, 1 - x, 1), (0, 1))


def r6_scheme() -> PercentileScheme:
    return make_scheme("r6", (Fraction(b) for b in R6_BOUNDARIES), (Fraction(s) for s in R6_SCORES))


def expected_value(scheme: PercentileScheme) -> Fraction:
    """sum_k (p_k - p_{k-1}) * s_k; what every field scores as a whole."""
    return sum(
        (interval.length * score for interval, score in zip(scheme.intervals(), scheme.scores)),
        Fraction(0),
    )
