from decimal import Decimal
from fractions import Fraction


class RationalFormatter:
    @staticmethod
    def decimal(value: Fraction, precision: int) -> str:
        """Render value with `precision` decimals, rounding half to even."""
        if precision < 0:
            raise ValueError(f"Precision must be non-negative, got {precision}")
        # round() on a Fraction is exact and rounds half to even
        scaled = round(Fraction(value) * 10 ** precision)
        return format(Decimal(scaled).scaleb(-precision), "f")

    @staticmethod
    def exact(value: Fraction) -> str:
        value = Fraction(value)
        return f"{value.numerator}/{value.denominator}"

    @classmethod
    def percent(cls, value: Fraction, precision: int) -> str:
        """value x 100, e.g. 1/10 -> "10.00" at precision 4"""
        return cls.decimal(Fraction(value) * 100, max(precision - 2, 1))

    @classmethod
    def percentile_display(cls, value: Fraction, decimals: int = 0) -> str:
        """100 q as shown to readers: 90/105 -> "86" (0 decimals), 95.5/105 -> "91.0" (1 decimal)"""
        return cls.decimal(Fraction(value) * 100, decimals)
