from dataclasses import dataclass
from typing import Tuple

# Column kinds understood by the report writer
TEXT = "text"
INTEGER = "integer"
RATIONAL = "rational"
PERCENT = "percent"


@dataclass(frozen=True)
class ReportLayout:
    columns: Tuple[Tuple[str, str], ...]
