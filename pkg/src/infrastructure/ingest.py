"""
Parsing of publication datasets, group memberships and scheme files
"""

import io
import json
import re
from pathlib import Path
from typing import BinaryIO, Dict, Iterable, List, Set, Tuple, Union

import pandas as pd

from config.settings import settings
from src.core.indicators.exceptions import (
    DuplicatePublication, EmptyDataset, ParseError, ValidationError,
)
from src.core.indicators.models import Dataset, PublicationRecord
from src.core.indicators.scheme import PercentileScheme, make_scheme
from src.core.reporting.formatter import RationalFormatter
from src.utils.logger import get_logger
from src.utils.validator import InputValidator

logger = get_logger(__name__)

PUBLICATION_COLUMNS = ("pub_id", "field_id", "citations", "groups")
REQUIRED_COLUMNS = ("pub_id", "field_id", "citations")
MEMBERSHIP_COLUMNS = ("pub_id", "group_id")
GROUP_SEPARATOR = ";"

Source = Union[bytes, BinaryIO]


def _read_bytes(stream: Source) -> bytes:
    if isinstance(stream, (bytes, bytearray)):
        return bytes(stream)
    return stream.read()


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as e:
        raise ParseError(f"Input is not valid UTF-8: {e}")


def _read_csv_frame(text: str, required: Iterable[str], known: Iterable[str]) -> pd.DataFrame:
    """Data rows indexed by their physical line number; blank lines are dropped."""
    if not text.strip():
        raise EmptyDataset("Input contains no rows")
    header = next(number for number, line in enumerate(text.splitlines()) if line.strip())
    try:
        frame = pd.read_csv(
            io.StringIO(text),
            dtype=str,
            keep_default_na=False,
            skipinitialspace=True,
            skip_blank_lines=False,
            skiprows=header,
        )
    except pd.errors.EmptyDataError:
        raise EmptyDataset("Input contains no rows")
    except pd.errors.ParserError as e:
        # the C tokenizer reports e.g. "Expected 3 fields in line 3, saw 5"
        match = re.search(r"line (\d+)", str(e))
        raise ParseError(f"Malformed CSV: {e}", line=int(match.group(1)) if match else None)

    frame.columns = [str(column).strip() for column in frame.columns]
    missing = [column for column in required if column not in frame.columns]
    if missing:
        raise ParseError(f"Missing required column(s): {', '.join(missing)}", line=header + 1)
    unknown = [column for column in frame.columns if column not in known]
    if unknown:
        logger.warning(f"Ignoring unknown column(s): {', '.join(unknown)}")

    frame.index = range(header + 2, header + 2 + len(frame))
    blank = frame.fillna("").astype(str).apply(lambda column: column.str.strip() == "").all(axis=1)
    return frame[~blank]


def _split_groups(raw) -> frozenset:
    if raw is None:
        return frozenset()
    if isinstance(raw, str):
        parts = raw.split(GROUP_SEPARATOR)
    elif isinstance(raw, list):
        parts = raw
    else:
        raise ValidationError(f"Groups must be a list or a '{GROUP_SEPARATOR}'-separated string")
    return frozenset(str(part).strip() for part in parts if str(part).strip())


def _clean(value):
    # short CSV rows come back from pandas as NaN
    if isinstance(value, (list, str, int)) or value is None:
        return value
    return None if pd.isna(value) else value


def _make_record(raw: Dict, line: int) -> PublicationRecord:
    raw = {key: _clean(value) for key, value in raw.items()}
    try:
        pub_id = InputValidator.parse_identifier(raw.get("pub_id"), "pub_id")
        field_id = InputValidator.parse_identifier(raw.get("field_id"), "field_id")
    except ValidationError as e:
        raise ParseError(str(e), line=line)
    citations_raw = raw.get("citations")
    if citations_raw is None or (isinstance(citations_raw, str) and not citations_raw.strip()):
        raise ParseError("Missing citations", line=line)
    try:
        citations = InputValidator.parse_citations(citations_raw)
        groups = _split_groups(raw.get("groups"))
    except ValidationError as e:
        raise ValidationError(f"line {line}: {e}")
    return PublicationRecord(pub_id, field_id, citations, groups)


def _validated_dataset(records: List[Tuple[PublicationRecord, int]], source: str) -> Dataset:
    if not records:
        raise EmptyDataset(f"No publication records in {source}")
    seen = set()
    for record, line in records:
        if record.pub_id in seen:
            raise DuplicatePublication(record.pub_id, line)
        seen.add(record.pub_id)
    return Dataset(tuple(record for record, _ in records), source)


def _parse_publications_csv(text: str) -> List[Tuple[PublicationRecord, int]]:
    frame = _read_csv_frame(text, REQUIRED_COLUMNS, PUBLICATION_COLUMNS)
    records = []
    for line, row in frame.to_dict(orient="index").items():
        records.append((_make_record(row, line), line))
    return records


def _parse_publications_jsonl(text: str) -> List[Tuple[PublicationRecord, int]]:
    records = []
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise ParseError(f"Invalid JSON: {e.msg}", line=number)
        if not isinstance(obj, dict):
            raise ParseError("Expected a JSON object", line=number)
        unknown = sorted(set(obj) - set(PUBLICATION_COLUMNS))
        if unknown:
            logger.warning(f"Line {number}: ignoring unknown key(s): {', '.join(unknown)}")
        records.append((_make_record(obj, number), number))
    return records


def parse_publications(stream: Source, fmt: str = "csv", source: str = "<stream>") -> Dataset:
    """Read a publications CSV (header required) or JSON Lines stream."""
    if fmt not in settings.INPUT_FORMATS:
        raise ValueError(f"Unsupported publications format: {fmt}")
    text = _decode(_read_bytes(stream))
    records = _parse_publications_csv(text) if fmt == "csv" else _parse_publications_jsonl(text)
    dataset = _validated_dataset(records, source)
    logger.info(f"Parsed {len(dataset.records)} publications from {source}")
    return dataset


def parse_memberships(stream: Source) -> Dict[str, Set[str]]:
    """pub_id,group_id rows into pub_id -> group ids"""
    frame = _read_csv_frame(_decode(_read_bytes(stream)), MEMBERSHIP_COLUMNS, MEMBERSHIP_COLUMNS)
    memberships: Dict[str, Set[str]] = {}
    for line, row in frame.to_dict(orient="index").items():
        try:
            pub_id = InputValidator.parse_identifier(_clean(row["pub_id"]), "pub_id")
            group_id = InputValidator.parse_identifier(_clean(row["group_id"]), "group_id")
        except ValidationError as e:
            raise ParseError(str(e), line=line)
        memberships.setdefault(pub_id, set()).add(group_id)
    return memberships


def merge_memberships(dataset: Dataset, memberships: Dict[str, Set[str]]) -> Dataset:
    """Union membership rows into the records; groups stay declared even without known publications."""
    known = {record.pub_id for record in dataset.records}
    for pub_id in sorted(set(memberships) - known):
        logger.warning(f"Membership for unknown publication {pub_id} ignored")

    declared = set(dataset.declared_groups)
    for groups in memberships.values():
        declared.update(groups)

    records = tuple(
        PublicationRecord(r.pub_id, r.field_id, r.citations, r.groups | frozenset(memberships.get(r.pub_id, ())))
        for r in dataset.records
    )
    return Dataset(records, dataset.source, frozenset(declared))


def detect_format(path: Union[str, Path]) -> str:
    return "jsonl" if Path(path).suffix.lower() in (".jsonl", ".ndjson") else "csv"


def load_publications(path: Union[str, Path]) -> Dataset:
    with open(path, "rb") as f:
        return parse_publications(f, detect_format(path), source=str(path))


def load_datasets(paths: Iterable[Union[str, Path]]) -> Dataset:
    """Merge several publication files; pub_ids must be unique across all of them."""
    datasets = [load_publications(path) for path in paths]
    if not datasets:
        raise EmptyDataset("No input files given")
    seen = set()
    records = []
    for dataset in datasets:
        for record in dataset.records:
            if record.pub_id in seen:
                raise DuplicatePublication(record.pub_id)
            seen.add(record.pub_id)
            records.append(record)
    declared = frozenset().union(*(d.declared_groups for d in datasets))
    return Dataset(tuple(records), ", ".join(d.source for d in datasets), declared)


def parse_scheme_file(stream: Source) -> PercentileScheme:
    """JSON object with name, boundaries and scores given as exact-rational strings."""
    text = _decode(_read_bytes(stream))
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid scheme JSON: {e.msg}", line=e.lineno)
    return scheme_from_dict(obj)


def scheme_from_dict(obj) -> PercentileScheme:
    if not isinstance(obj, dict):
        raise ParseError("Scheme definition must be a JSON object")
    for key in ("name", "boundaries", "scores"):
        if key not in obj:
            raise ParseError(f"Scheme definition is missing '{key}'")
    if not isinstance(obj["boundaries"], list) or not isinstance(obj["scores"], list):
        raise ParseError("Scheme boundaries and scores must be arrays")
    try:
        boundaries = [_parse_scheme_value(value) for value in obj["boundaries"]]
        scores = [_parse_scheme_value(value) for value in obj["scores"]]
    except ValidationError as e:
        raise ParseError(f"Scheme {obj['name']}: {e}")
    return make_scheme(str(obj["name"]), boundaries, scores)


def _parse_scheme_value(value):
    if not isinstance(value, str):
        raise ValidationError(f"expected an exact-rational string, got {value!r}")
    return InputValidator.parse_rational(value)


def write_publications(dataset: Dataset, fmt: str = "csv") -> bytes:
    """Serialize records so that parse_publications reads them back unchanged."""
    rows = [
        {
            "pub_id": r.pub_id,
            "field_id": r.field_id,
            "citations": r.citations,
            "groups": sorted(r.groups),
        }
        for r in dataset.records
    ]
    if fmt == "jsonl":
        return "".join(json.dumps(row) + "\n" for row in rows).encode("utf-8")
    frame = pd.DataFrame(rows, columns=list(PUBLICATION_COLUMNS))
    frame["groups"] = frame["groups"].map(GROUP_SEPARATOR.join)
    return frame.to_csv(index=False, lineterminator="\n").encode("utf-8")


def write_scheme(scheme: PercentileScheme) -> bytes:
    obj = {
        "name": scheme.name,
        "boundaries": [RationalFormatter.exact(p) for p in scheme.boundaries],
        "scores": [RationalFormatter.exact(s) for s in scheme.scores],
    }
    return (json.dumps(obj, indent=2) + "\n").encode("utf-8")
