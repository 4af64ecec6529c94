"""Record schema, corpus file reading, and value normalization.

A corpus file holds one JSON object per line (UTF-8; a ``.gz``-compressed
variant is accepted when the filename ends in ``.gz``). Values are cleaned
on ingest: surrounding whitespace is trimmed, internal whitespace runs are
collapsed, and junk sentinels such as "no entry" are dropped.
"""

from __future__ import annotations

import gzip
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterator

INFO_TYPES = frozenset(
    {"literature", "journal", "research_project", "event", "institution", "study"}
)

#: Values treated as missing data in any field, matched case-insensitively.
DEFAULT_JUNK_VALUES = frozenset({"no entry", "n/a", "-", "unknown"})

#: Calendar years outside this range are treated as absent.
YEAR_MIN = 1000
YEAR_MAX = 3000

LIST_FIELDS = ("persons", "subjects", "locations", "institutions")
SCALAR_FIELDS = ("title", "info_type", "database", "source", "language")

_WS_RUN = re.compile(r"\s+")


class CorpusError(ValueError):
    """A corpus line that cannot be turned into a Record."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


@dataclass(frozen=True)
class Record:
    """One bibliographic information item with normalized facet values.

    Records are immutable after construction and safe to share across
    concurrent readers. Multi-valued fields preserve input order; the
    order is irrelevant to every aggregate computed from them.
    """

    id: str
    title: str | None = None
    persons: tuple[str, ...] = ()
    subjects: tuple[str, ...] = ()
    year: int | None = None
    locations: tuple[str, ...] = ()
    info_type: str | None = None
    database: str | None = None
    source: str | None = None
    institutions: tuple[str, ...] = ()
    language: str | None = None


def normalize_value(raw: str, junk: frozenset[str] = DEFAULT_JUNK_VALUES) -> str | None:
    """Clean one field value; return None when it carries no information.

    Trims surrounding whitespace and collapses internal whitespace runs to
    a single space. Values that are empty or on the junk list (matched
    case-insensitively) are dropped. The returned string keeps its original
    casing; matching and aggregation keys are derived via ``str.casefold``
    downstream.
    """
    value = _WS_RUN.sub(" ", raw.strip())
    if not value or value.casefold() in junk:
        return None
    return value


def _clean_list(raw: Any, field: str, line_no: int | None, junk: frozenset[str]) -> tuple[str, ...]:
    if raw is None:
        return ()
    if not isinstance(raw, list):
        raise CorpusError(f"field {field!r} must be a list of strings", line_no)
    out = []
    for item in raw:
        if not isinstance(item, str):
            raise CorpusError(f"field {field!r} must contain only strings", line_no)
        value = normalize_value(item, junk)
        if value is not None:
            out.append(value)
    return tuple(out)


def _clean_scalar(raw: Any, field: str, line_no: int | None, junk: frozenset[str]) -> str | None:
    if raw is None:
        return None
    if not isinstance(raw, str):
        raise CorpusError(f"field {field!r} must be a string", line_no)
    return normalize_value(raw, junk)


def _clean_year(raw: Any, line_no: int | None) -> int | None:
    if raw is None:
        return None
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise CorpusError("field 'year' must be an integer", line_no)
    # Out-of-range years (placeholders like 0 or 9999) are junk, not errors.
    if not YEAR_MIN <= raw <= YEAR_MAX:
        return None
    return raw


def parse_record(
    obj: dict[str, Any],
    line_no: int | None = None,
    junk: frozenset[str] = DEFAULT_JUNK_VALUES,
) -> Record:
    """Turn one decoded corpus object into a normalized Record.

    Unknown keys are ignored; missing optional fields become absent/empty.
    Raises CorpusError when the id is missing or a field has the wrong
    shape.
    """
    raw_id = obj.get("id")
    if raw_id is None:
        raise CorpusError("record has no id", line_no)
    if not isinstance(raw_id, str) or not raw_id.strip():
        raise CorpusError("record id must be a non-empty string", line_no)

    info_type = _clean_scalar(obj.get("info_type"), "info_type", line_no, junk)
    if info_type is not None:
        info_type = info_type.casefold()
        if info_type not in INFO_TYPES:
            raise CorpusError(f"unknown info_type {info_type!r}", line_no)

    language = _clean_scalar(obj.get("language"), "language", line_no, junk)
    if language is not None:
        language = language.casefold()

    return Record(
        id=raw_id.strip(),
        title=_clean_scalar(obj.get("title"), "title", line_no, junk),
        persons=_clean_list(obj.get("persons"), "persons", line_no, junk),
        subjects=_clean_list(obj.get("subjects"), "subjects", line_no, junk),
        year=_clean_year(obj.get("year"), line_no),
        locations=_clean_list(obj.get("locations"), "locations", line_no, junk),
        info_type=info_type,
        database=_clean_scalar(obj.get("database"), "database", line_no, junk),
        source=_clean_scalar(obj.get("source"), "source", line_no, junk),
        institutions=_clean_list(obj.get("institutions"), "institutions", line_no, junk),
        language=language,
    )


def parse_corpus_line(
    line: str,
    line_no: int | None = None,
    junk: frozenset[str] = DEFAULT_JUNK_VALUES,
) -> Record:
    """Parse one corpus-file line into a Record."""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"malformed line: {exc.msg}", line_no) from exc
    if not isinstance(obj, dict):
        raise CorpusError("corpus line is not an object", line_no)
    return parse_record(obj, line_no, junk)


def serialize_record(record: Record) -> str:
    """Render a Record as one corpus-file line (no trailing newline).

    The output is canonical: fixed key order, absent fields omitted, so
    serializing the same Record always yields identical bytes.
    """
    obj: dict[str, Any] = {"id": record.id}
    for name in ("title", "year", "info_type", "database", "source", "language"):
        value = getattr(record, name)
        if value is not None:
            obj[name] = value
    for name in LIST_FIELDS:
        values = getattr(record, name)
        if values:
            obj[name] = list(values)
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def read_corpus(
    path: str | Path,
    junk: frozenset[str] = DEFAULT_JUNK_VALUES,
) -> Iterator[Record]:
    """Stream Records from a corpus file; gzip is detected by suffix."""
    path = Path(path)
    opener = gzip.open if path.suffix == ".gz" else open
    with opener(path, "rt", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, 1):
            if not line.strip():
                continue
            yield parse_corpus_line(line, line_no, junk)
