"""Immutable inverted index over Records: set retrieval and facet counting.

Categorical fields are indexed as whole case-folded values, tokenized text
fields (title, source) as lower-cased word tokens, and year as an integer
key. The index never changes after build; updates mean rebuild, which makes
concurrent reads trivially safe.
"""

from __future__ import annotations

import json
import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .records import Record, parse_corpus_line, serialize_record

CATEGORICAL_FIELDS = ("persons", "subjects", "locations", "info_type", "database", "institutions")
TOKENIZED_FIELDS = ("title", "source")
YEAR_FIELD = "year"

INDEX_FORMAT = "biblioscope-index"
INDEX_VERSION = 1

_MANIFEST_FILE = "manifest.json"
_RECORDS_FILE = "records.jsonl"

_TOKEN = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lower-cased word tokens, split on non-alphanumerics."""
    return _TOKEN.findall(text.casefold())


class DuplicateIdError(ValueError):
    """Two corpus records share an id."""


class UnsupportedFieldError(ValueError):
    """Operation requested on a field it is not defined for."""


class IndexFormatError(ValueError):
    """On-disk index directory is missing, corrupt, or a wrong version."""


@dataclass(frozen=True)
class ResultSet:
    """Matching doc ordinals for a query, ascending and duplicate-free."""

    ordinals: tuple[int, ...]

    @property
    def total(self) -> int:
        return len(self.ordinals)


@dataclass(frozen=True)
class FacetCount:
    """One facet value with the number of distinct matching documents."""

    value: str
    count: int


def _record_field_keys(record: Record, field: str) -> tuple:
    """Case-folded (or integer, for year) index keys of one record field."""
    if field in ("persons", "subjects", "locations", "institutions"):
        values = getattr(record, field)
        return tuple(dict.fromkeys(v.casefold() for v in values))
    if field in ("info_type", "database"):
        value = getattr(record, field)
        return (value.casefold(),) if value is not None else ()
    if field == YEAR_FIELD:
        return (record.year,) if record.year is not None else ()
    raise UnsupportedFieldError(f"field {field!r} has no whole-value keys")


class Index:
    """Read-only search index. Build with :func:`build_index`.

    Instances are immutable and shareable: every operation is a pure read,
    safe under unbounded concurrency.
    """

    def __init__(
        self,
        records: tuple[Record, ...],
        postings: dict[str, dict],
        display: dict[str, dict],
        columns: dict[str, list[tuple]],
        years: list[int | None],
        search_order: tuple[int, ...],
    ):
        self.records = records
        self.doc_count = len(records)
        self.postings = postings
        self.display = display
        self.columns = columns
        self.years = years
        self.search_order = search_order
        self.fields = frozenset(CATEGORICAL_FIELDS) | frozenset(TOKENIZED_FIELDS) | {YEAR_FIELD}
        self._all = ResultSet(tuple(range(self.doc_count)))
        self._posting_sets = {
            field: {key: frozenset(ordinals) for key, ordinals in table.items()}
            for field, table in postings.items()
        }

    def all_docs(self) -> ResultSet:
        return self._all

    def record(self, ordinal: int) -> Record:
        return self.records[ordinal]

    def postings_lookup(self, field: str, value) -> ResultSet:
        """Exact posting list for a case-folded value; empty when absent."""
        if field not in self.fields:
            raise UnsupportedFieldError(f"field {field!r} is not indexed")
        key = value
        if field == YEAR_FIELD:
            try:
                key = int(value)
            except (TypeError, ValueError):
                return ResultSet(())
        elif isinstance(value, str):
            key = value.casefold()
        return ResultSet(self.postings[field].get(key, ()))

    def postings_set(self, field: str, key) -> frozenset[int]:
        """Internal fast path: postings as a set, key already folded."""
        return self._posting_sets[field].get(key, frozenset())

    def facet_counts(self, rs: ResultSet, field: str, k: int) -> list[FacetCount]:
        """The k most frequent values of ``field`` among the result set.

        Sorted by count descending, ties broken by case-folded value
        ascending. Tokenized text fields are not countable.
        """
        if field in TOKENIZED_FIELDS or field not in self.fields:
            raise UnsupportedFieldError(f"facet counts are not supported on field {field!r}")
        if k < 1:
            raise ValueError("k must be >= 1")
        counts: Counter = Counter()
        if field == YEAR_FIELD:
            years = self.years
            for d in rs.ordinals:
                y = years[d]
                if y is not None:
                    counts[y] += 1
        else:
            column = self.columns[field]
            for d in rs.ordinals:
                for key in column[d]:
                    counts[key] += 1
        top = sorted(counts.items(), key=lambda item: (-item[1], item[0]))[:k]
        if field == YEAR_FIELD:
            return [FacetCount(str(key), count) for key, count in top]
        display = self.display[field]
        return [FacetCount(display[key], count) for key, count in top]

    def display_value(self, field: str, key) -> str:
        """Display spelling for an index key (years render as digits)."""
        if field == YEAR_FIELD:
            return str(key)
        return self.display[field][key]

    def ordered_ordinals(self, rs: ResultSet, start: int, stop: int) -> list[int]:
        """Slice [start, stop) of the result set in result-list order.

        Result-list order is year descending (absent years last), then id
        ascending; it is precomputed once per index build.
        """
        if stop <= start:
            return []
        members = set(rs.ordinals)
        out: list[int] = []
        seen = 0
        for d in self.search_order:
            if d in members:
                if seen >= start:
                    out.append(d)
                    if len(out) >= stop - start:
                        break
                seen += 1
        return out

    # -- persistence --------------------------------------------------

    def save(self, directory: str | Path) -> None:
        """Write the index to a directory (manifest + forward store)."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        manifest = {
            "format": INDEX_FORMAT,
            "version": INDEX_VERSION,
            "doc_count": self.doc_count,
            "fields": sorted(self.fields),
        }
        (directory / _MANIFEST_FILE).write_text(
            json.dumps(manifest, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
        )
        with open(directory / _RECORDS_FILE, "w", encoding="utf-8") as handle:
            for record in self.records:
                handle.write(serialize_record(record) + "\n")

    @classmethod
    def load(cls, directory: str | Path) -> "Index":
        """Load an index directory, verifying the manifest version."""
        directory = Path(directory)
        manifest_path = directory / _MANIFEST_FILE
        if not manifest_path.is_file():
            raise IndexFormatError(f"no index manifest at {manifest_path}")
        try:
            manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise IndexFormatError(f"corrupt manifest at {manifest_path}: {exc.msg}") from exc
        if manifest.get("format") != INDEX_FORMAT:
            raise IndexFormatError(f"not a {INDEX_FORMAT} directory: {directory}")
        if manifest.get("version") != INDEX_VERSION:
            raise IndexFormatError(
                f"unsupported index version {manifest.get('version')!r}, expected {INDEX_VERSION}"
            )
        records = []
        with open(directory / _RECORDS_FILE, encoding="utf-8") as handle:
            for line_no, line in enumerate(handle, 1):
                if line.strip():
                    records.append(parse_corpus_line(line, line_no))
        index = build_index(records)
        if index.doc_count != manifest["doc_count"]:
            raise IndexFormatError(
                f"manifest says {manifest['doc_count']} docs, found {index.doc_count}"
            )
        return index


def build_index(records: Iterable[Record]) -> Index:
    """Build an immutable Index from a record stream.

    Raises DuplicateIdError when two records share an id.
    """
    store: list[Record] = []
    seen_ids: set[str] = set()
    for record in records:
        if record.id in seen_ids:
            raise DuplicateIdError(f"duplicate record id {record.id!r}")
        seen_ids.add(record.id)
        store.append(record)

    postings: dict[str, dict] = {}
    lists: dict[str, dict] = {field: defaultdict(list) for field in CATEGORICAL_FIELDS}
    lists.update({field: defaultdict(list) for field in TOKENIZED_FIELDS})
    lists[YEAR_FIELD] = defaultdict(list)
    spellings: dict[str, dict] = {field: defaultdict(Counter) for field in CATEGORICAL_FIELDS}
    columns: dict[str, list[tuple]] = {field: [] for field in CATEGORICAL_FIELDS}
    token_columns: dict[str, list[tuple]] = {field: [] for field in TOKENIZED_FIELDS}
    years: list[int | None] = []

    for ordinal, record in enumerate(store):
        for field in CATEGORICAL_FIELDS:
            keys = _record_field_keys(record, field)
            columns[field].append(keys)
            for key in keys:
                lists[field][key].append(ordinal)
            raw = getattr(record, field)
            for value in raw if isinstance(raw, tuple) else ((raw,) if raw else ()):
                spellings[field][value.casefold()][value] += 1
        for field in TOKENIZED_FIELDS:
            text = getattr(record, field)
            tokens = tuple(tokenize(text)) if text else ()
            token_columns[field].append(tokens)
            for token in dict.fromkeys(tokens):
                lists[field][token].append(ordinal)
        years.append(record.year)
        if record.year is not None:
            lists[YEAR_FIELD][record.year].append(ordinal)

    for field, table in lists.items():
        postings[field] = {key: tuple(ordinals) for key, ordinals in table.items()}

    display: dict[str, dict] = {}
    for field, table in spellings.items():
        display[field] = {
            key: min(counter.items(), key=lambda item: (-item[1], item[0]))[0]
            for key, counter in table.items()
        }

    def order_key(ordinal: int):
        year = years[ordinal]
        if year is None:
            return (1, 0, store[ordinal].id)
        return (0, -year, store[ordinal].id)

    search_order = tuple(sorted(range(len(store)), key=order_key))

    columns.update(token_columns)
    return Index(tuple(store), postings, display, columns, years, search_order)
