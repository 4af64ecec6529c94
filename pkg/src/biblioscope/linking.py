"""Weighted-brushing linker: co-occurrence intensities for linked views.

The pipeline, per query:

1. Take the query's result set and its top ten persons and top ten
   keywords (the anchor values).
2. Narrow the result set to documents containing at least one anchor
   person AND at least one anchor keyword (the linking subset).
3. For every document in the subset, cross-combine its anchor persons,
   anchor keywords, locations, and year into pairs of facet values; a
   pair's count is the number of distinct documents sharing both values.
4. Normalize counts to integer intensities 1..5 relative to the maximum;
   absent pairs simply have no entry (they render unhighlighted).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from .index import Index, ResultSet
from .query import FacetFilters, Node, evaluate

#: Anchor list size for persons and keywords.
ANCHOR_LIMIT = 10

#: Highest intensity; the most frequent pair always receives it.
INTENSITY_MAX = 5

LINK_FIELDS = ("person", "keyword", "location", "time")
_FIELD_ORDER = {field: i for i, field in enumerate(LINK_FIELDS)}


@dataclass(frozen=True)
class LinkingKey:
    """Canonical unordered pair of facet values from two different fields.

    Members are ordered by field precedence (person < keyword < location
    < time); values are display strings, compared case-folded.
    """

    field_a: str
    value_a: str
    field_b: str
    value_b: str

    @classmethod
    def canonical(cls, field_x: str, value_x: str, field_y: str, value_y: str) -> "LinkingKey":
        if field_x == field_y:
            raise ValueError("linking pairs combine two different fields")
        if _FIELD_ORDER[field_x] > _FIELD_ORDER[field_y]:
            field_x, value_x, field_y, value_y = field_y, value_y, field_x, value_x
        return cls(field_x, value_x, field_y, value_y)

    def sort_key(self):
        return (
            _FIELD_ORDER[self.field_a],
            self.value_a.casefold(),
            _FIELD_ORDER[self.field_b],
            self.value_b.casefold(),
        )


@dataclass(frozen=True)
class LinkingEntry:
    count: int
    intensity: int


@dataclass(frozen=True)
class LinkingTable:
    """The weighted-brushing product for one query."""

    entries: Mapping[LinkingKey, LinkingEntry]
    top_persons: tuple[str, ...]
    top_keywords: tuple[str, ...]
    subset_size: int

    def sorted_entries(self) -> list[tuple[LinkingKey, LinkingEntry]]:
        return sorted(self.entries.items(), key=lambda item: item[0].sort_key())


def linking_subset(
    index: Index, ast: Node, filters: FacetFilters
) -> tuple[ResultSet, tuple[str, ...], tuple[str, ...]]:
    """Anchor values and the narrowed result set for linking.

    The subset is the query's result set intersected with the union of
    anchor-person postings and the union of anchor-keyword postings. An
    empty anchor list means an empty subset.
    """
    base = evaluate(ast, filters, index)
    top_persons = tuple(fc.value for fc in index.facet_counts(base, "persons", ANCHOR_LIMIT))
    top_keywords = tuple(fc.value for fc in index.facet_counts(base, "subjects", ANCHOR_LIMIT))

    person_docs: frozenset[int] = frozenset()
    for value in top_persons:
        person_docs |= index.postings_set("persons", value.casefold())
    keyword_docs: frozenset[int] = frozenset()
    for value in top_keywords:
        keyword_docs |= index.postings_set("subjects", value.casefold())

    subset = frozenset(base.ordinals) & person_docs & keyword_docs
    return ResultSet(tuple(sorted(subset))), top_persons, top_keywords


def pair_counts(
    index: Index,
    subset: ResultSet,
    top_persons: tuple[str, ...],
    top_keywords: tuple[str, ...],
) -> dict[LinkingKey, int]:
    """Shared-document counts for every cross-field value pair.

    Per document the candidate values are its anchor persons, anchor
    keywords, all locations, and its year (when present); each document
    contributes a given pair at most once.
    """
    person_keys = {value.casefold() for value in top_persons}
    keyword_keys = {value.casefold() for value in top_keywords}
    person_col = index.columns["persons"]
    subject_col = index.columns["subjects"]
    location_col = index.columns["locations"]
    years = index.years
    display_person = index.display["persons"]
    display_subject = index.display["subjects"]
    display_location = index.display["locations"]

    counts: dict[LinkingKey, int] = {}
    for d in subset.ordinals:
        groups = [
            ("person", [display_person[k] for k in person_col[d] if k in person_keys]),
            ("keyword", [display_subject[k] for k in subject_col[d] if k in keyword_keys]),
            ("location", [display_location[k] for k in location_col[d]]),
            ("time", [str(years[d])] if years[d] is not None else []),
        ]
        for (field_x, values_x), (field_y, values_y) in combinations(groups, 2):
            for value_x in values_x:
                for value_y in values_y:
                    key = LinkingKey(field_x, value_x, field_y, value_y)
                    counts[key] = counts.get(key, 0) + 1
    return counts


def normalize_intensity(counts: Mapping[LinkingKey, int]) -> dict[LinkingKey, LinkingEntry]:
    """Map raw pair counts to intensities 1..5 relative to the maximum.

    intensity = max(1, round(5 * count / max_count)) with half-up rounding;
    the maximal count always maps to 5 and zero is reserved for pairs that
    have no entry at all.
    """
    if not counts:
        return {}
    max_count = max(counts.values())
    out = {}
    for key, count in counts.items():
        intensity = (10 * count + max_count) // (2 * max_count)
        out[key] = LinkingEntry(count, max(1, intensity))
    return out


def build_linking_table(index: Index, ast: Node, filters: FacetFilters) -> LinkingTable:
    """Run the full linking pipeline for one query."""
    subset, top_persons, top_keywords = linking_subset(index, ast, filters)
    counts = pair_counts(index, subset, top_persons, top_keywords)
    return LinkingTable(normalize_intensity(counts), top_persons, top_keywords, subset.total)


def neighbors_of(table: LinkingTable, field: str, value: str) -> list[tuple[str, str, int]]:
    """All linked (field, value, intensity) partners of one facet value.

    Ordered by field precedence, then case-folded value.
    """
    if field not in _FIELD_ORDER:
        raise ValueError(f"unknown linking field {field!r}")
    wanted = value.casefold()
    out = []
    for key, entry in table.entries.items():
        if key.field_a == field and key.value_a.casefold() == wanted:
            out.append((key.field_b, key.value_b, entry.intensity))
        elif key.field_b == field and key.value_b.casefold() == wanted:
            out.append((key.field_a, key.value_a, entry.intensity))
    out.sort(key=lambda item: (_FIELD_ORDER[item[0]], item[1].casefold()))
    return out
