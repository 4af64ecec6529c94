"""Controlled vocabularies and related-term graphs.

A vocabulary file is UTF-8, tab-separated, one relation per line:
``from<TAB>relation<TAB>to`` with relation one of broader, narrower,
related, translation, synonym. Lines starting with '#' are comments.
Loading closes the relation set: broader/narrower become mutual inverses
and the symmetric relations are stored in both directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .graphs import coword_recommend
from .index import Index
from .records import normalize_value

RELATION_INVERSE = {
    "broader": "narrower",
    "narrower": "broader",
    "related": "related",
    "translation": "translation",
    "synonym": "synonym",
}

#: Relation label attached to co-word recommender output.
SUGGESTED_RELATION = "suggested"

#: Reserved vocabulary id selecting the co-word recommender.
RECOMMENDER_VOCAB_ID = "recommender"


class VocabularyError(ValueError):
    """Vocabulary file line that cannot be loaded."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class UnknownVocabularyError(LookupError):
    """Requested vocabulary id was never loaded."""


@dataclass(frozen=True)
class TermGraph:
    """Direct neighbors of a term: (term, relation label) pairs."""

    center: str
    neighbors: tuple[tuple[str, str], ...]
    vocabulary: str


class Vocabulary:
    """Immutable closed relation set over case-folded terms."""

    def __init__(self, vocab_id: str):
        self.id = vocab_id
        self._display: dict[str, str] = {}
        self._relations: dict[str, set[tuple[str, str]]] = {}

    def _add(self, term: str, relation: str, other: str) -> None:
        term_key = term.casefold()
        other_key = other.casefold()
        self._display.setdefault(term_key, term)
        self._display.setdefault(other_key, other)
        self._relations.setdefault(term_key, set()).add((relation, other_key))
        self._relations.setdefault(other_key, set()).add(
            (RELATION_INVERSE[relation], term_key)
        )

    @property
    def terms(self) -> list[str]:
        return sorted(self._display)

    def relations(self) -> list[tuple[str, str, str]]:
        """All (term, relation, term) triples after closure, case-folded."""
        out = []
        for term_key, pairs in self._relations.items():
            for relation, other_key in pairs:
                out.append((term_key, relation, other_key))
        return sorted(out)

    def neighbors(self, term: str) -> list[tuple[str, str]]:
        """Direct (term display, relation) neighbors, deterministic order."""
        pairs = self._relations.get(term.casefold(), set())
        ordered = sorted(pairs, key=lambda pair: (pair[0], pair[1]))
        return [(self._display[other_key], relation) for relation, other_key in ordered]


def load_vocabulary(vocab_id: str, path: str | Path) -> Vocabulary:
    """Load one vocabulary file, enforcing inverse/symmetric closure.

    Self-relations are meaningless and silently dropped; unknown relation
    names and malformed lines raise VocabularyError with the line number.
    """
    vocab = Vocabulary(vocab_id)
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise VocabularyError("expected from<TAB>relation<TAB>to", line_no)
            raw_from, raw_relation, raw_to = parts
            relation = raw_relation.strip().casefold()
            if relation not in RELATION_INVERSE:
                raise VocabularyError(f"unknown relation {raw_relation.strip()!r}", line_no)
            term_from = normalize_value(raw_from, frozenset())
            term_to = normalize_value(raw_to, frozenset())
            if term_from is None or term_to is None:
                raise VocabularyError("empty term", line_no)
            if term_from.casefold() == term_to.casefold():
                continue
            vocab._add(term_from, relation, term_to)
    return vocab


def related_terms(term: str, vocab: Vocabulary) -> TermGraph:
    """One-hop related-term graph for ``term`` from a loaded vocabulary."""
    return TermGraph(term, tuple(vocab.neighbors(term)), vocab.id)


def recommended_terms(term: str, index: Index, k: int = 10) -> TermGraph:
    """Related-term graph backed by the co-word recommender."""
    neighbors = tuple(
        (fc.value, SUGGESTED_RELATION) for fc in coword_recommend(index, term, k)
    )
    return TermGraph(term, neighbors, RECOMMENDER_VOCAB_ID)
