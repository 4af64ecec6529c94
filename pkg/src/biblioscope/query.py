"""Boolean field-query language: parsing, printing, and evaluation.

Grammar (EBNF)::

    query   := or
    or      := and ("OR" and)*
    and     := not ("AND"? not)*
    not     := "NOT" not | primary
    primary := "(" query ")" | FIELD ":" value | value
    value   := quoted phrase | bare term | "[" YEAR "TO" YEAR "]"   (year only)

Juxtaposed terms are an implicit AND. Operators are case-sensitive
uppercase words; lowercase "and" is an ordinary term. Bare values target
the pseudo-field ``all``. The empty query parses to MatchAll.

Evaluation is pure set algebra over the index: And is intersection, Or is
union, Not is the complement inside its enclosing conjunction. A query
that matches only by exclusion (no positive part to bound it) is rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .index import Index, ResultSet, YEAR_FIELD, tokenize

#: Query-language field names and the index fields they target.
FIELD_MAP = {
    "all": None,
    "title": "title",
    "keyword": "subjects",
    "person": "persons",
    "source": "source",
    "institution": "institutions",
    "year": "year",
    "location": "locations",
    "type": "info_type",
    "database": "database",
}

_CATEGORICAL_QUERY_FIELDS = frozenset(
    {"keyword", "person", "institution", "location", "type", "database"}
)
_TOKENIZED_QUERY_FIELDS = frozenset({"title", "source"})

_WS_RUN = re.compile(r"\s+")


class QuerySyntaxError(ValueError):
    """Query string rejected by the grammar; carries a character offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnsupportedQueryError(ValueError):
    """Structurally valid query that cannot be evaluated (pure negation)."""


# -- AST ---------------------------------------------------------------


@dataclass(frozen=True)
class MatchAll:
    pass


@dataclass(frozen=True)
class FieldTerm:
    field: str
    value: str


@dataclass(frozen=True)
class Phrase:
    field: str
    words: tuple[str, ...]


@dataclass(frozen=True)
class YearRange:
    start: int
    end: int


@dataclass(frozen=True)
class Not:
    child: "Node"


@dataclass(frozen=True)
class And:
    children: tuple["Node", ...]


@dataclass(frozen=True)
class Or:
    children: tuple["Node", ...]


Node = Union[MatchAll, FieldTerm, Phrase, YearRange, Not, And, Or]


@dataclass(frozen=True)
class FacetFilters:
    """Conjunctive facet filters, structurally separate from the query."""

    info_type: str | None = None
    database: str | None = None
    person: str | None = None
    subject: str | None = None
    year_from: int | None = None
    year_to: int | None = None

    def __post_init__(self):
        if (
            self.year_from is not None
            and self.year_to is not None
            and self.year_from > self.year_to
        ):
            raise ValueError("time-range filter: from-year must not exceed to-year")


# -- scanning ----------------------------------------------------------

_PUNCT = '():"[]'


@dataclass(frozen=True)
class _Token:
    kind: str  # one of ( ) : [ ] WORD QUOTED END
    text: str
    offset: int


def _scan(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in "():[]":
            tokens.append(_Token(c, c, i))
            i += 1
            continue
        if c == '"':
            end = text.find('"', i + 1)
            if end < 0:
                raise QuerySyntaxError("unterminated quote", i)
            tokens.append(_Token("QUOTED", text[i + 1 : end], i))
            i = end + 1
            continue
        j = i
        while j < n and not text[j].isspace() and text[j] not in _PUNCT:
            j += 1
        tokens.append(_Token("WORD", text[i:j], i))
        i = j
    tokens.append(_Token("END", "", n))
    return tokens


# -- parsing -----------------------------------------------------------


def _fold_value(raw: str) -> str:
    return _WS_RUN.sub(" ", raw.strip()).casefold()


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def starts_operand(self, token: _Token) -> bool:
        if token.kind in ("(", "QUOTED"):
            return True
        return token.kind == "WORD" and token.text not in ("AND", "OR")

    def parse_or(self) -> Node:
        children = [self.parse_and()]
        while self.peek().kind == "WORD" and self.peek().text == "OR":
            self.advance()
            if not self.starts_operand(self.peek()):
                raise QuerySyntaxError("expected a term after OR", self.peek().offset)
            children.append(self.parse_and())
        return children[0] if len(children) == 1 else Or(tuple(children))

    def parse_and(self) -> Node:
        children = [self.parse_not()]
        while True:
            token = self.peek()
            if token.kind == "WORD" and token.text == "AND":
                self.advance()
                if not self.starts_operand(self.peek()):
                    raise QuerySyntaxError("expected a term after AND", self.peek().offset)
                children.append(self.parse_not())
            elif self.starts_operand(token):
                children.append(self.parse_not())
            else:
                break
        return children[0] if len(children) == 1 else And(tuple(children))

    def parse_not(self) -> Node:
        token = self.peek()
        if token.kind == "WORD" and token.text == "NOT":
            self.advance()
            if not self.starts_operand(self.peek()):
                raise QuerySyntaxError("expected a term after NOT", self.peek().offset)
            return Not(self.parse_not())
        return self.parse_primary()

    def parse_primary(self) -> Node:
        token = self.advance()
        if token.kind == "(":
            node = self.parse_or()
            closing = self.advance()
            if closing.kind != ")":
                raise QuerySyntaxError("unbalanced parentheses", closing.offset)
            return node
        if token.kind == "QUOTED":
            return self._phrase("all", token)
        if token.kind == "WORD":
            if token.text in ("AND", "OR"):
                raise QuerySyntaxError(f"dangling operator {token.text}", token.offset)
            if self.peek().kind == ":":
                return self._field_value(token)
            return FieldTerm("all", _fold_value(token.text))
        raise QuerySyntaxError("expected a term", token.offset)

    def _field_value(self, name_token: _Token) -> Node:
        field = name_token.text.casefold()
        if field not in FIELD_MAP:
            raise QuerySyntaxError(f"unknown field name {name_token.text!r}", name_token.offset)
        self.advance()  # ':'
        token = self.advance()
        if token.kind == "[":
            if field != "year":
                raise QuerySyntaxError("ranges are only valid on the year field", token.offset)
            return self._year_range(token)
        if token.kind == "QUOTED":
            if field in _TOKENIZED_QUERY_FIELDS or field == "all":
                return self._phrase(field, token)
            if field == "year":
                return FieldTerm("year", str(self._int_value(token)))
            value = _fold_value(token.text)
            if not value:
                raise QuerySyntaxError("empty value", token.offset)
            return FieldTerm(field, value)
        if token.kind == "WORD" and token.text not in ("AND", "OR", "NOT"):
            if field == "year":
                return FieldTerm("year", str(self._int_value(token)))
            return FieldTerm(field, _fold_value(token.text))
        raise QuerySyntaxError(f"missing value for field {field!r}", token.offset)

    def _phrase(self, field: str, token: _Token) -> Node:
        words = tuple(tokenize(token.text))
        if not words:
            raise QuerySyntaxError("empty phrase", token.offset)
        return Phrase(field, words)

    def _int_value(self, token: _Token) -> int:
        try:
            return int(token.text.strip())
        except ValueError:
            raise QuerySyntaxError(f"year value {token.text!r} is not an integer", token.offset)

    def _year_range(self, open_token: _Token) -> Node:
        start_token = self.advance()
        if start_token.kind != "WORD":
            raise QuerySyntaxError("malformed range: expected a year", start_token.offset)
        start = self._int_value(start_token)
        to_token = self.advance()
        if to_token.kind != "WORD" or to_token.text != "TO":
            raise QuerySyntaxError("malformed range: expected TO", to_token.offset)
        end_token = self.advance()
        if end_token.kind != "WORD":
            raise QuerySyntaxError("malformed range: expected a year", end_token.offset)
        end = self._int_value(end_token)
        closing = self.advance()
        if closing.kind != "]":
            raise QuerySyntaxError("malformed range: expected ]", closing.offset)
        return YearRange(start, end)


def parse_query(text: str) -> Node:
    """Parse a query string into an AST; empty input matches everything."""
    tokens = _scan(text)
    if tokens[0].kind == "END":
        return MatchAll()
    parser = _Parser(tokens)
    node = parser.parse_or()
    trailing = parser.peek()
    if trailing.kind != "END":
        raise QuerySyntaxError("unexpected trailing input", trailing.offset)
    return node


# -- printing ----------------------------------------------------------

_NEEDS_QUOTES = re.compile(r'[\s():"\[\]]')


def _print_term(value: str) -> str:
    if not value or _NEEDS_QUOTES.search(value):
        return f'"{value}"'
    return value


def to_query_string(node: Node) -> str:
    """Render an AST back to query syntax.

    For any AST produced by :func:`parse_query`, re-parsing the printed
    string yields an equal AST.
    """
    if isinstance(node, MatchAll):
        return ""
    if isinstance(node, FieldTerm):
        term = _print_term(node.value)
        return term if node.field == "all" else f"{node.field}:{term}"
    if isinstance(node, Phrase):
        phrase = '"' + " ".join(node.words) + '"'
        return phrase if node.field == "all" else f"{node.field}:{phrase}"
    if isinstance(node, YearRange):
        return f"year:[{node.start} TO {node.end}]"
    if isinstance(node, Not):
        return "NOT " + _child_str(node.child)
    if isinstance(node, And):
        return " AND ".join(_child_str(child) for child in node.children)
    if isinstance(node, Or):
        parts = []
        for child in node.children:
            parts.append(f"({to_query_string(child)})" if isinstance(child, Or) else to_query_string(child))
        return " OR ".join(parts)
    raise TypeError(f"not a query node: {node!r}")


def _child_str(node: Node) -> str:
    if isinstance(node, (And, Or)):
        return f"({to_query_string(node)})"
    return to_query_string(node)


# -- evaluation --------------------------------------------------------


def is_pure_negation(node: Node) -> bool:
    """True when the query has no positive part bounding its matches."""
    if isinstance(node, Not):
        return not is_pure_negation(node.child)
    if isinstance(node, And):
        return all(is_pure_negation(child) for child in node.children)
    if isinstance(node, Or):
        return any(is_pure_negation(child) for child in node.children)
    return False


def _contains_run(haystack: tuple[str, ...], needle: tuple[str, ...]) -> bool:
    if len(needle) > len(haystack):
        return False
    first = needle[0]
    span = len(needle)
    for i in range(len(haystack) - span + 1):
        if haystack[i] == first and haystack[i : i + span] == needle:
            return True
    return False


def _phrase_docs(index: Index, field: str, words: tuple[str, ...]) -> frozenset[int]:
    candidates: frozenset[int] | None = None
    for word in words:
        docs = index.postings_set(field, word)
        candidates = docs if candidates is None else candidates & docs
        if not candidates:
            return frozenset()
    column = index.columns[field]
    return frozenset(d for d in candidates if _contains_run(column[d], words))


def _eval_node(node: Node, index: Index) -> frozenset[int]:
    if isinstance(node, MatchAll):
        return frozenset(range(index.doc_count))
    if isinstance(node, FieldTerm):
        return _eval_field_term(node, index)
    if isinstance(node, Phrase):
        return _eval_phrase(node, index)
    if isinstance(node, YearRange):
        table = index.postings[YEAR_FIELD]
        out: frozenset[int] = frozenset()
        for year in table:
            if node.start <= year <= node.end:
                out |= index.postings_set(YEAR_FIELD, year)
        return out
    if isinstance(node, Not):
        return frozenset(range(index.doc_count)) - _eval_node(node.child, index)
    if isinstance(node, And):
        result = _eval_node(node.children[0], index)
        for child in node.children[1:]:
            if not result:
                return result
            result &= _eval_node(child, index)
        return result
    if isinstance(node, Or):
        result: frozenset[int] = frozenset()
        for child in node.children:
            result |= _eval_node(child, index)
        return result
    raise TypeError(f"not a query node: {node!r}")



def _eval_field_term(node: FieldTerm, index: Index) -> frozenset[int]:
    if node.field == "all":
        key = node.value
        return (
            index.postings_set("title", key)
            | index.postings_set("source", key)
            | index.postings_set("subjects", key)
            | index.postings_set("persons", key)
        )
    if node.field == "year":
        try:
            return index.postings_set(YEAR_FIELD, int(node.value))
        except ValueError:
            return frozenset()
    return index.postings_set(FIELD_MAP[node.field], node.value)


def _eval_phrase(node: Phrase, index: Index) -> frozenset[int]:
    if node.field == "all":
        joined = " ".join(node.words)
        return (
            _phrase_docs(index, "title", node.words)
            | _phrase_docs(index, "source", node.words)
            | index.postings_set("subjects", joined)
            | index.postings_set("persons", joined)
        )
    if node.field in _TOKENIZED_QUERY_FIELDS:
        return _phrase_docs(index, FIELD_MAP[node.field], node.words)
    # Programmatic phrase on a categorical field: exact value match.
    return index.postings_set(FIELD_MAP[node.field], " ".join(node.words))


def _filter_docs(filters: FacetFilters, index: Index) -> frozenset[int] | None:
    """Intersection of all active filters, or None when no filter is set."""
    result: frozenset[int] | None = None

    def apply(docs: frozenset[int]):
        nonlocal result
        result = docs if result is None else result & docs

    if filters.info_type is not None:
        apply(index.postings_set("info_type", filters.info_type.casefold()))
    if filters.database is not None:
        apply(index.postings_set("database", filters.database.casefold()))
    if filters.person is not None:
        apply(index.postings_set("persons", filters.person.casefold()))
    if filters.subject is not None:
        apply(index.postings_set("subjects", filters.subject.casefold()))
    if filters.year_from is not None or filters.year_to is not None:
        docs: frozenset[int] = frozenset()
        for year in index.postings[YEAR_FIELD]:
            if (filters.year_from is None or year >= filters.year_from) and (
                filters.year_to is None or year <= filters.year_to
            ):
                docs |= index.postings_set(YEAR_FIELD, year)
        apply(docs)
    return result


def evaluate(ast: Node, filters: FacetFilters, index: Index) -> ResultSet:
    """Evaluate a parsed query plus facet filters against the index.

    Raises UnsupportedQueryError for queries that match only by exclusion.
    """
    if is_pure_negation(ast):
        raise UnsupportedQueryError("query needs at least one positive term")
    docs = _eval_node(ast, index)
    filtered = _filter_docs(filters, index)
    if filtered is not None:
        docs &= filtered
    return ResultSet(tuple(sorted(docs)))
