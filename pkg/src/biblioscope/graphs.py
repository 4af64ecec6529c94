"""Co-authorship network and co-word keyword recommendations."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .index import FacetCount, Index, ResultSet

#: The co-author graph is scoped to this many top authors.
COAUTHOR_NODE_LIMIT = 50


@dataclass(frozen=True)
class GraphNode:
    name: str
    count: int


@dataclass(frozen=True)
class GraphEdge:
    a: str
    b: str
    count: int


@dataclass(frozen=True)
class CoAuthorGraph:
    """Top authors of a result set, edges weighted by shared documents."""

    nodes: tuple[GraphNode, ...]
    edges: tuple[GraphEdge, ...]


def coauthor_graph(index: Index, rs: ResultSet) -> CoAuthorGraph:
    """Build the co-author network over the top 50 authors of ``rs``.

    Edges are computed only among the node set, stored once per unordered
    pair (endpoints ordered case-folded), and count the documents listing
    both authors. Authors appearing twice in one record count once.
    """
    top = index.facet_counts(rs, "persons", COAUTHOR_NODE_LIMIT)
    nodes = tuple(GraphNode(fc.value, fc.count) for fc in top)
    node_keys = {fc.value.casefold() for fc in top}

    pair_docs: Counter = Counter()
    column = index.columns["persons"]
    for d in rs.ordinals:
        keys = sorted(key for key in column[d] if key in node_keys)
        for a, b in combinations(keys, 2):
            pair_docs[(a, b)] += 1

    display = index.display["persons"]
    edges = tuple(
        GraphEdge(display[a], display[b], count)
        for (a, b), count in sorted(pair_docs.items())
    )
    return CoAuthorGraph(nodes, edges)


def coword_recommend(index: Index, term: str, k: int) -> list[FacetCount]:
    """Keywords co-occurring with ``term`` across documents, best first.

    Counts, per document containing the term as a subject, every other
    subject; returns the top k by shared-document count (ties broken by
    case-folded value), the term itself excluded. Unknown terms yield an
    empty list.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    key = term.casefold()
    docs = index.postings["subjects"].get(key, ())
    counts: Counter = Counter()
    column = index.columns["subjects"]
    for d in docs:
        for other in column[d]:
            if other != key:
                counts[other] += 1
    top = sorted(counts.items(), key=lambda item: (-item[1], item[0]))[:k]
    display = index.display["subjects"]
    return [FacetCount(display[other], count) for other, count in top]
