"""Faceted search and coordinated-views data service for bibliographic metadata."""

from .analytics import (
    Gazetteer,
    SpatialBuckets,
    TemporalHistogram,
    load_gazetteer,
    spatial_distribution,
    temporal_distribution,
    top_facet_chart,
)
from .graphs import CoAuthorGraph, coauthor_graph, coword_recommend
from .index import (
    DuplicateIdError,
    FacetCount,
    Index,
    IndexFormatError,
    ResultSet,
    UnsupportedFieldError,
    build_index,
    tokenize,
)
from .linking import (
    LinkingEntry,
    LinkingKey,
    LinkingTable,
    build_linking_table,
    linking_subset,
    neighbors_of,
    normalize_intensity,
    pair_counts,
)
from .query import (
    FacetFilters,
    QuerySyntaxError,
    UnsupportedQueryError,
    evaluate,
    parse_query,
    to_query_string,
)
from .records import (
    CorpusError,
    Record,
    normalize_value,
    parse_corpus_line,
    parse_record,
    read_corpus,
    serialize_record,
)
from .vocabulary import (
    TermGraph,
    UnknownVocabularyError,
    Vocabulary,
    load_vocabulary,
    recommended_terms,
    related_terms,
)

__version__ = "0.1.0"
