"""HTTP service exposing search, aggregates, and term graphs as JSON.

Payloads are built by pure functions shared with the CLI, so the API and
``biblioscope query`` emit identical bytes for identical inputs. Handlers
never mutate the index; any number of simultaneous requests is safe.

Endpoints (all GET, UTF-8 JSON):

    /api/search     ?q&type&database&person&subject&from&to&page&size
    /api/facets     ?q&...&field&k
    /api/temporal   ?q&...[&ref_year]
    /api/spatial    ?q&...
    /api/coauthors  ?q&...
    /api/linking    ?q&...
    /api/terms      ?term&vocab
    /               static UI assets (when configured)

Each response carries an X-Elapsed-Ms diagnostic header; it lives in a
header rather than the body so payloads stay byte-identical across
repeated identical requests.
"""

from __future__ import annotations

import datetime as _dt
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .analytics import Gazetteer, load_gazetteer, spatial_distribution, temporal_distribution
from .graphs import coauthor_graph
from .index import Index, ResultSet, UnsupportedFieldError
from .linking import build_linking_table
from .query import FacetFilters, QuerySyntaxError, UnsupportedQueryError, evaluate, parse_query
from .records import Record
from .vocabulary import (
    RECOMMENDER_VOCAB_ID,
    UnknownVocabularyError,
    Vocabulary,
    load_vocabulary,
    recommended_terms,
    related_terms,
)

MAX_PAGE_SIZE = 100
DEFAULT_PAGE_SIZE = 10
DEFAULT_FACET_K = 50

AGGREGATE_KINDS = ("facets", "temporal", "spatial", "coauthors", "linking")


@dataclass(frozen=True)
class ServiceConfig:
    """Startup configuration for the service process."""

    index_dir: str
    port: int = 8080
    host: str = "127.0.0.1"
    gazetteer: str | None = None
    vocabularies: dict[str, str] = field(default_factory=dict)
    static_dir: str | None = None
    reference_year: int | None = None
    page_size: int = DEFAULT_PAGE_SIZE
    cors_origins: tuple[str, ...] = ("*",)

    def validate(self) -> None:
        if not 1 <= self.port <= 65535:
            raise ValueError(f"port {self.port} out of range 1..65535")
        if not Path(self.index_dir).is_dir():
            raise ValueError(f"index directory not readable: {self.index_dir}")
        paths = list(self.vocabularies.values())
        if self.gazetteer is not None:
            paths.append(self.gazetteer)
        for path in paths:
            if not Path(path).is_file():
                raise ValueError(f"file not readable: {path}")
        if self.static_dir is not None and not Path(self.static_dir).is_dir():
            raise ValueError(f"static directory not readable: {self.static_dir}")
        if self.page_size < 1 or self.page_size > MAX_PAGE_SIZE:
            raise ValueError(f"page size {self.page_size} out of range 1..{MAX_PAGE_SIZE}")


def load_config(path: str | Path) -> ServiceConfig:
    obj = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(obj, dict):
        raise ValueError("config must be a JSON object")
    known = {
        "index_dir", "port", "host", "gazetteer", "vocabularies",
        "static_dir", "reference_year", "page_size", "cors_origins",
    }
    unknown = set(obj) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    if "index_dir" not in obj:
        raise ValueError("config is missing index_dir")
    if "cors_origins" in obj:
        obj["cors_origins"] = tuple(obj["cors_origins"])
    return ServiceConfig(**obj)


@dataclass
class ServiceState:
    """Everything a request handler needs, loaded once at startup."""

    index: Index
    gazetteer: Gazetteer
    vocabularies: dict[str, Vocabulary]
    reference_year: int | None = None
    page_size: int = DEFAULT_PAGE_SIZE

    def resolve_reference_year(self, override: int | None) -> int:
        if override is not None:
            return override
        if self.reference_year is not None:
            return self.reference_year
        return _dt.date.today().year


def build_state(config: ServiceConfig) -> ServiceState:
    config.validate()
    index = Index.load(config.index_dir)
    gazetteer = load_gazetteer(config.gazetteer) if config.gazetteer else Gazetteer({})
    vocabularies = {
        vocab_id: load_vocabulary(vocab_id, path)
        for vocab_id, path in config.vocabularies.items()
    }
    return ServiceState(
        index=index,
        gazetteer=gazetteer,
        vocabularies=vocabularies,
        reference_year=config.reference_year,
        page_size=config.page_size,
    )


# -- payload builders ---------------------------------------------------


def record_payload(record: Record) -> dict[str, Any]:
    return {
        "id": record.id,
        "title": record.title,
        "persons": list(record.persons),
        "subjects": list(record.subjects),
        "year": record.year,
        "locations": list(record.locations),
        "info_type": record.info_type,
        "database": record.database,
        "source": record.source,
        "institutions": list(record.institutions),
        "language": record.language,
    }


def _filters_payload(filters: FacetFilters) -> dict[str, Any]:
    return {
        "type": filters.info_type,
        "database": filters.database,
        "person": filters.person,
        "subject": filters.subject,
        "from": filters.year_from,
        "to": filters.year_to,
    }


def _evaluate(state: ServiceState, q: str, filters: FacetFilters) -> ResultSet:
    return evaluate(parse_query(q), filters, state.index)


def search_payload(
    state: ServiceState, q: str, filters: FacetFilters, page: int, size: int
) -> dict[str, Any]:
    if page < 0:
        raise ValueError("page must be >= 0")
    if size < 1 or size > MAX_PAGE_SIZE:
        raise ValueError(f"size must be in 1..{MAX_PAGE_SIZE}")
    rs = _evaluate(state, q, filters)
    ordinals = state.index.ordered_ordinals(rs, page * size, (page + 1) * size)
    return {
        "total": rs.total,
        "page": page,
        "size": size,
        "filters": _filters_payload(filters),
        "records": [record_payload(state.index.record(d)) for d in ordinals],
    }


def facets_payload(
    state: ServiceState, q: str, filters: FacetFilters, field_name: str, k: int
) -> dict[str, Any]:
    rs = _evaluate(state, q, filters)
    counts = state.index.facet_counts(rs, field_name, k)
    return {
        "field": field_name,
        "counts": [{"value": fc.value, "count": fc.count} for fc in counts],
    }


def temporal_payload(
    state: ServiceState, q: str, filters: FacetFilters, ref_year: int | None
) -> dict[str, Any]:
    rs = _evaluate(state, q, filters)
    histogram = temporal_distribution(
        state.index, rs, state.resolve_reference_year(ref_year)
    )
    return {
        "bins": [{"year": year, "count": count} for year, count in histogram.bins],
        "chart_kind": histogram.chart_kind,
        "covered": histogram.covered,
        "uncovered": histogram.uncovered,
    }


def spatial_payload(state: ServiceState, q: str, filters: FacetFilters) -> dict[str, Any]:
    rs = _evaluate(state, q, filters)
    result = spatial_distribution(state.index, rs, state.gazetteer)
    bbox = None
    if result.bbox is not None:
        bbox = {
            "min_lat": result.bbox.min_lat,
            "max_lat": result.bbox.max_lat,
            "min_lon": result.bbox.min_lon,
            "max_lon": result.bbox.max_lon,
        }
    return {
        "buckets": [
            {"name": b.name, "lat": b.lat, "lon": b.lon, "count": b.count}
            for b in result.buckets
        ],
        "unresolved": [{"name": name, "count": count} for name, count in result.unresolved],
        "bbox": bbox,
    }


def coauthors_payload(state: ServiceState, q: str, filters: FacetFilters) -> dict[str, Any]:
    rs = _evaluate(state, q, filters)
    graph = coauthor_graph(state.index, rs)
    return {
        "nodes": [{"name": n.name, "count": n.count} for n in graph.nodes],
        "edges": [{"a": e.a, "b": e.b, "count": e.count} for e in graph.edges],
    }


def linking_payload(state: ServiceState, q: str, filters: FacetFilters) -> dict[str, Any]:
    table = build_linking_table(state.index, parse_query(q), filters)
    return {
        "entries": [
            {
                "field_a": key.field_a,
                "value_a": key.value_a,
                "field_b": key.field_b,
                "value_b": key.value_b,
                "count": entry.count,
                "intensity": entry.intensity,
            }
            for key, entry in table.sorted_entries()
        ],
        "top_persons": list(table.top_persons),
        "top_keywords": list(table.top_keywords),
        "subset_size": table.subset_size,
    }


def terms_payload(state: ServiceState, term: str, vocab_id: str) -> dict[str, Any]:
    if not term:
        raise ValueError("term must be non-empty")
    if vocab_id == RECOMMENDER_VOCAB_ID:
        graph = recommended_terms(term, state.index)
    elif vocab_id in state.vocabularies:
        graph = related_terms(term, state.vocabularies[vocab_id])
    else:
        raise UnknownVocabularyError(vocab_id)
    return {
        "center": graph.center,
        "neighbors": [
            {"term": neighbor, "relation": relation}
            for neighbor, relation in graph.neighbors
        ],
        "vocabulary": graph.vocabulary,
    }


def aggregate_payload(
    state: ServiceState,
    kind: str,
    q: str,
    filters: FacetFilters,
    field_name: str = "subjects",
    k: int = DEFAULT_FACET_K,
    ref_year: int | None = None,
) -> dict[str, Any]:
    """Dispatch one aggregate kind; the CLI and tests share this entry."""
    if kind == "facets":
        return facets_payload(state, q, filters, field_name, k)
    if kind == "temporal":
        return temporal_payload(state, q, filters, ref_year)
    if kind == "spatial":
        return spatial_payload(state, q, filters)
    if kind == "coauthors":
        return coauthors_payload(state, q, filters)
    if kind == "linking":
        return linking_payload(state, q, filters)
    raise LookupError(f"unknown aggregate kind {kind!r}")


def dump_payload(payload: dict[str, Any]) -> str:
    """Serialize exactly like the HTTP layer does."""
    return json.dumps(payload, ensure_ascii=False, allow_nan=False, separators=(",", ":"))


# -- HTTP app ------------------------------------------------------------


def _http_error(status: int, message: str, offset: int | None = None) -> JSONResponse:
    detail: dict[str, Any] = {"error": message}
    if offset is not None:
        detail["offset"] = offset
    return JSONResponse(detail, status_code=status)


def create_app(
    state: ServiceState,
    static_dir: str | None = None,
    cors_origins: tuple[str, ...] = ("*",),
) -> FastAPI:
    app = FastAPI(title="biblioscope", docs_url=None, redoc_url=None)
    if cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(cors_origins),
            allow_methods=["GET"],
            allow_headers=["*"],
        )

    @app.middleware("http")
    async def _elapsed_header(request: Request, call_next):
        started = time.perf_counter()
        response = await call_next(request)
        response.headers["X-Elapsed-Ms"] = f"{(time.perf_counter() - started) * 1000:.1f}"
        return response

    @app.exception_handler(QuerySyntaxError)
    async def _syntax_error(request: Request, exc: QuerySyntaxError):
        return _http_error(400, str(exc), exc.offset)

    @app.exception_handler(UnsupportedQueryError)
    async def _unsupported_query(request: Request, exc: UnsupportedQueryError):
        return _http_error(400, str(exc))

    @app.exception_handler(UnsupportedFieldError)
    async def _unsupported_field(request: Request, exc: UnsupportedFieldError):
        return _http_error(400, str(exc))

    @app.exception_handler(ValueError)
    async def _bad_request(request: Request, exc: ValueError):
        return _http_error(400, str(exc))

    @app.exception_handler(UnknownVocabularyError)
    async def _unknown_vocab(request: Request, exc: UnknownVocabularyError):
        return _http_error(404, f"unknown vocabulary {exc.args[0]!r}")

    def filters_from(
        type_: str | None,
        database: str | None,
        person: str | None,
        subject: str | None,
        from_year: int | None,
        to_year: int | None,
    ) -> FacetFilters:
        return FacetFilters(
            info_type=type_,
            database=database,
            person=person,
            subject=subject,
            year_from=from_year,
            year_to=to_year,
        )

    @app.get("/api/search")
    async def api_search(
        q: str = "",
        type: str | None = None,
        database: str | None = None,
        person: str | None = None,
        subject: str | None = None,
        from_year: int | None = Query(None, alias="from"),
        to_year: int | None = Query(None, alias="to"),
        page: int = 0,
        size: int | None = None,
    ):
        filters = filters_from(type, database, person, subject, from_year, to_year)
        return search_payload(state, q, filters, page, size if size is not None else state.page_size)

    @app.get("/api/facets")
    async def api_facets(
        q: str = "",
        type: str | None = None,
        database: str | None = None,
        person: str | None = None,
        subject: str | None = None,
        from_year: int | None = Query(None, alias="from"),
        to_year: int | None = Query(None, alias="to"),
        field: str = "subjects",
        k: int = DEFAULT_FACET_K,
    ):
        filters = filters_from(type, database, person, subject, from_year, to_year)
        return facets_payload(state, q, filters, field, k)

    @app.get("/api/temporal")
    async def api_temporal(
        q: str = "",
        type: str | None = None,
        database: str | None = None,
        person: str | None = None,
        subject: str | None = None,
        from_year: int | None = Query(None, alias="from"),
        to_year: int | None = Query(None, alias="to"),
        ref_year: int | None = None,
    ):
        filters = filters_from(type, database, person, subject, from_year, to_year)
        return temporal_payload(state, q, filters, ref_year)

    @app.get("/api/spatial")
    async def api_spatial(
        q: str = "",
        type: str | None = None,
        database: str | None = None,
        person: str | None = None,
        subject: str | None = None,
        from_year: int | None = Query(None, alias="from"),
        to_year: int | None = Query(None, alias="to"),
    ):
        filters = filters_from(type, database, person, subject, from_year, to_year)
        return spatial_payload(state, q, filters)

    @app.get("/api/coauthors")
    async def api_coauthors(
        q: str = "",
        type: str | None = None,
        database: str | None = None,
        person: str | None = None,
        subject: str | None = None,
        from_year: int | None = Query(None, alias="from"),
        to_year: int | None = Query(None, alias="to"),
    ):
        filters = filters_from(type, database, person, subject, from_year, to_year)
        return coauthors_payload(state, q, filters)

    @app.get("/api/linking")
    async def api_linking(
        q: str = "",
        type: str | None = None,
        database: str | None = None,
        person: str | None = None,
        subject: str | None = None,
        from_year: int | None = Query(None, alias="from"),
        to_year: int | None = Query(None, alias="to"),
    ):
        filters = filters_from(type, database, person, subject, from_year, to_year)
        return linking_payload(state, q, filters)

    @app.get("/api/terms")
    async def api_terms(term: str, vocab: str):
        return terms_payload(state, term, vocab)

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    else:

        @app.get("/")
        async def api_root():
            return {
                "service": "biblioscope",
                "doc_count": state.index.doc_count,
                "vocabularies": sorted(state.vocabularies) + [RECOMMENDER_VOCAB_ID],
            }

    return app
