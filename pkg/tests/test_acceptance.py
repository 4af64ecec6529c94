"""Acceptance suite: one test per release criterion, exact tolerances.

Every oracle comparison is exact equality (no numeric tolerances); the
two timing criteria use the wall-clock budgets stated in each test. Each
test prints one ``ACCEPTANCE <name>: PASS``/``FAIL`` line.
"""

import functools
import random
import statistics
import time

import pytest
from fastapi.testclient import TestClient

from biblioscope.analytics import Gazetteer, spatial_distribution, temporal_distribution, top_facet_chart
from biblioscope.graphs import coauthor_graph
from biblioscope.index import ResultSet, build_index
from biblioscope.linking import LinkingKey, build_linking_table, linking_subset, normalize_intensity
from biblioscope.query import And, FacetFilters, MatchAll, Or, evaluate
from biblioscope.records import Record
from biblioscope.service import ServiceState, create_app
from biblioscope.vocabulary import RELATION_INVERSE, load_vocabulary, related_terms

from oracles import (
    naive_coauthor,
    naive_facet_counts,
    naive_linking,
    naive_search,
    naive_spatial,
    naive_temporal,
)
from synth import make_corpus, random_ast, random_filters

NO_FILTERS = FacetFilters()


def criterion(name):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                result = fn(*args, **kwargs)
            except BaseException:
                print(f"ACCEPTANCE {name}: FAIL")
                raise
            print(f"ACCEPTANCE {name}: PASS")
            return result

        return wrapper

    return decorate


def _table_dict(table):
    return {
        (k.field_a, k.value_a, k.field_b, k.value_b): (e.count, e.intensity)
        for k, e in table.entries.items()
    }


@criterion("linking oracle equivalence (50 corpora x 10 queries, <60s)")
def test_linking_oracle_equivalence():
    started = time.perf_counter()
    rng = random.Random(101)
    checked = 0
    nonempty_tables = 0
    for corpus_no in range(50):
        n_docs = rng.randint(100, 1000)
        records = make_corpus(
            rng,
            n_docs,
            n_persons=rng.randint(3, 30),
            n_keywords=rng.randint(3, 30),
            n_locations=rng.randint(3, 30),
            year_range=(1960, 2010),
        )
        index = build_index(records)
        for query_no in range(10):
            ast = random_ast(rng, records)
            filters = random_filters(rng, records)
            table = build_linking_table(index, ast, filters)
            oracle = naive_linking(records, ast, filters)
            assert list(table.top_persons) == oracle["top_persons"]
            assert list(table.top_keywords) == oracle["top_keywords"]
            subset, _, _ = linking_subset(index, ast, filters)
            assert list(subset.ordinals) == oracle["subset"]
            assert table.subset_size == len(oracle["subset"])
            assert _table_dict(table) == oracle["entries"]
            checked += 1
            if table.entries:
                nonempty_tables += 1
    elapsed = time.perf_counter() - started
    assert checked == 500
    assert nonempty_tables >= 100, "random mix should exercise non-trivial tables"
    assert elapsed < 60.0, f"linking acceptance took {elapsed:.1f}s"


@criterion("worked shape: 123 shared docs -> count 123, intensity 5")
def test_worked_shape_123_shared_documents():
    records = [
        Record(id=f"d{i}", persons=("Anna Weber",), subjects=("internet",), year=1990 + i % 5)
        for i in range(123)
    ]
    records += [
        Record(id=f"x{i}", persons=("Jonas Koch", "Anna Weber"), subjects=("climate",), year=2001)
        for i in range(7)
    ]
    index = build_index(records)
    table = build_linking_table(index, MatchAll(), NO_FILTERS)
    entry = table.entries[LinkingKey.canonical("person", "Anna Weber", "keyword", "internet")]
    assert entry.count == 123
    max_count = max(e.count for e in table.entries.values())
    assert entry.count == max_count
    assert entry.intensity == 5


@criterion("intensity properties on 10,000 random count maps")
def test_intensity_properties_ten_thousand_maps():
    rng = random.Random(102)
    for _ in range(10_000):
        size = rng.randint(1, 12)
        counts = {
            LinkingKey.canonical("person", f"P{i}", "keyword", f"K{i}"): rng.randint(1, 10_000)
            for i in range(size)
        }
        entries = normalize_intensity(counts)
        assert set(entries) == set(counts)
        max_count = max(counts.values())
        for k, entry in entries.items():
            assert 1 <= entry.intensity <= 5
            if counts[k] == max_count:
                assert entry.intensity == 5
        ranked = sorted(counts.items(), key=lambda item: item[1])
        for (k1, _), (k2, _) in zip(ranked, ranked[1:]):
            assert entries[k1].intensity <= entries[k2].intensity
        scale = rng.choice([2, 5, 13])
        scaled = normalize_intensity({k: c * scale for k, c in counts.items()})
        assert {k for k, e in entries.items() if e.intensity == 5} == {
            k for k, e in scaled.items() if e.intensity == 5
        }


@criterion("boolean semantics: 100 random ASTs match naive evaluator")
def test_boolean_semantics_against_naive_evaluator():
    rng = random.Random(103)
    records = make_corpus(rng, 200, n_persons=10, n_keywords=12, n_locations=6)
    index = build_index(records)
    for _ in range(100):
        ast = random_ast(rng, records)
        filters = random_filters(rng, records)
        got = evaluate(ast, filters, index)
        assert list(got.ordinals) == naive_search(records, ast, filters)
    for _ in range(30):
        a = random_ast(rng, records, depth=2)
        b = random_ast(rng, records, depth=2)
        sa = set(evaluate(a, NO_FILTERS, index).ordinals)
        sb = set(evaluate(b, NO_FILTERS, index).ordinals)
        assert set(evaluate(And((a, b)), NO_FILTERS, index).ordinals) == sa & sb
        assert set(evaluate(Or((a, b)), NO_FILTERS, index).ordinals) == sa | sb


@criterion("facet/temporal/spatial/co-author oracle equivalence, exact")
def test_aggregate_oracle_equivalence():
    rng = random.Random(104)
    records = make_corpus(rng, 1000, n_persons=20, n_keywords=24, n_locations=12)
    index = build_index(records)
    location_keys = sorted({v.casefold() for r in records for v in r.locations})
    gaz_entries = {
        key: (rng.uniform(-60, 60), rng.uniform(-150, 150)) for key in location_keys[:-3]
    }
    gazetteer = Gazetteer(gaz_entries)

    for _ in range(20):
        ordinals = sorted(rng.sample(range(len(records)), rng.randint(0, 900)))
        rs = ResultSet(tuple(ordinals))

        for field in ("persons", "subjects", "locations", "info_type", "database", "year"):
            k = rng.choice([1, 5, 50, 10_000])
            got = index.facet_counts(rs, field, k)
            assert [(fc.value, fc.count) for fc in got] == naive_facet_counts(records, ordinals, field, k)

        ref = rng.choice([2000, 2010])
        hist = temporal_distribution(index, rs, ref)
        bins, kind, covered, uncovered = naive_temporal(records, ordinals, ref)
        assert hist.bins == bins and hist.chart_kind == kind
        assert (hist.covered, hist.uncovered) == (covered, uncovered)

        spatial = spatial_distribution(index, rs, gazetteer)
        buckets, unresolved, bbox = naive_spatial(records, ordinals, gaz_entries)
        assert [(b.name, b.lat, b.lon, b.count) for b in spatial.buckets] == buckets
        assert list(spatial.unresolved) == unresolved
        got_bbox = None
        if spatial.bbox is not None:
            got_bbox = (spatial.bbox.min_lat, spatial.bbox.max_lat, spatial.bbox.min_lon, spatial.bbox.max_lon)
        assert got_bbox == bbox

        graph = coauthor_graph(index, rs)
        nodes, edges = naive_coauthor(records, ordinals)
        assert [(n.name, n.count) for n in graph.nodes] == nodes
        assert [(e.a, e.b, e.count) for e in graph.edges] == edges

    # chart-kind boundary: nonzero span of exactly 14 -> bar, 15 -> line
    idx14 = build_index([Record(id="a", year=1997), Record(id="b", year=2010)])
    assert temporal_distribution(idx14, idx14.all_docs(), 2010).chart_kind == "bar"
    idx15 = build_index([Record(id="a", year=1996), Record(id="b", year=2010)])
    assert temporal_distribution(idx15, idx15.all_docs(), 2010).chart_kind == "line"


@criterion("top-K limits: 50 subjects, 50 co-author nodes, 10 anchors")
def test_top_k_limits():
    records = []
    for i in range(80):
        records.append(
            Record(
                id=f"d{i}",
                persons=(f"Author {i:03d}", "Hub Person"),
                subjects=(f"topic {i:03d}", "shared topic"),
                year=2000,
            )
        )
    index = build_index(records)
    rs = index.all_docs()

    assert len(top_facet_chart(index, rs, "subjects")) == 50
    assert len(coauthor_graph(index, rs).nodes) == 50
    _, top_persons, top_keywords = linking_subset(index, MatchAll(), NO_FILTERS)
    assert len(top_persons) == 10
    assert len(top_keywords) == 10


@criterion("vocabulary closure and broader-term lookup")
def test_vocabulary_closure_and_broader_lookup(tmp_path):
    rng = random.Random(105)
    for file_no in range(10):
        terms = [f"concept {i:02d}" for i in range(rng.randint(5, 25))]
        lines = []
        for _ in range(rng.randint(5, 80)):
            a, b = rng.sample(terms, 2)
            lines.append(f"{a}\t{rng.choice(list(RELATION_INVERSE))}\t{b}")
        path = tmp_path / f"vocab{file_no}.tsv"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        vocab = load_vocabulary(f"v{file_no}", path)
        triples = set(vocab.relations())
        assert triples, "generated vocabulary should not be empty"
        for term_a, relation, term_b in triples:
            assert term_a != term_b
            assert (term_b, RELATION_INVERSE[relation], term_a) in triples

    fixture = tmp_path / "fixture.tsv"
    fixture.write_text("digital divide\tbroader\tsocial inequality\n", encoding="utf-8")
    vocab = load_vocabulary("core", fixture)
    graph = related_terms("digital divide", vocab)
    assert ("social inequality", "broader") in graph.neighbors


def _zipf_choices(rng, pool, k):
    weights = [1.0 / (rank + 1) for rank in range(len(pool))]
    picked = rng.choices(pool, weights=weights, k=k)
    return tuple(dict.fromkeys(picked))


@pytest.fixture(scope="module")
def large_state():
    from synth import INFO_TYPES, DATABASES, TITLE_WORDS, person_pool, keyword_pool, location_pool

    rng = random.Random(106)
    persons = person_pool(2000)
    keywords = keyword_pool(500)
    locations = location_pool(60)
    records = []
    for i in range(100_000):
        records.append(
            Record(
                id=f"d{i:06d}",
                title=" ".join(rng.choices(TITLE_WORDS, k=4)),
                persons=_zipf_choices(rng, persons, rng.randint(1, 3)),
                subjects=_zipf_choices(rng, keywords, rng.randint(1, 4)),
                year=rng.randint(1960, 2010) if rng.random() > 0.05 else None,
                locations=_zipf_choices(rng, locations, rng.randint(0, 2)),
                info_type=rng.choice(INFO_TYPES),
                database=rng.choice(DATABASES),
            )
        )
    index = build_index(records)
    return ServiceState(index=index, gazetteer=Gazetteer({}), vocabularies={}, reference_year=2010)


@criterion("100k-doc latency: median search+facets <100ms, linking <2s")
def test_latency_on_large_corpus(large_state):
    client = TestClient(create_app(large_state))
    queries = [
        "",
        "keyword:internet",
        "keyword:globalization AND type:literature",
        'person:"Anna Weber"',
        "digital OR media",
        "keyword:family year:[1990 TO 2005]",
        "title:survey",
        "keyword:poverty OR keyword:housing",
        "database:alpha AND keyword:voting",
        'keyword:"health care"',
        "migration",
    ]
    pair_times = []
    for q in queries:
        started = time.perf_counter()
        assert client.get("/api/search", params={"q": q}).status_code == 200
        assert client.get("/api/facets", params={"q": q, "field": "subjects", "k": 50}).status_code == 200
        pair_times.append(time.perf_counter() - started)
    median_pair = statistics.median(pair_times)
    assert median_pair < 0.100, f"median search+facets {median_pair * 1000:.1f}ms"

    linking_times = []
    for q in ["", "keyword:internet", "type:literature", "digital OR media", "keyword:family"]:
        started = time.perf_counter()
        resp = client.get("/api/linking", params={"q": q})
        assert resp.status_code == 200
        linking_times.append(time.perf_counter() - started)
    median_linking = statistics.median(linking_times)
    assert median_linking < 2.0, f"median linking {median_linking * 1000:.0f}ms"


@criterion("primary suite is self-contained: CLI + API only, no UI")
def test_api_complete_without_ui():
    records = make_corpus(random.Random(107), 50)
    index = build_index(records)
    state = ServiceState(index=index, gazetteer=Gazetteer({}), vocabularies={}, reference_year=2010)
    client = TestClient(create_app(state, static_dir=None))
    for path, params in [
        ("/api/search", {"q": ""}),
        ("/api/facets", {"q": "", "field": "persons", "k": 10}),
        ("/api/temporal", {"q": ""}),
        ("/api/spatial", {"q": ""}),
        ("/api/coauthors", {"q": ""}),
        ("/api/linking", {"q": ""}),
        ("/api/terms", {"term": "internet", "vocab": "recommender"}),
    ]:
        assert client.get(path, params=params).status_code == 200
