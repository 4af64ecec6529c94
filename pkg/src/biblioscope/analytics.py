"""Chart-ready aggregates: temporal histogram, map buckets, top-K facets.

All computations are pure functions of an immutable index plus a result
set, so concurrent use needs no coordination. Filtering (by information
type, location, ...) happens upstream through facet filters; these
functions only aggregate whatever result set they are given.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .index import FacetCount, Index, ResultSet
from .records import YEAR_MAX, YEAR_MIN

#: The temporal chart always covers this many consecutive years.
WINDOW_YEARS = 50

#: Data spanning fewer than this many years renders as bars, not a line.
BAR_SPAN_LIMIT = 15

#: Hard cap on the facet bar chart length.
TOP_FACET_LIMIT = 50


@dataclass(frozen=True)
class TemporalHistogram:
    """Per-year counts over a fixed window ending at the reference year."""

    bins: tuple[tuple[int, int], ...]
    chart_kind: str  # "bar" | "line"
    covered: int
    uncovered: int


@dataclass(frozen=True)
class SpatialBucket:
    name: str
    lat: float
    lon: float
    count: int


@dataclass(frozen=True)
class BBox:
    min_lat: float
    max_lat: float
    min_lon: float
    max_lon: float


@dataclass(frozen=True)
class SpatialBuckets:
    """Geocoded location counts plus the locations the gazetteer missed."""

    buckets: tuple[SpatialBucket, ...]
    unresolved: tuple[tuple[str, int], ...]
    bbox: BBox | None


class GazetteerError(ValueError):
    """Gazetteer file line that cannot be used."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class Gazetteer:
    """Location name -> (lat, lon); names are matched case-folded."""

    def __init__(self, entries: dict[str, tuple[float, float]]):
        self._entries = dict(entries)

    def lookup(self, name: str) -> tuple[float, float] | None:
        return self._entries.get(name.casefold())

    def __len__(self) -> int:
        return len(self._entries)


def load_gazetteer(path: str | Path) -> Gazetteer:
    """Read a tab-separated "name<TAB>lat<TAB>lon" file.

    Later duplicates override earlier ones. Coordinates outside the valid
    degree ranges are rejected.
    """
    entries: dict[str, tuple[float, float]] = {}
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise GazetteerError("expected name<TAB>lat<TAB>lon", line_no)
            name, lat_text, lon_text = parts
            name = name.strip()
            if not name:
                raise GazetteerError("empty location name", line_no)
            try:
                lat, lon = float(lat_text), float(lon_text)
            except ValueError:
                raise GazetteerError(f"bad coordinates {lat_text!r}/{lon_text!r}", line_no)
            if not -90.0 <= lat <= 90.0 or not -180.0 <= lon <= 180.0:
                raise GazetteerError(f"coordinates out of range: {lat}, {lon}", line_no)
            entries[name.casefold()] = (lat, lon)
    return Gazetteer(entries)


def temporal_distribution(index: Index, rs: ResultSet, reference_year: int) -> TemporalHistogram:
    """Yearly document counts over the window ending at ``reference_year``.

    The window is fixed at 50 years and zero-filled; documents with an
    absent or out-of-window year are reported in ``uncovered``. The chart
    kind follows the span of nonzero data: under 15 years it is a bar
    chart, otherwise a line chart.
    """
    if not YEAR_MIN <= reference_year <= YEAR_MAX:
        raise ValueError(f"implausible reference year {reference_year}")
    first = reference_year - (WINDOW_YEARS - 1)
    counts = [0] * WINDOW_YEARS
    covered = 0
    years = index.years
    for d in rs.ordinals:
        year = years[d]
        if year is not None and first <= year <= reference_year:
            counts[year - first] += 1
            covered += 1
    nonzero = [i for i, c in enumerate(counts) if c]
    if nonzero:
        span = nonzero[-1] - nonzero[0] + 1
        chart_kind = "bar" if span < BAR_SPAN_LIMIT else "line"
    else:
        chart_kind = "bar"
    bins = tuple((first + i, counts[i]) for i in range(WINDOW_YEARS))
    return TemporalHistogram(bins, chart_kind, covered, rs.total - covered)


def spatial_distribution(index: Index, rs: ResultSet, gazetteer: Gazetteer) -> SpatialBuckets:
    """Per-location document counts, geocoded through the gazetteer.

    A document with several locations contributes to each of them. Missing
    gazetteer entries are data, not errors: they land in ``unresolved``.
    The bounding box is tight over the resolved buckets.
    """
    counts: Counter = Counter()
    column = index.columns["locations"]
    for d in rs.ordinals:
        for key in column[d]:
            counts[key] += 1

    buckets = []
    unresolved = []
    for key, count in sorted(counts.items(), key=lambda item: (-item[1], item[0])):
        name = index.display_value("locations", key)
        coords = gazetteer.lookup(key)
        if coords is None:
            unresolved.append((name, count))
        else:
            buckets.append(SpatialBucket(name, coords[0], coords[1], count))

    bbox = None
    if buckets:
        bbox = BBox(
            min(b.lat for b in buckets),
            max(b.lat for b in buckets),
            min(b.lon for b in buckets),
            max(b.lon for b in buckets),
        )
    return SpatialBuckets(tuple(buckets), tuple(unresolved), bbox)


def top_facet_chart(index: Index, rs: ResultSet, field: str) -> list[FacetCount]:
    """Facet bar-chart data: the up-to-50 most frequent values of a field."""
    return index.facet_counts(rs, field, TOP_FACET_LIMIT)
