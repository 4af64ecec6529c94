// Typed client for the biblioscope HTTP API. UiQueryState serializes to
// exactly the API parameter set; every endpoint shares it.

export interface QueryFilters {
    type?: string;
    database?: string;
    person?: string;
    subject?: string;
    from?: number;
    to?: number;
}

export interface UiQueryState {
    q: string;
    filters: QueryFilters;
    page: number;
}

export interface RecordPayload {
    id: string;
    title: string | null;
    persons: string[];
    subjects: string[];
    year: number | null;
    locations: string[];
    info_type: string | null;
    database: string | null;
    source: string | null;
    institutions: string[];
    language: string | null;
}

export interface SearchPayload {
    total: number;
    page: number;
    size: number;
    filters: Record<string, unknown>;
    records: RecordPayload[];
}

export interface FacetCountPayload {
    value: string;
    count: number;
}

export interface FacetsPayload {
    field: string;
    counts: FacetCountPayload[];
}

export interface TemporalPayload {
    bins: { year: number; count: number }[];
    chart_kind: "bar" | "line";
    covered: number;
    uncovered: number;
}

export interface SpatialPayload {
    buckets: { name: string; lat: number; lon: number; count: number }[];
    unresolved: { name: string; count: number }[];
    bbox: { min_lat: number; max_lat: number; min_lon: number; max_lon: number } | null;
}

export interface CoauthorsPayload {
    nodes: { name: string; count: number }[];
    edges: { a: string; b: string; count: number }[];
}

export interface LinkingEntryPayload {
    field_a: string;
    value_a: string;
    field_b: string;
    value_b: string;
    count: number;
    intensity: number;
}

export interface LinkingPayload {
    entries: LinkingEntryPayload[];
    top_persons: string[];
    top_keywords: string[];
    subset_size: number;
}

export interface TermsPayload {
    center: string;
    neighbors: { term: string; relation: string }[];
    vocabulary: string;
}

export function stateParams(state: UiQueryState): URLSearchParams {
    const params = new URLSearchParams();
    params.set("q", state.q);
    const f = state.filters;
    if (f.type) params.set("type", f.type);
    if (f.database) params.set("database", f.database);
    if (f.person) params.set("person", f.person);
    if (f.subject) params.set("subject", f.subject);
    if (f.from !== undefined) params.set("from", String(f.from));
    if (f.to !== undefined) params.set("to", String(f.to));
    return params;
}

export class ApiError extends Error {
    status: number;

    constructor(status: number, message: string) {
        super(message);
        this.status = status;
    }
}

async function getJson<T>(base: string, path: string, params: URLSearchParams): Promise<T> {
    const url = `${base}${path}?${params.toString()}`;
    const resp = await fetch(url);
    if (!resp.ok) {
        let detail = `${resp.status}`;
        try {
            const body = (await resp.json()) as { error?: string };
            if (body.error) detail = body.error;
        } catch {
            // non-JSON error body; keep the status text
        }
        throw new ApiError(resp.status, detail);
    }
    return (await resp.json()) as T;
}

/** What the views need from the backend; ApiClient is the HTTP one. */
export interface Api {
    search(state: UiQueryState, size: number): Promise<SearchPayload>;
    facets(state: UiQueryState, field: string, k: number): Promise<FacetsPayload>;
    temporal(state: UiQueryState): Promise<TemporalPayload>;
    spatial(state: UiQueryState): Promise<SpatialPayload>;
    coauthors(state: UiQueryState): Promise<CoauthorsPayload>;
    linking(state: UiQueryState): Promise<LinkingPayload>;
    terms(term: string, vocab: string): Promise<TermsPayload>;
}

export class ApiClient implements Api {
    constructor(private base: string = "") {}

    search(state: UiQueryState, size: number): Promise<SearchPayload> {
        const params = stateParams(state);
        params.set("page", String(state.page));
        params.set("size", String(size));
        return getJson(this.base, "/api/search", params);
    }

    facets(state: UiQueryState, field: string, k: number): Promise<FacetsPayload> {
        const params = stateParams(state);
        params.set("field", field);
        params.set("k", String(k));
        return getJson(this.base, "/api/facets", params);
    }

    temporal(state: UiQueryState): Promise<TemporalPayload> {
        return getJson(this.base, "/api/temporal", stateParams(state));
    }

    spatial(state: UiQueryState): Promise<SpatialPayload> {
        return getJson(this.base, "/api/spatial", stateParams(state));
    }

    coauthors(state: UiQueryState): Promise<CoauthorsPayload> {
        return getJson(this.base, "/api/coauthors", stateParams(state));
    }

    linking(state: UiQueryState): Promise<LinkingPayload> {
        return getJson(this.base, "/api/linking", stateParams(state));
    }

    terms(term: string, vocab: string): Promise<TermsPayload> {
        const params = new URLSearchParams({ term, vocab });
        return getJson(this.base, "/api/terms", params);
    }
}
