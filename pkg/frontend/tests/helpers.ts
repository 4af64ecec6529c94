// Test doubles: a stub Api that replays fixture payloads generated by
// the real backend, plus an independent neighbors_of reimplementation
// used to check DOM highlights against the raw linking payload.

import {
    Api,
    CoauthorsPayload,
    FacetsPayload,
    LinkingEntryPayload,
    LinkingPayload,
    SearchPayload,
    SpatialPayload,
    TemporalPayload,
    TermsPayload,
    UiQueryState,
} from "../src/api.js";

export interface Fixtures {
    meta: { top_person: string; reference_year: number };
    scenarios: Record<"base" | "person", {
        search: SearchPayload;
        temporal: TemporalPayload;
        spatial: SpatialPayload;
        persons: FacetsPayload;
        keywords: FacetsPayload;
        coauthors: CoauthorsPayload;
        linking: LinkingPayload;
    }>;
    terms: Record<string, TermsPayload>;
}

export interface RecordedCall {
    method: string;
    state?: UiQueryState;
    args: unknown[];
}

export class FixtureClient implements Api {
    calls: RecordedCall[] = [];

    constructor(private fx: Fixtures, private delayMs = 0) {}

    private scenario(state: UiQueryState) {
        const filtered = Boolean(state.filters.person) || state.q.includes("person:");
        return filtered ? this.fx.scenarios.person : this.fx.scenarios.base;
    }

    private async serve<T>(value: T): Promise<T> {
        if (this.delayMs > 0) {
            await new Promise((resolve) => setTimeout(resolve, this.delayMs));
        }
        return structuredClone(value);
    }

    search(state: UiQueryState, size: number): Promise<SearchPayload> {
        this.calls.push({ method: "search", state, args: [size] });
        return this.serve(this.scenario(state).search);
    }

    facets(state: UiQueryState, field: string, k: number): Promise<FacetsPayload> {
        this.calls.push({ method: "facets", state, args: [field, k] });
        const scenario = this.scenario(state);
        return this.serve(field === "persons" ? scenario.persons : scenario.keywords);
    }

    temporal(state: UiQueryState): Promise<TemporalPayload> {
        this.calls.push({ method: "temporal", state, args: [] });
        return this.serve(this.scenario(state).temporal);
    }

    spatial(state: UiQueryState): Promise<SpatialPayload> {
        this.calls.push({ method: "spatial", state, args: [] });
        return this.serve(this.scenario(state).spatial);
    }

    coauthors(state: UiQueryState): Promise<CoauthorsPayload> {
        this.calls.push({ method: "coauthors", state, args: [] });
        return this.serve(this.scenario(state).coauthors);
    }

    linking(state: UiQueryState): Promise<LinkingPayload> {
        this.calls.push({ method: "linking", state, args: [] });
        return this.serve(this.scenario(state).linking);
    }

    terms(term: string, vocab: string): Promise<TermsPayload> {
        this.calls.push({ method: "terms", args: [term, vocab] });
        const payload = this.fx.terms[term] ?? { center: term, neighbors: [], vocabulary: vocab };
        return this.serve(payload);
    }
}

/** Independent of src/linking.ts: neighbors straight off the payload. */
export function expectedNeighbors(
    entries: LinkingEntryPayload[],
    field: string,
    value: string,
): { field: string; value: string; intensity: number }[] {
    const wanted = value.toLowerCase();
    const out: { field: string; value: string; intensity: number }[] = [];
    for (const entry of entries) {
        if (entry.field_a === field && entry.value_a.toLowerCase() === wanted) {
            out.push({ field: entry.field_b, value: entry.value_b, intensity: entry.intensity });
        } else if (entry.field_b === field && entry.value_b.toLowerCase() === wanted) {
            out.push({ field: entry.field_a, value: entry.value_a, intensity: entry.intensity });
        }
    }
    return out;
}

export function brushClassOf(element: Element): number | null {
    for (let i = 1; i <= 5; i += 1) {
        if (element.classList.contains(`brush-${i}`)) return i;
    }
    return null;
}

/** Elements currently carrying any brushing highlight class. */
export function litElements(): Element[] {
    const selector = [1, 2, 3, 4, 5].map((i) => `.brush-${i}`).concat(".brush-self").join(",");
    return Array.from(document.querySelectorAll(selector));
}

export function hover(element: Element): void {
    element.dispatchEvent(new MouseEvent("mouseenter"));
}

export function unhover(element: Element): void {
    element.dispatchEvent(new MouseEvent("mouseleave"));
}
