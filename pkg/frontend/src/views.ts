// View orchestration: one UiQueryState drives every view; refreshes are
// generation-tagged so responses for superseded states are discarded;
// failures show an inline banner while views keep their last good data.

import {
    Api,
    CoauthorsPayload,
    FacetsPayload,
    LinkingPayload,
    SearchPayload,
    SpatialPayload,
    TemporalPayload,
    TermsPayload,
    UiQueryState,
} from "./api.js";
import { renderFacetBars, renderTemporal } from "./charts.js";
import { clear, el } from "./dom.js";
import { BrushController, LinkingIndex } from "./linking.js";
import { renderMap } from "./map.js";
import { renderNetwork } from "./network.js";
import { QueryStore } from "./state.js";

const FOLD_KEY = "biblioscope.panel.folded";

export interface AppOptions {
    pageSize?: number;
    vocabularies?: string[];
    lingerMs?: number;
}

/** Related-term center: the subject filter, else a term from the query. */
export function extractTerm(state: UiQueryState): string | null {
    if (state.filters.subject) return state.filters.subject;
    const q = state.q;
    const keywordQuoted = q.match(/keyword:"([^"]+)"/);
    if (keywordQuoted) return keywordQuoted[1];
    const keywordBare = q.match(/keyword:([^\s()":[\]]+)/);
    if (keywordBare) return keywordBare[1];
    const phrase = q.match(/"([^"]+)"/);
    if (phrase) return phrase[1];
    for (const token of q.split(/\s+/)) {
        if (!token || ["AND", "OR", "NOT"].includes(token)) continue;
        if (token.includes(":") || token.includes("(") || token.includes(")")) continue;
        return token;
    }
    return null;
}

export class App {
    readonly store: QueryStore;
    readonly brush: BrushController;
    private api: Api;
    private root: HTMLElement;
    private pageSize: number;
    private vocabularies: string[];
    private pending: Promise<void> = Promise.resolve();

    private banner!: HTMLElement;
    private panel!: HTMLElement;
    private views!: Record<string, HTMLElement>;
    private vocabSelect!: HTMLSelectElement;
    private searchInput!: HTMLInputElement;
    private filterBar!: HTMLElement;

    constructor(root: HTMLElement, api: Api, options: AppOptions = {}) {
        this.root = root;
        this.api = api;
        this.store = new QueryStore();
        this.pageSize = options.pageSize ?? 10;
        this.vocabularies = options.vocabularies ?? [];
        this.buildShell();
        this.brush = new BrushController(this.panel, options.lingerMs ?? 500);
        this.store.subscribe((state, generation) => {
            this.pending = this.refresh(state, generation);
        });
    }

    start(initial?: UiQueryState): Promise<void> {
        if (initial) {
            this.searchInput.value = initial.q;
            this.store.newSearch(initial.q);
            for (const [key, value] of Object.entries(initial.filters)) {
                if (value !== undefined) this.store.setFilter(key as never, value as never);
            }
            if (initial.page > 0) this.store.setPage(initial.page);
        } else {
            this.store.newSearch("");
        }
        return this.pending;
    }

    whenIdle(): Promise<void> {
        return this.pending;
    }

    // -- shell ----------------------------------------------------------

    private buildShell(): void {
        clear(this.root);
        this.banner = el("div", { id: "error-banner", class: "error-banner", hidden: true });

        this.searchInput = el("input", {
            id: "search-input",
            type: "search",
            placeholder: "query, e.g. keyword:internet AND year:[1995 TO 2010]",
        });
        const form = el("form", { id: "search-form" }, this.searchInput, el("button", { type: "submit" }, "Search"));
        form.addEventListener("submit", (event) => {
            event.preventDefault();
            this.store.newSearch(this.searchInput.value);
        });

        this.filterBar = el("div", { id: "filter-bar" });

        const foldButton = el("button", { id: "fold-toggle", type: "button" }, "");
        this.panel = el("section", { id: "viz-panel" });
        const folded = this.loadFolded();
        this.applyFold(foldButton, folded);
        foldButton.addEventListener("click", () => {
            const next = this.panel.hidden !== true;
            this.saveFolded(next);
            this.applyFold(foldButton, next);
        });

        this.views = {
            temporal: el("div", { id: "temporal-view", class: "view" }),
            map: el("div", { id: "map-view", class: "view" }),
            persons: el("div", { id: "persons-view", class: "view" }),
            keywords: el("div", { id: "keywords-view", class: "view" }),
            coauthors: el("div", { id: "coauthors-view", class: "view" }),
            terms: el("div", { id: "terms-view", class: "view" }),
            results: el("div", { id: "results-view" }),
        };

        this.vocabSelect = el("select", { id: "vocab-select" });
        for (const vocabId of ["recommender", ...this.vocabularies]) {
            this.vocabSelect.append(el("option", { value: vocabId }, vocabId));
        }
        this.vocabSelect.addEventListener("change", () => {
            this.pending = this.refresh(this.store.get(), this.store.generation);
        });

        const legend = el(
            "div",
            { id: "legend" },
            el("span", { class: "legend-item" }, "➤ search or filter from any item"),
            el("span", { class: "legend-item legend-ramp" },
                "shared documents:",
                ...[1, 2, 3, 4, 5].map((i) => el("span", { class: `swatch ramp-${i}` }, String(i))),
            ),
            el("span", { class: "legend-item" }, "hover an item to highlight linked values"),
        );

        this.panel.append(
            this.wrapView("Results over time", this.views.temporal),
            this.wrapView("Results on the map", this.views.map),
            this.wrapView("Top persons", this.views.persons),
            this.wrapView("Top keywords", this.views.keywords),
            this.wrapView("Co-author network", this.views.coauthors),
            this.wrapView("Related terms", this.views.terms, this.vocabSelect),
            legend,
        );

        this.root.append(this.banner, form, this.filterBar, foldButton, this.panel, this.views.results);
    }

    private wrapView(title: string, view: HTMLElement, extra?: HTMLElement): HTMLElement {
        const header = el("h3", {}, title);
        if (extra) header.append(" ", extra);
        return el("div", { class: "view-box" }, header, view);
    }

    private loadFolded(): boolean {
        try {
            return localStorage.getItem(FOLD_KEY) === "1";
        } catch {
            return false;
        }
    }

    private saveFolded(folded: boolean): void {
        try {
            localStorage.setItem(FOLD_KEY, folded ? "1" : "0");
        } catch {
            // private mode etc.; fold state just won't persist
        }
    }

    private applyFold(button: HTMLElement, folded: boolean): void {
        this.panel.hidden = folded;
        button.textContent = folded ? "Show statistics" : "Hide statistics";
    }

    // -- refresh ----------------------------------------------------------

    async refresh(state: UiQueryState, generation: number): Promise<void> {
        const term = extractTerm(state);
        const vocab = this.vocabSelect.value || "recommender";
        const tasks: [string, Promise<unknown> | null][] = [
            ["search", this.api.search(state, this.pageSize)],
            ["temporal", this.api.temporal(state)],
            ["spatial", this.api.spatial(state)],
            ["persons", this.api.facets(state, "persons", 10)],
            ["keywords", this.api.facets(state, "subjects", 10)],
            ["coauthors", this.api.coauthors(state)],
            ["linking", this.api.linking(state)],
            ["terms", term ? this.api.terms(term, vocab) : null],
        ];
        const settled = await Promise.allSettled(tasks.map(([, p]) => p ?? Promise.resolve(null)));
        if (generation !== this.store.generation) return; // superseded

        const payloads: Record<string, unknown> = {};
        const errors: string[] = [];
        tasks.forEach(([name], i) => {
            const outcome = settled[i];
            if (outcome.status === "fulfilled") payloads[name] = outcome.value;
            else errors.push(`${name}: ${(outcome.reason as Error).message}`);
        });

        if (errors.length > 0) {
            this.banner.textContent = `some views could not refresh - ${errors.join("; ")}`;
            this.banner.hidden = false;
        } else {
            this.banner.hidden = true;
            this.banner.textContent = "";
        }

        if (payloads.linking !== undefined) {
            this.brush.setTable(new LinkingIndex((payloads.linking as LinkingPayload).entries));
        }
        if (payloads.search !== undefined) {
            this.renderResults(payloads.search as SearchPayload, state);
        }
        if (payloads.temporal !== undefined) {
            renderTemporal(this.views.temporal, payloads.temporal as TemporalPayload, this.brush);
        }
        if (payloads.spatial !== undefined) {
            renderMap(this.views.map, payloads.spatial as SpatialPayload, this.brush);
        }
        if (payloads.persons !== undefined) {
            renderFacetBars(this.views.persons, payloads.persons as FacetsPayload, this.brush, {
                brushField: "person",
                actionTitle: "filter results to this person",
                onAction: (value) => this.store.setFilter("person", value),
            });
        }
        if (payloads.keywords !== undefined) {
            renderFacetBars(this.views.keywords, payloads.keywords as FacetsPayload, this.brush, {
                brushField: "keyword",
                actionTitle: "filter results to this keyword",
                onAction: (value) => this.store.setFilter("subject", value),
            });
        }
        if (payloads.coauthors !== undefined) {
            this.renderCoauthors(payloads.coauthors as CoauthorsPayload);
        }
        if (payloads.terms !== undefined) {
            this.renderTerms(payloads.terms as TermsPayload | null);
        }
        this.renderFilterBar(state);
    }

    // -- individual views --------------------------------------------------

    private renderResults(payload: SearchPayload, state: UiQueryState): void {
        const container = this.views.results;
        clear(container);
        const pages = Math.max(1, Math.ceil(payload.total / payload.size));
        container.append(el("div", { class: "result-total" }, `${payload.total} results`));
        const list = el("ol", { class: "result-list", start: payload.page * payload.size + 1 });
        for (const record of payload.records) {
            const meta: string[] = [];
            if (record.persons.length) meta.push(record.persons.join("; "));
            if (record.year !== null) meta.push(String(record.year));
            if (record.source) meta.push(record.source);
            list.append(
                el(
                    "li",
                    { class: "result-item" },
                    el("div", { class: "result-title" }, record.title ?? record.id),
                    el("div", { class: "result-meta" }, meta.join(" · ")),
                    el("div", { class: "result-subjects" }, record.subjects.join(", ")),
                ),
            );
        }
        container.append(list);

        const prev = el("button", { class: "page-prev", type: "button" }, "‹ previous") as HTMLButtonElement;
        const next = el("button", { class: "page-next", type: "button" }, "next ›") as HTMLButtonElement;
        prev.disabled = payload.page <= 0;
        next.disabled = payload.page + 1 >= pages;
        prev.addEventListener("click", () => this.store.setPage(state.page - 1));
        next.addEventListener("click", () => this.store.setPage(state.page + 1));
        container.append(
            el("div", { class: "pagination" }, prev, el("span", {}, ` page ${payload.page + 1} of ${pages} `), next),
        );
    }

    private renderCoauthors(payload: CoauthorsPayload): void {
        renderNetwork(
            this.views.coauthors,
            payload.nodes.map((n) => ({
                id: n.name,
                label: `${n.name} (${n.count})`,
                brushField: "person" as const,
            })),
            payload.edges.map((e) => ({ a: e.a, b: e.b, label: String(e.count) })),
            this.brush,
            {
                emptyNote: "no co-authors in this result set",
                actionTitle: "new search for this author",
                onAction: (name) => {
                    const q = `person:"${name}"`;
                    this.searchInput.value = q;
                    this.store.newSearch(q);
                },
            },
        );
    }

    private renderTerms(payload: TermsPayload | null): void {
        if (payload === null) {
            clear(this.views.terms);
            this.views.terms.append(el("div", { class: "empty-note" }, "enter a search term"));
            return;
        }
        const nodes = [
            { id: payload.center, label: payload.center, center: true },
            ...payload.neighbors.map((n) => ({ id: n.term, label: n.term })),
        ];
        const edges = payload.neighbors.map((n) => ({ a: payload.center, b: n.term, label: n.relation }));
        renderNetwork(this.views.terms, nodes, edges, this.brush, {
            emptyNote: "no related terms",
            actionTitle: "new search for this keyword",
            onAction: (term) => {
                const q = `keyword:"${term}"`;
                this.searchInput.value = q;
                this.store.newSearch(q);
            },
        });
    }

    private renderFilterBar(state: UiQueryState): void {
        clear(this.filterBar);
        const entries = Object.entries(state.filters).filter(([, v]) => v !== undefined);
        if (entries.length === 0) return;
        this.filterBar.append("filters: ");
        for (const [key, value] of entries) {
            const chip = el("button", { class: "filter-chip", type: "button" }, `${key}=${value} ×`);
            chip.addEventListener("click", () => this.store.clearFilter(key as never));
            this.filterBar.append(chip);
        }
    }
}
