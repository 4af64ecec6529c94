// Single source of truth for the whole UI. Every view renders from the
// same UiQueryState; transitions bump a generation counter so responses
// that arrive for a superseded state are discarded.

import { QueryFilters, UiQueryState } from "./api.js";

export type StateListener = (state: UiQueryState, generation: number) => void;

const FILTER_KEYS: (keyof QueryFilters)[] = ["type", "database", "person", "subject", "from", "to"];

export class QueryStore {
    private state: UiQueryState;
    private listeners: StateListener[] = [];
    generation = 0;

    constructor(initial?: Partial<UiQueryState>) {
        this.state = { q: "", filters: {}, page: 0, ...initial };
    }

    get(): UiQueryState {
        return {
            q: this.state.q,
            filters: { ...this.state.filters },
            page: this.state.page,
        };
    }

    subscribe(listener: StateListener): void {
        this.listeners.push(listener);
    }

    private emit(): void {
        this.generation += 1;
        const snapshot = this.get();
        for (const listener of this.listeners) {
            listener(snapshot, this.generation);
        }
    }

    /** Replace the query string; filters reset, search starts fresh. */
    newSearch(q: string): void {
        this.state = { q, filters: {}, page: 0 };
        this.emit();
    }

    setQuery(q: string): void {
        this.state.q = q;
        this.state.page = 0;
        this.emit();
    }

    setFilter<K extends keyof QueryFilters>(key: K, value: QueryFilters[K]): void {
        this.state.filters[key] = value;
        this.state.page = 0;
        this.emit();
    }

    clearFilter(key: keyof QueryFilters): void {
        delete this.state.filters[key];
        this.state.page = 0;
        this.emit();
    }

    setPage(page: number): void {
        this.state.page = Math.max(0, page);
        this.emit();
    }

    /** Mirror the state into a URL fragment for shareable sessions. */
    toFragment(): string {
        const params = new URLSearchParams();
        if (this.state.q) params.set("q", this.state.q);
        for (const key of FILTER_KEYS) {
            const value = this.state.filters[key];
            if (value !== undefined && value !== "") params.set(key, String(value));
        }
        if (this.state.page > 0) params.set("page", String(this.state.page));
        return params.toString();
    }

    static fromFragment(fragment: string): UiQueryState {
        const params = new URLSearchParams(fragment.replace(/^#/, ""));
        const filters: QueryFilters = {};
        for (const key of FILTER_KEYS) {
            const value = params.get(key);
            if (value === null) continue;
            if (key === "from" || key === "to") {
                const year = Number.parseInt(value, 10);
                if (!Number.isNaN(year)) filters[key] = year;
            } else {
                filters[key] = value;
            }
        }
        return {
            q: params.get("q") ?? "",
            filters,
            page: Math.max(0, Number.parseInt(params.get("page") ?? "0", 10) || 0),
        };
    }
}
