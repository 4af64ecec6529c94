// Client side of weighted brushing: neighbor lookup over the current
// query's linking table and the DOM highlight controller.
//
// Brushable elements carry data-bfield/data-bvalue attributes; hovering
// one adds brush-1..brush-5 classes to its linked partners (yellow to
// brown) and brush-self to the hovered item itself. Brushing never
// changes the query state.

import { LinkingEntryPayload } from "./api.js";

export type LinkField = "person" | "keyword" | "location" | "time";

const FIELD_ORDER: Record<LinkField, number> = { person: 0, keyword: 1, location: 2, time: 3 };

export interface Neighbor {
    field: LinkField;
    value: string;
    intensity: number;
}

function fold(value: string): string {
    return value.toLowerCase();
}

export class LinkingIndex {
    private byMember = new Map<string, Neighbor[]>();

    constructor(entries: LinkingEntryPayload[]) {
        for (const entry of entries) {
            this.add(entry.field_a, entry.value_a, {
                field: entry.field_b as LinkField,
                value: entry.value_b,
                intensity: entry.intensity,
            });
            this.add(entry.field_b, entry.value_b, {
                field: entry.field_a as LinkField,
                value: entry.value_a,
                intensity: entry.intensity,
            });
        }
        for (const neighbors of this.byMember.values()) {
            neighbors.sort(
                (x, y) =>
                    FIELD_ORDER[x.field] - FIELD_ORDER[y.field] ||
                    fold(x.value).localeCompare(fold(y.value)),
            );
        }
    }

    private add(field: string, value: string, neighbor: Neighbor): void {
        const key = `${field}\t${fold(value)}`;
        const list = this.byMember.get(key);
        if (list) list.push(neighbor);
        else this.byMember.set(key, [neighbor]);
    }

    neighborsOf(field: LinkField, value: string): Neighbor[] {
        return this.byMember.get(`${field}\t${fold(value)}`) ?? [];
    }
}

export const BRUSH_CLASSES = ["brush-1", "brush-2", "brush-3", "brush-4", "brush-5", "brush-self"];

export class BrushController {
    private index = new LinkingIndex([]);
    private touched: Element[] = [];
    private clearTimer: ReturnType<typeof setTimeout> | null = null;

    /** Highlight lingers briefly after mouse-out so it can be read. */
    constructor(private root: ParentNode, private lingerMs = 500) {}

    setTable(index: LinkingIndex): void {
        this.index = index;
        this.clearNow();
    }

    neighborsOf(field: LinkField, value: string): Neighbor[] {
        return this.index.neighborsOf(field, value);
    }

    hover(field: LinkField, value: string): void {
        this.clearNow();
        for (const element of this.select(field, value)) {
            element.classList.add("brush-self");
            this.touched.push(element);
        }
        for (const neighbor of this.index.neighborsOf(field, value)) {
            for (const element of this.select(neighbor.field, neighbor.value)) {
                element.classList.add(`brush-${neighbor.intensity}`);
                this.touched.push(element);
            }
        }
    }

    leave(): void {
        if (this.clearTimer !== null) clearTimeout(this.clearTimer);
        this.clearTimer = setTimeout(() => this.clearNow(), this.lingerMs);
    }

    clearNow(): void {
        if (this.clearTimer !== null) {
            clearTimeout(this.clearTimer);
            this.clearTimer = null;
        }
        for (const element of this.touched) {
            element.classList.remove(...BRUSH_CLASSES);
        }
        this.touched = [];
    }

    /** Wire one brushable element; the data attributes drive selection. */
    attach(element: Element, field: LinkField, value: string): void {
        element.setAttribute("data-bfield", field);
        element.setAttribute("data-bvalue", fold(value));
        element.addEventListener("mouseenter", () => this.hover(field, value));
        element.addEventListener("mouseleave", () => this.leave());
    }

    private select(field: string, value: string): Element[] {
        const escaped = fold(value).replace(/["\\]/g, "\\$&");
        return Array.from(
            this.root.querySelectorAll(`[data-bfield="${field}"][data-bvalue="${escaped}"]`),
        );
    }
}
