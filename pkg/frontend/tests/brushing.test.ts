// Brushing fidelity: scripted hovers must paint exactly the highlight
// classes that the linking payload's neighbors_of semantics dictate.

import { beforeEach, describe, expect, it, vi } from "vitest";

import { App } from "../src/views.js";
import raw from "./fixtures/fixtures.json";
import { brushClassOf, expectedNeighbors, Fixtures, FixtureClient, hover, litElements, unhover } from "./helpers.js";

const fixtures = raw as unknown as Fixtures;

function mount(): Promise<App> {
    document.body.innerHTML = '<main id="app"></main>';
    const app = new App(document.getElementById("app")!, new FixtureClient(fixtures), {
        lingerMs: 500,
    });
    return app.start().then(() => app);
}

function brushables(): Map<string, Element[]> {
    const groups = new Map<string, Element[]>();
    for (const element of Array.from(document.querySelectorAll("[data-bfield]"))) {
        const key = `${element.getAttribute("data-bfield")}\t${element.getAttribute("data-bvalue")}`;
        const list = groups.get(key) ?? [];
        list.push(element);
        groups.set(key, list);
    }
    return groups;
}

describe("weighted brushing", () => {
    beforeEach(() => {
        localStorage.clear();
    });

    it("20 scripted hovers paint exactly the neighbors_of intensities", async () => {
        await mount();
        const entries = fixtures.scenarios.base.linking.entries;
        const groups = brushables();

        // Deterministic probe mix across all four fields.
        const probes: [string, string][] = [];
        const byField = (field: string) =>
            Array.from(groups.keys())
                .filter((key) => key.startsWith(`${field}\t`))
                .sort();
        for (const field of ["person", "keyword", "location", "time"]) {
            for (const key of byField(field).slice(0, 6)) {
                probes.push([field, key.split("\t")[1]]);
            }
        }
        expect(probes.length).toBeGreaterThanOrEqual(20);

        for (const [field, value] of probes) {
            const elements = groups.get(`${field}\t${value}`)!;
            hover(elements[0]);

            const expected = new Map<string, number>();
            for (const neighbor of expectedNeighbors(entries, field, value)) {
                expected.set(
                    `${neighbor.field}\t${neighbor.value.toLowerCase()}`,
                    neighbor.intensity,
                );
            }

            for (const [key, groupElements] of groups) {
                const want = expected.get(key) ?? null;
                for (const element of groupElements) {
                    expect(
                        brushClassOf(element),
                        `hover ${field}=${value}: classes on ${key.replace("\t", "=")}`,
                    ).toBe(want);
                }
            }
            // the hovered item itself is outlined, not ramped
            for (const element of elements) {
                expect(element.classList.contains("brush-self")).toBe(true);
            }

            unhover(elements[0]);
            await new Promise((resolve) => setTimeout(resolve, 520));
            expect(litElements().length).toBe(0);
        }
    }, 30_000);

    it("hovering a person highlights its associated keywords", async () => {
        await mount();
        const person = fixtures.meta.top_person;
        const bar = document.querySelector(
            `#persons-view [data-bfield="person"][data-bvalue="${person.toLowerCase()}"]`,
        )!;
        hover(bar);

        const keywordNeighbors = expectedNeighbors(
            fixtures.scenarios.base.linking.entries,
            "person",
            person,
        ).filter((n) => n.field === "keyword");
        expect(keywordNeighbors.length).toBeGreaterThan(0);

        for (const neighbor of keywordNeighbors) {
            const item = document.querySelector(
                `#keywords-view [data-bfield="keyword"][data-bvalue="${neighbor.value.toLowerCase()}"]`,
            );
            expect(item, `keyword ${neighbor.value} should be rendered`).not.toBeNull();
            expect(brushClassOf(item!)).toBe(neighbor.intensity);
        }
    });

    it("brushing never changes the query state", async () => {
        const app = await mount();
        const before = JSON.stringify(app.store.get());
        for (const element of Array.from(document.querySelectorAll("[data-bfield]")).slice(0, 10)) {
            hover(element);
            unhover(element);
        }
        expect(JSON.stringify(app.store.get())).toBe(before);
    });

    it("highlight lingers briefly after mouse-out, then clears", async () => {
        vi.useFakeTimers();
        try {
            document.body.innerHTML = '<main id="app"></main>';
            const app = new App(document.getElementById("app")!, new FixtureClient(fixtures), {
                lingerMs: 500,
            });
            const started = app.start();
            await vi.runAllTimersAsync();
            await started;

            const element = document.querySelector("[data-bfield='person']")!;
            hover(element);
            const lit = litElements().length;
            expect(lit).toBeGreaterThan(0);

            unhover(element);
            vi.advanceTimersByTime(400);
            expect(litElements().length).toBe(lit);
            vi.advanceTimersByTime(200);
            expect(litElements().length).toBe(0);
        } finally {
            vi.useRealTimers();
        }
    });
});
