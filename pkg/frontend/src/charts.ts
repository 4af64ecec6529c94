// SVG bar/line charts: the temporal distribution and horizontal facet bars.

import { FacetsPayload, TemporalPayload } from "./api.js";
import { clear, el, svg } from "./dom.js";
import { BrushController, LinkField } from "./linking.js";

const TEMPORAL_W = 600;
const TEMPORAL_H = 150;
const PAD = 18;

export function renderTemporal(
    container: HTMLElement,
    payload: TemporalPayload,
    brush: BrushController,
): void {
    clear(container);
    const tooltip = el("div", { class: "tooltip", hidden: true });
    const chart = svg("svg", {
        class: `temporal ${payload.chart_kind}`,
        viewBox: `0 0 ${TEMPORAL_W} ${TEMPORAL_H}`,
        role: "img",
    });

    const bins = payload.bins;
    const maxCount = Math.max(1, ...bins.map((b) => b.count));
    const step = (TEMPORAL_W - 2 * PAD) / bins.length;
    const yFor = (count: number) => TEMPORAL_H - PAD - (count / maxCount) * (TEMPORAL_H - 2 * PAD);

    chart.append(
        svg("line", {
            x1: PAD, y1: TEMPORAL_H - PAD, x2: TEMPORAL_W - PAD, y2: TEMPORAL_H - PAD,
            class: "axis",
        }),
    );

    if (payload.chart_kind === "line") {
        const points = bins
            .map((b, i) => `${PAD + step * (i + 0.5)},${yFor(b.count)}`)
            .join(" ");
        chart.append(svg("polyline", { points, class: "temporal-line" }));
    }

    bins.forEach((bin, i) => {
        const x = PAD + step * i;
        let mark: SVGElement;
        if (payload.chart_kind === "bar") {
            mark = svg("rect", {
                x: x + step * 0.1,
                y: yFor(bin.count),
                width: step * 0.8,
                height: Math.max(0, TEMPORAL_H - PAD - yFor(bin.count)),
                class: "temporal-bin",
            });
        } else {
            mark = svg("circle", {
                cx: x + step / 2,
                cy: yFor(bin.count),
                r: step * 0.45,
                class: "temporal-bin",
            });
        }
        mark.addEventListener("mouseenter", () => {
            tooltip.textContent = `${bin.year}: ${bin.count}`;
            tooltip.hidden = false;
        });
        mark.addEventListener("mouseleave", () => {
            tooltip.hidden = true;
        });
        brush.attach(mark, "time", String(bin.year));
        chart.append(mark);
    });

    const first = bins[0]?.year ?? 0;
    const last = bins[bins.length - 1]?.year ?? 0;
    chart.append(
        svg("text", { x: PAD, y: TEMPORAL_H - 4, class: "axis-label" }, String(first)),
        svg("text", { x: TEMPORAL_W - PAD, y: TEMPORAL_H - 4, class: "axis-label", "text-anchor": "end" }, String(last)),
    );

    container.append(chart, tooltip, el(
        "div",
        { class: "chart-note" },
        `${payload.covered} in window, ${payload.uncovered} outside`,
    ));
}

export interface FacetBarOptions {
    brushField: LinkField;
    onAction: (value: string) => void;
    actionTitle: string;
}

export function renderFacetBars(
    container: HTMLElement,
    payload: FacetsPayload,
    brush: BrushController,
    options: FacetBarOptions,
): void {
    clear(container);
    if (payload.counts.length === 0) {
        container.append(el("div", { class: "empty-note" }, "no values"));
        return;
    }
    const maxCount = payload.counts[0].count;
    const list = el("ul", { class: "facet-bars" });
    for (const facet of payload.counts) {
        const bar = el("div", { class: "bar" });
        bar.style.width = `${Math.max(2, (facet.count / maxCount) * 100)}%`;
        const icon = el(
            "button",
            { class: "action-icon", title: options.actionTitle, "aria-label": options.actionTitle },
            "➤",
        );
        icon.addEventListener("click", () => options.onAction(facet.value));
        const item = el(
            "li",
            { class: "facet-item" },
            icon,
            el("span", { class: "facet-label" }, facet.value),
            el("span", { class: "facet-count" }, String(facet.count)),
            bar,
        );
        brush.attach(item, options.brushField, facet.value);
        list.append(item);
    }
    container.append(list);
}
