// SVG world map: web-mercator projection, view fitted to the payload
// bbox, wheel/drag pan-zoom, per-marker count pop-ups.

import { SpatialPayload } from "./api.js";
import { clear, el, svg } from "./dom.js";
import { BrushController } from "./linking.js";
import { enablePanZoom, ViewBox } from "./panzoom.js";

const WORLD = 1000; // projected world is WORLD x WORLD units

export function project(lat: number, lon: number): { x: number; y: number } {
    const x = ((lon + 180) / 360) * WORLD;
    const clamped = Math.max(-85, Math.min(85, lat));
    const rad = (clamped * Math.PI) / 180;
    const y = ((1 - Math.log(Math.tan(Math.PI / 4 + rad / 2)) / Math.PI) / 2) * WORLD;
    return { x, y };
}

/** Smallest view (largest zoom) containing the whole bbox, padded. */
export function fitViewBox(bbox: SpatialPayload["bbox"]): ViewBox {
    if (!bbox) return { x: 0, y: 0, w: WORLD, h: WORLD };
    const a = project(bbox.max_lat, bbox.min_lon);
    const b = project(bbox.min_lat, bbox.max_lon);
    const pad = Math.max(20, (b.x - a.x) * 0.15, (b.y - a.y) * 0.15);
    const x = a.x - pad;
    const y = a.y - pad;
    const w = b.x - a.x + 2 * pad;
    const h = b.y - a.y + 2 * pad;
    return { x, y, w: Math.max(w, 1), h: Math.max(h, 1) };
}

function graticule(): SVGElement {
    const group = svg("g", { class: "graticule" });
    for (let lon = -180; lon <= 180; lon += 30) {
        const { x } = project(0, lon);
        group.append(svg("line", { x1: x, y1: 0, x2: x, y2: WORLD }));
    }
    for (let lat = -60; lat <= 80; lat += 20) {
        const { y } = project(lat, 0);
        group.append(svg("line", { x1: 0, y1: y, x2: WORLD, y2: y }));
    }
    return group;
}

export function renderMap(
    container: HTMLElement,
    payload: SpatialPayload,
    brush: BrushController,
): void {
    clear(container);
    const popup = el("div", { class: "tooltip", hidden: true });
    const map = svg("svg", { class: "map", role: "img" });
    map.append(graticule());

    const maxCount = Math.max(1, ...payload.buckets.map((b) => b.count));
    for (const bucket of payload.buckets) {
        const { x, y } = project(bucket.lat, bucket.lon);
        const marker = svg("circle", {
            cx: x,
            cy: y,
            r: 4 + 10 * Math.sqrt(bucket.count / maxCount),
            class: "marker",
        });
        marker.addEventListener("mouseenter", () => {
            popup.textContent = `${bucket.name}: ${bucket.count}`;
            popup.hidden = false;
        });
        marker.addEventListener("mouseleave", () => {
            popup.hidden = true;
        });
        brush.attach(marker, "location", bucket.name);
        map.append(marker);
    }

    enablePanZoom(map, fitViewBox(payload.bbox));
    container.append(map, popup);

    if (payload.unresolved.length > 0) {
        const names = payload.unresolved.map((u) => `${u.name} (${u.count})`).join(", ");
        container.append(el("div", { class: "chart-note" }, `not on map: ${names}`));
    }
}
