// Network graphs on a deterministic circular layout with labeled edges;
// used for the co-author view (edge label = shared-document count) and
// the related-term view (edge label = relation). Pan and zoom enabled.

import { clear, el, svg } from "./dom.js";
import { BrushController, LinkField } from "./linking.js";
import { enablePanZoom } from "./panzoom.js";

export interface NetworkNode {
    id: string;
    label: string;
    brushField?: LinkField;
    center?: boolean;
}

export interface NetworkEdge {
    a: string;
    b: string;
    label: string;
}

export interface NetworkOptions {
    onAction?: (id: string) => void;
    actionTitle?: string;
    emptyNote: string;
}

const SIZE = 500;
const RADIUS = 190;

export function renderNetwork(
    container: HTMLElement,
    nodes: NetworkNode[],
    edges: NetworkEdge[],
    brush: BrushController,
    options: NetworkOptions,
): void {
    clear(container);
    if (nodes.length === 0) {
        container.append(el("div", { class: "empty-note" }, options.emptyNote));
        return;
    }

    const graph = svg("svg", { class: "network", role: "img" });
    const positions = new Map<string, { x: number; y: number }>();
    const ring = nodes.filter((n) => !n.center);
    const centerNode = nodes.find((n) => n.center);
    ring.forEach((node, i) => {
        const angle = (2 * Math.PI * i) / ring.length - Math.PI / 2;
        positions.set(node.id, {
            x: SIZE / 2 + RADIUS * Math.cos(angle),
            y: SIZE / 2 + RADIUS * Math.sin(angle),
        });
    });
    if (centerNode) positions.set(centerNode.id, { x: SIZE / 2, y: SIZE / 2 });

    for (const edge of edges) {
        const pa = positions.get(edge.a);
        const pb = positions.get(edge.b);
        if (!pa || !pb) continue;
        graph.append(svg("line", { x1: pa.x, y1: pa.y, x2: pb.x, y2: pb.y, class: "edge" }));
        graph.append(
            svg(
                "text",
                {
                    x: (pa.x + pb.x) / 2,
                    y: (pa.y + pb.y) / 2 - 3,
                    class: "edge-label",
                    "text-anchor": "middle",
                },
                edge.label,
            ),
        );
    }

    for (const node of nodes) {
        const pos = positions.get(node.id)!;
        const group = svg("g", { class: node.center ? "node center" : "node" });
        group.append(svg("circle", { cx: pos.x, cy: pos.y, r: node.center ? 14 : 10 }));
        group.append(
            svg(
                "text",
                { x: pos.x, y: pos.y - (node.center ? 18 : 14), class: "node-label", "text-anchor": "middle" },
                node.label,
            ),
        );
        if (node.brushField) {
            brush.attach(group, node.brushField, node.id);
        }
        if (options.onAction && !node.center) {
            const hit = svg("rect", {
                x: pos.x + 8,
                y: pos.y + 2,
                width: 16,
                height: 16,
                class: "action-hit",
            });
            const icon = svg(
                "text",
                { x: pos.x + 16, y: pos.y + 14, class: "node-action", "text-anchor": "middle" },
                "➤",
            );
            const fire = () => options.onAction!(node.id);
            for (const target of [hit, icon]) {
                (target as unknown as HTMLElement).setAttribute("role", "button");
                target.setAttribute("aria-label", options.actionTitle ?? "search");
                target.addEventListener("click", fire);
            }
            group.append(hit, icon);
        }
        graph.append(group);
    }

    enablePanZoom(graph, { x: 0, y: 0, w: SIZE, h: SIZE });
    container.append(graph);
}
