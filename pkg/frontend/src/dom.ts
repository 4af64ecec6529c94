// Tiny element builders; no framework.

const SVG_NS = "http://www.w3.org/2000/svg";

type Attrs = Record<string, string | number | boolean | ((event: Event) => void)>;

function applyAttrs(node: Element, attrs: Attrs): void {
    for (const [key, value] of Object.entries(attrs)) {
        if (typeof value === "function") {
            node.addEventListener(key.replace(/^on/, ""), value as EventListener);
        } else if (value === true) {
            node.setAttribute(key, "");
        } else if (value !== false) {
            node.setAttribute(key, String(value));
        }
    }
}

export function el<K extends keyof HTMLElementTagNameMap>(
    tag: K,
    attrs: Attrs = {},
    ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
    const node = document.createElement(tag);
    applyAttrs(node, attrs);
    node.append(...children);
    return node;
}

export function svg(tag: string, attrs: Attrs = {}, ...children: (Node | string)[]): SVGElement {
    const node = document.createElementNS(SVG_NS, tag) as SVGElement;
    applyAttrs(node, attrs);
    node.append(...children);
    return node;
}

export function clear(node: Element): void {
    while (node.firstChild) node.removeChild(node.firstChild);
}
