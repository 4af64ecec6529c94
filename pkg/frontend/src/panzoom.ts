// Wheel-zoom and drag-pan for an SVG by manipulating its viewBox.

export interface ViewBox {
    x: number;
    y: number;
    w: number;
    h: number;
}

export function setViewBox(svg: SVGElement, box: ViewBox): void {
    svg.setAttribute("viewBox", `${box.x} ${box.y} ${box.w} ${box.h}`);
}

export function enablePanZoom(svg: SVGElement, initial: ViewBox): void {
    let box = { ...initial };
    setViewBox(svg, box);

    let dragging = false;
    let lastX = 0;
    let lastY = 0;

    svg.addEventListener("wheel", (event) => {
        event.preventDefault();
        const wheel = event as WheelEvent;
        const factor = wheel.deltaY > 0 ? 1.2 : 1 / 1.2;
        const newW = box.w * factor;
        const newH = box.h * factor;
        box = {
            x: box.x + (box.w - newW) / 2,
            y: box.y + (box.h - newH) / 2,
            w: newW,
            h: newH,
        };
        setViewBox(svg, box);
    });

    svg.addEventListener("mousedown", (event) => {
        dragging = true;
        lastX = (event as MouseEvent).clientX;
        lastY = (event as MouseEvent).clientY;
    });
    svg.addEventListener("mousemove", (event) => {
        if (!dragging) return;
        const mouse = event as MouseEvent;
        const rect = svg.getBoundingClientRect();
        const scaleX = rect.width > 0 ? box.w / rect.width : 1;
        const scaleY = rect.height > 0 ? box.h / rect.height : 1;
        box = {
            ...box,
            x: box.x - (mouse.clientX - lastX) * scaleX,
            y: box.y - (mouse.clientY - lastY) * scaleY,
        };
        lastX = mouse.clientX;
        lastY = mouse.clientY;
        setViewBox(svg, box);
    });
    const stop = () => {
        dragging = false;
    };
    svg.addEventListener("mouseup", stop);
    svg.addEventListener("mouseleave", stop);
}
