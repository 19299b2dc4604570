// SVG board rendering. Color-blind-safe palette (vermillion red, strong
// blue), dashed gray for the pending edge, heavy stroke for the witness
// clique. Controls are enabled only on the human's turn.

import type { EdgeColor } from "./api.js";
import { circularLayout, edgeKey } from "./layout.js";
import { isHumanTurn, type ViewState } from "./state.js";

export const RED_HEX = "#d55e00";
export const BLUE_HEX = "#0072b2";
const PENDING_HEX = "#888888";
const VERTEX_HEX = "#222222";
const SELECT_HEX = "#009e73";

const SVG_NS = "http://www.w3.org/2000/svg";
const SIZE = 420;

export interface Handlers {
    onVertexClick: (vertex: number) => void;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
    tag: K,
    attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
    const el = document.createElementNS(SVG_NS, tag);
    for (const [k, v] of Object.entries(attrs)) {
        el.setAttribute(k, v);
    }
    return el;
}

function colorHex(c: EdgeColor): string {
    return c === "R" ? RED_HEX : BLUE_HEX;
}

export function renderBoard(
    container: HTMLElement,
    view: ViewState,
    handlers: Handlers,
): void {
    container.replaceChildren();
    if (!view.session) return;
    const { config, edges, pending_edge, witness } = view.session;
    const points = circularLayout(config.N, SIZE / 2, SIZE / 2, SIZE / 2 - 30);
    const svg = svgEl("svg", {
        viewBox: `0 0 ${SIZE} ${SIZE}`,
        width: String(SIZE),
        height: String(SIZE),
        role: "img",
    });
    svg.dataset.testid = "board";

    const witnessEdges = new Set<string>();
    if (witness) {
        const vs = witness.vertices;
        for (let i = 0; i < vs.length; i++) {
            for (let j = i + 1; j < vs.length; j++) {
                witnessEdges.add(edgeKey(vs[i], vs[j]));
            }
        }
    }

    for (const [u, v, c] of edges) {
        const key = edgeKey(u, v);
        const line = svgEl("line", {
            x1: String(points[u].x),
            y1: String(points[u].y),
            x2: String(points[v].x),
            y2: String(points[v].y),
            stroke: colorHex(c),
            "stroke-width": witnessEdges.has(key) ? "6" : "2.5",
        });
        line.dataset.edge = key;
        line.dataset.color = c;
        svg.appendChild(line);
    }

    if (pending_edge) {
        const [u, v] = pending_edge;
        const line = svgEl("line", {
            x1: String(points[u].x),
            y1: String(points[u].y),
            x2: String(points[v].x),
            y2: String(points[v].y),
            stroke: PENDING_HEX,
            "stroke-width": "3",
            "stroke-dasharray": "7 5",
        });
        line.dataset.pending = edgeKey(u, v);
        svg.appendChild(line);
    }

    points.forEach((p, i) => {
        const circle = svgEl("circle", {
            cx: String(p.x),
            cy: String(p.y),
            r: "13",
            fill: view.selection === i ? SELECT_HEX : VERTEX_HEX,
        });
        circle.dataset.vertex = String(i);
        if (view.role === "builder") {
            circle.style.cursor = "pointer";
            circle.addEventListener("click", () => handlers.onVertexClick(i));
        }
        const label = svgEl("text", {
            x: String(p.x),
            y: String(p.y + 4),
            "text-anchor": "middle",
            fill: "#ffffff",
            "font-size": "12",
        });
        label.textContent = String(i);
        svg.appendChild(circle);
        svg.appendChild(label);
    });

    container.appendChild(svg);
}

export function renderStatus(container: HTMLElement, view: ViewState): void {
    container.replaceChildren();
    const session = view.session;
    if (!session) return;
    const totalPairs = (session.config.N * (session.config.N - 1)) / 2;

    const line = (label: string, value: string, testid: string) => {
        const div = document.createElement("div");
        const b = document.createElement("strong");
        b.textContent = `${label}: `;
        const span = document.createElement("span");
        span.dataset.testid = testid;
        span.textContent = value;
        div.append(b, span);
        return div;
    };

    container.appendChild(line("Moves", String(session.moves), "moves"));
    container.appendChild(
        line("Savings", `${session.savings} of ${totalPairs} pairs unbuilt`, "savings"),
    );
    let turn: string;
    if (session.state === "finished") {
        turn = session.witness
            ? `finished: ${session.witness.color === "R" ? "red" : "blue"} clique {${session.witness.vertices.join(", ")}}`
            : "finished: stalemate";
    } else {
        turn = isHumanTurn(view) ? "your turn" : "engine is thinking";
    }
    container.appendChild(line("Status", turn, "status"));
}

export function renderLog(container: HTMLElement, view: ViewState): void {
    container.replaceChildren();
    const list = document.createElement("ol");
    list.dataset.testid = "log";
    for (const entry of view.log) {
        const item = document.createElement("li");
        item.textContent = entry.text;
        list.appendChild(item);
    }
    container.appendChild(list);
}

export function renderControls(
    container: HTMLElement,
    view: ViewState,
    onColor: (color: EdgeColor) => void,
): void {
    container.replaceChildren();
    if (view.role !== "painter") return;
    const pending = view.session?.pending_edge ?? null;
    for (const [color, label, hex] of [
        ["R", "Paint red", RED_HEX],
        ["B", "Paint blue", BLUE_HEX],
    ] as const) {
        const button = document.createElement("button");
        button.textContent = label;
        button.dataset.color = color;
        button.style.borderColor = hex;
        button.disabled = !isHumanTurn(view) || pending === null;
        button.addEventListener("click", () => {
            if (!button.disabled) onColor(color);
        });
        container.appendChild(button);
    }
}

export function renderError(container: HTMLElement, view: ViewState): void {
    container.replaceChildren();
    if (!view.error) return;
    const toast = document.createElement("div");
    toast.className = "toast";
    toast.dataset.testid = "toast";
    toast.textContent = view.error;
    container.appendChild(toast);
}
