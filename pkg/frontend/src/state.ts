// Client-side view state: the service's public session state plus the
// local selection and event log. The service state is the single source
// of truth for edges; the view never invents or drops one.

import type { EdgeColor, HumanRole, PublicState } from "./api.js";
import { edgeKey } from "./layout.js";

export interface LogEntry {
    moveNumber: number;
    text: string;
}

export interface ViewState {
    session: PublicState | null;
    role: HumanRole;
    selection: number | null;
    error: string | null;
    log: LogEntry[];
}

export function initialViewState(role: HumanRole): ViewState {
    return { session: null, role, selection: null, error: null, log: [] };
}

export function isHumanTurn(view: ViewState): boolean {
    if (!view.session) return false;
    if (view.role === "painter") return view.session.state === "awaiting_painter_choice";
    return view.session.state === "awaiting_builder_move";
}

export function edgeColorMap(view: ViewState): Map<string, EdgeColor> {
    const map = new Map<string, EdgeColor>();
    if (view.session) {
        for (const [u, v, c] of view.session.edges) {
            map.set(edgeKey(u, v), c);
        }
    }
    return map;
}

/** Fold a fresh server state into the view, logging what changed. */
export function applyServerState(view: ViewState, next: PublicState): ViewState {
    const log = [...view.log];
    const prevCount = view.session ? view.session.edges.length : 0;
    for (const [u, v, c] of next.edges.slice(prevCount)) {
        log.push({
            moveNumber: log.length + 1,
            text: `edge (${u},${v}) painted ${c === "R" ? "red" : "blue"}`,
        });
    }
    if (next.state === "finished") {
        const w = next.witness;
        log.push({
            moveNumber: log.length + 1,
            text: w
                ? `game over: ${w.color === "R" ? "red" : "blue"} clique {${w.vertices.join(",")}}, savings ${next.savings}`
                : `game over: stalemate, savings ${next.savings}`,
        });
    }
    return { ...view, session: next, selection: null, error: null, log };
}

export function setError(view: ViewState, message: string): ViewState {
    return { ...view, error: message };
}

/**
 * Builder-mode vertex click. First click selects, second click names an
 * edge choice (returned), clicking the same vertex clears the selection.
 * Ignored entirely when it is not the human's turn.
 */
export function selectVertex(
    view: ViewState,
    vertex: number,
): { view: ViewState; edge: [number, number] | null } {
    if (view.role !== "builder" || !isHumanTurn(view)) {
        return { view, edge: null };
    }
    if (view.selection === null) {
        return { view: { ...view, selection: vertex }, edge: null };
    }
    if (view.selection === vertex) {
        return { view: { ...view, selection: null }, edge: null };
    }
    const edge: [number, number] =
        view.selection <= vertex ? [view.selection, vertex] : [vertex, view.selection];
    return { view: { ...view, selection: null }, edge };
}

export function edgeAlreadyBuilt(view: ViewState, u: number, v: number): boolean {
    return edgeColorMap(view).has(edgeKey(u, v));
}
