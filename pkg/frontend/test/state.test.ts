import { describe, expect, it } from "vitest";

import type { PublicState } from "../src/api.js";
import {
    applyServerState,
    edgeColorMap,
    initialViewState,
    isHumanTurn,
    selectVertex,
} from "../src/state.js";

function serverState(overrides: Partial<PublicState> = {}): PublicState {
    return {
        v: 1,
        id: "s1",
        config: { m: 3, n: 3, N: 6 },
        edges: [],
        state: "awaiting_painter_choice",
        pending_edge: [0, 1],
        moves: 0,
        savings: 15,
        witness: null,
        ...overrides,
    };
}

describe("turn gating", () => {
    it("painter may act only while a choice is pending", () => {
        let view = initialViewState("painter");
        expect(isHumanTurn(view)).toBe(false);
        view = applyServerState(view, serverState());
        expect(isHumanTurn(view)).toBe(true);
        view = applyServerState(view, serverState({ state: "finished", pending_edge: null }));
        expect(isHumanTurn(view)).toBe(false);
    });

    it("builder may act only while the service awaits a move", () => {
        let view = initialViewState("builder");
        view = applyServerState(
            view,
            serverState({ state: "awaiting_builder_move", pending_edge: null }),
        );
        expect(isHumanTurn(view)).toBe(true);
        view = applyServerState(view, serverState({ state: "finished", pending_edge: null }));
        expect(isHumanTurn(view)).toBe(false);
    });
});

describe("vertex selection", () => {
    function builderView() {
        return applyServerState(
            initialViewState("builder"),
            serverState({ state: "awaiting_builder_move", pending_edge: null }),
        );
    }

    it("two clicks name an edge in sorted order", () => {
        let { view, edge } = selectVertex(builderView(), 4);
        expect(edge).toBeNull();
        expect(view.selection).toBe(4);
        ({ view, edge } = selectVertex(view, 1));
        expect(edge).toEqual([1, 4]);
        expect(view.selection).toBeNull();
    });

    it("clicking the same vertex clears the selection", () => {
        let { view } = selectVertex(builderView(), 2);
        ({ view } = selectVertex(view, 2));
        expect(view.selection).toBeNull();
    });

    it("selection is inert when it is not the human's turn", () => {
        const finished = applyServerState(
            initialViewState("builder"),
            serverState({ state: "finished", pending_edge: null }),
        );
        const { view, edge } = selectVertex(finished, 3);
        expect(edge).toBeNull();
        expect(view.selection).toBeNull();
    });

    it("painter clicks never produce edges", () => {
        const painter = applyServerState(initialViewState("painter"), serverState());
        const { edge } = selectVertex(painter, 0);
        expect(edge).toBeNull();
    });
});

describe("server state folding", () => {
    it("edge map mirrors the server list exactly", () => {
        const view = applyServerState(
            initialViewState("painter"),
            serverState({ edges: [[0, 1, "R"], [2, 5, "B"]], moves: 2, savings: 13 }),
        );
        const map = edgeColorMap(view);
        expect(map.size).toBe(2);
        expect(map.get("0-1")).toBe("R");
        expect(map.get("2-5")).toBe("B");
    });

    it("log records new moves and the finish", () => {
        let view = initialViewState("painter");
        view = applyServerState(view, serverState({ edges: [[0, 1, "R"]], moves: 1 }));
        view = applyServerState(
            view,
            serverState({
                edges: [[0, 1, "R"], [0, 2, "B"]],
                moves: 2,
                state: "finished",
                pending_edge: null,
                witness: { color: "B", vertices: [0, 2, 4] },
            }),
        );
        expect(view.log.map((e) => e.text)).toEqual([
            "edge (0,1) painted red",
            "edge (0,2) painted blue",
            "game over: blue clique {0,2,4}, savings 15",
        ]);
    });
});
