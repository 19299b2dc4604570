// The rendered board must mirror the service's ground truth after every
// action round-trip, and the UI must never issue an action out of turn.

// @vitest-environment jsdom

import { beforeEach, describe, expect, it, vi } from "vitest";

import { SessionApi, type EdgeColor, type PublicState } from "../src/api.js";
import { applyServerState, initialViewState, type ViewState } from "../src/state.js";
import { renderBoard, renderControls, renderStatus } from "../src/render.js";
import { MockService } from "./mock_service.js";

function renderedEdges(board: HTMLElement): [string, string][] {
    return [...board.querySelectorAll<SVGLineElement>("line[data-edge]")].map((line) => [
        line.dataset.edge as string,
        line.dataset.color as string,
    ]);
}

function groundTruthEdges(state: PublicState): [string, string][] {
    return state.edges.map(([u, v, c]) => [`${u}-${v}`, c]);
}

describe("board/service consistency", () => {
    let service: MockService;
    let api: SessionApi;
    let board: HTMLElement;

    beforeEach(() => {
        service = new MockService();
        vi.stubGlobal("fetch", service.fetch);
        api = new SessionApi("http://mock");
        board = document.createElement("div");
        document.body.replaceChildren(board);
    });

    async function paintAndCompare(view: ViewState, sessionId: string): Promise<void> {
        renderBoard(board, view, { onVertexClick: () => {} });
        const truth = await api.getSession(sessionId);
        expect(new Map(renderedEdges(board))).toEqual(new Map(groundTruthEdges(truth)));
    }

    it("painter session: every round-trip leaves board == GET state", async () => {
        let view = initialViewState("painter");
        let state = await api.createSession({ m: 3, n: 3, N: 5 }, "painter", "paper");
        view = applyServerState(view, state);
        await paintAndCompare(view, state.id);
        const script: EdgeColor[] = ["R", "B", "R", "B", "R", "B", "R", "B", "R", "B"];
        let i = 0;
        while (view.session && view.session.state === "awaiting_painter_choice") {
            state = await api.submitColor(state.id, script[i % script.length]);
            view = applyServerState(view, state);
            await paintAndCompare(view, state.id);
            i += 1;
        }
        expect(view.session?.state).toBe("finished");
    });

    it("builder session: submitted edges come back rendered", async () => {
        let view = initialViewState("builder");
        let state = await api.createSession({ m: 2, n: 2, N: 4 }, "builder", "balanced");
        view = applyServerState(view, state);
        state = await api.submitEdge(state.id, 0, 3);
        view = applyServerState(view, state);
        await paintAndCompare(view, state.id);
        expect(view.session?.state).toBe("finished"); // any edge is a mono K2
    });

    it("witness clique edges render emphasized when finished", async () => {
        let view = initialViewState("painter");
        let state = await api.createSession({ m: 3, n: 3, N: 4 }, "painter", "paper");
        view = applyServerState(view, state);
        while (view.session && view.session.state === "awaiting_painter_choice") {
            state = await api.submitColor(state.id, "B");
            view = applyServerState(view, state);
        }
        expect(state.witness).not.toBeNull();
        renderBoard(board, view, { onVertexClick: () => {} });
        const heavy = [...board.querySelectorAll<SVGLineElement>("line[data-edge]")].filter(
            (line) => line.getAttribute("stroke-width") === "6",
        );
        expect(heavy.length).toBe(3); // the witness triangle
    });

    it("pending edge renders dashed", async () => {
        let view = initialViewState("painter");
        const state = await api.createSession({ m: 3, n: 3, N: 6 }, "painter", "paper");
        view = applyServerState(view, state);
        renderBoard(board, view, { onVertexClick: () => {} });
        const pending = board.querySelector<SVGLineElement>("line[data-pending]");
        expect(pending).not.toBeNull();
        expect(pending?.getAttribute("stroke-dasharray")).toBeTruthy();
    });
});

describe("turn discipline in the controls", () => {
    let service: MockService;

    beforeEach(() => {
        service = new MockService();
        vi.stubGlobal("fetch", service.fetch);
        document.body.replaceChildren();
    });

    it("color buttons are disabled once the game is over", async () => {
        const api = new SessionApi("http://mock");
        let view = initialViewState("painter");
        let state = await api.createSession({ m: 2, n: 2, N: 3 }, "painter", "paper");
        view = applyServerState(view, state);
        const controls = document.createElement("div");
        const clicks: EdgeColor[] = [];
        renderControls(controls, view, (c) => clicks.push(c));
        const buttons = [...controls.querySelectorAll("button")];
        expect(buttons.every((b) => !b.disabled)).toBe(true);

        state = await api.submitColor(state.id, "R"); // red K2: finished
        view = applyServerState(view, state);
        renderControls(controls, view, (c) => clicks.push(c));
        const after = [...controls.querySelectorAll("button")];
        expect(after.every((b) => b.disabled)).toBe(true);
        after.forEach((b) => b.click());
        expect(clicks).toEqual([]); // disabled buttons never fire actions
    });

    it("status panel reports moves and savings from the service", async () => {
        const api = new SessionApi("http://mock");
        let view = initialViewState("painter");
        let state = await api.createSession({ m: 3, n: 3, N: 6 }, "painter", "paper");
        state = await api.submitColor(state.id, "R");
        view = applyServerState(view, state);
        const status = document.createElement("div");
        renderStatus(status, view);
        expect(status.querySelector("[data-testid=moves]")?.textContent).toBe("1");
        expect(status.querySelector("[data-testid=savings]")?.textContent).toContain("14 of 15");
    });
});
