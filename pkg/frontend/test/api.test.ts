import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, SessionApi } from "../src/api.js";

function jsonResponse(status: number, payload: unknown): Response {
    return new Response(JSON.stringify(payload), {
        status,
        headers: { "Content-Type": "application/json" },
    });
}

const STATE = {
    v: 1,
    id: "abc",
    config: { m: 3, n: 3, N: 6 },
    edges: [],
    state: "awaiting_painter_choice",
    pending_edge: [0, 1],
    moves: 0,
    savings: 15,
    witness: null,
};

describe("SessionApi", () => {
    afterEach(() => vi.unstubAllGlobals());

    it("posts the create payload to /sessions", async () => {
        const fetchMock = vi.fn().mockResolvedValue(jsonResponse(201, STATE));
        vi.stubGlobal("fetch", fetchMock);
        const api = new SessionApi("http://svc");
        const state = await api.createSession({ m: 3, n: 3, N: 6 }, "painter", "paper");
        expect(state.id).toBe("abc");
        const [url, init] = fetchMock.mock.calls[0];
        expect(url).toBe("http://svc/sessions");
        expect(JSON.parse(init.body)).toEqual({
            v: 1,
            config: { m: 3, n: 3, N: 6 },
            human_role: "painter",
            policy: "paper",
        });
    });

    it("posts color actions", async () => {
        const fetchMock = vi.fn().mockResolvedValue(jsonResponse(200, STATE));
        vi.stubGlobal("fetch", fetchMock);
        await new SessionApi("http://svc").submitColor("abc", "R");
        const [url, init] = fetchMock.mock.calls[0];
        expect(url).toBe("http://svc/sessions/abc/actions");
        expect(JSON.parse(init.body).action).toEqual({ type: "color", color: "R" });
    });

    it("posts edge actions", async () => {
        const fetchMock = vi.fn().mockResolvedValue(jsonResponse(200, STATE));
        vi.stubGlobal("fetch", fetchMock);
        await new SessionApi("http://svc").submitEdge("abc", 2, 5);
        const [, init] = fetchMock.mock.calls[0];
        expect(JSON.parse(init.body).action).toEqual({ type: "edge", u: 2, v: 5 });
    });

    it("surfaces service errors as ApiError", async () => {
        const fetchMock = vi
            .fn()
            .mockImplementation(async () =>
                jsonResponse(409, { v: 1, error: "WrongTurn", message: "nope" }),
            );
        vi.stubGlobal("fetch", fetchMock);
        const api = new SessionApi("http://svc");
        await expect(api.submitColor("abc", "R")).rejects.toMatchObject({
            code: "WrongTurn",
            status: 409,
        });
        await expect(api.submitColor("abc", "R")).rejects.toBeInstanceOf(ApiError);
    });

    it("builds transcript urls", () => {
        expect(new SessionApi("http://svc").transcriptUrl("xyz")).toBe(
            "http://svc/sessions/xyz/transcript",
        );
    });
});
