// In-memory double of the session service: same endpoints, same JSON
// schema, simple deterministic engine (builder proposes the first
// unbuilt pair in sweep order; painter always answers blue). Games are
// scored for the diagonal (m,n) target on small boards.

import type { EdgeColor, GameConfig, PublicState } from "../src/api.js";

interface MockSession {
    id: string;
    config: GameConfig;
    humanRole: "painter" | "builder";
    edges: [number, number, EdgeColor][];
    pending: [number, number] | null;
    finished: boolean;
    witness: { color: EdgeColor; vertices: number[] } | null;
}

function pairList(n: number): [number, number][] {
    const out: [number, number][] = [];
    for (let v = 1; v < n; v++) {
        for (let u = 0; u < v; u++) out.push([u, v]);
    }
    return out;
}

export class MockService {
    sessions = new Map<string, MockSession>();
    private counter = 0;

    private edgeColor(s: MockSession, u: number, v: number): EdgeColor | null {
        for (const [a, b, c] of s.edges) {
            if ((a === u && b === v) || (a === v && b === u)) return c;
        }
        return null;
    }

    private nextUnbuilt(s: MockSession): [number, number] | null {
        for (const [u, v] of pairList(s.config.N)) {
            if (this.edgeColor(s, u, v) === null) return [u, v];
        }
        return null;
    }

    private findClique(s: MockSession, color: EdgeColor, k: number): number[] | null {
        const n = s.config.N;
        const vertices = [...Array(n).keys()];
        const combos = (arr: number[], size: number): number[][] =>
            size === 0
                ? [[]]
                : arr.flatMap((v, i) => combos(arr.slice(i + 1), size - 1).map((rest) => [v, ...rest]));
        for (const sub of combos(vertices, k)) {
            let ok = true;
            for (let i = 0; i < sub.length && ok; i++) {
                for (let j = i + 1; j < sub.length && ok; j++) {
                    if (this.edgeColor(s, sub[i], sub[j]) !== color) ok = false;
                }
            }
            if (ok) return sub;
        }
        return null;
    }

    private applyMove(s: MockSession, u: number, v: number, color: EdgeColor): void {
        s.edges.push(u <= v ? [u, v, color] : [v, u, color]);
        const target = color === "R" ? s.config.m : s.config.n;
        const clique = this.findClique(s, color, target);
        if (clique) {
            s.finished = true;
            s.witness = { color, vertices: clique };
            s.pending = null;
        } else if (s.edges.length === (s.config.N * (s.config.N - 1)) / 2) {
            s.finished = true;
            s.pending = null;
        }
    }

    publicState(s: MockSession): PublicState {
        const total = (s.config.N * (s.config.N - 1)) / 2;
        return {
            v: 1,
            id: s.id,
            config: { ...s.config },
            edges: s.edges.map((e) => [...e] as [number, number, EdgeColor]),
            state: s.finished
                ? "finished"
                : s.humanRole === "painter"
                  ? "awaiting_painter_choice"
                  : "awaiting_builder_move",
            pending_edge: s.pending ? [...s.pending] : null,
            moves: s.edges.length,
            savings: total - s.edges.length,
            witness: s.witness ? { ...s.witness, vertices: [...s.witness.vertices] } : null,
        };
    }

    fetch = async (input: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
        const url = String(input);
        const method = init?.method ?? "GET";
        const body = init?.body ? JSON.parse(String(init.body)) : {};
        const respond = (status: number, payload: unknown) =>
            new Response(JSON.stringify(payload), {
                status,
                headers: { "Content-Type": "application/json" },
            });

        if (method === "POST" && url.endsWith("/sessions")) {
            const { config, human_role: humanRole, policy } = body;
            if (!policy || policy === "nope") {
                return respond(400, { v: 1, error: "UnknownPolicy", message: "unknown policy" });
            }
            if (!config || config.N < 2 || config.m < 2 || config.n < 2) {
                return respond(400, { v: 1, error: "InvalidConfig", message: "bad config" });
            }
            const session: MockSession = {
                id: `mock${this.counter++}`.padEnd(32, "0"),
                config,
                humanRole,
                edges: [],
                pending: null,
                finished: false,
                witness: null,
            };
            if (humanRole === "painter") session.pending = [0, 1];
            this.sessions.set(session.id, session);
            return respond(201, this.publicState(session));
        }

        const actionMatch = url.match(/\/sessions\/([^/]+)\/actions$/);
        if (method === "POST" && actionMatch) {
            const session = this.sessions.get(actionMatch[1]);
            if (!session) return respond(404, { v: 1, error: "UnknownSession", message: "gone" });
            if (session.finished) {
                return respond(409, { v: 1, error: "SessionFinished", message: "done" });
            }
            const action = body.action ?? {};
            if (action.type === "color") {
                if (session.humanRole !== "painter" || !session.pending) {
                    return respond(409, { v: 1, error: "WrongTurn", message: "not your turn" });
                }
                const [u, v] = session.pending;
                this.applyMove(session, u, v, action.color);
                if (!session.finished) session.pending = this.nextUnbuilt(session);
                return respond(200, this.publicState(session));
            }
            if (action.type === "edge") {
                if (session.humanRole !== "builder") {
                    return respond(409, { v: 1, error: "WrongTurn", message: "not your turn" });
                }
                const { u, v } = action;
                if (u === v || this.edgeColor(session, u, v) !== null) {
                    return respond(400, { v: 1, error: "IllegalEdge", message: "bad edge" });
                }
                this.applyMove(session, u, v, "B");
                return respond(200, this.publicState(session));
            }
            return respond(400, { v: 1, error: "BadAction", message: "unknown action" });
        }

        const getMatch = url.match(/\/sessions\/([^/]+)$/);
        if (method === "GET" && getMatch) {
            const session = this.sessions.get(getMatch[1]);
            if (!session) return respond(404, { v: 1, error: "UnknownSession", message: "gone" });
            return respond(200, this.publicState(session));
        }
        return respond(404, { v: 1, error: "UnknownSession", message: `no route ${url}` });
    };
}
