// Typed client for the session service's JSON protocol (v=1).

export interface GameConfig {
    m: number;
    n: number;
    N: number;
}

export type EdgeColor = "R" | "B";

export type SessionPhase =
    | "awaiting_builder_move"
    | "awaiting_painter_choice"
    | "finished";

export type HumanRole = "painter" | "builder";

export interface Witness {
    color: EdgeColor;
    vertices: number[];
}

export interface PublicState {
    v: number;
    id: string;
    config: GameConfig;
    edges: [number, number, EdgeColor][];
    state: SessionPhase;
    pending_edge: [number, number] | null;
    moves: number;
    savings: number;
    witness: Witness | null;
}

export class ApiError extends Error {
    readonly code: string;
    readonly status: number;

    constructor(code: string, message: string, status: number) {
        super(message);
        this.code = code;
        this.status = status;
    }
}

async function parse(response: Response): Promise<PublicState> {
    const body = await response.json();
    if (!response.ok) {
        throw new ApiError(
            body.error ?? "Unknown",
            body.message ?? response.statusText,
            response.status,
        );
    }
    return body as PublicState;
}

export class SessionApi {
    constructor(private readonly baseUrl: string) {}

    async createSession(
        config: GameConfig,
        humanRole: HumanRole,
        policy: string,
    ): Promise<PublicState> {
        const response = await fetch(`${this.baseUrl}/sessions`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ v: 1, config, human_role: humanRole, policy }),
        });
        return parse(response);
    }

    async getSession(id: string): Promise<PublicState> {
        return parse(await fetch(`${this.baseUrl}/sessions/${id}`));
    }

    async submitColor(id: string, color: EdgeColor): Promise<PublicState> {
        return this.submitAction(id, { type: "color", color });
    }

    async submitEdge(id: string, u: number, v: number): Promise<PublicState> {
        return this.submitAction(id, { type: "edge", u, v });
    }

    private async submitAction(id: string, action: object): Promise<PublicState> {
        const response = await fetch(`${this.baseUrl}/sessions/${id}/actions`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ v: 1, action }),
        });
        return parse(response);
    }

    transcriptUrl(id: string): string {
        return `${this.baseUrl}/sessions/${id}/transcript`;
    }
}
