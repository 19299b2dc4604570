// Wires the new-game form, the board, and the action round-trips.

import { ApiError, SessionApi, type EdgeColor, type HumanRole } from "./api.js";
import {
    applyServerState,
    edgeAlreadyBuilt,
    initialViewState,
    selectVertex,
    setError,
    type ViewState,
} from "./state.js";
import {
    renderBoard,
    renderControls,
    renderError,
    renderLog,
    renderStatus,
} from "./render.js";

interface Elements {
    form: HTMLFormElement;
    board: HTMLElement;
    status: HTMLElement;
    controls: HTMLElement;
    log: HTMLElement;
    error: HTMLElement;
    transcript: HTMLAnchorElement;
}

export class App {
    private view: ViewState = initialViewState("painter");
    private api: SessionApi;
    private busy = false;

    constructor(private readonly els: Elements, baseUrl: string) {
        this.api = new SessionApi(baseUrl);
        els.form.addEventListener("submit", (ev) => {
            ev.preventDefault();
            void this.newGame();
        });
    }

    private readForm() {
        const data = new FormData(this.els.form);
        const m = Number(data.get("m"));
        const n = Number(data.get("n"));
        const N = Number(data.get("N"));
        const role = String(data.get("role")) as HumanRole;
        const policy = String(data.get("policy"));
        const server = String(data.get("server") || "");
        return { m, n, N, role, policy, server };
    }

    async newGame(): Promise<void> {
        const { m, n, N, role, policy, server } = this.readForm();
        if (!(m >= 2 && n >= 2 && N >= 2)) {
            this.view = setError(this.view, "clique targets and vertex count must be at least 2");
            this.paint();
            return;
        }
        if (server) this.api = new SessionApi(server);
        this.view = initialViewState(role);
        try {
            const state = await this.api.createSession({ m, n, N }, role, policy);
            this.view = applyServerState(this.view, state);
        } catch (err) {
            this.view = setError(this.view, describe(err));
        }
        this.paint();
    }

    async chooseColor(color: EdgeColor): Promise<void> {
        const session = this.view.session;
        if (!session || this.busy || session.state !== "awaiting_painter_choice") return;
        this.busy = true;
        try {
            const next = await this.api.submitColor(session.id, color);
            this.view = applyServerState(this.view, next);
        } catch (err) {
            this.view = setError(this.view, describe(err));
        } finally {
            this.busy = false;
        }
        this.paint();
    }

    async clickVertex(vertex: number): Promise<void> {
        const session = this.view.session;
        if (!session || this.busy || session.state !== "awaiting_builder_move") return;
        const { view, edge } = selectVertex(this.view, vertex);
        this.view = view;
        if (edge) {
            if (edgeAlreadyBuilt(this.view, edge[0], edge[1])) {
                this.view = setError(this.view, `edge (${edge[0]},${edge[1]}) is already built`);
            } else {
                this.busy = true;
                try {
                    const next = await this.api.submitEdge(session.id, edge[0], edge[1]);
                    this.view = applyServerState(this.view, next);
                } catch (err) {
                    this.view = setError(this.view, describe(err));
                } finally {
                    this.busy = false;
                }
            }
        }
        this.paint();
    }

    paint(): void {
        renderBoard(this.els.board, this.view, {
            onVertexClick: (v) => void this.clickVertex(v),
        });
        renderStatus(this.els.status, this.view);
        renderControls(this.els.controls, this.view, (c) => void this.chooseColor(c));
        renderLog(this.els.log, this.view);
        renderError(this.els.error, this.view);
        const session = this.view.session;
        if (session && session.state === "finished") {
            this.els.transcript.href = this.api.transcriptUrl(session.id);
            this.els.transcript.style.display = "inline";
        } else {
            this.els.transcript.style.display = "none";
        }
    }
}

function describe(err: unknown): string {
    if (err instanceof ApiError) return `${err.code}: ${err.message}`;
    return err instanceof Error ? err.message : String(err);
}

export function mount(doc: Document, baseUrl: string): App {
    const els: Elements = {
        form: doc.querySelector("#new-game") as HTMLFormElement,
        board: doc.querySelector("#board") as HTMLElement,
        status: doc.querySelector("#status") as HTMLElement,
        controls: doc.querySelector("#controls") as HTMLElement,
        log: doc.querySelector("#log") as HTMLElement,
        error: doc.querySelector("#error") as HTMLElement,
        transcript: doc.querySelector("#transcript") as HTMLAnchorElement,
    };
    return new App(els, baseUrl);
}

if (typeof document !== "undefined" && document.querySelector("#new-game")) {
    mount(document, window.location.origin);
}
