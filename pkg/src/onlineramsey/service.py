"""Local HTTP service for interactive builder/painter sessions.

Endpoints (JSON bodies, schema version ``v=1``):

    POST /sessions                  {v, config:{m,n,N}, human_role, policy}
    GET  /sessions/{id}             -> public state
    POST /sessions/{id}/actions     {v, action: {type:"color", color:"R"|"B"}
                                        or    {type:"edge", u, v}}
    GET  /sessions/{id}/transcript  -> text/plain (finished sessions only)

Public state fields: v, id, config{m,n,N}, edges[[u,v,"R"|"B"],...],
state (awaiting_builder_move | awaiting_painter_choice | finished),
pending_edge, moves, savings, witness. Engine-internal strategy state is
never exposed.

Sessions live in memory with an idle expiry; a transcript file is
written when a game finishes. Actions on one session are serialized:
a second action arriving while one is in flight is rejected WrongTurn.
"""

from __future__ import annotations

import json
import mimetypes
import os
import re
import threading
import time
import uuid
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional

from .builders import make_builder
from .engine import (
    GameConfig,
    GameState,
    GameStatus,
    Transcript,
    apply_move,
    initial_state,
    savings_of_state,
)
from .graph import Color, GraphError, normalize_pair
from .painters import RemotePainter, make_painter

PROTOCOL_VERSION = 1
DEFAULT_IDLE_TIMEOUT = 30 * 60.0

AWAITING_BUILDER = "awaiting_builder_move"
AWAITING_PAINTER = "awaiting_painter_choice"
FINISHED = "finished"


class ServiceError(Exception):
    code = "ServiceError"
    http_status = 400

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)
        self.message = message or self.code


class UnknownPolicyError(ServiceError):
    code = "UnknownPolicy"
    http_status = 400


class InvalidConfigError(ServiceError):
    code = "InvalidConfig"
    http_status = 400


class UnknownSessionError(ServiceError):
    code = "UnknownSession"
    http_status = 404


class WrongTurnError(ServiceError):
    code = "WrongTurn"
    http_status = 409


class IllegalEdgeError(ServiceError):
    code = "IllegalEdge"
    http_status = 400


class SessionFinishedError(ServiceError):
    code = "SessionFinished"
    http_status = 409


class BadActionError(ServiceError):
    code = "BadAction"
    http_status = 400


class Session:
    def __init__(self, config: GameConfig, human_role: str, policy_spec: str):
        self.id = uuid.uuid4().hex
        self.config = config
        self.human_role = human_role
        self.policy_spec = policy_spec
        self.state: GameState = initial_state(config)
        self.moves: list[tuple[int, int, Color]] = []
        self.pending_edge: Optional[tuple[int, int]] = None
        self.lock = threading.Lock()
        self.last_touched = time.monotonic()
        self.transcript: Optional[Transcript] = None
        if human_role == "painter":
            self.builder = make_builder(policy_spec, config)
            self.painter = RemotePainter()
            self._advance_builder()
        else:
            self.builder = None
            self.painter = make_painter(policy_spec, config)

    @property
    def phase(self) -> str:
        if self.state.status is not GameStatus.IN_PROGRESS:
            return FINISHED
        return AWAITING_PAINTER if self.human_role == "painter" else AWAITING_BUILDER

    def touch(self) -> None:
        self.last_touched = time.monotonic()

    def _advance_builder(self) -> None:
        if self.state.status is not GameStatus.IN_PROGRESS:
            self.pending_edge = None
            return
        pair = self.builder.next_pair(self.state)
        if pair is None:
            raise ServiceError("engine builder stopped unexpectedly")
        self.pending_edge = normalize_pair(pair)

    def submit_color(self, color: Color) -> None:
        if self.phase == FINISHED:
            raise SessionFinishedError("session is finished")
        if self.phase != AWAITING_PAINTER:
            raise WrongTurnError("session is not awaiting a painter choice")
        pending = self.pending_edge
        self.painter.feed(color)
        chosen = self.painter.choose(self.state, pending)
        apply_move(self.state, pending[0], pending[1], chosen)
        self.moves.append((pending[0], pending[1], chosen))
        self.pending_edge = None
        if self.state.status is GameStatus.IN_PROGRESS:
            self._advance_builder()
        self._maybe_finish()

    def submit_edge(self, u: int, v: int) -> None:
        if self.phase == FINISHED:
            raise SessionFinishedError("session is finished")
        if self.phase != AWAITING_BUILDER:
            raise WrongTurnError("session is not awaiting a builder move")
        if not isinstance(u, int) or not isinstance(v, int):
            raise IllegalEdgeError("edge endpoints must be integers")
        if u == v or not (0 <= u < self.config.N and 0 <= v < self.config.N):
            raise IllegalEdgeError(f"illegal edge ({u},{v})")
        u, v = normalize_pair((u, v))
        if not self.state.graph.is_unbuilt(u, v):
            raise IllegalEdgeError(f"pair ({u},{v}) is already built")
        color = self.painter.choose(self.state, (u, v))
        apply_move(self.state, u, v, color)
        self.moves.append((u, v, color))
        self._maybe_finish()

    def _maybe_finish(self) -> None:
        if self.state.status is GameStatus.IN_PROGRESS or self.transcript is not None:
            return
        self.transcript = Transcript(
            self.config,
            None,
            tuple(self.moves),
            self.state.status,
            self.state.witness_color,
            self.state.moves_made,
            savings_of_state(self.state),
        )

    def public_state(self) -> dict:
        st = self.state
        witness = None
        if st.status is GameStatus.BUILDER_WON:
            witness = {
                "color": str(st.witness_color),
                "vertices": sorted(st.witness_clique),
            }
        return {
            "v": PROTOCOL_VERSION,
            "id": self.id,
            "config": {"m": self.config.m, "n": self.config.n, "N": self.config.N},
            "edges": [[u, v, str(c)] for u, v, c in st.graph.built_edges()],
            "state": self.phase,
            "pending_edge": list(self.pending_edge) if self.pending_edge else None,
            "moves": st.moves_made,
            "savings": savings_of_state(st),
            "witness": witness,
        }


class SessionManager:
    def __init__(self, out_dir: Optional[str] = None, idle_timeout: float = DEFAULT_IDLE_TIMEOUT):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self.idle_timeout = idle_timeout
        self.out_dir = out_dir

    def _purge(self) -> None:
        cutoff = time.monotonic() - self.idle_timeout
        stale = [sid for sid, s in self._sessions.items() if s.last_touched < cutoff]
        for sid in stale:
            del self._sessions[sid]

    def create(self, payload: dict) -> Session:
        cfg = payload.get("config") or {}
        try:
            config = GameConfig(int(cfg["m"]), int(cfg["n"]), int(cfg["N"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidConfigError(f"bad config: {exc}") from exc
        human_role = payload.get("human_role")
        if human_role not in ("painter", "builder"):
            raise InvalidConfigError("human_role must be 'painter' or 'builder'")
        policy = payload.get("policy")
        if not isinstance(policy, str) or not policy:
            raise UnknownPolicyError("policy name required")
        try:
            session = Session(config, human_role, policy)
        except ValueError as exc:
            raise UnknownPolicyError(str(exc)) from exc
        with self._lock:
            self._purge()
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            self._purge()
            session = self._sessions.get(session_id)
        if session is None:
            raise UnknownSessionError(f"no session {session_id!r}")
        session.touch()
        return session

    def act(self, session_id: str, action: dict) -> Session:
        session = self.get(session_id)
        if not session.lock.acquire(blocking=False):
            raise WrongTurnError("another action is in flight for this session")
        try:
            kind = action.get("type")
            if kind == "color":
                try:
                    color = Color.from_letter(action.get("color", ""))
                except ValueError as exc:
                    raise BadActionError(str(exc)) from exc
                session.submit_color(color)
            elif kind == "edge":
                session.submit_edge(action.get("u"), action.get("v"))
            else:
                raise BadActionError(f"unknown action type: {kind!r}")
            if session.phase == FINISHED:
                self._write_transcript(session)
            return session
        finally:
            session.lock.release()

    def transcript_text(self, session_id: str) -> str:
        session = self.get(session_id)
        if session.transcript is None:
            raise WrongTurnError("session is not finished")
        return session.transcript.to_text()

    def _write_transcript(self, session: Session) -> None:
        if self.out_dir is None or session.transcript is None:
            return
        path = Path(self.out_dir)
        path.mkdir(parents=True, exist_ok=True)
        (path / f"session_{session.id}.transcript").write_text(
            session.transcript.to_text(), encoding="utf-8"
        )


_SESSION_RE = re.compile(r"^/sessions/([0-9a-f]{32})$")
_ACTION_RE = re.compile(r"^/sessions/([0-9a-f]{32})/actions$")
_TRANSCRIPT_RE = re.compile(r"^/sessions/([0-9a-f]{32})/transcript$")


def make_handler(manager: SessionManager, static_dir: Optional[str] = None):
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, fmt, *args):  # keep test output quiet
            pass

        def _send_json(self, status: int, payload: dict) -> None:
            body = json.dumps(payload, sort_keys=True).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self._cors()
            self.end_headers()
            self.wfile.write(body)

        def _send_text(self, status: int, text: str, content_type="text/plain") -> None:
            body = text.encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", content_type)
            self.send_header("Content-Length", str(len(body)))
            self._cors()
            self.end_headers()
            self.wfile.write(body)

        def _cors(self) -> None:
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")

        def _error(self, exc: ServiceError) -> None:
            self._send_json(exc.http_status, {"v": PROTOCOL_VERSION, "error": exc.code, "message": exc.message})

        def _read_payload(self) -> dict:
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b"{}"
            try:
                payload = json.loads(raw.decode("utf-8") or "{}")
            except json.JSONDecodeError as exc:
                raise InvalidConfigError(f"bad JSON body: {exc}") from exc
            version = payload.get("v", PROTOCOL_VERSION)
            if version != PROTOCOL_VERSION:
                raise InvalidConfigError(f"unsupported protocol version {version!r}")
            return payload

        def do_OPTIONS(self):
            self.send_response(204)
            self.send_header("Content-Length", "0")
            self._cors()
            self.end_headers()

        def do_POST(self):
            try:
                if self.path == "/sessions":
                    session = manager.create(self._read_payload())
                    self._send_json(201, session.public_state())
                    return
                m = _ACTION_RE.match(self.path)
                if m:
                    payload = self._read_payload()
                    action = payload.get("action") or {}
                    session = manager.act(m.group(1), action)
                    self._send_json(200, session.public_state())
                    return
                self._error(UnknownSessionError(f"no route {self.path!r}"))
            except ServiceError as exc:
                self._error(exc)
            except GraphError as exc:
                self._error(IllegalEdgeError(str(exc)))

        def do_GET(self):
            try:
                m = _SESSION_RE.match(self.path)
                if m:
                    self._send_json(200, manager.get(m.group(1)).public_state())
                    return
                m = _TRANSCRIPT_RE.match(self.path)
                if m:
                    self._send_text(200, manager.transcript_text(m.group(1)))
                    return
                if static_dir is not None:
                    self._serve_static()
                    return
                self._error(UnknownSessionError(f"no route {self.path!r}"))
            except ServiceError as exc:
                self._error(exc)

        def _serve_static(self):
            rel = self.path.lstrip("/") or "index.html"
            root = Path(static_dir).resolve()
            target = (root / rel).resolve()
            if not str(target).startswith(str(root)) or not target.is_file():
                self._error(UnknownSessionError(f"no route {self.path!r}"))
                return
            ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
            body = target.read_bytes()
            self.send_response(200)
            self.send_header("Content-Type", ctype)
            self.send_header("Content-Length", str(len(body)))
            self._cors()
            self.end_headers()
            self.wfile.write(body)

    return Handler


def make_server(
    host: str = "127.0.0.1",
    port: int = 0,
    out_dir: Optional[str] = None,
    idle_timeout: float = DEFAULT_IDLE_TIMEOUT,
    static_dir: Optional[str] = None,
) -> tuple[ThreadingHTTPServer, SessionManager]:
    manager = SessionManager(out_dir=out_dir, idle_timeout=idle_timeout)
    server = ThreadingHTTPServer((host, port), make_handler(manager, static_dir))
    return server, manager


def serve(host: str, port: int, out_dir: Optional[str], static_dir: Optional[str] = None) -> None:
    server, _ = make_server(host, port, out_dir=out_dir, static_dir=static_dir)
    addr = server.server_address
    print(f"session service listening on http://{addr[0]}:{addr[1]}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
