"""Session service for the companion web UI.

Plain JSON over HTTP, stdlib only:

    POST   /sessions                {"et": <document>, "strategy": <token>}
    POST   /sessions/{id}/answers   {"answer": "correct" | "wrong"}
    GET    /sessions/{id}/tree      current tree snapshot with per-node metrics
    DELETE /sessions/{id}
    GET    /healthz

Sessions live in memory and are evicted after an idle hour; requests for
the same session are serialized by a per-session lock. The built UI bundle
is served at /, and the shipped fixture files at /fixtures/<name>.json.
"""

from __future__ import annotations

import json
import secrets
import threading
import time
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .formats import FormatError, fixtures_dir, met_from_document
from .met import Answer, compute_metrics
from .session import SessionError, SessionState, start_session, step_session
from .strategies import PreconditionError, strategy_from_token

DEFAULT_IDLE_SECONDS = 3600.0

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".mjs": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json",
    ".map": "application/json",
    ".svg": "image/svg+xml",
    ".ico": "image/x-icon",
}


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


@dataclass
class SessionHandle:
    id: str
    state: SessionState
    created_at: float
    last_used: float
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """Thread-safe in-memory session table with idle eviction."""

    def __init__(self, idle_seconds: float = DEFAULT_IDLE_SECONDS):
        self.idle_seconds = idle_seconds
        self._lock = threading.Lock()
        self._sessions: dict[str, SessionHandle] = {}

    def sweep(self, now: float | None = None) -> None:
        now = time.monotonic() if now is None else now
        with self._lock:
            stale = [
                sid for sid, handle in self._sessions.items()
                if now - handle.last_used > self.idle_seconds
            ]
            for sid in stale:
                del self._sessions[sid]

    def create(self, state: SessionState) -> SessionHandle:
        handle = SessionHandle(
            id=secrets.token_hex(8),
            state=state,
            created_at=time.monotonic(),
            last_used=time.monotonic(),
        )
        with self._lock:
            self._sessions[handle.id] = handle
        return handle

    def get(self, sid: str) -> SessionHandle:
        with self._lock:
            handle = self._sessions.get(sid)
        if handle is None:
            raise ApiError(404, f"unknown session {sid}")
        handle.last_used = time.monotonic()
        return handle

    def delete(self, sid: str) -> None:
        with self._lock:
            if sid not in self._sessions:
                raise ApiError(404, f"unknown session {sid}")
            del self._sessions[sid]

    def __len__(self) -> int:
        with self._lock:
            return len(self._sessions)


def _question_payload(state: SessionState) -> dict:
    node = state.pending_node()
    return {"id": node.id, "label": node.label}


def _report_payload(state: SessionState) -> dict:
    report = state.report
    assert report is not None
    return {
        "buggy": report.buggy,
        "buggy_label": report.buggy_label,
        "questions": report.questions,
        "transcript": [
            {
                "id": node,
                "label": state.initial.nodes[node].label,
                "answer": answer.value,
            }
            for node, answer in report.transcript
        ],
    }


def _step_payload(state: SessionState) -> dict:
    if state.finished:
        return {"finished": True, "report": _report_payload(state)}
    return {
        "finished": False,
        "question": _question_payload(state),
        "question_number": len(state.transcript) + 1,
    }


def tree_snapshot(state: SessionState) -> dict:
    """The current tree as nested objects, with per-node split metrics."""
    met = state.current
    answered = {node for node, _ in state.transcript}

    def build(n: int, metrics) -> dict:
        node = met.nodes[n]
        m = metrics[n]
        return {
            "id": node.id,
            "label": node.label,
            "wi": node.wi,
            "w": m.w,
            "up": m.up,
            "down": m.down,
            "marking": met.marking[n].value,
            "answered": n in answered,
            "pending": n == state.pending,
            "children": [build(c, metrics) for c in node.children],
        }

    root = None
    if not met.is_empty:
        root = build(met.root, compute_metrics(met))
    return {
        "finished": state.finished,
        "pending": state.pending,
        "questions_asked": len(state.transcript),
        "node_count": len(met.nodes),
        "root": root,
    }


class DebugService:
    """Transport-independent core of the HTTP API."""

    def __init__(self, store: SessionStore | None = None):
        self.store = store if store is not None else SessionStore()

    def create_session(self, body: dict) -> dict:
        if not isinstance(body, dict):
            raise ApiError(400, "request body must be a JSON object")
        try:
            strategy = strategy_from_token(body.get("strategy", "dqo-general"))
        except ValueError as exc:
            raise ApiError(400, str(exc)) from None
        if "et" not in body:
            raise ApiError(400, "missing 'et' document")
        try:
            met = met_from_document(body["et"])
            state = start_session(met, strategy)
        except (FormatError, ValueError, SessionError) as exc:
            raise ApiError(400, str(exc)) from None
        handle = self.store.create(state)
        return {
            "session": handle.id,
            "strategy": strategy.value,
            "question": _question_payload(state),
            "question_number": 1,
        }

    def post_answer(self, sid: str, body: dict) -> dict:
        if not isinstance(body, dict):
            raise ApiError(400, "request body must be a JSON object")
        raw = body.get("answer")
        if raw not in (Answer.CORRECT.value, Answer.WRONG.value):
            raise ApiError(400, "answer must be 'correct' or 'wrong'")
        answer = Answer(raw)
        handle = self.store.get(sid)
        with handle.lock:
            if handle.state.finished:
                raise ApiError(409, "session already finished")
            try:
                handle.state = step_session(handle.state, answer)
            except (SessionError, PreconditionError) as exc:
                raise ApiError(409, str(exc)) from None
            return _step_payload(handle.state)

    def get_tree(self, sid: str) -> dict:
        handle = self.store.get(sid)
        with handle.lock:
            return tree_snapshot(handle.state)

    def delete_session(self, sid: str) -> None:
        self.store.delete(sid)


def _default_static_dir() -> Path | None:
    candidate = Path.cwd() / "frontend" / "dist"
    return candidate if candidate.is_dir() else None


class AdqServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address, service: DebugService, static_dir: Path | None):
        super().__init__(address, _Handler)
        self.service = service
        self.static_dir = static_dir
        self.fixtures_path = fixtures_dir()


class _Handler(BaseHTTPRequestHandler):
    server: AdqServer
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt: str, *args) -> None:  # keep test output quiet
        pass

    def _send_json(self, status: int, payload: object) -> None:
        data = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def _send_empty(self, status: int) -> None:
        self.send_response(status)
        self.send_header("Content-Length", "0")
        self.end_headers()

    def _read_body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            raise ApiError(400, "empty request body")
        try:
            return json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise ApiError(400, f"bad JSON body: {exc}") from None

    def _route(self, method: str) -> None:
        self.server.service.store.sweep()
        parts = [p for p in self.path.split("?")[0].split("/") if p]
        try:
            if method == "GET" and parts == ["healthz"]:
                self._send_json(200, {"status": "ok"})
            elif method == "POST" and parts == ["sessions"]:
                self._send_json(200, self.server.service.create_session(self._read_body()))
            elif method == "POST" and len(parts) == 3 and parts[0] == "sessions" and parts[2] == "answers":
                self._send_json(200, self.server.service.post_answer(parts[1], self._read_body()))
            elif method == "GET" and len(parts) == 3 and parts[0] == "sessions" and parts[2] == "tree":
                self._send_json(200, self.server.service.get_tree(parts[1]))
            elif method == "DELETE" and len(parts) == 2 and parts[0] == "sessions":
                self.server.service.delete_session(parts[1])
                self._send_empty(204)
            elif method == "GET" and parts[:1] == ["fixtures"]:
                self._serve_fixture(parts)
            elif method == "GET":
                self._serve_static(parts)
            else:
                raise ApiError(404, f"no route for {method} {self.path}")
        except ApiError as exc:
            self._send_json(exc.status, {"error": str(exc)})

    def _serve_fixture(self, parts: list[str]) -> None:
        base = self.server.fixtures_path
        if len(parts) == 1:
            names = sorted(p.stem for p in base.glob("*.json"))
            self._send_json(200, {"fixtures": names})
            return
        if len(parts) != 2 or "/" in parts[1] or ".." in parts[1]:
            raise ApiError(404, "bad fixture path")
        name = parts[1][:-5] if parts[1].endswith(".json") else parts[1]
        path = base / f"{name}.json"
        if not path.is_file():
            raise ApiError(404, f"unknown fixture {name!r}")
        self._send_file(path)

    def _serve_static(self, parts: list[str]) -> None:
        base = self.server.static_dir
        if base is None:
            raise ApiError(404, "no UI bundle configured; start with --static-dir")
        rel = "/".join(parts) or "index.html"
        path = (base / rel).resolve()
        if not str(path).startswith(str(base.resolve())) or not path.is_file():
            raise ApiError(404, f"no such file {rel!r}")
        self._send_file(path)

    def _send_file(self, path: Path) -> None:
        data = path.read_bytes()
        ctype = _CONTENT_TYPES.get(path.suffix, "application/octet-stream")
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def do_GET(self) -> None:
        self._route("GET")

    def do_POST(self) -> None:
        self._route("POST")

    def do_DELETE(self) -> None:
        self._route("DELETE")


def create_server(
    host: str = "127.0.0.1",
    port: int = 8321,
    static_dir: str | Path | None = None,
    idle_seconds: float = DEFAULT_IDLE_SECONDS,
) -> AdqServer:
    service = DebugService(SessionStore(idle_seconds=idle_seconds))
    resolved = Path(static_dir) if static_dir is not None else _default_static_dir()
    return AdqServer((host, port), service, resolved)
