"""Session-based HTTP/JSON facade for playing against the engine.

The human is always P1; every accepted P1 move is answered with the
engine's P2 reply in the same exchange, so at rest a session is either on
P1's turn or finished.  Sessions live in memory and expire after an idle
timeout.

Endpoints:
  POST /games               create a session
  GET  /games/{id}          current state document
  POST /games/{id}/moves    submit a P1 move, body {"move": "uv"}
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .board import (
    GameStatus,
    Position,
    apply_move,
    edge_name,
    edges_in,
    format_position,
    parse_move,
    triangle_in,
)
from .strategy import engine_move

DEFAULT_IDLE_TTL = 3600.0


@dataclass
class GameSession:
    id: str
    position: Position = field(default_factory=Position)
    status: GameStatus = GameStatus.ONGOING
    transcript: list[str] = field(default_factory=list)
    last_explanation: dict | None = None
    last_engine_move: str | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_access: float = field(default_factory=time.monotonic)

    def state_doc(self) -> dict:
        turn = None
        if self.status is GameStatus.ONGOING:
            turn = self.position.to_move().name.lower()
        doc = {
            "id": self.id,
            "position": format_position(self.position),
            "status": self.status.value,
            "turn": turn,
            "transcript": list(self.transcript),
            "engine_move": self.last_engine_move,
            "explanation": self.last_explanation,
        }
        if self.status is not GameStatus.ONGOING:
            loser = (
                self.position.red
                if self.status is GameStatus.P1_LOST
                else self.position.blue
            )
            tri = triangle_in(loser)
            doc["losing_triangle"] = (
                [edge_name(e) for e in edges_in(tri)] if tri is not None else None
            )
        return doc


class SessionStore:
    """In-memory sessions with lazy idle expiry."""

    def __init__(self, idle_ttl: float = DEFAULT_IDLE_TTL):
        self.idle_ttl = idle_ttl
        self._sessions: dict[str, GameSession] = {}
        self._lock = threading.Lock()

    def create(self) -> GameSession:
        session = GameSession(id=secrets.token_hex(8))
        with self._lock:
            self._expire()
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> GameSession | None:
        with self._lock:
            self._expire()
            session = self._sessions.get(session_id)
            if session is not None:
                session.last_access = time.monotonic()
            return session

    def _expire(self) -> None:
        cutoff = time.monotonic() - self.idle_ttl
        stale = [sid for sid, s in self._sessions.items() if s.last_access < cutoff]
        for sid in stale:
            del self._sessions[sid]


def _error(status_code: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status_code, content={"error": message})


def create_app(static_dir: str | None = None, idle_ttl: float = DEFAULT_IDLE_TTL) -> FastAPI:
    app = FastAPI(title="simgame")
    store = SessionStore(idle_ttl=idle_ttl)
    app.state.store = store

    @app.post("/games", status_code=201)
    def create_game() -> dict:
        return store.create().state_doc()

    @app.get("/games/{session_id}")
    def get_state(session_id: str):
        session = store.get(session_id)
        if session is None:
            return _error(404, "no such game")
        return session.state_doc()

    @app.post("/games/{session_id}/moves")
    async def submit_move(session_id: str, request: Request):
        session = store.get(session_id)
        if session is None:
            return _error(404, "no such game")
        try:
            body = await request.json()
        except Exception:
            return _error(400, "body must be JSON")
        if not isinstance(body, dict) or not isinstance(body.get("move"), str):
            return _error(400, 'body must be {"move": "uv"}')
        try:
            e = parse_move(body["move"])
        except ValueError as exc:
            return _error(400, f"malformed move: {exc}")

        if not session.lock.acquire(blocking=False):
            return _error(409, "another move for this game is in flight")
        try:
            if session.status is not GameStatus.ONGOING:
                return _error(409, "game is already over")
            if not session.position.uncolored >> e & 1:
                return _error(409, f"edge {body['move']} is already coloured")

            position, status = apply_move(session.position, e)
            session.transcript.append(edge_name(e))
            if status is GameStatus.ONGOING:
                reply, decision = engine_move(position)
                position, status = apply_move(position, reply)
                session.transcript.append(edge_name(reply))
                session.last_engine_move = edge_name(reply)
                session.last_explanation = decision.to_doc()
            else:
                session.last_engine_move = None
                session.last_explanation = None
            session.position = position
            session.status = status
            return session.state_doc()
        finally:
            session.lock.release()

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
