"""JSON API for playing the game in a browser.

One design per server. Sessions live in memory; mutations are serialized per
session while distinct sessions run fully in parallel.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .design import Design, design_to_json
from .errors import InvalidInputError
from .game import GameSession


def create_app(
    design: Design,
    *,
    default_hole: int = 0,
    seed: int | None = None,
    static_dir: str | None = None,
) -> FastAPI:
    app = FastAPI(title="counter-sliding game")
    sessions: dict[str, GameSession] = {}
    locks: dict[str, threading.Lock] = {}
    registry_lock = threading.Lock()

    @app.exception_handler(RequestValidationError)
    async def malformed(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": "malformed request"})

    async def read_body(request: Request) -> dict:
        if not await request.body():
            return {}
        try:
            data = await request.json()
        except Exception:
            raise _http(400, "request body is not valid JSON")
        if not isinstance(data, dict):
            raise _http(400, "request body must be a JSON object")
        return data

    def get_session(session_id: str) -> tuple[GameSession, threading.Lock]:
        with registry_lock:
            session = sessions.get(session_id)
            if session is None:
                raise _http(404, "unknown session")
            return session, locks[session_id]

    @app.get("/api/design")
    def get_design() -> dict:
        return design_to_json(design)

    @app.post("/api/session")
    async def create_session(request: Request) -> dict:
        body = await read_body(request)
        hole = body.get("hole", default_hole)
        if not isinstance(hole, int) or not (0 <= hole < design.n):
            raise _http(400, "hole out of range")
        session = GameSession(design, start=hole, seed=seed)
        with registry_lock:
            sessions[session.id] = session
            locks[session.id] = threading.Lock()
        return {"id": session.id}

    @app.get("/api/session/{session_id}")
    def get_state(session_id: str) -> dict:
        session, lock = get_session(session_id)
        with lock:
            return session.state()

    @app.post("/api/session/{session_id}/move")
    async def move(session_id: str, request: Request) -> dict:
        session, lock = get_session(session_id)
        body = await read_body(request)
        to = body.get("to")
        if not isinstance(to, int):
            raise _http(400, "move needs an integer 'to'")
        with lock:
            if not (0 <= to < design.n):
                raise _http(400, "destination out of range")
            if to == session.hole:
                raise _http(409, "destination is the current hole; pick another point")
            session.move(to)
            return session.state()

    @app.post("/api/session/{session_id}/undo")
    def undo(session_id: str) -> dict:
        session, lock = get_session(session_id)
        with lock:
            if not session.history:
                raise _http(409, "nothing to undo")
            session.undo()
            return session.state()

    @app.post("/api/session/{session_id}/scramble")
    async def scramble(session_id: str, request: Request) -> dict:
        session, lock = get_session(session_id)
        body = await read_body(request)
        steps = body.get("steps")
        if not isinstance(steps, int) or steps < 0:
            raise _http(400, "scramble needs a nonnegative integer 'steps'")
        with lock:
            session.scramble(steps)
            return session.state()

    @app.post("/api/session/{session_id}/reset")
    def reset(session_id: str) -> dict:
        session, lock = get_session(session_id)
        with lock:
            session.reset()
            return session.state()

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def _http(code: int, detail: str):
    from fastapi import HTTPException

    return HTTPException(status_code=code, detail=detail)


def serve(
    design: Design,
    port: int,
    *,
    host: str = "127.0.0.1",
    default_hole: int = 0,
    seed: int | None = None,
    static_dir: str | None = None,
) -> None:
    import uvicorn

    app = create_app(
        design, default_hole=default_hole, seed=seed, static_dir=static_dir
    )
    uvicorn.run(app, host=host, port=port, log_level="warning")
