"""HTTP session service: the JSON protocol the browser workbench speaks.

Sessions are in-memory with TTL eviction; each holds a current frame and the
pipeline history that produced it.  Requests within one session serialize on
a per-session lock; different sessions proceed in parallel (evaluation is
pure, so no other coordination exists).

Student mistakes (parse and evaluation errors) return HTTP 200 with an
``error`` body: they are lesson content for the UI to display, not transport
failures.  Transport-level codes are reserved for protocol misuse (unknown
session/fixture/exercise, oversized source, malformed frames).
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from fastapi import FastAPI, Header, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from . import frameio
from .engine import StageTrace, eval_pipeline
from .errors import CubesError, SourceError
from .exercises import Exercise, builtin_exercises, grade
from .fixtures import FIXTURES
from .lang import parse_pipeline
from .model import CubeFrame

MAX_SOURCE_BYTES = 16 * 1024
DEFAULT_TTL_SECS = 4 * 3600.0


@dataclass
class ServiceConfig:
    session_ttl_secs: float = DEFAULT_TTL_SECS
    instructor_token: Optional[str] = None
    fixture_dir: Optional[str] = None
    cors_origins: tuple[str, ...] = ("*",)
    clock: Callable[[], float] = time.monotonic


@dataclass
class Session:
    id: str
    initial_frame: CubeFrame
    current_frame: CubeFrame
    history: list[tuple[str, list[StageTrace]]] = field(default_factory=list)
    active_exercise: Optional[str] = None
    expires_at: float = 0.0
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    def __init__(self, ttl_secs: float, clock: Callable[[], float]):
        self.ttl_secs = ttl_secs
        self.clock = clock
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def _purge(self) -> None:
        now = self.clock()
        dead = [sid for sid, s in self._sessions.items() if s.expires_at <= now]
        for sid in dead:
            del self._sessions[sid]

    def create(self, frame: CubeFrame) -> Session:
        session = Session(id=secrets.token_hex(16), initial_frame=frame,
                          current_frame=frame)
        with self._lock:
            self._purge()
            session.expires_at = self.clock() + self.ttl_secs
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            self._purge()
            session = self._sessions.get(session_id)
            if session is None:
                raise HTTPException(status_code=404,
                                    detail=f"unknown session {session_id!r}")
            session.expires_at = self.clock() + self.ttl_secs
            return session


def _error_body(err: SourceError) -> dict:
    return {
        "message": err.message,
        "span": list(err.span) if err.span else None,
        "hint": err.hint,
        "code": err.code,
        "stage_index": getattr(err, "stage_index", None),
    }


def _load_fixture_dir(path: str) -> dict[str, CubeFrame]:
    frames: dict[str, CubeFrame] = {}
    for file in sorted(Path(path).iterdir()):
        if file.suffix not in (".csv", ".json"):
            continue
        try:
            frames[file.stem] = frameio.load_frame(str(file))
        except (OSError, CubesError):
            continue  # unreadable files are skipped, not fatal
    return frames


class CreateSessionRequest(BaseModel):
    fixture: Optional[str] = None
    frame: Optional[dict] = None


class ExecuteRequest(BaseModel):
    source: str = ""
    preview: bool = False


class GradeRequest(BaseModel):
    exercise_id: str
    source: str = ""


def create_app(config: Optional[ServiceConfig] = None) -> FastAPI:
    config = config or ServiceConfig()
    app = FastAPI(title="cubeframes service", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(config.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    store = SessionStore(config.session_ttl_secs, config.clock)
    app.state.store = store
    app.state.config = config

    fixtures: dict[str, CubeFrame] = {name: factory()
                                      for name, factory in FIXTURES.items()}
    if config.fixture_dir:
        fixtures.update(_load_fixture_dir(config.fixture_dir))

    exercise_bank: dict[str, Exercise] = {
        ex.id: ex for ex in builtin_exercises()}

    def _instructor_ok(authorization: Optional[str]) -> bool:
        if not config.instructor_token or not authorization:
            return False
        scheme, _, token = authorization.partition(" ")
        return scheme.lower() == "bearer" and token == config.instructor_token

    # -- sessions -------------------------------------------------------------

    @app.post("/sessions")
    def create_session(body: CreateSessionRequest) -> dict:
        if body.frame is not None:
            try:
                frame = frameio.frame_from_wire(body.frame)
            except CubesError as err:
                raise HTTPException(status_code=400, detail=str(err))
        elif body.fixture is not None:
            if body.fixture not in fixtures:
                raise HTTPException(status_code=404,
                                    detail=f"unknown fixture {body.fixture!r}")
            frame = fixtures[body.fixture]
        else:
            raise HTTPException(status_code=400,
                                detail="need a fixture id or a frame")
        session = store.create(frame)
        return {"session_id": session.id,
                "frame": frameio.frame_to_wire(frame)}

    @app.get("/sessions/{session_id}")
    def export_session(session_id: str) -> dict:
        session = store.get(session_id)
        with session.lock:
            return {
                "session_id": session.id,
                "frame": frameio.frame_to_wire(session.current_frame),
                "initial_frame": frameio.frame_to_wire(session.initial_frame),
                "history": [source for source, _ in session.history],
                "active_exercise": session.active_exercise,
            }

    @app.post("/sessions/{session_id}/execute")
    def execute(session_id: str, body: ExecuteRequest) -> dict:
        if len(body.source.encode("utf-8")) > MAX_SOURCE_BYTES:
            raise HTTPException(status_code=413, detail="source too large")
        session = store.get(session_id)
        with session.lock:
            source = body.source.strip()
            if not source:
                return {"stages": [],
                        "frame": frameio.frame_to_wire(session.current_frame)}
            try:
                pipeline = parse_pipeline(source)
                result, traces = eval_pipeline(session.current_frame, pipeline)
            except SourceError as err:
                return {"stages": [], "error": _error_body(err),
                        "frame": frameio.frame_to_wire(session.current_frame)}
            if not body.preview:
                session.current_frame = result
                session.history.append((source, traces))
            return {
                "stages": [trace.to_json() for trace in traces],
                "frame": frameio.frame_to_wire(result),
            }

    @app.post("/sessions/{session_id}/grade")
    def grade_submission(session_id: str, body: GradeRequest) -> dict:
        session = store.get(session_id)
        exercise = exercise_bank.get(body.exercise_id)
        if exercise is None:
            raise HTTPException(status_code=404,
                                detail=f"unknown exercise {body.exercise_id!r}")
        with session.lock:
            session.active_exercise = body.exercise_id
        return grade(exercise, body.source).to_json()

    # -- catalogs ---------------------------------------------------------------

    @app.get("/exercises")
    def list_exercises(instructor: bool = Query(default=False),
                       authorization: Optional[str] = Header(default=None)) -> list:
        include_solutions = False
        if instructor:
            if not _instructor_ok(authorization):
                raise HTTPException(status_code=403,
                                    detail="instructor token required")
            include_solutions = True
        out = []
        for ex in exercise_bank.values():
            item = {
                "id": ex.id,
                "prompt": ex.prompt,
                "mode": ex.expected.mode,
                "start_frame": frameio.frame_to_wire(ex.start_frame),
            }
            if include_solutions:
                item["model_solution"] = ex.model_solution
                item["pitfalls"] = list(ex.pitfalls)
            out.append(item)
        return out

    @app.get("/fixtures")
    def list_fixtures() -> list:
        return [{"id": name, "nrows": frame.nrows, "ncols": frame.ncols,
                 "names": list(frame.names)}
                for name, frame in fixtures.items()]

    return app


def make_default_app() -> FastAPI:
    """App factory for `uvicorn cubeframes.service:make_default_app`."""
    import os
    config = ServiceConfig(
        session_ttl_secs=float(os.environ.get("SESSION_TTL_SECS",
                                              DEFAULT_TTL_SECS)),
        instructor_token=os.environ.get("INSTRUCTOR_TOKEN"),
        fixture_dir=os.environ.get("FIXTURE_DIR"),
        cors_origins=tuple(
            o.strip() for o in os.environ.get("CORS_ORIGINS", "*").split(",")),
    )
    return create_app(config)
