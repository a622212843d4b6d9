"""Local HTTP face of a decision session, plus the embedded UI.

One server process owns one session.  Decision posts are the only
mutations and they take the write side of a small reader-writer lock;
report and what-if reads share the read side, so they can overlap each
other but never observe a half-applied decision.

Every error that carries an ``http_status`` maps to ``{error, code}``
with that status; anything else is a plain 500.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request
from fastapi.responses import FileResponse, HTMLResponse, JSONResponse

from .costs import DataProfile
from .errors import NotFoundError, OfcError
from .hsm import hsm_to_doc
from .model import FsmModel, model_to_doc
from .session import Session, create_session, decide, session_report, what_if

__all__ = ["create_app", "ui_dir"]


class _RwLock:
    """Many readers or one writer; writers wait for readers to drain."""

    def __init__(self) -> None:
        self._cond = threading.Condition()
        self._readers = 0
        self._writing = False

    def acquire_read(self) -> None:
        with self._cond:
            while self._writing:
                self._cond.wait()
            self._readers += 1

    def release_read(self) -> None:
        with self._cond:
            self._readers -= 1
            if self._readers == 0:
                self._cond.notify_all()

    def acquire_write(self) -> None:
        with self._cond:
            while self._writing or self._readers:
                self._cond.wait()
            self._writing = True

    def release_write(self) -> None:
        with self._cond:
            self._writing = False
            self._cond.notify_all()


class _read:
    def __init__(self, lock: _RwLock) -> None:
        self.lock = lock

    def __enter__(self) -> None:
        self.lock.acquire_read()

    def __exit__(self, *exc: object) -> None:
        self.lock.release_read()


class _write:
    def __init__(self, lock: _RwLock) -> None:
        self.lock = lock

    def __enter__(self) -> None:
        self.lock.acquire_write()

    def __exit__(self, *exc: object) -> None:
        self.lock.release_write()


def ui_dir() -> Path:
    return Path(__file__).parent / "ui"


_PLACEHOLDER = """<!doctype html>
<html><head><title>off-chain partitioner</title></head>
<body>
<h1>Decision service is running</h1>
<p>The browser UI is not installed in this build. The API is live:</p>
<ul>
<li><a href="/api/model">/api/model</a></li>
<li><a href="/api/candidates">/api/candidates</a></li>
<li><a href="/api/session">/api/session</a></li>
<li><a href="/api/export">/api/export</a></li>
</ul>
</body></html>
"""


def create_app(model: FsmModel, cap: int = 16, profile: DataProfile | None = None) -> FastAPI:
    """Build the app around a fresh session for one model."""
    session: Session = create_session(model, cap=cap, profile=profile)
    lock = _RwLock()
    app = FastAPI(title="off-chain partitioning service", docs_url=None, redoc_url=None)
    app.state.session = session

    @app.exception_handler(OfcError)
    async def _ofc_error(request: Request, exc: OfcError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.http_status,
            content={"error": str(exc), "code": exc.code},
        )

    @app.get("/api/model")
    def get_model() -> dict[str, Any]:
        with _read(lock):
            return model_to_doc(session.model)

    @app.get("/api/candidates")
    def get_candidates() -> list[dict[str, Any]]:
        with _read(lock):
            return session_report(session)["candidates"]

    @app.get("/api/candidates/{subgraph_id}/cost")
    def get_cost(
        subgraph_id: str, words: int | None = None, midpattern: str | None = None
    ) -> dict[str, Any]:
        states = None
        if midpattern is not None:
            states = [s for s in midpattern.split(",") if s]
        with _read(lock):
            comparison = what_if(session, subgraph_id, words=words, midpattern=states)
            return {"subgraph": subgraph_id, **comparison.to_doc()}

    @app.post("/api/decisions")
    def post_decision(body: dict[str, Any]) -> dict[str, Any]:
        subgraph_id = body.get("id")
        verdict = body.get("verdict")
        if not isinstance(subgraph_id, str) or verdict not in ("accept", "reject"):
            raise OfcError('decision body needs {"id": ..., "verdict": "accept"|"reject"}')
        allow_whole = bool(body.get("allow_whole_graph", False))
        with _write(lock):
            decision = decide(
                session,
                subgraph_id,
                verdict == "accept",
                allow_whole_graph=allow_whole,
                note=str(body.get("note", "")),
            )
            cursor = session.cursor()
            return {
                "decision": decision.to_doc(),
                "cursor": None if cursor is None else cursor.id,
                "hierarchical_nodes": sorted(session.hsm.mapping),
            }

    @app.get("/api/session")
    def get_session() -> dict[str, Any]:
        with _read(lock):
            return session_report(session)

    @app.get("/api/export")
    def get_export() -> dict[str, Any]:
        with _read(lock):
            return {
                "model": model_to_doc(session.model),
                "hsm": hsm_to_doc(session.hsm),
                "report": session_report(session),
            }

    @app.get("/", response_class=HTMLResponse)
    def index() -> Any:
        page = ui_dir() / "index.html"
        if page.is_file():
            return FileResponse(page)
        return HTMLResponse(_PLACEHOLDER)

    @app.get("/ui/{asset_path:path}")
    def ui_asset(asset_path: str) -> FileResponse:
        root = ui_dir().resolve()
        target = (root / asset_path).resolve()
        if not target.is_file() or root not in target.parents:
            raise NotFoundError(f"no such asset: {asset_path}")
        return FileResponse(target)

    return app
