"""HTTP session service over the chart parser.

Sessions are in-memory and expire after an idle timeout.  Each session
wraps one parser; mutating requests on the same session are serialized by
a per-session lock (later arrivals queue), while distinct sessions are
fully independent.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field, replace

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .chart import ChartParser, ParserConfig
from .compatibility import FadingConfig
from .errors import SequenceTooLongError, UnknownIconError
from .lexicon import Lexicon
from .report import interpretation_payload

DEFAULT_SESSION_TTL = 1800.0


class ConfigBody(BaseModel):
    gamma: float | None = None
    threshold: float | None = None
    top_k: int | None = None
    top_m: int | None = None
    strict_fill: bool | None = None


class CreateSessionBody(BaseModel):
    config: ConfigBody | None = None


class AppendBody(BaseModel):
    ids: list[str]


class RemoveBody(BaseModel):
    positions: list[int]


class ApiError(Exception):
    """Domain error surfaced as a structured JSON body."""

    def __init__(self, status: int, code: str, message: str, field_name: str | None = None):
        self.status = status
        self.code = code
        self.message = message
        self.field_name = field_name
        super().__init__(message)


@dataclass
class _Session:
    session_id: str
    parser: ChartParser
    lock: threading.Lock = field(default_factory=threading.Lock)
    created: float = field(default_factory=time.monotonic)
    touched: float = field(default_factory=time.monotonic)


def _merge_config(base: ParserConfig, patch: ConfigBody | None) -> ParserConfig:
    if patch is None:
        return base
    cfg = base
    if patch.gamma is not None:
        cfg = replace(cfg, fading=FadingConfig(patch.gamma))
    if patch.threshold is not None:
        cfg = replace(cfg, pair_threshold=patch.threshold)
    if patch.top_k is not None:
        cfg = replace(cfg, top_k_assignments=patch.top_k)
    if patch.top_m is not None:
        cfg = replace(cfg, top_m_interpretations=patch.top_m)
    if patch.strict_fill is not None:
        cfg = replace(cfg, strict_fill=patch.strict_fill)
    return cfg


def create_app(
    lexicon: Lexicon,
    base_config: ParserConfig | None = None,
    session_ttl: float = DEFAULT_SESSION_TTL,
) -> FastAPI:
    base_config = base_config or ParserConfig()
    app = FastAPI(title="icon sequence parser")
    sessions: dict[str, _Session] = {}
    store_lock = threading.Lock()

    @app.exception_handler(ApiError)
    async def _on_api_error(_request: Request, exc: ApiError):
        body: dict = {"code": exc.code, "message": exc.message}
        if exc.field_name is not None:
            body["field"] = exc.field_name
        return JSONResponse(status_code=exc.status, content={"error": body})

    def _prune(now: float) -> None:
        dead = [sid for sid, session in sessions.items() if now - session.touched > session_ttl]
        for sid in dead:
            del sessions[sid]

    def _session(sid: str) -> _Session:
        with store_lock:
            _prune(time.monotonic())
            session = sessions.get(sid)
            if session is None:
                raise ApiError(404, "session_not_found", f"session not found: {sid}", "session_id")
            session.touched = time.monotonic()
            return session

    def _view(session: _Session) -> dict:
        parser = session.parser
        sequence = []
        for inst in parser.sequence:
            entry = parser.lexicon.lookup(inst.lexicon_id)
            sequence.append(
                {
                    "instance_id": inst.instance_id,
                    "lexicon_id": inst.lexicon_id,
                    "gloss": entry.gloss,
                    "position": inst.position,
                    "predicative": entry.predicative,
                }
            )
        cfg = parser.config
        return {
            "session_id": session.session_id,
            "sequence": sequence,
            "interpretations": interpretation_payload(
                parser.lexicon, parser.sequence, parser.interpretations_table, cfg.fading
            ),
            "config": {
                "gamma": cfg.fading.gamma,
                "threshold": cfg.pair_threshold,
                "top_k": cfg.top_k_assignments,
                "top_m": cfg.top_m_interpretations,
                "strict_fill": cfg.strict_fill,
            },
        }

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/lexicon")
    def lexicon_view():
        icons = []
        for entry in sorted(lexicon.entries.values(), key=lambda e: e.id):
            icons.append(
                {
                    "id": entry.id,
                    "gloss": entry.gloss,
                    "predicative": entry.predicative,
                    "valency": entry.valency,
                    "intrinsic": {
                        f.attribute: {"v": f.value.magnitude, "kind": f.value.kind}
                        for f in entry.intrinsic
                    },
                    "cases": [
                        {
                            "case": slot.case_type,
                            "select": {
                                f.attribute: {"v": f.value.magnitude, "kind": f.value.kind}
                                for f in slot.selectional
                            },
                        }
                        for slot in entry.case_structure
                    ],
                }
            )
        return {"ontology_note": lexicon.ontology_note, "icons": icons}

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody | None = None):
        try:
            config = _merge_config(base_config, body.config if body else None)
        except ValueError as exc:
            raise ApiError(400, "invalid_config", str(exc), "config") from None
        session = _Session(uuid.uuid4().hex[:12], ChartParser(lexicon, config))
        session.parser.parse_from_scratch([])
        with store_lock:
            _prune(time.monotonic())
            sessions[session.session_id] = session
        return {"session_id": session.session_id}

    @app.get("/sessions/{sid}")
    def get_session(sid: str):
        session = _session(sid)
        with session.lock:
            return _view(session)

    @app.post("/sessions/{sid}/icons")
    def append_icons(sid: str, body: AppendBody):
        session = _session(sid)
        with session.lock:
            try:
                session.parser.add_icons(body.ids)
            except UnknownIconError as exc:
                raise ApiError(400, "unknown_icon", str(exc), "ids") from None
            except SequenceTooLongError as exc:
                raise ApiError(400, "sequence_too_long", str(exc), "ids") from None
            session.touched = time.monotonic()
            return _view(session)

    @app.delete("/sessions/{sid}/icons")
    def remove_icons(sid: str, body: RemoveBody):
        session = _session(sid)
        with session.lock:
            parser = session.parser
            live = {inst.position: inst.instance_id for inst in parser.sequence}
            bad = [pos for pos in body.positions if pos not in live]
            if bad:
                raise ApiError(400, "unknown_position", f"no icon at positions: {bad}", "positions")
            parser.remove_icons([live[pos] for pos in body.positions])
            session.touched = time.monotonic()
            return _view(session)

    return app
