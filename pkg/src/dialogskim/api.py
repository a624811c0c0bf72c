"""HTTP API serving stored artifacts and accepting pipeline jobs.

Artifacts are immutable, so responses for them are the exact stored bytes;
restarting the service never changes a byte. Jobs submitted over HTTP run
on the service's background workers.

Routes:
  GET  /api/recordings
  GET  /api/recordings/{id}/hierarchy
  GET  /api/recordings/{id}/transcript
  GET  /api/recordings/{id}/evaluations/{strategy}
  GET  /api/recordings/{id}/audio?start_s&end_s
  POST /api/jobs           {"input_path", "config"?, "evaluate"?}
  GET  /api/jobs/{id}
  GET  /                   static UI bundle when one is configured
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import FileResponse, JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from .audio import slice_audio
from .errors import (
    DialogSkimError,
    InvalidConfigError,
    NotFoundError,
    NotReadyError,
    RangeOutOfBoundsError,
    UnreadableInputError,
)
from .jobs import JobService
from .model import PipelineConfig
from .store import Store

logger = logging.getLogger(__name__)

_STATUS_BY_CODE = {
    "NOT_FOUND": 404,
    "NOT_READY": 202,
    "RANGE_OUT_OF_BOUNDS": 416,
    "INVALID_CONFIG": 400,
    "UNREADABLE_INPUT": 400,
}


def _error_response(exc: DialogSkimError) -> JSONResponse:
    body = {"error": {"code": exc.code, "message": exc.message}}
    if isinstance(exc, NotReadyError):
        body["error"]["job_state"] = exc.job_state
    return JSONResponse(status_code=_STATUS_BY_CODE.get(exc.code, 500), content=body)


def create_app(
    store: Store, service: Optional[JobService] = None, ui_dir: Optional[Path] = None
) -> FastAPI:
    app = FastAPI(title="dialogskim", docs_url=None, redoc_url=None)

    @app.exception_handler(DialogSkimError)
    async def handle_domain_error(_request: Request, exc: DialogSkimError):
        return _error_response(exc)

    @app.get("/api/recordings")
    def list_recordings():
        return store.list_recordings()

    @app.get("/api/recordings/{recording_id}/hierarchy")
    def get_hierarchy(recording_id: str):
        return Response(
            content=store.get_hierarchy_bytes(recording_id), media_type="application/json"
        )

    @app.get("/api/recordings/{recording_id}/transcript")
    def get_transcript(recording_id: str):
        return Response(
            content=store.get_transcript_bytes(recording_id), media_type="application/json"
        )

    @app.get("/api/recordings/{recording_id}/evaluations/{strategy}")
    def get_evaluation(recording_id: str, strategy: str):
        return Response(
            content=store.get_evaluation_bytes(recording_id, strategy),
            media_type="application/json",
        )

    @app.get("/api/recordings/{recording_id}/audio")
    def get_audio(
        recording_id: str, start_s: Optional[float] = None, end_s: Optional[float] = None
    ):
        path = store.audio_path(recording_id)
        if start_s is None and end_s is None:
            if not path.is_file():
                raise NotFoundError(f"audio file {path} missing")
            return FileResponse(path)
        duration_hint = _duration_hint(store, recording_id)
        data, content_type = slice_audio(
            path,
            0.0 if start_s is None else start_s,
            duration_hint if end_s is None else end_s,
            duration_hint=duration_hint,
        )
        return Response(content=data, media_type=content_type)

    @app.post("/api/jobs")
    def submit_job(body: dict):
        if service is None:
            raise InvalidConfigError("service is read-only; no job runner attached")
        input_path = body.get("input_path")
        if not input_path:
            raise UnreadableInputError("input_path is required")
        config = PipelineConfig.from_dict(body.get("config") or {})
        job_id = service.submit_job(
            input_path, config, evaluate=bool(body.get("evaluate", False))
        )
        service.enqueue(job_id)
        return {"job_id": job_id, "job": store.get_job(job_id)}

    @app.get("/api/jobs/{job_id}")
    def get_job(job_id: str):
        return store.get_job(job_id)

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def _duration_hint(store: Store, recording_id: str) -> float:
    path = store.audio_path(recording_id)
    if path.suffix.lower() == ".wav" and path.is_file():
        from .audio import wav_duration_s

        return wav_duration_s(path)
    try:
        transcript = json.loads(store.get_transcript_bytes(recording_id).decode("utf-8"))
        return float(transcript["audio_duration_s"])
    except (DialogSkimError, KeyError, ValueError):
        raise RangeOutOfBoundsError(
            f"no duration known for {recording_id}; sliced audio needs a transcript"
        )
