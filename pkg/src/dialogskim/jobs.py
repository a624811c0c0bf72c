"""Job orchestration: submit work once, walk it through the pipeline stages.

A job is identified by a hash of its input content plus configuration, so
resubmitting the same work returns the existing job. State moves forward
only (QUEUED, TRANSCRIBING, SEGMENTING, SUMMARIZING, EVALUATING, DONE) with
FAILED reachable from anywhere; the failing provider error is preserved
verbatim on the record.
"""

from __future__ import annotations

import hashlib
import json
import logging
import queue
import threading
from pathlib import Path
from typing import Callable, Optional

from .artifacts import (
    canonical_json_bytes,
    hierarchy_to_bytes,
    transcript_from_bytes,
    transcript_to_bytes,
)
from .errors import DialogSkimError, UnreadableInputError
from .evaluation import Strategy, evaluate_strategy
from .hierarchy import build_hierarchy
from .model import PipelineConfig, Transcript, validate_transcript
from .providers.base import ProviderSet
from .segmentation import segment_transcript
from .store import Store

logger = logging.getLogger(__name__)

StageHook = Callable[[str, str], None]

AUDIO_SUFFIXES = {".wav", ".mp3", ".m4a", ".ogg", ".flac", ".aac", ".opus"}


def classify_input(path: Path, data: bytes) -> str:
    """'transcript' for a transcript artifact JSON, 'audio' otherwise."""
    if path.suffix.lower() in AUDIO_SUFFIXES:
        return "audio"
    try:
        payload = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, ValueError):
        return "audio"
    if isinstance(payload, dict) and "words" in payload and "schema_version" in payload:
        return "transcript"
    return "audio"


def _recording_id_for_audio(path: Path, content_hash: str) -> str:
    return f"{path.stem}-{content_hash[:8]}"


class JobService:
    """Submits and executes pipeline jobs against a store.

    ``stage_hook(job_id, state)`` fires right after each state is recorded;
    tests use it to pause at stage boundaries. At most one job runs per
    recording at a time.
    """

    def __init__(
        self,
        store: Store,
        providers: ProviderSet,
        stage_hook: Optional[StageHook] = None,
    ):
        self.store = store
        self.providers = providers
        self.stage_hook = stage_hook
        self._recording_locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()
        self._queue: queue.Queue[Optional[str]] = queue.Queue()
        self._workers: list[threading.Thread] = []

    # -- submission ----------------------------------------------------------

    def submit_job(
        self, input_ref: str, config: PipelineConfig, evaluate: bool = False
    ) -> str:
        """Queue work for an audio file or transcript artifact; idempotent."""
        config = config.validated()
        path = Path(input_ref)
        try:
            data = path.read_bytes()
        except OSError as exc:
            raise UnreadableInputError(f"cannot read {input_ref!r}: {exc}") from exc

        content_hash = hashlib.sha256(data).hexdigest()
        kind = classify_input(path, data)
        job_id = hashlib.sha256(
            content_hash.encode()
            + canonical_json_bytes(config.to_dict())
            + (b"eval" if evaluate else b"")
        ).hexdigest()[:16]

        existing = self.store.find_job(job_id)
        if existing is not None:
            return job_id

        if kind == "transcript":
            try:
                transcript = transcript_from_bytes(data)
            except DialogSkimError as exc:
                raise UnreadableInputError(f"invalid transcript artifact: {exc}") from exc
            recording_id = transcript.recording_id
            self.store.register_recording(recording_id, title=transcript.title)
            self.store.attach_transcript(recording_id, transcript_to_bytes(transcript))
        else:
            recording_id = _recording_id_for_audio(path, content_hash)
            self.store.register_recording(
                recording_id, title=path.stem, audio_path=str(path.resolve())
            )

        self.store.put_job(
            {
                "job_id": job_id,
                "recording_id": recording_id,
                "state": "QUEUED",
                "progress": {},
                "error": None,
                "input": {"kind": kind, "path": str(path.resolve()), "sha256": content_hash},
                "config": config.to_dict(),
                "evaluate": evaluate,
            }
        )
        return job_id

    # -- execution -----------------------------------------------------------

    def _recording_lock(self, recording_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._recording_locks.setdefault(recording_id, threading.Lock())

    def _enter(self, job_id: str, state: str, progress: dict) -> None:
        progress[state] = 0.0
        self.store.update_job(job_id, state, progress=dict(progress))
        if self.stage_hook is not None:
            self.stage_hook(job_id, state)

    def _finish_stage(self, job_id: str, state: str, progress: dict) -> None:
        progress[state] = 1.0
        self.store.update_job(job_id, state, progress=dict(progress))

    def run_job(self, job_id: str) -> dict:
        """Execute a job to DONE or FAILED; returns the final record."""
        job = self.store.get_job(job_id)
        if job["state"] in ("DONE", "FAILED"):
            return job
        recording_id = job["recording_id"]
        config = PipelineConfig.from_dict(job["config"])
        progress: dict[str, float] = dict(job.get("progress", {}))

        with self._recording_lock(recording_id):
            try:
                if job["input"]["kind"] == "audio":
                    self._enter(job_id, "TRANSCRIBING", progress)
                    transcript = self.providers.transcriber.transcribe(job["input"]["path"])
                    violations = validate_transcript(transcript)
                    if violations:
                        raise UnreadableInputError(
                            "transcriber output failed validation: " + "; ".join(violations)
                        )
                    transcript = self._with_recording_id(transcript, recording_id)
                    self.store.attach_transcript(recording_id, transcript_to_bytes(transcript))
                    self._finish_stage(job_id, "TRANSCRIBING", progress)
                else:
                    transcript = transcript_from_bytes(
                        self.store.get_transcript_bytes(recording_id)
                    )

                self._enter(job_id, "SEGMENTING", progress)
                chunks = segment_transcript(transcript, self.providers.coreference, config)
                self._finish_stage(job_id, "SEGMENTING", progress)

                self._enter(job_id, "SUMMARIZING", progress)
                hierarchy = build_hierarchy(transcript, self.providers, config, chunks=chunks)
                self.store.attach_hierarchy(recording_id, hierarchy_to_bytes(hierarchy))
                self._finish_stage(job_id, "SUMMARIZING", progress)

                if job.get("evaluate"):
                    self._enter(job_id, "EVALUATING", progress)
                    for strategy in (Strategy.NAIVE_FIXED, Strategy.COREF_SEMANTIC):
                        report = evaluate_strategy(transcript, strategy, self.providers, config)
                        self.store.attach_evaluation(
                            recording_id,
                            strategy.value,
                            report.to_json().encode("utf-8"),
                        )
                    self._finish_stage(job_id, "EVALUATING", progress)

                return self.store.update_job(job_id, "DONE", progress=dict(progress))
            except DialogSkimError as exc:
                logger.error("job %s failed: %s: %s", job_id, exc.code, exc.message)
                return self.store.update_job(
                    job_id, "FAILED", error={"code": exc.code, "message": exc.message}
                )

    @staticmethod
    def _with_recording_id(transcript: Transcript, recording_id: str) -> Transcript:
        if transcript.recording_id == recording_id:
            return transcript
        return Transcript(
            recording_id=recording_id,
            title=transcript.title,
            audio_duration_s=transcript.audio_duration_s,
            words=transcript.words,
            sentences=transcript.sentences,
            turns=transcript.turns,
        )

    # -- background workers ----------------------------------------------

    def enqueue(self, job_id: str) -> None:
        self._queue.put(job_id)

    def start_workers(self, count: int = 2) -> None:
        for _ in range(count):
            worker = threading.Thread(target=self._worker_loop, daemon=True)
            worker.start()
            self._workers.append(worker)

    def stop_workers(self) -> None:
        for _ in self._workers:
            self._queue.put(None)
        for worker in self._workers:
            worker.join(timeout=10)
        self._workers.clear()

    def _worker_loop(self) -> None:
        while True:
            job_id = self._queue.get()
            if job_id is None:
                return
            try:
                self.run_job(job_id)
            except Exception:
                logger.exception("worker crashed on job %s", job_id)
