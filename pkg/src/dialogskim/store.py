"""Flat-file artifact store with a single JSON index.

Artifacts are immutable, content-addressed blobs under ``objects/``; the
index maps recordings and jobs to them. Every write lands in a temp file
first and is published with an atomic rename, so a crash mid-write never
leaves a partial artifact visible.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
import threading
from pathlib import Path
from typing import Any, Optional

from .errors import NotFoundError, NotReadyError

logger = logging.getLogger(__name__)

JOB_STATES = (
    "QUEUED",
    "TRANSCRIBING",
    "SEGMENTING",
    "SUMMARIZING",
    "EVALUATING",
    "DONE",
    "FAILED",
)

_TMP_PREFIX = ".tmp-"


def atomic_write_bytes(path: Path, data: bytes) -> None:
    """Write via temp file + rename in the same directory; fsync before publish."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=_TMP_PREFIX, dir=path.parent)
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


class Store:
    """Recording artifacts, evaluation reports, and job records on disk."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.objects_dir = self.root / "objects"
        self.index_path = self.root / "index.json"
        self._lock = threading.RLock()
        self.root.mkdir(parents=True, exist_ok=True)
        self.objects_dir.mkdir(parents=True, exist_ok=True)
        if not self.index_path.exists():
            self._write_index({"recordings": {}, "jobs": {}})

    # -- index plumbing -----------------------------------------------------

    def _read_index(self) -> dict:
        return json.loads(self.index_path.read_text("utf-8"))

    def _write_index(self, index: dict) -> None:
        atomic_write_bytes(
            self.index_path, json.dumps(index, indent=2, sort_keys=True).encode("utf-8")
        )

    def _mutate_index(self, fn) -> Any:
        with self._lock:
            index = self._read_index()
            result = fn(index)
            self._write_index(index)
            return result

    # -- objects ------------------------------------------------------------

    def put_object(self, data: bytes) -> str:
        """Store immutable bytes content-addressed; returns the object key."""
        key = hashlib.sha256(data).hexdigest()[:24]
        path = self.objects_dir / f"{key}.bin"
        if not path.exists():
            atomic_write_bytes(path, data)
        return key

    def get_object(self, key: str) -> bytes:
        path = self.objects_dir / f"{key}.bin"
        if not path.exists():
            raise NotFoundError(f"object {key} not in store")
        return path.read_bytes()

    # -- recordings ---------------------------------------------------------

    def register_recording(
        self, recording_id: str, title: str = "", audio_path: str = ""
    ) -> None:
        def mutate(index):
            entry = index["recordings"].setdefault(recording_id, {})
            if title:
                entry["title"] = title
            if audio_path:
                entry["audio_path"] = audio_path
            entry.setdefault("title", recording_id)
            entry.setdefault("evaluations", {})

        self._mutate_index(mutate)

    def recording_entry(self, recording_id: str) -> dict:
        entry = self._read_index()["recordings"].get(recording_id)
        if entry is None:
            raise NotFoundError(f"recording {recording_id} not in store")
        return entry

    def list_recordings(self) -> list[dict]:
        index = self._read_index()
        out = []
        for recording_id in sorted(index["recordings"]):
            entry = index["recordings"][recording_id]
            out.append(
                {
                    "recording_id": recording_id,
                    "title": entry.get("title", recording_id),
                    "has_transcript": "transcript" in entry,
                    "has_hierarchy": "hierarchy" in entry,
                    "has_audio": bool(entry.get("audio_path")),
                    "evaluations": sorted(entry.get("evaluations", {})),
                }
            )
        return out

    def _attach(self, recording_id: str, field: str, data: bytes) -> str:
        key = self.put_object(data)

        def mutate(index):
            entry = index["recordings"].get(recording_id)
            if entry is None:
                raise NotFoundError(f"recording {recording_id} not in store")
            entry[field] = key

        self._mutate_index(mutate)
        return key

    def attach_transcript(self, recording_id: str, data: bytes) -> str:
        return self._attach(recording_id, "transcript", data)

    def attach_hierarchy(self, recording_id: str, data: bytes) -> str:
        return self._attach(recording_id, "hierarchy", data)

    def attach_evaluation(self, recording_id: str, strategy: str, data: bytes) -> str:
        key = self.put_object(data)

        def mutate(index):
            entry = index["recordings"].get(recording_id)
            if entry is None:
                raise NotFoundError(f"recording {recording_id} not in store")
            entry.setdefault("evaluations", {})[strategy] = key

        self._mutate_index(mutate)
        return key

    def _artifact_bytes(self, recording_id: str, field: str) -> bytes:
        entry = self.recording_entry(recording_id)
        key = entry.get(field)
        if key is None:
            job = self.active_job_for(recording_id)
            if job is not None:
                raise NotReadyError(
                    f"recording {recording_id} has no {field} yet", job_state=job["state"]
                )
            raise NotFoundError(f"recording {recording_id} has no {field}")
        return self.get_object(key)

    def get_transcript_bytes(self, recording_id: str) -> bytes:
        return self._artifact_bytes(recording_id, "transcript")

    def get_hierarchy_bytes(self, recording_id: str) -> bytes:
        return self._artifact_bytes(recording_id, "hierarchy")

    def get_evaluation_bytes(self, recording_id: str, strategy: str) -> bytes:
        entry = self.recording_entry(recording_id)
        key = entry.get("evaluations", {}).get(strategy)
        if key is None:
            raise NotFoundError(f"no {strategy} evaluation for {recording_id}")
        return self.get_object(key)

    def audio_path(self, recording_id: str) -> Path:
        entry = self.recording_entry(recording_id)
        path = entry.get("audio_path")
        if not path:
            raise NotFoundError(f"recording {recording_id} has no audio")
        return Path(path)

    # -- jobs ---------------------------------------------------------------

    def put_job(self, job: dict) -> None:
        def mutate(index):
            index["jobs"][job["job_id"]] = job

        self._mutate_index(mutate)

    def get_job(self, job_id: str) -> dict:
        job = self._read_index()["jobs"].get(job_id)
        if job is None:
            raise NotFoundError(f"job {job_id} not in store")
        return job

    def find_job(self, job_id: str) -> Optional[dict]:
        return self._read_index()["jobs"].get(job_id)

    def jobs_for_recording(self, recording_id: str) -> list[dict]:
        index = self._read_index()
        return [j for j in index["jobs"].values() if j.get("recording_id") == recording_id]

    def active_job_for(self, recording_id: str) -> Optional[dict]:
        for job in self.jobs_for_recording(recording_id):
            if job["state"] not in ("DONE", "FAILED"):
                return job
        return None

    def update_job(self, job_id: str, state: str, **fields) -> dict:
        """Advance a job; transitions must be monotone except any -> FAILED."""
        if state not in JOB_STATES:
            raise ValueError(f"unknown job state {state!r}")

        def mutate(index):
            job = index["jobs"].get(job_id)
            if job is None:
                raise NotFoundError(f"job {job_id} not in store")
            if state != "FAILED":
                if JOB_STATES.index(state) < JOB_STATES.index(job["state"]):
                    raise ValueError(
                        f"job {job_id} cannot move {job['state']} -> {state}"
                    )
            job["state"] = state
            job.update(fields)
            return dict(job)

        return self._mutate_index(mutate)
