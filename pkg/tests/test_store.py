"""Store durability: atomic writes, content addressing, crash injection."""

import json
import os

import pytest

import dialogskim.store as store_module
from dialogskim.errors import NotFoundError
from dialogskim.store import Store, atomic_write_bytes


@pytest.fixture
def store(tmp_path):
    return Store(tmp_path / "store")


class TestObjects:
    def test_content_addressed_round_trip(self, store):
        key = store.put_object(b"hello artifact")
        assert store.get_object(key) == b"hello artifact"
        assert store.put_object(b"hello artifact") == key

    def test_missing_object(self, store):
        with pytest.raises(NotFoundError):
            store.get_object("deadbeef")


class TestRecordings:
    def test_register_and_list(self, store):
        store.register_recording("rec-1", title="First Recording")
        listing = store.list_recordings()
        assert listing == [
            {
                "recording_id": "rec-1",
                "title": "First Recording",
                "has_transcript": False,
                "has_hierarchy": False,
                "has_audio": False,
                "evaluations": [],
            }
        ]

    def test_attach_and_fetch_artifacts(self, store):
        store.register_recording("rec-1")
        store.attach_transcript("rec-1", b'{"schema_version": 1}')
        store.attach_hierarchy("rec-1", b'{"nodes": []}')
        store.attach_evaluation("rec-1", "NAIVE_FIXED", b'{"aggregate": 0.5}')
        assert store.get_transcript_bytes("rec-1") == b'{"schema_version": 1}'
        assert store.get_hierarchy_bytes("rec-1") == b'{"nodes": []}'
        assert store.get_evaluation_bytes("rec-1", "NAIVE_FIXED") == b'{"aggregate": 0.5}'

    def test_artifact_bytes_stable_across_reopen(self, tmp_path):
        root = tmp_path / "store"
        store = Store(root)
        store.register_recording("rec-1")
        store.attach_hierarchy("rec-1", b'{"nodes": [1, 2, 3]}')
        reopened = Store(root)
        assert reopened.get_hierarchy_bytes("rec-1") == b'{"nodes": [1, 2, 3]}'

    def test_unknown_recording(self, store):
        with pytest.raises(NotFoundError):
            store.get_transcript_bytes("nope")


class TestCrashSafety:
    def test_interrupted_write_leaves_no_partial_artifact(self, store, monkeypatch):
        store.register_recording("rec-1")
        store.attach_hierarchy("rec-1", b"original bytes")
        index_before = store._read_index()

        real_replace = os.replace

        def exploding_replace(src, dst):
            raise OSError("simulated crash before rename")

        monkeypatch.setattr(store_module.os, "replace", exploding_replace)
        with pytest.raises(OSError):
            store.attach_hierarchy("rec-1", b"new bytes that never land")
        monkeypatch.setattr(store_module.os, "replace", real_replace)

        # index unchanged, old artifact intact, no temp files surfaced
        assert store._read_index() == index_before
        assert store.get_hierarchy_bytes("rec-1") == b"original bytes"
        leftovers = [p for p in store.objects_dir.iterdir() if p.name.startswith(".tmp-")]
        assert all(not p.name.endswith(".bin") for p in leftovers)

    def test_atomic_write_cleans_temp_on_failure(self, tmp_path, monkeypatch):
        target = tmp_path / "out.json"

        def exploding_replace(src, dst):
            raise OSError("no rename")

        monkeypatch.setattr(store_module.os, "replace", exploding_replace)
        with pytest.raises(OSError):
            atomic_write_bytes(target, b"data")
        assert not target.exists()
        assert [p for p in tmp_path.iterdir()] == []


class TestJobs:
    def job(self, job_id="j1", state="QUEUED"):
        return {
            "job_id": job_id,
            "recording_id": "rec-1",
            "state": state,
            "progress": {},
            "error": None,
            "input": {"kind": "transcript", "path": "/x", "sha256": "0"},
            "config": {},
            "evaluate": False,
        }

    def test_put_get(self, store):
        store.put_job(self.job())
        assert store.get_job("j1")["state"] == "QUEUED"

    def test_monotone_transitions(self, store):
        store.put_job(self.job())
        store.update_job("j1", "SEGMENTING")
        store.update_job("j1", "SUMMARIZING")
        with pytest.raises(ValueError):
            store.update_job("j1", "TRANSCRIBING")

    def test_failed_reachable_from_anywhere(self, store):
        store.put_job(self.job())
        store.update_job("j1", "SUMMARIZING")
        record = store.update_job("j1", "FAILED", error={"code": "X", "message": "boom"})
        assert record["state"] == "FAILED"
        assert record["error"]["code"] == "X"

    def test_active_job_lookup(self, store):
        store.put_job(self.job("j1", state="SUMMARIZING"))
        active = store.active_job_for("rec-1")
        assert active["job_id"] == "j1"
        store.update_job("j1", "DONE")
        assert store.active_job_for("rec-1") is None

    def test_index_survives_reopen(self, tmp_path):
        root = tmp_path / "store"
        Store(root).put_job(self.job())
        assert Store(root).get_job("j1")["job_id"] == "j1"
