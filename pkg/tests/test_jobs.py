"""Job lifecycle: idempotent submission, staged execution, failure capture."""

import threading

import pytest

from dialogskim.artifacts import hierarchy_from_bytes, transcript_to_bytes
from dialogskim.errors import (
    InvalidConfigError,
    NotReadyError,
    ProviderUnavailableError,
    UnreadableInputError,
)
from dialogskim.jobs import JobService, classify_input
from dialogskim.model import PipelineConfig
from dialogskim.providers import FakeTranscriber, fake_provider_set
from dialogskim.providers.base import Summarizer
from dialogskim.store import Store


@pytest.fixture
def transcript_file(tmp_path, fig_fixture):
    transcript, _ = fig_fixture
    path = tmp_path / "fig-demo.json"
    path.write_bytes(transcript_to_bytes(transcript))
    return path


@pytest.fixture
def service(tmp_path, fig_fixture):
    _, resolver = fig_fixture
    store = Store(tmp_path / "store")
    return JobService(store, fake_provider_set(coreference=resolver))


class TestClassifyInput:
    def test_wav_is_audio(self, tmp_path):
        p = tmp_path / "x.wav"
        p.write_bytes(b"RIFF")
        assert classify_input(p, b"RIFF") == "audio"

    def test_artifact_json_is_transcript(self, transcript_file):
        assert classify_input(transcript_file, transcript_file.read_bytes()) == "transcript"

    def test_other_json_is_audio(self, tmp_path):
        p = tmp_path / "x.json"
        data = b'{"unrelated": true}'
        assert classify_input(p, data) == "audio"


class TestSubmit:
    def test_valid_transcript_queued(self, service, transcript_file):
        job_id = service.submit_job(str(transcript_file), PipelineConfig())
        job = service.store.get_job(job_id)
        assert job["state"] == "QUEUED"
        assert job["recording_id"] == "fig-demo"
        # the transcript artifact is stored at submission
        assert service.store.get_transcript_bytes("fig-demo")

    def test_idempotent_resubmission(self, service, transcript_file):
        first = service.submit_job(str(transcript_file), PipelineConfig())
        second = service.submit_job(str(transcript_file), PipelineConfig())
        assert first == second
        assert len(service.store.jobs_for_recording("fig-demo")) == 1

    def test_different_config_different_job(self, service, transcript_file):
        a = service.submit_job(str(transcript_file), PipelineConfig())
        b = service.submit_job(str(transcript_file), PipelineConfig(stem_cutoff_words=2))
        assert a != b

    def test_invalid_config_rejected(self, service, transcript_file):
        with pytest.raises(InvalidConfigError):
            service.submit_job(str(transcript_file), PipelineConfig(compression_ratio=0.0))

    def test_unreadable_input(self, service, tmp_path):
        with pytest.raises(UnreadableInputError):
            service.submit_job(str(tmp_path / "missing.wav"), PipelineConfig())

    def test_invalid_transcript_artifact(self, service, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"schema_version": 1, "words": "nope"}')
        with pytest.raises(UnreadableInputError):
            service.submit_job(str(bad), PipelineConfig())


class TestRun:
    def test_transcript_job_to_done(self, service, transcript_file):
        job_id = service.submit_job(str(transcript_file), PipelineConfig())
        final = service.run_job(job_id)
        assert final["state"] == "DONE"
        assert final["progress"]["SEGMENTING"] == 1.0
        assert final["progress"]["SUMMARIZING"] == 1.0
        hierarchy = hierarchy_from_bytes(service.store.get_hierarchy_bytes("fig-demo"))
        assert hierarchy.recording_id == "fig-demo"

    def test_audio_job_passes_through_transcribing(self, tmp_path, fig_fixture):
        transcript, resolver = fig_fixture
        audio = tmp_path / "fig.wav"
        audio.write_bytes(b"RIFFfake")
        transcriber = FakeTranscriber({str(audio.resolve()): transcript})
        providers = fake_provider_set(transcriber=transcriber, coreference=resolver)
        store = Store(tmp_path / "store")
        states = []
        service = JobService(store, providers, stage_hook=lambda _id, s: states.append(s))
        job_id = service.submit_job(str(audio), PipelineConfig())
        final = service.run_job(job_id)
        assert final["state"] == "DONE"
        assert states == ["TRANSCRIBING", "SEGMENTING", "SUMMARIZING"]
        recording_id = final["recording_id"]
        assert store.get_transcript_bytes(recording_id)

    def test_evaluate_flag_adds_stage_and_reports(self, service, transcript_file):
        job_id = service.submit_job(str(transcript_file), PipelineConfig(), evaluate=True)
        final = service.run_job(job_id)
        assert final["state"] == "DONE"
        assert final["progress"]["EVALUATING"] == 1.0
        assert service.store.get_evaluation_bytes("fig-demo", "NAIVE_FIXED")
        assert service.store.get_evaluation_bytes("fig-demo", "COREF_SEMANTIC")

    def test_provider_failure_marks_failed_with_code(self, tmp_path, fig_fixture):
        transcript, resolver = fig_fixture

        class Down(Summarizer):
            def summarize(self, text, max_output_words):
                raise ProviderUnavailableError("summarizer offline")

        providers = fake_provider_set(coreference=resolver)
        providers = type(providers)(
            transcriber=providers.transcriber,
            coreference=providers.coreference,
            summarizer=Down(),
            embedder=providers.embedder,
            scorer=providers.scorer,
        )
        store = Store(tmp_path / "store")
        service = JobService(store, providers)
        path = tmp_path / "t.json"
        path.write_bytes(transcript_to_bytes(transcript))
        job_id = service.submit_job(str(path), PipelineConfig())
        final = service.run_job(job_id)
        # degraded summaries carry the pipeline through; embedding still works,
        # so the hierarchy completes with degraded nodes rather than failing
        assert final["state"] == "DONE"
        hierarchy = hierarchy_from_bytes(store.get_hierarchy_bytes("fig-demo"))
        assert any(n.degraded for nodes in hierarchy.levels.values() for n in nodes)

    def test_embedder_failure_fails_job_verbatim(self, tmp_path, fig_fixture):
        transcript, resolver = fig_fixture
        from dialogskim.providers.base import Embedder

        class Down(Embedder):
            def embed(self, text):
                raise ProviderUnavailableError("embedder offline")

        base = fake_provider_set(coreference=resolver)
        providers = type(base)(
            transcriber=base.transcriber,
            coreference=base.coreference,
            summarizer=base.summarizer,
            embedder=Down(),
            scorer=base.scorer,
        )
        store = Store(tmp_path / "store")
        service = JobService(store, providers)
        path = tmp_path / "t.json"
        path.write_bytes(transcript_to_bytes(transcript))
        job_id = service.submit_job(str(path), PipelineConfig())
        final = service.run_job(job_id)
        assert final["state"] == "FAILED"
        assert final["error"]["code"] == "PROVIDER_UNAVAILABLE"
        assert final["error"]["message"] == "embedder offline"

    def test_not_ready_surfaced_mid_job(self, tmp_path, fig_fixture):
        transcript, resolver = fig_fixture
        store = Store(tmp_path / "store")
        reached = threading.Event()
        release = threading.Event()

        def hook(job_id, state):
            if state == "SUMMARIZING":
                reached.set()
                release.wait(timeout=10)

        service = JobService(store, fake_provider_set(coreference=resolver), stage_hook=hook)
        path = tmp_path / "t.json"
        path.write_bytes(transcript_to_bytes(transcript))
        job_id = service.submit_job(str(path), PipelineConfig())

        worker = threading.Thread(target=service.run_job, args=(job_id,))
        worker.start()
        assert reached.wait(timeout=10)
        with pytest.raises(NotReadyError) as info:
            store.get_hierarchy_bytes("fig-demo")
        assert info.value.job_state == "SUMMARIZING"
        release.set()
        worker.join(timeout=10)
        assert store.get_job(job_id)["state"] == "DONE"
        assert store.get_hierarchy_bytes("fig-demo")


class TestWorkers:
    def test_background_queue_executes(self, service, transcript_file):
        job_id = service.submit_job(str(transcript_file), PipelineConfig())
        service.start_workers(count=1)
        try:
            service.enqueue(job_id)
            for _ in range(200):
                if service.store.get_job(job_id)["state"] in ("DONE", "FAILED"):
                    break
                import time

                time.sleep(0.05)
            assert service.store.get_job(job_id)["state"] == "DONE"
        finally:
            service.stop_workers()
