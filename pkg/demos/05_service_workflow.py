#!/usr/bin/env python3
"""Store, jobs, and HTTP API end to end, entirely offline.

Writes a transcript artifact, submits a job, runs it through its stages,
then serves the stored bytes through the FastAPI app with a test client.
The same flow over the network:

    dialogskim ingest recording.json --store ./store
    dialogskim run <recording_id> --store ./store
    dialogskim serve --port 8080 --store ./store
    curl localhost:8080/api/recordings
"""

import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from dialogskim.api import create_app
from dialogskim.artifacts import transcript_to_bytes
from dialogskim.fixtures import build_transcript, coref_resolver_for
from dialogskim.jobs import JobService
from dialogskim.model import PipelineConfig
from dialogskim.providers import fake_provider_set
from dialogskim.store import Store

script = [
    ("HOST", [
        "⟨e1:the housing bill⟩ finally passed committee late last night and ⟨e1:it⟩ now moves to "
        "the full floor because ⟨e1:the bill⟩ picked up support from both parties after months "
        "of hearings and amendments.",
        "opponents promised a long and noisy floor fight over the zoning details and the "
        "funding formula when the session resumes next week.",
    ]),
    ("GUEST", [
        "the committee vote genuinely surprised almost everyone watching the process closely "
        "this season because the margin was far wider than any of the published counts had "
        "suggested it could be.",
    ]),
]

with tempfile.TemporaryDirectory() as workdir:
    transcript, registry = build_transcript("housing-ep", script)
    artifact = Path(workdir) / "housing-ep.json"
    artifact.write_bytes(transcript_to_bytes(transcript))

    store = Store(Path(workdir) / "store")
    service = JobService(store, fake_provider_set(coreference=coref_resolver_for(registry)))

    job_id = service.submit_job(str(artifact), PipelineConfig(), evaluate=True)
    print(f"submitted job {job_id}")
    final = service.run_job(job_id)
    print(f"job finished: {final['state']}, stages: {sorted(final['progress'])}")
    print()

    client = TestClient(create_app(store, service))
    listing = client.get("/api/recordings").json()
    print("GET /api/recordings ->", listing)
    hierarchy = client.get("/api/recordings/housing-ep/hierarchy").json()
    shorts = [n for n in hierarchy["nodes"] if n["level"] == "SHORT"]
    print(f"hierarchy: {len(hierarchy['nodes'])} nodes, {len(shorts)} short summaries")
    for node in shorts:
        print(f"  {node['id']}: {node['text']}")
    job = client.get(f"/api/jobs/{job_id}").json()
    print(f"GET /api/jobs/{job_id} -> state {job['state']}")
