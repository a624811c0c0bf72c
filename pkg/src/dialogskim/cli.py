"""Command-line interface.

The store directory defaults to DS_STORE_DIR (falling back to ./dialogskim-store).
Remote providers are picked up from DS_*_URL environment variables; without
them the deterministic fakes run, which handle transcript artifacts directly
and audio files that have a ``<audio>.transcript.json`` sidecar.
"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click

from .errors import DialogSkimError
from .evaluation import Strategy, compare_strategies, evaluate_strategy, render_report_table
from .artifacts import transcript_from_bytes
from .jobs import JobService
from .model import PipelineConfig
from .providers import provider_set_from_env
from .store import Store

logger = logging.getLogger(__name__)


def _load_config(config_path: str | None) -> PipelineConfig:
    if not config_path:
        return PipelineConfig()
    with open(config_path, "r", encoding="utf-8") as handle:
        return PipelineConfig.from_dict(json.load(handle))


def _store(store_dir: str | None) -> Store:
    import os

    root = store_dir or os.environ.get("DS_STORE_DIR") or "./dialogskim-store"
    return Store(root)


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Debug logging.")
def main(verbose: bool):
    """Hierarchical summarization of longform spoken dialog."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )


@main.command()
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_path", type=click.Path(exists=True), help="Pipeline config JSON.")
@click.option("--store", "store_dir", type=click.Path(), help="Store directory.")
@click.option("--evaluate", is_flag=True, help="Also run the evaluation stage.")
def ingest(input_path: str, config_path: str | None, store_dir: str | None, evaluate: bool):
    """Register an audio file or transcript artifact and queue a job."""
    store = _store(store_dir)
    service = JobService(store, provider_set_from_env())
    try:
        job_id = service.submit_job(input_path, _load_config(config_path), evaluate=evaluate)
    except DialogSkimError as exc:
        raise click.ClickException(f"{exc.code}: {exc.message}")
    job = store.get_job(job_id)
    click.echo(f"recording: {job['recording_id']}")
    click.echo(f"job:       {job_id} ({job['state']})")


@main.command()
@click.argument("recording_id")
@click.option("--store", "store_dir", type=click.Path(), help="Store directory.")
def run(recording_id: str, store_dir: str | None):
    """Execute the queued job for a recording."""
    store = _store(store_dir)
    service = JobService(store, provider_set_from_env())
    pending = [j for j in store.jobs_for_recording(recording_id) if j["state"] == "QUEUED"]
    if not pending:
        raise click.ClickException(f"no queued job for recording {recording_id}")
    for job in pending:
        click.echo(f"running job {job['job_id']} ...")
        final = service.run_job(job["job_id"])
        click.echo(f"job {job['job_id']}: {final['state']}")
        if final["state"] == "FAILED":
            click.echo(f"  error: {final['error']['code']}: {final['error']['message']}")
            sys.exit(1)


_STRATEGIES = {
    "naive": [Strategy.NAIVE_FIXED],
    "semantic": [Strategy.COREF_SEMANTIC],
    "both": [Strategy.NAIVE_FIXED, Strategy.COREF_SEMANTIC],
}


@main.command("eval")
@click.argument("recording_id")
@click.option(
    "--strategy",
    type=click.Choice(sorted(_STRATEGIES)),
    default="both",
    show_default=True,
)
@click.option("--config", "config_path", type=click.Path(exists=True), help="Pipeline config JSON.")
@click.option("--store", "store_dir", type=click.Path(), help="Store directory.")
@click.option("--json", "as_json", is_flag=True, help="Emit the reports as JSON.")
def eval_command(
    recording_id: str,
    strategy: str,
    config_path: str | None,
    store_dir: str | None,
    as_json: bool,
):
    """Score segmentation strategies on a processed recording."""
    store = _store(store_dir)
    providers = provider_set_from_env()
    config = _load_config(config_path)
    try:
        transcript = transcript_from_bytes(store.get_transcript_bytes(recording_id))
    except DialogSkimError as exc:
        raise click.ClickException(f"{exc.code}: {exc.message}")

    reports = []
    for item in _STRATEGIES[strategy]:
        report = evaluate_strategy(transcript, item, providers, config)
        store.attach_evaluation(recording_id, item.value, report.to_json().encode("utf-8"))
        reports.append(report)

    if as_json:
        click.echo(json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True))
        return
    click.echo(f"recording: {recording_id}")
    click.echo(render_report_table(reports))
    if len(reports) > 1:
        for delta in compare_strategies(reports):
            click.echo(
                f"{delta.first.value} - {delta.second.value}: {delta.delta:+.2f}"
            )


@main.command()
@click.option("--port", default=8080, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--store", "store_dir", type=click.Path(), help="Store directory.")
@click.option("--ui-dir", type=click.Path(), help="Static UI bundle to serve at /.")
def serve(port: int, host: str, store_dir: str | None, ui_dir: str | None):
    """Serve stored artifacts (and the UI) over HTTP."""
    import uvicorn

    from .api import create_app

    store = _store(store_dir)
    service = JobService(store, provider_set_from_env())
    service.start_workers()
    default_ui = Path(__file__).resolve().parent.parent.parent / "frontend" / "dist"
    bundle = Path(ui_dir) if ui_dir else default_ui
    app = create_app(store, service, ui_dir=bundle if bundle.is_dir() else None)
    try:
        uvicorn.run(app, host=host, port=port, log_level="info")
    finally:
        service.stop_workers()


@main.command()
@click.argument("recording_id")
@click.option("--out", "out_path", required=True, type=click.Path(), help="Output file.")
@click.option("--store", "store_dir", type=click.Path(), help="Store directory.")
def export(recording_id: str, out_path: str, store_dir: str | None):
    """Write a recording's artifacts as one portable JSON bundle."""
    store = _store(store_dir)
    try:
        entry = store.recording_entry(recording_id)
        bundle = {
            "recording_id": recording_id,
            "title": entry.get("title", recording_id),
            "transcript": json.loads(store.get_transcript_bytes(recording_id)),
            "hierarchy": json.loads(store.get_hierarchy_bytes(recording_id)),
            "evaluations": {
                name: json.loads(store.get_evaluation_bytes(recording_id, name))
                for name in entry.get("evaluations", {})
            },
        }
    except DialogSkimError as exc:
        raise click.ClickException(f"{exc.code}: {exc.message}")
    Path(out_path).write_text(json.dumps(bundle, indent=2, sort_keys=True), encoding="utf-8")
    click.echo(f"wrote {out_path}")


if __name__ == "__main__":
    main()
