"""Versioned JSON artifact formats for transcripts and hierarchies.

Artifacts are immutable once written, so encoding is canonical (sorted keys,
fixed separators, UTF-8): identical inputs always produce identical bytes.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import MalformedTranscriptError
from .model import (
    DropRecord,
    Hierarchy,
    HighlightLink,
    HighlightTarget,
    PipelineConfig,
    Sentence,
    SpeakerTurn,
    SummaryLevel,
    SummaryNode,
    TimelineEntry,
    Transcript,
    WordToken,
    validate_transcript,
)

TRANSCRIPT_SCHEMA_VERSION = 1
HIERARCHY_SCHEMA_VERSION = 1

LEVEL_ORDER = (SummaryLevel.LONG, SummaryLevel.MEDIUM, SummaryLevel.SHORT)


def canonical_json_bytes(payload: Any) -> bytes:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode(
        "utf-8"
    )


def transcript_to_dict(t: Transcript) -> dict:
    return {
        "schema_version": TRANSCRIPT_SCHEMA_VERSION,
        "recording_id": t.recording_id,
        "title": t.title,
        "audio_duration_s": t.audio_duration_s,
        "words": [
            {
                "index": w.index,
                "text": w.text,
                "start_s": w.start_s,
                "end_s": w.end_s,
                "speaker": w.speaker,
            }
            for w in t.words
        ],
        "sentences": [
            {"index": s.index, "word_range": list(s.word_range), "text": s.text}
            for s in t.sentences
        ],
        "turns": [
            {"index": u.index, "speaker": u.speaker, "sentence_range": list(u.sentence_range)}
            for u in t.turns
        ],
    }


def transcript_from_dict(data: dict, validate: bool = True) -> Transcript:
    """Decode a transcript artifact; raises on schema or invariant violations."""
    version = data.get("schema_version")
    if version != TRANSCRIPT_SCHEMA_VERSION:
        raise MalformedTranscriptError([f"unsupported schema_version {version!r}"])
    try:
        t = Transcript(
            recording_id=data["recording_id"],
            title=data.get("title", ""),
            audio_duration_s=float(data["audio_duration_s"]),
            words=tuple(
                WordToken(
                    index=int(w["index"]),
                    text=w["text"],
                    start_s=float(w["start_s"]),
                    end_s=float(w["end_s"]),
                    speaker=w["speaker"],
                )
                for w in data["words"]
            ),
            sentences=tuple(
                Sentence(
                    index=int(s["index"]),
                    word_range=(int(s["word_range"][0]), int(s["word_range"][1])),
                    text=s["text"],
                )
                for s in data["sentences"]
            ),
            turns=tuple(
                SpeakerTurn(
                    index=int(u["index"]),
                    speaker=u["speaker"],
                    sentence_range=(int(u["sentence_range"][0]), int(u["sentence_range"][1])),
                )
                for u in data["turns"]
            ),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedTranscriptError([f"bad transcript payload: {exc}"]) from exc
    if validate:
        violations = validate_transcript(t)
        if violations:
            raise MalformedTranscriptError(violations)
    return t


def transcript_to_bytes(t: Transcript) -> bytes:
    return canonical_json_bytes(transcript_to_dict(t))


def transcript_from_bytes(raw: bytes, validate: bool = True) -> Transcript:
    return transcript_from_dict(json.loads(raw.decode("utf-8")), validate=validate)


def _node_to_dict(node: SummaryNode) -> dict:
    return {
        "id": node.id,
        "level": node.level.value,
        "text": node.text,
        "word_count": node.word_count,
        "source_ids": list(node.source_ids),
        "transcript_span": list(node.transcript_span),
        "time_range_s": list(node.time_range_s),
        "turn_index": node.turn_index,
        "degraded": node.degraded,
    }


def _node_from_dict(data: dict) -> SummaryNode:
    return SummaryNode(
        id=data["id"],
        level=SummaryLevel(data["level"]),
        text=data["text"],
        word_count=int(data["word_count"]),
        source_ids=tuple(data["source_ids"]),
        transcript_span=(int(data["transcript_span"][0]), int(data["transcript_span"][1])),
        time_range_s=(float(data["time_range_s"][0]), float(data["time_range_s"][1])),
        turn_index=int(data["turn_index"]),
        degraded=bool(data.get("degraded", False)),
    )


def hierarchy_to_dict(h: Hierarchy) -> dict:
    nodes = []
    for level in LEVEL_ORDER:
        nodes.extend(_node_to_dict(n) for n in h.nodes(level))
    return {
        "schema_version": HIERARCHY_SCHEMA_VERSION,
        "recording_id": h.recording_id,
        "config": h.config_snapshot.to_dict(),
        "nodes": nodes,
        "edges": [list(e) for e in h.edges],
        "highlights": [
            {
                "short_node_id": link.short_node_id,
                "phrase": link.phrase,
                "targets": [
                    {
                        "level": tg.level,
                        "node_id": tg.node_id,
                        "start_char": tg.start_char,
                        "end_char": tg.end_char,
                    }
                    for tg in link.targets
                ],
            }
            for link in h.highlights
        ],
        "timeline": [
            {
                "short_node_id": e.short_node_id,
                "start_fraction": e.start_fraction,
                "end_fraction": e.end_fraction,
            }
            for e in h.timeline
        ],
        "drop_ledger": [
            {
                "level": d.level.value,
                "text": d.text,
                "word_count": d.word_count,
                "source_ids": list(d.source_ids),
                "transcript_span": list(d.transcript_span),
            }
            for d in h.drop_ledger
        ],
    }


def hierarchy_from_dict(data: dict) -> Hierarchy:
    version = data.get("schema_version")
    if version != HIERARCHY_SCHEMA_VERSION:
        raise ValueError(f"unsupported hierarchy schema_version {version!r}")
    levels: dict[SummaryLevel, tuple[SummaryNode, ...]] = {}
    for level in LEVEL_ORDER:
        levels[level] = tuple(
            _node_from_dict(n) for n in data["nodes"] if n["level"] == level.value
        )
    return Hierarchy(
        recording_id=data["recording_id"],
        levels=levels,
        edges=tuple((e[0], e[1]) for e in data["edges"]),
        config_snapshot=PipelineConfig.from_dict(data["config"]),
        highlights=tuple(
            HighlightLink(
                short_node_id=item["short_node_id"],
                phrase=item["phrase"],
                targets=tuple(
                    HighlightTarget(
                        level=tg["level"],
                        node_id=tg["node_id"],
                        start_char=int(tg["start_char"]),
                        end_char=int(tg["end_char"]),
                    )
                    for tg in item["targets"]
                ),
            )
            for item in data["highlights"]
        ),
        timeline=tuple(
            TimelineEntry(
                short_node_id=e["short_node_id"],
                start_fraction=float(e["start_fraction"]),
                end_fraction=float(e["end_fraction"]),
            )
            for e in data["timeline"]
        ),
        drop_ledger=tuple(
            DropRecord(
                level=SummaryLevel(d["level"]),
                text=d["text"],
                word_count=int(d["word_count"]),
                source_ids=tuple(d["source_ids"]),
                transcript_span=(int(d["transcript_span"][0]), int(d["transcript_span"][1])),
            )
            for d in data["drop_ledger"]
        ),
    )


def hierarchy_to_bytes(h: Hierarchy) -> bytes:
    return canonical_json_bytes(hierarchy_to_dict(h))


def hierarchy_from_bytes(raw: bytes) -> Hierarchy:
    return hierarchy_from_dict(json.loads(raw.decode("utf-8")))
