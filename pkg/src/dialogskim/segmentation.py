"""Transcript segmentation: naive fixed-length and coreference-driven.

The semantic segmenter partitions each speaker turn into chunks: every kept
entity claims the inclusive sentence interval from its first mention to its
last, overlapping intervals (sharing at least one sentence) merge, and every
sentence no kept entity covers becomes its own singleton chunk. Turns are
processed independently, so no chunk ever crosses a turn boundary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Sequence, TypeVar

from .errors import MalformedResponseError, ProviderUnavailableError
from .model import ChunkKind, EntityCluster, PipelineConfig, SemanticChunk, SpeakerTurn, Transcript
from .parallel import bounded_map
from .providers.base import CorefAnnotation, CoreferenceResolver, annotate_turn

T = TypeVar("T")


def naive_fixed_segment(words: Sequence[T], limit: int) -> list[Sequence[T]]:
    """Fixed-length segmentation: every segment has exactly ``limit`` items
    except a possibly shorter final one. Concatenation reproduces the input.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    return [words[i : i + limit] for i in range(0, len(words), limit)]


@dataclass(frozen=True)
class EntityFilterReport:
    """Filter outcome; the four id lists partition the input clusters.

    A cluster violating several rules is reported under the first failing
    check, evaluated in order: stop list, span, mention count.
    """

    kept: tuple[str, ...]
    dropped_span: tuple[str, ...]
    dropped_mentions: tuple[str, ...]
    dropped_stoplist: tuple[str, ...]

    def kept_clusters(self, clusters: Sequence[EntityCluster]) -> list[EntityCluster]:
        kept = set(self.kept)
        return [c for c in clusters if c.id in kept]


def filter_entities(
    clusters: Sequence[EntityCluster], config: PipelineConfig
) -> EntityFilterReport:
    """Keep entities that are tight, repeatedly mentioned, and not stop-only.

    Kept means: chain width at most ``m_max_span_words`` words, at least
    ``p_min_mentions`` mentions, and not composed solely of stop-token
    mentions (matched case-insensitively on the full surface text).
    """
    stop = {s.casefold() for s in config.stop_tokens}
    kept, dropped_span, dropped_mentions, dropped_stoplist = [], [], [], []
    for c in clusters:
        surfaces = [m.text.casefold() for m in c.mentions]
        if surfaces and all(s and s in stop for s in surfaces):
            dropped_stoplist.append(c.id)
        elif c.span_words > config.m_max_span_words:
            dropped_span.append(c.id)
        elif c.mention_count < config.p_min_mentions:
            dropped_mentions.append(c.id)
        else:
            kept.append(c.id)
    return EntityFilterReport(
        kept=tuple(kept),
        dropped_span=tuple(dropped_span),
        dropped_mentions=tuple(dropped_mentions),
        dropped_stoplist=tuple(dropped_stoplist),
    )


def _merge_intervals(intervals: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Union of inclusive intervals; merge only when they share a point."""
    merged: list[tuple[int, int]] = []
    for lo, hi in sorted(intervals):
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return merged


def segment_turn(
    transcript: Transcript,
    turn: SpeakerTurn,
    annotation: CorefAnnotation,
    config: PipelineConfig,
    id_offset: int = 0,
) -> list[SemanticChunk]:
    """Partition one turn's sentences into semantic chunks.

    Expects annotation clusters already filtered by :func:`filter_entities`.
    Entity intervals reaching outside the turn (a provider artifact) are
    clipped to it.
    """
    turn_lo, turn_hi = turn.sentence_range
    intervals = []
    for cluster in annotation.clusters:
        lo, hi = cluster.sentence_interval
        lo, hi = max(lo, turn_lo), min(hi, turn_hi)
        if lo <= hi:
            intervals.append((lo, hi))

    grouped = _merge_intervals(intervals)
    chunks: list[SemanticChunk] = []
    cursor = turn_lo
    for lo, hi in grouped + [(turn_hi + 1, turn_hi + 1)]:
        while cursor < lo and cursor <= turn_hi:
            chunks.append(
                SemanticChunk(
                    id=f"C-{id_offset + len(chunks):03d}",
                    turn_index=turn.index,
                    sentence_range=(cursor, cursor),
                    kind=ChunkKind.SINGLETON,
                    text=transcript.sentences[cursor].text,
                )
            )
            cursor += 1
        if lo > turn_hi:
            break
        chunks.append(
            SemanticChunk(
                id=f"C-{id_offset + len(chunks):03d}",
                turn_index=turn.index,
                sentence_range=(lo, hi),
                kind=ChunkKind.ENTITY_GROUPED,
                text=transcript.sentence_span_text((lo, hi)),
            )
        )
        cursor = hi + 1
    return chunks


def segment_transcript(
    transcript: Transcript,
    resolver: CoreferenceResolver,
    config: PipelineConfig,
    debug_sink: Callable[[str], None] | None = None,
) -> list[SemanticChunk]:
    """Run the semantic segmenter over every speaker turn.

    Turns are resolved concurrently (bounded by ``config.parallelism``) and
    reassembled in turn order, so output is identical to a sequential run.
    Provider failures propagate annotated with the turn index.
    """

    def process(turn: SpeakerTurn) -> tuple[CorefAnnotation, EntityFilterReport]:
        try:
            annotation = annotate_turn(transcript, turn, resolver)
        except (ProviderUnavailableError, MalformedResponseError) as exc:
            raise type(exc)(f"turn {turn.index}: {exc.message}") from exc
        report = filter_entities(annotation.clusters, config)
        kept = CorefAnnotation(
            turn_index=annotation.turn_index,
            clusters=tuple(report.kept_clusters(annotation.clusters)),
        )
        return kept, report

    results = bounded_map(process, transcript.turns, config.parallelism)

    chunks: list[SemanticChunk] = []
    for turn, (annotation, report) in zip(transcript.turns, results):
        turn_chunks = segment_turn(transcript, turn, annotation, config, id_offset=len(chunks))
        if debug_sink is not None:
            debug_sink(
                json.dumps(
                    {
                        "turn": turn.index,
                        "filter": {
                            "kept": list(report.kept),
                            "dropped_span": list(report.dropped_span),
                            "dropped_mentions": list(report.dropped_mentions),
                            "dropped_stoplist": list(report.dropped_stoplist),
                        },
                        "chunks": [
                            {
                                "id": c.id,
                                "kind": c.kind.value,
                                "sentence_range": list(c.sentence_range),
                            }
                            for c in turn_chunks
                        ],
                    },
                    sort_keys=True,
                )
            )
        chunks.extend(turn_chunks)
    return chunks
