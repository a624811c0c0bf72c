"""Build the three-level summary hierarchy from semantic chunks.

LONG nodes are the cleaned form of each chunk: the summarizer output at the
configured compression ratio. Each further level embeds the previous one,
clusters by cosine distance (within speaker turns for LONG to MEDIUM, across
the whole recording for MEDIUM to SHORT), concatenates each cluster in
transcript order, discards merged texts at or below the stem cutoff into the
drop ledger, and summarizes what remains.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass

from .clustering import agglomerative_labels, build_distance_matrix
from .errors import (
    AllStemmedError,
    EmptyOutputError,
    EmptySegmentationError,
    MalformedResponseError,
    ProviderUnavailableError,
)
from .model import (
    DropRecord,
    Hierarchy,
    HighlightLink,
    HighlightTarget,
    PipelineConfig,
    SemanticChunk,
    SummaryLevel,
    SummaryNode,
    TimelineEntry,
    Transcript,
    ceil_ratio,
    word_count,
)
from .parallel import bounded_map
from .providers.base import Embedder, ProviderSet, Summarizer
from .segmentation import segment_transcript

logger = logging.getLogger(__name__)

_PROVIDER_ERRORS = (ProviderUnavailableError, MalformedResponseError)


@dataclass(frozen=True)
class ClusterAssignment:
    """Cluster labels over summary nodes; labels are total over item_ids."""

    item_ids: tuple[str, ...]
    labels: dict[str, int]
    within_turn: bool


def summarize_passage(text: str, summarizer: Summarizer, config: PipelineConfig) -> str:
    """One budgeted summarization: budget = ceil(ratio * input words),
    re-applied ``summarizer_passes`` times. An empty remote output falls
    back to that pass's input.
    """
    budget = ceil_ratio(config.compression_ratio, word_count(text))
    current = text
    for _ in range(config.summarizer_passes):
        try:
            current = summarizer.summarize(current, budget)
        except EmptyOutputError:
            logger.warning("summarizer returned empty output; keeping input text")
            break
    return current


def split_windows(
    transcript: Transcript, chunk: SemanticChunk, max_input_words: int
) -> list[tuple[int, int]]:
    """Split a chunk at sentence boundaries into maximal windows within the
    input cap. A single sentence longer than the cap forms its own window.
    """
    lo, hi = chunk.sentence_range
    windows: list[tuple[int, int]] = []
    start = lo
    used = 0
    for s in range(lo, hi + 1):
        n = word_count(transcript.sentences[s].text)
        if s > start and used + n > max_input_words:
            windows.append((start, s - 1))
            start, used = s, n
        else:
            used += n
    windows.append((start, hi))
    return windows


def long_summary_text(
    transcript: Transcript,
    chunk: SemanticChunk,
    summarizer: Summarizer,
    config: PipelineConfig,
) -> tuple[str, bool]:
    """Summarize one chunk, window-splitting oversized input.

    Returns (text, degraded); on provider failure the raw chunk text comes
    back flagged degraded instead of aborting the pipeline.
    """
    try:
        if word_count(chunk.text) <= config.summarizer_max_input_words:
            return summarize_passage(chunk.text, summarizer, config), False
        parts = []
        for window in split_windows(transcript, chunk, config.summarizer_max_input_words):
            window_text = transcript.sentence_span_text(window)
            parts.append(summarize_passage(window_text, summarizer, config))
        return " ".join(parts), False
    except _PROVIDER_ERRORS as exc:
        logger.warning("summarizer failed for chunk %s (%s); keeping raw text", chunk.id, exc.code)
        return chunk.text, True


def summarize_chunk(
    transcript: Transcript,
    chunk: SemanticChunk,
    summarizer: Summarizer,
    config: PipelineConfig,
    node_id: str,
) -> SummaryNode:
    """Produce the LONG node for one semantic chunk."""
    text, degraded = long_summary_text(transcript, chunk, summarizer, config)
    return SummaryNode(
        id=node_id,
        level=SummaryLevel.LONG,
        text=text,
        word_count=word_count(text),
        source_ids=(chunk.id,),
        transcript_span=chunk.sentence_range,
        time_range_s=transcript.sentence_span_time(chunk.sentence_range),
        turn_index=chunk.turn_index,
        degraded=degraded,
    )


def cluster_summaries(
    nodes: list[SummaryNode],
    embedder: Embedder,
    within_turn: bool,
    config: PipelineConfig,
) -> ClusterAssignment:
    """Embed node texts and cluster them by cosine distance.

    With ``within_turn`` set, clustering runs independently per speaker turn
    so no cluster can cross a turn boundary. Labels are globally unique
    across groups.
    """
    if not nodes:
        raise ValueError("need at least one node")
    embeddings = bounded_map(lambda n: embedder.embed(n.text), nodes, config.parallelism)

    groups: list[list[int]]
    if within_turn:
        by_turn: dict[int, list[int]] = {}
        for i, node in enumerate(nodes):
            by_turn.setdefault(node.turn_index, []).append(i)
        groups = [by_turn[t] for t in sorted(by_turn)]
    else:
        groups = [list(range(len(nodes)))]

    labels: dict[str, int] = {}
    offset = 0
    for group in groups:
        matrix = build_distance_matrix([embeddings[i] for i in group])
        group_labels = agglomerative_labels(
            matrix, config.cluster_distance_threshold, config.cluster_linkage
        )
        for i, label in zip(group, group_labels):
            labels[nodes[i].id] = offset + label
        offset += max(group_labels) + 1
    return ClusterAssignment(
        item_ids=tuple(n.id for n in nodes), labels=labels, within_turn=within_turn
    )


@dataclass(frozen=True)
class MergedGroup:
    """One cluster's members concatenated, pending summarization."""

    text: str
    source_ids: tuple[str, ...]
    transcript_span: tuple[int, int]
    time_range_s: tuple[float, float]
    turn_index: int


def merge_and_stem(
    nodes: list[SummaryNode],
    assignment: ClusterAssignment,
    config: PipelineConfig,
) -> tuple[list[MergedGroup], list[MergedGroup]]:
    """Concatenate each cluster in transcript order and stem the short ones.

    Returns (kept, stemmed): merged texts of ``stem_cutoff_words`` or fewer
    words are diverted into the stemmed list. Output is ordered by the
    earliest member's transcript position. Raises ALL_STEMMED when nothing
    survives.
    """
    by_label: dict[int, list[int]] = {}
    for i, node in enumerate(nodes):
        by_label.setdefault(assignment.labels[node.id], []).append(i)

    merged: list[MergedGroup] = []
    for indices in by_label.values():
        members = sorted(indices, key=lambda i: (nodes[i].transcript_span[0], i))
        texts = [nodes[i].text for i in members]
        group = MergedGroup(
            text=" ".join(texts),
            source_ids=tuple(nodes[i].id for i in members),
            transcript_span=(
                min(nodes[i].transcript_span[0] for i in members),
                max(nodes[i].transcript_span[1] for i in members),
            ),
            time_range_s=(
                min(nodes[i].time_range_s[0] for i in members),
                max(nodes[i].time_range_s[1] for i in members),
            ),
            turn_index=nodes[members[0]].turn_index,
        )
        merged.append(group)
    merged.sort(key=lambda g: (g.transcript_span[0], g.source_ids))

    kept = [g for g in merged if word_count(g.text) > config.stem_cutoff_words]
    stemmed = [g for g in merged if word_count(g.text) <= config.stem_cutoff_words]
    if merged and not kept:
        raise AllStemmedError(
            f"all {len(merged)} merged texts at or below {config.stem_cutoff_words} words"
        )
    return kept, stemmed


def build_level(
    lower_nodes: list[SummaryNode],
    level: SummaryLevel,
    providers: ProviderSet,
    config: PipelineConfig,
) -> tuple[list[SummaryNode], list[tuple[str, str]], list[DropRecord]]:
    """Derive MEDIUM or SHORT nodes from the level below.

    The within-turn proximity constraint applies when building MEDIUM and is
    removed when building SHORT. Returns (nodes, parent-child edges, drops).
    """
    if not lower_nodes:
        raise ValueError("lower level is empty")
    if level not in (SummaryLevel.MEDIUM, SummaryLevel.SHORT):
        raise ValueError("build_level only derives MEDIUM or SHORT")
    assignment = cluster_summaries(
        lower_nodes, providers.embedder, within_turn=level == SummaryLevel.MEDIUM, config=config
    )
    kept, stemmed = merge_and_stem(lower_nodes, assignment, config)

    prefix = "M" if level == SummaryLevel.MEDIUM else "S"

    def summarize(group: MergedGroup) -> tuple[str, bool]:
        try:
            return summarize_passage(group.text, providers.summarizer, config), False
        except _PROVIDER_ERRORS as exc:
            logger.warning("summarizer failed at %s (%s); keeping merged text", level.value, exc.code)
            return group.text, True

    summaries = bounded_map(summarize, kept, config.parallelism)

    nodes: list[SummaryNode] = []
    edges: list[tuple[str, str]] = []
    for i, (group, (text, degraded)) in enumerate(zip(kept, summaries)):
        node = SummaryNode(
            id=f"{prefix}-{i:03d}",
            level=level,
            text=text,
            word_count=word_count(text),
            source_ids=group.source_ids,
            transcript_span=group.transcript_span,
            time_range_s=group.time_range_s,
            turn_index=group.turn_index,
            degraded=degraded,
        )
        nodes.append(node)
        edges.extend((node.id, child) for child in group.source_ids)

    drops = [
        DropRecord(
            level=level,
            text=g.text,
            word_count=word_count(g.text),
            source_ids=g.source_ids,
            transcript_span=g.transcript_span,
        )
        for g in stemmed
    ]
    return nodes, edges, drops


def _tokens_with_offsets(text: str) -> list[tuple[str, int, int]]:
    return [(m.group(0).casefold(), m.start(), m.end()) for m in re.finditer(r"\S+", text)]


def _find_phrase(text: str, phrase_tokens: list[str]) -> tuple[int, int] | None:
    """Character range of a casefolded token sequence inside ``text``."""
    tokens = _tokens_with_offsets(text)
    n = len(phrase_tokens)
    for i in range(len(tokens) - n + 1):
        if [t[0] for t in tokens[i : i + n]] == phrase_tokens:
            start, end = tokens[i][1], tokens[i + n - 1][2]
            candidate = " ".join(text[start:end].split()).casefold()
            if candidate == " ".join(phrase_tokens):
                return start, end
    return None


def align_key_phrase(
    transcript: Transcript, hierarchy: Hierarchy, short_node: SummaryNode
) -> HighlightLink:
    """Longest shared word n-gram (n >= 3, case-folded) between a SHORT
    summary and its transcript span, located at every level it appears in.
    """
    span_text = transcript.sentence_span_text(short_node.transcript_span)
    short_tokens = [t for t, _, _ in _tokens_with_offsets(short_node.text)]
    trans_tokens = [t for t, _, _ in _tokens_with_offsets(span_text)]

    phrase: list[str] = []
    max_n = min(len(short_tokens), len(trans_tokens))
    for n in range(max_n, 2, -1):
        grams = {tuple(trans_tokens[i : i + n]) for i in range(len(trans_tokens) - n + 1)}
        for i in range(len(short_tokens) - n + 1):
            gram = tuple(short_tokens[i : i + n])
            if gram in grams:
                phrase = list(gram)
                break
        if phrase:
            break
    if not phrase:
        return HighlightLink(short_node_id=short_node.id, phrase="", targets=())

    targets: list[HighlightTarget] = []
    where = _find_phrase(short_node.text, phrase)
    if where:
        targets.append(HighlightTarget("SHORT", short_node.id, where[0], where[1]))
    medium_ids = hierarchy.children_of(short_node.id)
    long_ids = [g for m in medium_ids for g in hierarchy.children_of(m)]
    for level_name, ids in (("MEDIUM", medium_ids), ("LONG", long_ids)):
        for node_id in ids:
            where = _find_phrase(hierarchy.node_by_id(node_id).text, phrase)
            if where:
                targets.append(HighlightTarget(level_name, node_id, where[0], where[1]))
    where = _find_phrase(span_text, phrase)
    if where:
        targets.append(HighlightTarget("TRANSCRIPT", None, where[0], where[1]))
    return HighlightLink(
        short_node_id=short_node.id, phrase=" ".join(phrase), targets=tuple(targets)
    )


def build_timeline(
    short_nodes: list[SummaryNode], audio_duration_s: float
) -> list[TimelineEntry]:
    """Audio-time fractions per SHORT node, sorted and non-overlapping.

    Interleaved spans (possible when distant summaries merge) are clipped
    forward so the intervals never overlap.
    """
    if audio_duration_s <= 0:
        raise ValueError("audio duration must be positive")
    ordered = sorted(short_nodes, key=lambda n: n.time_range_s)
    entries: list[TimelineEntry] = []
    prev_end = 0.0
    for node in ordered:
        start = max(node.time_range_s[0] / audio_duration_s, prev_end)
        end = max(min(node.time_range_s[1] / audio_duration_s, 1.0), start)
        entries.append(TimelineEntry(short_node_id=node.id, start_fraction=start, end_fraction=end))
        prev_end = end
    return entries


def build_hierarchy(
    transcript: Transcript,
    providers: ProviderSet,
    config: PipelineConfig,
    chunks: list[SemanticChunk] | None = None,
) -> Hierarchy:
    """Full second-stage pipeline: chunks to LONG, MEDIUM, SHORT with
    alignment metadata. Deterministic whenever the providers are.

    Pass precomputed ``chunks`` to skip re-running the segmenter.
    """
    config = config.validated()
    if chunks is None:
        chunks = segment_transcript(transcript, providers.coreference, config)
    if not chunks:
        raise EmptySegmentationError(f"no chunks for recording {transcript.recording_id}")

    long_nodes = bounded_map(
        lambda pair: summarize_chunk(
            transcript, pair[1], providers.summarizer, config, node_id=f"L-{pair[0]:03d}"
        ),
        list(enumerate(chunks)),
        config.parallelism,
    )

    medium_nodes, medium_edges, medium_drops = build_level(
        long_nodes, SummaryLevel.MEDIUM, providers, config
    )
    short_nodes, short_edges, short_drops = build_level(
        medium_nodes, SummaryLevel.SHORT, providers, config
    )

    assert len(short_nodes) <= len(medium_nodes) <= len(long_nodes)
    hierarchy = Hierarchy(
        recording_id=transcript.recording_id,
        levels={
            SummaryLevel.LONG: tuple(long_nodes),
            SummaryLevel.MEDIUM: tuple(medium_nodes),
            SummaryLevel.SHORT: tuple(short_nodes),
        },
        edges=tuple(medium_edges + short_edges),
        config_snapshot=config,
        drop_ledger=tuple(medium_drops + short_drops),
    )
    highlights = tuple(
        align_key_phrase(transcript, hierarchy, node) for node in short_nodes
    )
    timeline = tuple(build_timeline(short_nodes, transcript.audio_duration_s))
    return Hierarchy(
        recording_id=hierarchy.recording_id,
        levels=hierarchy.levels,
        edges=hierarchy.edges,
        config_snapshot=config,
        highlights=highlights,
        timeline=timeline,
        drop_ledger=hierarchy.drop_ledger,
    )


def validate_hierarchy(h: Hierarchy) -> list[str]:
    """Structural checks on a built hierarchy; empty list means healthy."""
    violations: list[str] = []
    longs = h.nodes(SummaryLevel.LONG)
    mediums = h.nodes(SummaryLevel.MEDIUM)
    shorts = h.nodes(SummaryLevel.SHORT)
    if not (len(shorts) <= len(mediums) <= len(longs)):
        violations.append("level counts not monotone")
    by_id = {n.id: n for nodes in h.levels.values() for n in nodes}
    expected_child = {SummaryLevel.MEDIUM: SummaryLevel.LONG, SummaryLevel.SHORT: SummaryLevel.MEDIUM}
    for parent_id, child_id in h.edges:
        parent, child = by_id.get(parent_id), by_id.get(child_id)
        if parent is None or child is None:
            violations.append(f"edge references unknown node {parent_id}->{child_id}")
            continue
        if expected_child.get(parent.level) != child.level:
            violations.append(f"edge level mismatch {parent_id}->{child_id}")
    for level, nodes in h.levels.items():
        starts = [n.transcript_span[0] for n in nodes]
        if starts != sorted(starts):
            violations.append(f"{level.value} nodes not in span order")
    for nodes in (mediums, shorts):
        for node in nodes:
            children = [by_id[c] for c in h.children_of(node.id)]
            if not children:
                violations.append(f"{node.id} has no children")
                continue
            span = (
                min(c.transcript_span[0] for c in children),
                max(c.transcript_span[1] for c in children),
            )
            if node.transcript_span != span:
                violations.append(f"{node.id} span differs from children union")
    for node in by_id.values():
        if node.word_count != word_count(node.text):
            violations.append(f"{node.id} word_count inconsistent")
    return violations
