"""Heuristic scoring and the segmentation-strategy evaluation harness.

The heuristic averages a coherence score (similarity-scorer output) with a
retention score (embedding cosine) into a single number in [-1, 1]. The
harness summarizes a transcript under one segmentation strategy at the first
summary level only - deeper levels feed the embedder back into their own
construction, which would bias the retention component - and scores each
summary against its source segment.
"""

from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass

from .errors import RecordingMismatchError
from .hierarchy import long_summary_text, summarize_passage
from .model import HeuristicScore, PipelineConfig, Transcript, cosine_similarity
from .parallel import bounded_map
from .providers.base import Embedder, ProviderSet, SimilarityScorer
from .segmentation import naive_fixed_segment, segment_transcript

logger = logging.getLogger(__name__)


class Strategy(str, enum.Enum):
    NAIVE_FIXED = "NAIVE_FIXED"
    COREF_SEMANTIC = "COREF_SEMANTIC"


def heuristic_score(
    reference: str,
    candidate: str,
    scorer: SimilarityScorer,
    embedder: Embedder,
) -> HeuristicScore:
    """Coherence from the scorer, retention from embedding cosine, averaged."""
    if not reference.strip() or not candidate.strip():
        raise ValueError("reference and candidate must be non-empty")
    coherence = scorer.score(reference, candidate)
    retention = cosine_similarity(embedder.embed(reference), embedder.embed(candidate))
    return HeuristicScore(coherence=coherence, retention=retention)


@dataclass(frozen=True)
class SegmentScore:
    segment_id: str
    score: HeuristicScore


@dataclass(frozen=True)
class EvaluationReport:
    """Per-segment heuristic scores for one strategy on one recording."""

    recording_id: str
    strategy: Strategy
    per_segment: tuple[SegmentScore, ...]
    aggregation: str = "unweighted_mean"

    @property
    def aggregate(self) -> float:
        return sum(s.score.mean for s in self.per_segment) / len(self.per_segment)

    def to_dict(self) -> dict:
        return {
            "recording_id": self.recording_id,
            "strategy": self.strategy.value,
            "aggregation": self.aggregation,
            "aggregate": self.aggregate,
            "per_segment": [
                {
                    "segment_id": s.segment_id,
                    "coherence": s.score.coherence,
                    "retention": s.score.retention,
                    "mean": s.score.mean,
                }
                for s in self.per_segment
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def evaluate_strategy(
    transcript: Transcript,
    strategy: Strategy,
    providers: ProviderSet,
    config: PipelineConfig,
) -> EvaluationReport:
    """Segment, summarize once per segment, and score summary against source."""
    config = config.validated()
    if strategy == Strategy.NAIVE_FIXED:
        word_segments = naive_fixed_segment(transcript.words, config.naive_segment_len)
        references = [
            (f"N-{i:03d}", " ".join(w.text for w in seg)) for i, seg in enumerate(word_segments)
        ]
        candidates = bounded_map(
            lambda ref: summarize_passage(ref[1], providers.summarizer, config),
            references,
            config.parallelism,
        )
    else:
        chunks = segment_transcript(transcript, providers.coreference, config)
        references = [(c.id, c.text) for c in chunks]
        candidates = [
            text
            for text, _ in bounded_map(
                lambda c: long_summary_text(transcript, c, providers.summarizer, config),
                chunks,
                config.parallelism,
            )
        ]
    if not references:
        raise ValueError("transcript produced no segments to evaluate")

    scores = bounded_map(
        lambda pair: heuristic_score(pair[0][1], pair[1], providers.scorer, providers.embedder),
        list(zip(references, candidates)),
        config.parallelism,
    )
    return EvaluationReport(
        recording_id=transcript.recording_id,
        strategy=strategy,
        per_segment=tuple(
            SegmentScore(segment_id=ref_id, score=score)
            for (ref_id, _), score in zip(references, scores)
        ),
    )


@dataclass(frozen=True)
class StrategyDelta:
    first: Strategy
    second: Strategy
    delta: float  # first aggregate minus second aggregate


def compare_strategies(reports: list[EvaluationReport]) -> list[StrategyDelta]:
    """Pairwise aggregate deltas between reports on the same recording."""
    if len(reports) < 2:
        raise ValueError("need at least two reports to compare")
    recording_ids = {r.recording_id for r in reports}
    if len(recording_ids) != 1:
        raise RecordingMismatchError(f"reports span recordings {sorted(recording_ids)}")
    deltas = []
    for i, a in enumerate(reports):
        for b in reports[i + 1 :]:
            deltas.append(StrategyDelta(first=a.strategy, second=b.strategy, delta=a.aggregate - b.aggregate))
    return deltas


def render_report_table(reports: list[EvaluationReport]) -> str:
    """Aligned plain-text table: one row per strategy with its aggregate."""
    rows = [("Segmentation Strategy", "Heuristic Score")]
    for report in reports:
        rows.append((report.strategy.value, f"{report.aggregate:.2f}"))
    width = max(len(r[0]) for r in rows) + 2
    lines = [f"{name:<{width}}{value}" for name, value in rows]
    lines.insert(1, "-" * (width + len(rows[0][1])))
    return "\n".join(lines)
