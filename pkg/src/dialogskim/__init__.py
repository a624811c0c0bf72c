"""dialogskim: hierarchical summarization of longform spoken dialog.

Turns diarized transcripts into a Short/Medium/Long summary hierarchy
aligned to transcript spans and audio time ranges, evaluates segmentation
strategies with a coherence-plus-retention heuristic, and serves the result
for interactive browsing.
"""

from .model import (
    ChunkKind,
    ClusterLinkage,
    DistanceMatrix,
    DropRecord,
    EmbeddingVector,
    EntityCluster,
    HeuristicScore,
    Hierarchy,
    HighlightLink,
    HighlightTarget,
    MentionSpan,
    PipelineConfig,
    SemanticChunk,
    Sentence,
    SpeakerTurn,
    SummaryLevel,
    SummaryNode,
    TimelineEntry,
    Transcript,
    WordToken,
    cosine_similarity,
    validate_transcript,
    word_count,
)
from .segmentation import (
    EntityFilterReport,
    filter_entities,
    naive_fixed_segment,
    segment_transcript,
    segment_turn,
)
from .clustering import agglomerative_labels, build_distance_matrix
from .hierarchy import (
    ClusterAssignment,
    align_key_phrase,
    build_hierarchy,
    build_level,
    build_timeline,
    cluster_summaries,
    merge_and_stem,
    summarize_chunk,
    validate_hierarchy,
)
from .evaluation import (
    EvaluationReport,
    Strategy,
    compare_strategies,
    evaluate_strategy,
    heuristic_score,
)
from .fixtures import build_transcript, coref_resolver_for, synthetic_transcript

__version__ = "0.1.0"

__all__ = [
    "ChunkKind",
    "ClusterLinkage",
    "DistanceMatrix",
    "DropRecord",
    "EmbeddingVector",
    "EntityCluster",
    "HeuristicScore",
    "Hierarchy",
    "HighlightLink",
    "HighlightTarget",
    "MentionSpan",
    "PipelineConfig",
    "SemanticChunk",
    "Sentence",
    "SpeakerTurn",
    "SummaryLevel",
    "SummaryNode",
    "TimelineEntry",
    "Transcript",
    "WordToken",
    "cosine_similarity",
    "validate_transcript",
    "word_count",
    "EntityFilterReport",
    "filter_entities",
    "naive_fixed_segment",
    "segment_transcript",
    "segment_turn",
    "agglomerative_labels",
    "build_distance_matrix",
    "ClusterAssignment",
    "align_key_phrase",
    "build_hierarchy",
    "build_level",
    "build_timeline",
    "cluster_summaries",
    "merge_and_stem",
    "summarize_chunk",
    "validate_hierarchy",
    "EvaluationReport",
    "Strategy",
    "compare_strategies",
    "evaluate_strategy",
    "heuristic_score",
    "build_transcript",
    "coref_resolver_for",
    "synthetic_transcript",
]
