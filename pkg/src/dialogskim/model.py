"""Domain types for diarized transcripts and summary hierarchies.

Everything here is immutable after construction. Index ranges are inclusive
on both ends throughout; empty ranges are never legal. Word positions are
0-based global ordinals over the whole transcript, sentence and turn
positions are 0-based global ordinals as well, so every module speaks one
coordinate system.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .errors import InvalidConfigError

__all__ = [
    "WordToken",
    "Sentence",
    "SpeakerTurn",
    "Transcript",
    "MentionSpan",
    "EntityCluster",
    "ChunkKind",
    "SemanticChunk",
    "SummaryLevel",
    "SummaryNode",
    "HighlightTarget",
    "HighlightLink",
    "TimelineEntry",
    "DropRecord",
    "Hierarchy",
    "ClusterLinkage",
    "PipelineConfig",
    "EmbeddingVector",
    "DistanceMatrix",
    "HeuristicScore",
    "cosine_similarity",
    "ceil_ratio",
    "word_count",
    "validate_transcript",
]


def word_count(text: str) -> int:
    """Number of maximal whitespace-separated tokens in ``text``."""
    return len(text.split())


@dataclass(frozen=True)
class WordToken:
    """One recognized word with its audio time range and speaker label."""

    index: int
    text: str
    start_s: float
    end_s: float
    speaker: str


@dataclass(frozen=True)
class Sentence:
    """A punctuation-delimited sentence over an inclusive word range."""

    index: int
    word_range: tuple[int, int]
    text: str


@dataclass(frozen=True)
class SpeakerTurn:
    """Maximal run of consecutive sentences by one speaker."""

    index: int
    speaker: str
    sentence_range: tuple[int, int]


@dataclass(frozen=True)
class Transcript:
    """A diarized, punctuated, word-time-aligned transcript.

    Sentences partition the words and turns partition the sentences; use
    :func:`validate_transcript` to check a hand-built instance.
    """

    recording_id: str
    title: str
    audio_duration_s: float
    words: tuple[WordToken, ...]
    sentences: tuple[Sentence, ...]
    turns: tuple[SpeakerTurn, ...]

    @cached_property
    def _sentence_of_word(self) -> tuple[int, ...]:
        out = [0] * len(self.words)
        for s in self.sentences:
            for w in range(s.word_range[0], s.word_range[1] + 1):
                if 0 <= w < len(out):
                    out[w] = s.index
        return tuple(out)

    def sentence_of_word(self, word_index: int) -> int:
        return self._sentence_of_word[word_index]

    def turn_word_range(self, turn: SpeakerTurn) -> tuple[int, int]:
        first = self.sentences[turn.sentence_range[0]].word_range[0]
        last = self.sentences[turn.sentence_range[1]].word_range[1]
        return first, last

    def sentence_span_text(self, sentence_range: tuple[int, int]) -> str:
        """Text of an inclusive sentence range, single-space joined."""
        parts = [self.sentences[i].text for i in range(sentence_range[0], sentence_range[1] + 1)]
        return " ".join(parts)

    def sentence_span_time(self, sentence_range: tuple[int, int]) -> tuple[float, float]:
        """Audio time range [first word start, last word end] of a span."""
        first_word = self.sentences[sentence_range[0]].word_range[0]
        last_word = self.sentences[sentence_range[1]].word_range[1]
        return self.words[first_word].start_s, self.words[last_word].end_s


def validate_transcript(t: Transcript) -> list[str]:
    """Check every Transcript invariant.

    Returns an empty list iff the transcript is well formed; otherwise one
    finding per violation, each naming the invariant and offending index.
    Never raises: validation reports, callers decide whether to abort.
    """
    violations: list[str] = []

    for i, w in enumerate(t.words):
        if w.index != i:
            violations.append(f"word index out of order @{i}")
        if not w.text.strip():
            violations.append(f"word text empty @{i}")
        if w.start_s < 0:
            violations.append(f"word start negative @{i}")
        if w.end_s < w.start_s:
            violations.append(f"word end before start @{i}")

    n_words = len(t.words)
    for j, s in enumerate(t.sentences):
        if s.index != j:
            violations.append(f"sentence index out of order @{j}")
        lo, hi = s.word_range
        if lo > hi or lo < 0 or hi >= n_words:
            violations.append(f"sentence word range invalid @{j}")
            continue
        if j == 0 and lo != 0:
            violations.append("sentences do not cover words from @0")
        if j > 0:
            prev_hi = t.sentences[j - 1].word_range[1]
            if lo != prev_hi + 1:
                violations.append(f"sentence word ranges not adjacent @{j - 1}/@{j}")
        joined = " ".join(t.words[k].text for k in range(lo, hi + 1))
        if s.text != joined:
            violations.append(f"sentence text mismatch @{j}")
    if t.sentences and t.words and t.sentences[-1].word_range[1] != n_words - 1:
        violations.append("sentences do not cover trailing words")
    if t.words and not t.sentences:
        violations.append("sentences do not cover words from @0")

    n_sentences = len(t.sentences)
    for k, turn in enumerate(t.turns):
        if turn.index != k:
            violations.append(f"turn index out of order @{k}")
        lo, hi = turn.sentence_range
        if lo > hi or lo < 0 or hi >= n_sentences:
            violations.append(f"turn sentence range invalid @{k}")
            continue
        if k == 0 and lo != 0:
            violations.append("turns do not cover sentences from @0")
        if k > 0:
            prev = t.turns[k - 1]
            if lo != prev.sentence_range[1] + 1:
                violations.append(f"turn sentence ranges not adjacent @{k - 1}/@{k}")
            if turn.speaker == prev.speaker:
                violations.append(f"adjacent turns same speaker @{k}")
        for j in range(lo, hi + 1):
            wlo, whi = t.sentences[j].word_range
            for i in range(wlo, whi + 1):
                if t.words[i].speaker != turn.speaker:
                    violations.append(f"word speaker differs from turn @{i}")
    if t.turns and t.sentences and t.turns[-1].sentence_range[1] != n_sentences - 1:
        violations.append("turns do not cover trailing sentences")
    if t.sentences and not t.turns:
        violations.append("turns do not cover sentences from @0")

    if t.words and t.audio_duration_s < t.words[-1].end_s:
        violations.append("audio duration shorter than last word")

    return violations


@dataclass(frozen=True)
class MentionSpan:
    """One mention of an entity: an inclusive global word-index interval.

    ``text`` is the surface form as returned by the coreference provider;
    it backs the stop-token filter and debugging output.
    """

    start_word: int
    end_word: int
    sentence_span: tuple[int, int]
    text: str = ""


@dataclass(frozen=True)
class EntityCluster:
    """A coreference chain: all mentions of one entity, sorted by start."""

    id: str
    mentions: tuple[MentionSpan, ...]

    def __post_init__(self):
        if not self.mentions:
            raise ValueError(f"entity cluster {self.id} has no mentions")
        starts = [m.start_word for m in self.mentions]
        if starts != sorted(starts):
            raise ValueError(f"entity cluster {self.id} mentions not sorted")

    @property
    def mention_count(self) -> int:
        return len(self.mentions)

    @property
    def span_words(self) -> int:
        """Whole-chain width in words: first mention start to last mention end."""
        return max(m.end_word for m in self.mentions) - self.mentions[0].start_word + 1

    @property
    def sentence_interval(self) -> tuple[int, int]:
        """Sentences from the first mention's start to the last mention's end."""
        return (
            min(m.sentence_span[0] for m in self.mentions),
            max(m.sentence_span[1] for m in self.mentions),
        )


class ChunkKind(str, enum.Enum):
    ENTITY_GROUPED = "ENTITY_GROUPED"
    SINGLETON = "SINGLETON"


@dataclass(frozen=True)
class SemanticChunk:
    """Contiguous sentences within one speaker turn, grouped by entity spans."""

    id: str
    turn_index: int
    sentence_range: tuple[int, int]
    kind: ChunkKind
    text: str


class SummaryLevel(str, enum.Enum):
    LONG = "LONG"
    MEDIUM = "MEDIUM"
    SHORT = "SHORT"


@dataclass(frozen=True)
class SummaryNode:
    """One summary at a hierarchy level, aligned to transcript and audio.

    ``source_ids`` are semantic chunk ids for LONG nodes and child node ids
    for MEDIUM/SHORT nodes. ``turn_index`` is the speaker turn of the first
    source; it drives the within-turn clustering constraint.
    """

    id: str
    level: SummaryLevel
    text: str
    word_count: int
    source_ids: tuple[str, ...]
    transcript_span: tuple[int, int]
    time_range_s: tuple[float, float]
    turn_index: int
    degraded: bool = False


@dataclass(frozen=True)
class HighlightTarget:
    """Character range locating a phrase at one level; node_id is None for the transcript."""

    level: str
    node_id: Optional[str]
    start_char: int
    end_char: int


@dataclass(frozen=True)
class HighlightLink:
    short_node_id: str
    phrase: str
    targets: tuple[HighlightTarget, ...]


@dataclass(frozen=True)
class TimelineEntry:
    short_node_id: str
    start_fraction: float
    end_fraction: float


@dataclass(frozen=True)
class DropRecord:
    """A merged text stemmed away while building ``level``, kept for the UI."""

    level: SummaryLevel
    text: str
    word_count: int
    source_ids: tuple[str, ...]
    transcript_span: tuple[int, int]


@dataclass(frozen=True)
class Hierarchy:
    """Three-level summary hierarchy with alignment metadata."""

    recording_id: str
    levels: dict[SummaryLevel, tuple[SummaryNode, ...]]
    edges: tuple[tuple[str, str], ...]
    config_snapshot: "PipelineConfig"
    highlights: tuple[HighlightLink, ...] = ()
    timeline: tuple[TimelineEntry, ...] = ()
    drop_ledger: tuple[DropRecord, ...] = ()

    def nodes(self, level: SummaryLevel) -> tuple[SummaryNode, ...]:
        return self.levels.get(level, ())

    def node_by_id(self, node_id: str) -> SummaryNode:
        for nodes in self.levels.values():
            for node in nodes:
                if node.id == node_id:
                    return node
        raise KeyError(node_id)

    def children_of(self, node_id: str) -> tuple[str, ...]:
        return tuple(child for parent, child in self.edges if parent == node_id)


class ClusterLinkage(str, enum.Enum):
    AVERAGE = "average"
    SINGLE = "single"
    COMPLETE = "complete"


@dataclass(frozen=True)
class PipelineConfig:
    """All pipeline knobs with their defaults.

    m_max_span_words / p_min_mentions / stop_tokens bound the entity filter,
    naive_segment_len is the fixed-length baseline segment size,
    stem_cutoff_words is the largest merged text that still gets discarded,
    compression_ratio is the summary word budget as a fraction of the input.
    """

    m_max_span_words: int = 100
    p_min_mentions: int = 3
    stop_tokens: tuple[str, ...] = ("I", "me")
    naive_segment_len: int = 60
    stem_cutoff_words: int = 5
    summarizer_max_input_words: int = 60
    compression_ratio: float = 0.5
    cluster_linkage: ClusterLinkage = ClusterLinkage.AVERAGE
    cluster_distance_threshold: float = 0.4
    summarizer_passes: int = 1
    parallelism: int = 4

    def problems(self) -> list[str]:
        out = []
        for name in (
            "m_max_span_words",
            "p_min_mentions",
            "naive_segment_len",
            "stem_cutoff_words",
            "summarizer_max_input_words",
            "summarizer_passes",
            "parallelism",
        ):
            if getattr(self, name) < 1:
                out.append(f"{name} must be positive")
        if not 0 < self.compression_ratio <= 1:
            out.append("compression_ratio must be in (0, 1]")
        if not 0 < self.cluster_distance_threshold < 2:
            out.append("cluster_distance_threshold must be in (0, 2)")
        return out

    def validated(self) -> "PipelineConfig":
        problems = self.problems()
        if problems:
            raise InvalidConfigError("; ".join(problems))
        return self

    def to_dict(self) -> dict:
        return {
            "m_max_span_words": self.m_max_span_words,
            "p_min_mentions": self.p_min_mentions,
            "stop_tokens": list(self.stop_tokens),
            "naive_segment_len": self.naive_segment_len,
            "stem_cutoff_words": self.stem_cutoff_words,
            "summarizer_max_input_words": self.summarizer_max_input_words,
            "compression_ratio": self.compression_ratio,
            "cluster_linkage": self.cluster_linkage.value,
            "cluster_distance_threshold": self.cluster_distance_threshold,
            "summarizer_passes": self.summarizer_passes,
            "parallelism": self.parallelism,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PipelineConfig":
        kwargs = dict(data)
        if "stop_tokens" in kwargs:
            kwargs["stop_tokens"] = tuple(kwargs["stop_tokens"])
        if "cluster_linkage" in kwargs:
            kwargs["cluster_linkage"] = ClusterLinkage(kwargs["cluster_linkage"])
        unknown = set(kwargs) - {f.name for f in cls.__dataclass_fields__.values()}
        if unknown:
            raise InvalidConfigError(f"unknown config fields: {sorted(unknown)}")
        return cls(**kwargs).validated()


@dataclass(frozen=True)
class EmbeddingVector:
    """A unit-norm embedding; construction normalizes and checks finiteness."""

    values: tuple[float, ...]

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("embedding must be a non-empty 1-d vector")
        if not np.all(np.isfinite(arr)):
            raise ValueError("embedding has non-finite entries")
        norm = float(np.linalg.norm(arr))
        if norm == 0.0:
            raise ValueError("embedding has zero norm")
        object.__setattr__(self, "values", tuple(float(x) for x in arr / norm))

    @property
    def dim(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


def cosine_similarity(a: EmbeddingVector, b: EmbeddingVector) -> float:
    """Cosine of two unit vectors, clamped to [-1, 1]; exact 1.0 for equal inputs."""
    if a.values == b.values:
        return 1.0
    return float(np.clip(np.dot(a.as_array(), b.as_array()), -1.0, 1.0))


@dataclass(frozen=True)
class DistanceMatrix:
    """Pairwise cosine distances: symmetric, zero diagonal, entries in [0, 2]."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=float)
        object.__setattr__(self, "entries", arr)
        arr.setflags(write=False)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def problems(self) -> list[str]:
        out = []
        arr = self.entries
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            return ["matrix not square"]
        if not np.allclose(arr, arr.T, atol=1e-12):
            out.append("matrix not symmetric")
        if not np.allclose(np.diag(arr), 0.0, atol=1e-12):
            out.append("diagonal not zero")
        if arr.size and (arr.min() < -1e-12 or arr.max() > 2 + 1e-12):
            out.append("entries outside [0, 2]")
        return out


@dataclass(frozen=True)
class HeuristicScore:
    """Coherence plus retention; the headline number is their simple average."""

    coherence: float
    retention: float

    @property
    def mean(self) -> float:
        return (self.coherence + self.retention) / 2.0


def ceil_ratio(ratio: float, count: int) -> int:
    """Word budget for a summary of a ``count``-word input."""
    return max(1, math.ceil(ratio * count))
