"""Provider contracts for the five external model capabilities.

Transcription, coreference, summarization, embedding, and similarity scoring
all live behind these interfaces. Implementations are stateless and safe for
concurrent calls; everything a provider returns is re-validated before it
enters the core.
"""

from __future__ import annotations

import abc
import enum
import logging
import time
from dataclasses import dataclass

from ..errors import MalformedResponseError, ProviderUnavailableError
from ..model import EmbeddingVector, EntityCluster, MentionSpan, SpeakerTurn, Transcript

logger = logging.getLogger(__name__)

FAKE_ENDPOINT = "FAKE"


class ProviderKind(str, enum.Enum):
    TRANSCRIBER = "TRANSCRIBER"
    COREFERENCE = "COREFERENCE"
    SUMMARIZER = "SUMMARIZER"
    EMBEDDER = "EMBEDDER"
    SCORER = "SCORER"


@dataclass(frozen=True)
class ProviderDescriptor:
    """Opaque identity of one provider: kind, name, endpoint (or FAKE), model."""

    kind: ProviderKind
    name: str
    endpoint: str = FAKE_ENDPOINT
    model_identifier: str = ""

    @property
    def is_fake(self) -> bool:
        return self.endpoint == FAKE_ENDPOINT


@dataclass(frozen=True)
class RetryPolicy:
    """Bound every remote call: per-request timeout, capped retries, backoff."""

    timeout_s: float = 30.0
    max_retries: int = 2
    backoff_base_s: float = 0.5

    def backoff_for(self, attempt: int) -> float:
        return self.backoff_base_s * (2**attempt)


def call_with_retry(fn, policy: RetryPolicy, sleep=time.sleep):
    """Run ``fn`` retrying only on provider unavailability; other errors pass through."""
    last: ProviderUnavailableError | None = None
    for attempt in range(policy.max_retries + 1):
        try:
            return fn()
        except ProviderUnavailableError as exc:
            last = exc
            if attempt < policy.max_retries:
                sleep(policy.backoff_for(attempt))
    assert last is not None
    raise last


@dataclass(frozen=True)
class LocalMention:
    """One mention with word indices relative to the turn it came from."""

    start_word: int
    end_word: int
    text: str = ""


@dataclass(frozen=True)
class CorefAnnotation:
    """Coreference clusters for one speaker turn, in global word indices."""

    turn_index: int
    clusters: tuple[EntityCluster, ...]


class Transcriber(abc.ABC):
    @abc.abstractmethod
    def transcribe(self, audio_ref: str) -> Transcript:
        """Speech to text with diarization and punctuation; result is validated."""


class CoreferenceResolver(abc.ABC):
    @abc.abstractmethod
    def resolve(self, turn_text: str) -> list[list[LocalMention]]:
        """Coreference clusters over one turn's text, turn-local word indices."""


class Summarizer(abc.ABC):
    @abc.abstractmethod
    def summarize(self, text: str, max_output_words: int) -> str:
        """Abstractive summary within a word budget."""


class Embedder(abc.ABC):
    @abc.abstractmethod
    def embed(self, text: str) -> EmbeddingVector:
        """Unit-norm sentence embedding."""

    def embed_many(self, texts: list[str]) -> list[EmbeddingVector]:
        return [self.embed(t) for t in texts]


class SimilarityScorer(abc.ABC):
    @abc.abstractmethod
    def score(self, reference: str, candidate: str) -> float:
        """Coherence score in [-1, 1]; score(x, x) is 1.0."""


def annotate_turn(
    transcript: Transcript, turn: SpeakerTurn, resolver: CoreferenceResolver
) -> CorefAnnotation:
    """Resolve one turn and translate mention indices to transcript-global.

    This is the trust boundary: turn-local indices are validated against the
    turn's word range here, so only one coordinate system exists inside the
    core. Empty clusters from the provider are dropped.
    """
    turn_text = transcript.sentence_span_text(turn.sentence_range)
    raw_clusters = resolver.resolve(turn_text)
    base, last = transcript.turn_word_range(turn)
    turn_len = last - base + 1

    clusters: list[EntityCluster] = []
    for k, raw in enumerate(raw_clusters):
        if not raw:
            continue
        mentions = []
        for m in raw:
            if m.start_word < 0 or m.end_word < m.start_word:
                raise MalformedResponseError(
                    f"coreference mention with invalid indices ({m.start_word}, {m.end_word})"
                )
            if m.end_word >= turn_len:
                raise MalformedResponseError(
                    f"coreference mention beyond turn boundary ({m.end_word} >= {turn_len})"
                )
            start = base + m.start_word
            end = base + m.end_word
            mentions.append(
                MentionSpan(
                    start_word=start,
                    end_word=end,
                    sentence_span=(
                        transcript.sentence_of_word(start),
                        transcript.sentence_of_word(end),
                    ),
                    text=m.text,
                )
            )
        mentions.sort(key=lambda m: (m.start_word, m.end_word))
        clusters.append(EntityCluster(id=f"t{turn.index}-e{k}", mentions=tuple(mentions)))
    return CorefAnnotation(turn_index=turn.index, clusters=tuple(clusters))


@dataclass(frozen=True)
class ProviderSet:
    """The five providers the pipeline consumes, bundled."""

    transcriber: Transcriber
    coreference: CoreferenceResolver
    summarizer: Summarizer
    embedder: Embedder
    scorer: SimilarityScorer
