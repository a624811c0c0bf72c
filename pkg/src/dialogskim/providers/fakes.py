"""Deterministic offline providers.

Every fake is a pure function of its inputs: identical calls produce
identical outputs across runs and platforms, which is what makes the whole
pipeline testable without network access.

The fake coreference resolver is fixture-driven. Fixtures carry entity
mentions as inline markup, e.g. ``⟨e1:the mayor⟩ said ⟨e1:she⟩ would run``;
:func:`parse_entity_markup` strips the markers and yields mention token
ranges over the clean text.
"""

from __future__ import annotations

import hashlib
import re
from functools import lru_cache
from pathlib import Path

import numpy as np

from ..errors import ProviderUnavailableError
from ..model import EmbeddingVector, Transcript
from .base import CoreferenceResolver, Embedder, LocalMention, SimilarityScorer, Summarizer, Transcriber

_MARKUP_RE = re.compile(r"⟨(e\d+):([^⟩]*)⟩")


def parse_entity_markup_labeled(marked_text: str) -> tuple[str, dict[str, list[LocalMention]]]:
    """Split marked-up text into clean text plus mentions grouped by entity label.

    Mention word indices are token positions in the clean text. Labels keep
    their order of first appearance.
    """
    clean_parts: list[str] = []
    char_spans: list[tuple[str, int, int]] = []  # (entity label, start, end) in clean text
    pos = 0
    clean_len = 0
    for match in _MARKUP_RE.finditer(marked_text):
        before = marked_text[pos : match.start()]
        clean_parts.append(before)
        clean_len += len(before)
        inner = match.group(2)
        char_spans.append((match.group(1), clean_len, clean_len + len(inner)))
        clean_parts.append(inner)
        clean_len += len(inner)
        pos = match.end()
    clean_parts.append(marked_text[pos:])
    clean_text = "".join(clean_parts)

    tokens = [(m.start(), m.end()) for m in re.finditer(r"\S+", clean_text)]
    by_entity: dict[str, list[LocalMention]] = {}
    for label, start, end in char_spans:
        covered = [
            i for i, (ts, te) in enumerate(tokens) if ts < end and te > start
        ]
        if not covered:
            continue
        by_entity.setdefault(label, []).append(
            LocalMention(
                start_word=covered[0],
                end_word=covered[-1],
                text=clean_text[start:end],
            )
        )
    return clean_text, by_entity


def parse_entity_markup(marked_text: str) -> tuple[str, list[list[LocalMention]]]:
    """Like :func:`parse_entity_markup_labeled` but with labels dropped."""
    clean_text, by_entity = parse_entity_markup_labeled(marked_text)
    return clean_text, list(by_entity.values())


class FakeTranscriber(Transcriber):
    """Echoes registered fixture transcripts, or loads a sidecar artifact.

    For an audio ref ``x.wav`` a file ``x.wav.transcript.json`` is accepted
    as the "recognition result".
    """

    def __init__(self, fixtures: dict[str, Transcript] | None = None):
        self._fixtures = dict(fixtures or {})

    def register(self, audio_ref: str, transcript: Transcript) -> None:
        self._fixtures[audio_ref] = transcript

    def transcribe(self, audio_ref: str) -> Transcript:
        if audio_ref in self._fixtures:
            return self._fixtures[audio_ref]
        sidecar = Path(str(audio_ref) + ".transcript.json")
        if sidecar.is_file():
            from ..artifacts import transcript_from_bytes

            return transcript_from_bytes(sidecar.read_bytes())
        raise ProviderUnavailableError(f"no fixture transcript for {audio_ref!r}")


class FakeCoreferenceResolver(CoreferenceResolver):
    """Returns clusters from a registry keyed by clean turn text.

    A turn text that itself still contains entity markup is parsed directly;
    anything unknown resolves to no clusters.
    """

    def __init__(self, annotations: dict[str, list[list[LocalMention]]] | None = None):
        self._annotations = dict(annotations or {})

    def register(self, turn_text: str, clusters: list[list[LocalMention]]) -> None:
        self._annotations[turn_text] = clusters

    def register_marked(self, marked_text: str) -> str:
        clean, clusters = parse_entity_markup(marked_text)
        self._annotations[clean] = clusters
        return clean

    def resolve(self, turn_text: str) -> list[list[LocalMention]]:
        if turn_text in self._annotations:
            return [list(cluster) for cluster in self._annotations[turn_text]]
        if _MARKUP_RE.search(turn_text):
            return parse_entity_markup(turn_text)[1]
        return []


class FakeSummarizer(Summarizer):
    """Prefix extraction to the word budget.

    Truncation keeps word-count arithmetic exact, so every budget law in the
    pipeline is checkable offline.
    """

    def summarize(self, text: str, max_output_words: int) -> str:
        if max_output_words < 1:
            raise ValueError("max_output_words must be >= 1")
        tokens = text.split()
        if not tokens:
            raise ValueError("cannot summarize empty text")
        return " ".join(tokens[:max_output_words])


@lru_cache(maxsize=65536)
def _token_vector(token: str, dim: int) -> tuple[float, ...]:
    seed = int.from_bytes(hashlib.sha256(token.encode("utf-8")).digest()[:8], "big")
    rng = np.random.Generator(np.random.PCG64(seed))
    return tuple(rng.standard_normal(dim))


class FakeEmbedder(Embedder):
    """Bag-of-tokens embedding: per-token seeded hash vectors, summed, normalized.

    Shared tokens pull texts together, so clustering tests get nontrivial
    geometry while staying fully deterministic.
    """

    def __init__(self, dim: int = 64):
        self.dim = dim

    def embed(self, text: str) -> EmbeddingVector:
        tokens = text.casefold().split()
        if not tokens:
            raise ValueError("cannot embed empty text")
        acc = np.zeros(self.dim, dtype=float)
        # summation in sorted order keeps the result a pure function of the
        # token multiset down to the last bit
        for token in sorted(tokens):
            acc += np.asarray(_token_vector(token, self.dim))
        if float(np.linalg.norm(acc)) < 1e-12:
            acc = np.ones(self.dim, dtype=float)
        return EmbeddingVector(values=tuple(acc))


class FakeSimilarityScorer(SimilarityScorer):
    """Token-overlap F1 over casefolded token multisets."""

    def score(self, reference: str, candidate: str) -> float:
        ref = reference.casefold().split()
        cand = candidate.casefold().split()
        if not ref or not cand:
            raise ValueError("cannot score empty text")
        ref_counts: dict[str, int] = {}
        for t in ref:
            ref_counts[t] = ref_counts.get(t, 0) + 1
        overlap = 0
        for t in cand:
            if ref_counts.get(t, 0) > 0:
                ref_counts[t] -= 1
                overlap += 1
        if overlap == 0:
            return 0.0
        precision = overlap / len(cand)
        recall = overlap / len(ref)
        return 2 * precision * recall / (precision + recall)
