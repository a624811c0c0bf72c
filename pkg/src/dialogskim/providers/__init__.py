"""Provider contracts, deterministic fakes, and remote HTTP clients.

Remote providers are configured through environment variables
(``DS_TRANSCRIBER_URL``, ``DS_COREF_URL``, ``DS_SUMMARIZER_URL``,
``DS_EMBEDDER_URL``, ``DS_SCORER_URL`` plus matching ``DS_*_TOKEN`` values);
any capability without a URL falls back to its deterministic fake.
"""

from __future__ import annotations

import os
from typing import Mapping

from ..model import EmbeddingVector, Transcript
from .base import (
    FAKE_ENDPOINT,
    CorefAnnotation,
    CoreferenceResolver,
    Embedder,
    LocalMention,
    ProviderDescriptor,
    ProviderKind,
    ProviderSet,
    RetryPolicy,
    SimilarityScorer,
    Summarizer,
    Transcriber,
    annotate_turn,
    call_with_retry,
)
from .fakes import (
    FakeCoreferenceResolver,
    FakeEmbedder,
    FakeSimilarityScorer,
    FakeSummarizer,
    FakeTranscriber,
    parse_entity_markup,
)
from .remote import (
    RemoteCoreferenceResolver,
    RemoteEmbedder,
    RemoteSimilarityScorer,
    RemoteSummarizer,
    RemoteTranscriber,
)

__all__ = [
    "FAKE_ENDPOINT",
    "CorefAnnotation",
    "CoreferenceResolver",
    "Embedder",
    "LocalMention",
    "ProviderDescriptor",
    "ProviderKind",
    "ProviderSet",
    "RetryPolicy",
    "SimilarityScorer",
    "Summarizer",
    "Transcriber",
    "annotate_turn",
    "call_with_retry",
    "FakeCoreferenceResolver",
    "FakeEmbedder",
    "FakeSimilarityScorer",
    "FakeSummarizer",
    "FakeTranscriber",
    "parse_entity_markup",
    "RemoteCoreferenceResolver",
    "RemoteEmbedder",
    "RemoteSimilarityScorer",
    "RemoteSummarizer",
    "RemoteTranscriber",
    "fake_provider_set",
    "provider_set_from_env",
    "provider_from_descriptor",
    "transcribe",
    "resolve_coreferences",
    "summarize_text",
    "embed",
    "score_similarity",
]

_ENV_URLS = {
    ProviderKind.TRANSCRIBER: "DS_TRANSCRIBER_URL",
    ProviderKind.COREFERENCE: "DS_COREF_URL",
    ProviderKind.SUMMARIZER: "DS_SUMMARIZER_URL",
    ProviderKind.EMBEDDER: "DS_EMBEDDER_URL",
    ProviderKind.SCORER: "DS_SCORER_URL",
}
_ENV_TOKENS = {
    ProviderKind.TRANSCRIBER: "DS_TRANSCRIBER_TOKEN",
    ProviderKind.COREFERENCE: "DS_COREF_TOKEN",
    ProviderKind.SUMMARIZER: "DS_SUMMARIZER_TOKEN",
    ProviderKind.EMBEDDER: "DS_EMBEDDER_TOKEN",
    ProviderKind.SCORER: "DS_SCORER_TOKEN",
}

_REMOTE_CLASSES = {
    ProviderKind.TRANSCRIBER: RemoteTranscriber,
    ProviderKind.COREFERENCE: RemoteCoreferenceResolver,
    ProviderKind.SUMMARIZER: RemoteSummarizer,
    ProviderKind.EMBEDDER: RemoteEmbedder,
    ProviderKind.SCORER: RemoteSimilarityScorer,
}

_FAKE_FACTORIES = {
    ProviderKind.TRANSCRIBER: FakeTranscriber,
    ProviderKind.COREFERENCE: FakeCoreferenceResolver,
    ProviderKind.SUMMARIZER: FakeSummarizer,
    ProviderKind.EMBEDDER: FakeEmbedder,
    ProviderKind.SCORER: FakeSimilarityScorer,
}


def provider_from_descriptor(descriptor: ProviderDescriptor, token: str = ""):
    """Instantiate the implementation a descriptor names."""
    if descriptor.is_fake:
        return _FAKE_FACTORIES[descriptor.kind]()
    return _REMOTE_CLASSES[descriptor.kind](descriptor, token=token)


def fake_provider_set(
    transcriber: FakeTranscriber | None = None,
    coreference: FakeCoreferenceResolver | None = None,
) -> ProviderSet:
    """All-fake providers; pass pre-seeded transcriber/coreference fixtures."""
    return ProviderSet(
        transcriber=transcriber or FakeTranscriber(),
        coreference=coreference or FakeCoreferenceResolver(),
        summarizer=FakeSummarizer(),
        embedder=FakeEmbedder(),
        scorer=FakeSimilarityScorer(),
    )


def provider_set_from_env(environ: Mapping[str, str] | None = None) -> ProviderSet:
    """Build providers from DS_*_URL env vars, defaulting each to its fake."""
    env = os.environ if environ is None else environ

    def build(kind: ProviderKind):
        url = env.get(_ENV_URLS[kind], "").strip()
        if not url:
            return _FAKE_FACTORIES[kind]()
        descriptor = ProviderDescriptor(
            kind=kind, name=f"remote-{kind.value.lower()}", endpoint=url
        )
        return _REMOTE_CLASSES[kind](descriptor, token=env.get(_ENV_TOKENS[kind], ""))

    return ProviderSet(
        transcriber=build(ProviderKind.TRANSCRIBER),
        coreference=build(ProviderKind.COREFERENCE),
        summarizer=build(ProviderKind.SUMMARIZER),
        embedder=build(ProviderKind.EMBEDDER),
        scorer=build(ProviderKind.SCORER),
    )


def transcribe(audio_ref: str, descriptor: ProviderDescriptor) -> Transcript:
    return provider_from_descriptor(descriptor).transcribe(audio_ref)


def resolve_coreferences(turn_text: str, descriptor: ProviderDescriptor) -> list[list[LocalMention]]:
    if not turn_text.strip():
        raise ValueError("turn_text must be non-empty")
    return provider_from_descriptor(descriptor).resolve(turn_text)


def summarize_text(text: str, max_output_words: int, descriptor: ProviderDescriptor) -> str:
    return provider_from_descriptor(descriptor).summarize(text, max_output_words)


def embed(text: str, descriptor: ProviderDescriptor) -> EmbeddingVector:
    return provider_from_descriptor(descriptor).embed(text)


def score_similarity(reference: str, candidate: str, descriptor: ProviderDescriptor) -> float:
    return provider_from_descriptor(descriptor).score(reference, candidate)
