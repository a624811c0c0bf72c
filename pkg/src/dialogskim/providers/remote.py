"""HTTP clients for remotely hosted model providers.

All requests are JSON POSTs to the descriptor's endpoint with an optional
bearer token. Responses are validated against domain invariants before they
leave this module; transport and server failures surface as
PROVIDER_UNAVAILABLE after bounded retries, never as hangs.

Request/response bodies per provider kind:

* TRANSCRIBER  in: {"audio_b64", "model"}            out: transcript artifact JSON
* COREFERENCE  in: {"text", "model"}                 out: {"clusters": [[{"start_word", "end_word", "text"}, ...], ...]}
* SUMMARIZER   in: {"text", "max_output_words",
                    "model"}                         out: {"summary"}
* EMBEDDER     in: {"text", "model"}                 out: {"vector": [float, ...]}
* SCORER       in: {"reference", "candidate",
                    "model"}                         out: {"score": float}
"""

from __future__ import annotations

import base64
import logging
from pathlib import Path

import httpx

from ..errors import (
    EmptyOutputError,
    MalformedResponseError,
    MalformedTranscriptError,
    ProviderUnavailableError,
    UnreadableInputError,
)
from ..model import EmbeddingVector, Transcript, word_count
from .base import (
    CoreferenceResolver,
    Embedder,
    LocalMention,
    ProviderDescriptor,
    RetryPolicy,
    SimilarityScorer,
    Summarizer,
    Transcriber,
    call_with_retry,
)

logger = logging.getLogger(__name__)


class _RemoteClient:
    def __init__(
        self,
        descriptor: ProviderDescriptor,
        token: str = "",
        policy: RetryPolicy | None = None,
        transport: httpx.BaseTransport | None = None,
    ):
        if descriptor.is_fake:
            raise ValueError("remote client requires a real endpoint")
        self.descriptor = descriptor
        self.policy = policy or RetryPolicy()
        headers = {"Authorization": f"Bearer {token}"} if token else {}
        self._client = httpx.Client(
            headers=headers, timeout=self.policy.timeout_s, transport=transport
        )

    def _post(self, payload: dict) -> dict:
        def attempt() -> dict:
            try:
                response = self._client.post(self.descriptor.endpoint, json=payload)
            except httpx.HTTPError as exc:
                raise ProviderUnavailableError(
                    f"{self.descriptor.name}: transport failure: {exc}"
                ) from exc
            if response.status_code >= 500:
                raise ProviderUnavailableError(
                    f"{self.descriptor.name}: server error {response.status_code}"
                )
            if response.status_code >= 400:
                raise ProviderUnavailableError(
                    f"{self.descriptor.name}: request rejected {response.status_code}"
                )
            try:
                return response.json()
            except ValueError as exc:
                raise MalformedResponseError(
                    f"{self.descriptor.name}: response is not JSON"
                ) from exc

        return call_with_retry(attempt, self.policy)


class RemoteTranscriber(_RemoteClient, Transcriber):
    def transcribe(self, audio_ref: str) -> Transcript:
        path = Path(audio_ref)
        try:
            audio = path.read_bytes()
        except OSError as exc:
            raise UnreadableInputError(f"cannot read audio file {audio_ref!r}: {exc}") from exc
        data = self._post(
            {
                "audio_b64": base64.b64encode(audio).decode("ascii"),
                "model": self.descriptor.model_identifier,
            }
        )
        from ..artifacts import transcript_from_dict

        try:
            return transcript_from_dict(data)
        except MalformedTranscriptError as exc:
            raise MalformedResponseError(
                f"{self.descriptor.name}: transcript failed validation: "
                + "; ".join(exc.violations)
            ) from exc


class RemoteCoreferenceResolver(_RemoteClient, CoreferenceResolver):
    def resolve(self, turn_text: str) -> list[list[LocalMention]]:
        data = self._post({"text": turn_text, "model": self.descriptor.model_identifier})
        try:
            clusters = [
                [
                    LocalMention(
                        start_word=int(m["start_word"]),
                        end_word=int(m["end_word"]),
                        text=str(m.get("text", "")),
                    )
                    for m in cluster
                ]
                for cluster in data["clusters"]
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedResponseError(
                f"{self.descriptor.name}: bad coreference payload: {exc}"
            ) from exc
        for cluster in clusters:
            for m in cluster:
                if m.start_word < 0 or m.end_word < m.start_word:
                    raise MalformedResponseError(
                        f"{self.descriptor.name}: mention indices ({m.start_word}, {m.end_word})"
                    )
        return clusters


class RemoteSummarizer(_RemoteClient, Summarizer):
    def summarize(self, text: str, max_output_words: int) -> str:
        data = self._post(
            {
                "text": text,
                "max_output_words": max_output_words,
                "model": self.descriptor.model_identifier,
            }
        )
        summary = str(data.get("summary", "")).strip()
        if not summary:
            raise EmptyOutputError(f"{self.descriptor.name}: empty summary")
        if word_count(summary) > max_output_words:
            logger.warning(
                "%s returned %d words for a %d-word budget; truncating",
                self.descriptor.name,
                word_count(summary),
                max_output_words,
            )
            summary = " ".join(summary.split()[:max_output_words])
        return summary


class RemoteEmbedder(_RemoteClient, Embedder):
    def embed(self, text: str) -> EmbeddingVector:
        data = self._post({"text": text, "model": self.descriptor.model_identifier})
        try:
            return EmbeddingVector(values=tuple(float(x) for x in data["vector"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedResponseError(
                f"{self.descriptor.name}: bad embedding payload: {exc}"
            ) from exc


class RemoteSimilarityScorer(_RemoteClient, SimilarityScorer):
    def score(self, reference: str, candidate: str) -> float:
        data = self._post(
            {
                "reference": reference,
                "candidate": candidate,
                "model": self.descriptor.model_identifier,
            }
        )
        try:
            value = float(data["score"])
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedResponseError(
                f"{self.descriptor.name}: bad score payload: {exc}"
            ) from exc
        if not -1.0 - 1e-6 <= value <= 1.0 + 1e-6:
            raise MalformedResponseError(f"{self.descriptor.name}: score {value} outside [-1, 1]")
        return min(1.0, max(-1.0, value))
