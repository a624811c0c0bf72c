"""Fixture transcripts for offline runs, demos, and tests.

A fixture script is a list of ``(speaker, sentences)`` turns where each
sentence may carry inline entity markup (``⟨e1:the mayor⟩``). Building a
script yields a fully valid :class:`Transcript` plus the coreference
annotations the markup encodes, keyed by turn text so a
:class:`FakeCoreferenceResolver` can serve them.

Entity labels are scoped to their turn: ``e1`` in two different turns is two
different entities, matching how the pipeline treats speaker turns as
independent units.
"""

from __future__ import annotations

import random
import re

from .model import Sentence, SpeakerTurn, Transcript, WordToken, validate_transcript
from .providers.base import LocalMention
from .providers.fakes import FakeCoreferenceResolver, parse_entity_markup_labeled

TurnScript = tuple[str, list[str]]
CorefRegistry = dict[str, list[list[LocalMention]]]


def split_sentences(text: str) -> list[str]:
    """Split prose into sentences after tokens ending with ``.``, ``?`` or ``!``."""
    sentences: list[str] = []
    current: list[str] = []
    for token in text.split():
        current.append(token)
        if re.search(r"[.?!]$", token):
            sentences.append(" ".join(current))
            current = []
    if current:
        sentences.append(" ".join(current))
    return sentences


def build_transcript(
    recording_id: str,
    script: list[TurnScript],
    title: str = "",
    seconds_per_word: float = 0.4,
) -> tuple[Transcript, CorefRegistry]:
    """Assemble a validated transcript and its markup-derived annotations.

    Words are paced uniformly at ``seconds_per_word``. Adjacent turns with
    the same speaker are merged so the alternation invariant always holds.
    """
    merged: list[TurnScript] = []
    for speaker, sentences in script:
        if merged and merged[-1][0] == speaker:
            merged[-1][1].extend(sentences)
        else:
            merged.append((speaker, list(sentences)))

    words: list[WordToken] = []
    sentences_out: list[Sentence] = []
    turns_out: list[SpeakerTurn] = []
    registry: CorefRegistry = {}

    for turn_index, (speaker, marked_sentences) in enumerate(merged):
        if not marked_sentences:
            raise ValueError(f"turn {turn_index} has no sentences")
        marked_turn = " ".join(" ".join(s.split()) for s in marked_sentences)
        _, by_entity = parse_entity_markup_labeled(marked_turn)

        first_sentence = len(sentences_out)
        turn_sentence_texts = []
        for marked in marked_sentences:
            clean, _ = parse_entity_markup_labeled(marked)
            tokens = clean.split()
            if not tokens:
                raise ValueError(f"empty sentence in turn {turn_index}")
            first_word = len(words)
            for token in tokens:
                i = len(words)
                words.append(
                    WordToken(
                        index=i,
                        text=token,
                        start_s=i * seconds_per_word,
                        end_s=(i + 1) * seconds_per_word,
                        speaker=speaker,
                    )
                )
            text = " ".join(tokens)
            sentences_out.append(
                Sentence(
                    index=len(sentences_out),
                    word_range=(first_word, len(words) - 1),
                    text=text,
                )
            )
            turn_sentence_texts.append(text)
        turns_out.append(
            SpeakerTurn(
                index=turn_index,
                speaker=speaker,
                sentence_range=(first_sentence, len(sentences_out) - 1),
            )
        )
        registry[" ".join(turn_sentence_texts)] = list(by_entity.values())

    transcript = Transcript(
        recording_id=recording_id,
        title=title or recording_id,
        audio_duration_s=len(words) * seconds_per_word,
        words=tuple(words),
        sentences=tuple(sentences_out),
        turns=tuple(turns_out),
    )
    violations = validate_transcript(transcript)
    if violations:
        raise ValueError(f"fixture builder produced invalid transcript: {violations}")
    return transcript, registry


def coref_resolver_for(registry: CorefRegistry) -> FakeCoreferenceResolver:
    return FakeCoreferenceResolver(dict(registry))


_VOCAB = (
    "market team product launch budget review growth plan city council school "
    "funding report data model audio speech signal noise channel mixture intro "
    "question answer detail follow point story number quarter year week topic "
    "idea change impact result measure metric value price cost deal partner "
    "office remote travel health care nurse doctor patient staff hiring talent "
    "media podcast episode listener audience voice tone energy moment context "
    "history lesson practice habit focus balance culture policy rule process "
    "service client user design build test release issue fix update system"
).split()

_FILLER_SENTENCES = (
    "yeah.",
    "right okay.",
    "so anyway yes.",
)


def synthetic_transcript(
    recording_id: str,
    target_words: int = 5000,
    seed: int = 7,
    speakers: tuple[str, str] = ("HOST", "GUEST"),
) -> tuple[Transcript, CorefRegistry]:
    """Seeded synthetic dialog with entity markup, sized to ``target_words``.

    Roughly one turn in six is a short filler turn, and each substantial
    turn carries a few entities with enough mentions to pass the default
    filter plus some junk entities that get dropped, so downstream stages
    all see realistic variety.
    """
    rng = random.Random(seed)
    script: list[TurnScript] = []
    total = 0
    turn_index = 0
    while total < target_words:
        speaker = speakers[turn_index % 2]
        if turn_index % 6 == 5:
            sentence = _FILLER_SENTENCES[rng.randrange(len(_FILLER_SENTENCES))]
            script.append((speaker, [sentence]))
            total += len(sentence.split())
            turn_index += 1
            continue

        n_sentences = rng.randint(2, 8)
        sentences = []
        for _ in range(n_sentences):
            n = rng.randint(6, 14)
            tokens = [_VOCAB[rng.randrange(len(_VOCAB))] for _ in range(n)]
            tokens[-1] += "."
            sentences.append(tokens)

        used: set[tuple[int, int]] = set()
        n_entities = rng.randint(0, 3)
        for e in range(n_entities):
            span_start = rng.randrange(n_sentences)
            span_end = min(n_sentences - 1, span_start + rng.randint(0, 2))
            # one in three entities is junk (too few mentions to survive)
            n_mentions = rng.randint(1, 2) if rng.random() < 0.33 else rng.randint(3, 5)
            placed = 0
            for _ in range(n_mentions * 4):
                if placed == n_mentions:
                    break
                s = rng.randint(span_start, span_end)
                t = rng.randrange(len(sentences[s]))
                if (s, t) in used or "⟨" in sentences[s][t]:
                    continue
                bare = sentences[s][t].rstrip(".")
                suffix = sentences[s][t][len(bare):]
                sentences[s][t] = f"⟨e{e}:{bare}⟩{suffix}"
                used.add((s, t))
                placed += 1

        marked = [" ".join(tokens) for tokens in sentences]
        script.append((speaker, marked))
        total += sum(len(s) for s in sentences)
        turn_index += 1

    return build_transcript(recording_id, script, title=f"synthetic {recording_id}")
