#!/usr/bin/env python3
"""Compare naive fixed-length segmentation with coreference-driven chunking.

Fixture sentences carry inline entity markup (⟨e1:...⟩). Entities that are
tight enough (span <= 100 words), repeated enough (>= 3 mentions), and not
stop-only ("I", "me") group the sentences they span into semantic chunks;
everything else becomes a singleton.
"""

from dialogskim.fixtures import build_transcript, coref_resolver_for
from dialogskim.model import PipelineConfig
from dialogskim.providers.base import annotate_turn
from dialogskim.segmentation import filter_entities, naive_fixed_segment, segment_transcript

script = [
    ("HOST", [
        "⟨e1:Our guest⟩ runs ⟨e2:a nursing program⟩ and ⟨e1:she⟩ helped ⟨e2:it⟩ double in size.",
        "⟨e2:The program⟩ trains both city and rural staff each year.",
        "That reminds me of my own school days somehow.",
        "⟨e3:The hospital board⟩ met and ⟨e3:they⟩ praised what ⟨e3:the board⟩ heard.",
    ]),
    ("GUEST", [
        "I appreciate that a lot.",
        "⟨e4:Recruiting⟩ stays hard because ⟨e4:it⟩ competes with travel roles but ⟨e4:recruiting⟩ improved.",
    ]),
]

transcript, registry = build_transcript("nursing-ep", script)
resolver = coref_resolver_for(registry)
config = PipelineConfig()

print("== entity filter, turn by turn ==")
for turn in transcript.turns:
    annotation = annotate_turn(transcript, turn, resolver)
    report = filter_entities(annotation.clusters, config)
    print(f"turn {turn.index} ({turn.speaker}): kept={list(report.kept)}"
          f" dropped_mentions={list(report.dropped_mentions)}"
          f" dropped_span={list(report.dropped_span)}"
          f" dropped_stoplist={list(report.dropped_stoplist)}")
print()

print("== semantic chunks ==")
for chunk in segment_transcript(transcript, resolver, config):
    lo, hi = chunk.sentence_range
    print(f"{chunk.id} turn={chunk.turn_index} sentences {lo}-{hi} [{chunk.kind.value}]")
    print(f"    {chunk.text}")
print()

print("== naive fixed-length baseline (limit 20 for this tiny fixture) ==")
for i, segment in enumerate(naive_fixed_segment(transcript.words, 20)):
    text = " ".join(w.text for w in segment)
    print(f"segment {i}: {len(segment)} words: {text[:70]}...")
