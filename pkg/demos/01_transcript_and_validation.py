#!/usr/bin/env python3
"""Build a diarized transcript fixture and round-trip it through the artifact format.

Transcripts are word-time-aligned and organized into sentences and speaker
turns. The fixture builder paces words uniformly and derives every range;
validate_transcript re-checks all structural invariants.
"""

from dialogskim.artifacts import transcript_from_bytes, transcript_to_bytes
from dialogskim.fixtures import build_transcript
from dialogskim.model import validate_transcript

script = [
    ("HOST", [
        "welcome back to the show everyone.",
        "today we talk about city budgets with our guest.",
    ]),
    ("GUEST", [
        "thanks for having me on again.",
        "budgets sound dry but they decide what a city can become.",
    ]),
    ("HOST", ["let us start with the basics."]),
]

transcript, _ = build_transcript("budget-ep1", script, title="City Budgets, Episode 1")

print(f"recording : {transcript.recording_id} ({transcript.title})")
print(f"duration  : {transcript.audio_duration_s:.1f}s")
print(f"words     : {len(transcript.words)}")
print(f"sentences : {len(transcript.sentences)}")
print(f"turns     : {len(transcript.turns)}")
print()

for turn in transcript.turns:
    lo, hi = turn.sentence_range
    start_s, end_s = transcript.sentence_span_time(turn.sentence_range)
    print(f"[{start_s:6.1f}s-{end_s:6.1f}s] {turn.speaker}:")
    for s in range(lo, hi + 1):
        print(f"    {transcript.sentences[s].text}")
print()

violations = validate_transcript(transcript)
print(f"invariant violations: {violations or 'none'}")

raw = transcript_to_bytes(transcript)
restored = transcript_from_bytes(raw)
print(f"artifact bytes: {len(raw)}, round-trip equal: {restored == transcript}")
