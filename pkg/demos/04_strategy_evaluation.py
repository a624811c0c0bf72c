#!/usr/bin/env python3
"""Score segmentation strategies with the coherence + retention heuristic.

Each segment is summarized once and scored against its own source text:
coherence from the similarity scorer, retention from embedding cosine,
averaged into [-1, 1]. Only first-level summaries are scored; deeper levels
reuse the embedder inside their own construction, which would inflate
retention circularly.
"""

from dialogskim.evaluation import Strategy, compare_strategies, evaluate_strategy, render_report_table
from dialogskim.fixtures import coref_resolver_for, synthetic_transcript
from dialogskim.model import PipelineConfig
from dialogskim.providers import fake_provider_set

transcript, registry = synthetic_transcript("eval-demo", target_words=1500, seed=8)
providers = fake_provider_set(coreference=coref_resolver_for(registry))
config = PipelineConfig()

reports = [
    evaluate_strategy(transcript, strategy, providers, config) for strategy in Strategy
]

print(f"recording: {transcript.recording_id} ({len(transcript.words)} words)")
print()
print(render_report_table(reports))
print()
for delta in compare_strategies(reports):
    print(f"{delta.first.value} minus {delta.second.value}: {delta.delta:+.3f}")
print()

semantic = next(r for r in reports if r.strategy == Strategy.COREF_SEMANTIC)
print("== lowest scoring semantic segments ==")
worst = sorted(semantic.per_segment, key=lambda s: s.score.mean)[:3]
for seg in worst:
    print(f"{seg.segment_id}: mean={seg.score.mean:.3f}"
          f" (coherence={seg.score.coherence:.3f}, retention={seg.score.retention:.3f})")
