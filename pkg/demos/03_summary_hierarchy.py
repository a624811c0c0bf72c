#!/usr/bin/env python3
"""Build the full Short/Medium/Long hierarchy on a synthetic dialog.

Each level embeds the previous one, clusters by cosine distance (within
speaker turns first, across the recording at the top), concatenates each
cluster in transcript order, stems merged texts of five words or fewer into
the drop ledger, and summarizes the rest. Everything here runs on the
deterministic fake providers.
"""

from dialogskim.fixtures import coref_resolver_for, synthetic_transcript
from dialogskim.hierarchy import build_hierarchy
from dialogskim.model import PipelineConfig, SummaryLevel
from dialogskim.providers import fake_provider_set

transcript, registry = synthetic_transcript("synthetic-demo", target_words=1200, seed=42)
providers = fake_provider_set(coreference=coref_resolver_for(registry))
hierarchy = build_hierarchy(transcript, providers, PipelineConfig())

for level in (SummaryLevel.LONG, SummaryLevel.MEDIUM, SummaryLevel.SHORT):
    print(f"{level.value}: {len(hierarchy.nodes(level))} nodes")
print(f"drop ledger: {len(hierarchy.drop_ledger)} stemmed merges")
print()

print("== short summaries with their lineage ==")
for node in hierarchy.nodes(SummaryLevel.SHORT)[:5]:
    start_s, end_s = node.time_range_s
    print(f"{node.id} [{start_s:7.1f}s-{end_s:7.1f}s] sentences {node.transcript_span}")
    print(f"    {node.text}")
    for medium_id in hierarchy.children_of(node.id):
        print(f"    └─ {medium_id}: {hierarchy.node_by_id(medium_id).text[:60]}...")
print()

print("== key-phrase highlights ==")
for link in hierarchy.highlights[:5]:
    if link.phrase:
        levels = ", ".join(sorted({t.level for t in link.targets}))
        print(f"{link.short_node_id}: {link.phrase!r} found at {levels}")
print()

print("== timeline (fractions of audio) ==")
for entry in hierarchy.timeline[:8]:
    width = entry.end_fraction - entry.start_fraction
    bar = "#" * max(1, int(width * 60))
    print(f"{entry.short_node_id} {entry.start_fraction:5.2f}-{entry.end_fraction:5.2f} {bar}")
