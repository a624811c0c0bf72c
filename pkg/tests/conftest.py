"""Shared fixtures: a small annotated dialog and all-fake providers."""

import pytest

from dialogskim.fixtures import build_transcript, coref_resolver_for
from dialogskim.model import PipelineConfig
from dialogskim.providers import fake_provider_set


# Mirrors the reference-grouping geometry the segmenter is built around:
# sentence 1 shares two entities with sentence 0, sentence 2 has none,
# sentences 3-4 are linked by one entity while another entity starts and
# terminates inside sentence 4.
FIG_SCRIPT = [
    (
        "A",
        [
            "⟨e1:The mayor⟩ announced ⟨e2:the budget plan⟩ with ⟨e3:the council⟩ today and ⟨e1:she⟩ thanked ⟨e1:her⟩ team.",
            "⟨e2:It⟩ gives ⟨e3:them⟩ more money and ⟨e2:the plan⟩ made ⟨e3:the council⟩ glad.",
            "Completely unrelated filler sentence stands alone quietly.",
            "⟨e4:The school⟩ opened and ⟨e5:teachers⟩ with ⟨e5:staff⟩ and ⟨e5:the teachers⟩ cheered for ⟨e4:it⟩.",
            "⟨e4:The school⟩ then hosted ⟨e6:a fair⟩ where ⟨e6:the fair⟩ ran long and ⟨e6:it⟩ ended well.",
        ],
    ),
    (
        "B",
        [
            "I think that sounds reasonable overall and quite exciting honestly for everyone involved in the city today."
        ],
    ),
]


@pytest.fixture
def fig_fixture():
    transcript, registry = build_transcript("fig-demo", FIG_SCRIPT)
    return transcript, coref_resolver_for(registry)


@pytest.fixture
def fake_providers(fig_fixture):
    _, resolver = fig_fixture
    return fake_provider_set(coreference=resolver)


@pytest.fixture
def config():
    return PipelineConfig()
