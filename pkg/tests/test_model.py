"""Core type invariants, transcript validation, and config checking."""

import numpy as np
import pytest

from dialogskim.errors import InvalidConfigError
from dialogskim.fixtures import build_transcript
from dialogskim.model import (
    DistanceMatrix,
    EmbeddingVector,
    EntityCluster,
    HeuristicScore,
    MentionSpan,
    PipelineConfig,
    Sentence,
    SpeakerTurn,
    Transcript,
    WordToken,
    ceil_ratio,
    cosine_similarity,
    validate_transcript,
    word_count,
)


class TestWordCount:
    def test_empty(self):
        assert word_count("") == 0

    def test_repeated_whitespace_collapses(self):
        assert word_count("a b  c") == 3

    def test_fixture_sentence_matches_hand_count(self):
        # hand count: The/mayor/announced/the/budget/plan/with/the/council/today = 10
        assert word_count("The mayor announced the budget plan with the council today") == 10

    def test_newlines_and_tabs(self):
        assert word_count("one\ttwo\nthree ") == 3


def two_turn_transcript():
    transcript, _ = build_transcript(
        "t",
        [
            ("A", ["hello there friend.", "how are you."]),
            ("B", ["doing fine thanks.", "glad to hear it."]),
        ],
    )
    return transcript


class TestValidateTranscript:
    def test_well_formed(self):
        assert validate_transcript(two_turn_transcript()) == []

    def test_adjacent_turns_same_speaker(self):
        t = two_turn_transcript()
        bad = Transcript(
            recording_id=t.recording_id,
            title=t.title,
            audio_duration_s=t.audio_duration_s,
            words=tuple(
                WordToken(w.index, w.text, w.start_s, w.end_s, "A") for w in t.words
            ),
            sentences=t.sentences,
            turns=(
                SpeakerTurn(0, "A", t.turns[0].sentence_range),
                SpeakerTurn(1, "A", t.turns[1].sentence_range),
            ),
        )
        assert validate_transcript(bad) == ["adjacent turns same speaker @1"]

    def test_overlapping_sentence_ranges_name_both_sentences(self):
        t = two_turn_transcript()
        s0 = t.sentences[0]
        overlapping = Sentence(
            index=1,
            word_range=(s0.word_range[1], t.sentences[1].word_range[1]),
            text=" ".join(
                w.text for w in t.words[s0.word_range[1] : t.sentences[1].word_range[1] + 1]
            ),
        )
        bad = Transcript(
            recording_id=t.recording_id,
            title=t.title,
            audio_duration_s=t.audio_duration_s,
            words=t.words,
            sentences=(s0, overlapping) + t.sentences[2:],
            turns=t.turns,
        )
        assert "sentence word ranges not adjacent @0/@1" in validate_transcript(bad)

    def test_word_time_violations(self):
        t = two_turn_transcript()
        words = list(t.words)
        words[3] = WordToken(3, words[3].text, 5.0, 4.0, words[3].speaker)
        bad = Transcript(
            recording_id=t.recording_id,
            title=t.title,
            audio_duration_s=t.audio_duration_s,
            words=tuple(words),
            sentences=t.sentences,
            turns=t.turns,
        )
        assert "word end before start @3" in validate_transcript(bad)

    def test_duration_shorter_than_last_word(self):
        t = two_turn_transcript()
        bad = Transcript(
            recording_id=t.recording_id,
            title=t.title,
            audio_duration_s=t.words[-1].end_s - 0.5,
            words=t.words,
            sentences=t.sentences,
            turns=t.turns,
        )
        assert "audio duration shorter than last word" in validate_transcript(bad)

    def test_partition_property_on_fixture(self):
        # sentences partition words, turns partition sentences: exhaustive scan
        t = two_turn_transcript()
        seen_words = []
        for s in t.sentences:
            seen_words.extend(range(s.word_range[0], s.word_range[1] + 1))
        assert seen_words == [w.index for w in t.words]
        seen_sentences = []
        for turn in t.turns:
            seen_sentences.extend(range(turn.sentence_range[0], turn.sentence_range[1] + 1))
        assert seen_sentences == [s.index for s in t.sentences]


class TestEntityCluster:
    def cluster(self):
        return EntityCluster(
            id="e1",
            mentions=(
                MentionSpan(4, 5, (0, 0), "the plan"),
                MentionSpan(12, 12, (1, 1), "it"),
                MentionSpan(30, 31, (2, 2), "the plan"),
            ),
        )

    def test_derived_fields(self):
        c = self.cluster()
        assert c.mention_count == 3
        assert c.span_words == 31 - 4 + 1
        assert c.sentence_interval == (0, 2)

    def test_rejects_unsorted_mentions(self):
        with pytest.raises(ValueError):
            EntityCluster(
                id="bad",
                mentions=(MentionSpan(10, 11, (1, 1)), MentionSpan(2, 3, (0, 0))),
            )

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            EntityCluster(id="bad", mentions=())


class TestPipelineConfig:
    def test_defaults_valid(self):
        assert PipelineConfig().problems() == []

    def test_ratio_bounds(self):
        with pytest.raises(InvalidConfigError):
            PipelineConfig(compression_ratio=0.0).validated()
        assert PipelineConfig(compression_ratio=1.0).problems() == []

    def test_threshold_bounds(self):
        with pytest.raises(InvalidConfigError):
            PipelineConfig(cluster_distance_threshold=2.0).validated()

    def test_counts_positive(self):
        with pytest.raises(InvalidConfigError):
            PipelineConfig(p_min_mentions=0).validated()

    def test_round_trip(self):
        cfg = PipelineConfig(stem_cutoff_words=7, compression_ratio=0.25)
        assert PipelineConfig.from_dict(cfg.to_dict()) == cfg

    def test_unknown_field_rejected(self):
        with pytest.raises(InvalidConfigError):
            PipelineConfig.from_dict({"no_such_knob": 1})


class TestEmbeddingVector:
    def test_normalizes(self):
        v = EmbeddingVector(values=(3.0, 4.0))
        assert abs(np.linalg.norm(v.as_array()) - 1.0) < 1e-12

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            EmbeddingVector(values=(1.0, float("nan")))

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            EmbeddingVector(values=(0.0, 0.0))

    def test_cosine_identity_exact(self):
        v = EmbeddingVector(values=(0.3, 0.7, 0.1))
        assert cosine_similarity(v, v) == 1.0


class TestDistanceMatrix:
    def test_healthy(self):
        m = DistanceMatrix(entries=np.array([[0.0, 0.5], [0.5, 0.0]]))
        assert m.problems() == []
        assert m.n == 2

    def test_asymmetry_detected(self):
        m = DistanceMatrix(entries=np.array([[0.0, 0.5], [0.4, 0.0]]))
        assert "matrix not symmetric" in m.problems()

    def test_range_detected(self):
        m = DistanceMatrix(entries=np.array([[0.0, 2.5], [2.5, 0.0]]))
        assert "entries outside [0, 2]" in m.problems()


class TestHeuristicScore:
    def test_mean_is_simple_average(self):
        assert HeuristicScore(coherence=0.8, retention=0.6).mean == pytest.approx(0.7)

    def test_range(self):
        assert -1.0 <= HeuristicScore(coherence=-1.0, retention=-1.0).mean <= 1.0


def test_ceil_ratio():
    assert ceil_ratio(0.5, 10) == 5
    assert ceil_ratio(0.5, 11) == 6
    assert ceil_ratio(0.5, 1) == 1
    assert ceil_ratio(0.1, 3) == 1
