"""Distance matrix laws and agglomerative clustering vs an exhaustive oracle."""

import math
import random

import numpy as np
import pytest

from dialogskim.clustering import agglomerative_labels, build_distance_matrix
from dialogskim.errors import DimensionMismatchError
from dialogskim.model import ClusterLinkage, DistanceMatrix, EmbeddingVector


def unit(angle):
    return EmbeddingVector(values=(math.cos(angle), math.sin(angle)))


def oracle_agglomerative(matrix, threshold, linkage):
    """Recompute every linkage distance from scratch at each step.

    Representative of a cluster is its smallest member; ties are broken by
    the lexicographically lowest representative pair. Deliberately naive so
    it shares no code with the implementation.
    """
    d = matrix.entries
    clusters = [frozenset([i]) for i in range(matrix.n)]
    while len(clusters) > 1:
        best = None
        for a in range(len(clusters)):
            for b in range(a + 1, len(clusters)):
                pairs = [d[i][j] for i in clusters[a] for j in clusters[b]]
                if linkage == ClusterLinkage.AVERAGE:
                    dist = sum(pairs) / len(pairs)
                elif linkage == ClusterLinkage.SINGLE:
                    dist = min(pairs)
                else:
                    dist = max(pairs)
                rep_a, rep_b = min(clusters[a]), min(clusters[b])
                key = (dist, min(rep_a, rep_b), max(rep_a, rep_b))
                if best is None or key < best[0]:
                    best = (key, a, b)
        (dist, _, _), a, b = best
        if not dist < threshold:
            break
        merged = clusters[a] | clusters[b]
        clusters = [c for i, c in enumerate(clusters) if i not in (a, b)] + [merged]
    labels = [0] * matrix.n
    for label, cluster in enumerate(sorted(clusters, key=min)):
        for member in cluster:
            labels[member] = label
    return labels


class TestBuildDistanceMatrix:
    def test_identical_vectors_all_zero(self):
        v = unit(0.3)
        m = build_distance_matrix([v, v, v])
        assert np.allclose(m.entries, 0.0)
        assert m.problems() == []

    def test_orthogonal_distance_one(self):
        m = build_distance_matrix([unit(0.0), unit(math.pi / 2)])
        assert m.entries[0][1] == pytest.approx(1.0)

    def test_antipodal_distance_two(self):
        m = build_distance_matrix([unit(0.0), unit(math.pi)])
        assert m.entries[0][1] == pytest.approx(2.0)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            build_distance_matrix(
                [EmbeddingVector(values=(1.0, 0.0)), EmbeddingVector(values=(1.0, 0.0, 0.0))]
            )

    def test_laws_on_random_vectors(self):
        rng = np.random.default_rng(3)
        vectors = [EmbeddingVector(values=tuple(rng.normal(size=8))) for _ in range(12)]
        assert build_distance_matrix(vectors).problems() == []


class TestAgglomerative:
    def test_single_node(self):
        m = build_distance_matrix([unit(0.1)])
        assert agglomerative_labels(m, 0.4) == [0]

    def test_identical_pair_merges(self):
        v = unit(0.2)
        m = build_distance_matrix([v, v])
        assert agglomerative_labels(m, 0.4) == [0, 0]

    def test_two_tight_pairs_hand_built(self):
        # distances: within pairs 1-cos(0.1) ~ 0.005; across ~ 1-cos(1.4) ~ 0.83
        vectors = [unit(0.0), unit(0.1), unit(1.5), unit(1.6)]
        m = build_distance_matrix(vectors)
        labels = agglomerative_labels(m, 0.4)
        assert labels == [0, 0, 1, 1]
        assert labels == oracle_agglomerative(m, 0.4, ClusterLinkage.AVERAGE)

    def test_threshold_is_strict(self):
        # exact distance 1.0 must not merge at threshold 1.0
        m = build_distance_matrix([unit(0.0), unit(math.pi / 2)])
        d = float(m.entries[0][1])
        assert agglomerative_labels(m, d) == [0, 1]

    def test_tie_break_lowest_ordinal_pair(self):
        # three identical points: first merge must be (0, 1), then (0, 2);
        # with four, the pairs (0,1) and (2,3) are tied - (0,1) goes first,
        # which the final labels cannot show, so assert on a threshold that
        # stops after one merge of a three-way tie with distinct pairs
        m = DistanceMatrix(
            entries=np.array(
                [
                    [0.0, 0.2, 0.9, 0.9],
                    [0.2, 0.0, 0.9, 0.2],
                    [0.9, 0.9, 0.0, 0.9],
                    [0.9, 0.2, 0.9, 0.0],
                ]
            )
        )
        # ties at 0.2: (0,1) and (1,3). lowest pair (0,1) merges first; the
        # average linkage of {0,1} to 3 is (0.9+0.2)/2 = 0.55 > 0.4, so 3
        # stays out - ordering visibly changes the outcome
        assert agglomerative_labels(m, 0.4) == [0, 0, 1, 2]

    def test_against_oracle_random(self):
        rng = np.random.default_rng(17)
        for linkage in ClusterLinkage:
            for trial in range(40):
                n = int(rng.integers(2, 8))
                vectors = [
                    EmbeddingVector(values=tuple(rng.normal(size=4))) for _ in range(n)
                ]
                m = build_distance_matrix(vectors)
                threshold = float(rng.uniform(0.05, 1.5))
                got = agglomerative_labels(m, threshold, linkage)
                want = oracle_agglomerative(m, threshold, linkage)
                assert got == want, f"{linkage} trial {trial}"

    def test_against_oracle_with_exact_ties(self):
        # duplicated points create exactly equal distances
        rng = random.Random(29)
        base = [unit(a) for a in (0.0, 0.7, 1.9)]
        for trial in range(30):
            vectors = [base[rng.randrange(3)] for _ in range(rng.randint(2, 9))]
            m = build_distance_matrix(vectors)
            threshold = rng.choice([0.2, 0.4, 0.9])
            got = agglomerative_labels(m, threshold)
            want = oracle_agglomerative(m, threshold, ClusterLinkage.AVERAGE)
            assert got == want, f"trial {trial}"
