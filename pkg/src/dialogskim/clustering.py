"""Pairwise cosine distances and deterministic agglomerative clustering.

The clustering is written here rather than delegated to a library because
determinism is part of the contract: ties between equal linkage distances
are broken by the lowest pair of member ordinals, so the same distance
matrix always yields the same labels on any platform.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError
from .model import ClusterLinkage, DistanceMatrix, EmbeddingVector


def build_distance_matrix(embeddings: list[EmbeddingVector]) -> DistanceMatrix:
    """Cosine distance matrix D[i][j] = 1 - dot(v_i, v_j) for unit vectors."""
    if not embeddings:
        raise ValueError("need at least one embedding")
    dims = {e.dim for e in embeddings}
    if len(dims) != 1:
        raise DimensionMismatchError(f"mixed embedding dimensions: {sorted(dims)}")
    mat = np.stack([e.as_array() for e in embeddings])
    d = 1.0 - mat @ mat.T
    d = (d + d.T) / 2.0  # exact symmetry despite float noise
    np.fill_diagonal(d, 0.0)
    np.clip(d, 0.0, 2.0, out=d)
    matrix = DistanceMatrix(entries=d)
    assert not matrix.problems(), matrix.problems()
    return matrix


def agglomerative_labels(
    matrix: DistanceMatrix,
    threshold: float,
    linkage: ClusterLinkage = ClusterLinkage.AVERAGE,
) -> list[int]:
    """Bottom-up clustering over a precomputed distance matrix.

    Repeatedly merges the closest pair of clusters while the linkage
    distance is strictly below ``threshold``. Among equal distances the
    pair with the lowest representative ordinals merges first; a merged
    cluster keeps the smaller representative. Labels are assigned 0..k-1
    in order of each final cluster's smallest member.
    """
    n = matrix.n
    if n == 1:
        return [0]

    # working matrix indexed by representative (smallest member) ordinal;
    # lower triangle and retired rows are masked with +inf
    work = matrix.entries.astype(float).copy()
    work[np.tril_indices(n)] = np.inf
    members: dict[int, list[int]] = {i: [i] for i in range(n)}

    while len(members) > 1:
        flat = int(np.argmin(work))
        i, j = divmod(flat, n)
        if not work[i, j] < threshold:
            break
        size_i, size_j = len(members[i]), len(members[j])
        for k in members:
            if k == i or k == j:
                continue
            d_ik = work[min(i, k), max(i, k)]
            d_jk = work[min(j, k), max(j, k)]
            if linkage == ClusterLinkage.AVERAGE:
                d = (size_i * d_ik + size_j * d_jk) / (size_i + size_j)
            elif linkage == ClusterLinkage.SINGLE:
                d = min(d_ik, d_jk)
            else:
                d = max(d_ik, d_jk)
            work[min(i, k), max(i, k)] = d
        members[i].extend(members[j])
        del members[j]
        work[j, :] = np.inf
        work[:, j] = np.inf

    labels = [0] * n
    for label, rep in enumerate(sorted(members)):
        for member in members[rep]:
            labels[member] = label
    return labels
