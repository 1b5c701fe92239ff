"""K-Means clustering of record embeddings and 2-D projection for the cluster map.

All operations are deterministic given their inputs and seed: k-means++ draws
from a seeded generator, and accumulation follows row order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .catalog import MISSING, DatasetRecord
from .embed import EmbeddingProvider
from .errors import DimensionMismatch, InvalidK

_TEXT_FIELDS = ("Name", "Description", "Abstract")


@dataclass(frozen=True, eq=False)
class KMeansResult:
    assignments: np.ndarray  # (n,) cluster ids
    centroids: np.ndarray  # (k, d)
    distortion: float  # sum of squared distances to assigned centroids
    distortion_history: tuple[float, ...]  # one value per assignment step
    iterations: int


@dataclass(frozen=True, eq=False)
class ClusterModel:
    dim: int
    embeddings: np.ndarray  # (n, d)
    assignments: np.ndarray  # (n,)
    centroids: np.ndarray  # (k, d)
    coords2d: np.ndarray  # (n, 2)
    k: int
    seed: int
    distortion: float


def record_text(record: DatasetRecord) -> str:
    """Name, Description, and Abstract joined by single spaces; MISSING is empty."""
    parts = []
    for name in _TEXT_FIELDS:
        value = record.get(name)
        if value is MISSING:
            continue
        if isinstance(value, tuple):
            value = " ".join(value)
        parts.append(str(value))
    return " ".join(p for p in parts if p)


def _sq_dists(X: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    return ((X[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)


def _kmeans_pp_init(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = X.shape[0]
    centroids = np.empty((k, X.shape[1]), dtype=np.float64)
    centroids[0] = X[int(rng.integers(n))]
    d2 = ((X - centroids[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        total = float(d2.sum())
        if total > 0.0:
            idx = int(np.searchsorted(np.cumsum(d2 / total), rng.random(), side="right"))
            idx = min(idx, n - 1)
        else:
            # All remaining points coincide with a chosen centroid.
            idx = int(rng.integers(n))
        centroids[c] = X[idx]
        d2 = np.minimum(d2, ((X - centroids[c]) ** 2).sum(axis=1))
    return centroids


def _reseed_empty(X, centroids, assignments, d2, k) -> bool:
    """Move each empty cluster onto the point currently farthest from its centroid."""
    counts = np.bincount(assignments, minlength=k)
    empties = np.flatnonzero(counts == 0)
    if empties.size == 0:
        return False
    point_d2 = d2[np.arange(X.shape[0]), assignments].copy()
    for c in empties:
        far = int(point_d2.argmax())
        centroids[c] = X[far]
        point_d2[far] = -1.0
    return True


def kmeans(
    vectors: np.ndarray,
    k: int,
    seed: int = 0,
    max_iters: int = 100,
    tol: float = 1e-6,
) -> KMeansResult:
    """Lloyd's algorithm with k-means++ seeding from a deterministic generator.

    Stops when assignments repeat (an exact fixed point, so the returned
    centroids equal their members' means), when centroid movement drops below
    ``tol`` in max-norm, or after ``max_iters``. Ties in the nearest-centroid
    choice go to the lowest cluster id.
    """
    X = np.asarray(vectors, dtype=np.float64)
    if X.ndim != 2:
        raise DimensionMismatch(f"expected an n x d matrix, got shape {X.shape}")
    n = X.shape[0]
    if k < 1 or k > n:
        raise InvalidK(k, n)

    rng = np.random.default_rng(seed)
    centroids = _kmeans_pp_init(X, k, rng)
    rows = np.arange(n)
    history: list[float] = []
    prev = None
    stable = False

    for _ in range(max_iters):
        d2 = _sq_dists(X, centroids)
        assignments = d2.argmin(axis=1)
        if _reseed_empty(X, centroids, assignments, d2, k):
            d2 = _sq_dists(X, centroids)
            assignments = d2.argmin(axis=1)
        history.append(float(d2[rows, assignments].sum()))
        if prev is not None and np.array_equal(assignments, prev):
            stable = True
            break
        prev = assignments

        new_centroids = centroids.copy()
        for c in range(k):
            members = X[assignments == c]
            if members.shape[0] > 0:
                new_centroids[c] = members.mean(axis=0)
        movement = float(np.abs(new_centroids - centroids).max())
        centroids = new_centroids
        if movement < tol:
            break

    if not stable:
        # Keep the nearest-centroid invariant after the last centroid update.
        assignments = _sq_dists(X, centroids).argmin(axis=1)
    distortion = float(_sq_dists(X, centroids)[rows, assignments].sum())
    return KMeansResult(
        assignments=assignments,
        centroids=centroids,
        distortion=distortion,
        distortion_history=tuple(history),
        iterations=len(history),
    )


def project_2d(vectors: np.ndarray) -> np.ndarray:
    """Project onto the top-2 principal components of the mean-centered data.

    Sign convention: each component's largest-magnitude entry is positive.
    Rank-deficient directions project to 0.
    """
    X = np.asarray(vectors, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 1:
        raise DimensionMismatch(f"expected a non-empty n x d matrix, got shape {X.shape}")
    centered = X - X.mean(axis=0)
    _, s, vt = np.linalg.svd(centered, full_matrices=False)
    coords = np.zeros((X.shape[0], 2), dtype=np.float64)
    if s.size == 0 or s[0] == 0.0:
        return coords
    rank_cut = s[0] * max(X.shape) * np.finfo(np.float64).eps
    for j in range(min(2, s.size)):
        if s[j] <= rank_cut:
            break
        component = vt[j]
        if component[int(np.abs(component).argmax())] < 0:
            component = -component
        coords[:, j] = centered @ component
    return coords


def build_cluster_model(
    records: Sequence[DatasetRecord],
    provider: EmbeddingProvider,
    k: int = 8,
    seed: int = 0,
) -> ClusterModel:
    """Embed each record's descriptive text, cluster, and lay out in 2-D.

    k is clamped to the record count so small catalogues still build.
    """
    if not records:
        raise ValueError("cannot build a cluster model for an empty catalogue")
    texts = [record_text(r) for r in records]
    embeddings = np.asarray(provider.embed_batch(texts), dtype=np.float64)
    k_eff = max(1, min(k, len(records)))
    result = kmeans(embeddings, k_eff, seed=seed)
    return ClusterModel(
        dim=embeddings.shape[1],
        embeddings=embeddings,
        assignments=result.assignments,
        centroids=result.centroids,
        coords2d=project_2d(embeddings),
        k=k_eff,
        seed=seed,
        distortion=result.distortion,
    )
