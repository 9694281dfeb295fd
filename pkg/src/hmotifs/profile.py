"""Significance scores, characteristic profiles and comparison metrics."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _counts(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must hold finite non-negative counts")
    return arr


@dataclass(frozen=True)
class SignificanceVector:
    delta: np.ndarray
    counts: np.ndarray
    null_counts: np.ndarray
    epsilon: float


def significance(M, M_rand, epsilon: float = 1.0) -> SignificanceVector:
    """``(M - M_rand) / (M + M_rand + epsilon)`` per motif."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    M = _counts(M, "M")
    R = _counts(M_rand, "M_rand")
    if M.shape != R.shape:
        raise ValueError("count vectors differ in length")
    return SignificanceVector((M - R) / (M + R + epsilon), M, R, float(epsilon))


def characteristic_profile(delta) -> np.ndarray:
    """L2-normalized significance vector; all-zero input gives all zeros."""
    d = np.asarray(getattr(delta, "delta", delta), dtype=np.float64)
    norm = np.sqrt(np.sum(d * d))
    if norm == 0:
        return np.zeros_like(d)
    return d / norm


def relative_count(M, M_rand) -> np.ndarray:
    """``(M - M_rand) / (M + M_rand)``, defined as 0 where both are 0."""
    M = _counts(M, "M")
    R = _counts(M_rand, "M_rand")
    total = M + R
    out = np.zeros_like(total)
    np.divide(M - R, total, out=out, where=total > 0)
    return out


def _ranks(x: np.ndarray) -> np.ndarray:
    # descending count, ties broken by ascending motif id
    order = np.lexsort((np.arange(len(x)), -x))
    ranks = np.empty(len(x), dtype=np.int64)
    ranks[order] = np.arange(1, len(x) + 1)
    return ranks


def rank_difference(M, M_rand) -> np.ndarray:
    """``rank_null - rank_real`` with rank 1 for the most frequent motif.

    Positive values mark motifs that rank higher in the real hypergraph than
    in the null model.
    """
    M = _counts(M, "M")
    R = _counts(M_rand, "M_rand")
    return _ranks(R) - _ranks(M)


def cp_similarity_matrix(profiles) -> np.ndarray:
    """Pearson correlation between every pair of profiles.

    A constant profile correlates 0 with every other profile; the diagonal
    is always 1.
    """
    X = np.asarray([np.asarray(p, dtype=np.float64) for p in profiles])
    if X.ndim != 2 or len(X) < 2:
        raise ValueError("need at least two profiles of equal length")
    centered = X - X.mean(axis=1, keepdims=True)
    norms = np.sqrt((centered ** 2).sum(axis=1))
    safe = np.where(norms > 0, norms, 1.0)
    C = (centered @ centered.T) / np.outer(safe, safe)
    zero = norms == 0
    C[zero, :] = 0.0
    C[:, zero] = 0.0
    C = np.clip((C + C.T) / 2.0, -1.0, 1.0)
    np.fill_diagonal(C, 1.0)
    return C

