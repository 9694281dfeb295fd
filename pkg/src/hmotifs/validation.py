"""Input validation helpers shared by the estimators and the CLI."""
from __future__ import annotations

import numbers
import os
from collections.abc import Iterable

import numpy as np

from .exceptions import EmptyHypergraphError
from .hypergraph import Hypergraph, load_hypergraph
from .motifs import N_MOTIFS


def check_hypergraph(X, allow_empty: bool = False, format: str = "auto") -> Hypergraph:
    """Coerce ``X`` into a :class:`Hypergraph`.

    Accepts a hypergraph, a dataset path, or an iterable of node collections
    (one per hyperedge).
    """
    if isinstance(X, Hypergraph):
        G = X
    elif isinstance(X, (str, os.PathLike)):
        G = load_hypergraph(X, format=format)
    elif isinstance(X, Iterable):
        edges = []
        for e in X:
            if isinstance(e, (str, bytes)) or not isinstance(e, Iterable):
                raise TypeError(
                    f"each hyperedge must be a collection of nodes, got {type(e).__name__}"
                )
            edges.append(e.tolist() if isinstance(e, np.ndarray) else e)
        G = Hypergraph.from_edges(edges)
    else:
        raise TypeError(f"cannot interpret {type(X).__name__} as a hypergraph")
    if not allow_empty and G.n_edges == 0:
        raise EmptyHypergraphError("hypergraph has no hyperedges")
    return G


def check_counts(x, name: str = "counts") -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if arr.shape != (N_MOTIFS,):
        raise ValueError(f"{name} must hold {N_MOTIFS} values, got shape {arr.shape}")
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite and non-negative")
    return arr


def check_seed(random_state) -> int | None:
    """Turn an sklearn-style ``random_state`` into an integer seed (or ``None``)."""
    if random_state is None:
        return None
    if isinstance(random_state, numbers.Integral):
        if random_state < 0:
            raise ValueError("random_state must be non-negative")
        return int(random_state)
    if isinstance(random_state, np.random.RandomState):
        return int(random_state.randint(0, 2**31 - 1))
    if isinstance(random_state, np.random.Generator):
        return int(random_state.integers(0, 2**63 - 1))
    raise ValueError(f"{random_state!r} cannot seed a sampler")


def check_positive_int(value, name: str) -> int:
    if not isinstance(value, numbers.Integral) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)
