"""Small synthetic hypergraph generators for tests, benchmarks and demos."""
from __future__ import annotations

import numpy as np

from .hypergraph import Hypergraph


def random_hypergraph(n_nodes: int, n_edges: int, max_size: int = 5, seed=None) -> Hypergraph:
    """Hyperedges with uniform sizes in ``1..max_size`` and uniform members.

    Duplicates are removed, so the result may hold fewer than ``n_edges``.
    """
    rng = np.random.default_rng(seed)
    max_size = min(max_size, n_nodes)
    edges = []
    for _ in range(n_edges):
        size = int(rng.integers(1, max_size + 1))
        edges.append(rng.choice(n_nodes, size=size, replace=False).tolist())
    return Hypergraph.from_edges(edges)


def skewed_hypergraph(
    n_nodes: int,
    n_edges: int,
    max_size: int = 18,
    exponent: float = 1.0,
    size_decay: float = 0.55,
    seed=None,
) -> Hypergraph:
    """Heavy-tailed node popularity with geometric-like hyperedge sizes.

    Node ``v`` is drawn with weight ``(v + 1) ** -exponent``; hyperedge sizes
    follow ``P(size = k) ~ size_decay ** k`` on ``2..max_size``. This mimics
    the overlap structure of email and contact datasets, where a few hub
    nodes make a few hyperedges very high-degree in the projection.
    """
    rng = np.random.default_rng(seed)
    weights = (np.arange(n_nodes) + 1.0) ** -exponent
    weights /= weights.sum()
    ks = np.arange(2, max_size + 1)
    size_p = size_decay ** ks
    size_p /= size_p.sum()
    edges = []
    for _ in range(n_edges):
        size = int(rng.choice(ks, p=size_p))
        edges.append(rng.choice(n_nodes, size=min(size, n_nodes), replace=False, p=weights).tolist())
    return Hypergraph.from_edges(edges)
