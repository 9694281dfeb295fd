"""Chung-Lu null model on the star expansion (node-hyperedge bipartite graph)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._parallel import fresh_seed
from .hypergraph import Hypergraph
from .motifs import N_MOTIFS


@dataclass(frozen=True)
class BipartiteView:
    """Incidence pairs ``(node[x], edge[x])`` plus both degree sequences."""

    node: np.ndarray
    edge: np.ndarray
    node_degrees: np.ndarray
    edge_degrees: np.ndarray
    labels: tuple = ()

    @property
    def n_incidences(self) -> int:
        return len(self.node)


def to_bipartite(G: Hypergraph) -> BipartiteView:
    edge = np.repeat(np.arange(G.n_edges, dtype=np.int64), G.sizes)
    return BipartiteView(
        node=G.edge_nodes.astype(np.int64),
        edge=edge,
        node_degrees=G.degrees.copy(),
        edge_degrees=G.sizes.copy(),
        labels=G.labels,
    )


def from_bipartite(B: BipartiteView) -> Hypergraph:
    """Group incidence pairs by hyperedge; empty and repeated hyperedges vanish.

    Node tokens are taken from ``B.labels`` and re-densified in order of
    first appearance.
    """
    order = np.lexsort((B.node, B.edge))
    node = B.node[order]
    edge = B.edge[order]
    keep = np.ones(len(node), dtype=bool)
    keep[1:] = (node[1:] != node[:-1]) | (edge[1:] != edge[:-1])
    node, edge = node[keep], edge[keep]
    bounds = np.flatnonzero(np.diff(edge)) + 1
    labels = B.labels if B.labels else tuple(range(len(B.node_degrees)))
    groups = np.split(node, bounds) if len(node) else []
    return Hypergraph.from_edges([labels[v] for v in g.tolist()] for g in groups)


def draw_endpoints(rng: np.random.Generator, degrees: np.ndarray, m: int) -> np.ndarray:
    """``m`` independent draws of index ``x`` with probability ``degrees[x] / sum``."""
    p = np.asarray(degrees, dtype=np.float64)
    return rng.choice(len(p), size=m, p=p / p.sum())


def randomize_hypergraph(G: Hypergraph, seed=None) -> Hypergraph:
    """One Chung-Lu randomization preserving expected node degrees and sizes.

    ``m = sum |e_i|`` incidences are drawn, each pairing a node chosen with
    probability proportional to ``|E_v|`` with a hyperedge chosen with
    probability proportional to ``|e_i|``. Repeated pairs collapse; the
    result is regrouped into hyperedges, dropping empty ones and merging
    identical ones.
    """
    rng = np.random.default_rng(seed)
    m = int(G.edge_ptr[-1])
    if m == 0:
        return Hypergraph.from_edges([])
    nodes = draw_endpoints(rng, G.degrees, m)
    edges = draw_endpoints(rng, G.sizes, m)
    return from_bipartite(BipartiteView(
        node=nodes, edge=edges, node_degrees=G.degrees, edge_degrees=G.sizes,
        labels=G.labels,
    ))


@dataclass(frozen=True)
class RandomizationConfig:
    trials: int = 5
    seed: int | None = None

    def __post_init__(self):
        if int(self.trials) < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")


@dataclass(frozen=True)
class NullCounts:
    """Mean null-model counts with the per-trial inputs that produced them."""

    mean: np.ndarray
    trial_counts: np.ndarray
    trial_seeds: tuple
    seed: int
    approximate: bool = False


def trial_seeds(seed: int, trials: int) -> tuple[int, ...]:
    children = np.random.SeedSequence(seed).spawn(trials)
    return tuple(int(c.generate_state(1, dtype=np.uint64)[0]) for c in children)


def null_counts(
    G: Hypergraph,
    cfg: RandomizationConfig,
    counter: Callable[[Hypergraph, int], np.ndarray],
    approximate: bool = False,
) -> NullCounts:
    """Average motif counts over ``cfg.trials`` randomized copies of ``G``.

    ``counter(H, seed)`` returns 26 counts for hypergraph ``H``; ``seed`` is
    the trial seed, forwarded so approximate counters stay reproducible.
    The mean is an exactly rounded sum per motif, hence independent of the
    trial order.
    """
    seed = cfg.seed if cfg.seed is not None else fresh_seed()
    seeds = trial_seeds(seed, int(cfg.trials))
    rows = []
    for s in seeds:
        H = randomize_hypergraph(G, seed=s)
        rows.append(np.asarray(counter(H, s), dtype=np.float64))
    trial_counts = np.vstack(rows) if rows else np.zeros((0, N_MOTIFS))
    mean = np.array([math.fsum(col) / len(rows) for col in trial_counts.T])
    return NullCounts(mean=mean, trial_counts=trial_counts, trial_seeds=seeds,
                      seed=seed, approximate=approximate)
