"""On-the-fly neighborhoods with a bounded memoization cache.

The budget is counted in cached ``(neighbor, overlap)`` entries; one entry
costs :data:`ENTRY_BYTES` bytes (two 32-bit integers), which is what
``bytes_equivalent`` reports.
"""
from __future__ import annotations

import threading
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._parallel import draw_samples, run_threads
from .exceptions import EmptyHypergraphError
from .hypergraph import Hypergraph
from .motifs import N_MOTIFS, motif_table
from .projection import wedge_index
from .sampling import EstimateVector, SamplerConfig, wedge_scale

ENTRY_BYTES = 8
POLICIES = ("degree", "random", "lru")
UNBOUNDED = np.iinfo(np.int64).max


def neighborhood_sizes(wedges: tuple[np.ndarray, np.ndarray], n_edges: int) -> np.ndarray:
    """Exact ``|N_ei|`` for every hyperedge, read off a wedge index."""
    wi, wj = wedges
    return (np.bincount(wi, minlength=n_edges) + np.bincount(wj, minlength=n_edges)).astype(np.int64)


def degree_proxy(G: Hypergraph) -> np.ndarray:
    """Upper bound ``sum_{v in e_i} (|E_v| - 1)`` on each ``|N_ei|``."""
    per_node = G.degrees - 1
    return np.add.reduceat(per_node[G.edge_nodes], G.edge_ptr[:-1]) if G.n_edges else np.zeros(0)


@dataclass
class CacheStats:
    constructed: int = 0
    hits: int = 0
    cached_entries: int = 0

    @property
    def bytes_equivalent(self) -> int:
        return self.cached_entries * ENTRY_BYTES

    def to_dict(self) -> dict:
        return {
            "constructed": self.constructed,
            "hits": self.hits,
            "cached_entries": self.cached_entries,
            "bytes_equivalent": self.bytes_equivalent,
        }


class NeighborhoodProvider:
    """Exact projected-graph neighborhoods computed on demand.

    Policies:
        ``degree``: a static pin set, the longest prefix of hyperedges by
        descending :func:`degree_proxy` (ties by id) whose proxy sizes fit
        the budget. Reserving the proxy keeps the pin set independent of
        the sampling order and growing with the budget.
        ``random``: same prefix rule over a seeded random order.
        When exact neighborhood ``sizes`` are supplied (see
        :func:`neighborhood_sizes`) they replace the proxy for both ranking
        and reservation.
        ``lru``: cache everything, evicting least recently used
        neighborhoods once the budget is exceeded.

    Pinned neighborhoods are stored on first use and never evicted.
    """

    def __init__(self, G: Hypergraph, budget: int = 0, policy: str = "degree", seed=None,
                 sizes: np.ndarray | None = None):
        if policy not in POLICIES:
            raise ValueError(f"policy must be one of {POLICIES}, got {policy!r}")
        if budget < 0:
            raise ValueError("budget must be non-negative")
        self.G = G
        self.budget = int(budget)
        self.policy = policy
        self.stats = CacheStats()
        self._cache: OrderedDict[int, tuple[np.ndarray, np.ndarray]] = OrderedDict()
        self._lock = threading.Lock()
        self._local = threading.local()
        self._pinned = self._choose_pins(seed, sizes) if policy != "lru" else None

    def _choose_pins(self, seed, sizes) -> np.ndarray:
        pinned = np.zeros(self.G.n_edges, dtype=bool)
        if self.budget == 0 or self.G.n_edges == 0:
            return pinned
        proxy = degree_proxy(self.G) if sizes is None else np.asarray(sizes, dtype=np.int64)
        if proxy.shape != (self.G.n_edges,):
            raise ValueError("sizes must hold one value per hyperedge")
        if self.policy == "degree":
            order = np.lexsort((np.arange(self.G.n_edges), -proxy))
        else:
            order = np.random.default_rng(seed).permutation(self.G.n_edges)
        reserved = 0
        for i in order:
            if reserved + proxy[i] > self.budget:
                break
            pinned[i] = True
            reserved += proxy[i]
        return pinned

    def is_pinned(self, i: int) -> bool:
        return self._pinned is not None and bool(self._pinned[i])

    def _scratch(self):
        s = getattr(self._local, "scratch", None)
        if s is None:
            n = self.G.n_edges
            s = self._local.scratch = (np.zeros(n, np.int32), np.empty(n, np.int32))
        return s

    def _construct(self, i: int):
        G = self.G
        cnt, touched = self._scratch()
        return _kernels.full_neighborhood(
            i, G.edge_ptr, G.edge_nodes, G.node_ptr, G.node_edges, cnt, touched
        )

    def get(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """Sorted neighbor ids of ``e_i`` and their overlap sizes."""
        if not 0 <= i < self.G.n_edges:
            raise IndexError(f"hyperedge id {i} out of range")
        with self._lock:
            hit = self._cache.get(i)
            if hit is not None:
                self.stats.hits += 1
                if self.policy == "lru":
                    self._cache.move_to_end(i)
                return hit
        nb = self._construct(i)
        with self._lock:
            self.stats.constructed += 1
            if i not in self._cache:
                self._admit(i, nb)
        return nb

    def _admit(self, i, nb) -> None:
        size = len(nb[0])
        if self.policy == "lru":
            if size > self.budget:
                return
            self._cache[i] = nb
            self.stats.cached_entries += size
            while self.stats.cached_entries > self.budget:
                _, old = self._cache.popitem(last=False)
                self.stats.cached_entries -= len(old[0])
        elif self._pinned[i] and self.stats.cached_entries + size <= self.budget:
            self._cache[i] = nb
            self.stats.cached_entries += size

    def neighborhood(self, i: int) -> list[tuple[int, int]]:
        ids, w = self.get(i)
        return list(zip(ids.tolist(), w.tolist()))


def parse_budget(spec, total_entries: int) -> int:
    """``"1000"`` -> 1000 entries, ``"1%"`` -> 1% of ``total_entries``.

    ``"inf"`` means unbounded. ``total_entries`` is ``sum |N_ei|``, i.e.
    twice the number of hyperwedges.
    """
    text = str(spec).strip().lower()
    try:
        if text in ("inf", "unlimited"):
            return UNBOUNDED
        if text.endswith("%"):
            pct = float(text[:-1])
            if pct < 0:
                raise ValueError
            return int(pct / 100.0 * total_entries)
        value = int(text)
    except ValueError:
        raise ValueError(f"invalid memo budget {spec!r}") from None
    if value < 0:
        raise ValueError(f"invalid memo budget {spec!r}")
    return value


def wedge_sampling_with_cache(
    G: Hypergraph,
    provider: NeighborhoodProvider,
    cfg: SamplerConfig,
    wedges: tuple[np.ndarray, np.ndarray] | None = None,
) -> EstimateVector:
    """Hyperwedge sampling that builds neighborhoods lazily through ``provider``.

    Draws the same positions from the same wedge ordering as
    :func:`~hmotifs.sampling.count_approx_wedge`, so for equal ``cfg`` the
    estimates are identical to the full-projection path.
    """
    if wedges is None:
        wedges = wedge_index(G, workers=cfg.workers)
    wi, wj = wedges
    cfg = cfg.resolved()
    n_wedges = len(wi)
    if n_wedges == 0:
        if G.n_edges == 0:
            raise EmptyHypergraphError("cannot sample from an empty hypergraph")
        return EstimateVector(np.zeros(N_MOTIFS), "wedge", int(cfg.sample_count), 0,
                              cfg.seed, int(cfg.workers), np.zeros(N_MOTIFS, np.int64))
    draws = draw_samples(n_wedges, int(cfg.sample_count), cfg.seed, int(cfg.workers))
    lookup = motif_table().lookup
    max_size = int(G.sizes.max())

    def job(samples):
        n, m = G.n_nodes, G.n_edges
        scratch = (np.zeros(n, np.int64), np.zeros(m, np.int64), np.zeros(m, np.int32),
                   np.zeros(m, np.int64), np.empty(max_size, np.int32), np.zeros(1, np.int64))
        nodemark, mark_i, w_i, mark_j, inter, state = scratch
        tally = np.zeros(N_MOTIFS + 1, dtype=np.int64)
        for s in samples.tolist():
            i, j = int(wi[s]), int(wj[s])
            nb_i, w_nb_i = provider.get(i)
            nb_j, w_nb_j = provider.get(j)
            _kernels.wedge_sample_one(
                i, j, nb_i, w_nb_i, nb_j, w_nb_j, G.edge_ptr, G.edge_nodes, lookup,
                nodemark, mark_i, w_i, mark_j, inter, state, tally,
            )
        return tally

    tallies = np.sum(run_threads(job, draws), axis=0, dtype=np.int64)
    if tallies[0]:
        raise AssertionError("unclassifiable triple during sampling")
    tallies = tallies[1:]
    return EstimateVector(
        estimates=tallies * wedge_scale(n_wedges, int(cfg.sample_count)),
        sampler="wedge",
        sample_count=int(cfg.sample_count),
        population=n_wedges,
        seed=cfg.seed,
        workers=int(cfg.workers),
        tallies=tallies,
    )
