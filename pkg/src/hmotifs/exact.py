"""Exact motif counting, instance enumeration and per-hyperedge features."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import _kernels
from ._parallel import resolve_workers, row_partitions, run_threads
from .exceptions import EnumerationAborted, ResourceLimitError
from .hypergraph import Hypergraph
from .motifs import N_MOTIFS, motif_table
from .projection import ProjectedGraph, project


@dataclass(frozen=True)
class CountVector:
    """Per-motif counts; ``counts[t - 1]`` belongs to motif ``t``.

    Exact counts are ``int64`` (totals routinely exceed 2**32); estimates are
    ``float64``.
    """

    counts: np.ndarray
    kind: str = "exact"

    def __post_init__(self):
        dtype = np.int64 if self.kind == "exact" else np.float64
        arr = np.asarray(self.counts, dtype=dtype)
        if arr.shape != (N_MOTIFS,):
            raise ValueError(f"expected {N_MOTIFS} counts, got shape {arr.shape}")
        object.__setattr__(self, "counts", arr)

    def __getitem__(self, t: int):
        if not 1 <= t <= N_MOTIFS:
            raise IndexError(f"motif id must lie in 1..{N_MOTIFS}")
        return self.counts[t - 1]

    def __array__(self, dtype=None, copy=None):
        return self.counts if dtype is None else self.counts.astype(dtype)

    @property
    def total(self):
        return self.counts.sum()


def _graph_args(G: Hypergraph, P: ProjectedGraph):
    max_size = int(G.sizes.max()) if G.n_edges else 0
    return (G.edge_ptr, G.edge_nodes, P.indptr, P.indices, P.weights,
            motif_table().lookup, G.n_nodes, G.n_edges, max_size)


_NO_FEATS = np.zeros((0, N_MOTIFS + 1), dtype=np.int64)
_NO_OUT = np.zeros((0, 4), dtype=np.int64)


def _check_tally(tally: np.ndarray) -> None:
    if tally[0]:
        raise AssertionError(f"{tally[0]} triples fell outside the motif table")


def count_exact(G: Hypergraph, P: ProjectedGraph | None = None, workers=None) -> CountVector:
    """Count every motif's instances exactly.

    Each worker owns a strided share of the outer hyperedges and its own
    counter; the counters are summed once at the end, so the result does not
    depend on the worker count.
    """
    if P is None:
        P = project(G, workers=workers)
    args = _graph_args(G, P)
    parts = row_partitions(G.n_edges, resolve_workers(workers))

    def job(rows):
        counts = np.zeros(N_MOTIFS + 1, dtype=np.int64)
        _kernels.exact_rows(rows, *args, counts, _NO_FEATS, _NO_OUT, np.zeros(1, np.int64))
        return counts

    total = np.sum(run_threads(job, parts), axis=0, dtype=np.int64)
    _check_tally(total)
    return CountVector(total[1:], kind="exact")


def enumerate_instances(
    G: Hypergraph,
    P: ProjectedGraph | None = None,
    sink: Callable[[int, int, int, int], object] | None = None,
    block_size: int = 256,
) -> Iterator[tuple[int, int, int, int]] | int:
    """Produce every instance ``(i, j, k, motif)`` exactly once.

    With ``sink=None`` a generator is returned. Otherwise ``sink`` is called
    per instance and the number of emitted instances is returned; an
    exception raised by the sink aborts the run as
    :class:`EnumerationAborted` carrying the number of instances delivered.
    """
    if P is None:
        P = project(G)
    gen = _iter_instances(G, P, block_size)
    if sink is None:
        return gen
    emitted = 0
    for inst in gen:
        try:
            sink(*inst)
        except Exception as exc:
            raise EnumerationAborted(
                f"sink failed after {emitted} instances: {exc}", emitted
            ) from exc
        emitted += 1
    return emitted


def _iter_instances(G, P, block_size):
    args = _graph_args(G, P)
    for start in range(0, G.n_edges, block_size):
        rows = np.arange(start, min(start + block_size, G.n_edges), dtype=np.int64)
        counts = np.zeros(N_MOTIFS + 1, dtype=np.int64)
        _kernels.exact_rows(rows, *args, counts, _NO_FEATS, _NO_OUT, np.zeros(1, np.int64))
        n = int(counts.sum())
        if n == 0:
            continue
        out = np.empty((n, 4), dtype=np.int64)
        pos = np.zeros(1, np.int64)
        counts[:] = 0
        _kernels.exact_rows(rows, *args, counts, _NO_FEATS, out, pos)
        _check_tally(counts)
        yield from map(tuple, out.tolist())


def instance_array(G: Hypergraph, P: ProjectedGraph | None = None) -> np.ndarray:
    """All instances as an ``int64[M, 4]`` array of ``(i, j, k, motif)`` rows."""
    if P is None:
        P = project(G)
    args = _graph_args(G, P)
    rows = np.arange(G.n_edges, dtype=np.int64)
    counts = np.zeros(N_MOTIFS + 1, dtype=np.int64)
    _kernels.exact_rows(rows, *args, counts, _NO_FEATS, _NO_OUT, np.zeros(1, np.int64))
    out = np.empty((int(counts.sum()), 4), dtype=np.int64)
    counts[:] = 0
    _kernels.exact_rows(rows, *args, counts, _NO_FEATS, out, np.zeros(1, np.int64))
    _check_tally(counts)
    return out


def per_hyperedge_features(G: Hypergraph, P: ProjectedGraph | None = None, workers=None) -> np.ndarray:
    """HM26 features: ``out[i, t - 1]`` instances of motif ``t`` containing ``e_i``."""
    if P is None:
        P = project(G, workers=workers)
    args = _graph_args(G, P)
    parts = row_partitions(G.n_edges, resolve_workers(workers))

    def job(rows):
        counts = np.zeros(N_MOTIFS + 1, dtype=np.int64)
        feats = np.zeros((G.n_edges, N_MOTIFS + 1), dtype=np.int64)
        _kernels.exact_rows(rows, *args, counts, feats, _NO_OUT, np.zeros(1, np.int64))
        return feats

    feats = np.sum(run_threads(job, parts), axis=0, dtype=np.int64)
    if G.n_edges == 0:
        return np.zeros((0, N_MOTIFS), dtype=np.int64)
    _check_tally(feats[:, 0])
    return feats[:, 1:]


@dataclass(frozen=True)
class OverlapStats:
    """Pairwise overlap histograms of same-motif instances.

    ``p[t - 1, l]`` counts unordered instance pairs of motif ``t`` sharing
    ``l`` hyperedges; ``q[t - 1, n]`` counts those sharing ``n`` hyperwedges.
    """

    p: np.ndarray
    q: np.ndarray


DEFAULT_PAIR_CAP = 20_000


def overlap_stats(
    G: Hypergraph, P: ProjectedGraph | None = None, max_instances: int = DEFAULT_PAIR_CAP
) -> OverlapStats:
    """Compare all pairs of same-motif instances (quadratic; test scale only).

    Raises:
        ResourceLimitError: some motif has more than ``max_instances`` instances.
    """
    if P is None:
        P = project(G)
    inst = instance_array(G, P)
    p = np.zeros((N_MOTIFS, 3), dtype=np.int64)
    q = np.zeros((N_MOTIFS, 2), dtype=np.int64)
    for t in range(1, N_MOTIFS + 1):
        rows = inst[inst[:, 3] == t, :3]
        m = len(rows)
        if m > max_instances:
            raise ResourceLimitError(
                f"motif {t} has {m} instances, pairwise cap is {max_instances}", reached=m
            )
        pt, q1 = _kernels.pair_overlaps(np.ascontiguousarray(rows), P.indptr, P.indices)
        p[t - 1] = pt
        q[t - 1] = (m * (m - 1) // 2 - q1, q1)
    return OverlapStats(p=p, q=q)
