"""Weighted projected graph: hyperedges as vertices, overlaps as edges."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._parallel import resolve_workers, row_partitions, run_threads
from .exceptions import ResourceLimitError
from .hypergraph import Hypergraph


@dataclass(frozen=True, eq=False)
class ProjectedGraph:
    """Symmetric CSR adjacency between overlapping hyperedges.

    ``indices[indptr[i]:indptr[i + 1]]`` are the neighbors of ``e_i`` in
    ascending order and ``weights`` the matching overlap sizes. The wedge
    index (``wedge_i < wedge_j``, sorted lexicographically) lists every
    hyperwedge once so that it can be sampled uniformly by position.
    """

    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    wedge_i: np.ndarray
    wedge_j: np.ndarray
    wedge_w: np.ndarray

    @property
    def n_edges(self) -> int:
        return len(self.indptr) - 1

    @property
    def n_wedges(self) -> int:
        return len(self.wedge_i)

    @property
    def degrees(self) -> np.ndarray:
        """``|N_ei|`` per hyperedge."""
        return np.diff(self.indptr)

    def neighbors(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        if not 0 <= i < self.n_edges:
            raise IndexError(f"hyperedge id {i} out of range [0, {self.n_edges})")
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return self.indices[lo:hi], self.weights[lo:hi]

    def weight(self, i: int, j: int) -> int | None:
        """Overlap ``|e_i & e_j|``, or ``None`` when the two are not adjacent."""
        ids, w = self.neighbors(i)
        pos = int(np.searchsorted(ids, j))
        if pos < len(ids) and ids[pos] == j:
            return int(w[pos])
        return None

    def wedges(self):
        """Iterate ``(i, j, w)`` with ``i < j``."""
        return zip(self.wedge_i.tolist(), self.wedge_j.tolist(), self.wedge_w.tolist())


def _upper(G: Hypergraph, workers, with_weights: bool):
    parts = row_partitions(G.n_edges, resolve_workers(workers), contiguous=True)

    def job(rows):
        return _kernels.upper_wedges(
            rows, G.edge_ptr, G.edge_nodes, G.node_ptr, G.node_edges, G.n_edges,
            with_weights,
        )

    chunks = run_threads(job, parts)
    wi = np.concatenate([c[0] for c in chunks]) if chunks else np.empty(0, np.int32)
    wj = np.concatenate([c[1] for c in chunks]) if chunks else np.empty(0, np.int32)
    ww = np.concatenate([c[2] for c in chunks]) if chunks else np.empty(0, np.int32)
    return wi, wj, ww


def wedge_index(G: Hypergraph, workers=None) -> tuple[np.ndarray, np.ndarray]:
    """All hyperwedges ``(i, j)``, ``i < j``, in the same order as :func:`project`.

    Only the pair list is kept; no per-hyperedge neighborhoods are stored.
    """
    wi, wj, _ = _upper(G, workers, with_weights=False)
    return wi, wj


def project(G: Hypergraph, workers=None, max_wedges: int | None = None) -> ProjectedGraph:
    """Build the projected graph of ``G``.

    Overlaps are accumulated per hyperedge by walking the incidence lists of
    its nodes and keeping only partners with a larger id, so each wedge is
    produced once; the result is then mirrored into a symmetric adjacency.

    Args:
        workers: threads used for the per-hyperedge loop.
        max_wedges: optional cap on ``|wedges|``.

    Raises:
        ResourceLimitError: more than ``max_wedges`` hyperwedges.
    """
    wi, wj, ww = _upper(G, workers, with_weights=True)
    if max_wedges is not None and len(wi) > max_wedges:
        raise ResourceLimitError(
            f"projection holds {len(wi)} hyperwedges, cap is {max_wedges}",
            reached=len(wi),
        )
    src = np.concatenate([wi, wj])
    dst = np.concatenate([wj, wi])
    w = np.concatenate([ww, ww])
    order = np.lexsort((dst, src))
    indptr = np.zeros(G.n_edges + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=G.n_edges), out=indptr[1:])
    return ProjectedGraph(
        indptr=indptr,
        indices=dst[order].astype(np.int32),
        weights=w[order].astype(np.int32),
        wedge_i=wi,
        wedge_j=wj,
        wedge_w=ww,
    )


def neighborhood(P: ProjectedGraph, i: int) -> list[tuple[int, int]]:
    """``[(j, |e_i & e_j|), ...]`` sorted by ``j``."""
    ids, w = P.neighbors(i)
    return list(zip(ids.tolist(), w.tolist()))


def write_projection(P: ProjectedGraph, path) -> None:
    """Dump hyperwedges as ``i j w`` lines (``i < j``)."""
    with open(path, "w", encoding="utf-8") as fh:
        for i, j, w in P.wedges():
            fh.write(f"{i} {j} {w}\n")
