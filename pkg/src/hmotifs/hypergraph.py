"""In-memory hypergraph model, dataset ingestion and incidence indexing."""
from __future__ import annotations

import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Hashable, Iterable, Sequence

import numpy as np

from .exceptions import EmptyHypergraphError, InputFormatError

logger = logging.getLogger(__name__)

_INT32_MAX = np.iinfo(np.int32).max
_SPLITTERS = {
    "whitespace": re.compile(r"\s+"),
    "csv": re.compile(r"[,\s]+"),
}


@dataclass(frozen=True, eq=False)
class Hypergraph:
    """Immutable hypergraph with CSR-encoded membership and incidence.

    Hyperedge ``i`` holds the sorted node ids
    ``edge_nodes[edge_ptr[i]:edge_ptr[i + 1]]``; node ``v`` is contained in
    the sorted hyperedge ids ``node_edges[node_ptr[v]:node_ptr[v + 1]]``.
    Node ids are dense (``0..n_nodes-1``); ``labels[v]`` is the original
    token of node ``v``.
    """

    edge_ptr: np.ndarray
    edge_nodes: np.ndarray
    node_ptr: np.ndarray
    node_edges: np.ndarray
    labels: tuple = ()
    dropped_duplicates: int = 0
    collapsed_nodes: int = 0
    _edge_sets: list = field(default=None, repr=False)

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[Hashable]]) -> "Hypergraph":
        """Build a hypergraph from an iterable of node collections.

        Node tokens are remapped to dense ids in order of first appearance.
        Repeated tokens inside one hyperedge collapse, empty hyperedges are
        skipped, and set-identical hyperedges keep only their first
        occurrence.
        """
        token_ids: dict = {}
        labels: list = []
        members: list[tuple[int, ...]] = []
        seen: set[tuple[int, ...]] = set()
        dropped = 0
        collapsed = 0
        for raw in edges:
            raw = list(raw)
            ids = set()
            for token in raw:
                v = token_ids.get(token)
                if v is None:
                    v = token_ids[token] = len(labels)
                    labels.append(token)
                ids.add(v)
            collapsed += len(raw) - len(ids)
            if not ids:
                continue
            key = tuple(sorted(ids))
            if key in seen:
                dropped += 1
                continue
            seen.add(key)
            members.append(key)
        if len(labels) > _INT32_MAX:
            raise InputFormatError(f"node count {len(labels)} overflows 32-bit ids")
        return cls._from_members(members, labels, dropped, collapsed)

    @classmethod
    def _from_members(cls, members, labels, dropped=0, collapsed=0):
        n_nodes = len(labels)
        sizes = np.fromiter((len(m) for m in members), dtype=np.int64, count=len(members))
        edge_ptr = np.zeros(len(members) + 1, dtype=np.int64)
        np.cumsum(sizes, out=edge_ptr[1:])
        edge_nodes = np.fromiter(
            (v for m in members for v in m), dtype=np.int32, count=int(edge_ptr[-1])
        )
        edge_ids = np.repeat(np.arange(len(members), dtype=np.int32), sizes)
        # stable sort keeps hyperedge ids ascending within each node
        order = np.argsort(edge_nodes, kind="stable")
        node_edges = edge_ids[order]
        degrees = np.bincount(edge_nodes, minlength=n_nodes)
        node_ptr = np.zeros(n_nodes + 1, dtype=np.int64)
        np.cumsum(degrees, out=node_ptr[1:])
        return cls(
            edge_ptr=edge_ptr,
            edge_nodes=edge_nodes,
            node_ptr=node_ptr,
            node_edges=node_edges.astype(np.int32),
            labels=tuple(labels),
            dropped_duplicates=dropped,
            collapsed_nodes=collapsed,
        )

    @property
    def n_nodes(self) -> int:
        return len(self.node_ptr) - 1

    @property
    def n_edges(self) -> int:
        return len(self.edge_ptr) - 1

    @property
    def sizes(self) -> np.ndarray:
        """Hyperedge sizes ``|e_i|``."""
        return np.diff(self.edge_ptr)

    @property
    def degrees(self) -> np.ndarray:
        """Node degrees ``|E_v|``."""
        return np.diff(self.node_ptr)

    def edge(self, i: int) -> np.ndarray:
        if not 0 <= i < self.n_edges:
            raise IndexError(f"hyperedge id {i} out of range [0, {self.n_edges})")
        return self.edge_nodes[self.edge_ptr[i]:self.edge_ptr[i + 1]]

    def incident(self, v: int) -> np.ndarray:
        if not 0 <= v < self.n_nodes:
            raise IndexError(f"node id {v} out of range [0, {self.n_nodes})")
        return self.node_edges[self.node_ptr[v]:self.node_ptr[v + 1]]

    def edge_set(self, i: int) -> frozenset:
        if self._edge_sets is None:
            sets = [frozenset(self.edge(k).tolist()) for k in range(self.n_edges)]
            object.__setattr__(self, "_edge_sets", sets)
        return self._edge_sets[i]

    def edges(self) -> list[list[int]]:
        return [self.edge(i).tolist() for i in range(self.n_edges)]

    def labeled_edges(self) -> list[list]:
        return [[self.labels[v] for v in e] for e in self.edges()]

    def __len__(self) -> int:
        return self.n_edges

    def __repr__(self) -> str:
        return f"Hypergraph(n_nodes={self.n_nodes}, n_edges={self.n_edges})"


def _tokenize(lines: Iterable[str], fmt: str) -> Iterable[list[str]]:
    splitter = _SPLITTERS[fmt]
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = [t for t in splitter.split(line) if t]
        if tokens:
            yield tokens


def load_hypergraph(path, format: str = "whitespace") -> Hypergraph:
    """Read a hypergraph with one hyperedge per line.

    Args:
        path: dataset file.
        format: ``"whitespace"`` or ``"csv"`` (commas and/or whitespace).
            ``"auto"`` picks ``csv`` when the first data line holds a comma.

    Raises:
        InputFormatError: unreadable file or unknown format.
        EmptyHypergraphError: the file holds no hyperedge.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    lines = text.splitlines()
    if format == "auto":
        first = next((ln for ln in lines if ln.strip() and not ln.startswith("#")), "")
        format = "csv" if "," in first else "whitespace"
    if format not in _SPLITTERS:
        raise InputFormatError(f"unknown format {format!r}")
    G = Hypergraph.from_edges(_tokenize(lines, format))
    if G.n_edges == 0:
        raise EmptyHypergraphError(f"{path} contains no hyperedges")
    if G.dropped_duplicates:
        logger.info("%s: dropped %d duplicated hyperedges", path, G.dropped_duplicates)
    return G


def write_hypergraph(G: Hypergraph, path, sep: str = " ") -> None:
    """Write ``G`` in the loader's format, using the original node tokens."""
    with open(path, "w", encoding="utf-8") as fh:
        for edge in G.labeled_edges():
            fh.write(sep.join(str(t) for t in edge) + "\n")


@dataclass(frozen=True)
class DegreeStats:
    n_nodes: int
    n_edges: int
    max_edge_size: int
    degree_distribution: dict
    size_distribution: dict

    def to_dict(self) -> dict:
        return {
            "n_nodes": self.n_nodes,
            "n_edges": self.n_edges,
            "max_edge_size": self.max_edge_size,
            "degree_distribution": {str(k): v for k, v in self.degree_distribution.items()},
            "size_distribution": {str(k): v for k, v in self.size_distribution.items()},
        }


def _histogram(values: Sequence[int]) -> dict:
    return dict(sorted(Counter(int(x) for x in values).items()))


def degree_stats(G: Hypergraph) -> DegreeStats:
    sizes = G.sizes
    return DegreeStats(
        n_nodes=G.n_nodes,
        n_edges=G.n_edges,
        max_edge_size=int(sizes.max()) if len(sizes) else 0,
        degree_distribution=_histogram(G.degrees),
        size_distribution=_histogram(sizes),
    )
