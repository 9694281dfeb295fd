"""Unbiased sampling estimators and their closed-form variances."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from ._parallel import draw_samples, fresh_seed, resolve_workers, run_threads
from .exact import CountVector, OverlapStats, _check_tally, _graph_args
from .exceptions import EmptyHypergraphError
from .hypergraph import Hypergraph
from .motifs import N_MOTIFS, MotifTable, motif_table
from .projection import ProjectedGraph, project

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SamplerConfig:
    """Sample count, run seed and worker count of one sampling run."""

    sample_count: int
    seed: int | None = None
    workers: int = 1

    def __post_init__(self):
        if int(self.sample_count) < 1:
            raise ValueError(f"sample_count must be >= 1, got {self.sample_count}")
        if int(self.workers) < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")

    def resolved(self) -> "SamplerConfig":
        """Same config with a concrete seed (drawn from OS entropy if unset)."""
        if self.seed is not None:
            return self
        return SamplerConfig(self.sample_count, fresh_seed(), self.workers)


@dataclass(frozen=True)
class EstimateVector:
    """Rescaled per-motif estimates plus the raw tallies they came from."""

    estimates: np.ndarray
    sampler: str
    sample_count: int
    population: int
    seed: int
    workers: int
    tallies: np.ndarray = field(repr=False, default=None)

    @property
    def alpha(self) -> float:
        """Sampling ratio ``s / |E|`` or ``r / |wedges|``."""
        return self.sample_count / self.population if self.population else 0.0

    def __getitem__(self, t: int) -> float:
        if not 1 <= t <= N_MOTIFS:
            raise IndexError(f"motif id must lie in 1..{N_MOTIFS}")
        return self.estimates[t - 1]

    def __array__(self, dtype=None, copy=None):
        return self.estimates if dtype is None else self.estimates.astype(dtype)

    def as_counts(self) -> CountVector:
        return CountVector(self.estimates, kind="estimate")


def edge_sample_tallies(G: Hypergraph, P: ProjectedGraph, samples) -> np.ndarray:
    """Raw ``int64[26]`` tallies for an explicit sequence of hyperedge ids.

    Every instance containing a sampled hyperedge is tallied once per draw of
    that hyperedge.
    """
    tally = np.zeros(N_MOTIFS + 1, dtype=np.int64)
    _kernels.edge_sample_rows(np.asarray(samples, dtype=np.int64), *_graph_args(G, P), tally)
    _check_tally(tally)
    return tally[1:]


def wedge_sample_tallies(G: Hypergraph, P: ProjectedGraph, samples) -> np.ndarray:
    """Raw ``int64[26]`` tallies for explicit positions in the wedge index."""
    tally = np.zeros(N_MOTIFS + 1, dtype=np.int64)
    args = _graph_args(G, P)
    _kernels.wedge_sample_rows(
        np.asarray(samples, dtype=np.int64), P.wedge_i, P.wedge_j, args[0], args[1],
        *args[2:], tally,
    )
    _check_tally(tally)
    return tally[1:]


def _run_sampler(fn, population, cfg):
    cfg = cfg.resolved()
    draws = draw_samples(population, int(cfg.sample_count), cfg.seed, int(cfg.workers))
    tallies = np.sum(run_threads(fn, draws), axis=0, dtype=np.int64)
    return cfg, tallies


def count_approx_edge(G: Hypergraph, P: ProjectedGraph | None, cfg: SamplerConfig) -> EstimateVector:
    """Estimate motif counts from ``s`` uniformly sampled hyperedges.

    Tallies are scaled by ``|E| / (3 s)``: each instance holds three
    hyperedges, each drawn with probability ``1 / |E|`` per sample.
    """
    if G.n_edges == 0:
        raise EmptyHypergraphError("cannot sample from a hypergraph without hyperedges")
    if P is None:
        P = project(G, workers=cfg.workers)
    cfg, tallies = _run_sampler(
        lambda s: edge_sample_tallies(G, P, s), G.n_edges, cfg
    )
    scale = G.n_edges / (3.0 * cfg.sample_count)
    return EstimateVector(
        estimates=tallies * scale,
        sampler="edge",
        sample_count=int(cfg.sample_count),
        population=G.n_edges,
        seed=cfg.seed,
        workers=int(cfg.workers),
        tallies=tallies,
    )


def wedge_scale(n_wedges: int, r: int, table: MotifTable | None = None) -> np.ndarray:
    """Per-motif rescaling ``|wedges| / (w[t] r)`` with ``w`` = 2 open, 3 closed."""
    table = table or motif_table()
    return n_wedges / (table.wedges_per_instance[1:] * r)


def count_approx_wedge(G: Hypergraph, P: ProjectedGraph | None, cfg: SamplerConfig) -> EstimateVector:
    """Estimate motif counts from ``r`` uniformly sampled hyperwedges.

    Open-motif tallies are scaled by ``|wedges| / (2 r)`` and closed ones by
    ``|wedges| / (3 r)``, matching the number of hyperwedges per instance.
    A hypergraph without hyperwedges has no instances and yields zeros.
    """
    if P is None:
        P = project(G, workers=cfg.workers)
    if P.n_wedges == 0:
        logger.warning("hypergraph has no hyperwedges; all estimates are zero")
        cfg = cfg.resolved()
        return EstimateVector(
            np.zeros(N_MOTIFS), "wedge", int(cfg.sample_count), 0, cfg.seed,
            int(cfg.workers), np.zeros(N_MOTIFS, dtype=np.int64),
        )
    cfg, tallies = _run_sampler(
        lambda s: wedge_sample_tallies(G, P, s), P.n_wedges, cfg
    )
    return EstimateVector(
        estimates=tallies * wedge_scale(P.n_wedges, int(cfg.sample_count)),
        sampler="wedge",
        sample_count=int(cfg.sample_count),
        population=P.n_wedges,
        seed=cfg.seed,
        workers=int(cfg.workers),
        tallies=tallies,
    )


def _as_array(x) -> np.ndarray:
    return np.asarray(x, dtype=np.float64)


def theoretical_variance_edge(M, S: OverlapStats, s: int, n_edges: int) -> np.ndarray:
    """Variance of each hyperedge-sampling estimate.

    ``S.p`` holds unordered pair counts; the covariance sum behind the
    closed form runs over ordered pairs, so every pair contributes twice::

        Var = M (|E| - 3) / (3 s) + 2 / (9 s) * sum_l p_l (l |E| - 9)
    """
    if s <= 0:
        raise ValueError("s must be positive")
    M = _as_array(M)
    ls = np.arange(3)
    pair_term = (S.p * (ls * n_edges - 9)).sum(axis=1)
    return M * (n_edges - 3) / (3.0 * s) + 2.0 * pair_term / (9.0 * s)


def theoretical_variance_wedge(M, S: OverlapStats, r: int, n_wedges: int,
                               table: MotifTable | None = None) -> np.ndarray:
    """Variance of each hyperwedge-sampling estimate.

    With ``w`` hyperwedges per instance (3 closed, 2 open) and unordered pair
    counts ``q_n``::

        Var = M (|W| - w) / (w r) + 2 / (w^2 r) * sum_n q_n (n |W| - w^2)
    """
    if r <= 0:
        raise ValueError("r must be positive")
    table = table or motif_table()
    M = _as_array(M)
    w = table.wedges_per_instance[1:]
    ns = np.arange(2)
    pair_term = (S.q * (ns[None, :] * n_wedges - (w ** 2)[:, None])).sum(axis=1)
    return M * (n_wedges - w) / (w * r) + 2.0 * pair_term / (w ** 2 * r)


def relative_error(exact, estimate) -> float:
    """``sum_t |M[t] - est[t]| / sum_t M[t]``."""
    exact = _as_array(exact)
    estimate = _as_array(estimate)
    denom = exact.sum()
    if denom <= 0:
        raise ValueError("relative error is undefined when all exact counts are zero")
    return float(np.abs(exact - estimate).sum() / denom)
