"""Speed/accuracy sweeps: sample ratios, worker counts, memo budgets."""
from __future__ import annotations

import csv
import time
from typing import Iterable, Sequence

import numpy as np

from ._parallel import fresh_seed
from .exact import count_exact
from .hypergraph import Hypergraph
from .memo import NeighborhoodProvider, neighborhood_sizes, parse_budget, wedge_sampling_with_cache
from .projection import project, wedge_index
from .sampling import SamplerConfig, count_approx_edge, count_approx_wedge, relative_error

# 2.5%, 5%, ..., 25% of |E| or |wedges|
DEFAULT_FRACTIONS = tuple(0.025 * k for k in range(1, 11))
DEFAULT_BUDGETS = ("0%", "0.1%", "1%", "10%", "100%")

FIELDS = ("experiment", "sampler", "fraction", "samples", "workers", "budget",
          "policy", "trial", "seed", "seconds", "relative_error", "constructed")


def _seeds(seed: int, n: int) -> list[int]:
    return [int(c.generate_state(1, dtype=np.uint64)[0])
            for c in np.random.SeedSequence(seed).spawn(n)]


def _row(**kw) -> dict:
    row = dict.fromkeys(FIELDS, "")
    row.update(kw)
    return row


def sample_sweep(G: Hypergraph, exact, samplers=("edge", "wedge"),
                 fractions: Sequence[float] = DEFAULT_FRACTIONS, trials: int = 3,
                 seed: int | None = None, workers: int = 1) -> list[dict]:
    """Time and relative error of each sampler at every sample ratio.

    Preprocessing (projection) is excluded from the timings, matching how
    both samplers share it.
    """
    seed = fresh_seed() if seed is None else seed
    P = project(G, workers=workers)
    seeds = iter(_seeds(seed, len(samplers) * len(fractions) * trials))
    rows = []
    for sampler in samplers:
        population = G.n_edges if sampler == "edge" else P.n_wedges
        fn = count_approx_edge if sampler == "edge" else count_approx_wedge
        for frac in fractions:
            n = max(1, int(round(frac * population)))
            for trial in range(trials):
                s = next(seeds)
                t0 = time.perf_counter()
                est = fn(G, P, SamplerConfig(n, s, workers))
                elapsed = time.perf_counter() - t0
                rows.append(_row(experiment="samples", sampler=sampler, fraction=frac,
                                 samples=n, workers=workers, trial=trial, seed=s,
                                 seconds=elapsed,
                                 relative_error=relative_error(exact, est.estimates)))
    return rows


def thread_sweep(G: Hypergraph, workers: Iterable[int] = (1, 2, 4, 8), repeats: int = 1) -> list[dict]:
    """Wall-clock of projection plus exact counting per worker count."""
    rows = []
    for w in workers:
        for trial in range(repeats):
            t0 = time.perf_counter()
            count_exact(G, project(G, workers=w), workers=w)
            rows.append(_row(experiment="threads", sampler="exact", workers=w,
                             trial=trial, seconds=time.perf_counter() - t0))
    return rows


def memo_sweep(G: Hypergraph, exact, fraction: float = 0.1,
               budgets: Sequence[str] = DEFAULT_BUDGETS, policies=("degree",),
               trials: int = 3, seed: int | None = None, workers: int = 1) -> list[dict]:
    """Hyperwedge sampling through the neighborhood cache at several budgets.

    Budgets are percentages of ``sum |N_ei|``. Timings include the lazy
    neighborhood construction but not the wedge index.
    """
    seed = fresh_seed() if seed is None else seed
    W = wedge_index(G, workers=workers)
    sizes = neighborhood_sizes(W, G.n_edges)
    total = int(sizes.sum())
    n = max(1, int(round(fraction * len(W[0]))))
    trial_seeds = _seeds(seed, trials)
    rows = []
    for policy in policies:
        for budget in budgets:
            entries = parse_budget(budget, total)
            for trial, s in enumerate(trial_seeds):
                provider = NeighborhoodProvider(G, entries, policy, seed=s, sizes=sizes)
                t0 = time.perf_counter()
                est = wedge_sampling_with_cache(G, provider, SamplerConfig(n, s, workers), W)
                elapsed = time.perf_counter() - t0
                rows.append(_row(experiment="memo", sampler="wedge", fraction=fraction,
                                 samples=n, workers=workers, budget=budget, policy=policy,
                                 trial=trial, seed=s, seconds=elapsed,
                                 relative_error=relative_error(exact, est.estimates),
                                 constructed=provider.stats.constructed))
    return rows


def write_csv(rows: list[dict], fh) -> None:
    writer = csv.DictWriter(fh, fieldnames=FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
