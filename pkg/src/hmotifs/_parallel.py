"""Worker resolution, work partitioning and random stream splitting.

Stream-splitting rule: a run seed ``S`` feeds ``numpy.random.SeedSequence(S)``;
a stage that needs ``n`` independent streams takes
``SeedSequence(S).spawn(n)`` and wraps child ``w`` in a Philox generator.
Worker ``w`` of a sampler owns stream ``w`` and draws
``n_samples // n + (w < n_samples % n)`` samples from it.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

WORKERS_ENV = "HMOTIFS_WORKERS"


def resolve_workers(workers=None) -> int:
    if workers is None:
        env = os.environ.get(WORKERS_ENV)
        workers = int(env) if env else (os.cpu_count() or 1)
    workers = int(workers)
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    return workers


def row_partitions(n: int, workers: int, contiguous: bool = False) -> list[np.ndarray]:
    """Split ``range(n)`` into at most ``workers`` index arrays.

    Strided (round-robin) partitions balance skewed per-row work; contiguous
    blocks keep row order when outputs are concatenated.
    """
    workers = max(1, min(workers, n)) if n else 1
    if contiguous:
        return [a.astype(np.int64) for a in np.array_split(np.arange(n), workers)]
    return [np.arange(w, n, workers, dtype=np.int64) for w in range(workers)]


def run_threads(fn, parts) -> list:
    """Apply ``fn`` to every part; threads only when there is more than one."""
    parts = list(parts)
    if len(parts) <= 1:
        return [fn(p) for p in parts]
    with ThreadPoolExecutor(max_workers=len(parts)) as pool:
        return list(pool.map(fn, parts))


def fresh_seed() -> int:
    return int(np.random.SeedSequence().generate_state(1, dtype=np.uint64)[0])


def spawn_generators(seed: int, n: int) -> list[np.random.Generator]:
    children = np.random.SeedSequence(seed).spawn(n)
    return [np.random.Generator(np.random.Philox(c)) for c in children]


def split_count(total: int, parts: int) -> list[int]:
    base, extra = divmod(total, parts)
    return [base + (w < extra) for w in range(parts)]


def draw_samples(population: int, n_samples: int, seed: int, workers: int) -> list[np.ndarray]:
    """Per-worker uniform draws with replacement from ``range(population)``."""
    gens = spawn_generators(seed, workers)
    return [
        g.integers(0, population, size=c, dtype=np.int64)
        for g, c in zip(gens, split_count(n_samples, workers))
    ]
