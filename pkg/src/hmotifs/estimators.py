"""scikit-learn style estimators over hypergraphs.

``X`` is always one hypergraph (a :class:`~hmotifs.hypergraph.Hypergraph`,
a dataset path, or a list of node collections); the "samples" seen by
``transform`` are its hyperedges.
"""
from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin, clone
from sklearn.utils.validation import check_is_fitted

from ._parallel import resolve_workers
from .exact import count_exact, per_hyperedge_features
from .motifs import N_MOTIFS
from .profile import characteristic_profile, rank_difference, relative_count, significance
from .projection import project
from .randomize import RandomizationConfig, null_counts
from .sampling import SamplerConfig, count_approx_edge, count_approx_wedge
from .validation import check_hypergraph, check_positive_int, check_seed

METHODS = ("exact", "edge", "wedge")


def _n_jobs(n_jobs) -> int:
    if n_jobs is None:
        return resolve_workers(None)
    if n_jobs < 0:
        return resolve_workers(None)
    return resolve_workers(n_jobs)


class MotifCounter(TransformerMixin, BaseEstimator):
    """Count h-motif instances of a hypergraph.

    Parameters
    ----------
    method : {"exact", "edge", "wedge"}
        Exact enumeration, hyperedge sampling or hyperwedge sampling.
    n_samples : int, optional
        Number of sampled hyperedges / hyperwedges.
    sample_ratio : float, optional
        Sample count as a fraction of ``|E|`` or ``|wedges|``; used when
        ``n_samples`` is unset. Defaults to 0.1.
    random_state : int, optional
        Seed of the sampling run.
    n_jobs : int, optional
        Worker threads; ``None`` or negative uses every core.

    Attributes
    ----------
    counts_ : ndarray of shape (26,)
        ``counts_[t - 1]`` is the (estimated) count of motif ``t``.
    n_edges_, n_wedges_ : int
    result_ : CountVector or EstimateVector
    """

    def __init__(self, method="exact", n_samples=None, sample_ratio=None,
                 random_state=None, n_jobs=None):
        self.method = method
        self.n_samples = n_samples
        self.sample_ratio = sample_ratio
        self.random_state = random_state
        self.n_jobs = n_jobs

    def _sample_count(self, population: int) -> int:
        if self.n_samples is not None:
            return check_positive_int(self.n_samples, "n_samples")
        ratio = 0.1 if self.sample_ratio is None else float(self.sample_ratio)
        if not 0 < ratio:
            raise ValueError("sample_ratio must be positive")
        return max(1, math.ceil(ratio * population))

    def fit(self, X, y=None):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        G = check_hypergraph(X)
        workers = _n_jobs(self.n_jobs)
        P = project(G, workers=workers)
        if self.method == "exact":
            result = count_exact(G, P, workers=workers)
            counts = result.counts
        else:
            population = G.n_edges if self.method == "edge" else P.n_wedges
            cfg = SamplerConfig(self._sample_count(max(population, 1)),
                                check_seed(self.random_state), workers)
            fn = count_approx_edge if self.method == "edge" else count_approx_wedge
            result = fn(G, P, cfg)
            counts = result.estimates
        self.result_ = result
        self.counts_ = counts
        self.n_edges_ = G.n_edges
        self.n_wedges_ = P.n_wedges
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        """Per-hyperedge motif participation counts (HM26), shape ``(|E|, 26)``."""
        check_is_fitted(self, "counts_")
        G = check_hypergraph(X)
        return per_hyperedge_features(G, workers=_n_jobs(self.n_jobs))

    def get_feature_names_out(self, input_features=None):
        return np.array([f"motif_{t}" for t in range(1, N_MOTIFS + 1)], dtype=object)


class SignificanceProfiler(BaseEstimator):
    """Significance of each motif against Chung-Lu randomized hypergraphs.

    Parameters
    ----------
    counter : MotifCounter, optional
        Template counter (cloned) used for the input and every randomized
        copy; defaults to exact counting.
    n_randomizations : int, default=5
    epsilon : float, default=1.0
        Smoothing term of the significance ratio.
    random_state : int, optional

    Attributes
    ----------
    counts_, null_counts_ : ndarray of shape (26,)
    significance_ : ndarray of shape (26,)
    profile_ : ndarray of shape (26,)
        L2-normalized significance (characteristic profile).
    relative_count_ : ndarray of shape (26,)
    rank_difference_ : ndarray of shape (26,)
    """

    def __init__(self, counter=None, n_randomizations=5, epsilon=1.0, random_state=None):
        self.counter = counter
        self.n_randomizations = n_randomizations
        self.epsilon = epsilon
        self.random_state = random_state

    def fit(self, X, y=None):
        G = check_hypergraph(X)
        template = self.counter if self.counter is not None else MotifCounter()
        seed = check_seed(self.random_state)
        real = clone(template).set_params(random_state=seed).fit(G)

        def count(H, trial_seed):
            if H.n_edges == 0:
                return np.zeros(N_MOTIFS)
            return clone(template).set_params(random_state=trial_seed).fit(H).counts_

        nulls = null_counts(
            G,
            RandomizationConfig(check_positive_int(self.n_randomizations, "n_randomizations"), seed),
            count,
            approximate=template.method != "exact",
        )
        sig = significance(real.counts_, nulls.mean, self.epsilon)
        self.counts_ = np.asarray(real.counts_, dtype=np.float64)
        self.null_counts_ = nulls.mean
        self.null_trials_ = nulls.trial_counts
        self.significance_ = sig.delta
        self.profile_ = characteristic_profile(sig)
        self.relative_count_ = relative_count(self.counts_, nulls.mean)
        self.rank_difference_ = rank_difference(self.counts_, nulls.mean)
        return self
