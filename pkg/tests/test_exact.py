import math
from collections import Counter

import numpy as np
import pytest
from oracles import edge_sets, naive_counts, naive_instances, naive_overlaps

from hmotifs import (
    CountVector,
    EnumerationAborted,
    Hypergraph,
    ResourceLimitError,
    count_exact,
    enumerate_instances,
    instance_array,
    motif_table,
    overlap_stats,
    per_hyperedge_features,
    project,
)
from hmotifs.synthetic import random_hypergraph, skewed_hypergraph


def test_closed_triple(closed_triple):
    c = count_exact(closed_triple)
    assert c.total == 1
    assert list(enumerate_instances(closed_triple)) == [(0, 1, 2, int(np.argmax(c.counts)) + 1)]
    assert per_hyperedge_features(closed_triple).sum(axis=1).tolist() == [1, 1, 1]


def test_disjoint_and_isolated():
    G = Hypergraph.from_edges([[1, 2], [3, 4]])
    assert count_exact(G).total == 0
    assert list(enumerate_instances(G)) == []
    G = Hypergraph.from_edges([[1, 2], [2, 3], [3, 4], [9]])
    assert per_hyperedge_features(G)[3].sum() == 0


def test_count_vector():
    c = CountVector(np.arange(26))
    assert c[1] == 0 and c[26] == 25 and c.counts.dtype == np.int64
    with pytest.raises(IndexError):
        c[0]
    with pytest.raises(ValueError):
        CountVector(np.zeros(5))
    assert CountVector(np.full(26, 0.5), kind="estimate").counts.dtype == np.float64


@pytest.mark.parametrize("seed", range(25))
def test_against_all_triples_oracle(seed):
    rng = np.random.default_rng(seed)
    G = random_hypergraph(int(rng.integers(5, 30)), int(rng.integers(3, 45)),
                          int(rng.integers(2, 7)), seed=seed)
    sets = edge_sets(G)
    assert np.array_equal(count_exact(G).counts, naive_counts(sets))
    got = sorted((*sorted(inst[:3]), inst[3]) for inst in enumerate_instances(G))
    assert got == sorted(naive_instances(sets))


def test_enumeration_random_30(small_random):
    inst = list(enumerate_instances(small_random, block_size=7))
    assert Counter(inst) == Counter(map(tuple, instance_array(small_random).tolist()))
    per_motif = Counter(t for *_, t in inst)
    c = count_exact(small_random)
    assert all(per_motif[t] == c[t] for t in range(1, 27))


def test_order_independence():
    G = skewed_hypergraph(50, 80, seed=4)
    edges = G.labeled_edges()
    rng = np.random.default_rng(0)
    for _ in range(3):
        H = Hypergraph.from_edges([edges[i] for i in rng.permutation(len(edges))])
        assert np.array_equal(count_exact(H).counts, count_exact(G).counts)


def test_workers_bitwise_identical():
    G = skewed_hypergraph(120, 250, seed=2)
    ref = count_exact(G, workers=1).counts
    feats = per_hyperedge_features(G, workers=1)
    for w in (2, 3, 4, 8):
        assert np.array_equal(count_exact(G, workers=w).counts, ref)
        assert np.array_equal(per_hyperedge_features(G, workers=w), feats)


def test_features_sum_to_three_times_counts():
    for seed in range(5):
        G = skewed_hypergraph(60, 90, seed=seed)
        F = per_hyperedge_features(G)
        assert F.shape == (G.n_edges, 26)
        assert np.array_equal(F.sum(axis=0), 3 * count_exact(G).counts)


def test_wedges_per_instance():
    G = skewed_hypergraph(40, 60, seed=9)
    P = project(G)
    T = motif_table()
    for i, j, k, t in instance_array(G, P).tolist():
        adjacent = sum(P.weight(a, b) is not None for a, b in ((i, j), (j, k), (i, k)))
        assert adjacent == (2 if T.is_open(t) else 3)


def test_sink_and_abort(closed_triple, small_random):
    got = []
    assert enumerate_instances(closed_triple, sink=lambda *x: got.append(x)) == 1
    assert len(got) == 1

    def sink(i, j, k, t, state={"n": 0}):
        state["n"] += 1
        if state["n"] > 5:
            raise OSError("disk full")

    with pytest.raises(EnumerationAborted) as info:
        enumerate_instances(small_random, sink=sink)
    assert info.value.emitted == 5


def test_overlap_stats_examples(closed_triple):
    S = overlap_stats(closed_triple)
    assert S.p.sum() == 0 and S.q.sum() == 0
    # closed instances {e0, e1, e2} (all share "a") and {e0, e3, e4} (all
    # share "b") of the same motif, overlapping in e0 only
    G = Hypergraph.from_edges([["a", "b"], ["a", "x"], ["a", "y"], ["b", "u"], ["b", "w"]])
    inst = instance_array(G)
    closed = inst[[not motif_table().is_open(t) for t in inst[:, 3]]]
    assert sorted(map(tuple, closed[:, :3].tolist())) == [(0, 1, 2), (0, 3, 4)]
    t = closed[0, 3]
    assert closed[1, 3] == t
    S = overlap_stats(G)
    assert S.p[t - 1].tolist() == [0, 1, 0]
    assert S.q[t - 1].tolist() == [1, 0]


@pytest.mark.parametrize("seed", range(6))
def test_overlap_stats_against_oracle(seed):
    G = random_hypergraph(10, 20, 4, seed=seed)
    S = overlap_stats(G)
    p, q = naive_overlaps(edge_sets(G))
    assert np.array_equal(S.p, p) and np.array_equal(S.q, q)
    c = count_exact(G).counts
    assert np.array_equal(S.p.sum(axis=1), [math.comb(int(m), 2) for m in c])
    assert np.all(S.q[:, 1] <= S.p[:, 2])


def test_overlap_cap(small_random):
    with pytest.raises(ResourceLimitError):
        overlap_stats(small_random, max_instances=3)
