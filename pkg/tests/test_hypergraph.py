import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hmotifs import (
    EmptyHypergraphError,
    Hypergraph,
    InputFormatError,
    degree_stats,
    load_hypergraph,
    write_hypergraph,
)


def _write(tmp_path, text, name="g.txt"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_load_two_lines(tmp_path):
    G = load_hypergraph(_write(tmp_path, "1 2 3\n2 3 4\n"))
    assert (G.n_nodes, G.n_edges) == (4, 2)


def test_set_equal_duplicate_dropped(tmp_path):
    G = load_hypergraph(_write(tmp_path, "1 2\n2 1\n"))
    assert G.n_edges == 1
    assert G.dropped_duplicates == 1


def test_repeated_node_collapsed(tmp_path):
    G = load_hypergraph(_write(tmp_path, "7 7 7\n"))
    assert G.n_edges == 1
    assert G.labeled_edges() == [["7"]]
    assert G.sizes.tolist() == [1]


def test_comments_blank_lines_and_csv(tmp_path):
    G = load_hypergraph(_write(tmp_path, "# header\n\na,b , c\n c,d\n"), format="auto")
    assert G.n_edges == 2 and G.n_nodes == 4
    G2 = load_hypergraph(_write(tmp_path, "a,b,c\nc,d\n", "x.csv"), format="csv")
    assert G2.labeled_edges() == G.labeled_edges()


def test_first_occurrence_kept_and_ids_in_file_order(tmp_path):
    G = load_hypergraph(_write(tmp_path, "5 6\n1 2\n6 5\n3\n"))
    assert G.labeled_edges() == [["5", "6"], ["1", "2"], ["3"]]


def test_errors(tmp_path):
    with pytest.raises(InputFormatError):
        load_hypergraph(tmp_path / "missing.txt")
    with pytest.raises(EmptyHypergraphError):
        load_hypergraph(_write(tmp_path, "# nothing\n\n"))
    with pytest.raises(InputFormatError):
        load_hypergraph(_write(tmp_path, "1 2\n"), format="xml")


def test_degree_stats_examples():
    s = degree_stats(Hypergraph.from_edges([[1, 2, 3]]))
    assert (s.n_nodes, s.n_edges, s.max_edge_size) == (3, 1, 3)
    s = degree_stats(Hypergraph.from_edges([[1, 2], [3, 4, 5, 6, 7]]))
    assert s.max_edge_size == 5
    assert s.size_distribution == {2: 1, 5: 1}
    assert s.degree_distribution == {1: 7}


def test_incidence_inverse_of_membership(small_random):
    G = small_random
    for v in range(G.n_nodes):
        for i in G.incident(v):
            assert v in G.edge_set(int(i))
    for i in range(G.n_edges):
        for v in G.edge(i):
            assert i in G.incident(int(v))
    assert G.degrees.sum() == G.sizes.sum()
    assert all(np.all(np.diff(G.edge(i)) > 0) for i in range(G.n_edges))


edge_lists = st.lists(
    st.lists(st.integers(0, 12), min_size=1, max_size=5), min_size=1, max_size=25
)


@settings(max_examples=60, deadline=None)
@given(edge_lists)
def test_invariants_hold_for_any_input(edges):
    G = Hypergraph.from_edges(edges)
    sets = [frozenset(map(str, e)) for e in G.labeled_edges()]
    assert len(set(sets)) == len(sets)
    assert sets == list(dict.fromkeys(frozenset(map(str, e)) for e in edges))
    assert G.degrees.sum() == G.sizes.sum()
    assert G.n_nodes == len({x for e in edges for x in e})


@settings(max_examples=30, deadline=None)
@given(edge_lists)
def test_round_trip(tmp_path_factory, edges):
    G = Hypergraph.from_edges(edges)
    path = tmp_path_factory.mktemp("rt") / "g.txt"
    write_hypergraph(G, path)
    H = load_hypergraph(path)
    assert [sorted(e) for e in H.labeled_edges()] == [sorted(map(str, e)) for e in G.labeled_edges()]


@settings(max_examples=30, deadline=None)
@given(edge_lists, st.randoms())
def test_line_permutation_gives_same_edge_set(edges, rnd):
    shuffled = list(edges)
    rnd.shuffle(shuffled)
    a = {frozenset(e) for e in Hypergraph.from_edges(edges).labeled_edges()}
    b = {frozenset(e) for e in Hypergraph.from_edges(shuffled).labeled_edges()}
    assert a == b
