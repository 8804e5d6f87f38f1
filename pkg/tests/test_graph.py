import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardcore_zeros.graph import (
    GraphError,
    boundary,
    build_graph,
    cycle_graph,
    format_edge_list,
    induced_subgraph,
    lexicographic_blowup,
    parse_edge_list,
    path_graph,
    random_graph,
    star_graph,
)
from hardcore_zeros.recognize import max_clique_size


def test_build_cycle_and_claw():
    c4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert [c4.degree(v) for v in range(4)] == [2, 2, 2, 2]
    claw = build_graph(4, [(0, 1), (0, 2), (0, 3)])
    assert claw.degree(0) == 3
    assert claw == star_graph(3)


def test_build_rejects_loops_and_range():
    with pytest.raises(GraphError):
        build_graph(2, [(0, 0)])
    with pytest.raises(GraphError):
        build_graph(2, [(0, 2)])


def test_duplicate_edges_collapse():
    G = build_graph(3, [(0, 1), (1, 0), (0, 1)])
    assert G.m == 1
    assert G.adj == ((1,), (0,), ())


def test_boundary_examples():
    c4 = cycle_graph(4)
    assert boundary(c4, [0]) == (1, 3)
    assert boundary(c4, [0, 1]) == (2, 3)
    assert boundary(c4, range(4)) == ()
    with pytest.raises(GraphError):
        boundary(c4, [7])


def test_induced_subgraph_examples():
    c4 = cycle_graph(4)
    H, mapping = induced_subgraph(c4, [0, 1, 2])
    assert H == path_graph(3) and mapping == (0, 1, 2)
    H, _ = induced_subgraph(c4, [])
    assert H.n == 0
    H, mapping = induced_subgraph(c4, [0, 2])
    assert H.m == 0 and mapping == (0, 2)


def test_blowup_degrees():
    c4 = cycle_graph(4)
    assert {lexicographic_blowup(c4, 2, "clique").degree(v) for v in range(8)} == {5}
    assert {lexicographic_blowup(c4, 2, "independent").degree(v) for v in range(8)} == {4}
    for mode in ("clique", "independent"):
        assert lexicographic_blowup(c4, 1, mode).adjacency_matrix() == c4.adjacency_matrix()


def test_blowup_index_convention():
    G = lexicographic_blowup(path_graph(2), 3, "clique")
    # (0, j) is i*s + j = j; (1, j) is 3 + j
    assert G.has_edge(0, 2) and G.has_edge(0, 5) and G.n == 6


@pytest.mark.parametrize("s", [2, 3])
def test_blowup_multiplies_clique_number_on_triangle_free(s):
    for G in (cycle_graph(6), path_graph(5), cycle_graph(4)):
        assert max_clique_size(lexicographic_blowup(G, s, "clique")) == s * max_clique_size(G)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 10), st.floats(0, 1), st.integers(0, 2**31), st.data())
def test_boundary_and_induced_invariants(n, p, seed, data):
    G = random_graph(n, p, random.Random(seed))
    U = data.draw(st.sets(st.integers(0, n - 1)))
    assert not set(boundary(G, U)) & U
    H, mapping = induced_subgraph(G, U)
    for a, b in H.edges():
        assert G.has_edge(mapping[a], mapping[b])
    full, _ = induced_subgraph(G, range(n))
    assert full == G


def test_edge_list_roundtrip(rng):
    for _ in range(20):
        G = random_graph(rng.randint(0, 9), 0.4, rng)
        assert parse_edge_list(format_edge_list(G)) == G


def test_edge_list_comments_and_errors():
    G = parse_edge_list("# c4\n4 4\n0 1\n1 2\n# mid\n2 3\n3 0\n")
    assert G == cycle_graph(4)
    with pytest.raises(GraphError):
        parse_edge_list("4 3\n0 1\n")
    with pytest.raises(GraphError):
        parse_edge_list("x y\n")
    with pytest.raises(GraphError):
        parse_edge_list("")
    with pytest.raises(GraphError):
        parse_edge_list("2 1\n0 0\n")


def test_components():
    G = build_graph(5, [(0, 1), (3, 4)])
    assert G.components() == [0b11, 0b100, 0b11000]
    assert not G.is_connected()
