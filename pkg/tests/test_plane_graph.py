import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from planedefect.generators import sample_in_class
from planedefect.plane_graph import (EmbeddingError, Graph, GraphFormatError, PlaneGraph,
                                     classify_cycle, dumps, dumps_adjacency, find_cycles_up_to,
                                     identify, load, loads_any, reduce_graph, sigma)

from conftest import cycle_pg, k4, nx_plane


def test_triangle_counts():
    g = load("vertices 3\n0: 1 2\n1: 2 0\n2: 0 1\n")
    assert (g.n, g.edge_count, len(g.faces)) == (3, 3, 2)
    assert sorted(f.degree for f in g.faces) == [3, 3]


def test_four_cycle_has_two_four_faces():
    assert sorted(f.degree for f in cycle_pg(4).faces) == [4, 4]


def test_k4_faces():
    g = k4()
    assert (g.n, g.edge_count, len(g.faces)) == (4, 6, 4)
    assert g.n - g.edge_count + len(g.faces) == 2
    assert all(f.degree == 3 for f in g.faces)


def test_k5_rotation_rejected():
    rot = [[u for u in range(5) if u != v] for v in range(5)]
    with pytest.raises(EmbeddingError, match="Euler"):
        PlaneGraph(rot)


def test_every_dart_on_one_face():
    g = sample_in_class(20, 4)
    darts = [d for f in g.faces for d in f.walk]
    assert len(darts) == len(set(darts)) == 2 * g.edge_count


@pytest.mark.parametrize("text, err", [
    ("", GraphFormatError),
    ("vertices 2\n0: 1\n", GraphFormatError),
    ("vertices 2\n0: 1\n1: 1\n", EmbeddingError),
    ("vertices 3\n0: 1\n1: 0\n2:\n", EmbeddingError),
    ("vertices 3\n0: 1 1\n1: 0\n2: 0\n", EmbeddingError),
    ("vertices 2\n0: 1\n1: 0\nprecolor: 0=4\n", GraphFormatError),
    ("vertices 3\n0: 1 2\n1: 2 0\n2: 0 1\nouter: 0 2 9\n", EmbeddingError),
])
def test_malformed_input(text, err):
    with pytest.raises(err):
        load(text)


def test_round_trip_preserves_outer_and_precolor():
    g = load("vertices 4\n0: 1 2 3\n1: 2 0\n2: 3 0 1\n3: 0 2\nprecolor: 1=2\n")
    h = load(dumps(g))
    assert h.rotation == g.rotation and h.outer == g.outer and h.precolor == {1: 2}
    assert loads_any(dumps_adjacency(g)).adj == g.adj


def test_default_outer_is_largest_face():
    g = PlaneGraph(sample_in_class(12, 1, outer=7).rotation)
    assert g.outer_face.degree == max(f.degree for f in g.faces)


def test_cycles_of_c7():
    assert [len(c) for c in find_cycles_up_to(cycle_pg(7), 7)] == [7]


def test_cycles_of_triangle():
    assert [len(c) for c in find_cycles_up_to(cycle_pg(3), 5)] == [3]


def test_k4_cycle_census_against_brute_force():
    g = k4()
    found = sorted(len(c) for c in find_cycles_up_to(g, 5))
    assert found == [3, 3, 3, 3, 4, 4, 4]
    # brute force: every vertex ordering that closes up, modulo rotation and reflection
    brute = set()
    for k in (3, 4, 5):
        for perm in itertools.permutations(range(g.n), k):
            if k > g.n:
                continue
            if all(g.has_edge(perm[i], perm[(i + 1) % k]) for i in range(k)):
                brute.add(frozenset(frozenset((perm[i], perm[(i + 1) % k])) for i in range(k)))
    assert len(brute) == len(found)


@settings(max_examples=25, deadline=None)
@given(st.integers(6, 16), st.integers(0, 10**6))
def test_cycle_enumeration_matches_networkx(n, seed):
    g = sample_in_class(n, seed)
    G = nx.Graph(g.edges())
    ref = sorted(len(c) for c in nx.simple_cycles(G, length_bound=7))
    assert sorted(len(c) for c in find_cycles_up_to(g, 7)) == ref


def test_k4_triangles_are_not_separating():
    g = k4()
    outer = classify_cycle(g, [0, 1, 2])
    assert outer.interior == {3} and not outer.exterior and not outer.separating
    for tri in ([0, 1, 3], [1, 2, 3], [0, 2, 3]):
        assert not classify_cycle(g, tri).separating


def test_double_wheel_four_cycle_separates():
    # hubs 4 (inside) and 5 (outside) on the 4-cycle 0..3
    edges = [(i, (i + 1) % 4) for i in range(4)] + [(i, 4) for i in range(4)]
    h = nx_plane(nx.Graph(edges + [(i, 5) for i in range(4)]))
    ref = classify_cycle(h, [0, 1, 2, 3])
    assert ref.separating and {len(ref.interior), len(ref.exterior)} == {1}


def test_sigma_examples():
    assert sigma(cycle_pg(3)) == 6
    assert sigma(k4()) == 10
    assert sigma(cycle_pg(7)) == 14


def test_identify_c4_diagonal():
    h = identify(cycle_pg(4), [[0, 2]])
    assert h.n == 3 and h.edge_count == 2
    assert h.origin[0] == (0, 2)


def test_identify_adjacent_is_rejected():
    with pytest.raises(ValueError, match="loop"):
        identify(cycle_pg(4), [[0, 1]])


def test_reduce_graph_tracks_origin():
    h = reduce_graph(cycle_pg(8), delete=[1], parts=[[0, 2]])
    assert h.n == 6 and sigma(h) < sigma(cycle_pg(8))
    assert any(o == (0, 2) for o in h.origin)


def test_graph_rejects_asymmetry():
    with pytest.raises(GraphFormatError):
        Graph([[1], []])
