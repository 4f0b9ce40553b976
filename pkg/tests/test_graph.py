import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chromagraph.graph import (
    EdgeListError,
    EdgeOrdering,
    Graph,
    Graph6Error,
    GraphError,
    encode_graph6,
    enumerate_labeled_connected,
    enumerate_trees,
    generate_family,
    parse_edge_list,
    parse_graph6,
    stats,
)

import oracles


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


class TestGraph6:
    def test_single_edge_on_three_vertices(self):
        # "B_" sets only the first bit: the pair (0, 1)
        assert parse_graph6("B_") == Graph.from_edges(3, [(0, 1)])

    def test_empty_on_three_vertices(self):
        assert parse_graph6("B?") == Graph(3, frozenset())

    def test_triangle(self):
        k3 = Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
        assert encode_graph6(k3) == "Bw"
        assert parse_graph6("Bw") == k3

    def test_known_encodings(self):
        # bits by hand: 101001 100100 -> "h" "c"
        c5 = generate_family("cycle", 5)
        assert encode_graph6(c5) == "Dhc"
        assert parse_graph6(">>graph6<<Dhc") == c5

    def test_empty_string(self):
        with pytest.raises(Graph6Error) as err:
            parse_graph6("")
        assert err.value.offset == 0

    def test_truncated(self):
        with pytest.raises(Graph6Error, match="truncated"):
            parse_graph6("D")

    def test_bad_character(self):
        with pytest.raises(Graph6Error) as err:
            parse_graph6("Bw!")
        assert err.value.offset == 2

    def test_long_form(self):
        g = generate_family("path", 70)
        text = encode_graph6(g)
        assert text.startswith("~")
        assert parse_graph6(text) == g

    @given(graphs())
    def test_round_trip(self, g):
        assert parse_graph6(encode_graph6(g)) == g


class TestEdgeList:
    def test_triangle(self):
        assert parse_edge_list("3\n0 1\n1 2\n0 2") == generate_family("complete", 3)

    def test_duplicates_collapse(self):
        g = parse_edge_list("2\n0 1\n0 1")
        assert g.m == 1

    def test_out_of_range(self):
        with pytest.raises(EdgeListError, match="out of range") as err:
            parse_edge_list("2\n0 2")
        assert err.value.line == 2

    @pytest.mark.parametrize("text", ["2\n1 1", "3\n0 x", "", "0\n"])
    def test_rejects(self, text):
        with pytest.raises(EdgeListError):
            parse_edge_list(text)


class TestFamilies:
    @pytest.mark.parametrize(
        "kind, n, m, delta",
        [("complete", 4, 6, 3), ("path", 5, 4, 2), ("cycle", 6, 6, 2), ("star", 5, 4, 4), ("complete", 1, 0, 0)],
    )
    def test_sizes(self, kind, n, m, delta):
        g = generate_family(kind, n)
        assert (g.m, g.max_degree()) == (m, delta)

    def test_random_tree(self):
        g = generate_family("random_tree", 8, seed=1)
        assert g.m == 7 and g.is_connected()

    def test_random_is_deterministic(self):
        a = generate_family("random_connected", 9, seed=5)
        assert a == generate_family("random_connected", 9, seed=5)
        assert a.is_connected()

    def test_errors(self):
        with pytest.raises(GraphError):
            generate_family("cycle", 2)
        with pytest.raises(GraphError):
            generate_family("random_tree", 4)
        with pytest.raises(GraphError):
            generate_family("wheel", 4)


class TestEnumeration:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_counts_match_brute_force(self, n):
        gs = list(enumerate_labeled_connected(n))
        assert len(gs) == oracles.connected_count(n)
        assert len(set(gs)) == len(gs)
        assert all(g.is_connected() for g in gs)

    def test_frozen_counts(self):
        assert [sum(1 for _ in enumerate_labeled_connected(n)) for n in (2, 3, 4)] == [1, 4, 38]

    def test_limit(self):
        with pytest.raises(GraphError):
            next(enumerate_labeled_connected(7))

    def test_trees(self):
        # unlabeled tree counts
        assert [len(enumerate_trees(n)) for n in range(1, 11)] == [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]


class TestStats:
    def test_k4(self, k4):
        assert stats(k4) == stats(k4).__class__(4, 6, 3, 4, True)

    def test_c5(self, c5):
        s = stats(c5)
        assert (s.n, s.m, s.max_degree, s.triangles, s.connected) == (5, 5, 2, 0, True)

    def test_disconnected(self):
        assert not stats(Graph.from_edges(4, [(0, 1), (2, 3)])).connected

    @settings(max_examples=60)
    @given(graphs(max_n=8))
    def test_against_brute_force(self, g):
        s = stats(g)
        assert s.m == len(g.edges)
        assert s.max_degree == max(len(a) for a in g.adjacency)
        assert s.triangles == oracles.triangles(g.n, g.edge_list)
        if s.connected and s.n >= 2:
            assert s.n <= 2 * s.m <= s.max_degree * s.n


class TestOrdering:
    def test_canonical_is_lexicographic(self, c4):
        order = EdgeOrdering.canonical(c4)
        assert order.by_rank() == sorted(c4.edges)

    def test_random_is_bijection(self, k4):
        order = EdgeOrdering.random(k4, random.Random(3))
        assert sorted(order.values()) == list(range(1, 7))

    def test_rejects_non_bijection(self, k3):
        with pytest.raises(GraphError):
            EdgeOrdering({(0, 1): 1, (0, 2): 1, (1, 2): 2})
        with pytest.raises(GraphError):
            EdgeOrdering({(0, 1): 1}, k3)

    def test_graph_rejects_loops(self):
        with pytest.raises(GraphError):
            Graph.from_edges(2, [(1, 1)])
