"""Stable-set bound solver, clique bounds, facet bounds."""

import random
from itertools import combinations

import pytest

from nashpoly.bounds import (
    BoundResult,
    Graph,
    GraphFileError,
    clique_bound,
    dump_graph,
    facet_stable_set_bound,
    find_stable_set,
    greedy_clique_cover,
    max_stable_size,
    parse_graph,
    stable_set_bound,
    verify_witness,
)


def hypercube_graph(c):
    n = 1 << c
    edges = [(u, u ^ (1 << b)) for u in range(n) for b in range(c) if u < u ^ (1 << b)]
    return Graph(n, edges)


def complete_graph(n):
    return Graph(n, list(combinations(range(n), 2)))


def petersen_graph():
    edges = (
        [(i, (i + 1) % 5) for i in range(5)]
        + [(i + 5, ((i + 2) % 5) + 5) for i in range(5)]
        + [(i, i + 5) for i in range(5)]
    )
    return Graph(10, edges)


def brute_force_pair_bound(g: Graph):
    """Oracle: enumerate every pair of disjoint equal-size stable sets."""
    stables = []
    for mask in range(1 << g.V):
        vs = [v for v in range(g.V) if mask >> v & 1]
        if all(not (g.adj[a] >> b & 1) for a, b in combinations(vs, 2)):
            stables.append(mask)
    by_size = {}
    for m in stables:
        by_size.setdefault(m.bit_count(), []).append(m)
    for s in sorted(by_size, reverse=True):
        if any(a & b == 0 for a in by_size[s] for b in by_size[s]):
            return 2 * s
    return 0


def random_graph(v, p, rng):
    edges = [(a, b) for a, b in combinations(range(v), 2) if rng.random() < p]
    return Graph(v, edges)


class TestStableSetBound:
    def test_four_cube(self):
        res = stable_set_bound(hypercube_graph(4))
        assert res.bound == 16 and res.obstruction_count == 0
        assert verify_witness(hypercube_graph(4), res)

    def test_triangle(self):
        assert stable_set_bound(complete_graph(3)).bound == 2

    def test_petersen(self):
        # the five maximum stable sets of the Petersen graph pairwise
        # intersect, so the best disjoint equal-size pair is 3 + 3
        g = petersen_graph()
        assert brute_force_pair_bound(g) == 6
        assert stable_set_bound(g).bound == 6

    def test_empty_graph(self):
        res = stable_set_bound(Graph(0, []))
        assert res.bound == 0 and res.witness == ((), ())

    def test_single_vertex(self):
        assert stable_set_bound(Graph(1, [])).bound == 0

    def test_two_isolated(self):
        res = stable_set_bound(Graph(2, []))
        assert res.bound == 2 and res.witness == ((0,), (1,))

    def test_five_cube(self):
        assert stable_set_bound(hypercube_graph(5)).bound == 32

    def test_bound_is_even_and_capped(self):
        rng = random.Random(0)
        for _ in range(20):
            g = random_graph(rng.randint(1, 9), rng.random(), rng)
            res = stable_set_bound(g)
            assert res.bound % 2 == 0
            assert res.bound <= g.V
            assert verify_witness(g, res)

    def test_matches_brute_force_small(self):
        rng = random.Random(1)
        for _ in range(30):
            g = random_graph(rng.randint(0, 9), rng.random(), rng)
            assert stable_set_bound(g).bound == brute_force_pair_bound(g)

    def test_lex_min_witness(self):
        # path 0-1-2: disjointness is the only cross-set constraint, so the
        # lexicographically smallest optimal pair is ({0}, {1})
        res = stable_set_bound(Graph(3, [(0, 1), (1, 2)]))
        assert res.bound == 2 and res.witness == ((0,), (1,))


class TestCliqueBound:
    def test_empty_clique_list(self):
        g = petersen_graph()
        assert clique_bound(g, []) == 10

    def test_k4_with_itself(self):
        g = complete_graph(4)
        assert clique_bound(g, [(0, 1, 2, 3)]) == 2
        assert stable_set_bound(g).bound == 2

    def test_invalid_not_a_clique(self):
        g = Graph(3, [(0, 1)])
        with pytest.raises(ValueError):
            clique_bound(g, [(0, 1, 2)])

    def test_invalid_overlapping(self):
        g = complete_graph(6)
        with pytest.raises(ValueError):
            clique_bound(g, [(0, 1, 2), (2, 3, 4)])

    def test_dominance_on_random_graphs(self):
        rng = random.Random(5)
        for _ in range(25):
            g = random_graph(rng.randint(1, 10), rng.random(), rng)
            cover = greedy_clique_cover(g)
            assert clique_bound(g, cover) >= stable_set_bound(g).bound


class TestGreedyCliqueCover:
    def test_triangle_free(self):
        assert greedy_clique_cover(hypercube_graph(3)) == []

    def test_two_triangles_plus_isolated(self):
        g = Graph(7, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        assert greedy_clique_cover(g) == [(0, 1, 2), (3, 4, 5)]

    def test_cliques_are_valid_input(self):
        g = complete_graph(7)
        cover = greedy_clique_cover(g)
        clique_bound(g, cover)  # must not raise
        assert cover and len(cover[0]) == 7


class TestFacetBound:
    def test_five_cube_facet_is_four_cube(self):
        g = hypercube_graph(5)
        facet = [v for v in range(32) if v & 1 == 0]  # bit-0 = 0 face
        res = facet_stable_set_bound(g, facet)
        assert res.bound == 16

    def test_simplex_facet(self):
        g = complete_graph(6)
        res = facet_stable_set_bound(g, [0, 1, 2, 3, 4])
        assert res.bound == 2

    def test_witness_in_original_ids(self):
        g = Graph(5, [(2, 3)])
        res = facet_stable_set_bound(g, [2, 3, 4])
        assert set(res.witness[0]) | set(res.witness[1]) <= {2, 3, 4}
        assert res.bound == 2


class TestGraphIO:
    def test_roundtrip(self):
        g = petersen_graph()
        assert parse_graph(dump_graph(g)) == g

    @pytest.mark.parametrize(
        "body",
        ["", "2\n", "2 1\n", "2 1\n0 2\n", "2 2\n0 1\n0 1\n", "1 1\n0 0\n"],
    )
    def test_errors(self, body):
        with pytest.raises(GraphFileError):
            parse_graph(body)


class TestHelpers:
    def test_max_stable_size_cube(self):
        g = hypercube_graph(4)
        assert max_stable_size(g.adj, (1 << 16) - 1) == 8

    def test_find_stable_set_lex(self):
        g = Graph(4, [(0, 1)])
        assert find_stable_set(g.adj, 0b1111, 3) == 0b1101  # {0, 2, 3}
        assert find_stable_set(g.adj, 0b1111, 4) is None
