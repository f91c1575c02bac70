"""Equilibrium enumeration, index theory, Lemke-Howson paths."""

from itertools import combinations

import pytest

from nashpoly.equilibrium import (
    LHPath,
    compute_index,
    enumerate_equilibria,
    lemke_howson,
    rescaled_profile,
    verify_parity,
)
from nashpoly.games import (
    BimatrixGame,
    DegenerateGameError,
    build_best_response_pair,
    coordination,
    random_nondegenerate,
)
from nashpoly.oracle import support_enumeration
from nashpoly.rational import Matrix


def pair_for(game):
    return build_best_response_pair(game)


def eq_map(pair):
    return {e.key(): e for e in enumerate_equilibria(pair)}


class TestCoordination2:
    def test_four_equilibria_three_nash(self):
        eqs = enumerate_equilibria(pair_for(coordination(2)))
        assert len(eqs) == 4
        assert sum(1 for e in eqs if not e.is_artificial) == 3

    def test_indices_match_hand_determinants(self):
        # normals in label order give det -1 for both pure pairs (index +1,
        # d = 4 even) and det +1 for the mixed and artificial pairs (index -1)
        pair = pair_for(coordination(2))
        coords_p = {v.coords: i for i, v in enumerate(pair.p.vertices)}
        coords_q = {v.coords: i for i, v in enumerate(pair.q.vertices)}
        zero, one = coords_p[(0, 0)], coords_p[(1, 1)]
        e1, e2 = coords_p[(1, 0)], coords_p[(0, 1)]
        got = {e.key(): e.index for e in enumerate_equilibria(pair)}
        assert got[(zero, coords_q[(0, 0)])] == -1
        assert got[(one, coords_q[(1, 1)])] == -1
        assert got[(e1, coords_q[(1, 0)])] == +1
        assert got[(e2, coords_q[(0, 1)])] == +1


class TestSmallGames:
    def test_1x1(self):
        g = BimatrixGame(Matrix([[1]]), Matrix([[1]]))
        eqs = enumerate_equilibria(pair_for(g))
        assert len(eqs) == 2
        report = verify_parity(eqs)
        assert report.passed and report.n_positive == 1

    def test_coordination_5(self):
        eqs = enumerate_equilibria(pair_for(coordination(5)))
        assert len(eqs) == 32
        assert sum(1 for e in eqs if not e.is_artificial) == 31
        report = verify_parity(eqs)
        assert report.passed and report.n_positive == 16

    def test_coordination_3_parity(self):
        report = verify_parity(enumerate_equilibria(pair_for(coordination(3))))
        assert report.count == 8 and report.n_positive == 4 and report.passed

    def test_degenerate_game_propagates(self):
        g = BimatrixGame(Matrix([[1, 1], [1, 1]]), Matrix.identity(2))
        with pytest.raises(DegenerateGameError):
            enumerate_equilibria(build_best_response_pair(g, check=False))


class TestIndexTheorems:
    @pytest.mark.parametrize("seed", range(6))
    def test_index_sum_zero_random(self, seed):
        g = random_nondegenerate(3, 3, seed=seed)
        eqs = enumerate_equilibria(pair_for(g))
        assert sum(e.index for e in eqs) == 0
        assert verify_parity(eqs).passed

    def test_artificial_index_minus_one(self):
        for n in (1, 2, 3):
            eqs = enumerate_equilibria(pair_for(coordination(n)))
            art = next(e for e in eqs if e.is_artificial)
            assert art.index == -1

    @pytest.mark.parametrize("seed", range(4))
    def test_edge_property(self, seed):
        # adjacent equilibrium vertices carry opposite-index equilibria
        g = random_nondegenerate(3, 4, seed=seed)
        pair = pair_for(g)
        eqs = enumerate_equilibria(pair)
        for poly, side in ((pair.p, 0), (pair.q, 1)):
            index_of = {}
            for e in eqs:
                index_of[e.key()[side]] = e.index
            for u, v in poly.graph.edges:
                if u in index_of and v in index_of:
                    assert index_of[u] != index_of[v]

    @pytest.mark.parametrize("seed", range(4))
    def test_index_classes_are_stable_sets(self, seed):
        g = random_nondegenerate(4, 3, seed=seed)
        pair = pair_for(g)
        eqs = enumerate_equilibria(pair)
        for poly, side in ((pair.p, 0), (pair.q, 1)):
            adjacency = {frozenset(e) for e in poly.graph.edges}
            for sign in (+1, -1):
                cls = [e.key()[side] for e in eqs if e.index == sign]
                for a, b in combinations(cls, 2):
                    assert frozenset((a, b)) not in adjacency


class TestStructure:
    @pytest.mark.parametrize("seed", range(4))
    def test_label_partition(self, seed):
        g = random_nondegenerate(3, 3, seed=seed)
        pair = pair_for(g)
        full = set(range(1, 7))
        for e in enumerate_equilibria(pair):
            lx = pair.p.vertices[e.x_vertex].label_set
            ly = pair.q.vertices[e.y_vertex].label_set
            assert len(lx) == 3 and len(ly) == 3
            assert set(lx) | set(ly) == full and not set(lx) & set(ly)

    @pytest.mark.parametrize("seed", range(4))
    def test_partner_uniqueness(self, seed):
        g = random_nondegenerate(3, 4, seed=seed)
        eqs = enumerate_equilibria(pair_for(g))
        xs = [e.x_vertex for e in eqs]
        ys = [e.y_vertex for e in eqs]
        assert len(set(xs)) == len(xs) and len(set(ys)) == len(ys)

    @pytest.mark.parametrize("m,n,seed", [(2, 2, 0), (3, 3, 1), (4, 3, 2), (5, 5, 3)])
    def test_oracle_equivalence(self, m, n, seed):
        g = random_nondegenerate(m, n, seed=seed)
        pair = pair_for(g)
        engine = sorted(
            rescaled_profile(pair, e)
            for e in enumerate_equilibria(pair)
            if not e.is_artificial
        )
        oracle = sorted((p.x, p.y) for p in support_enumeration(g))
        assert engine == oracle

    def test_rescaled_profile_artificial_is_none(self):
        pair = pair_for(coordination(2))
        art = next(e for e in enumerate_equilibria(pair) if e.is_artificial)
        assert rescaled_profile(pair, art) is None


class TestLemkeHowson:
    def test_from_artificial_reaches_positive_pure(self):
        pair = pair_for(coordination(2))
        art = next(e for e in enumerate_equilibria(pair) if e.is_artificial)
        path = lemke_howson(pair, art, 1)
        assert path.end.index == +1 and not path.end.is_artificial
        # hand trace: (0,0)x(0,0) -> (1,0)x(0,0) -> (1,0)x(1,0)
        coords = [
            (pair.p.vertices[xi].coords, pair.q.vertices[yi].coords)
            for xi, yi in path.pairs
        ]
        assert coords == [
            ((0, 0), (0, 0)),
            ((1, 0), (0, 0)),
            ((1, 0), (1, 0)),
        ]

    @pytest.mark.parametrize("seed", range(4))
    def test_endpoints_have_opposite_index(self, seed):
        g = random_nondegenerate(3, 3, seed=seed)
        pair = pair_for(g)
        eqs = enumerate_equilibria(pair)
        for start in eqs:
            for h in range(1, 7):
                path = lemke_howson(pair, start, h)
                assert path.end.index == -path.start.index

    @pytest.mark.parametrize("seed", range(3))
    def test_paths_are_reversible(self, seed):
        g = random_nondegenerate(3, 2, seed=seed)
        pair = pair_for(g)
        eqs = enumerate_equilibria(pair)
        for start in eqs:
            for h in range(1, 6):
                fwd = lemke_howson(pair, start, h)
                back = lemke_howson(pair, fwd.end, h)
                assert back.end.key() == start.key()
                assert back.pairs == tuple(reversed(fwd.pairs))

    def test_interior_pairs_almost_completely_labeled(self):
        pair = pair_for(coordination(3))
        eqs = enumerate_equilibria(pair)
        art = next(e for e in eqs if e.is_artificial)
        full = set(range(1, 7))
        for h in range(1, 7):
            path = lemke_howson(pair, art, h)
            for xi, yi in path.pairs[1:-1]:
                labels = sorted(
                    tuple(pair.p.vertices[xi].labels) + tuple(pair.q.vertices[yi].labels)
                )
                assert set(labels) == full - {h}
                assert len(labels) == 6  # one duplicate, one missing

    def test_invalid_missing_label(self):
        pair = pair_for(coordination(2))
        art = next(e for e in enumerate_equilibria(pair) if e.is_artificial)
        with pytest.raises(ValueError):
            lemke_howson(pair, art, 5)

    @pytest.mark.parametrize("seed", range(3))
    def test_h_almost_subgraph_structure(self, seed):
        # within the product graph, h-almost completely labeled pairs induce
        # paths: degree <= 2, endpoints exactly the completely labeled pairs
        g = random_nondegenerate(2, 3, seed=seed)
        pair = pair_for(g)
        full = set(range(1, 6))
        complete = {e.key() for e in enumerate_equilibria(pair)}
        p_adj = {frozenset(e) for e in pair.p.graph.edges}
        q_adj = {frozenset(e) for e in pair.q.graph.edges}
        for h in full:
            needed = full - {h}
            nodes = [
                (xi, yi)
                for xi in range(len(pair.p.vertices))
                for yi in range(len(pair.q.vertices))
                if needed
                <= (pair.p.vertices[xi].label_set | pair.q.vertices[yi].label_set)
            ]
            node_set = set(nodes)

            def neighbors(node):
                xi, yi = node
                out = []
                for xj in range(len(pair.p.vertices)):
                    if frozenset((xi, xj)) in p_adj and (xj, yi) in node_set:
                        out.append((xj, yi))
                for yj in range(len(pair.q.vertices)):
                    if frozenset((yi, yj)) in q_adj and (xi, yj) in node_set:
                        out.append((xi, yj))
                return out

            for node in nodes:
                deg = len(neighbors(node))
                if node in complete:
                    assert deg == 1
                else:
                    assert deg <= 2
