"""Support-enumeration oracle."""

from fractions import Fraction

import pytest

from nashpoly.games import BimatrixGame, coordination, positivize, random_nondegenerate
from nashpoly.oracle import SupportDegeneracyError, check_best_response, support_enumeration
from nashpoly.rational import Matrix

F = Fraction


def test_coordination_2_has_three_profiles():
    profiles = support_enumeration(coordination(2))
    assert [(p.x, p.y) for p in profiles] == [
        ((F(1), F(0)), (F(1), F(0))),
        ((F(1, 2), F(1, 2)), (F(1, 2), F(1, 2))),
        ((F(0), F(1)), (F(0), F(1))),
    ]


def test_matching_pennies_unique_mixed():
    mp = positivize(
        BimatrixGame(Matrix([[1, -1], [-1, 1]]), Matrix([[-1, 1], [1, -1]]))
    )
    profiles = support_enumeration(mp)
    assert len(profiles) == 1
    p = profiles[0]
    assert p.x == p.y == (F(1, 2), F(1, 2))
    assert p.u == p.v == 2


def test_coordination_counts_are_two_to_n_minus_one():
    for n in (1, 2, 3):
        assert len(support_enumeration(coordination(n))) == 2**n - 1


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_5x5_counts_odd_and_at_most_31(seed):
    g = random_nondegenerate(5, 5, seed=seed)
    profiles = support_enumeration(g)
    assert len(profiles) % 2 == 1
    assert len(profiles) <= 31


def test_profiles_are_mutual_best_responses():
    for seed in (0, 1):
        g = random_nondegenerate(3, 4, seed=seed)
        for p in support_enumeration(g):
            assert check_best_response(p.x, p.y, g) == (True, True)


def test_payoffs_are_the_equalized_values():
    for p in support_enumeration(coordination(2)):
        xa = sum(
            p.x[i] * coordination(2).a[i, j] * p.y[j] for i in range(2) for j in range(2)
        )
        assert xa == p.u


def test_equal_and_all_support_modes_agree_on_nondegenerate_games():
    g = random_nondegenerate(3, 3, seed=5)
    assert support_enumeration(g, equal_only=True) == support_enumeration(
        g, equal_only=False
    )


class TestCheckBestResponse:
    def test_pure_equilibrium(self):
        e1 = (F(1), F(0))
        assert check_best_response(e1, e1, coordination(2)) == (True, True)

    def test_mismatched_pures(self):
        e1, e2 = (F(1), F(0)), (F(0), F(1))
        p1, p2 = check_best_response(e1, e2, coordination(2))
        assert not p1  # (A e2)_1 = 0 < 1

    def test_mixed_profile(self):
        half = (F(1, 2), F(1, 2))
        assert check_best_response(half, half, coordination(2)) == (True, True)


class TestDegeneracyDetection:
    def test_duplicate_rows_abort(self):
        g = BimatrixGame(Matrix([[1, 1], [1, 1]]), Matrix.identity(2))
        with pytest.raises(SupportDegeneracyError):
            support_enumeration(g)

    def test_tie_outside_support_aborts(self):
        # row 2 ties with row 1 against y = e1
        g = BimatrixGame(Matrix([[2, 1], [2, 3]]), Matrix([[1, 2], [2, 1]]))
        with pytest.raises(SupportDegeneracyError):
            support_enumeration(g)
