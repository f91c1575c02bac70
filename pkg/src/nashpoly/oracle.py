"""Independent Nash solver by support enumeration.

Ground truth for the polytope-based equilibrium engine: for every pair of
equal-size supports, solve the exact payoff-equalization systems and keep
the solutions that are genuine mutual best responses.  Equal sizes suffice
for non-degenerate games, where the two supports of an equilibrium always
have the same cardinality; pass equal_only=False to sweep all support pairs
when diagnosing a suspected degenerate game.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from nashpoly.games import BimatrixGame
from nashpoly.rational import gauss_classify


class SupportDegeneracyError(ValueError):
    """A support system admitted multiple solutions or a payoff tie outside
    the support: the game is degenerate."""

    def __init__(self, rows: tuple[int, ...], cols: tuple[int, ...], reason: str):
        self.rows = rows
        self.cols = cols
        super().__init__(f"degenerate at supports {rows} x {cols}: {reason}")


@dataclass(frozen=True)
class NashProfile:
    """Mixed-strategy equilibrium with exact payoffs."""

    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]
    u: Fraction  # player 1's payoff
    v: Fraction  # player 2's payoff

    @property
    def support_x(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.x) if p > 0)

    @property
    def support_y(self) -> tuple[int, ...]:
        return tuple(j for j, p in enumerate(self.y) if p > 0)


def _equalization(payoffs: list[list[Fraction]]) -> tuple[str, tuple[Fraction, ...] | None]:
    """Solve sum_j payoffs[i][j] * w_j = t for all i, sum_j w_j = 1.

    Unknowns are (w, t); returns the gauss_classify verdict.
    """
    k = len(payoffs[0])
    rows = [list(row) + [Fraction(-1)] for row in payoffs]
    rows.append([Fraction(1)] * k + [Fraction(0)])
    rhs = [Fraction(0)] * len(payoffs) + [Fraction(1)]
    return gauss_classify(rows, rhs)


def support_enumeration(g: BimatrixGame, equal_only: bool = True) -> list[NashProfile]:
    """All Nash equilibria of a non-degenerate game, exactly.

    Raises SupportDegeneracyError on evidence of degeneracy: an
    underdetermined support system, a zero probability inside a support whose
    remaining checks pass, or a payoff tie with a pure strategy outside the
    support.
    """
    m, n = g.m, g.n
    profiles: list[NashProfile] = []
    size_pairs = (
        [(k, k) for k in range(1, min(m, n) + 1)]
        if equal_only
        else [(k1, k2) for k1 in range(1, m + 1) for k2 in range(1, n + 1)]
    )
    for k1, k2 in size_pairs:
        for rows_i in combinations(range(m), k1):
            for cols_j in combinations(range(n), k2):
                profile = _try_support(g, rows_i, cols_j)
                if profile is not None:
                    profiles.append(profile)
    profiles.sort(key=lambda p: (p.support_x, p.support_y, p.x, p.y))
    return profiles


def _try_support(
    g: BimatrixGame, rows_i: tuple[int, ...], cols_j: tuple[int, ...]
) -> NashProfile | None:
    m, n = g.m, g.n
    square = len(rows_i) == len(cols_j)
    kind_y, sol_y = _equalization([[g.a[i, j] for j in cols_j] for i in rows_i])
    if kind_y == "many":
        # only a square equalization system going underdetermined indicates
        # degeneracy; unequal supports are underdetermined by shape alone
        if square:
            raise SupportDegeneracyError(rows_i, cols_j, "player 2 support system underdetermined")
        return None
    if kind_y == "none":
        return None
    kind_x, sol_x = _equalization([[g.b[i, j] for i in rows_i] for j in cols_j])
    if kind_x == "many":
        if square:
            raise SupportDegeneracyError(rows_i, cols_j, "player 1 support system underdetermined")
        return None
    if kind_x == "none":
        return None
    y_vals, u = sol_y[:-1], sol_y[-1]
    x_vals, v = sol_x[:-1], sol_x[-1]
    if any(p < 0 for p in y_vals) or any(p < 0 for p in x_vals):
        return None
    x = [Fraction(0)] * m
    y = [Fraction(0)] * n
    for i, p in zip(rows_i, x_vals):
        x[i] = p
    for j, p in zip(cols_j, y_vals):
        y[j] = p
    # mutual best responses: nothing outside a support may beat the support payoff
    ties = False
    for r in range(m):
        if r in rows_i:
            continue
        payoff = sum(g.a[r, j] * y[j] for j in range(n))
        if payoff > u:
            return None
        if payoff == u:
            ties = True
    for c in range(n):
        if c in cols_j:
            continue
        payoff = sum(g.b[i, c] * x[i] for i in range(m))
        if payoff > v:
            return None
        if payoff == v:
            ties = True
    if ties:
        raise SupportDegeneracyError(rows_i, cols_j, "payoff tie outside the support")
    if any(p == 0 for p in y_vals) or any(p == 0 for p in x_vals):
        raise SupportDegeneracyError(rows_i, cols_j, "zero probability inside a support")
    return NashProfile(x=tuple(x), y=tuple(y), u=u, v=v)


def check_best_response(
    x: Sequence[Fraction], y: Sequence[Fraction], g: BimatrixGame
) -> tuple[bool, bool]:
    """Per-player best-response condition: every pure strategy in the support
    attains the maximal payoff against the opponent's mixed strategy."""
    x = [Fraction(p) for p in x]
    y = [Fraction(p) for p in y]
    row_payoffs = [sum(g.a[i, j] * y[j] for j in range(g.n)) for i in range(g.m)]
    col_payoffs = [sum(g.b[i, j] * x[i] for i in range(g.m)) for j in range(g.n)]
    u, v = max(row_payoffs), max(col_payoffs)
    p1 = all(row_payoffs[i] == u for i in range(g.m) if x[i] > 0)
    p2 = all(col_payoffs[j] == v for j in range(g.n) if y[j] > 0)
    return p1, p2
