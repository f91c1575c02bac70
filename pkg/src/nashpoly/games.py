"""Bimatrix games and their best-response polytopes.

An m x n game (A, B) yields the polytopes

    P = {x in R^m : x >= 0, B^T x <= 1}   labels: 1..m (nonneg), m+1..m+n (rows)
    Q = {y in R^n : Ay <= 1, y >= 0}      labels: 1..m (rows), m+1..m+n (nonneg)

A point's labels are the labels of its binding inequalities; a vertex pair
covering all of [m+n] is an equilibrium (including the artificial pair of
zero vectors).  Everything here is exact rational arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from nashpoly.polytope import (
    LabeledPolytope,
    VertexRecord,
    assert_full_dimensional,
    degeneracy_witness,
)
from nashpoly.rational import Matrix, format_rational, parse_rational


class GameFileError(ValueError):
    """Malformed game file; message carries the line number."""


class DegenerateGameError(ValueError):
    """Game violates the non-degeneracy assumption.

    Carries a structured witness: the polytope name and the offending vertex
    (more labels than the polytope's dimension).
    """

    def __init__(self, polytope_name: str, vertex: VertexRecord):
        self.polytope_name = polytope_name
        self.vertex = vertex
        coords = "(" + ", ".join(format_rational(c) for c in vertex.coords) + ")"
        super().__init__(
            f"degenerate game: point {coords} in {polytope_name} has "
            f"{len(vertex.binding)} labels {sorted(vertex.labels)}"
        )


@dataclass(frozen=True)
class BimatrixGame:
    """Payoff matrices (A, B); labels 1..m are player 1's pure strategies,
    m+1..m+n player 2's."""

    a: Matrix
    b: Matrix

    def __post_init__(self):
        if (self.a.rows, self.a.cols) != (self.b.rows, self.b.cols):
            raise ValueError("A and B must have identical shape")

    @property
    def m(self) -> int:
        return self.a.rows

    @property
    def n(self) -> int:
        return self.a.cols


@dataclass
class BestResponsePair:
    """P and Q with vertices and graphs enumerated."""

    game: BimatrixGame
    p: LabeledPolytope
    q: LabeledPolytope

    @property
    def m(self) -> int:
        return self.game.m

    @property
    def n(self) -> int:
        return self.game.n


def boundedness_guaranteed(g: BimatrixGame) -> bool:
    """Sufficient condition for P and Q to be polytopes: A and B^T are
    nonnegative with no zero column."""
    a_ok = all(x >= 0 for row in g.a for x in row) and all(
        any(g.a[i, j] > 0 for i in range(g.m)) for j in range(g.n)
    )
    b_ok = all(x >= 0 for row in g.b for x in row) and all(
        any(g.b[i, j] > 0 for j in range(g.n)) for i in range(g.m)
    )
    return a_ok and b_ok


def positivize(g: BimatrixGame) -> BimatrixGame:
    """Shift each payoff matrix to make every entry positive.

    The shift is 0 when the minimum entry is already positive, else
    1 - min.  Adding a constant to a payoff matrix never changes best
    responses, so the Nash equilibria are exactly preserved.
    """

    def alpha(m: Matrix) -> Fraction:
        lo = m.min_entry()
        return Fraction(0) if lo > 0 else 1 - lo

    return BimatrixGame(g.a.shift(alpha(g.a)), g.b.shift(alpha(g.b)))


def projective_rescale(y: Sequence[Fraction], alpha) -> tuple[Fraction, ...]:
    """The face-lattice-preserving map y -> y / (1 + alpha * sum(y)) that links
    a best-response polytope before and after a payoff shift by alpha."""
    s = sum(Fraction(c) for c in y)
    scale = 1 + Fraction(alpha) * s
    return tuple(Fraction(c) / scale for c in y)


def build_best_response_pair(g: BimatrixGame, check: bool = True) -> BestResponsePair:
    """Construct P and Q with the label order above and enumerate vertices.

    With check=True, raises GeometryContractViolation when either polytope is
    not a full-dimensional polytope (caller should positivize first) and
    DegenerateGameError when a vertex carries too many labels.
    """
    m, n = g.m, g.n
    p = LabeledPolytope(m, g.b.transpose(), list(range(m + 1, m + n + 1)))
    q = LabeledPolytope(
        n, g.a, list(range(1, m + 1)), nonneg_labels=list(range(m + 1, m + n + 1))
    )
    pair = BestResponsePair(game=g, p=p, q=q)
    if check:
        assert_full_dimensional(p)
        assert_full_dimensional(q)
        ok, name, witness = _degeneracy_scan(pair)
        if not ok:
            raise DegenerateGameError(name, witness)
    return pair


def _degeneracy_scan(pair: BestResponsePair):
    w = degeneracy_witness(pair.p.vertices, pair.m)
    if w is not None:
        return False, "P", w
    w = degeneracy_witness(pair.q.vertices, pair.n)
    if w is not None:
        return False, "Q", w
    return True, "", None


def is_nondegenerate(pair: BestResponsePair) -> tuple[bool, VertexRecord | None]:
    """True iff every vertex of P has exactly m labels and of Q exactly n;
    otherwise the offending vertex is the witness."""
    ok, _, witness = _degeneracy_scan(pair)
    return ok, witness


def unit_game_from_labeled_polytope(p: LabeledPolytope) -> BimatrixGame:
    """The d x k game (U, C^T) whose non-artificial completely labeled vertices
    are the polytope's; U has column j equal to the unit vector of label ell(j)."""
    d, k = p.dim, p.k
    if k == 0:
        raise ValueError("polytope has no C rows")
    for j in range(k):
        if not 1 <= p.labels[d + j] <= d:
            raise ValueError(f"row label {p.labels[d + j]} outside [1, {d}]")
    zero, one = Fraction(0), Fraction(1)
    u = Matrix(
        [[one if p.labels[d + j] == i + 1 else zero for j in range(k)] for i in range(d)]
    )
    return BimatrixGame(u, p.extra_rows.transpose())


def coordination(n: int) -> BimatrixGame:
    """The n x n coordination game: both payoff matrices are the identity."""
    if n < 1:
        raise ValueError("n must be >= 1")
    eye = Matrix.identity(n)
    return BimatrixGame(eye, eye)


_PERTURB_PRIMES = (100003, 100019)


def random_game(m: int, n: int, rng: random.Random) -> BimatrixGame:
    """One draw: integer payoffs in [1, 9] plus distinct rational perturbations
    over a large prime denominator (one prime per matrix)."""
    mats = []
    for prime in _PERTURB_PRIMES:
        numerators = rng.sample(range(1, prime), m * n)
        entries = [
            [
                Fraction(rng.randint(1, 9)) + Fraction(numerators[i * n + j], prime)
                for j in range(n)
            ]
            for i in range(m)
        ]
        mats.append(Matrix(entries))
    return BimatrixGame(mats[0], mats[1])


def random_nondegenerate(m: int, n: int, seed: int) -> BimatrixGame:
    """Seeded generator that redraws until the game is non-degenerate."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be >= 1")
    rng = random.Random(seed)
    while True:
        g = random_game(m, n, rng)
        pair = build_best_response_pair(g, check=False)
        ok, _ = is_nondegenerate(pair)
        if ok:
            return g


# Game file: line 1 "m n"; m rows of A; m rows of B.  '#' starts a comment.


def parse_game(text: str) -> BimatrixGame:
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise GameFileError("empty game file")
    lineno, header = rows[0]
    if len(header) != 2:
        raise GameFileError(f"line {lineno}: expected header 'm n'")
    try:
        m, n = int(header[0]), int(header[1])
    except ValueError as exc:
        raise GameFileError(f"line {lineno}: expected header 'm n'") from exc
    if m < 1 or n < 1:
        raise GameFileError(f"line {lineno}: m and n must be positive")
    if len(rows) != 1 + 2 * m:
        raise GameFileError(f"expected {2 * m} matrix rows, found {len(rows) - 1}")

    def read_matrix(offset: int) -> Matrix:
        data = []
        for lineno, tokens in rows[offset : offset + m]:
            if len(tokens) != n:
                raise GameFileError(f"line {lineno}: expected {n} entries, found {len(tokens)}")
            try:
                data.append([parse_rational(t) for t in tokens])
            except ValueError as exc:
                raise GameFileError(f"line {lineno}: {exc}") from exc
        return Matrix(data)

    return BimatrixGame(read_matrix(1), read_matrix(1 + m))


def load_game(path: str | Path) -> BimatrixGame:
    return parse_game(Path(path).read_text())


def dump_game(g: BimatrixGame) -> str:
    lines = [f"{g.m} {g.n}"]
    for mat in (g.a, g.b):
        for row in mat:
            lines.append(" ".join(format_rational(x) for x in row))
    return "\n".join(lines) + "\n"
