"""Equilibrium enumeration, indices, and Lemke-Howson paths.

An equilibrium is a completely labeled vertex pair of P x Q.  Its index is
computed on the product polytope Z = P x Q (dimension d = m + n, constraint
block C = [[0, A], [B^T, 0]] with row j labeled j): stack the facet normals
binding at z = (x, y) in label order and take the determinant sign, times
(-1)^(d+1) so that the artificial equilibrium gets index -1.

Lemke-Howson is run combinatorially on the precomputed vertex graphs: paths
alternate between P and Q, each step leaving the facet of the label that was
just duplicated, until the missing label is picked up again.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from nashpoly.games import BestResponsePair, DegenerateGameError, is_nondegenerate
from nashpoly.polytope import LabeledPolytope
from nashpoly.rational import Matrix, det_sign


class LHError(RuntimeError):
    """Lemke-Howson traversal violated a structural guarantee (cycle or stuck
    pivot) — possible only on invalid (degenerate) input."""


@dataclass(frozen=True)
class Equilibrium:
    """A completely labeled vertex pair with its index."""

    x_vertex: int
    y_vertex: int
    is_artificial: bool
    index: int

    def key(self) -> tuple[int, int]:
        return (self.x_vertex, self.y_vertex)


@dataclass(frozen=True)
class LHPath:
    """An h-almost completely labeled path between two equilibria."""

    missing_label: int
    pairs: tuple[tuple[int, int], ...]
    start: Equilibrium
    end: Equilibrium


@dataclass(frozen=True)
class ParityReport:
    count: int
    n_positive: int
    n_negative: int
    artificial_negative: bool

    @property
    def passed(self) -> bool:
        return (
            self.count % 2 == 0
            and self.n_positive == self.n_negative
            and self.artificial_negative
        )


def _require_nondegenerate(pair: BestResponsePair) -> None:
    ok, witness = is_nondegenerate(pair)
    if not ok:
        name = "P" if len(witness.coords) == pair.m else "Q"
        raise DegenerateGameError(name, witness)


def compute_index(pair: BestResponsePair, x_vertex: int, y_vertex: int) -> int:
    """Index of the completely labeled pair, per the product-polytope rule."""
    m, n = pair.m, pair.n
    d = m + n
    vx = pair.p.vertices[x_vertex]
    vy = pair.q.vertices[y_vertex]
    labels_x = vx.label_set
    zero, one = Fraction(0), Fraction(1)
    rows = []
    for label in range(1, d + 1):
        in_x = label in labels_x
        if in_x:
            if label <= m:  # x_label = 0
                row = [-one if t == label - 1 else zero for t in range(d)]
            else:  # (B^T x)_j = 1, j = label - m
                j = label - m - 1
                row = [pair.game.b[i, j] for i in range(m)] + [zero] * n
        else:
            if label <= m:  # (Ay)_label = 1
                row = [zero] * m + list(pair.game.a.row(label - 1))
            else:  # y_j = 0
                row = [-one if t == label - 1 else zero for t in range(d)]
        rows.append(row)
    sign = det_sign(Matrix(rows))
    if sign == 0:
        raise DegenerateGameError("P x Q", vx)
    return sign if (d + 1) % 2 == 0 else -sign


def enumerate_equilibria(pair: BestResponsePair) -> list[Equilibrium]:
    """All completely labeled vertex pairs of P x Q, each with its index.

    Includes the artificial equilibrium (0, 0).  Raises DegenerateGameError
    when either polytope has a vertex with too many labels, and verifies that
    every equilibrium vertex has a unique partner.
    """
    _require_nondegenerate(pair)
    full = frozenset(range(1, pair.m + pair.n + 1))
    found: list[Equilibrium] = []
    for xi, vx in enumerate(pair.p.vertices):
        for yi, vy in enumerate(pair.q.vertices):
            if vx.label_set | vy.label_set == full:
                found.append(
                    Equilibrium(
                        x_vertex=xi,
                        y_vertex=yi,
                        is_artificial=vx.is_zero() and vy.is_zero(),
                        index=compute_index(pair, xi, yi),
                    )
                )
    for side in (0, 1):
        ends = [eq.key()[side] for eq in found]
        if len(set(ends)) != len(ends):
            dup = next(v for v in ends if ends.count(v) > 1)
            raise DegenerateGameError(
                "PQ"[side], (pair.p, pair.q)[side].vertices[dup]
            )
    return found


def rescaled_profile(
    pair: BestResponsePair, eq: Equilibrium
) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]] | None:
    """Mixed strategies x/(1.x), y/(1.y); None for the artificial equilibrium."""
    if eq.is_artificial:
        return None
    x = pair.p.vertices[eq.x_vertex].coords
    y = pair.q.vertices[eq.y_vertex].coords
    sx, sy = sum(x), sum(y)
    return tuple(c / sx for c in x), tuple(c / sy for c in y)


def _drop_map(poly: LabeledPolytope) -> list[dict[int, int]]:
    """For each vertex, map each binding inequality to the neighbor reached by
    leaving that facet (well-defined on a simple polytope)."""
    maps: list[dict[int, int]] = [dict() for _ in poly.vertices]
    for u, v in poly.graph.edges:
        bu, bv = poly.vertices[u].binding, poly.vertices[v].binding
        (eu,) = tuple(bu - bv)
        (ev,) = tuple(bv - bu)
        maps[u][eu] = v
        maps[v][ev] = u
    return maps


def lemke_howson(pair: BestResponsePair, start: Equilibrium, missing_label: int) -> LHPath:
    """Follow the Lemke-Howson path from an equilibrium with the given label
    dropped; returns the path and the opposite-index endpoint equilibrium."""
    m, n = pair.m, pair.n
    d = m + n
    if not 1 <= missing_label <= d:
        raise ValueError(f"missing label {missing_label} outside [1, {d}]")
    _require_nondegenerate(pair)
    drop_p = _drop_map(pair.p)
    drop_q = _drop_map(pair.q)
    xi, yi = start.x_vertex, start.y_vertex
    pairs = [(xi, yi)]
    seen = {(xi, yi)}
    label = missing_label
    on_p = label in pair.p.vertices[xi].label_set
    if not on_p and label not in pair.q.vertices[yi].label_set:
        raise ValueError(f"start pair does not carry label {missing_label}")
    while True:
        if on_p:
            e = pair.p.inequality_with_label(label)
            old = pair.p.vertices[xi].binding
            xi = drop_p[xi].get(e)
            if xi is None:
                raise LHError("pivot left the polytope graph")
            (f,) = tuple(pair.p.vertices[xi].binding - old)
            label = pair.p.labels[f]
        else:
            e = pair.q.inequality_with_label(label)
            old = pair.q.vertices[yi].binding
            yi = drop_q[yi].get(e)
            if yi is None:
                raise LHError("pivot left the polytope graph")
            (f,) = tuple(pair.q.vertices[yi].binding - old)
            label = pair.q.labels[f]
        pairs.append((xi, yi))
        if label == missing_label:
            break
        if (xi, yi) in seen:
            raise LHError("revisited a vertex pair: cycle detected")
        seen.add((xi, yi))
        # the duplicate label is now held by the *other* polytope's vertex
        on_p = not on_p
    end = Equilibrium(
        x_vertex=xi,
        y_vertex=yi,
        is_artificial=pair.p.vertices[xi].is_zero() and pair.q.vertices[yi].is_zero(),
        index=compute_index(pair, xi, yi),
    )
    return LHPath(missing_label=missing_label, pairs=tuple(pairs), start=start, end=end)


def verify_parity(equilibria: list[Equilibrium]) -> ParityReport:
    """Even count, equal index classes, artificial in the -1 class."""
    n_pos = sum(1 for e in equilibria if e.index == +1)
    n_neg = sum(1 for e in equilibria if e.index == -1)
    artificial = [e for e in equilibria if e.is_artificial]
    return ParityReport(
        count=len(equilibria),
        n_positive=n_pos,
        n_negative=n_neg,
        artificial_negative=len(artificial) == 1 and artificial[0].index == -1,
    )
