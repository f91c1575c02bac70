"""Labeled polytopes in H-description and exact vertex enumeration.

A labeled polytope is Z = {z in R^d : -z <= 0, Cz <= 1} with a label attached
to every inequality: the nonnegativity row for z_i carries label i unless the
caller overrides it (the best-response polytope Q labels its nonnegativity
rows with the second player's strategies), and the j-th row of C carries
label ell(j).

Vertices are found by exhaustive basis enumeration: every d-subset of the
d+k inequalities with a nonsingular coefficient matrix is solved exactly and
kept when the solution satisfies the remaining inequalities.  At the scale
this package targets (d <= 5, d+k <= 10, i.e. at most C(10,5) = 252 bases)
this is faster to trust than reverse search or double description.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterable, Sequence

from nashpoly.rational import Matrix, format_rational, parse_rational, solve_linear


class GeometryContractViolation(ValueError):
    """Input breaks the boundedness/full-dimensionality contract."""


class PolytopeFileError(ValueError):
    """Malformed H-description file."""


@dataclass(frozen=True)
class VertexRecord:
    """A vertex with its binding inequalities and their labels (multiset)."""

    coords: tuple[Fraction, ...]
    binding: frozenset[int]
    labels: tuple[int, ...]  # sorted, multiplicity retained

    @property
    def label_set(self) -> frozenset[int]:
        return frozenset(self.labels)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


@dataclass(frozen=True)
class PolytopeGraph:
    """Vertex/edge graph of a polytope (indices into the vertex list)."""

    n: int
    edges: tuple[tuple[int, int], ...]

    @property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(s) for s in adj)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)


class LabeledPolytope:
    """H-description {z : -z <= 0, Cz <= 1} with one label per inequality."""

    def __init__(
        self,
        dim: int,
        extra_rows: Matrix | None,
        extra_labels: Sequence[int],
        nonneg_labels: Sequence[int] | None = None,
    ):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        k = 0 if extra_rows is None else extra_rows.rows
        if extra_rows is not None and extra_rows.cols != dim:
            raise ValueError(f"C must have {dim} columns, got {extra_rows.cols}")
        if len(extra_labels) != k:
            raise ValueError(f"need {k} labels for C rows, got {len(extra_labels)}")
        self.dim = dim
        self.extra_rows = extra_rows
        self.k = k
        nn = tuple(nonneg_labels) if nonneg_labels is not None else tuple(range(1, dim + 1))
        if len(nn) != dim:
            raise ValueError("need one label per nonnegativity row")
        self.labels: tuple[int, ...] = nn + tuple(extra_labels)
        self._vertices: tuple[VertexRecord, ...] | None = None
        self._graph: PolytopeGraph | None = None
        # inequality i: coeff_rows[i] . z <= rhs[i]
        zero, one = Fraction(0), Fraction(1)
        neg_eye = [
            tuple(-one if j == i else zero for j in range(dim)) for i in range(dim)
        ]
        c_rows = [extra_rows.row(j) for j in range(k)] if extra_rows is not None else []
        self.coeff_rows: tuple[tuple[Fraction, ...], ...] = tuple(neg_eye + c_rows)
        self.rhs: tuple[Fraction, ...] = tuple([zero] * dim + [one] * k)

    @property
    def n_inequalities(self) -> int:
        return self.dim + self.k

    def label_of(self, inequality_index: int) -> int:
        return self.labels[inequality_index]

    def inequality_with_label(self, label: int) -> int:
        """Index of the unique inequality carrying the label (distinct-label polytopes)."""
        hits = [i for i, l in enumerate(self.labels) if l == label]
        if len(hits) != 1:
            raise ValueError(f"label {label} appears {len(hits)} times")
        return hits[0]

    @property
    def vertices(self) -> tuple[VertexRecord, ...]:
        if self._vertices is None:
            self._vertices = tuple(enumerate_vertices(self))
        return self._vertices

    @property
    def graph(self) -> PolytopeGraph:
        if self._graph is None:
            self._graph = build_graph(self.vertices, self.dim)
        return self._graph

    def facet_indices(self) -> tuple[int, ...]:
        """Inequalities binding at at least one vertex."""
        seen: set[int] = set()
        for v in self.vertices:
            seen |= v.binding
        return tuple(sorted(seen))

    def never_binding_indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n_inequalities) if i not in set(self.facet_indices()))


def enumerate_vertices(p: LabeledPolytope) -> list[VertexRecord]:
    """All vertices of p by exhaustive exact basis enumeration.

    Binding sets are computed against the full inequality list, so a returned
    record with more than p.dim binding inequalities is a degeneracy witness
    (see degeneracy_witness).
    """
    d = p.dim
    total = p.n_inequalities
    coeffs, rhs = p.coeff_rows, p.rhs
    seen: dict[tuple[Fraction, ...], None] = {}
    records: list[VertexRecord] = []
    for subset in combinations(range(total), d):
        m = Matrix([coeffs[i] for i in subset])
        z = solve_linear(m, [rhs[i] for i in subset])
        if z is None:
            continue
        if z in seen:
            continue
        binding = []
        feasible = True
        for idx in range(total):
            val = sum(a * b for a, b in zip(coeffs[idx], z))
            if val > rhs[idx]:
                feasible = False
                break
            if val == rhs[idx]:
                binding.append(idx)
        if not feasible:
            continue
        seen[z] = None
        records.append(
            VertexRecord(
                coords=z,
                binding=frozenset(binding),
                labels=tuple(sorted(p.labels[i] for i in binding)),
            )
        )
    return records


def degeneracy_witness(vertices: Iterable[VertexRecord], dim: int) -> VertexRecord | None:
    """First vertex lying on more than dim facets, if any."""
    for v in vertices:
        if len(v.binding) > dim:
            return v
    return None


def build_graph(vertices: Sequence[VertexRecord], d: int) -> PolytopeGraph:
    """Edges join vertices whose binding sets share exactly d-1 inequalities."""
    edges = []
    for i, j in combinations(range(len(vertices)), 2):
        if len(vertices[i].binding & vertices[j].binding) == d - 1:
            edges.append((i, j))
    return PolytopeGraph(n=len(vertices), edges=tuple(edges))


def facet_vertex_set(p: LabeledPolytope, inequality_index: int) -> frozenset[int]:
    """Indices of vertices on the facet defined by the given inequality."""
    if not 0 <= inequality_index < p.n_inequalities:
        raise ValueError(f"inequality index {inequality_index} out of range")
    return frozenset(i for i, v in enumerate(p.vertices) if inequality_index in v.binding)


def affine_rank(points: Sequence[Sequence[Fraction]]) -> int:
    """Number of affinely independent points among the given ones."""
    pts = [tuple(map(Fraction, q)) for q in points]
    if not pts:
        return 0
    base = pts[0]
    basis: list[list[Fraction]] = []
    for q in pts[1:]:
        vec = [a - b for a, b in zip(q, base)]
        for row in basis:
            piv = next((idx for idx, x in enumerate(row) if x != 0), None)
            if piv is not None and vec[piv] != 0:
                f = vec[piv] / row[piv]
                vec = [a - f * b for a, b in zip(vec, row)]
        if any(x != 0 for x in vec):
            basis.append(vec)
    return len(basis) + 1


def assert_full_dimensional(p: LabeledPolytope) -> None:
    """Contract check: a bounded full-dimensional input yields d+1 affinely
    independent vertices; anything less means the H-description was invalid."""
    if affine_rank([v.coords for v in p.vertices]) < p.dim + 1:
        raise GeometryContractViolation(
            f"polytope is not full-dimensional: found {len(p.vertices)} vertices "
            f"spanning affine rank {affine_rank([v.coords for v in p.vertices])} "
            f"in dimension {p.dim} (unbounded or empty input?)"
        )


def ubt_max_vertices(d: int, n_facets: int) -> int | None:
    """Maximal vertex count of a simple d-polytope with the given facet count
    (cyclic-polytope values; dimensions 1-5)."""
    n = n_facets
    if d == 1:
        return 2
    if d == 2:
        return n
    if d == 3:
        return 2 * n - 4
    if d == 4:
        return n * (n - 3) // 2
    if d == 5:
        return 2 * comb(n - 3, 2)
    return None


# H-description file: line 1 "d k"; then k lines of d rational coefficients
# followed by the row's label (in [d]).  '#' comments and blank lines allowed.


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    return out


def load_labeled_polytope(path: str | Path) -> LabeledPolytope:
    lines = _content_lines(Path(path).read_text())
    if not lines:
        raise PolytopeFileError("empty polytope file")
    lineno, header = lines[0]
    try:
        d, k = map(int, header.split())
    except ValueError as exc:
        raise PolytopeFileError(f"line {lineno}: expected header 'd k'") from exc
    if len(lines) != 1 + k:
        raise PolytopeFileError(f"expected {k} coefficient rows, found {len(lines) - 1}")
    rows, labels = [], []
    for lineno, line in lines[1:]:
        tokens = line.split()
        if len(tokens) != d + 1:
            raise PolytopeFileError(f"line {lineno}: expected {d} coefficients and a label")
        try:
            rows.append([parse_rational(t) for t in tokens[:d]])
            label = int(tokens[d])
        except ValueError as exc:
            raise PolytopeFileError(f"line {lineno}: {exc}") from exc
        if not 1 <= label <= d:
            raise PolytopeFileError(f"line {lineno}: label {label} outside [1, {d}]")
        labels.append(label)
    extra = Matrix(rows) if rows else None
    return LabeledPolytope(d, extra, labels)


def dump_labeled_polytope(p: LabeledPolytope) -> str:
    lines = [f"{p.dim} {p.k}"]
    for j in range(p.k):
        row = p.extra_rows.row(j)
        lines.append(" ".join(format_rational(x) for x in row) + f" {p.labels[p.dim + j]}")
    return "\n".join(lines) + "\n"
