"""Combinatorial polytope census: ingestion, derived graphs, recognition.

A simple d-polytope is recorded purely combinatorially as the list of its
vertices, each given by the set of the d facets it lies on.  The graph
(vertices adjacent iff they share d-1 facets), facet subgraphs, stable-set
bounds, cube recognition, and the semi-cube test all derive from that data,
so census rows are a pure function of the incidence file and reproduce bit
for bit.

Census file format: header "d F"; one record per polytope: catalog id,
vertex count V, then V d-tuples of 0-based facet indices.  Tuples may be
separated by whitespace or ';', and records may span lines (blank lines and
'#' comments are ignored); the token count per record is what matters.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from nashpoly.bounds import Graph, facet_stable_set_bound, stable_set_bound
from nashpoly.polytope import ubt_max_vertices


class CensusFileError(ValueError):
    """Malformed census file or invalid polytope record."""


@dataclass(frozen=True)
class CombinatorialPolytope:
    """Vertex-facet incidences of a simple polytope."""

    dim: int
    n_facets: int
    vertex_facets: tuple[frozenset[int], ...]
    catalog_id: int | None = None

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_facets)

    def graph(self) -> Graph:
        d = self.dim
        edges = [
            (i, j)
            for i, j in combinations(range(self.n_vertices), 2)
            if len(self.vertex_facets[i] & self.vertex_facets[j]) == d - 1
        ]
        return Graph(self.n_vertices, edges)

    def facet_vertices(self, facet_index: int) -> tuple[int, ...]:
        return tuple(
            i for i, fs in enumerate(self.vertex_facets) if facet_index in fs
        )

    def is_dual_neighborly(self) -> bool:
        """Every two facets meet (share at least one vertex)."""
        for f, g in combinations(range(self.n_facets), 2):
            if not any(
                f in fs and g in fs for fs in self.vertex_facets
            ):
                return False
        return True


def validate(p: CombinatorialPolytope, record: str = "") -> None:
    """Simplicity, facet coverage, regularity, connectivity; raises with the
    record context on the first violation."""
    where = f"record {record}: " if record else ""
    seen_facets: set[int] = set()
    seen_vertices: set[frozenset[int]] = set()
    for i, fs in enumerate(p.vertex_facets):
        if len(fs) != p.dim:
            raise CensusFileError(
                f"{where}vertex {i} lies on {len(fs)} facets, expected {p.dim} (non-simple)"
            )
        if any(not 0 <= f < p.n_facets for f in fs):
            raise CensusFileError(f"{where}vertex {i} has a facet index out of range")
        if fs in seen_vertices:
            raise CensusFileError(f"{where}vertex {i} duplicates another vertex")
        seen_vertices.add(fs)
        seen_facets |= fs
    if seen_facets != set(range(p.n_facets)):
        missing = sorted(set(range(p.n_facets)) - seen_facets)
        raise CensusFileError(f"{where}facets {missing} have no incident vertex")
    cap = ubt_max_vertices(p.dim, p.n_facets)
    if cap is not None and p.n_vertices > cap:
        raise CensusFileError(
            f"{where}{p.n_vertices} vertices exceeds the maximum {cap} "
            f"for dimension {p.dim} with {p.n_facets} facets"
        )
    g = p.graph()
    for v in range(g.V):
        if g.degree(v) != p.dim:
            raise CensusFileError(
                f"{where}vertex {v} has graph degree {g.degree(v)}, expected {p.dim}"
            )
    if not g.is_connected():
        raise CensusFileError(f"{where}polytope graph is disconnected")


def ingest(path: str | Path) -> list[CombinatorialPolytope]:
    return parse_census(Path(path).read_text())


def parse_census(text: str) -> list[CombinatorialPolytope]:
    tokens: list[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].replace(";", " ")
        tokens.extend(line.split())
    if len(tokens) < 2:
        raise CensusFileError("missing 'd F' header")
    try:
        d, f = int(tokens[0]), int(tokens[1])
    except ValueError as exc:
        raise CensusFileError("header must be 'd F'") from exc
    if d < 1 or f < d + 1:
        raise CensusFileError(f"implausible header d={d} F={f}")
    pos = 2
    out: list[CombinatorialPolytope] = []
    while pos < len(tokens):
        record = len(out) + 1
        try:
            catalog_id = int(tokens[pos])
            n_vertices = int(tokens[pos + 1])
        except (ValueError, IndexError) as exc:
            raise CensusFileError(f"record {record}: expected 'id V'") from exc
        need = n_vertices * d
        body = tokens[pos + 2 : pos + 2 + need]
        if len(body) < need:
            raise CensusFileError(
                f"record {record}: expected {need} facet indices, found {len(body)}"
            )
        try:
            values = [int(t) for t in body]
        except ValueError as exc:
            raise CensusFileError(f"record {record}: non-integer facet index") from exc
        vertex_facets = tuple(
            frozenset(values[i * d : (i + 1) * d]) for i in range(n_vertices)
        )
        p = CombinatorialPolytope(
            dim=d, n_facets=f, vertex_facets=vertex_facets, catalog_id=catalog_id
        )
        validate(p, record=str(record))
        out.append(p)
        pos += 2 + need
    return out


def dump_census(polytopes: Sequence[CombinatorialPolytope]) -> str:
    d = polytopes[0].dim
    f = polytopes[0].n_facets
    lines = [f"{d} {f}"]
    for i, p in enumerate(polytopes, start=1):
        if p.dim != d or p.n_facets != f:
            raise ValueError("all polytopes in one census file share d and F")
        body = " ; ".join(
            " ".join(map(str, sorted(fs))) for fs in p.vertex_facets
        )
        lines.append(f"{p.catalog_id if p.catalog_id is not None else i} {p.n_vertices} {body}")
    return "\n".join(lines) + "\n"


def hypercube_polytope(d: int, catalog_id: int | None = None) -> CombinatorialPolytope:
    """The d-cube: facet 2i+s is {z_i = s}; vertices are the 2^d sign patterns."""
    vertex_facets = tuple(
        frozenset(2 * i + (v >> i & 1) for i in range(d)) for v in range(1 << d)
    )
    return CombinatorialPolytope(d, 2 * d, vertex_facets, catalog_id)


def simplex_polytope(d: int, catalog_id: int | None = None) -> CombinatorialPolytope:
    """The d-simplex: d+1 facets; vertex i lies on every facet except i."""
    vertex_facets = tuple(
        frozenset(f for f in range(d + 1) if f != i) for i in range(d + 1)
    )
    return CombinatorialPolytope(d, d + 1, vertex_facets, catalog_id)


def facet_subgraph(
    p: CombinatorialPolytope, facet_index: int
) -> tuple[Graph, tuple[int, ...]]:
    """Induced graph on the facet's vertices plus the vertex subset itself."""
    if not 0 <= facet_index < p.n_facets:
        raise ValueError(f"facet index {facet_index} out of range")
    members = p.facet_vertices(facet_index)
    if not members:
        raise ValueError(f"facet {facet_index} has no vertices")
    sub, _ = p.graph().induced(members)
    return sub, members


@lru_cache(maxsize=None)
def _hypercube_graph(c: int) -> Graph:
    n = 1 << c
    return Graph(
        n, [(u, u ^ (1 << b)) for u in range(n) for b in range(c) if u < u ^ (1 << b)]
    )


def _bipartite(g: Graph) -> bool:
    color = [-1] * g.V
    for start in range(g.V):
        if color[start] != -1:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for v in g.neighbors(u):
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    stack.append(v)
                elif color[v] == color[u]:
                    return False
    return True


def _isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.V != g2.V or len(g1.edges) != len(g2.edges):
        return False
    if sorted(map(g1.degree, range(g1.V))) != sorted(map(g2.degree, range(g2.V))):
        return False
    n = g1.V
    if n == 0:
        return True
    # order g1's vertices so each (after the first) touches a previous one
    order: list[int] = []
    placed: set[int] = set()
    while len(order) < n:
        nxt = next(
            (v for v in range(n) if v not in placed and any(u in placed for u in g1.neighbors(v))),
            None,
        )
        if nxt is None:
            nxt = next(v for v in range(n) if v not in placed)
        order.append(nxt)
        placed.add(nxt)
    mapping = [-1] * n
    used = [False] * n

    def rec(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in range(n):
            if used[w] or g1.degree(v) != g2.degree(w):
                continue
            ok = True
            for u in g1.neighbors(v):
                if mapping[u] != -1 and not g2.adj[mapping[u]] >> w & 1:
                    ok = False
                    break
            if ok:
                for u in order[:i]:
                    if not g1.adj[v] >> u & 1 and g2.adj[mapping[u]] >> w & 1:
                        ok = False
                        break
            if not ok:
                continue
            mapping[v] = w
            used[w] = True
            if rec(i + 1):
                return True
            mapping[v] = -1
            used[w] = False
        return False

    return rec(0)


def is_cube_graph(g: Graph, c: int) -> bool:
    """Graph isomorphism against the c-dimensional hypercube graph."""
    n = 1 << c
    if g.V != n or len(g.edges) != c * n // 2:
        return False
    if any(g.degree(v) != c for v in range(g.V)):
        return False
    if not _bipartite(g) or not g.is_connected():
        return False
    return _isomorphic(g, _hypercube_graph(c))


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for u, v in g.edges:
        common = g.adj[u] & g.adj[v]
        w = common
        while w:
            low = w & -w
            t = low.bit_length() - 1
            w ^= low
            if t > v:
                out.append((u, v, t))
    return out


def has_disjoint_triangles(g: Graph, k: int) -> bool:
    """Exact search for k pairwise vertex-disjoint triangles."""
    tris = triangles(g)

    def rec(start: int, used: int, left: int) -> bool:
        if left == 0:
            return True
        for i in range(start, len(tris)):
            a, b, c = tris[i]
            mask = (1 << a) | (1 << b) | (1 << c)
            if used & mask:
                continue
            if rec(i + 1, used | mask, left - 1):
                return True
        return False

    return rec(0, 0, k)


@dataclass(frozen=True)
class FacetData:
    facet_index: int
    size: int
    bound: int
    is_three_cube: bool


@dataclass(frozen=True)
class CensusRow:
    catalog_id: int | None
    n_vertices: int
    bound: int
    obstruction_count: int
    dual_neighborly: bool
    facets: tuple[FacetData, ...]

    @property
    def pair(self) -> tuple[int, int]:
        return (self.n_vertices, self.bound)


def census_row(p: CombinatorialPolytope) -> CensusRow:
    g = p.graph()
    res = stable_set_bound(g)
    facets = []
    for f in range(p.n_facets):
        members = p.facet_vertices(f)
        fres = facet_stable_set_bound(g, members)
        sub, _ = g.induced(members)
        facets.append(
            FacetData(
                facet_index=f,
                size=len(members),
                bound=fres.bound,
                is_three_cube=is_cube_graph(sub, 3),
            )
        )
    return CensusRow(
        catalog_id=p.catalog_id,
        n_vertices=p.n_vertices,
        bound=res.bound,
        obstruction_count=res.obstruction_count,
        dual_neighborly=p.is_dual_neighborly(),
        facets=tuple(facets),
    )


def census(
    polytopes: Sequence[CombinatorialPolytope], jobs: int = 1
) -> list[CensusRow]:
    """Census rows in input order (deterministic regardless of jobs)."""
    if jobs > 1 and len(polytopes) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(census_row, polytopes, chunksize=8))
    return [census_row(p) for p in polytopes]


@dataclass(frozen=True)
class GoldenDiff:
    """Multiset comparison of (V, b) pairs against a golden table."""

    n_expected: int
    n_got: int
    matched: int
    missing: tuple[tuple[int, int], ...]
    extra: tuple[tuple[int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.missing and not self.extra and self.n_expected == self.n_got


def parse_golden(text: str) -> list[tuple[int | None, int, int]]:
    """Golden table lines: 'id V b' or 'V b' ('#' comments allowed)."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if len(parts) == 3:
                rows.append((int(parts[0]), int(parts[1]), int(parts[2])))
            elif len(parts) == 2:
                rows.append((None, int(parts[0]), int(parts[1])))
            else:
                raise ValueError("expected 2 or 3 integers")
        except ValueError as exc:
            raise CensusFileError(f"golden table line {lineno}: {exc}") from exc
    return rows


def golden_diff(rows: Sequence[CensusRow], golden: Sequence[tuple[int | None, int, int]]) -> GoldenDiff:
    expected = Counter((v, b) for _, v, b in golden)
    got = Counter(row.pair for row in rows)
    matched = sum((expected & got).values())
    return GoldenDiff(
        n_expected=sum(expected.values()),
        n_got=sum(got.values()),
        matched=matched,
        missing=tuple(sorted((expected - got).elements())),
        extra=tuple(sorted((got - expected).elements())),
    )


def recognize_semi_cube(p: CombinatorialPolytope) -> bool:
    """The simple 4-polytope with 8 facets, 17 vertices, stable-set bound 14,
    exactly three 3-cube facets, and three disjoint triangles."""
    if p.dim != 4 or p.n_facets != 8 or p.n_vertices != 17:
        return False
    g = p.graph()
    if stable_set_bound(g).bound != 14:
        return False
    cube_facets = 0
    for f in range(p.n_facets):
        sub, _ = facet_subgraph(p, f)
        if is_cube_graph(sub, 3):
            cube_facets += 1
    if cube_facets != 3:
        return False
    return has_disjoint_triangles(g, 3)


@dataclass(frozen=True)
class T49Report:
    """Checks over a set of simple 4-polytopes with 9 facets."""

    n_polytopes: int
    bound_at_most_20: bool
    obstructions_at_least_3: bool
    b20_without_cube_facet: bool
    b20_obstructions_at_least_5: bool
    n_bound_20: int
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return (
            self.bound_at_most_20
            and self.obstructions_at_least_3
            and self.b20_without_cube_facet
            and self.b20_obstructions_at_least_5
        )


def check_t49(
    polytopes: Sequence[CombinatorialPolytope], jobs: int = 1
) -> T49Report:
    rows = census(polytopes, jobs=jobs)
    failures: list[str] = []
    a = b = c = d = True
    n20 = 0
    for p, row in zip(polytopes, rows):
        rid = p.catalog_id
        if row.bound > 20:
            a = False
            failures.append(f"type {rid}: bound {row.bound} > 20")
        if row.obstruction_count < 3:
            b = False
            failures.append(f"type {rid}: only {row.obstruction_count} obstruction vertices")
        if row.bound == 20:
            n20 += 1
            if any(fd.is_three_cube for fd in row.facets):
                c = False
                failures.append(f"type {rid}: bound 20 but has a 3-cube facet")
            if row.obstruction_count < 5:
                d = False
                failures.append(
                    f"type {rid}: bound 20 but only {row.obstruction_count} obstructions"
                )
    return T49Report(
        n_polytopes=len(polytopes),
        bound_at_most_20=a,
        obstructions_at_least_3=b,
        b20_without_cube_facet=c,
        b20_obstructions_at_least_5=d,
        n_bound_20=n20,
        failures=tuple(failures),
    )
