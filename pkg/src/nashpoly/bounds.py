"""Stable-set and clique bounds on graphs.

The central quantity is the stable-set bound: twice the maximum common size
of two disjoint stable sets, which caps the number of equilibria a polytope
graph can host (one stable set per index class).  It equals the optimum of
the ILP with binary incidence vectors x, y, edge constraints x_i + x_j <= 1
and y_i + y_j <= 1, disjointness x_i + y_i <= 1, and sum(x) = sum(y).

The solver is a dependency-free exact search over bitmask-encoded vertex
sets: iterate the target size s downward from min(alpha(G), V // 2); for
each s enumerate stable sets S1 of size s in lexicographic order and test
whether the rest of the graph still contains a stable set of size s.  The
returned witness pair is the lexicographically smallest optimal one, so
reports are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence


class GraphFileError(ValueError):
    """Malformed graph file."""


class Graph:
    """Undirected simple graph on vertices 0..V-1 (immutable)."""

    __slots__ = ("V", "edges", "adj")

    def __init__(self, n_vertices: int, edges: Iterable[tuple[int, int]]):
        if n_vertices < 0:
            raise ValueError("vertex count must be nonnegative")
        adj = [0] * n_vertices
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"parallel edge ({u}, {v})")
            seen.add(key)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "V", n_vertices)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        object.__setattr__(self, "adj", tuple(adj))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        return isinstance(other, Graph) and (self.V, self.edges) == (other.V, other.edges)

    def __hash__(self):
        return hash((self.V, self.edges))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(_bits(self.adj[v]))

    def is_connected(self) -> bool:
        if self.V <= 1:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.V) - 1

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph plus the list mapping new indices to old ones."""
        order = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(order)}
        edges = [
            (pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos
        ]
        return Graph(len(order), edges), order


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class BoundResult:
    """Stable-set bound b with a witness pair of disjoint stable sets of size
    b/2 each; obstruction_count = V - b."""

    bound: int
    witness: tuple[tuple[int, ...], tuple[int, ...]]
    obstruction_count: int
    clique_bound: int | None = None


def _closed(adj: Sequence[int], v: int) -> int:
    return adj[v] | (1 << v)


def max_stable_size(adj: Sequence[int], mask: int) -> int:
    """alpha of the induced subgraph on mask (branch and bound with degree-0/1
    reductions)."""
    best = 0

    def rec(mask: int, size: int) -> None:
        nonlocal best
        while True:
            reduced = False
            mm = mask
            while mm:
                low = mm & -mm
                v = low.bit_length() - 1
                mm ^= low
                if not mask >> v & 1:  # removed by an earlier reduction
                    continue
                nb = adj[v] & mask
                if nb == 0:
                    mask ^= low
                    size += 1
                    reduced = True
                elif nb & (nb - 1) == 0:
                    mask &= ~(low | nb)
                    size += 1
                    reduced = True
            if not reduced:
                break
        if size > best:
            best = size
        if mask == 0 or size + mask.bit_count() <= best:
            return
        v_max, d_max = -1, -1
        mm = mask
        while mm:
            low = mm & -mm
            v = low.bit_length() - 1
            mm ^= low
            d = (adj[v] & mask).bit_count()
            if d > d_max:
                v_max, d_max = v, d
        rec(mask & ~_closed(adj, v_max), size + 1)
        rec(mask & ~(1 << v_max), size)

    rec(mask, 0)
    return best


def find_stable_set(adj: Sequence[int], mask: int, s: int) -> int | None:
    """Lexicographically smallest stable set of size s within mask, or None."""
    if s == 0:
        return 0

    def rec(avail: int, need: int) -> int | None:
        while avail:
            if avail.bit_count() < need:
                return None
            low = avail & -avail
            v = low.bit_length() - 1
            if need == 1:
                return low
            rest = rec(avail & ~_closed(adj, v) & ~(low | (low - 1)), need - 1)
            if rest is not None:
                return rest | low
            avail ^= low
        return None

    return rec(mask, s)


def _pair_search(adj: Sequence[int], full: int, s: int) -> tuple[int, int] | None:
    """Lex-min pair (S1, S2) of disjoint stable sets of size s each."""
    result: list[tuple[int, int]] | None = None

    def rec(avail: int, chosen: int, need: int) -> tuple[int, int] | None:
        if need == 0:
            s2 = find_stable_set(adj, full & ~chosen, s)
            if s2 is not None:
                return chosen, s2
            return None
        while avail:
            if avail.bit_count() < need:
                return None
            low = avail & -avail
            v = low.bit_length() - 1
            hit = rec(avail & ~_closed(adj, v) & ~(low | (low - 1)), chosen | low, need - 1)
            if hit is not None:
                return hit
            avail ^= low
        return None

    return rec(full, 0, s)


def stable_set_bound(g: Graph) -> BoundResult:
    """Exact stable-set bound 2 * max{|S1| : S1, S2 disjoint stable, equal size}."""
    v = g.V
    if v == 0:
        return BoundResult(bound=0, witness=((), ()), obstruction_count=0)
    full = (1 << v) - 1
    alpha = max_stable_size(g.adj, full)
    for s in range(min(alpha, v // 2), 0, -1):
        found = _pair_search(g.adj, full, s)
        if found is not None:
            s1, s2 = found
            return BoundResult(
                bound=2 * s,
                witness=(tuple(_bits(s1)), tuple(_bits(s2))),
                obstruction_count=v - 2 * s,
            )
    return BoundResult(bound=0, witness=((), ()), obstruction_count=v)


def verify_witness(g: Graph, result: BoundResult) -> bool:
    """Re-check a witness independently of the solver: stability of both sets,
    disjointness, equal sizes, and consistency with the reported bound."""
    s1, s2 = result.witness
    if len(s1) != len(s2) or 2 * len(s1) != result.bound:
        return False
    if set(s1) & set(s2):
        return False
    for group in (s1, s2):
        for a, b in combinations(group, 2):
            if g.adj[a] >> b & 1:
                return False
    return result.obstruction_count == g.V - result.bound


def clique_bound(g: Graph, cliques: Sequence[Sequence[int]]) -> int:
    """V - sum(c_i - 2) over supplied pairwise disjoint cliques: every clique
    can host at most two equilibrium vertices."""
    used: set[int] = set()
    for clique in cliques:
        members = sorted(set(clique))
        if len(members) != len(tuple(clique)):
            raise ValueError(f"clique {tuple(clique)} has repeated vertices")
        for v in members:
            if not 0 <= v < g.V:
                raise ValueError(f"clique vertex {v} out of range")
            if v in used:
                raise ValueError(f"cliques are not disjoint at vertex {v}")
            used.add(v)
        for a, b in combinations(members, 2):
            if not g.adj[a] >> b & 1:
                raise ValueError(f"{tuple(clique)} is not a clique: {a} !~ {b}")
    return g.V - sum(len(set(c)) - 2 for c in cliques)


def max_clique_size(adj: Sequence[int], mask: int) -> int:
    best = 0

    def rec(avail: int, size: int) -> None:
        nonlocal best
        if size + avail.bit_count() <= best:
            return
        if avail == 0:
            best = max(best, size)
            return
        while avail:
            if size + avail.bit_count() <= best:
                return
            low = avail & -avail
            v = low.bit_length() - 1
            rec(avail & adj[v], size + 1)
            avail ^= low

    rec(mask, 0)
    return best


def find_clique(adj: Sequence[int], mask: int, s: int) -> int | None:
    """Lexicographically smallest clique of size s within mask, or None."""
    if s == 0:
        return 0

    def rec(avail: int, need: int) -> int | None:
        while avail:
            if avail.bit_count() < need:
                return None
            low = avail & -avail
            v = low.bit_length() - 1
            if need == 1:
                return low
            rest = rec(avail & adj[v] & ~(low | (low - 1)), need - 1)
            if rest is not None:
                return rest | low
            avail ^= low
        return None

    return rec(mask, s)


def greedy_clique_cover(g: Graph) -> list[tuple[int, ...]]:
    """Disjoint cliques of size >= 3, peeled greedily largest-first (lex-min
    among cliques of the chosen size)."""
    mask = (1 << g.V) - 1
    cover: list[tuple[int, ...]] = []
    while True:
        k = max_clique_size(g.adj, mask)
        if k < 3:
            return cover
        clique = find_clique(g.adj, mask, k)
        cover.append(tuple(_bits(clique)))
        mask &= ~clique


def facet_stable_set_bound(poly_graph: Graph, facet_vertices: Sequence[int]) -> BoundResult:
    """Stable-set bound of the subgraph induced by a facet's vertex set,
    with the witness reported in the original vertex ids."""
    sub, order = poly_graph.induced(facet_vertices)
    res = stable_set_bound(sub)
    s1, s2 = res.witness
    return BoundResult(
        bound=res.bound,
        witness=(
            tuple(order[i] for i in s1),
            tuple(order[i] for i in s2),
        ),
        obstruction_count=res.obstruction_count,
    )


# Graph file: line 1 "V E"; then E lines "u v" (0-based).


def parse_graph(text: str) -> Graph:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines:
        raise GraphFileError("empty graph file")
    lineno, header = lines[0]
    try:
        v, e = map(int, header.split())
    except ValueError as exc:
        raise GraphFileError(f"line {lineno}: expected header 'V E'") from exc
    if len(lines) != 1 + e:
        raise GraphFileError(f"expected {e} edge lines, found {len(lines) - 1}")
    edges = []
    for lineno, line in lines[1:]:
        try:
            a, b = map(int, line.split())
        except ValueError as exc:
            raise GraphFileError(f"line {lineno}: expected 'u v'") from exc
        edges.append((a, b))
    try:
        return Graph(v, edges)
    except ValueError as exc:
        raise GraphFileError(str(exc)) from exc


def load_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text())


def dump_graph(g: Graph) -> str:
    lines = [f"{g.V} {len(g.edges)}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def format_bound_result(g: Graph, res: BoundResult) -> str:
    lines = [f"{g.V} {res.bound} {res.obstruction_count}"]
    lines.append("S1 " + " ".join(map(str, res.witness[0])))
    lines.append("S2 " + " ".join(map(str, res.witness[1])))
    if res.clique_bound is not None:
        lines.append(f"clique_bound {res.clique_bound}")
    return "\n".join(lines) + "\n"
