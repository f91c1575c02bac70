#!/usr/bin/env python3
"""Generate certified incidence datasets for simple 4-polytopes with few facets.

Simple 4-polytopes with n facets are the duals of simplicial 4-polytopes
with n vertices, so each dataset is built by sampling integer point
configurations in R^4 and certifying their convex hulls with exact integer
arithmetic only:

  * every 4-subset of points is tested as a facet candidate by solving for
    the hyperplane through it (generalized cross product) and checking the
    sign of every other point against it;
  * a sample is rejected unless it is generic (no five points on a common
    hyperplane), every point is a hull vertex, and the facet complex closes
    up (every ridge lies in exactly two facets);
  * accepted facet lists are deduplicated up to vertex relabeling.

Floating point is never consulted, so the emitted incidence data is correct
by construction.  Sampling mixes fresh draws (uniform box, perturbed moment
curve, perturbed cross polytope) with a mutation walk that moves one point
of a known realization, which explores neighboring combinatorial types.

Classified counts for simplicial 4-polytopes with n vertices: 5 -> 1,
6 -> 2, 7 -> 5, 8 -> 37, 9 -> 1142 (the last one takes a long walk; use
--n-points 9 --budget ... explicitly).

Usage:
    python3 scripts/generate_census_data.py --out data [--n-points 8]
        [--budget 200000] [--seed 0] [--resume FILE]
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from collections import defaultdict
from itertools import combinations, permutations
from pathlib import Path

TARGET_COUNTS = {5: 1, 6: 2, 7: 5, 8: 37, 9: 1142}


def det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def hyperplane(points, quad):
    """Integer normal and offset of the hyperplane through four points, or
    None if they are affinely dependent."""
    p0 = points[quad[0]]
    rows = [tuple(points[q][i] - p0[i] for i in range(4)) for q in quad[1:]]
    normal = []
    sign = 1
    for col in range(4):
        minor = [[rows[r][c] for c in range(4) if c != col] for r in range(3)]
        normal.append(sign * det3(minor))
        sign = -sign
    if all(x == 0 for x in normal):
        return None
    c = sum(n * x for n, x in zip(normal, p0))
    return tuple(normal), c


def exact_facet_list(points):
    """Facets of conv(points) as vertex index sets, or None if the sample is
    non-generic, has interior points, or fails the closure sanity check."""
    n = len(points)
    facets = []
    for quad in combinations(range(n), 4):
        hp = hyperplane(points, quad)
        if hp is None:
            continue
        normal, c = hp
        pos = neg = False
        for j in range(n):
            if j in quad:
                continue
            val = sum(a * b for a, b in zip(normal, points[j])) - c
            if val == 0:
                return None  # five points on a hyperplane: not generic
            if val > 0:
                pos = True
            else:
                neg = True
            if pos and neg:
                break
        if pos and neg:
            continue
        facets.append(frozenset(quad))
    on_hull = set()
    for f in facets:
        on_hull |= f
    if on_hull != set(range(n)):
        return None  # some point is interior: wrong vertex count
    ridge_count = defaultdict(int)
    for f in facets:
        for ridge in combinations(sorted(f), 3):
            ridge_count[ridge] += 1
    if any(c != 2 for c in ridge_count.values()):
        return None
    return frozenset(facets)


def co_matrix(facets, n):
    co = [[0] * n for _ in range(n)]
    for f in facets:
        for a, b in combinations(sorted(f), 2):
            co[a][b] += 1
            co[b][a] += 1
        for a in f:
            co[a][a] += 1
    return co


def invariant_key(facets, n):
    co = co_matrix(facets, n)
    rows = sorted(tuple(sorted(row)) for row in co)
    return (len(facets), tuple(rows))


def vertex_classes(facets, n):
    """Partition vertices by their co-matrix row profile."""
    co = co_matrix(facets, n)
    profile = {v: (co[v][v], tuple(sorted(co[v][w] for w in range(n) if w != v))) for v in range(n)}
    classes = defaultdict(list)
    for v in range(n):
        classes[profile[v]].append(v)
    return profile, classes


def isomorphic_systems(f1, f2, n):
    """Exact isomorphism of two facet systems under vertex relabeling."""
    if len(f1) != len(f2):
        return False
    prof1, classes1 = vertex_classes(f1, n)
    prof2, classes2 = vertex_classes(f2, n)
    if sorted(classes1) != sorted(classes2) or any(
        len(classes1[k]) != len(classes2[k]) for k in classes1
    ):
        return False
    co1, co2 = co_matrix(f1, n), co_matrix(f2, n)
    order = sorted(range(n), key=lambda v: (len(classes1[prof1[v]]), prof1[v]))
    mapping = [-1] * n
    used = [False] * n

    def rec(i):
        if i == n:
            perm_facets = frozenset(frozenset(mapping[v] for v in f) for f in f1)
            return perm_facets == f2
        v = order[i]
        for w in classes2[prof1[v]]:
            if used[w]:
                continue
            if any(
                mapping[u] != -1 and co1[v][u] != co2[w][mapping[u]]
                for u in range(n)
            ):
                continue
            mapping[v] = w
            used[w] = True
            if rec(i + 1):
                return True
            mapping[v] = -1
            used[w] = False
        return False

    return rec(0)


def canonical_string(facets, n):
    """Minimal facet-list string over all class-respecting relabelings."""
    prof, classes = vertex_classes(facets, n)
    class_keys = sorted(classes)
    best = None
    pools = [classes[k] for k in class_keys]
    slots = []
    for k, pool in zip(class_keys, pools):
        slots.append(sorted(pool))
    # positions in the canonical order: vertices of class 0 first, etc.
    positions = []
    start = 0
    for pool in pools:
        positions.append(list(range(start, start + len(pool))))
        start += len(pool)

    def all_perms(i, mapping):
        nonlocal best
        if i == len(pools):
            image = sorted(
                tuple(sorted(mapping[v] for v in f)) for f in facets
            )
            key = tuple(image)
            if best is None or key < best:
                best = key
            return
        for perm in permutations(positions[i]):
            for v, slot in zip(slots[i], perm):
                mapping[v] = slot
            all_perms(i + 1, mapping)

    all_perms(0, [-1] * n)
    return best


class TypeStore:
    """Collect combinatorial types with cheap-invariant bucketing."""

    def __init__(self, n):
        self.n = n
        self.buckets = defaultdict(list)  # invariant -> [(facets, points)]
        self.count = 0

    def add(self, facets, points):
        key = invariant_key(facets, self.n)
        bucket = self.buckets[key]
        for known, _ in bucket:
            if isomorphic_systems(facets, known, self.n):
                return False
        bucket.append((facets, points))
        self.count += 1
        return True

    def all_types(self):
        out = []
        for bucket in self.buckets.values():
            out.extend(bucket)
        return out


def sample_box(rng, n, k):
    return [tuple(rng.randint(-k, k) for _ in range(4)) for _ in range(n)]


def sample_moment(rng, n):
    ts = rng.sample(range(-60, 61), n)
    jitter = lambda: rng.randint(-2, 2)
    return [
        (t * 8 + jitter(), t * t * 2 + jitter(), t**3 // 16 + jitter(), t**4 // 256 + jitter())
        for t in ts
    ]


def sample_cross(rng, n):
    base = []
    scale = rng.randint(20, 60)
    for i in range(4):
        for s in (-1, 1):
            p = [0, 0, 0, 0]
            p[i] = s * scale
            base.append(tuple(p))
    rng.shuffle(base)
    pts = [tuple(c + rng.randint(-3, 3) for c in p) for p in base[:n]]
    return pts


def mutate(points, rng):
    pts = [list(p) for p in points]
    idx = rng.randrange(len(pts))
    span = max(max(abs(c) for c in p) for p in points) or 10
    if rng.random() < 0.3:
        pts[idx] = [rng.randint(-span, span) for _ in range(4)]
    else:
        step = max(1, span // 4)
        for c in range(4):
            pts[idx][c] += rng.randint(-step, step)
    return [tuple(p) for p in pts]


def collect(n_points, budget, seed, target, store=None, log=True, checkpoint=None):
    rng = random.Random(seed)
    store = store or TypeStore(n_points)
    realizations = [pts for _, pts in store.all_types()]
    t0 = time.time()
    tried = 0
    last_checkpoint = store.count
    fresh = [
        lambda: sample_box(rng, n_points, 8),
        lambda: sample_box(rng, n_points, 40),
        lambda: sample_box(rng, n_points, 200),
        lambda: sample_moment(rng, n_points),
        lambda: sample_cross(rng, n_points),
    ]
    while tried < budget and store.count < target:
        tried += 1
        if realizations and rng.random() < 0.7:
            points = mutate(rng.choice(realizations), rng)
        else:
            points = fresh[rng.randrange(len(fresh))]()
        if len(set(points)) < n_points:
            continue
        facets = exact_facet_list(points)
        if facets is None:
            continue
        if store.add(facets, points):
            realizations.append(points)
            if log:
                print(
                    f"  n={n_points}: type {store.count}/{target} "
                    f"(V={len(facets)}) after {tried} samples, {time.time()-t0:.1f}s",
                    flush=True,
                )
            if checkpoint is not None and store.count - last_checkpoint >= 25:
                checkpoint(store)
                last_checkpoint = store.count
    return store, tried


def write_outputs(store, n_points, out_dir):
    """Census file (duals: F = n_points facets) plus integer realizations."""
    types = store.all_types()
    keyed = sorted(
        (
            (len(facets), canonical_string(facets, n_points), facets, pts)
            for facets, pts in types
        ),
        key=lambda t: (t[0], t[1]),
    )
    census_path = out_dir / f"p4_{n_points}.census"
    real_path = out_dir / f"p4_{n_points}.realizations"
    with census_path.open("w") as fh:
        fh.write(f"# simple 4-polytopes with {n_points} facets "
                 f"(duals of simplicial 4-polytopes with {n_points} vertices)\n")
        fh.write(f"# {len(keyed)} combinatorial types; certified by exact integer hulls\n")
        fh.write(f"4 {n_points}\n")
        for cid, (_, _, facets, _) in enumerate(keyed, start=1):
            body = " ; ".join(
                " ".join(map(str, sorted(f))) for f in sorted(facets, key=sorted)
            )
            fh.write(f"{cid} {len(facets)} {body}\n")
    with real_path.open("w") as fh:
        fh.write("# one primal realization per catalog id: 'id : x1 y1 z1 w1 | ...'\n")
        for cid, (_, _, _, pts) in enumerate(keyed, start=1):
            fh.write(f"{cid} : " + " | ".join(" ".join(map(str, p)) for p in pts) + "\n")
    return census_path


def load_realizations(path, n_points):
    """Rebuild a TypeStore from a .realizations file (resume support)."""
    store = TypeStore(n_points)
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        _, _, body = line.partition(":")
        points = [tuple(map(int, chunk.split())) for chunk in body.split("|")]
        facets = exact_facet_list(points)
        if facets is not None:
            store.add(facets, points)
    return store


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("data"))
    ap.add_argument("--n-points", type=int, nargs="*", default=[5, 6, 7, 8])
    ap.add_argument("--budget", type=int, default=300000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--resume", type=Path, default=None, help=".realizations file to continue from")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for n_points in args.n_points:
        target = TARGET_COUNTS[n_points]
        store = None
        if args.resume is not None and args.resume.exists():
            store = load_realizations(args.resume, n_points)
            print(f"resumed {store.count} types from {args.resume}", flush=True)
        print(f"collecting {target} types for n={n_points} ...", flush=True)
        checkpoint = lambda s, n=n_points: write_outputs(s, n, args.out)
        store, tried = collect(
            n_points, args.budget, args.seed, target, store=store, checkpoint=checkpoint
        )
        print(f"  found {store.count}/{target} in {tried} samples", flush=True)
        path = write_outputs(store, n_points, args.out)
        print(f"  wrote {path}", flush=True)
        if store.count < target:
            print(f"  WARNING: incomplete ({store.count}/{target})", flush=True)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
