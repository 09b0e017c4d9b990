"""Independent reference implementations the test suite compares against.

Everything here is deliberately naive: simple-path enumeration instead of
relaxation, all-permutations isomorphism search, union-find quotients.  The
point is to agree with the fast code while sharing none of its structure.
"""

import itertools

from metricat.extrat import INF, ZERO, ExtRat
from metricat.spaces import Space


def simple_path_closure(dist):
    """All-pairs shortest distance by enumerating simple paths.

    dist: square list-of-lists of ExtRat, assumed symmetric with zero
    diagonal.  Returns a new matrix; never mutates the input.
    """
    n = len(dist)
    out = [[ZERO] * n for _ in range(n)]
    perms_cache = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            best = dist[i][j]
            others = [k for k in range(n) if k != i and k != j]
            for r in range(1, len(others) + 1):
                key = (tuple(others), r)
                if key not in perms_cache:
                    perms_cache[key] = list(itertools.permutations(others, r))
                for mid in perms_cache[key]:
                    total = ZERO
                    prev = i
                    for k in mid:
                        total = total + dist[prev][k]
                        prev = k
                    total = total + dist[prev][j]
                    if total < best:
                        best = total
            out[i][j] = best
    return out


def isomorphic_brute(a: Space, b: Space) -> bool:
    """Isometric-bijection search over every permutation."""
    if a.n != b.n:
        return False
    for perm in itertools.permutations(range(a.n)):
        if all(
            b.dist[perm[i]][perm[j]] == a.dist[i][j]
            for i in range(a.n)
            for j in range(a.n)
        ):
            return True
    return False


def hom_brute(dom: Space, cod: Space):
    """Every non-expansive map dom -> cod, as sorted point tuples."""
    if dom.n == 0:
        return [()]
    found = []
    for arr in itertools.product(range(cod.n), repeat=dom.n):
        if all(
            cod.dist[arr[i]][arr[j]] <= dom.dist[i][j]
            for i in range(dom.n)
            for j in range(i + 1, dom.n)
        ):
            found.append(arr)
    return found


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def ordinary_colimit_oracle(diagram) -> Space:
    """Plain colimit of a finite diagram, built by union-find.

    Identifies x with D(e)(x) for every arrow e, takes min distance over
    class representatives, closes paths, and collapses glued-to-zero
    classes.  Returns only the apex.
    """
    sizes = [obj.n for obj in diagram.objects]
    offsets = []
    total = 0
    for s in sizes:
        offsets.append(total)
        total += s
    uf = _UnionFind(total)
    for src, dst, m in diagram.arrows:
        for x in range(m.dom.n):
            uf.union(offsets[src] + x, offsets[dst] + m.map[x])
    roots = sorted({uf.find(p) for p in range(total)})
    index = {r: i for i, r in enumerate(roots)}
    k = len(roots)
    base = [[INF] * k for _ in range(k)]
    for i in range(k):
        base[i][i] = ZERO
    for obj_idx, obj in enumerate(diagram.objects):
        off = offsets[obj_idx]
        for x in range(obj.n):
            for y in range(obj.n):
                cx = index[uf.find(off + x)]
                cy = index[uf.find(off + y)]
                if cx != cy and obj.dist[x][y] < base[cx][cy]:
                    base[cx][cy] = obj.dist[x][y]
    closed = simple_path_closure(base)
    merged = _UnionFind(k)
    for i in range(k):
        for j in range(i + 1, k):
            if closed[i][j] == ZERO:
                merged.union(i, j)
    final_roots = sorted({merged.find(i) for i in range(k)})
    final_index = {r: i for i, r in enumerate(final_roots)}
    m = len(final_roots)
    dist = [[ZERO] * m for _ in range(m)]
    for i in range(k):
        for j in range(k):
            fi = final_index[merged.find(i)]
            fj = final_index[merged.find(j)]
            if fi != fj:
                dist[fi][fj] = closed[i][j]
    return Space(tuple(tuple(row) for row in dist))


def rat_grid():
    """Shared small value grid for randomized matrices."""
    return (
        ExtRat.parse("1/2"),
        ExtRat.parse("1"),
        ExtRat.parse("2"),
        ExtRat.parse("5"),
        INF,
    )


def random_symmetric_matrix(rng, n, values):
    """Symmetric zero-diagonal matrix with entries drawn from values."""
    dist = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.choice(values)
            dist[i][j] = v
            dist[j][i] = v
    return [tuple(row) for row in dist]
