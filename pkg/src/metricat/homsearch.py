"""Enumeration of hom-sets and isometry sets by pruned backtracking.

Maps are produced in lexicographic order of their index tuples, so every
enumeration is deterministic.  Assignments are pruned as soon as a partial
image pair expands (hom) or distorts (isometry) a domain distance; each
attempted assignment costs one budget node.
"""

from __future__ import annotations

from .budgets import NodeBudget
from .errors import InvalidMorphism
from .spaces import MetMap, Space

_hom_cache: dict[tuple[Space, Space], tuple[MetMap, ...]] = {}
_iso_cache: dict[tuple[Space, Space], tuple[MetMap, ...]] = {}


def clear_caches() -> None:
    _hom_cache.clear()
    _iso_cache.clear()


def _search(dom: Space, cod: Space, exact: bool, budget: NodeBudget):
    n, m = dom.n, cod.n
    if n == 0:
        yield ()
        return
    if m == 0:
        return
    dd, cd = dom.dist, cod.dist
    img = [0] * n

    def extend(i: int):
        di = dd[i]
        for c in range(m):
            budget.spend()
            row = cd[c]
            ok = True
            for j in range(i):
                d = row[img[j]]
                if exact:
                    if d != di[j]:
                        ok = False
                        break
                elif d > di[j]:
                    ok = False
                    break
            if not ok:
                continue
            img[i] = c
            if i + 1 == n:
                yield tuple(img)
            else:
                yield from extend(i + 1)

    yield from extend(0)


def _wrap(dom: Space, cod: Space, tuples) -> tuple[MetMap, ...]:
    out = []
    for t in tuples:
        m = object.__new__(MetMap)
        object.__setattr__(m, "dom", dom)
        object.__setattr__(m, "cod", cod)
        object.__setattr__(m, "map", t)
        out.append(m)
    return tuple(out)


def hom_set(dom: Space, cod: Space, *, max_nodes: int | None = None) -> tuple[MetMap, ...]:
    """All non-expansive maps dom -> cod, lexicographically ordered."""
    if max_nodes is None and (dom, cod) in _hom_cache:
        return _hom_cache[(dom, cod)]
    budget = NodeBudget(max_nodes)
    maps = _wrap(dom, cod, _search(dom, cod, exact=False, budget=budget))
    if max_nodes is None:
        _hom_cache[(dom, cod)] = maps
    return maps


def isometry_set(dom: Space, cod: Space, *, max_nodes: int | None = None) -> tuple[MetMap, ...]:
    """All distance-preserving maps dom -> cod, lexicographically ordered."""
    if max_nodes is None and (dom, cod) in _iso_cache:
        return _iso_cache[(dom, cod)]
    budget = NodeBudget(max_nodes)
    maps = _wrap(dom, cod, _search(dom, cod, exact=True, budget=budget))
    if max_nodes is None:
        _iso_cache[(dom, cod)] = maps
    return maps


def automorphisms(space: Space, *, max_nodes: int | None = None) -> tuple[MetMap, ...]:
    """Self-isometries; on a finite space these are exactly the bijections."""
    return isometry_set(space, space, max_nodes=max_nodes)


def isometric_fillers(
    h: MetMap,
    pinned: MetMap,
    *,
    first_only: bool = False,
    max_nodes: int | None = None,
) -> tuple[MetMap, ...]:
    """Isometric v: cod(h) -> cod(pinned) with v∘h = pinned.

    ``h`` maps X -> Y and ``pinned`` maps X -> K; the search assigns the
    points of Y, with h-image points forced through ``pinned``.  Used both by
    the chain builder's skip rule and by the saturation audit.
    """
    if h.dom != pinned.dom:
        raise InvalidMorphism("filler search needs a shared domain")
    Y, K = h.cod, pinned.cod
    budget = NodeBudget(max_nodes)
    forced: dict[int, int] = {}
    for x in range(h.dom.n):
        y = h.map[x]
        k = pinned.map[x]
        if forced.setdefault(y, k) != k:
            return ()
    yd, kd = Y.dist, K.dist
    img = [0] * Y.n
    found: list[tuple[int, ...]] = []

    def extend(i: int):
        candidates = (forced[i],) if i in forced else range(K.n)
        di = yd[i]
        for c in candidates:
            budget.spend()
            row = kd[c]
            ok = True
            for j in range(i):
                if row[img[j]] != di[j]:
                    ok = False
                    break
            if not ok:
                continue
            img[i] = c
            if i + 1 == Y.n:
                found.append(tuple(img))
                if first_only:
                    return True
            else:
                if extend(i + 1):
                    return True
        return False

    if Y.n == 0:
        found.append(())
    else:
        extend(0)
    return _wrap(Y, K, found)
