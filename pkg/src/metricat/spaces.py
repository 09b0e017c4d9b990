"""Finite extended-metric spaces and non-expansive maps.

A Space is a finite set of points with exact distances in the nonnegative
rationals extended by infinity: zero exactly on the diagonal, symmetric, and
triangle-closed.  Morphisms are non-expansive point maps; the hom-distance
between parallel maps is the sup (here: max) of pointwise distances.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .budgets import DEFAULT_POINT_BUDGET
from .errors import (
    InvalidMorphism,
    MismatchedEndpoints,
    SizeOverflow,
    SpaceValidationError,
    Violation,
)
from .extrat import INF, ZERO, ExtRat, rat


def _axiom_violations(dist, *, full: bool = True):
    """Collect every violated axiom of a square ExtRat matrix."""
    out = []
    n = len(dist)
    for i, row in enumerate(dist):
        if len(row) != n:
            out.append(Violation("NotSquare", (i,)))
    if out:
        return out
    for i in range(n):
        if dist[i][i] != ZERO:
            out.append(Violation("NonZeroDiagonal", (i,)))
    for i in range(n):
        for j in range(i + 1, n):
            if dist[i][j] != dist[j][i]:
                out.append(Violation("Asymmetric", (i, j)))
            elif dist[i][j] == ZERO:
                out.append(Violation("ZeroOffDiagonal", (i, j)))
    if out or not full:
        return out
    for i in range(n):
        di = dist[i]
        for j in range(n):
            if i == j:
                continue
            dij = di[j]
            for k in range(n):
                if k == i or k == j:
                    continue
                if di[k] + dist[k][j] < dij:
                    out.append(Violation("TriangleViolation", (i, j, k)))
                    break
    return out


@dataclass(frozen=True)
class Space:
    """Immutable finite extended-metric space.

    ``dist`` is the full symmetric matrix; ``labels`` are optional display
    names.  Construction checks the cheap axioms (shape, diagonal, symmetry,
    separation); the triangle inequality is enforced at every public boundary
    by :func:`validate_space` and holds by construction for internally built
    spaces (see ``assert_metric`` used throughout the tests).
    """

    dist: tuple[tuple[ExtRat, ...], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "dist", tuple(tuple(row) for row in self.dist))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != len(self.dist):
                raise SpaceValidationError([Violation("NotSquare", (len(self.labels),))])
        bad = _axiom_violations(self.dist, full=False)
        if bad:
            raise SpaceValidationError(bad)

    @property
    def n(self) -> int:
        return len(self.dist)

    def d(self, i: int, j: int) -> ExtRat:
        return self.dist[i][j]

    def assert_metric(self) -> "Space":
        """Full axiom check, triangle included.  Returns self."""
        bad = _axiom_violations(self.dist, full=True)
        if bad:
            raise SpaceValidationError(bad)
        return self

    def relabel(self, labels) -> "Space":
        return Space(self.dist, tuple(labels) if labels is not None else None)

    def __repr__(self) -> str:
        return f"Space(n={self.n})"


def validate_space(rows, labels=None) -> Space:
    """Build a Space from raw rows (ints, 'p/q' strings, or ExtRat).

    Raises SpaceValidationError listing every violated axiom, the triangle
    inequality included.
    """
    dist = tuple(tuple(rat(x) for x in row) for row in rows)
    bad = _axiom_violations(dist, full=True)
    if bad:
        raise SpaceValidationError(bad)
    return Space(dist, tuple(labels) if labels is not None else None)


def empty_space() -> Space:
    return Space(())


def one_point(label: str | None = None) -> Space:
    return Space(((ZERO,),), (label,) if label else None)


def two_point(eps) -> Space:
    """The two-point space at distance eps; at eps = 0 this is the point."""
    e = rat(eps)
    if e == ZERO:
        return one_point()
    return Space(((ZERO, e), (e, ZERO)))


@dataclass(frozen=True)
class MetMap:
    """A non-expansive map between spaces, stored as a point-index tuple."""

    dom: Space
    cod: Space
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))
        if len(self.map) != self.dom.n:
            raise InvalidMorphism(
                f"map has {len(self.map)} entries for a {self.dom.n}-point domain"
            )
        m = self.cod.n
        for i, p in enumerate(self.map):
            if not (0 <= p < m):
                raise InvalidMorphism(f"image of point {i} out of range: {p}")
        dd, cd = self.dom.dist, self.cod.dist
        for i in range(self.dom.n):
            fi = self.map[i]
            for j in range(i + 1, self.dom.n):
                if cd[fi][self.map[j]] > dd[i][j]:
                    raise InvalidMorphism(
                        f"expansion at pair ({i}, {j}): "
                        f"{cd[fi][self.map[j]]} > {dd[i][j]}"
                    )

    def __call__(self, i: int) -> int:
        return self.map[i]

    def then(self, g: "MetMap") -> "MetMap":
        """Diagrammatic composition: (f.then(g))(x) = g(f(x))."""
        if self.cod != g.dom:
            raise MismatchedEndpoints("composition endpoints do not match")
        return MetMap(self.dom, g.cod, tuple(g.map[p] for p in self.map))

    def __repr__(self) -> str:
        return f"MetMap({self.dom.n}->{self.cod.n}, {self.map})"


def identity(space: Space) -> MetMap:
    return MetMap(space, space, tuple(range(space.n)))


def compose(g: MetMap, f: MetMap) -> MetMap:
    """Classical composition g after f."""
    return f.then(g)


def hom_dist(f: MetMap, g: MetMap) -> ExtRat:
    """Sup-distance between parallel maps; ZERO on an empty domain."""
    if f.dom != g.dom or f.cod != g.cod:
        raise MismatchedEndpoints("hom_dist needs parallel morphisms")
    best = ZERO
    cd = f.cod.dist
    for p, q in zip(f.map, g.map):
        d = cd[p][q]
        if d > best:
            best = d
    return best


def is_eps_homotopic(f: MetMap, g: MetMap, eps) -> bool:
    return hom_dist(f, g) <= rat(eps)


def is_isometry(f: MetMap) -> bool:
    """Distance-preserving (hence injective, by separation)."""
    dd, cd = f.dom.dist, f.cod.dist
    for i in range(f.dom.n):
        fi = f.map[i]
        for j in range(i + 1, f.dom.n):
            if cd[fi][f.map[j]] != dd[i][j]:
                return False
    return True


def subspace(space: Space, points) -> tuple[Space, MetMap]:
    """Induced subspace on the given point indices, with its inclusion."""
    pts = tuple(points)
    sub = Space(
        tuple(tuple(space.dist[i][j] for j in pts) for i in pts),
        tuple(space.labels[i] for i in pts) if space.labels else None,
    )
    return sub, MetMap(sub, space, pts)


@dataclass(frozen=True)
class CoproductResult:
    space: Space
    injections: tuple[MetMap, ...]


def coproduct(spaces) -> CoproductResult:
    """Disjoint union; distinct summands sit at infinite distance."""
    spaces = tuple(spaces)
    offsets = []
    total = 0
    for s in spaces:
        offsets.append(total)
        total += s.n
    dist = [[INF] * total for _ in range(total)]
    for s, off in zip(spaces, offsets):
        for i in range(s.n):
            row = dist[off + i]
            for j in range(s.n):
                row[off + j] = s.dist[i][j]
    space = Space(tuple(tuple(row) for row in dist))
    injections = tuple(
        MetMap(s, space, tuple(range(off, off + s.n)))
        for s, off in zip(spaces, offsets)
    )
    return CoproductResult(space, injections)


@dataclass(frozen=True)
class ProductResult:
    space: Space
    projections: tuple[MetMap, ...]
    coords: tuple[tuple[int, ...], ...] = field(repr=False)

    def point(self, coord) -> int:
        return self.coords.index(tuple(coord))


def product(spaces, *, max_points: int | None = None) -> ProductResult:
    """Cartesian product under the max-metric; empty product is the point."""
    spaces = tuple(spaces)
    cap = DEFAULT_POINT_BUDGET if max_points is None else max_points
    size = 1
    for s in spaces:
        size *= s.n
    if size > cap:
        raise SizeOverflow(f"product would have {size} points (budget {cap})")
    coords = tuple(itertools.product(*(range(s.n) for s in spaces)))
    dist = []
    for a in coords:
        row = []
        for b in coords:
            best = ZERO
            for s, i, j in zip(spaces, a, b):
                d = s.dist[i][j]
                if d > best:
                    best = d
            row.append(best)
        dist.append(tuple(row))
    space = Space(tuple(dist))
    projections = tuple(
        MetMap(space, s, tuple(c[k] for c in coords))
        for k, s in enumerate(spaces)
    )
    return ProductResult(space, projections, coords)
