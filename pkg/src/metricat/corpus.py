"""Deterministic seeded corpora of small spaces, maps, and diagrams.

Everything here is a pure function of the provided RNG, which callers seed;
re-running with the same seed reproduces every instance bit for bit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .colimits import FinDiagram
from .extrat import INF, ExtRat, rat
from .homsearch import hom_set
from .reflect import Semimetric
from .spaces import MetMap, Space, empty_space, identity, one_point, validate_space
from .errors import SpaceValidationError

DEFAULT_GRID: tuple[ExtRat, ...] = (
    rat("1/2"), rat(1), rat("3/2"), rat(2), INF,
)


@dataclass(frozen=True)
class CorpusConfig:
    """Knobs for corpus generation; defaults match the standard small corpus."""

    max_points: int = 4
    grid: tuple[ExtRat, ...] = DEFAULT_GRID
    eps_values: tuple[ExtRat, ...] = (rat("1/2"), rat(1), rat("3/2"), rat(2))
    allow_empty: bool = False


def random_space(rng: random.Random, cfg: CorpusConfig = CorpusConfig(),
                 *, min_points: int | None = None) -> Space:
    lo = 0 if cfg.allow_empty else 1
    if min_points is not None:
        lo = min_points
    n = rng.randint(lo, cfg.max_points)
    if n == 0:
        return empty_space()
    for _ in range(200):
        rows = [[rat(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = rng.choice(cfg.grid)
                rows[i][j] = rows[j][i] = v
        try:
            return validate_space(rows)
        except SpaceValidationError:
            continue
    # all-equal distances always satisfy the axioms
    v = rng.choice(cfg.grid)
    rows = [[v] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = rat(0)
    return validate_space(rows)


def random_semimetric(rng: random.Random, n: int, values) -> Semimetric:
    rows = [[rat(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.choice(tuple(values))
            rows[i][j] = rows[j][i] = v
    return Semimetric(tuple(tuple(r) for r in rows))


def random_map(rng: random.Random, dom: Space, cod: Space) -> MetMap | None:
    maps = hom_set(dom, cod)
    if not maps:
        return None
    return maps[rng.randrange(len(maps))]


def random_morphism(rng: random.Random, cfg: CorpusConfig = CorpusConfig()) -> MetMap:
    for _ in range(100):
        dom = random_space(rng, cfg)
        cod = random_space(rng, cfg)
        m = random_map(rng, dom, cod)
        if m is not None:
            return m
    return identity(one_point())


def random_span(rng: random.Random, cfg: CorpusConfig = CorpusConfig()):
    """(f: A -> B, g: A -> C) with a shared domain."""
    for _ in range(100):
        A = random_space(rng, cfg)
        B = random_space(rng, cfg)
        C = random_space(rng, cfg)
        f = random_map(rng, A, B)
        g = random_map(rng, A, C)
        if f is not None and g is not None:
            return f, g
    p = one_point()
    return identity(p), identity(p)


def random_parallel_pair(rng: random.Random, cfg: CorpusConfig = CorpusConfig()):
    for _ in range(100):
        A = random_space(rng, cfg)
        B = random_space(rng, cfg)
        maps = hom_set(A, B)
        if maps:
            f = maps[rng.randrange(len(maps))]
            g = maps[rng.randrange(len(maps))]
            return f, g
    p = one_point()
    return identity(p), identity(p)


def random_diagram(rng: random.Random, cfg: CorpusConfig = CorpusConfig(),
                   *, max_objects: int = 3, max_arrows: int = 3) -> FinDiagram:
    n_obj = rng.randint(1, max_objects)
    objects = tuple(random_space(rng, cfg) for _ in range(n_obj))
    arrows = []
    for _ in range(rng.randint(0, max_arrows)):
        i = rng.randrange(n_obj)
        j = rng.randrange(n_obj)
        m = random_map(rng, objects[i], objects[j])
        if m is not None:
            arrows.append((i, j, m))
    return FinDiagram(objects, tuple(arrows))


def random_split_mono(rng: random.Random, cfg: CorpusConfig = CorpusConfig()):
    """A section f with a strict retraction, or None if the draw fails.

    Built by embedding a subspace back into its parent and searching for a
    retraction fixing it pointwise.
    """
    from .spaces import subspace

    for _ in range(60):
        L = random_space(rng, cfg, min_points=1)
        k = rng.randint(1, L.n)
        pts = tuple(sorted(rng.sample(range(L.n), k)))
        K, incl = subspace(L, pts)
        for p in hom_set(L, K):
            if incl.then(p).map == identity(K).map:
                return incl, p
    return None
