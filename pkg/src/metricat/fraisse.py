"""Saturated chain construction over a finite distance grid.

The builder enumerates every space over the grid up to isometry, catalogs
the isometries between them (deduplicated modulo codomain automorphisms),
and grows a chain from the empty space: at step n every span (u: X -> K_n,
h: X -> Y) drawn from the current stratum is glued on by one wide pushout.
The saturation audit then certifies, stage by stage, that every isometric
image of a catalogued domain extends along every catalogued isometry into
the next stage.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .budgets import (
    DEFAULT_NODE_BUDGET,
    DEFAULT_SPAN_BUDGET,
    DEFAULT_STAGE_POINT_BUDGET,
    NodeBudget,
)
from .canonical import canonical_form
from .colimits import pushout
from .errors import BudgetExceeded, MetricatError, MismatchedEndpoints
from .extrat import ZERO, ExtRat, rat
from .homsearch import automorphisms, hom_set, isometric_fillers, isometry_set
from .spaces import (
    CoproductResult,
    MetMap,
    Space,
    coproduct,
    empty_space,
    is_isometry,
    identity,
)


@dataclass(frozen=True)
class DistanceGrid:
    """Admissible distances (positive, possibly INF) and a size cap."""

    values: tuple[ExtRat, ...]
    max_size: int

    def __post_init__(self):
        vals = tuple(sorted({rat(v) for v in self.values}))
        if any(v == ZERO for v in vals):
            raise ValueError("grid distances must be positive")
        if not vals:
            raise ValueError("grid must not be empty")
        if self.max_size < 0:
            raise ValueError("max_size must be nonnegative")
        object.__setattr__(self, "values", vals)


def enumerate_spaces(grid: DistanceGrid, *, max_nodes: int | None = None) -> tuple[Space, ...]:
    """Every space over the grid, one per isometry class, smallest first."""
    budget = NodeBudget(max_nodes)
    out: list[Space] = []
    seen: set[tuple] = set()
    for n in range(grid.max_size + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for combo in itertools.product(grid.values, repeat=len(pairs)):
            budget.spend()
            dist = [[ZERO] * n for _ in range(n)]
            for (i, j), v in zip(pairs, combo):
                dist[i][j] = dist[j][i] = v
            ok = True
            for i in range(n):
                for j in range(n):
                    if i == j:
                        continue
                    for k in range(n):
                        if k == i or k == j:
                            continue
                        if dist[i][k] + dist[k][j] < dist[i][j]:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                continue
            space = Space(tuple(tuple(row) for row in dist))
            canon = canonical_form(space).space
            if canon.dist not in seen:
                seen.add(canon.dist)
                out.append(canon)
    return tuple(sorted(out, key=lambda s: (s.n, s.dist)))


@dataclass(frozen=True)
class IsometryCatalog:
    """All isometries between catalog spaces, modulo codomain automorphism.

    Stratum n holds the isometries whose endpoints both have at most
    min(n + 1, max_size) points; the strata are nested by construction.
    """

    spaces: tuple[Space, ...]
    isometries: tuple[MetMap, ...]
    max_size: int

    def stratum(self, n: int) -> tuple[MetMap, ...]:
        cap = min(n + 1, self.max_size)
        return tuple(
            h for h in self.isometries if h.dom.n <= cap and h.cod.n <= cap
        )


def catalog_isometries(spaces, *, max_size: int | None = None) -> IsometryCatalog:
    spaces = tuple(spaces)
    cap = max_size if max_size is not None else max((s.n for s in spaces), default=0)
    isometries: list[MetMap] = []
    for X in spaces:
        for Y in spaces:
            if X.n > Y.n:
                continue
            auts = automorphisms(Y)
            reps: dict[tuple[int, ...], MetMap] = {}
            for h in isometry_set(X, Y):
                orbit_min = min(
                    tuple(a.map[p] for p in h.map) for a in auts
                )
                if orbit_min not in reps:
                    reps[orbit_min] = h
            isometries.extend(reps[key] for key in sorted(reps))
    return IsometryCatalog(spaces, tuple(isometries), cap)


@dataclass(frozen=True)
class SpanPolicy:
    """How spans are gathered at each step.

    isometric_u: only isometric u: X -> K_n anchor a span (default); the
    full-span mode admits every non-expansive u.
    skip_satisfied: drop spans already witnessed by an isometric
    v: Y -> K_n with v∘h = u.
    """

    isometric_u: bool = True
    skip_satisfied: bool = True


POLICIES = {
    "iso-skip": SpanPolicy(True, True),
    "iso-all": SpanPolicy(True, False),
    "full-skip": SpanPolicy(False, True),
    "full-all": SpanPolicy(False, False),
}

DEFAULT_POLICY = "iso-skip"


def policy_name(policy: SpanPolicy) -> str:
    for name, p in POLICIES.items():
        if p == policy:
            return name
    raise ValueError("unnamed policy")


@dataclass(frozen=True)
class Span:
    u: MetMap  # X -> K_n
    h: MetMap  # X -> Y, an isometry from the catalog

    def __post_init__(self):
        if self.u.dom != self.h.dom:
            raise MismatchedEndpoints("span legs need a shared domain")


@dataclass(frozen=True)
class SpanRecord:
    span: Span
    copy: MetMap  # Y -> K_{n+1}, the glued image of the codomain


@dataclass(frozen=True)
class ChainStage:
    index: int
    space: Space
    embedding: MetMap | None              # k: K_n -> K_{n+1}; None on the last stage
    span_log: tuple[SpanRecord, ...]
    skipped: int
    stratum: int
    coverage_complete: bool


def chain_step(space: Space, spans, *, max_points: int | None = None):
    """One wide pushout: glue every span's codomain onto the space.

    Returns (next_space, k, records) where k is the stage embedding and each
    record carries the span's copy of its codomain inside the new stage.
    """
    spans = tuple(spans)
    cap = DEFAULT_STAGE_POINT_BUDGET if max_points is None else max_points
    if not spans:
        if space.n > cap:
            raise BudgetExceeded(f"stage has {space.n} points (budget {cap})")
        return space, identity(space), ()
    total = space.n + sum(s.h.cod.n for s in spans)
    if total > cap:
        raise BudgetExceeded(
            f"glued stage would start from {total} points (budget {cap})"
        )
    xs = coproduct(tuple(s.u.dom for s in spans))
    ys = coproduct(tuple(s.h.cod for s in spans))
    u_all: list[int] = []
    h_all: list[int] = []
    y_offsets: list[int] = []
    off = 0
    for s in spans:
        u_all.extend(s.u.map)
        h_all.extend(off + p for p in s.h.map)
        y_offsets.append(off)
        off += s.h.cod.n
    f = MetMap(xs.space, space, tuple(u_all))          # <u>: X^ -> K_n
    g = MetMap(xs.space, ys.space, tuple(h_all))       # ⊔h: X^ -> Y^
    po = pushout(f, g)
    k = po.leg_g
    if not is_isometry(k):
        raise MetricatError("stage embedding failed to be an isometry")
    records = []
    for s, off in zip(spans, y_offsets):
        copy = MetMap(s.h.cod, po.apex, po.leg_f.map[off:off + s.h.cod.n])
        if s.h.then(copy).map != s.u.then(k).map:
            raise MetricatError("span gluing failed to commute")
        records.append(SpanRecord(s, copy))
    return po.apex, k, tuple(records)


def _span_dedup_group(h: MetMap) -> tuple[tuple[int, ...], ...]:
    """Domain automorphisms tau with h∘tau equal to some aut of cod ∘ h."""
    cod_orbit = {tuple(a.map[p] for p in h.map) for a in automorphisms(h.cod)}
    group = []
    for tau in automorphisms(h.dom):
        if tuple(h.map[p] for p in tau.map) in cod_orbit:
            group.append(tuple(tau.map))
    return tuple(group)


def gather_spans(space: Space, stratum, policy: SpanPolicy,
                 *, max_nodes: int | None = None) -> tuple[tuple[Span, ...], int]:
    """Deduplicated spans for one step, plus the count skipped as satisfied."""
    spans: list[Span] = []
    skipped = 0
    for h in stratum:
        X = h.dom
        anchors = (
            isometry_set(X, space, max_nodes=max_nodes)
            if policy.isometric_u
            else hom_set(X, space, max_nodes=max_nodes)
        )
        group = _span_dedup_group(h)
        seen: set[tuple[int, ...]] = set()
        for u in anchors:
            key = min(tuple(u.map[p] for p in tau) for tau in group)
            if key in seen:
                continue
            seen.add(key)
            if policy.skip_satisfied and isometric_fillers(
                h, u, first_only=True, max_nodes=max_nodes
            ):
                skipped += 1
                continue
            spans.append(Span(u, h))
    return tuple(spans), skipped


def build_chain(grid: DistanceGrid, steps: int, policy: SpanPolicy | str = DEFAULT_POLICY,
                *, max_points: int | None = None, max_spans: int | None = None,
                max_nodes: int | None = None):
    """Grow the chain K_0 = empty -> K_1 -> ... for the given number of steps.

    Returns (stages, catalog).  On a budget violation the exception carries
    the stages completed so far, so callers can persist the partial chain.
    """
    if isinstance(policy, str):
        policy = POLICIES[policy]
    span_cap = DEFAULT_SPAN_BUDGET if max_spans is None else max_spans
    catalog = catalog_isometries(enumerate_spaces(grid), max_size=grid.max_size)
    stages: list[ChainStage] = []
    current = empty_space()
    for n in range(steps):
        try:
            spans, skipped = gather_spans(
                current, catalog.stratum(n), policy, max_nodes=max_nodes
            )
            if len(spans) > span_cap:
                raise BudgetExceeded(
                    f"step {n} gathered {len(spans)} spans (budget {span_cap})"
                )
            nxt, k, records = chain_step(current, spans, max_points=max_points)
        except BudgetExceeded as exc:
            stages.append(ChainStage(n, current, None, (), 0, n, False))
            exc.partial = (tuple(stages), catalog)
            raise
        stages.append(ChainStage(n, current, k, records, skipped, n, True))
        current = nxt
    stages.append(ChainStage(steps, current, None, (), 0, steps, True))
    return tuple(stages), catalog


@dataclass(frozen=True)
class AuditWitness:
    stage: int
    h: MetMap
    u: MetMap


@dataclass(frozen=True)
class StageAudit:
    stage: int
    checked: int
    missing: tuple[AuditWitness, ...]


@dataclass(frozen=True)
class AuditReport:
    stages: tuple[StageAudit, ...]
    ok: bool


def audit_saturation(stages, catalog: IsometryCatalog,
                     *, max_nodes: int | None = None) -> AuditReport:
    """Certify: every isometric u': X -> K_n extends along every stratum-n
    isometry h: X -> Y to an isometric v: Y -> K_{n+1} with v∘h = k∘u'."""
    out = []
    ok = True
    for n in range(len(stages) - 1):
        stage = stages[n]
        if stage.embedding is None:
            continue
        k = stage.embedding
        checked = 0
        missing = []
        for h in catalog.stratum(stage.stratum):
            for u in isometry_set(h.dom, stage.space, max_nodes=max_nodes):
                checked += 1
                pinned = u.then(k)
                if not isometric_fillers(h, pinned, first_only=True,
                                         max_nodes=max_nodes):
                    missing.append(AuditWitness(n, h, u))
        if missing:
            ok = False
        out.append(StageAudit(n, checked, tuple(missing)))
    return AuditReport(tuple(out), ok)
