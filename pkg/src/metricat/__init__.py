"""Exact finite generalized metric spaces with approximate colimits.

Distances are exact nonnegative rationals or infinity.  The package computes
semimetric reflections, ordinary and tolerance-relaxed pushouts,
coequalizers, and finite-diagram colimits, tests injectivity, splitness, and
purity against finite probe families, runs a seeded law harness over random
corpora, and grows saturated chains of spaces by wide pushouts with an exact
extension audit.
"""

from .__about__ import __version__
from .budgets import (
    DEFAULT_NODE_BUDGET, DEFAULT_POINT_BUDGET, DEFAULT_SPAN_BUDGET,
    DEFAULT_STAGE_POINT_BUDGET, NodeBudget, node_ceiling,
)
from .canonical import CanonicalResult, are_isomorphic, canonical_form, canonical_witness
from .colimits import (
    CylinderResult, EpsColimitResult, EpsCoequalizerResult, EpsPushoutResult,
    FinDiagram, comparison, cylinder, cylinder_factorization, eps_coequalizer,
    eps_colimit, eps_pushout, pushout,
)
from .corpus import CorpusConfig
from .errors import (
    BudgetExceeded, InvalidMorphism, MetricatError, MismatchedEndpoints,
    SchemaError, SizeOverflow, SpaceValidationError, Violation,
)
from .extrat import INF, ZERO, ExtRat, rat
from .fraisse import (
    AuditReport, ChainStage, DistanceGrid, IsometryCatalog, Span, SpanPolicy,
    SpanRecord, audit_saturation, build_chain, catalog_isometries, chain_step,
    enumerate_spaces, gather_spans,
)
from .homsearch import automorphisms, hom_set, isometric_fillers, isometry_set
from .injectivity import (
    ApproxInjReport, InjReport, InjVerdict, PuritySquare, TestFamily,
    inj_class, injectivity_defect, is_approx_injective, is_eps_injective,
    is_eps_mono, is_eps_split, purity,
)
from .laws import LawReport, LawResult, law_harness, run_law
from .reflect import Reflection, Semimetric, reflect, semimetric_of, semimetric_of_space
from .spaces import (
    MetMap, Space, compose, coproduct, empty_space, hom_dist, identity,
    is_eps_homotopic, is_isometry, one_point, product, subspace, two_point,
    validate_space,
)
from .verify import (
    Counterexample, VerifyReport, verify_coequalizer, verify_colimit,
    verify_pushout,
)

__all__ = [name for name in dir() if not name.startswith("_")]
