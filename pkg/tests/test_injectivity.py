import random

import pytest

from metricat.corpus import CorpusConfig, random_space, random_split_mono
from metricat.extrat import INF, ZERO, rat
from metricat.injectivity import (
    TestFamily as ProbeFamily,
    injectivity_defect,
    inj_class,
    is_approx_injective,
    is_eps_injective,
    is_eps_mono,
    is_eps_split,
    purity,
)
from metricat.spaces import (
    MetMap,
    empty_space,
    identity,
    one_point,
    product,
    subspace,
    two_point,
    validate_space,
)

PATH3 = validate_space([[0, 1, 2], [1, 0, 1], [2, 1, 0]])


def collapse_chain(eps):
    """Three points in a row at gaps eps, endpoints at 2*eps, crushed to 1."""
    e = rat(eps)
    X = validate_space([
        [ZERO, e, 2 * e],
        [e, ZERO, e],
        [2 * e, e, ZERO],
    ])
    return MetMap(X, one_point(), (0, 0, 0))


class TestEpsInjective:
    def test_infinite_tolerance_with_fillers(self):
        f = MetMap(one_point(), two_point(2), (0,))
        ok, _ = is_eps_injective(two_point(1), f, INF)
        assert ok

    def test_terminal_subject_always_passes(self):
        f = MetMap(one_point(), two_point(2), (0,))
        for eps in (ZERO, rat("1/2"), INF):
            assert is_eps_injective(one_point(), f, eps)[0]

    def test_short_gap_against_long_gap_isometry(self):
        f = MetMap(one_point(), two_point(2), (0,))
        ok, _ = is_eps_injective(two_point(1), f, 0)
        assert ok

    def test_defect_exactness_on_collapse(self):
        f = MetMap(two_point(2), one_point(), (0, 0))
        defect, worst_g, best_h = injectivity_defect(two_point(2), f)
        assert defect == rat(2)
        assert worst_g is not None and best_h is not None
        assert not is_eps_injective(two_point(2), f, 1)[0]
        assert is_eps_injective(two_point(2), f, 2)[0]

    def test_failure_returns_replayable_witness(self):
        f = MetMap(two_point(2), one_point(), (0, 0))
        ok, witness = is_eps_injective(two_point(2), f, 1)
        assert not ok
        # the witness really has no filler within tolerance
        best = min(
            max(two_point(2).d(h, witness.map[x]) for x, h in [(0, 0), (1, 0)])
            for h in range(2)
        )
        assert best > rat(1)

    def test_no_filler_exists_at_any_tolerance(self):
        f = MetMap(empty_space(), one_point(), ())
        ok, witness = is_eps_injective(empty_space(), f, INF)
        assert not ok
        assert witness is not None and witness.map == ()

    def test_vacuous_when_nothing_maps_in(self):
        f = identity(one_point())
        assert is_eps_injective(empty_space(), f, 0)[0]


class TestApproxInjective:
    def test_zero_defect_certifies_exactly(self):
        f = MetMap(one_point(), two_point(1), (0,))
        report = is_approx_injective(two_point(1), f, (rat(1), rat("1/2"), rat("1/4")))
        assert report.defect == ZERO
        assert report.exact
        assert report.grid_ok

    def test_per_grid_verdicts(self):
        f = MetMap(two_point(2), one_point(), (0, 0))
        report = is_approx_injective(two_point(1), f, (rat(1), rat("1/2"), rat("1/4")))
        assert report.defect == rat(1)
        assert [ok for _, ok in report.per_eps] == [True, False, False]
        assert not report.grid_ok
        assert not report.exact


class TestInjClass:
    def test_empty_test_set_passes_everyone(self):
        candidates = [one_point(), two_point(1), PATH3]
        reports = inj_class([], 0, candidates)
        assert all(r.passed for r in reports)

    def test_pass_sets_grow_with_tolerance(self):
        rng = random.Random(41)
        cfg = CorpusConfig(max_points=3)
        tests = []
        while len(tests) < 3:
            A = random_space(rng, CorpusConfig(max_points=2))
            B = random_space(rng, CorpusConfig(max_points=2))
            from metricat.homsearch import hom_set

            maps = hom_set(A, B)
            if maps:
                tests.append(maps[rng.randrange(len(maps))])
        candidates = [random_space(rng, cfg) for _ in range(6)]
        lo = {i for i, r in enumerate(inj_class(tests, rat("1/2"), candidates)) if r.passed}
        hi = {i for i, r in enumerate(inj_class(tests, rat(2), candidates)) if r.passed}
        assert lo <= hi

    def test_products_of_passing_subjects_pass(self):
        f = MetMap(one_point(), two_point(2), (0,))
        eps = rat(1)
        k1, k2 = two_point(1), two_point("1/2")
        assert is_eps_injective(k1, f, eps)[0]
        assert is_eps_injective(k2, f, eps)[0]
        P = product((k1, k2)).space
        assert is_eps_injective(P, f, eps)[0]


class TestEpsSplit:
    def test_section_splits_exactly(self):
        sub, incl = subspace(PATH3, (0, 1))
        ok, p = is_eps_split(incl, 0)
        assert ok
        assert incl.then(p).map == (0, 1)

    def test_collapse_chain_splits_at_its_gap(self):
        eps = rat(1)
        f = collapse_chain(eps)
        ok, p = is_eps_split(f, eps)
        assert ok
        # the middle point is the only retraction within eps
        assert p.map == (1,)

    def test_isometry_into_disconnected_pair(self):
        f = MetMap(one_point(), two_point("inf"), (0,))
        ok, _ = is_eps_split(f, 1)
        assert ok

    def test_splitness_threshold(self):
        f = MetMap(two_point(2), one_point(), (0, 0))
        assert not is_eps_split(f, 1)[0]
        ok, p = is_eps_split(f, 2)
        assert ok and p is not None

    def test_no_retraction_at_all(self):
        f = MetMap(empty_space(), one_point(), ())
        assert not is_eps_split(f, INF)[0]


class TestEpsMono:
    def test_triple_verdict_on_collapse_chain(self):
        probes = ProbeFamily.of([one_point()])
        for eps in (rat("1/2"), rat(1), rat(2)):
            f = collapse_chain(eps)
            assert is_eps_split(f, eps)[0]
            mono_at_eps, witness = is_eps_mono(f, eps, probes)
            assert not mono_at_eps
            C, g, h = witness
            assert f.dom.d(g.map[0], h.map[0]) > eps
            assert is_eps_mono(f, 2 * eps, probes)[0]

    def test_isometries_are_monic(self):
        sub, incl = subspace(PATH3, (0, 2))
        fam = ProbeFamily.of([one_point(), two_point(1), two_point(2)])
        assert is_eps_mono(incl, 0, fam)[0]

    def test_infinite_tolerance_always_passes(self):
        f = collapse_chain(1)
        assert is_eps_mono(f, INF, ProbeFamily.of([one_point()]))[0]


FAMILY_12 = ProbeFamily.of([one_point(), two_point(2)])

# tolerance verdicts for purity are not monotone: these two maps flip back
# and forth as eps grows, so the flips are frozen here as regressions
PURE_FLIP_DOM = validate_space([
    [0, 2, 1],
    [2, 0, 1],
    [1, 1, 0],
])
PURE_FLIP_COD = validate_space([
    ["0", "1", "1/2"],
    ["1", "0", "1/2"],
    ["1/2", "1/2", "0"],
])
WEAK_FLIP_DOM = validate_space([
    ["0", "2", "3/2"],
    ["2", "0", "3/2"],
    ["3/2", "3/2", "0"],
])


class TestPurity:
    def test_sections_are_pure_at_every_tolerance(self):
        sub, incl = subspace(PATH3, (0, 1))
        fam = ProbeFamily.of([one_point(), two_point(1), two_point(2)])
        for eps in (ZERO, rat("1/2"), rat(1), INF):
            assert purity(incl, eps, "pure", fam)[0]

    def test_pure_implies_weak_and_bare(self):
        rng = random.Random(42)
        cfg = CorpusConfig(max_points=3)
        fam = ProbeFamily.of([one_point(), two_point(1)])
        from metricat.homsearch import hom_set

        tested = 0
        while tested < 25:
            K = random_space(rng, cfg)
            L = random_space(rng, cfg)
            maps = hom_set(K, L)
            if not maps:
                continue
            f = maps[rng.randrange(len(maps))]
            eps = rat("1/2") if rng.random() < 0.5 else rat(1)
            tested += 1
            if purity(f, eps, "pure", fam)[0]:
                assert purity(f, eps, "weak", fam)[0]
                assert purity(f, eps, "bare", fam)[0]

    def test_counterexample_square_is_replayable(self):
        f = collapse_chain(1)
        bigger = ProbeFamily.of([one_point(), two_point(2), f.dom])
        ok, square = purity(f, rat("1/2"), "pure", bigger)
        assert not ok
        assert square.best > rat("1/2")
        # the square really commutes within tolerance
        from metricat.spaces import hom_dist

        assert hom_dist(square.u.then(f), square.g.then(square.v)) <= rat("1/2")

    def test_unknown_variant_rejected(self):
        with pytest.raises(ValueError):
            purity(identity(one_point()), 1, "strict", FAMILY_12)

    def test_pure_verdict_flips_with_tolerance(self):
        f = MetMap(PURE_FLIP_DOM, PURE_FLIP_COD, (0, 1, 2))
        verdicts = [purity(f, e, "pure", FAMILY_12)[0] for e in (rat("1/4"), rat("1/2"), rat(1))]
        assert verdicts == [True, False, True]

    def test_weak_verdict_flips_with_tolerance(self):
        f = MetMap(WEAK_FLIP_DOM, PURE_FLIP_COD, (0, 1, 2))
        verdicts = [
            purity(f, e, "weak", FAMILY_12)[0]
            for e in (rat("1/4"), rat("1/2"), rat("3/4"))
        ]
        assert verdicts == [True, False, True]

    def test_family_monotone(self):
        f = MetMap(PURE_FLIP_DOM, PURE_FLIP_COD, (0, 1, 2))
        smaller = ProbeFamily.of([one_point()])
        for variant in ("pure", "weak", "bare"):
            for eps in (rat("1/4"), rat("1/2"), rat(1)):
                if purity(f, eps, variant, FAMILY_12)[0]:
                    assert purity(f, eps, variant, smaller)[0]

    def test_no_filler_map_at_all_fails(self):
        f = MetMap(empty_space(), one_point(), ())
        fam = ProbeFamily.of([empty_space(), one_point()])
        ok, square = purity(f, INF, "pure", fam)
        assert not ok
        assert square.best is INF


class TestProbeFamilies:
    def test_deduplicates_by_shape(self):
        fam = ProbeFamily.of([two_point(1), two_point(1), one_point()])
        assert len(fam.spaces) == 2

    def test_relabelings_collapse(self):
        relabeled = validate_space([[0, 1, 1], [1, 0, 2], [1, 2, 0]])
        fam = ProbeFamily.of([PATH3, relabeled])
        assert len(fam.spaces) == 1
        fam2 = ProbeFamily.of([PATH3, relabeled, one_point()])
        assert len(fam2.spaces) == 2

    def test_ordered_smallest_first(self):
        fam = ProbeFamily.of([PATH3, one_point(), two_point(1)])
        assert [s.n for s in fam.spaces] == [1, 2, 3]

    def test_subspaces_include_the_empty_probe(self):
        fam = ProbeFamily.subspaces_of(two_point(1))
        assert fam.spaces[0].n == 0
        assert {s.n for s in fam.spaces} == {0, 1, 2}
