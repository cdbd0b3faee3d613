import threading

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from severi.engine import (
    ALL,
    IRREDUCIBLE,
    ResourceLimitError,
    SeveriEngine,
    SeveriKey,
    part_classes,
)
from severi.seqcomb import TangencySeq, ZERO, e, enumerate_weight
from severi.surface import DivClass, SurfaceModel

F0 = SurfaceModel.hirzebruch(0)
F1 = SurfaceModel.hirzebruch(1)
F2 = SurfaceModel.hirzebruch(2)
F3 = SurfaceModel.hirzebruch(3)
P2 = SurfaceModel.plane_line()


def k1(a, b, g, alpha=ZERO, beta=ZERO, variant=ALL, model=F1):
    return SeveriKey(model, DivClass(a, b), g, alpha, beta, variant)


# -- seeds ---------------------------------------------------------------------


def test_seed_values(engine):
    assert engine.seed_value(SeveriKey(F3, DivClass(0, 2), -1, 2 * e(1), ZERO, ALL)) == 1
    assert engine.seed_value(SeveriKey(F3, DivClass(0, 2), -1, e(2), ZERO, ALL)) == 0
    assert engine.seed_value(SeveriKey(F2, DivClass(0, 1), 0, e(1), ZERO, IRREDUCIBLE)) == 1
    assert engine.seed_value(SeveriKey(P2, DivClass(0), 1, ZERO, ZERO, ALL)) == 1
    # upsilon != 0: no seed
    assert engine.seed_value(k1(3, 1, 1, e(1))) is None
    # the empty-curve seed is the k = 0 fiber seed
    assert engine.seed_value(SeveriKey(F1, DivClass(0, 0), 1, ZERO, ZERO, ALL)) == 1
    # upsilon = 0 keys that are not fiber multiples evaluate to 0
    assert engine.seed_value(SeveriKey(F1, DivClass(1, 0), -2, ZERO, ZERO, ALL)) == 0


def test_fiber_seed_counts(engine):
    for n in (0, 1, 3):
        m = SurfaceModel.hirzebruch(n)
        for k in range(4):
            key = SeveriKey(m, DivClass(0, k), 1 - k, k * e(1), ZERO, ALL)
            assert engine.count(key) == 1


def test_seed_predicate_scan(engine):
    """At upsilon = 0 the only nonzero admissible keys are the fiber seeds."""
    for n in (0, 1, 2):
        m = SurfaceModel.hirzebruch(n)
        for a in range(5):
            for b in range(-8, 9):
                d = DivClass(a, b)
                if not m.is_effective(d):
                    continue
                w = m.dot_e(d)
                if w < 0 or w > 8:
                    continue
                for ib in range(w + 1):
                    for beta in enumerate_weight(ib):
                        for alpha in enumerate_weight(w - ib):
                            g = -8
                            while True:
                                ups = m.upsilon(d, g, beta)
                                if ups > 0 or g > 8:
                                    break
                                if ups == 0:
                                    key = SeveriKey(m, d, g, alpha, beta, ALL)
                                    val = engine.count(key)
                                    assert val == engine.seed_value(key)
                                    if val:
                                        assert d.a == 0 and g == 1 - d.b and beta.is_zero
                                g += 1


# -- figure chain and tables ------------------------------------------------------


FIGURE_CHAIN = [
    ((4, 0, 1, ZERO, ZERO), 225),
    ((3, 1, 1, ZERO, e(1)), 225),
    ((3, 1, 1, e(1), ZERO), 185),
    ((2, 2, 1, ZERO, 2 * e(1)), 20),
    ((2, 2, 0, ZERO, 2 * e(1)), 105),
    ((2, 2, 1, ZERO, e(2)), 30),
    ((2, 2, 1, e(1), e(1)), 20),
    ((2, 2, 1, 2 * e(1), ZERO), 17),
    ((2, 2, 1, e(2), ZERO), 15),
    ((1, 3, 0, ZERO, 3 * e(1)), 1),
    ((1, 3, 0, ZERO, e(1) + e(2)), 4),
    ((1, 3, -1, ZERO, 3 * e(1)), 7),
]


@pytest.mark.parametrize("args,expected", FIGURE_CHAIN)
def test_figure_chain(engine, args, expected):
    a, b, g, alpha, beta = args
    assert engine.count(k1(a, b, g, alpha, beta)) == expected


def test_published_spot_values(engine):
    assert engine.count(SeveriKey(F2, DivClass(3, 0), 0, ZERO, ZERO, ALL)) == 2397
    assert engine.count(k1(2, 2, 0, ZERO, 2 * e(1), IRREDUCIBLE)) == 96
    assert engine.count(SeveriKey(P2, DivClass(4), 1, ZERO, 4 * e(1), ALL)) == 225


def test_default_beta_convention(engine):
    assert engine.count_class(F1, DivClass(3, 3), 7) == 1
    assert engine.count_class(F1, DivClass(4, 0), 1) == 225
    assert engine.count_class(P2, DivClass(4), 1) == 225
    # explicit alpha consumes budget before the default beta
    assert engine.count_class(F1, DivClass(3, 1), 1, alpha=e(1)) == 185


# -- admissibility ------------------------------------------------------------------


def test_non_admissible_is_zero(engine):
    # budget violation
    assert engine.count(k1(4, 0, 1, e(1), ZERO)) == 0
    # non-effective class
    assert engine.count(k1(-1, 5, 0, ZERO, ZERO)) == 0
    # negative upsilon
    assert engine.count(k1(0, 1, -5, e(1), ZERO)) == 0


small_seqs = st.builds(
    TangencySeq,
    st.dictionaries(st.integers(1, 3), st.integers(0, 2), max_size=2),
)


@settings(max_examples=80, deadline=None)
@given(
    st.integers(0, 2), st.integers(-1, 3), st.integers(-3, 3), st.integers(-3, 4),
    small_seqs, small_seqs, st.sampled_from((ALL, IRREDUCIBLE)),
)
def test_non_admissible_property(n, a, b, g, alpha, beta, variant):
    engine = SeveriEngine()
    m = SurfaceModel.hirzebruch(n)
    d = DivClass(a, b)
    key = SeveriKey(m, d, g, alpha, beta, variant)
    admissible = (
        m.is_effective(d)
        and alpha.weight() + beta.weight() == m.dot_e(d)
        and m.upsilon(d, g, beta) >= 0
    )
    if not admissible:
        assert engine.count(key) == 0


# -- term generators ------------------------------------------------------------------


def test_type1_terms(engine):
    key = k1(3, 1, 1, ZERO, e(1))
    terms = engine.type1_terms(key)
    assert len(terms) == 1
    k, child = terms[0]
    assert k == 1 and child.alpha == e(1) and child.beta == ZERO

    key = k1(2, 2, 0, ZERO, 2 * e(1))
    ((k, child),) = engine.type1_terms(key)
    assert k == 1 and child.beta == e(1)

    assert engine.type1_terms(k1(4, 0, 1)) == []


def test_type2_terms_all_examples(engine):
    # single term hitting the residual class with one new transverse contact
    terms = engine.type2_terms_all(k1(4, 0, 1))
    assert len(terms) == 1
    t = terms[0]
    assert (t.alpha_p, t.beta_p, t.g_p, t.coeff) == (ZERO, e(1), 1, 1)

    # the worked three-term expansion
    terms = engine.type2_terms_all(k1(3, 1, 1, e(1), ZERO))
    got = {(t.alpha_p, t.beta_p, t.g_p, t.coeff) for t in terms}
    assert got == {
        (ZERO, 2 * e(1), 0, 1),
        (ZERO, e(2), 1, 2),
        (e(1), e(1), 1, 1),
    }

    # residual class zero with beta = 0: one term hitting the empty-curve seed
    terms = engine.type2_terms_all(SeveriKey(P2, DivClass(1), 0, e(1), ZERO, ALL))
    assert len(terms) == 1
    t = terms[0]
    assert (t.alpha_p, t.beta_p, t.g_p, t.coeff) == (ZERO, ZERO, 1, 1)
    assert engine.count(SeveriKey(P2, DivClass(1), 0, e(1), ZERO, ALL)) == 1


def test_type2_child_upsilon_law(engine):
    for key in (k1(4, 0, 1), k1(3, 1, 1, e(1)), k1(2, 2, 0, ZERO, 2 * e(1))):
        m = key.model
        ups = m.upsilon(key.d, key.g, key.beta)
        residual = m.subtract_e(key.d)
        for t in engine.type2_terms_all(key):
            assert m.upsilon(residual, t.g_p, t.beta_p) == ups - 1
        for k, child in engine.type1_terms(key):
            assert m.upsilon(child.d, child.g, child.beta) == ups - 1


def test_part_classes():
    # decompositions of S+F on F1 include the single-part class itself
    got = part_classes(F1, DivClass(1, 1), min_dot=1)
    assert DivClass(1, 1) in got
    assert DivClass(0, 1) in got
    assert all(F1.dot_e(c) >= 1 for c in got)
    # min_dot=0 admits budgetless classes like S
    assert DivClass(1, 0) in part_classes(F1, DivClass(1, 1), min_dot=0)


def test_splits_single_part(engine):
    key = k1(2, 1, 0, ZERO, e(1), IRREDUCIBLE)
    splits = engine.type2_splits_irr(key)
    singles = [s for s in splits if len(s.parts) == 1]
    assert singles, "single-part splits must be enumerated"
    assert {s.parts[0].d for s in singles} == {DivClass(1, 2)}
    for s in singles:
        p = s.parts[0]
        assert p.gamma == e(1) and p.beta >= e(1) and p.beta != p.gamma


def test_splits_residual_zero(engine):
    # no parts exist when the residual class is zero and contacts remain
    key = SeveriKey(P2, DivClass(1), 0, ZERO, e(1), IRREDUCIBLE)
    assert engine.type2_splits_irr(key) == []
    # the boundary-only degeneration carries exactly one empty split
    key = SeveriKey(P2, DivClass(1), 0, e(1), ZERO, IRREDUCIBLE)
    splits = engine.type2_splits_irr(key)
    assert len(splits) == 1 and splits[0].parts == () and splits[0].sigma == 1
    assert engine.term_value_irr(splits[0], key) == 1


def test_splits_symmetry_factor(engine):
    # two identical fiber components force sigma = 2
    key = k1(1, 1, 0, e(1), ZERO, IRREDUCIBLE)
    splits = engine.type2_splits_irr(key)
    twins = [s for s in splits if len(s.parts) == 2 and s.parts[0] == s.parts[1]]
    assert twins and all(s.sigma == 2 for s in twins)


def test_splits_multiset_uniqueness(engine):
    keys = [
        k1(2, 1, 0, ZERO, e(1), IRREDUCIBLE),
        k1(2, 2, 0, ZERO, 2 * e(1), IRREDUCIBLE),
        k1(2, 2, 1, ZERO, 2 * e(1), IRREDUCIBLE),
        SeveriKey(F2, DivClass(2, 1), 0, ZERO, e(1), IRREDUCIBLE),
        SeveriKey(P2, DivClass(4), 1, ZERO, 4 * e(1), IRREDUCIBLE),
    ]
    for key in keys:
        splits = engine.type2_splits_irr(key)
        seen = set()
        for s in splits:
            assert list(s.parts) == sorted(s.parts, key=lambda p: p.sort_key(), reverse=True)
            assert s.parts not in seen, "duplicate multiset emitted"
            seen.add(s.parts)
            for p in s.parts:
                assert key.model.is_effective(p.d) and not p.d.is_zero
                assert p.g >= 0
                assert p.gamma <= p.beta and p.gamma != p.beta


def test_irreducible_seed_chain(engine):
    # one fiber through one general point
    assert engine.count(SeveriKey(F2, DivClass(0, 1), 0, ZERO, e(1), IRREDUCIBLE)) == 1
    # irreducible multiples of the fiber do not exist
    assert engine.count(SeveriKey(F2, DivClass(0, 2), 0, ZERO, 2 * e(1), IRREDUCIBLE)) == 0
    # ruling symmetry on F0: one curve of each ruling through a point
    assert engine.count(SeveriKey(F0, DivClass(0, 1), 0, ZERO, e(1), IRREDUCIBLE)) == 1
    assert engine.count(SeveriKey(F0, DivClass(1, 0), 0, ZERO, ZERO, IRREDUCIBLE)) == 1
    # the plane line through two points
    assert engine.count(SeveriKey(P2, DivClass(1), 0, ZERO, e(1), IRREDUCIBLE)) == 1


def test_classical_plane_irreducibles(engine):
    # nodal-curve degrees: one-nodal curves of degree d number 3(d-1)^2
    for d, g, want in ((3, 0, 12), (4, 2, 27), (5, 5, 48), (4, 0, 620), (5, 0, 87304)):
        assert engine.count_class(P2, DivClass(d), g, IRREDUCIBLE) == want


def test_genus_pruning_changes_nothing():
    pruned = SeveriEngine(prune_genus=True)
    plain = SeveriEngine(prune_genus=False)
    for n in range(3):
        m = SurfaceModel.hirzebruch(n)
        for a in range(3):
            for b in range(3):
                d = DivClass(a, b)
                for ib in range(b + 1):
                    for beta in enumerate_weight(ib):
                        for alpha in enumerate_weight(b - ib):
                            for g in range(-4, 5):
                                if m.upsilon(d, g, beta) > 6:
                                    continue
                                for variant in (ALL, IRREDUCIBLE):
                                    key = SeveriKey(m, d, g, alpha, beta, variant)
                                    assert pruned.count(key) == plain.count(key)


def test_irreducible_at_most_all(engine):
    for a in range(3):
        for b in range(3):
            d = DivClass(a, b)
            for g in range(-3, 4):
                if F1.upsilon(d, g, ZERO) > 8:
                    continue
                for beta in enumerate_weight(b):
                    total = engine.count(SeveriKey(F1, d, g, ZERO, beta, ALL))
                    irr = engine.count(SeveriKey(F1, d, g, ZERO, beta, IRREDUCIBLE))
                    assert irr <= total


# -- resource limits and memo ------------------------------------------------------


def test_resource_limit():
    engine = SeveriEngine(max_upsilon=3)
    with pytest.raises(ResourceLimitError):
        engine.count(k1(4, 0, 1))
    # per-call override works both ways
    assert engine.count(k1(4, 0, 1), max_upsilon=None) == 225
    engine2 = SeveriEngine()
    with pytest.raises(ResourceLimitError):
        engine2.count(k1(4, 0, 1), max_upsilon=3)


def test_memo_limit():
    engine = SeveriEngine(max_memo_entries=5)
    with pytest.raises(ResourceLimitError):
        engine.count(k1(3, 1, 1, ZERO, e(1)))


def test_determinism_and_hits(engine):
    key = k1(3, 1, 1, ZERO, e(1))
    first = engine.count(key)
    hits_before = engine.stats()["hits"]
    assert engine.count(key) == first
    assert engine.stats()["hits"] == hits_before + 1


def test_concurrent_evaluation_matches_serial():
    serial = SeveriEngine()
    expected = {}
    keys = [k1(2, 2, g, ZERO, 2 * e(1), v) for g in (-1, 0, 1) for v in (ALL, IRREDUCIBLE)]
    for key in keys:
        expected[key] = serial.count(key)

    shared = SeveriEngine()
    results = {}
    errors = []

    def worker(key):
        try:
            results[key] = shared.count(key)
        except Exception as exc:  # pragma: no cover
            errors.append(exc)

    threads = [threading.Thread(target=worker, args=(key,)) for key in keys * 3]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    assert results == expected


def test_variant_validation():
    with pytest.raises(ValueError):
        SeveriKey(F1, DivClass(1, 0), 0, ZERO, ZERO, "bogus")
