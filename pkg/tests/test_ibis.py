"""Base size, enumeration and the IBIS decision against brute-force enumeration."""

from math import comb

import pytest

from conftest import BRUTE_SUITE, brute_irredundant_tuples, elements_of
from ibiskit.actions import subset_action
from ibiskit.catalog import load_catalog
from ibiskit.group import BudgetExhausted, GeneratedGroup
from ibiskit.ibis import (
    BaseMatroid,
    Decision,
    IbisCertificate,
    IrredundantTuple,
    Method,
    all_bases_reorder_invariant,
    base_size,
    check_reorder_invariance,
    enumerate_irredundant_bases,
    enumerate_irredundant_tuples,
    extend_to_base,
    extract_matroid,
    is_ibis,
    lemma_b2_spotcheck,
    minimal_base,
    verify_base_exchange,
)
from ibiskit.perm import identity, parse_cycles

SUITE = sorted(BRUTE_SUITE)


def brute_bases(name):
    G = BRUTE_SUITE[name]()
    return {(tuple(p + 1 for p in pts), orders) for pts, orders in brute_irredundant_tuples(elements_of(name), G.degree)}


def as_set(tuples):
    return {(t.points, t.stab_orders) for t in tuples}


@pytest.mark.parametrize(
    "name, action, b",
    [("M11", None, 4), ("M24", None, 7), ("S4", None, 3), ("S5", 2, 3), ("M12", None, 5), ("M22", None, 5),
     ("M23", None, 6), ("S6", None, 5), ("C5", None, 1)],
)
def test_base_size_examples(name, action, b):
    G = load_catalog(name)
    if action:
        G = subset_action(G, action).image()
    assert base_size(G) == b
    m = minimal_base(G)
    assert len(m) == b and m.is_base() and m.is_irredundant() and m.replay(G)


def test_trivial_group():
    G = GeneratedGroup(4, [identity(4)])
    assert base_size(G) == 0
    cert = is_ibis(G)
    assert cert.decision is Decision.IBIS and cert.b == 0
    assert list(enumerate_irredundant_bases(G)) == [IrredundantTuple((), (1,))]


@pytest.mark.parametrize("name", SUITE)
def test_all_mode_matches_brute_force(name):
    G = BRUTE_SUITE[name]()
    assert as_set(enumerate_irredundant_bases(G, "all")) == brute_bases(name)


@pytest.mark.parametrize("name", SUITE)
def test_minimality(name):
    G = BRUTE_SUITE[name]()
    assert base_size(G) == min(len(p) for p, _ in brute_bases(name))


@pytest.mark.parametrize("name", SUITE)
def test_representatives_cover_every_orbit(name):
    """G-images of the representatives reproduce the all-mode set, once per orbit."""
    G = BRUTE_SUITE[name]()
    elems = elements_of(name)
    b = base_size(G)
    for t in {1, b}:
        reps = list(enumerate_irredundant_tuples(G, t, "representatives"))
        everything = {tup.points for tup in enumerate_irredundant_tuples(G, t, "all")}
        images = set()
        for r in reps:
            orbit = {tuple(g[p - 1] + 1 for p in r.points) for g in elems}
            assert not (orbit & images), "two representatives share an orbit"
            images |= orbit
        assert images == everything
        for r in reps:
            assert r.is_irredundant() and r.replay(G)


@pytest.mark.parametrize("name", SUITE)
def test_prefix_property(name):
    G = BRUTE_SUITE[name]()
    for tup in enumerate_irredundant_bases(G, "all"):
        for i in range(len(tup) + 1):
            prefix = IrredundantTuple(tup.points[:i], tup.stab_orders[: i + 1])
            assert prefix.is_irredundant()


def test_t1_representatives_are_least_orbit_points():
    G = GeneratedGroup(7, [parse_cycles("(1 2 3)", 7), parse_cycles("(5 6)", 7)])
    reps = [t.points for t in enumerate_irredundant_tuples(G, 1)]
    assert reps == [(1,), (5,)]


def test_s3_all_pairs():
    S3 = load_catalog("S3")
    tuples = list(enumerate_irredundant_tuples(S3, 2, "all"))
    assert len(tuples) == 6
    assert {t.points for t in tuples} == {(a, b) for a in range(1, 4) for b in range(1, 4) if a != b}


@pytest.mark.parametrize("name", SUITE)
def test_decision_matches_brute_force(name):
    G = BRUTE_SUITE[name]()
    lengths = {len(p) for p, _ in brute_bases(name)}
    cert = is_ibis(G)
    assert cert.decision is (Decision.IBIS if len(lengths) == 1 else Decision.NOT_IBIS)
    assert cert.b == min(lengths)
    assert cert.replay(G)
    if cert.decision is Decision.NOT_IBIS:
        w = cert.witness_tuple()
        assert len(w) > cert.b and w.is_base() and w.is_irredundant()


@pytest.mark.parametrize("name", SUITE)
def test_equivalence_triangle(name):
    G = BRUTE_SUITE[name]()
    decided = is_ibis(G).decision is Decision.IBIS
    reorder = bool(all_bases_reorder_invariant(G))
    M = extract_matroid(G)
    exchange = bool(verify_base_exchange(M))
    assert decided == reorder == exchange


def test_s5_pairs_witness(s5_pairs):
    cert = is_ibis(s5_pairs, descriptor="S5 on pairs")
    assert cert.decision is Decision.NOT_IBIS and cert.b == 3
    assert cert.witness["stab_orders"] == [120, 12, 4, 2, 1]
    assert cert.replay(s5_pairs)
    r = all_bases_reorder_invariant(s5_pairs)
    assert not r and not r.failing_tuple.is_irredundant()
    M = extract_matroid(s5_pairs)
    assert M.sizes() == {3, 4}
    ex = verify_base_exchange(M)
    assert not ex and "size mismatch" in ex.reason


def test_reorder_invariance_examples():
    M12 = load_catalog("M12")
    base = minimal_base(M12)
    assert check_reorder_invariance(M12, base)
    C2 = GeneratedGroup(2, [parse_cycles("(1 2)", 2)])
    assert check_reorder_invariance(C2, IrredundantTuple((1,), (2, 1)))
    with pytest.raises(ValueError):
        check_reorder_invariance(M12, IrredundantTuple((1,), (95040, 7920)))
    with pytest.raises(BudgetExhausted):
        check_reorder_invariance(M12, base, budget=10)


def test_reorder_failure_reports_first_bad_permutation(s5_pairs):
    # 120 > 12 > 4 > 2 > 1 along points (1,6,7,2); find a reordering that repeats an order
    w = IrredundantTuple((1, 6, 7, 2), (120, 12, 4, 2, 1))
    assert w.replay(s5_pairs)
    r = check_reorder_invariance(s5_pairs, w)
    assert not r
    assert sorted(r.failing_order) == [0, 1, 2, 3]
    assert not r.failing_tuple.is_irredundant()


def test_matroid_examples():
    M = extract_matroid(load_catalog("M11"))
    assert len(M.bases) == comb(11, 4) == 330 and M.is_uniform() and verify_base_exchange(M)
    C2 = GeneratedGroup(2, [parse_cycles("(1 2)", 2)])
    M = extract_matroid(C2)
    assert M.bases == {frozenset({1}), frozenset({2})} and M.is_uniform() and verify_base_exchange(M)


def test_exchange_detects_equal_size_violation():
    family = frozenset(map(frozenset, [{1, 2}, {3, 4}]))
    r = verify_base_exchange(BaseMatroid(4, family))
    assert not r and r.counterexample[2] == 1


@pytest.mark.parametrize("name", ["S4", "S5", "M11"])
def test_sharply_transitive_counts(name):
    G = load_catalog(name)
    bases = list(enumerate_irredundant_bases(G, "all"))
    assert len(bases) == G.order()
    assert extract_matroid(G).is_uniform()


def test_budget_gives_undecided():
    G = subset_action(load_catalog("M12"), 2).image()
    cert = is_ibis(G, budget=3)
    assert cert.decision is Decision.UNDECIDED and cert.witness is None
    with pytest.raises(BudgetExhausted) as ei:
        list(enumerate_irredundant_tuples(load_catalog("M11"), 4, "all", budget=100))
    assert ei.value.progress is not None


@pytest.mark.parametrize("name, k", [("S5", 2), ("M11", 2), ("M12", 2), ("M24", 2), ("M12", None)])
def test_parallel_search_matches_sequential(name, k):
    G = load_catalog(name)
    if k:
        G = subset_action(G, k).image()
    seq = is_ibis(G, descriptor="x")
    par = is_ibis(G, descriptor="x", threads=2)
    assert par.to_dict() == seq.to_dict()


def test_extend_to_base():
    G = subset_action(load_catalog("S5"), 2).image()
    t = IrredundantTuple((1, 6, 7), (120, 12, 4, 2))
    full = extend_to_base(G, t)
    assert full.points[:3] == t.points and full.is_base() and len(full) == 4


def test_certificate_invariants():
    with pytest.raises(ValueError):
        IbisCertificate("g", 3, 6, 2, Decision.IBIS, Method.T1)
    with pytest.raises(ValueError):
        IbisCertificate("g", 3, 6, 2, Decision.NOT_IBIS, Method.EXHAUSTIVE)
    with pytest.raises(ValueError):
        IrredundantTuple((1, 2), (6,))
    cert = is_ibis(subset_action(load_catalog("S5"), 2).image())
    assert IbisCertificate.from_dict(cert.to_dict()) == cert
    assert list(cert.to_dict()) == ["schema", "group", "degree", "order", "b", "decision", "method", "seed",
                                    "witness", "stats"]


def test_tampered_witness_fails_replay(s5_pairs):
    cert = is_ibis(s5_pairs)
    d = cert.to_dict()
    d["witness"] = {"points": d["witness"]["points"], "stab_orders": [120, 12, 6, 2, 1]}
    assert not IbisCertificate.from_dict(d).replay(s5_pairs)


def test_lemma_spotcheck():
    A5_pairs = subset_action(load_catalog("A5"), 2).image()
    r = lemma_b2_spotcheck(A5_pairs, nonabelian_socle=True)
    assert r.applicable and r.b == 2 and r.prediction_holds and r.decision is Decision.NOT_IBIS
    r = lemma_b2_spotcheck(load_catalog("S3"), nonabelian_socle=False)
    assert r.applicable and not r.hypothesis_met and r.prediction_holds is None
    assert "hypothesis not met" in r.message
    assert is_ibis(load_catalog("S3")).decision is Decision.IBIS
    r = lemma_b2_spotcheck(load_catalog("M11"), nonabelian_socle=True)
    assert not r.applicable and "not applicable" in r.message
