import pytest

from conftest import brute_irredundant_tuples, closure
from ibiskit.actions import subset_action
from ibiskit.catalog import load_catalog
from ibiskit.group import GeneratedGroup
from ibiskit.ibis import Decision, Method
from ibiskit.perm import format_cycles, identity, parse_cycles
from ibiskit.techniques import (
    ConjugateChain,
    t1_certificate,
    t1_random_search,
    t2_certificate,
    t2_conjugate_chain,
    t3_certificate,
    t3_restricted_search,
    verify_certificate,
)


def pairs(name):
    A = subset_action(load_catalog(name), 2)
    return A, A.image()


# T1 -------------------------------------------------------------------------------


@pytest.mark.parametrize("seed", range(10))
def test_t1_finds_partial_base_on_s5_pairs(seed, s5_pairs):
    t = t1_random_search(s5_pairs, 3, seed)
    assert t is not None and len(t) == 3
    assert t.stab_orders[-1] == 2 and t.is_irredundant() and t.replay(s5_pairs)


def test_t1_none_on_ibis_group():
    assert t1_random_search(load_catalog("M12"), 5, seed=0, max_iters=2000) is None


def test_t1_target_one():
    t = t1_random_search(load_catalog("A5"), 1, seed=3)
    assert len(t) == 1 and t.stab_orders == (60, 12)


def test_t1_rejects_bad_target():
    with pytest.raises(ValueError):
        t1_random_search(load_catalog("S3"), 0)


def test_t1_is_deterministic(s5_pairs):
    a = t1_certificate(s5_pairs, seed=5)
    b = t1_certificate(s5_pairs, seed=5)
    assert a.to_dict() == b.to_dict()
    assert a.method is Method.T1 and a.seed == 5


@pytest.mark.parametrize("seed", range(10))
def test_t1_certificates_reverify(seed, s5_pairs):
    cert = t1_certificate(s5_pairs, seed=seed, descriptor="S5 pairs")
    assert cert.decision is Decision.NOT_IBIS
    assert len(cert.witness["points"]) == 4 and cert.b == 3
    assert verify_certificate(s5_pairs, cert)


def test_t1_certificate_detects_tampering(s5_pairs):
    cert = t1_certificate(s5_pairs, seed=1)
    cert.seed = 2
    assert not verify_certificate(s5_pairs, cert)


def test_t1_undecided_when_nothing_found():
    cert = t1_certificate(load_catalog("M11"), max_iters=500)
    assert cert.decision is Decision.UNDECIDED and cert.witness is None
    assert cert.stats["nodes"] == 500
    assert verify_certificate(load_catalog("M11"), cert)


@pytest.mark.parametrize("name, seed", [("M11", 0), ("M11", 4), ("M12", 1), ("M24", 2)])
def test_t1_refutes_mathieu_pair_actions(name, seed):
    _, G = pairs(name)
    cert = t1_certificate(G, seed=seed, max_iters=5000)
    assert cert.decision is Decision.NOT_IBIS
    assert verify_certificate(G, cert)


# T2 -------------------------------------------------------------------------------


def test_t2_s5_over_s4():
    S5 = load_catalog("S5")
    H = S5.point_stabilizer(1)
    ch = t2_conjugate_chain(S5, H, 2, seed=0)
    assert ch is not None and len(ch) == 2
    assert ch.orders[:2] == (120, 24) and 1 < ch.orders[2] < 24
    assert ch.verify(S5, H)
    # brute force: some x gives a nontrivial proper intersection H & H^x
    els = closure(S5)
    Hel = {g for g in els if g[0] == 0}
    sizes = {len({h for h in Hel if h[g[0]] == g[0]}) for g in els if g[0] != 0}
    assert ch.orders[2] in sizes


@pytest.mark.parametrize("seed", range(5))
def test_t2_matches_natural_action_on_m11(seed):
    G = load_catalog("M11")
    H = G.point_stabilizer(1)
    ch = t2_conjugate_chain(G, H, 3, seed=seed)
    assert ch is not None and ch.verify(G, H)
    # H^x fixes x(1), so the chain is the natural chain along (1, x1(1), x2(1))
    pts = [1] + [x(1) for x in ch.elements]
    assert tuple(G.stabilizer_orders(pts)) == ch.orders
    # every irredundant 3-prefix of M11 is nontrivial (b = 4), so the chain must exist
    assert ch.orders[-1] > 1


def test_t2_chain_length_zero_and_trivial_h():
    G = load_catalog("A5")
    H = G.point_stabilizer(1)
    ch = t2_conjugate_chain(G, H, 0)
    assert ch == ConjugateChain((), (60,)) and ch.points() == []
    assert t2_conjugate_chain(G, GeneratedGroup(5, [identity(5)]), 2) is None
    with pytest.raises(ValueError):
        t2_conjugate_chain(G, GeneratedGroup(5, [parse_cycles("(1 2)", 5)]), 2)


def test_t2_verify_rejects_repeated_coset():
    G = load_catalog("S5")
    H = G.point_stabilizer(1)
    h = parse_cycles("(2 3)", 5)
    # H h = H, so the second coset repeats the first
    bad = ConjugateChain((h,), (120, 24, 24))
    assert not bad.verify(G, H)


def test_t2_certificate():
    G = load_catalog("M11")
    H = G.point_stabilizer(1)
    cert = t2_certificate(G, H, 4, b=4, seed=0, max_iters=300, descriptor="M11 natural")
    # M11 is IBIS, so no irredundant 4-prefix has a nontrivial stabilizer
    assert cert.decision is Decision.UNDECIDED
    cert = t2_certificate(G, H, 3, b=4, seed=1)
    assert cert.decision is Decision.UNDECIDED and cert.witness["points"][0] == "()"
    assert verify_certificate(G, cert, H)
    S5 = load_catalog("S5")
    K = GeneratedGroup(5, [parse_cycles("(1 2)", 5), parse_cycles("(3 4 5)", 5), parse_cycles("(3 4)", 5)])
    # cosets of S2 x S3 are the 2-subsets; b = 3 there and a 3-chain refutes IBIS
    cert = t2_certificate(S5, K, 3, b=3, seed=0)
    assert cert.decision is Decision.NOT_IBIS and cert.degree == 10
    assert cert.witness["stab_orders"][-1] > 1
    assert verify_certificate(S5, cert, K)
    d = cert.to_dict()
    d["witness"]["points"][1] = format_cycles(identity(5))
    from ibiskit.ibis import IbisCertificate

    assert not verify_certificate(S5, IbisCertificate.from_dict(d), K)


# T3 -------------------------------------------------------------------------------


def test_t3_with_k_equal_g_extends_t1(s5_pairs):
    for seed in range(10):
        t1 = t1_random_search(s5_pairs, 3, seed)
        k_tuple, g_tuple = t3_restricted_search(s5_pairs, s5_pairs, 3, seed)
        assert k_tuple.points[:3] == t1.points
        assert k_tuple == g_tuple and len(g_tuple) == 4


def test_t3_trivial_k_finds_nothing(s5_pairs):
    K = GeneratedGroup(10, [identity(10)])
    assert t3_restricted_search(s5_pairs, K, 3, seed=0) is None


def test_t3_a5_on_pairs_has_no_long_base():
    """A5 inside S5 on 2-subsets: every A5-irredundant base has length at most 3.

    So a target of 3 cannot be beaten with K = A5; brute force confirms it,
    and the search must come back empty rather than invent a witness.
    """
    A, G = pairs("S5")
    K = GeneratedGroup(10, [A.act(g) for g in load_catalog("A5").generators])
    lengths = {len(p) for p, _ in brute_irredundant_tuples(closure(K), 10)}
    assert max(lengths) == 3
    assert t3_restricted_search(G, K, 3, seed=0, max_iters=3000) is None


@pytest.mark.parametrize("seed", range(4))
def test_t3_m10_inside_m11_pairs(seed):
    A, G = pairs("M11")
    M11 = load_catalog("M11")
    K = GeneratedGroup(55, [A.act(k) for k in M11.point_stabilizer(1).generators])
    cert = t3_certificate(G, K, seed=seed, max_iters=20_000, descriptor="M11 pairs, K = M10")
    assert cert.decision is Decision.NOT_IBIS and len(cert.witness["points"]) > cert.b == 3
    k_orders = cert.stats["k_chain"]["stab_orders"]
    assert k_orders[0] == 720 and k_orders[-1] == 1
    assert verify_certificate(G, cert, K)


def test_t3_rejects_non_subgroup(s5_pairs):
    with pytest.raises(ValueError):
        t3_restricted_search(s5_pairs, GeneratedGroup(10, [parse_cycles("(1 2)", 10)]), 3)
