"""Randomized refutation techniques.

All three search for a long irredundant chain and can only ever refute the
IBIS property; failing to find a witness proves nothing.

* T1 draws random points and keeps those that shrink the current stabilizer.
* T2 works with a subgroup H and random conjugates, building the descending
  chain ``H > H & H^x1 > H & H^x1 & H^x2 > ...`` without the coset action.
* T3 runs the T1 search with stabilizers taken inside a subgroup K.  A
  K-irredundant tuple is G-irredundant, because ``K_S <= G_S`` for every
  point set S.

Draws come from a :class:`SplitMix64` seeded by the caller, and nothing else
feeds the choice of points, so a seed replays the same witness everywhere.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .chain import StabilizerChain, stabilize_point
from .group import GeneratedGroup
from .ibis import (
    DEFAULT_BUDGET,
    Decision,
    IbisCertificate,
    IrredundantTuple,
    Method,
    _extend,
    _walk,
    base_size,
)
from .perm import Permutation, format_cycles, parse_cycles
from .rng import SplitMix64

__all__ = [
    "t1_random_search",
    "t1_certificate",
    "t2_conjugate_chain",
    "t2_certificate",
    "t3_restricted_search",
    "t3_certificate",
    "ConjugateChain",
    "verify_certificate",
    "DEFAULT_MAX_ITERS",
]

DEFAULT_MAX_ITERS = 10_000
# Chains are rebuilt by randomized Schreier-Sims with the order known in
# advance, so this stream affects strong generators only, never an order.
_CHAIN_SEED = 0x7EC4


@dataclass
class _Search:
    """Outcome of a random descent: the tuple (0-based) plus draw statistics."""

    points: list[int] | None
    orders: list[int] | None
    draws: int
    attempts: int


def _fixes(chain: StabilizerChain, p: int) -> bool:
    return all(g[p] == p for g in chain.generators())


def _descend(chain: StabilizerChain, n: int, rng: SplitMix64, max_iters: int, accept) -> _Search:
    """Random irredundant descents from ``chain``; stop when ``accept(pts, orders)``.

    A descent ends when the stabilizer becomes trivial or ``accept`` is
    consulted; then it restarts from the top.  Every drawn point counts as an
    iteration, kept or not.
    """
    crng = SplitMix64(_CHAIN_SEED)
    draws = attempts = 0
    while draws < max_iters:
        attempts += 1
        cur, pts, orders = chain, [], [chain.order()]
        while orders[-1] > 1 and draws < max_iters:
            p = rng.randbelow(n)
            draws += 1
            if _fixes(cur, p):
                continue
            cur, m = stabilize_point(cur, p, crng)
            pts.append(p)
            orders.append(orders[-1] // m)
            verdict = accept(pts, orders)
            if verdict is True:
                return _Search(pts, orders, draws, attempts)
            if verdict is False:
                break
    return _Search(None, None, draws, attempts)


# T1 ----------------------------------------------------------------------------


def _t1(G: GeneratedGroup, target_length: int, seed: int, max_iters: int) -> _Search:
    if target_length < 1:
        raise ValueError("target_length must be at least 1")

    def accept(pts, orders):
        if len(pts) == target_length:
            return orders[-1] > 1
        return None

    return _descend(G.chain, G.degree, SplitMix64(seed), max_iters, accept)


def t1_random_search(
    G: GeneratedGroup, target_length: int, seed: int = 0, max_iters: int = DEFAULT_MAX_ITERS
) -> IrredundantTuple | None:
    """First random irredundant ``target_length``-tuple whose stabilizer is nontrivial."""
    res = _t1(G, target_length, seed, max_iters)
    if res.points is None:
        return None
    return IrredundantTuple(tuple(p + 1 for p in res.points), tuple(res.orders))


def _header(G: GeneratedGroup, descriptor: str, b: int, method: Method, seed: int) -> dict:
    return dict(group=descriptor, degree=G.degree, order=G.order(), b=b, method=method, seed=seed)


def _full_witness(G: GeneratedGroup, pts: Sequence[int]) -> IrredundantTuple:
    rng = SplitMix64(_CHAIN_SEED)
    chain, orders = _walk(G.chain, pts, rng)
    pts, orders = _extend(chain, list(pts), orders, rng)
    return IrredundantTuple(tuple(p + 1 for p in pts), tuple(orders))


def t1_certificate(
    G: GeneratedGroup,
    target_length: int | None = None,
    seed: int = 0,
    max_iters: int = DEFAULT_MAX_ITERS,
    descriptor: str = "",
    b: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> IbisCertificate:
    """Run T1 and package the result.

    ``target_length`` defaults to b(G).  A found tuple is extended to a full
    base; the decision is NOT_IBIS when that base is longer than b(G) and
    UNDECIDED otherwise (including when nothing was found).
    """
    if b is None:
        b = base_size(G, budget)
    t = b if target_length is None else target_length
    res = _t1(G, t, seed, max_iters)
    stats = {"nodes": res.draws, "reps_examined": res.attempts, "target": t, "max_iters": max_iters}
    head = _header(G, descriptor, b, Method.T1, seed)
    if res.points is None:
        return IbisCertificate(decision=Decision.UNDECIDED, stats=stats, **head)
    stats["partial"] = {"points": [p + 1 for p in res.points], "stab_orders": res.orders}
    full = _full_witness(G, res.points)
    decision = Decision.NOT_IBIS if len(full) > b else Decision.UNDECIDED
    return IbisCertificate(decision=decision, witness=full.as_dict(), stats=stats, **head)


# T2 ----------------------------------------------------------------------------


@dataclass(frozen=True)
class ConjugateChain:
    """Cosets ``H, H x_1, .., H x_{k-1}`` and the orders ``|G|, |H|, |H & H^x1|, ..``.

    In the action of G on the cosets of H this is an irredundant k-tuple whose
    stabilizer has order ``orders[-1]``.
    """

    elements: tuple[Permutation, ...]
    orders: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.orders) - 1

    def points(self) -> list[str]:
        if not len(self):
            return []
        return ["()"] + [format_cycles(x) for x in self.elements]

    def verify(self, G: GeneratedGroup, H: GeneratedGroup, budget: int = DEFAULT_BUDGET) -> bool:
        """Recompute the chain from the elements and check every condition."""
        return _check_chain(G, H, self.elements, budget) == self.orders and _chain_ok(self.orders)


def _chain_ok(orders: Sequence[int]) -> bool:
    return all(a > b for a, b in zip(orders, orders[1:])) and orders[-1] > 1


def _check_chain(G: GeneratedGroup, H: GeneratedGroup, xs: Sequence[Permutation], budget: int) -> tuple[int, ...]:
    if not H.is_subgroup_of(G) or not all(G.contains(x) for x in xs):
        return ()
    reps = [Permutation.identity(G.degree), *xs]
    for i in range(len(reps)):
        for j in range(i):
            if H.contains(reps[i] * ~reps[j]):
                return ()
    orders = [G.order(), H.order()]
    cur = H
    for x in xs:
        cur = cur.intersect(H.conjugate(x), budget)
        orders.append(cur.order())
    return tuple(orders)


def t2_conjugate_chain(
    G: GeneratedGroup,
    H: GeneratedGroup,
    chain_length: int,
    seed: int = 0,
    max_iters: int = DEFAULT_MAX_ITERS,
    budget: int = DEFAULT_BUDGET,
    patience: int = 50,
) -> ConjugateChain | None:
    """Random descending chain of ``chain_length`` intersections of conjugates of H.

    Elements are drawn uniformly from G.  A draw x is kept when ``H^x`` cuts
    the current intersection down without making it trivial.  After
    ``patience`` consecutive rejections the chain restarts from H.  Each draw
    is one iteration.
    """
    return _t2(G, H, chain_length, seed, max_iters, budget, patience)[0]


def _t2(G, H, chain_length, seed, max_iters, budget, patience=50) -> tuple[ConjugateChain | None, int]:
    if chain_length < 0:
        raise ValueError("chain_length must be non-negative")
    if not H.is_subgroup_of(G):
        raise ValueError("H is not a subgroup of G")
    if H.order() == 1:
        return None, 0
    if chain_length == 0:
        return ConjugateChain((), (G.order(),)), 0
    if H.order() == G.order():
        return None, 0
    rng = SplitMix64(seed)
    draws = 0
    while draws < max_iters:
        xs: list[Permutation] = []
        orders = [G.order(), H.order()]
        cur = H
        misses = 0
        while len(xs) < chain_length - 1 and misses < patience and draws < max_iters:
            x = G.random_element(rng)
            draws += 1
            nxt = cur.intersect(H.conjugate(x), budget)
            m = nxt.order()
            if 1 < m < orders[-1]:
                xs.append(x)
                orders.append(m)
                cur = nxt
                misses = 0
            else:
                misses += 1
        if len(xs) == chain_length - 1:
            return ConjugateChain(tuple(xs), tuple(orders)), draws
    return None, draws


def t2_certificate(
    G: GeneratedGroup,
    H: GeneratedGroup,
    chain_length: int,
    b: int | None,
    seed: int = 0,
    max_iters: int = DEFAULT_MAX_ITERS,
    descriptor: str = "",
    budget: int = DEFAULT_BUDGET,
) -> IbisCertificate:
    """Package a T2 run.  ``b`` is the base size of the coset action if known.

    The certificate's degree and order describe the coset action (degree
    ``|G:H|``).  NOT_IBIS needs a chain of length at least b, since such a
    partial base extends to a base longer than b.
    """
    found, draws = _t2(G, H, chain_length, seed, max_iters, budget)
    stats = {
        "nodes": draws,
        "reps_examined": 0,
        "chain_length": chain_length,
        "max_iters": max_iters,
        "subgroup": [format_cycles(h) for h in H.generators],
    }
    head = dict(group=descriptor, degree=G.order() // H.order(), order=G.order(), b=b if b is not None else 0,
                method=Method.T2, seed=seed)
    if found is None or not len(found):
        return IbisCertificate(decision=Decision.UNDECIDED, stats=stats, **head)
    witness = {"points": found.points(), "stab_orders": list(found.orders)}
    decided = b is not None and len(found) >= b
    return IbisCertificate(decision=Decision.NOT_IBIS if decided else Decision.UNDECIDED,
                           witness=witness, stats=stats, **head)


# T3 ----------------------------------------------------------------------------


def _t3(G: GeneratedGroup, K: GeneratedGroup, target_length: int, seed: int, max_iters: int) -> _Search:
    if K.degree != G.degree or not K.is_subgroup_of(G):
        raise ValueError("K is not a subgroup of G")

    def accept(pts, orders):
        if orders[-1] == 1:
            return len(pts) > target_length
        return None

    if K.order() == 1:
        return _Search(None, None, 0, 0)
    return _descend(K.chain, G.degree, SplitMix64(seed), max_iters, accept)


def t3_restricted_search(
    G: GeneratedGroup, K: GeneratedGroup, target_length: int, seed: int = 0, max_iters: int = DEFAULT_MAX_ITERS
) -> tuple[IrredundantTuple, IrredundantTuple] | None:
    """Random full K-irredundant base longer than ``target_length``.

    Returns the tuple twice: with its K-stabilizer orders and with its
    G-stabilizer orders.  The G-chain is recomputed and required to strictly
    decrease before anything is returned.
    """
    res = _t3(G, K, target_length, seed, max_iters)
    if res.points is None:
        return None
    pts = tuple(p + 1 for p in res.points)
    g_chain = IrredundantTuple(pts, tuple(G.stabilizer_orders(pts)))
    if not g_chain.is_irredundant():
        raise AssertionError(f"K-irredundant tuple {pts} is redundant in G")
    return IrredundantTuple(pts, tuple(res.orders)), g_chain


def t3_certificate(
    G: GeneratedGroup,
    K: GeneratedGroup,
    target_length: int | None = None,
    seed: int = 0,
    max_iters: int = DEFAULT_MAX_ITERS,
    descriptor: str = "",
    b: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> IbisCertificate:
    """Run T3 and package the result; ``target_length`` defaults to b(G)."""
    if b is None:
        b = base_size(G, budget)
    t = b if target_length is None else target_length
    res = _t3(G, K, t, seed, max_iters)
    stats = {
        "nodes": res.draws,
        "reps_examined": res.attempts,
        "target": t,
        "max_iters": max_iters,
        "subgroup": [format_cycles(k) for k in K.generators],
    }
    head = _header(G, descriptor, b, Method.T3, seed)
    if res.points is None:
        return IbisCertificate(decision=Decision.UNDECIDED, stats=stats, **head)
    pts = tuple(p + 1 for p in res.points)
    stats["k_chain"] = {"points": list(pts), "stab_orders": res.orders}
    g_orders = G.stabilizer_orders(pts)
    if not all(a > c for a, c in zip(g_orders, g_orders[1:])):
        raise AssertionError(f"K-irredundant tuple {pts} is redundant in G")
    full = _full_witness(G, res.points)
    decision = Decision.NOT_IBIS if len(full) > b else Decision.UNDECIDED
    return IbisCertificate(decision=decision, witness=full.as_dict(), stats=stats, **head)


# replay ------------------------------------------------------------------------


def verify_certificate(
    G: GeneratedGroup, cert: IbisCertificate, subgroup: GeneratedGroup | None = None,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    """Re-check a certificate against G.

    The witness chain is recomputed from its points.  For T1 and T3 the search
    is also rerun from the recorded seed and must reproduce the same witness.
    T2 needs H as ``subgroup``; T3 needs K.  Exhaustive certificates are
    checked by witness replay only.
    """
    if cert.method is Method.T2:
        if subgroup is None:
            raise ValueError("T2 certificates need the subgroup H")
        if cert.witness is None:
            return cert.decision is not Decision.NOT_IBIS
        xs = tuple(parse_cycles(c, G.degree) for c in cert.witness["points"][1:])
        chain = ConjugateChain(xs, tuple(cert.witness["stab_orders"]))
        if not chain.verify(G, subgroup, budget):
            return False
        if cert.decision is Decision.NOT_IBIS and len(chain) < cert.b:
            return False
        again = t2_conjugate_chain(G, subgroup, cert.stats["chain_length"], cert.seed, cert.stats["max_iters"], budget)
        return again is not None and again.points() == cert.witness["points"]
    if not cert.replay(G):
        return False
    if cert.method is Method.T1:
        again = t1_certificate(G, cert.stats["target"], cert.seed, cert.stats["max_iters"], cert.group, cert.b)
    elif cert.method is Method.T3:
        if subgroup is None:
            raise ValueError("T3 certificates need the subgroup K")
        again = t3_certificate(G, subgroup, cert.stats["target"], cert.seed, cert.stats["max_iters"], cert.group,
                               cert.b)
    else:
        return True
    return again.to_dict() == cert.to_dict()
