"""Irredundant bases, base size and the IBIS decision.

A tuple (b_1, .., b_t) is irredundant when the stabilizer orders
``|G| > |G_b1| > |G_b1b2| > ...`` strictly decrease, i.e. each point is moved by
the pointwise stabilizer of its predecessors.  G is IBIS when all irredundant
bases have the same length, which is then the base size b(G).

Decision criterion used by :func:`is_ibis`: G is IBIS exactly when every
irredundant b(G)-tuple has trivial stabilizer.  If some irredundant base is
longer than b(G), its first b(G) points form an irredundant tuple whose
stabilizer is still nontrivial; conversely such a tuple can be extended
(append any point moved by its stabilizer, repeat) to an irredundant base of
length > b(G).  It therefore suffices to check one tuple per G-orbit on
irredundant b(G)-tuples, and the enumeration below produces exactly those:
at each depth it extends only by the least point of every orbit of the current
stabilizer that it does not fix.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations
from math import comb, factorial
from typing import Literal

from .chain import SchreierVector, StabilizerChain, stabilize_point
from .group import BudgetExhausted, GeneratedGroup
from .rng import SplitMix64

__all__ = [
    "IrredundantTuple",
    "Decision",
    "Method",
    "IbisCertificate",
    "BaseMatroid",
    "ReorderResult",
    "ExchangeResult",
    "LemmaReport",
    "base_size",
    "minimal_base",
    "enumerate_irredundant_tuples",
    "enumerate_irredundant_bases",
    "is_ibis",
    "extend_to_base",
    "check_reorder_invariance",
    "all_bases_reorder_invariant",
    "extract_matroid",
    "verify_base_exchange",
    "lemma_b2_spotcheck",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10**8
SCHEMA = "ibiskit-certificate/1"
_SEARCH_SEED = 0x5EED


@dataclass(frozen=True)
class IrredundantTuple:
    """Points (1-based) and the stabilizer orders ``(|G|, |G_b1|, ..)`` along them."""

    points: tuple[int, ...]
    stab_orders: tuple[int, ...]

    def __post_init__(self):
        if len(self.stab_orders) != len(self.points) + 1:
            raise ValueError("stab_orders must have one more entry than points")

    def __len__(self) -> int:
        return len(self.points)

    @property
    def final_order(self) -> int:
        return self.stab_orders[-1]

    def is_irredundant(self) -> bool:
        return all(a > b for a, b in zip(self.stab_orders, self.stab_orders[1:]))

    def is_base(self) -> bool:
        return self.stab_orders[-1] == 1

    def replay(self, G: GeneratedGroup) -> bool:
        """Recompute the stabilizer orders from the points and compare."""
        return tuple(G.stabilizer_orders(self.points)) == self.stab_orders

    def as_dict(self) -> dict:
        return {"points": list(self.points), "stab_orders": list(self.stab_orders)}


class Decision(str, Enum):
    IBIS = "IBIS"
    NOT_IBIS = "NOT_IBIS"
    UNDECIDED = "UNDECIDED"


class Method(str, Enum):
    EXHAUSTIVE = "EXHAUSTIVE"
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"


@dataclass
class IbisCertificate:
    """Outcome of an IBIS query with a replayable witness.

    For a NOT_IBIS decision from the exhaustive, T1 or T3 methods the witness
    is a full irredundant base longer than ``b``.  For T2 the witness points
    are coset representatives in cycle notation (the first is the trivial
    coset) and ``stab_orders`` is ``|G|, |H|, |H meet H^x1|, ...``.
    """

    group: str
    degree: int
    order: int
    b: int
    decision: Decision
    method: Method
    seed: int | None = None
    witness: dict | None = None
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        self.decision = Decision(self.decision)
        self.method = Method(self.method)
        if self.decision is Decision.NOT_IBIS and self.witness is None:
            raise ValueError("a NOT_IBIS certificate needs a witness")
        if self.decision is Decision.IBIS and self.method is not Method.EXHAUSTIVE:
            raise ValueError("only the exhaustive method can certify IBIS")

    def witness_tuple(self) -> IrredundantTuple | None:
        if self.witness is None or self.method is Method.T2:
            return None
        return IrredundantTuple(tuple(self.witness["points"]), tuple(self.witness["stab_orders"]))

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "group": self.group,
            "degree": self.degree,
            "order": self.order,
            "b": self.b,
            "decision": self.decision.value,
            "method": self.method.value,
            "seed": self.seed,
            "witness": self.witness,
            "stats": self.stats,
        }

    @classmethod
    def from_dict(cls, d: dict) -> IbisCertificate:
        return cls(
            group=d["group"],
            degree=d["degree"],
            order=d["order"],
            b=d["b"],
            decision=d["decision"],
            method=d["method"],
            seed=d["seed"],
            witness=d["witness"],
            stats=d["stats"],
        )

    def replay(self, G: GeneratedGroup) -> bool:
        """Check the certificate against G: header fields and, if present, the witness chain."""
        if G.degree != self.degree or G.order() != self.order:
            return False
        wt = self.witness_tuple()
        if wt is None:
            return self.method is Method.T2 or self.decision is not Decision.NOT_IBIS
        longer = len(wt) > self.b or self.decision is not Decision.NOT_IBIS
        return wt.replay(G) and wt.is_irredundant() and wt.is_base() and longer


# search machinery -----------------------------------------------------------


class _Counter:
    __slots__ = ("nodes", "budget", "leaves")

    def __init__(self, budget: int):
        self.nodes = 0
        self.leaves = 0
        self.budget = budget

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            self.nodes = self.budget
            raise BudgetExhausted(f"node budget {self.budget} exhausted", self.budget, self.leaves)


def _orbit_reps(chain: StabilizerChain) -> list[tuple[int, int]]:
    """(least point, length) of every orbit of length > 1, by increasing least point."""
    return [(o[0], len(o)) for o in chain.orbits() if len(o) > 1]


def _max_orbit(chain: StabilizerChain) -> int:
    return max((len(o) for o in chain.orbits()), default=1)


def _points_needed(order: int, max_orbit: int) -> int:
    """Lower bound on further base points: each one divides the order by at most max_orbit."""
    k, x = 0, 1
    while x < order:
        x *= max_orbit
        k += 1
    return k


def _walk(chain: StabilizerChain, points: Sequence[int], rng: SplitMix64) -> tuple[StabilizerChain, list[int]]:
    orders = [chain.order()]
    for p in points:
        chain, m = stabilize_point(chain, p, rng)
        orders.append(orders[-1] // m)
    return chain, orders


def minimal_base(G: GeneratedGroup, budget: int = DEFAULT_BUDGET) -> IrredundantTuple:
    """A shortest base, found by depth-first search over orbit representatives.

    A branch is abandoned once its length plus a counting lower bound reaches
    the best base found so far; the first bound comes from a greedy descent
    that always takes a point of a largest orbit.
    """
    tup, _ = _minimal_base(G, _Counter(budget))
    return tup


def _minimal_base(G: GeneratedGroup, ctr: _Counter) -> tuple[IrredundantTuple, int]:
    rng = SplitMix64(_SEARCH_SEED)
    root = G.chain
    if root.order() == 1:
        return IrredundantTuple((), (1,)), 0

    chain = root
    best_pts: list[int] = []
    while chain.order() > 1:
        p, _ = max(_orbit_reps(chain), key=lambda r: (r[1], -r[0]))
        chain, _ = stabilize_point(chain, p, rng)
        best_pts.append(p)
    best = [best_pts]

    def dfs(chain: StabilizerChain, pts: list[int], order: int) -> None:
        depth = len(pts)
        widest = _max_orbit(chain)
        if depth + _points_needed(order, widest) >= len(best[0]):
            return
        reps = sorted(_orbit_reps(chain), key=lambda r: (-r[1], r[0]))
        for p, m in reps:
            ctr.tick()
            if order // m == 1:
                best[0] = pts + [p]
                return
        for p, m in reps:
            if depth + 1 + _points_needed(order // m, widest) >= len(best[0]):
                continue
            child, _ = stabilize_point(chain, p, rng)
            dfs(child, pts + [p], order // m)
            if len(best[0]) <= depth + 1:
                return

    dfs(root, [], root.order())
    pts = best[0]
    _, orders = _walk(root, pts, rng)
    return IrredundantTuple(tuple(p + 1 for p in pts), tuple(orders)), ctr.nodes


def base_size(G: GeneratedGroup, budget: int = DEFAULT_BUDGET) -> int:
    """b(G); 0 for the trivial group."""
    return len(minimal_base(G, budget))


def _extend(chain: StabilizerChain, pts: list[int], orders: list[int], rng: SplitMix64) -> tuple[list[int], list[int]]:
    """Append the least moved point of the current stabilizer until it is trivial."""
    pts, orders = list(pts), list(orders)
    while orders[-1] > 1:
        p = chain.moved_points()[0]
        chain, m = stabilize_point(chain, p, rng)
        pts.append(p)
        orders.append(orders[-1] // m)
    return pts, orders


def extend_to_base(G: GeneratedGroup, tup: IrredundantTuple) -> IrredundantTuple:
    rng = SplitMix64(_SEARCH_SEED)
    chain, orders = _walk(G.chain, [p - 1 for p in tup.points], rng)
    pts, orders = _extend(chain, [p - 1 for p in tup.points], orders, rng)
    return IrredundantTuple(tuple(p + 1 for p in pts), tuple(orders))


def _reps_tuples(
    chain: StabilizerChain, pts: list[int], orders: list[int], t: int, ctr: _Counter, rng: SplitMix64
) -> Iterator[tuple[list[int], list[int]]]:
    if len(pts) == t:
        yield pts, orders
        return
    last = len(pts) == t - 1
    for p, m in _orbit_reps(chain):
        ctr.tick()
        if last:
            ctr.leaves += 1
            yield pts + [p], orders + [orders[-1] // m]
        else:
            child, _ = stabilize_point(chain, p, rng)
            yield from _reps_tuples(child, pts + [p], orders + [orders[-1] // m], t, ctr, rng)


def _all_tuples(
    chain: StabilizerChain, pts: list[int], orders: list[int], t: int | None, ctr: _Counter, rng: SplitMix64
) -> Iterator[tuple[list[int], list[int]]]:
    """Every irredundant extension; ``t=None`` means run to trivial stabilizer."""
    if (t is not None and len(pts) == t) or (t is None and orders[-1] == 1):
        yield pts, orders
        return
    orbit_of_point: dict[int, list[int]] = {}
    for o in chain.orbits():
        if len(o) > 1:
            for q in o:
                orbit_of_point[q] = o
    children: dict[int, tuple[StabilizerChain, SchreierVector]] = {}
    top_gens = chain.generators()
    for q in sorted(orbit_of_point):
        o = orbit_of_point[q]
        ctr.tick()
        new_orders = orders + [orders[-1] // len(o)]
        new_pts = pts + [q]
        done = (t is not None and len(new_pts) == t) or (t is None and new_orders[-1] == 1)
        if done:
            ctr.leaves += 1
            yield new_pts, new_orders
            continue
        p0 = o[0]
        if p0 not in children:
            child0, _ = stabilize_point(chain, p0, rng)
            sv = SchreierVector(p0, top_gens, [tuple(_inverse(g)) for g in top_gens], chain.degree)
            children[p0] = (child0, sv)
        child0, sv = children[p0]
        child = child0 if q == p0 else child0.conjugated(sv.rep(q))
        yield from _all_tuples(child, new_pts, new_orders, t, ctr, rng)


def _inverse(g: Sequence[int]) -> list[int]:
    r = [0] * len(g)
    for i, x in enumerate(g):
        r[x] = i
    return r


def _to_public(pts: Sequence[int], orders: Sequence[int]) -> IrredundantTuple:
    return IrredundantTuple(tuple(p + 1 for p in pts), tuple(orders))


def enumerate_irredundant_tuples(
    G: GeneratedGroup,
    length: int,
    mode: Literal["representatives", "all"] = "representatives",
    budget: int = DEFAULT_BUDGET,
) -> Iterator[IrredundantTuple]:
    """Irredundant ``length``-tuples of G.

    ``representatives`` yields one tuple per G-orbit (least point of each
    orbit of the current stabilizer, orbits in increasing order); ``all``
    yields every irredundant tuple and is meant for small groups.  Raises
    :class:`BudgetExhausted` with the number of tuples emitted so far.
    """
    if length < 1:
        raise ValueError("length must be at least 1")
    ctr = _Counter(budget)
    rng = SplitMix64(_SEARCH_SEED)
    if mode not in ("representatives", "all"):
        raise ValueError(f"unknown mode {mode!r}")
    walk = _reps_tuples if mode == "representatives" else _all_tuples
    root = G.chain
    for pts, orders in walk(root, [], [root.order()], length, ctr, rng):
        yield _to_public(pts, orders)


def enumerate_irredundant_bases(
    G: GeneratedGroup, mode: Literal["representatives", "all"] = "all", budget: int = DEFAULT_BUDGET
) -> Iterator[IrredundantTuple]:
    """Irredundant bases of every length (tuples ending at stabilizer order 1)."""
    ctr = _Counter(budget)
    rng = SplitMix64(_SEARCH_SEED)
    root = G.chain
    if root.order() == 1:
        yield IrredundantTuple((), (1,))
        return
    if mode == "all":
        it = _all_tuples(root, [], [root.order()], None, ctr, rng)
    else:
        it = _reps_bases(root, [], [root.order()], ctr, rng)
    for pts, orders in it:
        yield _to_public(pts, orders)


def _reps_bases(chain, pts, orders, ctr, rng):
    if orders[-1] == 1:
        yield pts, orders
        return
    for p, m in _orbit_reps(chain):
        ctr.tick()
        o = orders[-1] // m
        if o == 1:
            yield pts + [p], orders + [1]
        else:
            child, _ = stabilize_point(chain, p, rng)
            yield from _reps_bases(child, pts + [p], orders + [o], ctr, rng)


# IBIS decision ----------------------------------------------------------------


@dataclass
class _ScanResult:
    nodes: int
    leaves: int
    witness: tuple[list[int], list[int]] | None


def _scan(chain, pts, orders, t, budget) -> _ScanResult:
    """Walk representative t-tuples below a node until one has nontrivial stabilizer."""
    ctr = _Counter(budget)
    rng = SplitMix64(_SEARCH_SEED)
    for tp, to in _reps_tuples(chain, pts, orders, t, ctr, rng):
        if to[-1] > 1:
            return _ScanResult(ctr.nodes, ctr.leaves, (tp, to))
    return _ScanResult(ctr.nodes, ctr.leaves, None)


def _subtree_job(args):
    chain, pts, orders, t, budget = args
    try:
        # the frontier node itself counts as one node, as in the sequential walk
        r = _scan(chain, pts, orders, t, budget - 1)
        return _ScanResult(r.nodes + 1, r.leaves, r.witness)
    except BudgetExhausted:
        return None


def _frontier(chain, depth, rng):
    """Preorder events of the representative tree down to ``depth``."""
    events = []

    def rec(chain, pts, orders):
        for p, m in _orbit_reps(chain):
            child, _ = stabilize_point(chain, p, rng)
            npts, nord = pts + [p], orders + [orders[-1] // m]
            if len(npts) == depth:
                events.append(("sub", child, npts, nord))
            else:
                events.append(("node",))
                rec(child, npts, nord)

    rec(chain, [], [chain.order()])
    return events


def _parallel_scan(root: StabilizerChain, t: int, budget: int, threads: int) -> _ScanResult:
    from concurrent.futures import ProcessPoolExecutor

    rng = SplitMix64(_SEARCH_SEED)
    depth = 1
    events = _frontier(root, depth, rng)
    while depth < t - 1 and sum(e[0] == "sub" for e in events) < 4 * threads:
        depth += 1
        events = _frontier(root, depth, rng)
    subs = [e for e in events if e[0] == "sub"]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(_subtree_job, [(c, p, o, t, budget) for _, c, p, o in subs]))
    nodes = leaves = 0
    it = iter(results)
    for e in events:
        if e[0] == "node":
            nodes += 1
            if nodes > budget:
                raise BudgetExhausted("node budget exhausted", budget, leaves)
            continue
        r = next(it)
        if r is None or nodes + r.nodes > budget:
            # the sequential walk runs out inside this subtree; replay it to find where
            _, c, p, o = e
            try:
                if nodes + 1 > budget:
                    raise BudgetExhausted("node budget exhausted", budget, 0)
                _scan(c, p, o, t, budget - nodes - 1)
            except BudgetExhausted as ex:
                raise BudgetExhausted("node budget exhausted", budget, leaves + ex.progress) from None
            raise AssertionError("subtree replay finished within a budget its worker exceeded")
        nodes += r.nodes
        leaves += r.leaves
        if r.witness is not None:
            return _ScanResult(nodes, leaves, r.witness)
    return _ScanResult(nodes, leaves, None)


def is_ibis(
    G: GeneratedGroup, budget: int = DEFAULT_BUDGET, descriptor: str = "", threads: int = 1
) -> IbisCertificate:
    """Exhaustive IBIS decision with certificate.

    ``stats.nodes`` counts search nodes of the base-size search plus the
    representative enumeration; ``stats.reps_examined`` counts representative
    b-tuples inspected.  Running out of budget yields UNDECIDED, never a guess.
    """
    order = G.order()
    head = dict(group=descriptor, degree=G.degree, order=order, method=Method.EXHAUSTIVE, seed=None)
    if order == 1:
        return IbisCertificate(b=0, decision=Decision.IBIS, stats={"nodes": 0, "reps_examined": 0}, **head)
    ctr = _Counter(budget)
    try:
        base, _ = _minimal_base(G, ctr)
    except BudgetExhausted:
        return IbisCertificate(b=0, decision=Decision.UNDECIDED, stats={"nodes": budget, "reps_examined": 0}, **head)
    b = len(base)
    used = ctr.nodes
    root = G.chain
    try:
        if threads > 1 and b > 1:
            res = _parallel_scan(root, b, budget - used, threads)
        else:
            res = _scan(root, [], [order], b, budget - used)
    except BudgetExhausted as ex:
        return IbisCertificate(
            b=b, decision=Decision.UNDECIDED, stats={"nodes": budget, "reps_examined": ex.progress}, **head
        )
    stats = {"nodes": used + res.nodes, "reps_examined": res.leaves}
    if res.witness is None:
        return IbisCertificate(b=b, decision=Decision.IBIS, stats=stats, **head)
    rng = SplitMix64(_SEARCH_SEED)
    pts, orders = res.witness
    chain, _ = _walk(root, pts, rng)
    pts, orders = _extend(chain, pts, orders, rng)
    witness = _to_public(pts, orders)
    return IbisCertificate(b=b, decision=Decision.NOT_IBIS, witness=witness.as_dict(), stats=stats, **head)


# reorder invariance, matroids --------------------------------------------------


class SetStabilizers:
    """Pointwise stabilizers of point sets of G, memoized by set."""

    def __init__(self, G: GeneratedGroup):
        self.G = G
        self._rng = SplitMix64(_SEARCH_SEED)
        self._chains: dict[frozenset[int], StabilizerChain] = {frozenset(): G.chain}
        self._orders: dict[frozenset[int], int] = {frozenset(): G.order()}

    def chain(self, s: frozenset[int]) -> StabilizerChain:
        c = self._chains.get(s)
        if c is None:
            p = max(s)
            rest = s - {p}
            c, m = stabilize_point(self.chain(rest), p, self._rng)
            self._chains[s] = c
            self._orders[s] = self.order(rest) // m
        return c

    def order(self, s: frozenset[int]) -> int:
        if s not in self._orders:
            self.chain(s)
        return self._orders[s]

    def orders_along(self, points: Sequence[int]) -> list[int]:
        """Orders along a 0-based point sequence."""
        out = [self.order(frozenset())]
        acc: frozenset[int] = frozenset()
        for p in points:
            acc = acc | {p}
            out.append(self.order(acc))
        return out


@dataclass(frozen=True)
class ReorderResult:
    ok: bool
    failing_order: tuple[int, ...] | None = None
    failing_tuple: IrredundantTuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_reorder_invariance(
    G: GeneratedGroup, tup: IrredundantTuple, budget: int = 10**6, _cache: SetStabilizers | None = None
) -> ReorderResult:
    """Is every reordering of the irredundant base ``tup`` irredundant?

    On failure returns the first index permutation (lexicographic order) whose
    reordering is not irredundant.
    """
    if not tup.is_base() or not tup.is_irredundant():
        raise ValueError("expected a full irredundant base")
    t = len(tup)
    if factorial(t) > budget:
        raise BudgetExhausted(f"{t}! reorderings exceed budget {budget}", 0)
    cache = _cache or SetStabilizers(G)
    pts = [p - 1 for p in tup.points]
    for perm in permutations(range(t)):
        reordered = [pts[i] for i in perm]
        orders = cache.orders_along(reordered)
        if not all(a > b for a, b in zip(orders, orders[1:])):
            return ReorderResult(False, perm, _to_public(reordered, orders))
    return ReorderResult(True)


def all_bases_reorder_invariant(G: GeneratedGroup, budget: int = DEFAULT_BUDGET) -> ReorderResult:
    """Reorder invariance over every irredundant base of G (all-mode enumeration)."""
    cache = SetStabilizers(G)
    for tup in enumerate_irredundant_bases(G, "all", budget):
        r = check_reorder_invariance(G, tup, budget, cache)
        if not r:
            return r
    return ReorderResult(True)


@dataclass(frozen=True)
class BaseMatroid:
    ground_degree: int
    bases: frozenset[frozenset[int]]

    def sizes(self) -> set[int]:
        return {len(b) for b in self.bases}

    def is_uniform(self) -> bool:
        sizes = self.sizes()
        return len(sizes) == 1 and len(self.bases) == comb(self.ground_degree, next(iter(sizes)))


@dataclass(frozen=True)
class ExchangeResult:
    ok: bool
    reason: str = ""
    counterexample: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def extract_matroid(G: GeneratedGroup, budget: int = DEFAULT_BUDGET) -> BaseMatroid:
    """The point sets underlying all irredundant bases of G (1-based)."""
    bases = frozenset(frozenset(t.points) for t in enumerate_irredundant_bases(G, "all", budget))
    return BaseMatroid(G.degree, bases)


def verify_base_exchange(M: BaseMatroid) -> ExchangeResult:
    """Equal sizes and the base-exchange axiom for the family ``M.bases``."""
    sizes = M.sizes()
    if len(sizes) > 1:
        small = min(M.bases, key=lambda b: (len(b), sorted(b)))
        large = max(M.bases, key=lambda b: (len(b), sorted(b)))
        return ExchangeResult(False, f"size mismatch: base sizes {sorted(sizes)}", (small, large))
    family = M.bases
    ordered = sorted(family, key=sorted)
    for B1 in ordered:
        for B2 in ordered:
            d1 = B1 - B2
            if not d1:
                continue
            d2 = B2 - B1
            for x in sorted(d1):
                rest = B1 - {x}
                if not any(rest | {y} in family for y in d2):
                    return ExchangeResult(False, f"no exchange for {x}", (B1, B2, x))
    return ExchangeResult(True)


# lemma spot check ---------------------------------------------------------------


@dataclass(frozen=True)
class LemmaReport:
    applicable: bool
    hypothesis_met: bool
    b: int
    decision: Decision | None
    prediction_holds: bool | None
    message: str


def lemma_b2_spotcheck(G: GeneratedGroup, nonabelian_socle: bool, budget: int = DEFAULT_BUDGET) -> LemmaReport:
    """Check the prediction "non-abelian socle and b(G) = 2 implies not IBIS" on G.

    The socle is not computed: ``nonabelian_socle`` is the caller's assertion.
    """
    cert = is_ibis(G, budget)
    b = cert.b
    if cert.decision is Decision.UNDECIDED and b == 0:
        return LemmaReport(False, nonabelian_socle, b, cert.decision, None, "base size undecided within budget")
    if b != 2:
        return LemmaReport(False, nonabelian_socle, b, cert.decision, None, f"lemma not applicable (b = {b})")
    if not nonabelian_socle:
        return LemmaReport(True, False, b, cert.decision, None, "hypothesis not met, no prediction")
    if cert.decision is Decision.UNDECIDED:
        return LemmaReport(True, True, b, cert.decision, None, "decision undecided within budget")
    holds = cert.decision is Decision.NOT_IBIS
    msg = "prediction NOT_IBIS confirmed" if holds else "prediction violated: group is IBIS"
    return LemmaReport(True, True, b, cert.decision, holds, msg)
