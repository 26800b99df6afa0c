"""Stabilizer chains (bases and strong generating sets).

All work here is on raw 0-based image tuples.  Elements act on the right, so a
chain with base (b_1, .., b_k) writes every group element uniquely as
``u_k * ... * u_2 * u_1`` with ``u_i`` taken from the level-i transversal.

Two constructions are provided:

* :func:`schreier_sims` -- deterministic; every Schreier generator of every
  level is sifted, so the result is verified on return.
* :func:`build_known_order` -- sifts random elements of a group whose order is
  known exactly, stopping when the chain order reaches it.  Each level orbit is
  contained in the true basic orbit, so equality of the orders certifies the
  chain; no probabilistic caveat remains.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from math import prod

from .perm import _conj, _inv, _is_identity, _mul
from .rng import SplitMix64

Perm = tuple[int, ...]

DEPTH_CAP = 8


class SchreierVector:
    """Orbit of ``root`` under ``gens`` with a parent-pointer transversal.

    ``label[q] = j`` records that q was reached as ``gens[j]`` applied to its
    parent.  Coset representatives are rebuilt on demand; a representative is
    cached for every queried point and every ``DEPTH_CAP``-th ancestor on long
    paths, which bounds later walks.
    """

    __slots__ = ("root", "gens", "invs", "label", "points", "_cache")

    def __init__(self, root: int, gens: list[Perm], invs: list[Perm], degree: int):
        self.root = root
        self.gens = gens
        self.invs = invs
        self.label = {root: -1}
        self.points = [root]
        ident = tuple(range(degree))
        self._cache: dict[int, tuple[Perm, Perm]] = {root: (ident, ident)}
        self.extend()

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, pt: int) -> bool:
        return pt in self.label

    def extend(self) -> None:
        """Close the orbit under the current generators; existing labels are kept."""
        pts, lab, gens = self.points, self.label, self.gens
        i = 0
        while i < len(pts):
            p = pts[i]
            for j, g in enumerate(gens):
                q = g[p]
                if q not in lab:
                    lab[q] = j
                    pts.append(q)
            i += 1

    def rep(self, pt: int) -> Perm:
        return self.pair(pt)[0]

    def rep_inv(self, pt: int) -> Perm:
        return self.pair(pt)[1]

    def pair(self, pt: int) -> tuple[Perm, Perm]:
        """(u, u^-1) with u mapping the root to ``pt``."""
        cache = self._cache
        hit = cache.get(pt)
        if hit is not None:
            return hit
        path = []
        x = pt
        while x not in cache:
            j = self.label[x]
            path.append((j, x))
            x = self.invs[j][x]
        u, ui = cache[x]
        for depth, (j, y) in enumerate(reversed(path), 1):
            u = _mul(u, self.gens[j])
            ui = _mul(self.invs[j], ui)
            if depth % DEPTH_CAP == 0:
                cache[y] = (u, ui)
        cache[pt] = (u, ui)
        return u, ui

    def relabelled(self, x: Perm, gens: list[Perm], invs: list[Perm], degree: int) -> SchreierVector:
        sv = object.__new__(SchreierVector)
        sv.root = x[self.root]
        sv.gens = gens
        sv.invs = invs
        sv.label = {x[p]: j for p, j in self.label.items()}
        sv.points = [x[p] for p in self.points]
        ident = tuple(range(degree))
        sv._cache = {sv.root: (ident, ident)}
        return sv


class Level:
    __slots__ = ("point", "gens", "invs", "orbit", "checked")

    def __init__(self, point: int, degree: int):
        self.point = point
        self.gens: list[Perm] = []
        self.invs: list[Perm] = []
        self.orbit = SchreierVector(point, self.gens, self.invs, degree)
        self.checked: set[tuple[int, int]] = set()

    def add_gen(self, g: Perm) -> None:
        self.gens.append(g)
        self.invs.append(_inv(g))
        self.orbit.extend()


class StabilizerChain:
    """Base points with basic orbits, transversals and strong generators.

    ``levels[i].gens`` generate the pointwise stabilizer of ``base[:i]``.
    """

    def __init__(self, degree: int, levels: list[Level] | None = None):
        self.degree = degree
        self.levels: list[Level] = levels if levels is not None else []
        self._orbit_cache: list[list[int]] | None = None

    @property
    def base(self) -> list[int]:
        return [lev.point for lev in self.levels]

    def order(self) -> int:
        return prod(len(lev.orbit) for lev in self.levels)

    def orbit_lengths(self) -> list[int]:
        return [len(lev.orbit) for lev in self.levels]

    def generators(self) -> list[Perm]:
        return list(self.levels[0].gens) if self.levels else []

    def strong_generators(self) -> list[Perm]:
        seen: dict[Perm, None] = {}
        for lev in self.levels:
            for g in lev.gens:
                seen.setdefault(g, None)
        return list(seen)

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        """Strip ``g`` through levels ``start..``; returns (residue, level reached)."""
        levels = self.levels
        for i in range(start, len(levels)):
            lev = levels[i]
            d = g[lev.point]
            if d not in lev.orbit.label:
                return g, i
            if d != lev.point:
                g = _mul(g, lev.orbit.pair(d)[1])
        return g, len(levels)

    def contains(self, g: Perm) -> bool:
        r, _ = self.sift(g)
        return _is_identity(r)

    def random_element(self, rng: SplitMix64) -> Perm:
        g = tuple(range(self.degree))
        for lev in reversed(self.levels):
            pts = lev.orbit.points
            g = _mul(g, lev.orbit.rep(pts[rng.randbelow(len(pts))]))
        return g

    def tail(self, i: int) -> StabilizerChain:
        """Chain for the pointwise stabilizer of ``base[:i]`` (shares level data)."""
        return StabilizerChain(self.degree, self.levels[i:])

    def conjugated(self, x: Perm) -> StabilizerChain:
        """Chain for ``x^-1 G x``: base points and orbits relabelled through ``x``."""
        levels = []
        for lev in self.levels:
            new = object.__new__(Level)
            new.point = x[lev.point]
            new.gens = [_conj(g, x) for g in lev.gens]
            new.invs = [_conj(g, x) for g in lev.invs]
            new.orbit = lev.orbit.relabelled(x, new.gens, new.invs, self.degree)
            new.checked = set()
            levels.append(new)
        return StabilizerChain(self.degree, levels)

    def orbits(self) -> list[list[int]]:
        """Orbits of the whole group on {0..n-1}, each sorted, listed by least point."""
        if self._orbit_cache is None:
            self._orbit_cache = orbits_of(self.generators(), self.degree)
        return self._orbit_cache

    def moved_points(self) -> list[int]:
        return sorted(p for o in self.orbits() if len(o) > 1 for p in o)

    def strip_redundant(self, keep: int = 0) -> StabilizerChain:
        kept = [lev for i, lev in enumerate(self.levels) if i < keep or len(lev.orbit) > 1]
        self.levels = kept
        return self


def orbits_of(gens: Sequence[Perm], degree: int) -> list[list[int]]:
    seen = [False] * degree
    out = []
    for start in range(degree):
        if seen[start]:
            continue
        seen[start] = True
        orb = [start]
        i = 0
        while i < len(orb):
            p = orb[i]
            for g in gens:
                q = g[p]
                if not seen[q]:
                    seen[q] = True
                    orb.append(q)
            i += 1
        orb.sort()
        out.append(orb)
    return out


def orbit_of(gens: Sequence[Perm], point: int) -> list[int]:
    orb = [point]
    seen = {point}
    i = 0
    while i < len(orb):
        p = orb[i]
        for g in gens:
            q = g[p]
            if q not in seen:
                seen.add(q)
                orb.append(q)
        i += 1
    return orb


def _first_moved(g: Perm) -> int:
    for i, x in enumerate(g):
        if i != x:
            return i
    raise ValueError("identity has no moved point")


def _insert(levels: list[Level], degree: int, g: Perm, upto: int) -> None:
    """Add ``g`` as strong generator of levels ``0..upto``; extend the base if needed."""
    if upto == len(levels):
        levels.append(Level(_first_moved(g), degree))
    for lev in levels[: upto + 1]:
        lev.add_gen(g)


def _first_moving_level(levels: list[Level], g: Perm) -> int:
    for i, lev in enumerate(levels):
        if g[lev.point] != lev.point:
            return i
    return len(levels)


def schreier_sims(
    degree: int, gens: Iterable[Perm], base: Sequence[int] = (), keep_prefix: bool = False
) -> StabilizerChain:
    """Deterministic Schreier-Sims.

    Points of ``base`` open the chain in order; the ones that end up with a
    trivial basic orbit are dropped unless ``keep_prefix`` is set.  Further base
    points are the least point moved by the generator that needed them.
    """
    levels = [Level(b, degree) for b in base]
    for g in gens:
        if _is_identity(g):
            continue
        _insert(levels, degree, g, _first_moving_level(levels, g))

    chain = StabilizerChain(degree, levels)
    i = len(levels) - 1
    while i >= 0:
        lev = levels[i]
        restart = None
        pts = lev.orbit.points
        k = 0
        while k < len(pts) and restart is None:
            q = pts[k]
            k += 1
            uq = None
            for j, s in enumerate(lev.gens):
                if (q, j) in lev.checked:
                    continue
                lev.checked.add((q, j))
                if uq is None:
                    uq = lev.orbit.rep(q)
                qs = s[q]
                h = _mul(_mul(uq, s), lev.orbit.rep_inv(qs))
                if _is_identity(h):
                    continue
                r, drop = chain.sift(h, i + 1)
                if _is_identity(r):
                    continue
                if drop == len(levels):
                    levels.append(Level(_first_moved(r), degree))
                for lev2 in levels[i + 1 : drop + 1]:
                    lev2.add_gen(r)
                restart = drop
                break
        i = restart if restart is not None else i - 1

    return chain.strip_redundant(keep=len(base) if keep_prefix else 0)


def build_known_order(
    degree: int,
    sampler: Callable[[], Perm],
    order: int,
    base: Sequence[int] = (),
    keep_prefix: bool = False,
    max_samples: int = 1_000_000,
) -> StabilizerChain:
    """Chain for a group of known ``order`` from uniform random elements ``sampler()``."""
    levels = [Level(b, degree) for b in base]
    chain = StabilizerChain(degree, levels)
    samples = 0
    while chain.order() < order:
        samples += 1
        if samples > max_samples:
            raise RuntimeError(f"chain order stuck at {chain.order()} < {order}")
        r, drop = chain.sift(sampler())
        if _is_identity(r):
            continue
        _insert(levels, degree, r, drop)
    if chain.order() != order:
        raise RuntimeError(f"chain order {chain.order()} overshoots declared {order}")
    return chain.strip_redundant(keep=len(base) if keep_prefix else 0)


def rebase(chain: StabilizerChain, base: Sequence[int], rng: SplitMix64, keep_prefix: bool = False) -> StabilizerChain:
    """A new chain for the same group whose base starts with ``base``."""
    if not chain.levels:
        levels = [Level(b, chain.degree) for b in base] if keep_prefix else []
        return StabilizerChain(chain.degree, levels)
    return build_known_order(chain.degree, lambda: chain.random_element(rng), chain.order(), base, keep_prefix)


def stabilize_point(chain: StabilizerChain, p: int, rng: SplitMix64) -> tuple[StabilizerChain, int]:
    """Chain of the stabilizer of ``p`` and the length of the orbit of ``p``.

    Uses the existing chain where it can: the first base point's stabilizer is a
    tail, and anything in the first basic orbit gets a conjugated tail.
    """
    if not chain.levels:
        return chain, 1
    top = chain.levels[0]
    if p == top.point:
        return chain.tail(1), len(top.orbit)
    if p in top.orbit:
        return chain.tail(1).conjugated(top.orbit.rep(p)), len(top.orbit)
    sv = SchreierVector(p, top.gens, top.invs, chain.degree)
    m = len(sv)
    if m == 1:
        return chain, 1
    target = chain.order() // m

    def sample() -> Perm:
        g = chain.random_element(rng)
        return _mul(g, sv.rep_inv(g[p]))

    base = [b for b in chain.base if b != p]
    return build_known_order(chain.degree, sample, target, base), m
