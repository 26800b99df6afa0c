"""Permutation groups given by generators, backed by a lazily built stabilizer chain."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .chain import (
    StabilizerChain,
    SchreierVector,
    orbit_of,
    orbits_of,
    rebase,
    schreier_sims,
    stabilize_point,
)
from .perm import (
    CycleParseError,
    DegreeMismatchError,
    Permutation,
    _conj,
    _inv,
    _is_identity,
    _mul,
    format_cycles,
    parse_cycles,
)
from .rng import SplitMix64

__all__ = [
    "GeneratedGroup",
    "Coset",
    "BudgetExhausted",
    "GroupFileError",
    "parse_group_text",
    "format_group_text",
]

# Seed for the internal sampling used to rebuild chains of known order.  The
# samples only influence which strong generators get picked, never an order.
_CHAIN_SEED = 0x1B15


class BudgetExhausted(RuntimeError):
    """A node budget ran out before a search finished."""

    def __init__(self, message: str, nodes: int = 0, progress: object = None):
        super().__init__(message)
        self.nodes = nodes
        self.progress = progress


class GroupFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class GeneratedGroup:
    """A permutation group on {1..degree} generated by ``generators``.

    Identity generators are accepted and ignored.  The stabilizer chain is
    built on first use by deterministic Schreier-Sims (base: least moved point
    at each level) and never changes afterwards.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation] = (), name: str | None = None):
        if degree < 1:
            raise ValueError("degree must be positive")
        gens = tuple(generators)
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatchError(f"generator {g} has degree {g.degree}, group has degree {degree}")
        self.degree = degree
        self.generators = gens
        self.name = name
        raw: dict[tuple[int, ...], None] = {}
        for g in gens:
            if not _is_identity(g._img):
                raw.setdefault(g._img, None)
        self._gens = list(raw)
        self._chain: StabilizerChain | None = None

    @classmethod
    def _from_chain(cls, chain: StabilizerChain, gens: Sequence[tuple[int, ...]] | None = None,
                    name: str | None = None) -> GeneratedGroup:
        if gens is None:
            gens = chain.generators()
        G = cls(chain.degree, [Permutation._raw(g) for g in gens], name=name)
        G._chain = chain
        return G

    def __repr__(self) -> str:
        label = self.name or f"<{len(self._gens)} generators>"
        return f"GeneratedGroup({label}, degree={self.degree})"

    # chain ----------------------------------------------------------------

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = schreier_sims(self.degree, self._gens)
        return self._chain

    def build_chain(self, preferred_base: Sequence[int] | None = None) -> StabilizerChain:
        """Verified chain; ``preferred_base`` (1-based) opens the base, skipping redundant points."""
        if preferred_base is None:
            return self.chain
        base = [self._point(b) for b in preferred_base]
        return schreier_sims(self.degree, self._gens, base)

    # basic queries --------------------------------------------------------

    def order(self) -> int:
        return self.chain.order()

    def is_trivial(self) -> bool:
        return not self._gens

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatchError(f"degree {p.degree} element tested against degree {self.degree} group")
        return self.chain.contains(p._img)

    __contains__ = contains

    def is_subgroup_of(self, other: GeneratedGroup) -> bool:
        return all(other.chain.contains(g) for g in self._gens)

    def orbit(self, point: int) -> frozenset[int]:
        return frozenset(q + 1 for q in orbit_of(self._gens, self._point(point)))

    def orbit_transversal(self, point: int) -> dict[int, Permutation]:
        """For every orbit point d, an element mapping ``point`` to d."""
        sv = SchreierVector(self._point(point), list(self._gens), [_inv(g) for g in self._gens], self.degree)
        return {q + 1: Permutation._raw(sv.rep(q)) for q in sv.points}

    def orbits(self) -> list[frozenset[int]]:
        return [frozenset(q + 1 for q in o) for o in orbits_of(self._gens, self.degree)]

    def fixed_points(self) -> frozenset[int]:
        return frozenset(i + 1 for i in range(self.degree) if all(g[i] == i for g in self._gens))

    def moved_points(self) -> frozenset[int]:
        return frozenset(range(1, self.degree + 1)) - self.fixed_points()

    def is_transitive(self) -> bool:
        return len(orbit_of(self._gens, 0)) == self.degree

    def random_element(self, rng: SplitMix64) -> Permutation:
        return Permutation._raw(self.chain.random_element(rng))

    def conjugate(self, x: Permutation) -> GeneratedGroup:
        """``x^-1 G x``; the chain is carried over by relabelling."""
        chain = self.chain.conjugated(x._img)
        return GeneratedGroup._from_chain(chain, [_conj(g, x._img) for g in self._gens])

    # stabilizers ----------------------------------------------------------

    def point_stabilizer(self, point: int) -> GeneratedGroup:
        return self.tuple_stabilizer([point])

    def tuple_stabilizer(self, points: Sequence[int]) -> GeneratedGroup:
        """Pointwise stabilizer of ``points``; the empty tuple gives G itself."""
        chain = self.chain
        rng = SplitMix64(_CHAIN_SEED)
        for p in points:
            chain, _ = stabilize_point(chain, self._point(p), rng)
        if chain is self.chain:
            return self
        return GeneratedGroup._from_chain(chain)

    def stabilizer_orders(self, points: Sequence[int]) -> list[int]:
        """``[|G|, |G_p1|, |G_p1p2|, ...]`` along ``points``."""
        chain = self.chain
        rng = SplitMix64(_CHAIN_SEED)
        out = [chain.order()]
        for p in points:
            chain, m = stabilize_point(chain, self._point(p), rng)
            out.append(out[-1] // m)
        return out

    # intersection ---------------------------------------------------------

    def intersect(self, other: GeneratedGroup, budget: int = 10**8) -> GeneratedGroup:
        if other.degree != self.degree:
            raise DegreeMismatchError("cannot intersect groups of different degree")
        chain, gens = intersect_chains(self.chain, other.chain, budget)
        return GeneratedGroup._from_chain(chain, gens)

    # helpers --------------------------------------------------------------

    def _point(self, p: int) -> int:
        if not isinstance(p, int) or not 1 <= p <= self.degree:
            raise ValueError(f"point {p} out of range 1..{self.degree}")
        return p - 1


@dataclass(frozen=True, eq=False)
class Coset:
    """The right coset ``subgroup * representative``."""

    representative: Permutation
    subgroup: GeneratedGroup

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Coset) or other.subgroup is not self.subgroup:
            return NotImplemented
        return self.subgroup.contains(self.representative * ~other.representative)

    def __hash__(self) -> int:
        return hash(coset_key(self.subgroup.chain, self.representative._img))

    def __contains__(self, g: Permutation) -> bool:
        return self.subgroup.contains(g * ~self.representative)


def coset_key(chain: StabilizerChain, x: tuple[int, ...]) -> tuple[int, ...]:
    """Canonical element of the right coset ``H x``, where ``chain`` is for H.

    It is the element of ``H x`` whose images of the base points are
    lexicographically least, found greedily one level at a time.  Elements of
    ``H x`` with equal base images are equal, so this element is unique.
    """
    y = x
    for lev in chain.levels:
        best = min(lev.orbit.points, key=y.__getitem__)
        if best != lev.point:
            y = _mul(lev.orbit.rep(best), y)
    return y


def intersect_chains(A: StabilizerChain, B: StabilizerChain, budget: int) -> tuple[StabilizerChain, list[tuple[int, ...]]]:
    """Backtrack search for ``A`` meet ``B`` over the chain of ``A``.

    A's base is reordered so points fixed by B come first, which forces those
    images at once.  Levels are processed bottom-up; at level i an image of the
    base point is only tried if the part of the intersection found so far does
    not already reach it, and partial images are pruned by consistency with B.
    """
    n = A.degree
    rng = SplitMix64(_CHAIN_SEED)
    if not A.levels or not B.levels:
        return StabilizerChain(n), []
    b_moved = set(B.moved_points())
    prefix = [p for p in A.moved_points() if p not in b_moved]
    Ac = rebase(A, prefix, rng)
    base = Ac.base
    Bc = rebase(B, base, rng, keep_prefix=True)
    k = len(base)
    found: list[tuple[int, ...]] = []
    found_level: list[int] = []
    nodes = 0

    def search(j: int, q: tuple[int, ...], r: tuple[int, ...], rinv: tuple[int, ...]) -> tuple[int, ...] | None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExhausted(f"intersection exceeded {budget} nodes", nodes)
        if j == k:
            return q if Bc.contains(q) else None
        alev, blev = Ac.levels[j], Bc.levels[j]
        for d in alev.orbit.points:
            img = q[d]
            e = rinv[img]
            if e not in blev.orbit:
                continue
            t, ti = blev.orbit.pair(e)
            hit = search(j + 1, _mul(alev.orbit.rep(d), q), _mul(t, r), _mul(rinv, ti))
            if hit is not None:
                return hit
        return None

    orbit_sizes = [1] * k
    for i in range(k - 1, -1, -1):
        beta = base[i]
        lev_gens = [g for g, lv in zip(found, found_level) if lv >= i]
        reach = set(orbit_of(lev_gens, beta))
        failed: list[int] = []
        blev = Bc.levels[i]
        for gamma in Ac.levels[i].orbit.points:
            if gamma in reach or gamma not in blev.orbit:
                continue
            if any(gamma in orbit_of(lev_gens, f) for f in failed):
                continue
            t, ti = blev.orbit.pair(gamma)
            g = search(i + 1, Ac.levels[i].orbit.rep(gamma), t, ti)
            if g is None:
                failed.append(gamma)
            else:
                found.append(g)
                found_level.append(i)
                lev_gens.append(g)
                reach = set(orbit_of(lev_gens, beta))
        orbit_sizes[i] = len(reach)

    if not found:
        return StabilizerChain(n), []
    order = 1
    for size in orbit_sizes:
        order *= size
    chain = schreier_sims(n, found, base)
    if chain.order() != order:
        raise RuntimeError(f"intersection chain order {chain.order()} != {order}")
    return chain, found


# group text format ---------------------------------------------------------


def parse_group_text(text: str) -> GeneratedGroup:
    """Parse the group file format: ``degree N`` then one generator per line.

    ``#`` starts a comment; blank lines are ignored.
    """
    degree = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "degree" or not parts[1].isdigit() or int(parts[1]) < 1:
                raise GroupFileError(f"expected 'degree N', got {line!r}", lineno)
            degree = int(parts[1])
            continue
        try:
            gens.append(parse_cycles(line, degree))
        except CycleParseError as e:
            raise GroupFileError(f"{e} (token {e.token!r})", lineno) from e
    if degree is None:
        raise GroupFileError("missing 'degree N' line")
    return GeneratedGroup(degree, gens)


def format_group_text(G: GeneratedGroup, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"degree {G.degree}")
    lines.extend(format_cycles(g) for g in G.generators)
    return "\n".join(lines) + "\n"
