"""Permutation actions induced by a group: on cosets of a subgroup and on k-subsets."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Literal

from .chain import orbit_of, stabilize_point
from .group import GeneratedGroup, coset_key, format_group_text
from .perm import Permutation, _mul
from .rng import SplitMix64

__all__ = [
    "ActionMap",
    "ActionTooLarge",
    "NotASubgroup",
    "PrimitivityResult",
    "natural_action",
    "coset_action",
    "subset_action",
    "is_transitive",
    "is_primitive",
    "is_faithful",
    "check_homomorphism",
    "subset_rank",
    "subset_unrank",
]

DEFAULT_CAP = 10**6


class ActionTooLarge(ValueError):
    pass


class NotASubgroup(ValueError):
    pass


@dataclass
class ActionMap:
    """Images of the source generators, index-aligned, acting on ``target_degree`` points.

    ``labels[i]`` describes target point ``i + 1``: a tuple of generator
    indices (a word whose product is the coset representative) for coset
    actions, or the 1-based k-subset for subset actions.
    """

    source: GeneratedGroup
    target_degree: int
    generator_images: list[Permutation]
    kind: Literal["natural", "cosets", "subsets"] = "natural"
    labels: list[tuple[int, ...]] | None = None
    representatives: list[Permutation] | None = None
    _act: object = field(default=None, repr=False)
    _image: GeneratedGroup | None = field(default=None, repr=False)

    def image(self) -> GeneratedGroup:
        if self._image is None:
            self._image = GeneratedGroup(self.target_degree, self.generator_images)
        return self._image

    def act(self, g: Permutation) -> Permutation:
        """Image of an arbitrary source element."""
        return Permutation._raw(self._act(g._img))

    def label_text(self) -> str:
        """Sidecar label table: ``point<TAB>label`` per line."""
        lines = [f"# {self.kind} labels for degree {self.target_degree}"]
        if self.kind == "cosets":
            lines.append("# label = word in source generators (1-based indices), e = identity")
            for i, w in enumerate(self.labels or ()):
                lines.append(f"{i + 1}\t{' '.join(str(j + 1) for j in w) or 'e'}")
        elif self.kind == "subsets":
            for i, s in enumerate(self.labels or ()):
                lines.append(f"{i + 1}\t{' '.join(map(str, s))}")
        else:
            for i in range(self.target_degree):
                lines.append(f"{i + 1}\t{i + 1}")
        return "\n".join(lines) + "\n"

    def export(self) -> tuple[str, str]:
        """(group file text of the image, label table text)."""
        return format_group_text(self.image(), [f"{self.kind} action image"]), self.label_text()


def natural_action(G: GeneratedGroup) -> ActionMap:
    return ActionMap(G, G.degree, list(G.generators), "natural", _act=lambda g: g, _image=G)


def coset_action(G: GeneratedGroup, H: GeneratedGroup, cap: int = DEFAULT_CAP) -> ActionMap:
    """Action of G on the right cosets of H, by closure from the trivial coset.

    Point 1 is ``H`` itself.  Each coset is represented by the first element
    reached breadth-first from the identity with generators tried in order.
    """
    if H.degree != G.degree or not H.is_subgroup_of(G):
        raise NotASubgroup("H is not a subgroup of G")
    index = G.order() // H.order()
    if index > cap:
        raise ActionTooLarge(f"index {index} exceeds cap {cap}")
    hchain = H.chain
    n = G.degree
    ident = tuple(range(n))
    reps = [ident]
    words: list[tuple[int, ...]] = [()]
    where = {coset_key(hchain, ident): 0}
    images = [[0] * index for _ in G.generators]
    gens = [g._img for g in G.generators]
    i = 0
    while i < len(reps):
        r = reps[i]
        for j, g in enumerate(gens):
            y = _mul(r, g)
            key = coset_key(hchain, y)
            t = where.get(key)
            if t is None:
                t = len(reps)
                where[key] = t
                reps.append(y)
                words.append(words[i] + (j,))
            images[j][i] = t
        i += 1
    if len(reps) != index:
        raise RuntimeError(f"enumerated {len(reps)} cosets, expected {index}")

    def act(x: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(where[coset_key(hchain, _mul(r, x))] for r in reps)

    gen_images = [Permutation._raw(tuple(img)) for img in images]
    return ActionMap(G, index, gen_images, "cosets", words, [Permutation._raw(r) for r in reps], _act=act)


def subset_rank(subset: Sequence[int]) -> int:
    """Colexicographic rank (0-based) of a set of 0-based points."""
    return sum(comb(x, i + 1) for i, x in enumerate(sorted(subset)))


def subset_unrank(rank: int, k: int) -> tuple[int, ...]:
    out = []
    for i in range(k, 0, -1):
        x = i - 1
        while comb(x + 1, i) <= rank:
            x += 1
        out.append(x)
        rank -= comb(x, i)
    return tuple(reversed(out))


def subset_action(G: GeneratedGroup, k: int, cap: int = DEFAULT_CAP) -> ActionMap:
    """Action of G on k-subsets of its points, numbered in colex order."""
    n = G.degree
    if not 1 <= k <= n:
        raise ValueError(f"k={k} must lie in 1..{n}")
    m = comb(n, k)
    if m > cap:
        raise ActionTooLarge(f"C({n},{k}) = {m} exceeds cap {cap}")
    subsets = sorted(combinations(range(n), k), key=lambda s: s[::-1])
    index = {s: i for i, s in enumerate(subsets)}

    def act(g: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(index[tuple(sorted(g[x] for x in s))] for s in subsets)

    gen_images = [Permutation._raw(act(g._img)) for g in G.generators]
    labels = [tuple(x + 1 for x in s) for s in subsets]
    return ActionMap(G, m, gen_images, "subsets", labels, _act=act)


def _as_group(A: ActionMap | GeneratedGroup) -> GeneratedGroup:
    return A.image() if isinstance(A, ActionMap) else A


def is_transitive(A: ActionMap | GeneratedGroup) -> bool:
    return _as_group(A).is_transitive()


@dataclass(frozen=True)
class PrimitivityResult:
    status: Literal["primitive", "imprimitive", "intransitive"]
    block: frozenset[int] | None = None

    def __bool__(self) -> bool:
        return self.status == "primitive"


def minimal_block(gens: Sequence[tuple[int, ...]], n: int, a: int, b: int) -> list[int]:
    """Finest G-invariant partition joining a and b; returns the class of a (0-based)."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parent[find(b)] = find(a)
    pending = [(a, b)]
    while pending:
        x, y = pending.pop()
        for g in gens:
            u, v = find(g[x]), find(g[y])
            if u != v:
                parent[v] = u
                pending.append((u, v))
    root = find(a)
    return [x for x in range(n) if find(x) == root]


def is_primitive(A: ActionMap | GeneratedGroup) -> PrimitivityResult:
    """Primitivity by minimal blocks through the pairs {1, g} for stabilizer-orbit reps g."""
    G = _as_group(A)
    n = G.degree
    if not G.is_transitive():
        return PrimitivityResult("intransitive")
    if n <= 2:
        return PrimitivityResult("primitive")
    stab, _ = stabilize_point(G.chain, 0, SplitMix64(0))
    gens = G._gens
    seen = {0}
    for g0 in range(1, n):
        if g0 in seen:
            continue
        orb = orbit_of(stab.generators(), g0)
        seen.update(orb)
        block = minimal_block(gens, n, 0, g0)
        if len(block) < n:
            return PrimitivityResult("imprimitive", frozenset(x + 1 for x in block))
    return PrimitivityResult("primitive")


def is_faithful(A: ActionMap) -> bool:
    return A.source.order() == A.image().order()


def check_homomorphism(A: ActionMap, words: int = 100, length: int = 12, seed: int = 0) -> bool:
    """Image of a random word equals the word in the generator images."""
    rng = SplitMix64(seed)
    src = A.source.generators
    if not src:
        return True
    n, m = A.source.degree, A.target_degree
    for _ in range(words):
        x = tuple(range(n))
        y = tuple(range(m))
        for _ in range(length):
            j = rng.randbelow(len(src))
            x = _mul(x, src[j]._img)
            y = _mul(y, A.generator_images[j]._img)
        if A._act(x) != y:
            return False
    return True
