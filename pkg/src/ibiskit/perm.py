"""Permutations on {1..n} and the cycle-notation text format.

Action convention: permutations act on the right, so ``compose(a, b)`` (also
``a * b``) is the map ``i -> b(a(i))``: first ``a``, then ``b``.  Every other
module in the package uses this convention.

Points are 1-based in all public text and in the public API.  Internally an
image table is a 0-based tuple; the underscore helpers at the bottom of this
module work on those raw tuples and are what the group kernels use.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence

__all__ = [
    "Permutation",
    "CycleParseError",
    "DuplicatePointError",
    "PointRangeError",
    "MalformedCycleError",
    "DegreeMismatchError",
    "parse_cycles",
    "format_cycles",
    "compose",
    "inverse",
    "conjugate",
    "identity",
]


class CycleParseError(ValueError):
    """Base class for cycle-notation parse errors."""

    def __init__(self, message: str, token: str):
        super().__init__(message)
        self.token = token


class DuplicatePointError(CycleParseError):
    pass


class PointRangeError(CycleParseError):
    pass


class MalformedCycleError(CycleParseError):
    pass


class DegreeMismatchError(ValueError):
    pass


class Permutation:
    """An immutable bijection of {1..n}.

    ``Permutation([2, 3, 1])`` sends 1->2, 2->3, 3->1.  Multiplication composes
    left to right: ``(p * q)(i) == q(p(i))``.
    """

    __slots__ = ("_img",)

    def __init__(self, images: Sequence[int]):
        img = tuple(int(x) - 1 for x in images)
        n = len(img)
        if n == 0:
            raise ValueError("degree must be positive")
        if sorted(img) != list(range(n)):
            raise ValueError(f"images {list(images)} are not a permutation of 1..{n}")
        self._img = img

    @classmethod
    def _raw(cls, img: tuple[int, ...]) -> Permutation:
        p = object.__new__(cls)
        p._img = img
        return p

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        if degree < 1:
            raise ValueError("degree must be positive")
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> Permutation:
        return parse_cycles(text, degree)

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self._img)

    def __call__(self, point: int) -> int:
        if not 1 <= point <= len(self._img):
            raise ValueError(f"point {point} out of range 1..{len(self._img)}")
        return self._img[point - 1] + 1

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __invert__(self) -> Permutation:
        return inverse(self)

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else inverse(self)
        k = abs(k)
        result = tuple(range(len(self._img)))
        acc = base._img
        while k:
            if k & 1:
                result = _mul(result, acc)
            acc = _mul(acc, acc)
            k >>= 1
        return Permutation._raw(result)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._img == other._img

    def __hash__(self) -> int:
        return hash(self._img)

    def __repr__(self) -> str:
        return f"Permutation.from_cycles({format_cycles(self)!r}, {self.degree})"

    def __str__(self) -> str:
        return format_cycles(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._img))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, least point first, sorted by least point (1-based)."""
        return [tuple(x + 1 for x in c) for c in _cycles(self._img)]

    def cycle_type(self) -> tuple[int, ...]:
        """Sorted lengths of all cycles, fixed points included."""
        seen = [False] * len(self._img)
        lengths = []
        for i in range(len(self._img)):
            if seen[i]:
                continue
            k = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self._img[j]
                k += 1
            lengths.append(k)
        return tuple(sorted(lengths))

    def moved_points(self) -> frozenset[int]:
        return frozenset(i + 1 for i, x in enumerate(self._img) if i != x)


def identity(degree: int) -> Permutation:
    return Permutation.identity(degree)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Return the permutation ``i -> b(a(i))``."""
    if a.degree != b.degree:
        raise DegreeMismatchError(f"cannot compose degree {a.degree} with degree {b.degree}")
    return Permutation._raw(_mul(a._img, b._img))


def inverse(p: Permutation) -> Permutation:
    return Permutation._raw(_inv(p._img))


def conjugate(p: Permutation, x: Permutation) -> Permutation:
    """``x^-1 * p * x``: relabels the cycles of ``p`` through ``x``."""
    if p.degree != x.degree:
        raise DegreeMismatchError(f"cannot conjugate degree {p.degree} by degree {x.degree}")
    return Permutation._raw(_conj(p._img, x._img))


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(\d+)|(,)|(\S))")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle notation such as ``"(1 2 3)(4,5)"``.

    Points are separated by spaces and/or commas.  ``""`` and ``"()"`` give the
    identity.  Points not mentioned are fixed.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    img = list(range(degree))
    seen: set[int] = set()
    cycle: list[int] | None = None
    dangling_comma = False
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        opening, closing, number, comma, junk = m.groups()
        if junk is not None:
            raise MalformedCycleError(f"unexpected character {junk!r} at offset {m.start(5)}", junk)
        if opening:
            if cycle is not None:
                raise MalformedCycleError(f"nested '(' at offset {m.start(1)}", "(")
            cycle = []
        elif closing:
            if cycle is None:
                raise MalformedCycleError(f"unmatched ')' at offset {m.start(2)}", ")")
            if dangling_comma:
                raise MalformedCycleError(f"',' before ')' at offset {m.start(2)}", ",")
            for i, a in enumerate(cycle):
                img[a] = cycle[(i + 1) % len(cycle)]
            cycle = None
        elif comma:
            if cycle is None or not cycle:
                raise MalformedCycleError(f"misplaced ',' at offset {m.start(4)}", ",")
            dangling_comma = True
        else:
            if cycle is None:
                raise MalformedCycleError(f"point {number} outside parentheses", number)
            point = int(number)
            if not 1 <= point <= degree:
                raise PointRangeError(f"point {point} out of range 1..{degree}", number)
            if point in seen:
                raise DuplicatePointError(f"duplicate point {point}", number)
            seen.add(point)
            cycle.append(point - 1)
            dangling_comma = False
    if cycle is not None:
        raise MalformedCycleError("unclosed '('", "(")
    return Permutation._raw(tuple(img))


def format_cycles(p: Permutation) -> str:
    """Canonical cycle notation; fixed points omitted, identity is ``"()"``."""
    cycles = _cycles(p._img)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles)


# raw kernels on 0-based image tuples


def _mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(map(b.__getitem__, a))


def _inv(a: Sequence[int]) -> tuple[int, ...]:
    r = [0] * len(a)
    for i, x in enumerate(a):
        r[x] = i
    return tuple(r)


def _conj(p: Sequence[int], x: Sequence[int]) -> tuple[int, ...]:
    r = [0] * len(p)
    for i, y in enumerate(p):
        r[x[i]] = x[y]
    return tuple(r)


def _is_identity(a: Sequence[int]) -> bool:
    return all(i == x for i, x in enumerate(a))


def _cycles(img: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(img)
    out = []
    for i in range(len(img)):
        if seen[i] or img[i] == i:
            continue
        c = []
        j = i
        while not seen[j]:
            seen[j] = True
            c.append(j)
            j = img[j]
        out.append(tuple(c))
    return out


def _raw_words(gens: Iterable[Permutation]) -> list[tuple[int, ...]]:
    return [g._img for g in gens]
