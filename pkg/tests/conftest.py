"""Shared fixtures and brute-force oracles.

The oracles here never touch stabilizer chains: they list every group
element by breadth-first closure and answer questions by filtering that list.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache

import pytest

from ibiskit.actions import subset_action
from ibiskit.catalog import catalog_names, load_catalog
from ibiskit.group import GeneratedGroup
from ibiskit.perm import Permutation, parse_cycles
from ibiskit.rng import SplitMix64


def closure(G: GeneratedGroup) -> frozenset[tuple[int, ...]]:
    """All elements of G as 0-based image tuples."""
    n = G.degree
    ident = tuple(range(n))
    gens = [g._img for g in G.generators]
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


@lru_cache(maxsize=None)
def elements_of(key: str) -> frozenset[tuple[int, ...]]:
    return closure(BRUTE_SUITE[key]())


def fixing(elements, points) -> list[tuple[int, ...]]:
    """Elements fixing every 0-based point in ``points``."""
    return [g for g in elements if all(g[p] == p for p in points)]


def brute_irredundant_tuples(elements, n: int, length: int | None = None):
    """Every irredundant tuple (0-based) with its stabilizer orders.

    ``length=None`` runs each branch until the stabilizer is trivial, i.e.
    lists every irredundant base.
    """
    out = []

    def rec(stab, pts, orders):
        if (length is not None and len(pts) == length) or (length is None and len(stab) == 1):
            out.append((tuple(pts), tuple(orders)))
            return
        for p in range(n):
            if p in pts:
                continue
            child = [g for g in stab if g[p] == p]
            if len(child) < len(stab):
                rec(child, pts + [p], orders + [len(child)])

    rec(list(elements), [], [len(elements)])
    return out


def random_group(seed: int, max_degree: int = 8, max_order: int = 10_000) -> GeneratedGroup:
    """A random permutation group of small order, for oracle comparisons."""
    rng = SplitMix64(seed)
    while True:
        n = 2 + rng.randbelow(max_degree - 1)
        k = 1 + rng.randbelow(3)
        gens = []
        for _ in range(k):
            img = list(range(1, n + 1))
            for i in range(n - 1, 0, -1):
                j = rng.randbelow(i + 1)
                img[i], img[j] = img[j], img[i]
            # sparse generators give more varied (often intransitive) groups
            if rng.randbelow(2):
                a, b = rng.randbelow(n), rng.randbelow(n)
                img = list(range(1, n + 1))
                img[a], img[b] = img[b], img[a]
            gens.append(Permutation(img))
        G = GeneratedGroup(n, gens)
        if G.order() <= max_order:
            return G


def _catalog_small():
    out = {}
    for name in catalog_names():
        G = load_catalog(name)
        if G.degree <= 12 and G.order() <= 10_000 and G.is_transitive():
            out[name] = (lambda G=G: G)
    return out


BRUTE_SUITE = _catalog_small()
BRUTE_SUITE["S5 on 2-sets"] = lambda: subset_action(load_catalog("S5"), 2).image()
BRUTE_SUITE["A5 on 2-sets"] = lambda: subset_action(load_catalog("A5"), 2).image()
BRUTE_SUITE["S4 on 2-sets"] = lambda: subset_action(load_catalog("S4"), 2).image()
BRUTE_SUITE["C2"] = lambda: GeneratedGroup(2, [parse_cycles("(1 2)", 2)])


@pytest.fixture(params=sorted(BRUTE_SUITE))
def brute_group(request):
    return request.param, BRUTE_SUITE[request.param]()


@pytest.fixture
def s5_pairs():
    return subset_action(load_catalog("S5"), 2).image()
