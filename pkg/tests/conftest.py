"""Shared fixtures and independent brute-force oracles.

The oracles recompute results with plain Python set arithmetic and element
loops, never through the library's bit-vector kernels, so they can vouch for
them.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from ablab import (
    Group,
    GroupSet,
    SplitRng,
    alternating_group,
    cyclic_group,
    dihedral_group,
    elementary_abelian_group,
    symmetric_group,
)


@pytest.fixture(scope="session")
def c8() -> Group:
    return cyclic_group(8)


@pytest.fixture(scope="session")
def c12() -> Group:
    return cyclic_group(12)


@pytest.fixture(scope="session")
def c16() -> Group:
    return cyclic_group(16)


@pytest.fixture(scope="session")
def ea24() -> Group:
    return elementary_abelian_group(2, 4)


@pytest.fixture(scope="session")
def ea26() -> Group:
    return elementary_abelian_group(2, 6)


@pytest.fixture(scope="session")
def d4() -> Group:
    return dihedral_group(4)


@pytest.fixture(scope="session")
def d6() -> Group:
    return dihedral_group(6)


@pytest.fixture(scope="session")
def s3() -> Group:
    return symmetric_group(3)


@pytest.fixture(scope="session")
def s4() -> Group:
    return symmetric_group(4)


@pytest.fixture(scope="session")
def small_zoo(c8, c12, ea24, d6, s4) -> list[Group]:
    return [c8, c12, ea24, d6, s4]


def rng(label: str, seed: int = 0) -> SplitRng:
    return SplitRng.from_seed(seed).derive(label)


def random_nonempty(g: Group, r: SplitRng, density=Fraction(1, 3)) -> GroupSet:
    mask = r.subset_mask(g.order, density)
    if mask == 0:
        mask = 1 << r.randint(0, g.order - 1)
    return GroupSet(g, mask)


# --- independent oracles ------------------------------------------------------


def brute_product(g: Group, xs, ys) -> set[int]:
    return {g.mul(x, y) for x in xs for y in ys}


def brute_inverse(g: Group, xs) -> set[int]:
    return {g.invert(x) for x in xs}


def brute_power(g: Group, xs, k: int) -> set[int]:
    acc = {0}
    for _ in range(k):
        acc = brute_product(g, acc, xs)
    return acc


def brute_word(g: Group, xs, signs: str) -> set[int]:
    inv = brute_inverse(g, xs)
    acc = None
    for s in signs:
        term = set(xs) if s == "+" else inv
        acc = term if acc is None else brute_product(g, acc, term)
    return acc if acc is not None else {0}


def brute_closure(g: Group, seed) -> frozenset[int]:
    elems = set(seed) | {0} | {g.invert(x) for x in seed}
    frontier = list(elems)
    while frontier:
        x = frontier.pop()
        for y in list(elems):
            for z in (g.mul(x, y), g.mul(y, x)):
                if z not in elems:
                    elems.add(z)
                    frontier.append(z)
    return frozenset(elems)


def naive_subgroups_inside(g: Group, wset: set[int]) -> set[frozenset[int]]:
    """Join-fixpoint enumeration of every subgroup contained in wset."""
    found = {frozenset([0])}
    for x in wset:
        c = brute_closure(g, [x])
        if c <= wset:
            found.add(c)
    while True:
        fresh = set()
        pool = sorted(found, key=sorted)
        for i, a in enumerate(pool):
            for b in pool[i + 1 :]:
                j = brute_closure(g, a | b)
                if j <= wset and j not in found:
                    fresh.add(j)
        if not fresh:
            return found
        found |= fresh
