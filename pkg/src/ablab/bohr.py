"""Bohr neighborhoods, approximate homomorphisms, and witness searches.

A (delta, n)-Bohr neighborhood in H is the strict sublevel set
{x in H : d(0, tau(x)) < delta} of an exact homomorphism tau: H -> T^n.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (
    FeasibilityError,
    GroupMismatchError,
    NotExactError,
    PreconditionError,
    TheoremViolationError,
)
from .groups import Subgroup
from .sets import GroupSet
from .torus import TorusMap, characters, product_map, trivial_map

_METRICS = ("linf", "l1", "l2")


def _sublevel_positions(f: TorusMap, bound: Fraction, metric: str) -> np.ndarray:
    """Boolean row selector for {x : d(f(x), 0) < bound}, exact comparison."""
    if metric not in _METRICS:
        raise ValueError(f"metric must be one of {_METRICS}")
    if f.dim == 0:
        return np.ones(f.domain.order, dtype=bool)
    dev = np.minimum(f.nums, f.den - f.nums)
    num, den = bound.numerator, bound.denominator
    if metric == "linf":
        agg = dev.max(axis=1)
        return agg * den < num * f.den
    if metric == "l1":
        agg = dev.sum(axis=1)
        return agg * den < num * f.den
    agg = (dev.astype(object) ** 2).sum(axis=1)
    return agg * den**2 < num**2 * f.den**2


def _positions_to_set(f: TorusMap, member: np.ndarray) -> GroupSet:
    mask = 0
    for e in f.elems[member]:
        mask |= 1 << int(e)
    return GroupSet(f.domain.parent, mask)


def bohr_set(
    h: Subgroup, tau: TorusMap, delta: Fraction, metric: str = "linf"
) -> GroupSet:
    """{x in H : d(0, tau(x)) < delta} for an exact homomorphism tau."""
    delta = Fraction(delta)
    if delta <= 0:
        raise PreconditionError("delta must be positive")
    if tau.domain != h:
        raise GroupMismatchError("tau is not defined on the given subgroup")
    if not tau.is_exact:
        raise NotExactError("bohr_set needs an exact homomorphism")
    return _positions_to_set(tau, _sublevel_positions(tau, delta, metric))


def approx_bohr_set(
    h: Subgroup, f: TorusMap, eps: Fraction, metric: str = "linf"
) -> GroupSet:
    """Sublevel set of an arbitrary map with f(1)=0; no homomorphism required."""
    eps = Fraction(eps)
    if f.domain != h:
        raise GroupMismatchError("f is not defined on the given subgroup")
    if not f.maps_identity_to_zero():
        raise PreconditionError("f must send the identity to 0")
    return _positions_to_set(f, _sublevel_positions(f, eps, metric))


# --- rounding approximate homomorphisms to exact ones ------------------------


@dataclass(frozen=True)
class RoundingResult:
    found: bool
    tau: TorusMap | None
    bohr: GroupSet | None
    best_distance: Fraction

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "best_distance": [
                self.best_distance.numerator,
                self.best_distance.denominator,
            ],
            "bohr": None if self.bohr is None else self.bohr.to_json(),
        }


def _generating_positions(h: Subgroup) -> np.ndarray:
    """Positions (in member order) of a small generating set of H."""
    g = h.parent
    elems = h.element_indices()
    have = 1
    gens: list[int] = []
    for pos, e in enumerate(elems):
        if not have >> int(e) & 1:
            gens.append(pos)
            have = g.closure(have | (1 << int(e)))
            if have == h.mask:
                break
    return np.asarray(gens, dtype=np.int64) if gens else np.asarray([0], np.int64)


def _sup_distance_rows(
    char_nums: np.ndarray, char_den: int, f_nums: np.ndarray, f_den: int
) -> np.ndarray:
    """Sup distance of each character row to a target column, as Fractions.

    char_nums has shape (C, h); f_nums has shape (h,).  Returns numerators
    over lcm(char_den, f_den).
    """
    m = math.lcm(char_den, f_den)
    diff = (char_nums * (m // char_den) - f_nums[None, :] * (m // f_den)) % m
    np.minimum(diff, m - diff, out=diff)
    return diff.max(axis=1), m


def round_to_homomorphism(
    f: TorusMap, delta: Fraction, beam_width: int | None = None
) -> RoundingResult:
    """Search for an exact homomorphism tau with sup_x d(tau(x), f(x)) <= 2 delta.

    On success returns tau and B = bohr_set(tau, delta), after verifying
    B is contained in the 3*delta sublevel set of f.  On failure reports the
    best sup distance found; absence is a value, not an error.
    """
    delta = Fraction(delta)
    if f.defect() >= delta:
        raise PreconditionError("f must be a delta-homomorphism (defect < delta)")
    h = f.domain
    chars = characters(h)
    char_nums = np.stack([c.nums[:, 0] for c in chars])
    char_den = chars[0].den
    gens = _generating_positions(h)
    two_delta = 2 * delta
    chosen: list[TorusMap] = []
    best_each: list[Fraction] = []
    for j in range(f.dim):
        col = f.nums[:, j]
        order = np.arange(len(chars))
        if beam_width is not None and beam_width < len(chars):
            gen_sup, m = _sup_distance_rows(
                char_nums[:, gens], char_den, col[gens], f.den
            )
            order = np.argsort(gen_sup, kind="stable")[:beam_width]
        sup, m = _sup_distance_rows(char_nums[order], char_den, col, f.den)
        pick = int(np.argmin(sup))
        best = Fraction(int(sup[pick]), m)
        best_each.append(best)
        chosen.append(chars[int(order[pick])])
    best_overall = max(best_each) if best_each else Fraction(0)
    if any(b > two_delta for b in best_each):
        return RoundingResult(False, None, None, best_overall)
    tau = product_map(chosen) if chosen else trivial_map(h, 0)
    bohr = bohr_set(h, tau, delta)
    target = approx_bohr_set(h, f, 3 * delta)
    if not bohr.issubset(target):
        raise TheoremViolationError(
            "rounded Bohr set escapes the approximate Bohr set",
            reproducer={"domain": h.to_json(), "delta": [delta.numerator, delta.denominator]},
        )
    return RoundingResult(True, tau, bohr, best_overall)


# --- witness search -----------------------------------------------------------


@dataclass(frozen=True)
class BohrWitness:
    subgroup: Subgroup
    tau: TorusMap
    delta: Fraction
    dim: int
    bohr: GroupSet
    container: GroupSet
    size_bound_ok: bool

    def to_json(self) -> dict:
        return {
            "subgroup": self.subgroup.to_json(),
            "delta": [self.delta.numerator, self.delta.denominator],
            "dim": self.dim,
            "bohr": self.bohr.to_json(),
            "container_digest": self.container.digest(),
            "size_bound_ok": self.size_bound_ok,
        }


def _verify_size_bound(h: Subgroup, delta: Fraction, dim: int, bohr: GroupSet) -> bool:
    return Fraction(bohr.card) >= delta**dim * h.order


def bohr_witness_search(
    container: GroupSet,
    h: Subgroup,
    n_max: int,
    delta_grid: Sequence[Fraction],
    max_maps: int | None = None,
) -> BohrWitness | None:
    """Largest Bohr set of H inside the container over products of characters.

    Character products are enumerated in graded order (fewest coordinates
    first, lexicographic within a grade); the delta grid is scanned from the
    largest value down, so the first fit per map is its largest fit.
    """
    if h.parent != container.group:
        raise GroupMismatchError("subgroup and container live over different groups")
    grid = sorted({Fraction(d) for d in delta_grid}, reverse=True)
    if not grid or grid[-1] <= 0:
        raise PreconditionError("delta grid must be positive")
    if 0 not in container:
        return None
    best: BohrWitness | None = None

    def consider(tau: TorusMap, delta: Fraction, dim: int, bohr: GroupSet) -> None:
        nonlocal best
        if best is None or bohr.card > best.bohr.card:
            ok = _verify_size_bound(h, delta, dim, bohr)
            if not ok:
                raise TheoremViolationError(
                    "Bohr size bound failed for an exact homomorphism",
                    reproducer={"subgroup": h.to_json(), "delta": str(delta)},
                )
            best = BohrWitness(h, tau, delta, dim, bohr, container, ok)

    if h.members.issubset(container):
        tau = trivial_map(h, 1)
        consider(tau, grid[0], 1, bohr_set(h, tau, grid[0]))
        return best
    chars = characters(h)
    den = chars[0].den
    devs = []
    nontrivial = []
    for i, c in enumerate(chars):
        if c.nums.any():
            nontrivial.append(i)
            devs.append(np.minimum(c.nums[:, 0], den - c.nums[:, 0]))
    elems = h.element_indices()
    budget = max_maps
    for dim in range(1, n_max + 1):
        for combo in itertools.combinations(range(len(nontrivial)), dim):
            if budget is not None:
                budget -= 1
                if budget < 0:
                    raise FeasibilityError("bohr_witness_search map budget exhausted")
            dev = devs[combo[0]]
            for c in combo[1:]:
                dev = np.maximum(dev, devs[c])
            for delta in grid:
                member = dev * delta.denominator < delta.numerator * den
                mask = 0
                for e in elems[member]:
                    mask |= 1 << int(e)
                if mask & ~container.mask:
                    continue
                bohr = GroupSet(container.group, mask)
                if best is None or bohr.card > best.bohr.card:
                    tau = product_map([chars[nontrivial[c]] for c in combo])
                    consider(tau, delta, dim, bohr)
                break  # largest fitting delta found for this map
    return best
