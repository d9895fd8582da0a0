"""VC dimension of translate families, epsilon-stabilizers, packing bound.

The VC dimension of a set A in a group is the VC dimension of the family of
left translates {gA}.  The shattering search is exact: level-by-level over
candidate base sets, pruning any set with an unshattered prefix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import FeasibilityError, PreconditionError, TheoremViolationError
from .sets import GroupSet

DEFAULT_VC_CAP = 6
DEFAULT_VC_STATES = 2_000_000


@dataclass(frozen=True)
class VcResult:
    """value is exact when cap_hit is False, otherwise a lower bound (>= cap)."""

    value: int
    cap_hit: bool
    witness: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "vc_dim": self.value,
            "cap_hit": self.cap_hit,
            "witness": list(self.witness),
        }


def _distinct_translate_rows(a: GroupSet) -> np.ndarray:
    g = a.group
    n = g.order
    bits = a.bools
    rows = np.empty((n, n), dtype=bool)
    step = max(1, (1 << 23) // n)
    for i in range(0, n, step):
        rows[i : i + step] = bits[g.mult[g.inv[np.arange(i, min(n, i + step))]]]
    return np.unique(rows, axis=0)


def vc_dimension(
    a: GroupSet,
    cap: int = DEFAULT_VC_CAP,
    max_states: int = DEFAULT_VC_STATES,
) -> VcResult:
    """Largest d <= cap such that some d-element set is shattered by {gA}.

    Exact level-wise search: a candidate is only extended if it is itself
    shattered, and extensions are vectorized over all new points at once.
    max_states bounds the survivor list (FeasibilityError beyond it).
    """
    g = a.group
    n = g.order
    rows = _distinct_translate_rows(a)
    d_count = len(rows)
    if d_count <= 1:
        return VcResult(0, False, ())
    # Bit-packed copies: extension checks reduce whole byte blocks at once.
    packed_one = np.packbits(rows, axis=1)
    packed_zero = np.packbits(~rows, axis=1)
    cols = rows.astype(np.int8)  # column reads without per-survivor casts
    nbytes = packed_one.shape[1]
    survivors: list[tuple[int, ...]] = [()]
    witness: tuple[int, ...] = ()
    for level in range(1, cap + 1):
        if d_count < (1 << level):
            return VcResult(level - 1, False, witness)
        new_survivors: list[tuple[int, ...]] = []
        for x in survivors:
            okp = np.full(nbytes, 0xFF, dtype=np.uint8)
            if x:
                pat = cols[:, x[0]].copy()
                for i, c in enumerate(x[1:], 1):
                    pat |= cols[:, c] << i
                # Most restrictive (smallest) class first: dead extensions
                # short-circuit after one or two reductions.
                sizes = np.bincount(pat, minlength=1 << len(x))
                if sizes.min() == 0:
                    continue  # unreachable for survivors; defensive
                alive = True
                for p in np.argsort(sizes, kind="stable"):
                    sel = pat == p
                    okp &= np.bitwise_or.reduce(packed_one[sel], axis=0)
                    okp &= np.bitwise_or.reduce(packed_zero[sel], axis=0)
                    if not okp.any():
                        alive = False
                        break
                if not alive:
                    continue
            else:
                okp &= np.bitwise_or.reduce(packed_one, axis=0)
                okp &= np.bitwise_or.reduce(packed_zero, axis=0)
            ok = np.unpackbits(okp, count=n).astype(bool)
            if x:
                ok[: x[-1] + 1] = False
            for w in np.flatnonzero(ok):
                new_survivors.append(x + (int(w),))
            if len(new_survivors) > max_states:
                raise FeasibilityError(
                    f"shattering search exceeded {max_states} candidate sets"
                )
        if not new_survivors:
            return VcResult(level - 1, False, witness)
        survivors = new_survivors
        witness = survivors[0]
    return VcResult(cap, True, witness)


def naive_vc_dimension(a: GroupSet, cap: int = DEFAULT_VC_CAP) -> int:
    """Independent oracle: plain enumeration with set arithmetic, no pruning.

    Only sensible for |G| <= 32 or so.
    """
    g = a.group
    n = g.order
    members = set(a.indices().tolist())
    translates = set()
    for t in range(n):
        translates.add(frozenset(g.mul(t, x) for x in members))
    best = 0
    for d in range(1, cap + 1):
        found = False
        for x in itertools.combinations(range(n), d):
            traces = {tuple(e in tr for e in x) for tr in translates}
            if len(traces) == 1 << d:
                found = True
                break
        if not found:
            break
        best = d
    return best


# --- stabilizers -------------------------------------------------------------


@dataclass(frozen=True)
class StabilizerProfile:
    base: GroupSet
    epsilon: Fraction
    stabilizer: GroupSet
    side: str
    density: Fraction

    def to_json(self) -> dict:
        return {
            "epsilon": [self.epsilon.numerator, self.epsilon.denominator],
            "side": self.side,
            "stabilizer": self.stabilizer.to_json(),
            "density": [self.density.numerator, self.density.denominator],
            "set_digest": self.base.digest(),
        }


def stabilizer_by_threshold(a: GroupSet, threshold: int, side: str = "left") -> GroupSet:
    """{x : |xA symdiff A| <= threshold} with an integer threshold."""
    counts = kernels.translate_diff_counts(a.group, a.mask, side)
    return GroupSet(a.group, kernels.bools_to_mask(counts <= threshold))


def stabilizer(a: GroupSet, epsilon: Fraction, side: str = "left") -> StabilizerProfile:
    """Exact epsilon-stabilizer {x : |xA symdiff A| <= epsilon |G|}."""
    epsilon = Fraction(epsilon)
    if epsilon < 0:
        raise PreconditionError("epsilon must be nonnegative")
    g = a.group
    counts = kernels.translate_diff_counts(g, a.mask, side)
    member = counts * epsilon.denominator <= epsilon.numerator * g.order
    stab = GroupSet(g, kernels.bools_to_mask(member))
    return StabilizerProfile(
        a, epsilon, stab, side, Fraction(stab.card, g.order)
    )


# --- packing bound --------------------------------------------------------------


@dataclass(frozen=True)
class HausslerReport:
    delta: Fraction
    d: int
    cap_hit: bool
    k: Fraction | None
    stabilizer_size: int
    group_order: int
    ok: bool | None

    def to_json(self) -> dict:
        return {
            "delta": [self.delta.numerator, self.delta.denominator],
            "vc_dim": self.d,
            "cap_hit": self.cap_hit,
            "k": None if self.k is None else [self.k.numerator, self.k.denominator],
            "stabilizer_size": self.stabilizer_size,
            "group_order": self.group_order,
            "ok": self.ok,
        }


def haussler_check(
    a: GroupSet, delta: Fraction, cap: int = DEFAULT_VC_CAP
) -> HausslerReport:
    """Check |Stab_delta(A)| >= |G| / (30/delta)^d in exact rational arithmetic.

    Inconclusive (ok=None) when the VC search hits the cap; a conclusive
    failure would contradict the packing bound and raises TheoremViolationError.
    """
    delta = Fraction(delta)
    if not 0 < delta <= 1:
        raise PreconditionError("delta must be in (0, 1]")
    vc = vc_dimension(a, cap)
    prof = stabilizer(a, delta)
    if vc.cap_hit:
        return HausslerReport(
            delta, vc.value, True, None, prof.stabilizer.card, a.group.order, None
        )
    k = (Fraction(30) / delta) ** vc.value
    ok = prof.stabilizer.card * k >= a.group.order
    report = HausslerReport(
        delta, vc.value, False, k, prof.stabilizer.card, a.group.order, bool(ok)
    )
    if not ok:
        raise TheoremViolationError(
            "packing-bound check failed (internal inconsistency)",
            reproducer={
                "group": a.group.label,
                "set": sorted(a),
                "delta": [delta.numerator, delta.denominator],
                "report": report.to_json(),
            },
        )
    return report
