"""Constructive pipelines: almost-periodicity search, subgroup discovery
inside symmetric sets, bounded-exponent Bogolyubov witnesses, and the
stabilizer-based regularity decomposition.

Every postcondition that a pipeline reports is re-verified from scratch in
exact arithmetic before the report is emitted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .errors import (
    EmptySetError,
    FeasibilityError,
    GroupMismatchError,
    PreconditionError,
    TheoremViolationError,
)
from .groups import Group, Subgroup, _lattice_masks
from .kernels import bools_to_mask, mask_indices, mask_to_bools
from .rng import SplitRng
from .sets import (
    GroupSet,
    bar_closure,
    covering_number,
    eval_word,
    inverse,
    power,
    product,
)
from .vc import stabilizer, stabilizer_by_threshold, vc_dimension

TRIPLING_TARGET_WORDS = {
    "pi1": "+-+-",
    "pi2": "++--",
    "pi3": "-+-+",
    "pi4": "--++",
}


def _default_rng(rng: SplitRng | None, label: str) -> SplitRng:
    return rng if rng is not None else SplitRng.from_seed(0).derive(label)


# --- mode bookkeeping ---------------------------------------------------------


@dataclass(frozen=True)
class ModeSets:
    """The standard sets attached to a base set in one of the two modes."""

    mode: str
    base: GroupSet
    v: GroupSet
    w: GroupSet
    m: int
    sigma: Subgroup
    sigma_is_vm: bool
    growth_k: Fraction


def mode_sets(a: GroupSet, mode: str, m: int = 4) -> ModeSets:
    if a.card == 0:
        raise EmptySetError("mode_sets needs a nonempty set")
    g = a.group
    if mode == "alternation":
        v = product(a, inverse(a))
        w = power(v, 2)
        growth = Fraction(eval_word(a, "+-+").card, a.card)
    elif mode == "tripling":
        v = bar_closure(a)
        w = (
            eval_word(a, "+-+-")
            & eval_word(a, "++--")
            & eval_word(a, "-+-+")
            & eval_word(a, "--++")
        )
        growth = Fraction(power(a, 3).card, a.card)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    closure = v
    steps = 1
    while True:
        nxt = product(closure, v)
        if nxt == closure:
            break
        closure = nxt
        steps += 1
    sigma = Subgroup(g, closure.mask, verify=False)
    sigma_is_vm = power(v, m) == closure
    return ModeSets(mode, a, v, w, m, sigma, sigma_is_vm, growth)


# --- almost-periodicity search -------------------------------------------------


@dataclass(frozen=True)
class CSTargetTrace:
    label: str
    ell: Fraction
    ladder: tuple[tuple[Fraction, Fraction], ...]
    chosen_t: Fraction | None
    chosen_b: GroupSet | None
    threshold: Fraction | None
    y_star: GroupSet | None
    power_checked: int
    accepted: bool

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "ell": [self.ell.numerator, self.ell.denominator],
            "ladder": [
                {
                    "t": [t.numerator, t.denominator],
                    "f_estimate": [f.numerator, f.denominator],
                }
                for t, f in self.ladder
            ],
            "chosen_t": None
            if self.chosen_t is None
            else [self.chosen_t.numerator, self.chosen_t.denominator],
            "threshold": None
            if self.threshold is None
            else [self.threshold.numerator, self.threshold.denominator],
            "b_card": None if self.chosen_b is None else self.chosen_b.card,
            "y_star_card": None if self.y_star is None else self.y_star.card,
            "power_checked": self.power_checked,
            "accepted": self.accepted,
        }


@dataclass(frozen=True)
class CSTrace:
    mode: str
    verified_n: int
    y: GroupSet
    w: GroupSet
    covering_count: int | None
    degenerate: bool
    targets: tuple[CSTargetTrace, ...]

    @property
    def ell(self) -> Fraction:
        return self.targets[0].ell

    @property
    def ladder(self):
        return self.targets[0].ladder

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "verified_n": self.verified_n,
            "y": self.y.to_json(),
            "w_card": self.w.card,
            "covering_count": self.covering_count,
            "degenerate": self.degenerate,
            "targets": [t.to_json() for t in self.targets],
        }


def _greedy_b(x: GroupSet, z: GroupSet, size: int) -> GroupSet:
    """Grow B inside X minimizing |BZ|, one element at a time."""
    g = x.group
    xs = x.indices()
    rows = z.bools[g.mult[g.inv[xs]]]
    covered = np.zeros(g.order, dtype=bool)
    avail = np.ones(len(xs), dtype=bool)
    sentinel = np.iinfo(np.int64).max
    mask = 0
    for _ in range(size):
        gains = np.where(avail, (rows & ~covered).sum(axis=1), sentinel)
        pick = int(np.argmin(gains))
        avail[pick] = False
        covered |= rows[pick]
        mask |= 1 << int(xs[pick])
    return GroupSet(g, mask)


def _random_b(x: GroupSet, z: GroupSet, size: int, rng: SplitRng, restarts: int = 4) -> GroupSet:
    xs = [int(i) for i in x.indices()]
    best: GroupSet | None = None
    best_bz = -1
    for _ in range(restarts):
        mask = 0
        for i in rng.sample(xs, size):
            mask |= 1 << i
        cand = GroupSet(x.group, mask)
        bz = product(cand, z).card
        if best is None or bz < best_bz:
            best, best_bz = cand, bz
    return best


def _pick_b(x: GroupSet, z: GroupSet, size: int, strategy: str, rng: SplitRng) -> GroupSet:
    if size >= x.card:
        return x
    if strategy == "greedy":
        return _greedy_b(x, z, size)
    if strategy == "full":
        return x
    if strategy == "random":
        return _random_b(x, z, size, rng)
    raise ValueError(f"unknown B-strategy {strategy!r}")


def _ystar(v2: GroupSet, b: GroupSet, thr: Fraction, card_x: int) -> GroupSet:
    """{g in V^2 : |gB intersect B| >= thr * |X|}, exact integer comparison."""
    g = v2.group
    bb = b.bools
    idxs = v2.indices()
    out = 0
    step = max(1, (1 << 22) // g.order)
    for i in range(0, len(idxs), step):
        chunk = idxs[i : i + step]
        rows = bb[g.mult[g.inv[chunk]]]
        counts = (rows & bb[None, :]).sum(axis=1)
        hit = counts * thr.denominator >= thr.numerator * card_x
        for e in chunk[hit]:
            out |= 1 << int(e)
    return GroupSet(g, out)


def _cs_target(
    label: str,
    x: GroupSet,
    z: GroupSet,
    v: GroupSet,
    w: GroupSet,
    n_pow: int,
    strategy: str,
    rng: SplitRng,
) -> CSTargetTrace:
    """Walk the t-ladder t <- t^2/(2 ell) until some Y* passes the power check."""
    card = x.card
    ell = Fraction(product(v, x).card, card)
    v2 = product(v, v)
    t = Fraction(1)
    t_min = Fraction(1, card)
    ladder: list[tuple[Fraction, Fraction]] = []
    while t >= t_min and len(ladder) < 32:
        size = (t.numerator * card + t.denominator - 1) // t.denominator
        b = _pick_b(x, z, size, strategy, rng)
        f_est = Fraction(product(b, z).card, card)
        theta = t * t / (2 * ell)
        ladder.append((t, f_est))
        ys = _ystar(v2, b, theta, card)
        if power(ys, n_pow).issubset(w):
            return CSTargetTrace(
                label, ell, tuple(ladder), t, b, theta, ys, n_pow, True
            )
        t = theta
    return CSTargetTrace(label, ell, tuple(ladder), None, None, None, None, n_pow, False)


def croot_sisask(
    x: GroupSet,
    mode: str,
    n: int,
    strategy: str = "greedy",
    rng: SplitRng | None = None,
    with_covering: bool = True,
) -> tuple[GroupSet, CSTrace]:
    """Symmetric Y containing 1 with Y^n inside the mode's containment target.

    The returned containment is re-verified by direct power computation; when
    no ladder rung verifies, the identity singleton is returned and flagged
    degenerate (always valid, never silently wrong).
    """
    if x.card == 0:
        raise EmptySetError("croot_sisask needs a nonempty set")
    if n < 1:
        raise PreconditionError("n must be a positive integer")
    rng = _default_rng(rng, "croot-sisask")
    g = x.group
    xinv = inverse(x)
    identity = GroupSet(g, 1)
    if mode == "alternation":
        v = product(x, xinv)
        w = power(v, 2)
        tr = _cs_target("alt", x, xinv, v, w, n, strategy, rng)
        targets = (tr,)
        y = tr.y_star if tr.accepted else identity
    elif mode == "tripling":
        v = bar_closure(x)
        w = (
            eval_word(x, "+-+-")
            & eval_word(x, "++--")
            & eval_word(x, "-+-+")
            & eval_word(x, "--++")
        )
        runs = [
            ("pi1", x, xinv, eval_word(x, "+-+-")),
            ("pi2", x, x, eval_word(x, "++--")),
            ("pi3", xinv, x, eval_word(x, "-+-+")),
            ("pi4", xinv, xinv, eval_word(x, "--++")),
        ]
        targets = tuple(
            _cs_target(label, base, zc, v, wc, 4 * n, strategy, rng)
            for label, base, zc, wc in runs
        )
        if all(t.accepted for t in targets):
            core = targets[0].y_star
            inter = product(core, core)
            for t in targets[1:]:
                inter = inter & product(t.y_star, t.y_star)
            y = product(inter, inter)
        else:
            y = identity
    else:
        raise ValueError(f"unknown mode {mode!r}")
    degenerate = y.card <= 1
    if not power(y, n).issubset(w):
        raise TheoremViolationError(
            "croot_sisask containment re-check failed",
            reproducer={"group": g.label, "set": sorted(x), "mode": mode, "n": n},
        )
    if not (0 in y and y.is_symmetric):
        raise TheoremViolationError(
            "croot_sisask produced a non-symmetric Y",
            reproducer={"group": g.label, "set": sorted(x), "mode": mode, "n": n},
        )
    covering = None
    if with_covering:
        v2 = product(v, v)
        covering = v2.card if degenerate else covering_number(v2, y, v2)
    trace = CSTrace(mode, n, y, w, covering, degenerate, targets)
    return y, trace


# --- subgroup discovery inside symmetric sets -----------------------------------


@dataclass(frozen=True)
class OracleBudget:
    exhaustive_limit: int = 512
    max_states: int = 100_000
    heuristic_tries: int = 200


@dataclass(frozen=True)
class SubgroupWitness:
    subgroup: Subgroup
    container: GroupSet
    index: int
    cover_count: int | None
    normalized: bool
    method: str

    def to_json(self) -> dict:
        return {
            "subgroup": self.subgroup.to_json(),
            "container_digest": self.container.digest(),
            "index": self.index,
            "cover_count": self.cover_count,
            "normalized": self.normalized,
            "method": self.method,
        }


def _exhaustive_masks(g: Group, region: int, ambient: Subgroup, max_states: int) -> list[int]:
    whole = ambient.mask == (1 << g.order) - 1
    if whole and (g._lattice is not None or g.order <= 64):
        inside = [m for m in _lattice_masks(g, max_states) if not m & ~region]
        return sorted(inside, key=lambda m: (-m.bit_count(), m))
    seeds = sorted(
        {
            c
            for x in mask_indices(region, g.order)
            if not (c := kernels.cyclic_mask(g, int(x))) & ~region
        }
    )
    known = {1}
    queue = [1]
    while queue:
        h = queue.pop()
        for c in seeds:
            if c & ~h:
                k = g.closure(h | c)
                if k & ~region or k in known:
                    continue
                known.add(k)
                if len(known) > max_states:
                    raise FeasibilityError("subgroup search exceeded state budget")
                queue.append(k)
    return sorted(known, key=lambda m: (-m.bit_count(), m))


def _heuristic_masks(g: Group, region: int, budget: OracleBudget, rng: SplitRng) -> list[int]:
    found = {1}
    for side in ("left", "right"):
        sym = kernels.symmetry_group_mask(g, region, side)
        if not sym & ~region:
            found.add(sym)
    for x in mask_indices(region, g.order):
        c = kernels.cyclic_mask(g, int(x))
        if not c & ~region:
            found.add(c)
    pool = sorted(found, key=lambda m: (-m.bit_count(), m))
    region_elems = [int(i) for i in mask_indices(region, g.order)]
    for _ in range(budget.heuristic_tries):
        base = rng.choice(pool[: min(8, len(pool))])
        x = rng.choice(region_elems)
        if base >> x & 1:
            continue
        k = g.closure(base | (1 << x))
        if not k & ~region and k not in found:
            found.add(k)
            pool = sorted(found, key=lambda m: (-m.bit_count(), m))
    return sorted(found, key=lambda m: (-m.bit_count(), m))


def subgroup_candidates_inside(
    w: GroupSet,
    ambient: Subgroup,
    budget: OracleBudget | None = None,
    rng: SplitRng | None = None,
) -> tuple[list[int], str]:
    """Candidate subgroup masks inside w, largest first, plus the method flag."""
    budget = budget or OracleBudget()
    rng = _default_rng(rng, "subgroup-oracle")
    g = w.group
    if not 0 in w:
        raise PreconditionError("container must contain the identity")
    if not w.is_symmetric:
        raise PreconditionError("container must be symmetric")
    if w.mask & ~ambient.mask:
        raise PreconditionError("container must lie inside the ambient subgroup")
    region = w.mask & ambient.mask
    if ambient.order <= budget.exhaustive_limit:
        try:
            return _exhaustive_masks(g, region, ambient, budget.max_states), "exhaustive"
        except FeasibilityError:
            pass
    return _heuristic_masks(g, region, budget, rng), "heuristic"


def largest_subgroup_inside(
    w: GroupSet,
    ambient: Subgroup,
    budget: OracleBudget | None = None,
    rng: SplitRng | None = None,
) -> SubgroupWitness:
    """Best subgroup of the ambient contained in w.

    Exhaustive (and provably maximal) when the ambient order is within the
    budget; otherwise a seeded-closure heuristic, flagged as such.
    """
    masks, method = subgroup_candidates_inside(w, ambient, budget, rng)
    best = masks[0]
    sub = Subgroup(w.group, best)
    if best & ~w.mask:
        raise TheoremViolationError(
            "oracle returned a subgroup escaping its container",
            reproducer={"group": w.group.label, "container": sorted(w)},
        )
    return SubgroupWitness(sub, w, ambient.order // sub.order, None, False, method)


def _core_within(h: Subgroup, ambient: Subgroup) -> Subgroup:
    """Intersection of the ambient-conjugates of H (normal in the ambient)."""
    g = h.parent
    core = mask_to_bools(h.mask, g.order).copy()
    hbits = mask_to_bools(h.mask, g.order)
    for a in ambient.element_indices():
        conj = g.mult[g.mult[g.inv[a]], a]
        core &= hbits[conj]
    return Subgroup(g, bools_to_mask(core), verify=False)


# --- Bogolyubov witnesses for bounded exponent ------------------------------------


@dataclass(frozen=True)
class BogolyubovReport:
    mode: str
    m: int
    growth_k: Fraction
    witness: SubgroupWitness
    trace: CSTrace
    y: GroupSet
    sigma_order: int
    sigma_is_vm: bool
    h_in_w: bool
    h_in_double: bool
    normal_in_sigma: bool | None

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "m": self.m,
            "growth_k": [self.growth_k.numerator, self.growth_k.denominator],
            "witness": self.witness.to_json(),
            "trace": self.trace.to_json(),
            "sigma_order": self.sigma_order,
            "sigma_is_vm": self.sigma_is_vm,
            "h_in_w": self.h_in_w,
            "h_in_double": self.h_in_double,
            "normal_in_sigma": self.normal_in_sigma,
        }

    @property
    def all_verified(self) -> bool:
        return self.h_in_w and self.h_in_double


def bogolyubov_bounded_exponent(
    a: GroupSet,
    mode: str,
    m: int = 4,
    normalize: bool = False,
    budget: OracleBudget | None = None,
    rng: SplitRng | None = None,
    strategy: str = "greedy",
) -> BogolyubovReport:
    """Find a subgroup inside the mode's containment target W(A).

    Runs the almost-periodicity search (n=4) for its trace/covering data, then
    the subgroup oracle directly on W; with normalize, the subgroup is replaced
    by the intersection of its sigma-conjugates and re-verified.
    """
    rng = _default_rng(rng, "bogolyubov")
    ms = mode_sets(a, mode, m)
    y, trace = croot_sisask(a, mode, 4, strategy=strategy, rng=rng.derive("cs"))
    witness = largest_subgroup_inside(ms.w, ms.sigma, budget, rng.derive("oracle"))
    sub = witness.subgroup
    normal_flag: bool | None = None
    if normalize:
        core = _core_within(sub, ms.sigma)
        normal_flag = all(
            core.conjugate_by(int(g)).mask == core.mask
            for g in ms.sigma.element_indices()
        )
        sub = core
    vm = power(ms.v, m)
    cover = covering_number(vm, sub.members, ms.sigma.members)
    witness = SubgroupWitness(
        sub,
        ms.w,
        ms.sigma.order // sub.order,
        cover,
        normalize,
        witness.method,
    )
    double = power(product(a, inverse(a)), 2)
    return BogolyubovReport(
        mode,
        m,
        ms.growth_k,
        witness,
        trace,
        y,
        ms.sigma.order,
        ms.sigma_is_vm,
        h_in_w=sub.members.issubset(ms.w),
        h_in_double=sub.members.issubset(double),
        normal_in_sigma=normal_flag,
    )


# --- coset structure and regularity ------------------------------------------------


def coset_masks(g: Group, hmask: int, side: str = "right") -> list[tuple[int, int]]:
    """(representative, coset bitmask) pairs, reps in increasing index order."""
    hbits = mask_to_bools(hmask, g.order)
    seen = np.zeros(g.order, dtype=bool)
    out = []
    for x in range(g.order):
        if seen[x]:
            continue
        if side == "right":
            cbits = hbits[g.mult_t[g.inv[x]]]
        else:
            cbits = hbits[g.mult[g.inv[x]]]
        seen |= cbits
        out.append((x, bools_to_mask(cbits)))
    return out


def coset_structure(
    a: GroupSet, h: Subgroup, side: str = "right"
) -> tuple[GroupSet, Fraction]:
    """Union D of the cosets meeting A in at least half their points."""
    if h.parent != a.group:
        raise GroupMismatchError("subgroup belongs to a different group")
    dmask = 0
    for _, cmask in coset_masks(a.group, h.mask, side):
        if 2 * (cmask & a.mask).bit_count() >= h.order:
            dmask |= cmask
    d = GroupSet(a.group, dmask)
    defect = Fraction((a.mask ^ dmask).bit_count(), a.group.order)
    return d, defect


def coset_regularity(
    a: GroupSet, h: Subgroup, eps: Fraction, side: str = "right"
) -> tuple[GroupSet, list[dict]]:
    """Exceptional-coset set Z and the per-coset dichotomy table.

    A coset C is exceptional when |C∩A| |C\\A| exceeds sqrt(eps) |H|^2; the
    comparison is done squared to stay in exact integers.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    if h.parent != a.group:
        raise GroupMismatchError("subgroup belongs to a different group")
    hord = h.order
    zmask = 0
    table = []
    for rep, cmask in coset_masks(a.group, h.mask, side):
        cin = (cmask & a.mask).bit_count()
        cout = hord - cin
        prodsq = (cin * cout) ** 2
        exceptional = prodsq * eps.denominator > eps.numerator * hord**4
        if exceptional:
            zmask |= cmask
        sparse_ok = cin**4 * eps.denominator <= eps.numerator * hord**4
        dense_ok = cout**4 * eps.denominator <= eps.numerator * hord**4
        table.append(
            {
                "rep": rep,
                "in_a": cin,
                "out_a": cout,
                "exceptional": exceptional,
                "sparse_ok": sparse_ok,
                "dense_ok": dense_ok,
            }
        )
    return GroupSet(a.group, zmask), table


# --- the regularity pipeline ---------------------------------------------------------


def _delta_power(eps: Fraction, nu: Fraction, d: int) -> tuple[Fraction, int]:
    """(dpow, E) with delta^E = dpow, for delta = (eps/4)^((d+nu)/d) / 30^(nu/d)."""
    va, vb = nu.numerator, nu.denominator
    e = d * vb
    return (eps / 4) ** (e + va) / Fraction(30) ** va, e


def _floor_delta_times(dpow: Fraction, e: int, scale: int) -> int:
    """floor(delta * scale) where delta = dpow^(1/e), by integer bisection."""
    lo, hi = 0, scale
    target = dpow * Fraction(scale) ** e
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if Fraction(mid) ** e <= target:
            lo = mid
        else:
            hi = mid - 1
    return lo


@dataclass
class RegularityReport:
    eps: Fraction
    nu: Fraction
    group_label: str
    group_order: int
    exponent: int
    set_digest: str
    d: int
    delta_float: float
    delta_exact: Fraction | None
    stab_threshold: int
    k_float: float
    p: Fraction
    t: int
    s: GroupSet
    b: GroupSet
    subgroup: Subgroup
    index: int
    method: str
    retries: int
    cover_count: int | None
    d_set: GroupSet
    structure_defect: Fraction
    z: GroupSet
    z_density: Fraction
    table: list[dict]
    flags: dict[str, bool]

    @property
    def success(self) -> bool:
        return all(self.flags.values())

    def to_json(self) -> dict:
        return {
            "eps": [self.eps.numerator, self.eps.denominator],
            "nu": [self.nu.numerator, self.nu.denominator],
            "group": self.group_label,
            "group_order": self.group_order,
            "exponent": self.exponent,
            "vc_dim": self.d,
            "delta": self.delta_float,
            "delta_exact": None
            if self.delta_exact is None
            else [self.delta_exact.numerator, self.delta_exact.denominator],
            "stab_threshold": self.stab_threshold,
            "k": self.k_float,
            "p": [self.p.numerator, self.p.denominator],
            "t": self.t,
            "s_card": self.s.card,
            "b_card": self.b.card,
            "subgroup": self.subgroup.to_json(),
            "index": self.index,
            "method": self.method,
            "retries": self.retries,
            "cover_count": self.cover_count,
            "structure": self.d_set.to_json(),
            "structure_defect": [
                self.structure_defect.numerator,
                self.structure_defect.denominator,
            ],
            "z": self.z.to_json(),
            "z_density": [self.z_density.numerator, self.z_density.denominator],
            "table": self.table,
            "flags": self.flags,
            "success": self.success,
        }


def _trivial_regularity_report(
    a: GroupSet, eps: Fraction, nu: Fraction
) -> RegularityReport:
    # d = 0 means all translates coincide, i.e. A is empty or the whole group.
    g = a.group
    h = g.whole_subgroup()
    dmask = a.mask if 2 * a.card >= g.order else 0
    d_set = GroupSet(g, dmask)
    flags = {
        "haussler": True,
        "escalation_bounded": True,
        "h_in_b4": True,
        "h_in_stab_eps": True,
        "d_union_of_right_cosets": True,
        "structure_defect_le_eps": (a.mask ^ dmask).bit_count() * eps.denominator
        <= eps.numerator * g.order,
        "z_bound": True,
        "dichotomy_off_z": True,
    }
    return RegularityReport(
        eps, nu, g.label, g.order, g.exponent(), 0, 0.0, Fraction(0), 2 * g.order,
        1.0, Fraction(0), 0, GroupSet.full(g), GroupSet.full(g), h, 1, "trivial", 0,
        1, d_set, Fraction((a.mask ^ dmask).bit_count(), g.order), GroupSet.empty(g),
        Fraction(0), [], flags,
    )


def regularity_decompose(
    a: GroupSet,
    eps: Fraction,
    nu: Fraction,
    oracle_budget: OracleBudget | None = None,
    vc_cap: int = 6,
    rng: SplitRng | None = None,
    side: str = "right",
) -> RegularityReport:
    """Stabilizer-based regularity decomposition with verified postconditions.

    Pipeline: d = vc_dimension(A); delta from (eps, nu, d); S = Stab_delta(A);
    escalate B = S^(3^t) until |B^3| <= 3^p |B|; find a subgroup inside B^4;
    verify it stabilizes A at eps; then split G into structured cosets D and
    exceptional cosets Z.  Every reported inequality is re-checked exactly.
    """
    eps = Fraction(eps)
    nu = Fraction(nu)
    if eps <= 0 or nu <= 0:
        raise PreconditionError("eps and nu must be positive rationals")
    rng = _default_rng(rng, "regularity")
    g = a.group
    n = g.order
    vc = vc_dimension(a, vc_cap)
    if vc.cap_hit:
        raise FeasibilityError(
            f"vc_dimension hit the cap ({vc_cap}); pipeline needs a conclusive d"
        )
    d = vc.value
    if d == 0:
        return _trivial_regularity_report(a, eps, nu)
    va, vb = nu.numerator, nu.denominator
    dpow, e = _delta_power(eps, nu, d)
    threshold = _floor_delta_times(dpow, e, n)
    delta_float = float(dpow) ** (1.0 / e)
    delta_exact = dpow if e == 1 else None
    kpow = Fraction(30) ** e / dpow  # k^vb
    k_float = float(kpow) ** (1.0 / vb)
    p = Fraction(d) * (d + nu) / nu
    s = stabilizer_by_threshold(a, threshold)
    haussler_ok = Fraction(s.card) ** vb * kpow >= Fraction(n) ** vb
    if not haussler_ok:
        raise TheoremViolationError(
            "stabilizer smaller than the packing bound guarantees",
            reproducer={"group": g.label, "set": sorted(a), "threshold": threshold},
        )
    b = s
    t = 0
    max_t = int(math.log(max(n, 2)) / (float(p) * math.log(3.0))) + 3
    while True:
        b3 = power(b, 3)
        if b3.card ** p.denominator <= 3**p.numerator * b.card**p.denominator:
            break
        b = b3
        t += 1
        if t > max_t:
            raise TheoremViolationError(
                "tripling escalation failed to terminate within its bound",
                reproducer={"group": g.label, "set": sorted(a)},
            )
    # t <= log_{3^p} k, checked with integer exponents only
    t_bounded = 3 ** (t * p.numerator * vb) <= kpow**p.denominator
    w = power(b, 4)
    candidates, method = subgroup_candidates_inside(
        w, g.whole_subgroup(), oracle_budget, rng.derive("oracle")
    )
    stab_eps = stabilizer(a, eps).stabilizer
    retries = 0
    chosen = 1
    for m in candidates:
        if not m & ~stab_eps.mask:
            chosen = m
            break
        retries += 1
    sub = Subgroup(g, chosen)
    d_set, defect = coset_structure(a, sub, side)
    z, table = coset_regularity(a, sub, eps, side)
    cover = covering_number(b, sub.members, GroupSet.full(g)) if b.card else None
    cosets = coset_masks(g, sub.mask, side)
    union_ok = all(
        (cmask & d_set.mask) in (0, cmask) for _, cmask in cosets
    )
    dich_ok = all(
        row["sparse_ok"] or row["dense_ok"]
        for row in table
        if not row["exceptional"]
    )
    flags = {
        "haussler": bool(haussler_ok),
        "escalation_bounded": bool(t_bounded),
        "h_in_b4": not chosen & ~w.mask,
        "h_in_stab_eps": not chosen & ~stab_eps.mask,
        "d_union_of_right_cosets": union_ok,
        "structure_defect_le_eps": defect <= eps,
        "z_bound": 4 * z.card**2 * eps.denominator < eps.numerator * n**2,
        "dichotomy_off_z": dich_ok,
    }
    return RegularityReport(
        eps,
        nu,
        g.label,
        n,
        g.exponent(),
        d,
        delta_float,
        delta_exact,
        threshold,
        k_float,
        p,
        t,
        s,
        b,
        sub,
        sub.index,
        method,
        retries,
        cover,
        d_set,
        defect,
        z,
        Fraction(z.card, n),
        table,
        flags,
    )


# --- saturation checks -----------------------------------------------------------


@dataclass(frozen=True)
class SaturationReport:
    group_label: str
    group_order: int
    sizes: dict[str, int]
    equalities: dict[str, bool]

    def to_json(self) -> dict:
        return {
            "group": self.group_label,
            "group_order": self.group_order,
            "sizes": self.sizes,
            "equalities": self.equalities,
        }


def dense_saturation_check(
    g: Group,
    a: GroupSet,
    b: GroupSet | None = None,
    c: GroupSet | None = None,
) -> SaturationReport:
    """Which of the four quadruple-product sets of A equal G (and ABC = G).

    Pure measurement; nothing is asserted.
    """
    if a.card == 0 or (b is not None and b.card == 0) or (c is not None and c.card == 0):
        raise EmptySetError("saturation check needs nonempty sets")
    if (b is None) != (c is None):
        raise PreconditionError("provide both B and C or neither")
    full = (1 << g.order) - 1
    words = {
        "(AA^-1)^2": "+-+-",
        "A^2A^-2": "++--",
        "(A^-1A)^2": "-+-+",
        "A^-2A^2": "--++",
    }
    sizes: dict[str, int] = {"A": a.card}
    eqs: dict[str, bool] = {}
    for name, signs in words.items():
        ws = eval_word(a, signs)
        sizes[name] = ws.card
        eqs[name] = ws.mask == full
    if b is not None and c is not None:
        abc = product(product(a, b), c)
        sizes["B"] = b.card
        sizes["C"] = c.card
        sizes["ABC"] = abc.card
        eqs["ABC"] = abc.mask == full
    return SaturationReport(g.label, g.order, sizes, eqs)
