"""Finite groups as dense Cayley tables with 0-based element indices.

Element 0 is always the identity.  Groups are immutable after construction;
lazy caches (orders, abelianization, subgroup lattice) are computed
idempotently, so concurrent readers are safe.
"""

from __future__ import annotations

import hashlib
import itertools
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import (
    FeasibilityError,
    GroupConstructionError,
    GroupMismatchError,
    PreconditionError,
    SizeBudgetError,
)
from .kernels import (
    bools_to_mask,
    closure_mask,
    cyclic_mask,
    inverse_mask,
    mask_indices,
    mask_to_bools,
    product_mask,
)

DEFAULT_SIZE_BUDGET = 4096
FULL_ASSOCIATIVITY_LIMIT = 512
SAMPLED_TRIPLES = 1_000_000
LATTICE_STATE_BUDGET = 200_000
UNBOUNDED_ENUMERATION_LIMIT = 512


def _index_dtype(n: int):
    return np.uint16 if n <= 0xFFFF else np.uint32


class Group:
    """A finite group given by its multiplication table."""

    def __init__(
        self,
        mult: np.ndarray | Sequence[Sequence[int]],
        label: str,
        family: dict[str, Any] | None = None,
        validate: bool = True,
    ):
        table = np.ascontiguousarray(np.asarray(mult))
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise GroupConstructionError("multiplication table must be square")
        n = int(table.shape[0])
        if n == 0:
            raise GroupConstructionError("group must be nonempty")
        table = table.astype(_index_dtype(n), copy=False)
        self.order = n
        self.mult = table
        self.label = label
        self.family = family or {}
        self.inv = _derive_inverses(table)
        if validate:
            _validate_table(table, self.inv)
        self.mult.setflags(write=False)
        self.inv.setflags(write=False)
        self._mult_t: np.ndarray | None = None
        self._orders: np.ndarray | None = None
        self._exponent: int | None = None
        self._is_abelian: bool | None = None
        self._signature: str | None = None
        self._commutator_mask: int | None = None
        self._abelianization: tuple["Group", np.ndarray] | None = None
        self._lattice: list[int] | None = None
        self._closure_cache: dict[int, int] = {}
        self._whole: "Subgroup" | None = None

    # --- basic arithmetic -------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.mult[a, b])

    def invert(self, a: int) -> int:
        return int(self.inv[a])

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1."""
        return int(self.mult[self.mult[g, x], self.inv[g]])

    def pow_elem(self, x: int, k: int) -> int:
        if k < 0:
            x, k = int(self.inv[x]), -k
        acc, base = 0, x
        while k:
            if k & 1:
                acc = int(self.mult[acc, base])
            base = int(self.mult[base, base])
            k >>= 1
        return acc

    @property
    def mult_t(self) -> np.ndarray:
        if self._mult_t is None:
            t = np.ascontiguousarray(self.mult.T)
            t.setflags(write=False)
            self._mult_t = t
        return self._mult_t

    # --- cached invariants --------------------------------------------------

    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            n = self.order
            orders = np.zeros(n, dtype=np.int64)
            orders[0] = 1
            remaining = np.arange(1, n)
            power = remaining.copy()
            k = 1
            while remaining.size:
                finished = power == 0
                orders[remaining[finished]] = k
                keep = ~finished
                remaining = remaining[keep]
                power = power[keep]
                if remaining.size:
                    power = self.mult[power, remaining].astype(np.int64)
                    k += 1
            orders.setflags(write=False)
            self._orders = orders
        return self._orders

    def exponent(self) -> int:
        if self._exponent is None:
            self._exponent = math.lcm(*map(int, self.element_orders()))
        return self._exponent

    @property
    def is_abelian(self) -> bool:
        if self._is_abelian is None:
            self._is_abelian = bool(np.array_equal(self.mult, self.mult.T))
        return self._is_abelian

    @property
    def signature(self) -> str:
        if self._signature is None:
            h = hashlib.blake2b(digest_size=16)
            h.update(self.order.to_bytes(4, "little"))
            h.update(np.ascontiguousarray(self.mult, dtype=np.uint32).tobytes())
            self._signature = h.hexdigest()
        return self._signature

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Group):
            return NotImplemented
        return self.order == other.order and self.signature == other.signature

    def __hash__(self) -> int:
        return hash((self.order, self.label))

    def __repr__(self) -> str:
        return f"Group({self.label}, order={self.order})"

    def closure(self, seed_mask: int) -> int:
        """Subgroup generated by seed_mask, memoized per group."""
        hit = self._closure_cache.get(seed_mask)
        if hit is not None:
            return hit
        result = closure_mask(self, seed_mask)
        self._closure_cache[seed_mask] = result
        return result

    def whole_subgroup(self) -> "Subgroup":
        if self._whole is None:
            self._whole = Subgroup(self, (1 << self.order) - 1, verify=False)
        return self._whole

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, 1, verify=False)


def _derive_inverses(table: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    zero_counts = (table == 0).sum(axis=1)
    if not np.all(zero_counts == 1):
        raise GroupConstructionError("some element has no (or multiple) inverses")
    inv = np.asarray((table == 0).argmax(axis=1), dtype=table.dtype)
    if not np.all(table[inv, np.arange(n)] == 0):
        raise GroupConstructionError("inverses are not two-sided")
    return inv


def _validate_table(table: np.ndarray, inv: np.ndarray) -> None:
    n = table.shape[0]
    idx = np.arange(n)
    if table.min() < 0 or table.max() >= n:
        raise GroupConstructionError("table entries out of range")
    if not (np.array_equal(table[0], idx) and np.array_equal(table[:, 0], idx)):
        raise GroupConstructionError("element 0 is not a two-sided identity")
    if not np.all(np.sort(table, axis=1) == idx):
        raise GroupConstructionError("some row is not a permutation")
    if not np.all(np.sort(table, axis=0) == idx[:, None]):
        raise GroupConstructionError("some column is not a permutation")
    if n <= FULL_ASSOCIATIVITY_LIMIT:
        for x in range(n):
            left = table[table[x]]
            right = table[x][table]
            if not np.array_equal(left, right):
                raise GroupConstructionError(f"associativity fails at x={x}")
    else:
        rng = np.random.default_rng(0x5EED)
        xs = rng.integers(0, n, SAMPLED_TRIPLES)
        ys = rng.integers(0, n, SAMPLED_TRIPLES)
        zs = rng.integers(0, n, SAMPLED_TRIPLES)
        if not np.array_equal(table[table[xs, ys], zs], table[xs, table[ys, zs]]):
            raise GroupConstructionError("associativity fails on sampled triples")


# --- builders ---------------------------------------------------------------


def _check_budget(order: int, budget: int) -> None:
    if order > budget:
        raise SizeBudgetError(f"group of order {order} exceeds budget {budget}")


def cyclic_group(n: int, budget: int = DEFAULT_SIZE_BUDGET) -> Group:
    if n < 1:
        raise GroupConstructionError("cyclic order must be positive")
    _check_budget(n, budget)
    r = np.arange(n)
    table = (r[:, None] + r[None, :]) % n
    return Group(table, f"cyclic({n})", {"kind": "cyclic", "n": n})


def elementary_abelian_group(p: int, k: int, budget: int = DEFAULT_SIZE_BUDGET) -> Group:
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise GroupConstructionError("p must be prime")
    if k < 1:
        raise GroupConstructionError("k must be positive")
    n = p**k
    _check_budget(n, budget)
    if p == 2:
        r = np.arange(n)
        table = r[:, None] ^ r[None, :]
    else:
        digits = np.empty((n, k), dtype=np.int64)
        r = np.arange(n)
        for i in range(k):
            digits[:, i] = (r // p**i) % p
        weights = p ** np.arange(k)
        table = np.empty((n, n), dtype=np.int64)
        step = max(1, (1 << 22) // (n * k))
        for i in range(0, n, step):
            s = (digits[i : i + step, None, :] + digits[None, :, :]) % p
            table[i : i + step] = s @ weights
    return Group(table, f"ea({p},{k})", {"kind": "ea", "p": p, "k": k})


def dihedral_group(n: int, budget: int = DEFAULT_SIZE_BUDGET) -> Group:
    """Symmetries of the regular n-gon, order 2n; index e*n+i is s^e r^i."""
    if n < 1:
        raise GroupConstructionError("dihedral parameter must be positive")
    _check_budget(2 * n, budget)
    size = 2 * n
    e, i = np.divmod(np.arange(size), n)
    sign = 1 - 2 * e
    rot = (i[:, None] * sign[None, :] + i[None, :]) % n
    table = (e[:, None] ^ e[None, :]) * n + rot
    return Group(table, f"dihedral({n})", {"kind": "dihedral", "n": n})


def _perm_group(perms: list[tuple[int, ...]], label: str, family: dict) -> Group:
    index = {p: i for i, p in enumerate(perms)}
    size = len(perms)
    table = np.empty((size, size), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(p[q[t]] for t in range(len(p)))]
    return Group(table, label, family)


def symmetric_group(n: int, budget: int = DEFAULT_SIZE_BUDGET) -> Group:
    if not 1 <= n <= 5:
        raise GroupConstructionError("symmetric(n) supported for 1 <= n <= 5")
    _check_budget(math.factorial(n), budget)
    perms = list(itertools.permutations(range(n)))
    return _perm_group(perms, f"symmetric({n})", {"kind": "symmetric", "n": n})


def _perm_sign(p: tuple[int, ...]) -> int:
    inversions = sum(
        1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]
    )
    return -1 if inversions % 2 else 1


def alternating_group(n: int, budget: int = DEFAULT_SIZE_BUDGET) -> Group:
    if not 1 <= n <= 6:
        raise GroupConstructionError("alternating(n) supported for 1 <= n <= 6")
    order = max(1, math.factorial(n) // 2)
    _check_budget(order, budget)
    perms = [p for p in itertools.permutations(range(n)) if _perm_sign(p) == 1]
    return _perm_group(perms, f"alternating({n})", {"kind": "alternating", "n": n})


def direct_product_group(factors: Sequence[Group], budget: int = DEFAULT_SIZE_BUDGET) -> Group:
    if not factors:
        raise GroupConstructionError("direct product needs at least one factor")
    if len(factors) == 1:
        return factors[0]
    g = factors[0]
    for h in factors[1:]:
        n1, n2 = g.order, h.order
        _check_budget(n1 * n2, budget)
        a = np.arange(n1 * n2)
        a1, b1 = a // n2, a % n2
        table = (
            g.mult[np.ix_(a1, a1)].astype(np.int64) * n2
            + h.mult[np.ix_(b1, b1)].astype(np.int64)
        )
        g = Group(
            table,
            f"{g.label}x{h.label}",
            {"kind": "product", "factors": [g.family, h.family]},
        )
    return g


def group_from_cayley_file(path: str | Path, budget: int = DEFAULT_SIZE_BUDGET) -> Group:
    """Format: first line n, then n lines of n space-separated indices."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise GroupConstructionError(f"cannot read Cayley file: {exc}") from exc
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GroupConstructionError("empty Cayley file")
    try:
        n = int(lines[0])
        rows = [[int(tok) for tok in ln.split()] for ln in lines[1 : n + 1]]
    except ValueError as exc:
        raise GroupConstructionError(f"malformed Cayley file: {exc}") from exc
    if len(rows) != n or any(len(r) != n for r in rows):
        raise GroupConstructionError("Cayley file has wrong shape")
    _check_budget(n, budget)
    return Group(np.asarray(rows), f"cayley({Path(path).name})", {"kind": "cayley"})


@dataclass(frozen=True)
class GroupSpec:
    """Parsed group description; build with build_group."""

    kind: str
    params: tuple = ()

    def __str__(self) -> str:
        if self.kind == "product":
            return "prod:" + "+".join(str(p) for p in self.params)
        if self.kind == "ea":
            return f"ea:{self.params[0]}^{self.params[1]}"
        return f"{self.kind}:{self.params[0]}"


_FAMILY_BUILDERS = {
    "cyclic": cyclic_group,
    "dihedral": dihedral_group,
    "symmetric": symmetric_group,
    "alternating": alternating_group,
}

_KIND_ALIASES = {
    "cyclic": "cyclic",
    "c": "cyclic",
    "ea": "ea",
    "elementary_abelian": "ea",
    "dihedral": "dihedral",
    "d": "dihedral",
    "symmetric": "symmetric",
    "sym": "symmetric",
    "alternating": "alternating",
    "alt": "alternating",
    "prod": "product",
    "product": "product",
    "cayley": "cayley",
}


def parse_group_spec(text: str) -> GroupSpec:
    """Parse literals like cyclic:8, ea:2^6, dihedral:4, sym:4, alt:5,
    prod:cyclic:2+ea:2^2, cayley:<path>."""
    from .errors import SpecSyntaxError

    text = text.strip()
    head, sep, body = text.partition(":")
    kind = _KIND_ALIASES.get(head)
    if not sep or kind is None:
        raise SpecSyntaxError(f"unknown group family {head!r}", text, 0)
    if kind == "product":
        parts = body.split("+")
        if not all(parts):
            raise SpecSyntaxError("empty factor in product spec", text)
        return GroupSpec("product", tuple(parse_group_spec(p) for p in parts))
    if kind == "cayley":
        return GroupSpec("cayley", (body,))
    if kind == "ea":
        m = body.split("^")
        if len(m) != 2:
            raise SpecSyntaxError("ea wants p^k", text, len(head) + 1)
        try:
            return GroupSpec("ea", (int(m[0]), int(m[1])))
        except ValueError as exc:
            raise SpecSyntaxError(f"bad ea parameters: {exc}", text) from exc
    try:
        return GroupSpec(kind, (int(body),))
    except ValueError as exc:
        raise SpecSyntaxError(f"bad {kind} parameter: {exc}", text) from exc


def build_group(spec: GroupSpec, budget: int = DEFAULT_SIZE_BUDGET) -> Group:
    if spec.kind == "ea":
        return elementary_abelian_group(*spec.params, budget=budget)
    if spec.kind == "product":
        return direct_product_group(
            [build_group(s, budget) for s in spec.params], budget
        )
    if spec.kind == "cayley":
        return group_from_cayley_file(spec.params[0], budget)
    builder = _FAMILY_BUILDERS.get(spec.kind)
    if builder is None:
        raise GroupConstructionError(f"unknown group family {spec.kind!r}")
    return builder(spec.params[0], budget=budget)


# --- subgroups ---------------------------------------------------------------


class Subgroup:
    """A verified subgroup of a parent group, stored as a member bitmask."""

    __slots__ = ("parent", "mask", "_is_normal", "_as_group")

    def __init__(self, parent: Group, mask: int, verify: bool = True):
        if verify:
            if not mask & 1:
                raise PreconditionError("subgroup must contain the identity")
            if inverse_mask(parent, mask) != mask:
                raise PreconditionError("set is not closed under inverses")
            if product_mask(parent, mask, mask) != mask:
                raise PreconditionError("set is not closed under products")
        self.parent = parent
        self.mask = mask
        self._is_normal: bool | None = None
        self._as_group: tuple[Group, np.ndarray] | None = None

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    @property
    def members(self):
        from .sets import GroupSet

        return GroupSet(self.parent, self.mask)

    def element_indices(self) -> np.ndarray:
        return mask_indices(self.mask, self.parent.order)

    @property
    def is_normal(self) -> bool:
        if self._is_normal is None:
            g = self.parent
            bits = mask_to_bools(self.mask, g.order)
            ok = True
            for a in range(g.order):
                conj = g.mult[g.mult[g.inv[a]], a]
                if bools_to_mask(bits[conj]) != self.mask:
                    ok = False
                    break
            self._is_normal = ok
        return self._is_normal

    def conjugate_by(self, a: int) -> "Subgroup":
        g = self.parent
        bits = mask_to_bools(self.mask, g.order)
        conj = g.mult[g.mult[g.inv[a]], a]
        return Subgroup(g, bools_to_mask(bits[conj]), verify=False)

    def as_group(self) -> tuple[Group, np.ndarray]:
        """Reindexed copy of this subgroup as a standalone Group.

        Returns (group, elems) where elems[i] is the parent index of local
        element i; local 0 is the identity.
        """
        if self._as_group is None:
            g = self.parent
            elems = self.element_indices()
            pos = np.full(g.order, -1, dtype=np.int64)
            pos[elems] = np.arange(len(elems))
            table = pos[g.mult[np.ix_(elems, elems)]]
            sub = Group(
                table,
                f"{g.label}|H{len(elems)}",
                {"kind": "subgroup"},
                validate=len(elems) <= FULL_ASSOCIATIVITY_LIMIT,
            )
            self._as_group = (sub, elems)
        return self._as_group

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent == other.parent and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.parent.order, self.mask))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, index={self.index} of {self.parent.label})"

    def to_json(self) -> dict:
        return {
            "group": self.parent.label,
            "order": self.order,
            "index": self.index,
            "elems": [int(x) for x in self.element_indices()],
        }


def subgroup_from_indices(parent: Group, indices: Iterable[int]) -> Subgroup:
    mask = 0
    for i in indices:
        mask |= 1 << int(i)
    return Subgroup(parent, mask)


# --- derived structure --------------------------------------------------------


def exponent(g: Group) -> int:
    """Least r with x^r = 1 for all x (the lcm of element orders)."""
    return g.exponent()


def commutator_subgroup(g: Group) -> Subgroup:
    if g._commutator_mask is None:
        n = g.order
        idx = np.arange(n)
        seen = np.zeros(n, dtype=bool)
        for x in range(n):
            a = g.mult[g.inv[x]][g.inv]
            b = g.mult[a, x]
            c = g.mult[b, idx]
            seen[c] = True
        g._commutator_mask = g.closure(bools_to_mask(seen))
    return Subgroup(g, g._commutator_mask, verify=False)


def quotient_by(g: Group, normal_mask: int, verify: bool = True) -> tuple[Group, np.ndarray]:
    """Quotient G/N for a normal subgroup mask; also returns the projection table."""
    n = g.order
    nbits = mask_to_bools(normal_mask, n)
    proj = np.full(n, -1, dtype=np.int64)
    reps: list[int] = []
    for x in range(n):
        if proj[x] >= 0:
            continue
        coset = nbits[g.mult_t[g.inv[x]]]
        proj[coset] = len(reps)
        reps.append(x)
    rep_arr = np.asarray(reps)
    table = proj[g.mult[np.ix_(rep_arr, rep_arr)]]
    q = Group(
        table,
        f"{g.label}/N{normal_mask.bit_count()}",
        {"kind": "quotient"},
        validate=len(reps) <= FULL_ASSOCIATIVITY_LIMIT,
    )
    if verify:
        step = max(1, (1 << 22) // n)
        for i in range(0, n, step):
            block = g.mult[i : i + step]
            if not np.array_equal(proj[block], table[np.ix_(proj[i : i + step], proj)]):
                raise GroupConstructionError(
                    "quotient map is not well defined (subgroup not normal?)"
                )
    proj.setflags(write=False)
    return q, proj


def abelianization(g: Group) -> tuple[Group, np.ndarray]:
    """G/[G,G] together with the projection table of length |G|."""
    if g._abelianization is None:
        comm = commutator_subgroup(g)
        g._abelianization = quotient_by(g, comm.mask)
    return g._abelianization


def abelian_basis(g: Group) -> list[tuple[int, int]]:
    """Independent generators (element, order) with G = prod of the cyclics.

    Peels a maximal-order element, recurses on the quotient, and corrects each
    lifted generator so its order matches its order in the quotient.
    """
    if not g.is_abelian:
        raise PreconditionError("abelian_basis requires an abelian group")
    if g.order == 1:
        return []
    orders = g.element_orders()
    a = int(np.argmax(orders))
    n1 = int(orders[a])
    if n1 == g.order:
        return [(a, n1)]
    amask = cyclic_mask(g, a)
    q, proj = quotient_by(g, amask, verify=False)
    apows = [0]
    for _ in range(n1 - 1):
        apows.append(int(g.mult[apows[-1], a]))
    apos = {e: i for i, e in enumerate(apows)}
    out = [(a, n1)]
    for bq, m in abelian_basis(q):
        b0 = int(np.flatnonzero(proj == bq)[0])
        c = apos[g.pow_elem(b0, m)]
        if c % m != 0:
            raise GroupConstructionError("basis lift failed; group is not abelian?")
        shift = apows[(n1 - (c // m)) % n1]
        b = int(g.mult[b0, shift])
        if g.pow_elem(b, m) != 0:
            raise GroupConstructionError("corrected basis element has wrong order")
        out.append((b, m))
    total = math.prod(m for _, m in out)
    if total != g.order:
        raise GroupConstructionError("basis orders do not multiply to |G|")
    return out


def abelian_coordinates(g: Group, basis: list[tuple[int, int]]) -> np.ndarray:
    """Coordinate table: coords[x] = exponents of x in the given basis."""
    items: list[tuple[int, tuple[int, ...]]] = [(0, ())]
    for b, m in basis:
        bpows = [0]
        for _ in range(m - 1):
            bpows.append(int(g.mult[bpows[-1], b]))
        items = [
            (int(g.mult[e, bp]), co + (j,))
            for e, co in items
            for j, bp in enumerate(bpows)
        ]
    coords = np.zeros((g.order, len(basis)), dtype=np.int64)
    seen = set()
    for e, co in items:
        if e in seen:
            raise GroupConstructionError("basis does not enumerate the group")
        seen.add(e)
        coords[e] = co
    return coords


# --- subgroup enumeration ------------------------------------------------------


def _lattice_masks(g: Group, max_states: int) -> list[int]:
    if g._lattice is not None:
        return g._lattice
    seeds = sorted({cyclic_mask(g, x) for x in range(1, g.order)})
    known = {1}
    queue = [1]
    while queue:
        h = queue.pop()
        for c in seeds:
            if c & ~h:
                k = g.closure(h | c)
                if k not in known:
                    known.add(k)
                    if len(known) > max_states:
                        raise FeasibilityError(
                            f"subgroup lattice exceeds {max_states} states"
                        )
                    queue.append(k)
    g._lattice = sorted(known, key=lambda m: (m.bit_count(), m))
    return g._lattice


def enumerate_subgroups(
    g: Group,
    max_index: int | None = None,
    max_states: int = LATTICE_STATE_BUDGET,
) -> list[Subgroup]:
    """All subgroups (optionally restricted to index <= max_index).

    Closure-based breadth-first extension from cyclic subgroups, deduplicated
    by member bitmask.  Unbounded enumeration is guarded to |G| <= 512.
    """
    if max_index is None and g.order > UNBOUNDED_ENUMERATION_LIMIT:
        raise FeasibilityError(
            f"unbounded enumeration needs |G| <= {UNBOUNDED_ENUMERATION_LIMIT}; "
            "pass max_index"
        )
    masks = _lattice_masks(g, max_states)
    subs = [Subgroup(g, m, verify=False) for m in masks]
    if max_index is not None:
        subs = [h for h in subs if h.index <= max_index]
    return subs


def normal_core(g: Group, h: Subgroup) -> Subgroup:
    """Largest normal subgroup of G contained in H (intersection of conjugates)."""
    if h.parent is not g and h.parent != g:
        raise GroupMismatchError("subgroup belongs to a different group")
    core = mask_to_bools(h.mask, g.order).copy()
    hbits = mask_to_bools(h.mask, g.order)
    for a in range(g.order):
        conj = g.mult[g.mult[g.inv[a]], a]
        core &= hbits[conj]
    return Subgroup(g, bools_to_mask(core), verify=False)
