"""Command-line front end: group/set parsing, pipeline orchestration,
deterministic randomness, and canonical JSON/CSV report emission.

Exit codes: 0 all verifications passed, 2 parse error, 3 budget or cap
exhausted, 4 internal theorem-violation (reproducer dumped).
"""

from __future__ import annotations

import argparse
import csv
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import bohr as bohr_mod
from . import pipelines, sets, torus, vc
from .errors import (
    AblabError,
    FeasibilityError,
    SpecSyntaxError,
    TheoremViolationError,
)
from .groups import Group, GroupSpec, build_group, enumerate_subgroups, parse_group_spec
from .reporting import canonical_dumps
from .rng import SplitRng
from .sets import GroupSet, parse_fraction, parse_set_spec

_GROUP_CACHE: dict[str, Group] = {}


def get_group(spec_text: str, budget: int = 4096) -> Group:
    if spec_text not in _GROUP_CACHE:
        _GROUP_CACHE[spec_text] = build_group(parse_group_spec(spec_text), budget)
    return _GROUP_CACHE[spec_text]


def _emit(args, payload) -> None:
    text = canonical_dumps(payload)
    if args.out and args.out != "-":
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _nonempty_random(g: Group, r: SplitRng, density: Fraction) -> GroupSet:
    mask = r.subset_mask(g.order, density)
    if mask == 0:
        mask = 1 << r.randint(0, g.order - 1)
    return GroupSet(g, mask)


def _run_trials(fn, trials: int, rng: SplitRng, jobs: int) -> list:
    streams = [rng.derive(f"trial-{i}") for i in range(trials)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, range(trials), streams))
    return [fn(i, s) for i, s in enumerate(streams)]


# --- verify suites ----------------------------------------------------------------


RUZSA_ZOO = [
    "cyclic:13",
    "cyclic:24",
    "cyclic:40",
    "cyclic:64",
    "ea:2^4",
    "ea:2^6",
    "ea:2^8",
    "dihedral:6",
    "dihedral:8",
    "symmetric:4",
]


def suite_ruzsa(rng: SplitRng, trials: int, jobs: int) -> dict:
    groups = [get_group(lbl) for lbl in RUZSA_ZOO]

    def trial(i: int, r: SplitRng):
        g = r.choice(groups)
        xs = [
            _nonempty_random(g, r, Fraction(r.randint(5, 60), 100)) for _ in range(3)
        ]
        if sets.ruzsa_triangle_ok(*xs):
            return None
        return {"trial": i, "group": g.label, "sets": [sorted(s) for s in xs]}

    failures = [f for f in _run_trials(trial, trials, rng, jobs) if f]
    return {"suite": "ruzsa", "trials": trials, "failures": failures, "pass": not failures}


PLUNNECKE_ZOO = [
    "cyclic:16",
    "cyclic:32",
    "ea:2^4",
    "ea:2^5",
    "dihedral:6",
    "symmetric:4",
]


def suite_plunnecke(rng: SplitRng, trials: int, jobs: int) -> dict:
    groups = [get_group(lbl) for lbl in PLUNNECKE_ZOO]

    def trial(i: int, r: SplitRng):
        g = r.choice(groups)
        x = _nonempty_random(g, r, Fraction(r.randint(10, 50), 100))
        mode = "tripling" if r.randint(0, 1) else "alternation"
        try:
            sets.plunnecke_check(x, mode)
        except TheoremViolationError as exc:
            return {"trial": i, "group": g.label, "mode": mode, "detail": exc.reproducer}
        return None

    failures = [f for f in _run_trials(trial, trials, rng, jobs) if f]
    return {
        "suite": "plunnecke",
        "trials": trials,
        "failures": failures,
        "pass": not failures,
    }


BOHR_ZOO = ["cyclic:36", "cyclic:128", "ea:2^6", "ea:3^4", "prod:cyclic:4+cyclic:8"]
_BOHR_DELTAS = [Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(1, 8), Fraction(1, 16)]


def suite_bohr_size(rng: SplitRng, trials: int, jobs: int) -> dict:
    groups = [get_group(lbl) for lbl in BOHR_ZOO]
    char_pool = {g.label: torus.characters(g) for g in groups}

    def trial(i: int, r: SplitRng):
        g = r.choice(groups)
        chars = char_pool[g.label]
        dims = r.randint(1, 3)
        picked = [r.choice(chars) for _ in range(dims)]
        tau = torus.product_map(picked)
        delta = r.choice(_BOHR_DELTAS)
        h = g.whole_subgroup()
        b = bohr_mod.bohr_set(h, tau, delta)
        size_ok = Fraction(b.card) >= delta**dims * g.order
        nest_ok = sets.product(b, b).issubset(bohr_mod.bohr_set(h, tau, 2 * delta))
        if size_ok and nest_ok:
            return None
        return {
            "trial": i,
            "group": g.label,
            "delta": [delta.numerator, delta.denominator],
            "dims": dims,
            "size_ok": size_ok,
            "nest_ok": nest_ok,
        }

    failures = [f for f in _run_trials(trial, trials, rng, jobs) if f]
    return {
        "suite": "bohr-size",
        "trials": trials,
        "failures": failures,
        "pass": not failures,
    }


LEMMA82_ZOO = ["cyclic:24", "cyclic:32", "ea:2^5", "ea:2^6", "dihedral:8", "symmetric:4"]
_LEMMA82_EPS = [Fraction(1, 4), Fraction(1, 9), Fraction(1, 16)]


def _structured_set(g: Group, r: SplitRng) -> GroupSet:
    subs = enumerate_subgroups(g)
    k = r.choice([s for s in subs if s.order >= 2])
    mask = 0
    for _, cmask in pipelines.coset_masks(g, k.mask, "right"):
        if r.randint(0, 1):
            mask |= cmask
    for _ in range(r.randint(0, 2)):
        mask ^= 1 << r.randint(0, g.order - 1)
    if mask == 0:
        mask = 1 << r.randint(0, g.order - 1)
    return GroupSet(g, mask)


def suite_lemma82(rng: SplitRng, trials: int, jobs: int) -> dict:
    groups = [get_group(lbl) for lbl in LEMMA82_ZOO]
    for g in groups:
        enumerate_subgroups(g)  # warm the lattice caches before fanning out

    def trial(i: int, r: SplitRng):
        g = r.choice(groups)
        a = (
            _structured_set(g, r)
            if r.randint(0, 1)
            else _nonempty_random(g, r, Fraction(r.randint(20, 80), 100))
        )
        eps = r.choice(_LEMMA82_EPS)
        stab = vc.stabilizer(a, eps).stabilizer
        masks, _ = pipelines.subgroup_candidates_inside(stab, g.whole_subgroup())
        hmask = masks[min(r.randint(0, 2), len(masks) - 1)]
        h = pipelines.Subgroup(g, hmask, verify=False)
        d_set, defect = pipelines.coset_structure(a, h)
        z, table = pipelines.coset_regularity(a, h, eps)
        n = g.order
        ok = (
            defect <= eps
            and 4 * z.card**2 * eps.denominator < eps.numerator * n**2
            and all(
                row["sparse_ok"] or row["dense_ok"]
                for row in table
                if not row["exceptional"]
            )
        )
        if ok:
            return None
        return {"trial": i, "group": g.label, "set": sorted(a), "eps": str(eps)}

    failures = [f for f in _run_trials(trial, trials, rng, jobs) if f]
    return {
        "suite": "lemma82",
        "trials": trials,
        "failures": failures,
        "pass": not failures,
    }


def _low_vc_set(g: Group, r: SplitRng) -> GroupSet:
    gens = r.sample(range(1, g.order), r.randint(4, 6))
    seed = 0
    for x in gens:
        seed |= 1 << x
    kmask = g.closure(seed)
    reps = [r.randint(0, g.order - 1) for _ in range(r.randint(1, 2))]
    mask = 0
    for rep in reps:
        mask |= sets.right_translate(GroupSet(g, kmask), rep).mask
    if r.randint(0, 1):
        mask ^= 1 << r.randint(0, g.order - 1)
    if mask == 0:
        mask = 1
    return GroupSet(g, mask)


def suite_haussler(rng: SplitRng, trials: int, jobs: int) -> dict:
    g = get_group("ea:2^8")

    def trial(i: int, r: SplitRng):
        delta = r.choice([Fraction(1, 4), Fraction(1, 8)])
        for _ in range(6):
            a = _low_vc_set(g, r)
            try:
                report = vc.haussler_check(a, delta, cap=4)
            except TheoremViolationError as exc:
                return {"trial": i, "detail": exc.reproducer}
            if report.ok is not None:
                return None
        return {"trial": i, "detail": "no conclusive low-VC set found"}

    failures = [f for f in _run_trials(trial, trials, rng, jobs) if f]
    return {
        "suite": "haussler",
        "trials": trials,
        "failures": failures,
        "pass": not failures,
    }


def _regression_checks() -> list[tuple[str, bool]]:
    from .groups import abelianization, exponent, normal_core, subgroup_from_indices

    out: list[tuple[str, bool]] = []
    c8 = get_group("cyclic:8")
    c4 = get_group("cyclic:4")
    c6 = get_group("cyclic:6")
    c16 = get_group("cyclic:16")
    d4 = get_group("dihedral:4")
    s3 = get_group("symmetric:3")
    s4 = get_group("symmetric:4")
    a5 = get_group("alternating:5")
    ea22 = get_group("ea:2^2")

    out.append(("exponent dihedral(4) = 4", exponent(d4) == 4))
    out.append(("exponent symmetric(4) = 12", exponent(s4) == 12))
    out.append(("subgroup count cyclic(6) = 4", len(enumerate_subgroups(c6)) == 4))
    out.append(("subgroup count ea(2,2) = 5", len(enumerate_subgroups(ea22)) == 5))
    out.append(("subgroup count symmetric(3) = 6", len(enumerate_subgroups(s3)) == 6))
    out.append(("abelianization symmetric(3) has order 2", abelianization(s3)[0].order == 2))
    out.append(("abelianization alternating(5) trivial", abelianization(a5)[0].order == 1))
    chars8 = torus.characters(c8)
    out.append(
        (
            "characters cyclic(8) are k x/8",
            len(chars8) == 8
            and all(
                chars8[k].value(x).coords[0] == Fraction(k * x, 8) % 1
                for k in range(8)
                for x in range(8)
            ),
        )
    )
    out.append(
        (
            "bar closure {1,3} in cyclic(8)",
            sorted(sets.bar_closure(GroupSet.from_indices(c8, [1, 3]))) == [0, 1, 3, 5, 7],
        )
    )
    rz = sets.ruzsa_distance(
        GroupSet.from_indices(c8, [0, 1]), GroupSet.from_indices(c8, [0, 4])
    )
    out.append(("ruzsa cross set {0,1,4,5}", rz.cross == 4))
    gp = sets.growth_profile(GroupSet.from_indices(c8, [0, 1, 2]))
    out.append(("tripling of {0,1,2} in cyclic(8) = 7/3", gp.tripling == Fraction(7, 3)))
    cover = sets.covering_number(
        GroupSet.from_indices(c8, range(6)),
        GroupSet.from_indices(c8, [0, 1]),
        GroupSet.full(c8),
        exact=True,
    )
    out.append(("exact covering {0..5} by {0,1} = 3", cover == 3))
    tau = torus.characters(c8)[1]
    bset = bohr_mod.bohr_set(c8.whole_subgroup(), tau, Fraction(1, 4))
    out.append(("bohr set cyclic(8) delta=1/4 = {0,1,7}", sorted(bset) == [0, 1, 7]))
    f = torus.TorusMap.from_values(
        c4.whole_subgroup(),
        [[Fraction(0)], [Fraction(1, 4)], [Fraction(1, 2)], [Fraction(7, 10)]],
    )
    out.append(("hom defect example = 1/10", torus.hom_defect(f) == Fraction(1, 10)))
    out.append(
        (
            "torus distance max(1/4,2/5) = 2/5",
            torus.torus_distance(
                torus.TorusVec((Fraction(0), Fraction(0))),
                torus.TorusVec((Fraction(1, 4), Fraction(2, 5))),
            )
            == Fraction(2, 5),
        )
    )
    out.append(
        ("vc of {0,1} in cyclic(4) = 2", vc.vc_dimension(GroupSet.from_indices(c4, [0, 1])).value == 2)
    )
    w = GroupSet.from_indices(c6, [0, 2, 3, 4])
    best = pipelines.largest_subgroup_inside(w, c6.whole_subgroup())
    out.append(("largest subgroup in {0,2,3,4} of cyclic(6)", sorted(best.subgroup.members) == [0, 2, 4]))
    h = subgroup_from_indices(c8, [0, 4])
    prof = vc.stabilizer(h.members, Fraction(1, 8))
    out.append(("stabilizer of a subgroup at small eps is itself", prof.stabilizer.mask == h.mask))
    k12 = get_group("cyclic:12")
    hsub = subgroup_from_indices(k12, [0, 3, 6, 9])
    y, trace = pipelines.croot_sisask(hsub.members, "alternation", 4)
    out.append(("almost-periodicity on a subgroup returns it", y.mask == hsub.mask))
    cert = sets.plunnecke_check(GroupSet.from_indices(c16, [0, 1, 2]), "alternation")
    word3 = sets.eval_word(GroupSet.from_indices(c16, [0, 1, 2]), "+-+-+-")
    out.append(
        (
            "alternation example: k=7/3 and |(XX^-1)^3| = 13",
            cert.k == Fraction(7, 3) and word3.card == 13,
        )
    )
    core = normal_core(s3, subgroup_from_indices(s3, [0, 1]))
    out.append(("normal core of order-2 subgroup of symmetric(3) is trivial", core.order == 1))
    ea24 = get_group("ea:2^4")
    half = enumerate_subgroups(ea24, max_index=2)
    ksub = [s for s in half if s.index == 2][0]
    rep = pipelines.regularity_decompose(ksub.members, Fraction(1, 5), Fraction(1))
    out.append(
        (
            "regularity on an index-2 subgroup records delta = 1/12000",
            rep.delta_exact == Fraction(1, 12000) and rep.success,
        )
    )
    return out


def suite_regression(rng: SplitRng, trials: int, jobs: int) -> dict:
    checks = _regression_checks()
    failures = [{"check": name} for name, ok in checks if not ok]
    return {
        "suite": "regression",
        "trials": len(checks),
        "failures": failures,
        "pass": not failures,
    }


SUITES = {
    "ruzsa": (suite_ruzsa, 1000),
    "plunnecke": (suite_plunnecke, 200),
    "bohr-size": (suite_bohr_size, 100),
    "lemma82": (suite_lemma82, 100),
    "haussler": (suite_haussler, 50),
    "regression": (suite_regression, 1),
}


# --- command handlers ---------------------------------------------------------------


def cmd_group(args) -> int:
    g = get_group(args.group, args.size_budget)
    payload = {
        "label": g.label,
        "order": g.order,
        "exponent": g.exponent(),
        "abelian": g.is_abelian,
        "signature": g.signature,
    }
    if args.subgroups:
        subs = enumerate_subgroups(g, max_index=args.max_index)
        payload["subgroups"] = [s.to_json() for s in subs]
        payload["subgroup_count"] = len(subs)
    _emit(args, payload)
    return 0


def cmd_diagnose(args) -> int:
    g = get_group(args.group, args.size_budget)
    a = parse_set_spec(g, args.set)
    payload: dict = {"group": g.label, "set": a.to_json()}
    payload["growth"] = sets.growth_profile(a).to_json()
    vr = vc.vc_dimension(a, args.vc_cap)
    payload["vc"] = vr.to_json()
    eps = parse_fraction(args.eps)
    payload["stabilizer"] = vc.stabilizer(a, eps).to_json()
    _emit(args, payload)
    return 0


def cmd_croot_sisask(args) -> int:
    g = get_group(args.group, args.size_budget)
    a = parse_set_spec(g, args.set)
    rng = SplitRng.from_seed(args.seed).derive("cli:croot-sisask")
    y, trace = pipelines.croot_sisask(a, args.mode, args.n, strategy=args.strategy, rng=rng)
    _emit(args, {"y": y.to_json(), "trace": trace.to_json()})
    return 0


def cmd_bogolyubov(args) -> int:
    g = get_group(args.group, args.size_budget)
    a = parse_set_spec(g, args.set)
    rng = SplitRng.from_seed(args.seed).derive("cli:bogolyubov")
    budget = pipelines.OracleBudget(heuristic_tries=args.budget)
    report = pipelines.bogolyubov_bounded_exponent(
        a, args.mode, args.m, normalize=args.normalize, budget=budget, rng=rng
    )
    _emit(args, report.to_json())
    return 0 if report.all_verified else 3


def cmd_regularity(args) -> int:
    g = get_group(args.group, args.size_budget)
    a = parse_set_spec(g, args.set)
    rng = SplitRng.from_seed(args.seed).derive("cli:regularity")
    budget = pipelines.OracleBudget(heuristic_tries=args.budget)
    report = pipelines.regularity_decompose(
        a,
        parse_fraction(args.eps),
        parse_fraction(args.nu),
        oracle_budget=budget,
        vc_cap=args.vc_cap,
        rng=rng,
    )
    _emit(args, report.to_json())
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(
                fh,
                fieldnames=["rep", "in_a", "out_a", "exceptional", "sparse_ok", "dense_ok"],
            )
            writer.writeheader()
            writer.writerows(report.table)
    return 0 if report.success else 3


def cmd_bohr_search(args) -> int:
    g = get_group(args.group, args.size_budget)
    a = parse_set_spec(g, args.set)
    ms = pipelines.mode_sets(a, args.mode)
    grid = [parse_fraction(tok) for tok in args.deltas.split(",")]
    witness = bohr_mod.bohr_witness_search(
        ms.w, ms.sigma, args.n_max, grid, max_maps=args.budget or None
    )
    payload = {
        "container_card": ms.w.card,
        "sigma_order": ms.sigma.order,
        "found": witness is not None,
        "witness": None if witness is None else witness.to_json(),
    }
    _emit(args, payload)
    return 0


def cmd_saturation(args) -> int:
    g = get_group(args.group, args.size_budget)
    a = parse_set_spec(g, args.set)
    b = parse_set_spec(g, args.set_b) if args.set_b else None
    c = parse_set_spec(g, args.set_c) if args.set_c else None
    report = pipelines.dense_saturation_check(g, a, b, c)
    _emit(args, report.to_json())
    return 0


def cmd_verify(args) -> int:
    fn, default_trials = SUITES[args.suite]
    trials = args.trials if args.trials else default_trials
    rng = SplitRng.from_seed(args.seed).derive(f"suite:{args.suite}")
    report = fn(rng, trials, args.jobs)
    report["seed"] = args.seed
    _emit(args, report)
    return 0 if report["pass"] else 4


# --- argument parsing -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ablab",
        description="Exact additive-combinatorics laboratory for finite groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_set=True):
        p.add_argument("--group", required=True, help="group spec, e.g. cyclic:8 or ea:2^6")
        if with_set:
            p.add_argument("--set", required=True, help="set literal, e.g. interval:0..2")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--budget", type=int, default=200)
        p.add_argument("--size-budget", type=int, default=4096)
        p.add_argument("--out", default="-")

    p = sub.add_parser("group", help="build and inspect a group")
    common(p, with_set=False)
    p.add_argument("--subgroups", action="store_true")
    p.add_argument("--max-index", type=int, default=None)
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("diagnose", help="growth profile, VC dimension, stabilizer")
    common(p)
    p.add_argument("--eps", default="1/4")
    p.add_argument("--vc-cap", type=int, default=6)
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("croot-sisask", help="almost-periodicity search")
    common(p)
    p.add_argument("--mode", choices=["tripling", "alternation"], default="tripling")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--strategy", choices=["greedy", "full", "random"], default="greedy")
    p.set_defaults(func=cmd_croot_sisask)

    p = sub.add_parser("bogolyubov", help="subgroup witness inside W(A)")
    common(p)
    p.add_argument("--mode", choices=["tripling", "alternation"], default="tripling")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--normalize", action="store_true")
    p.set_defaults(func=cmd_bogolyubov)

    p = sub.add_parser("regularity", help="stabilizer-based regularity decomposition")
    common(p)
    p.add_argument("--eps", required=True)
    p.add_argument("--nu", required=True)
    p.add_argument("--vc-cap", type=int, default=6)
    p.add_argument("--csv", default=None, help="write the per-coset table as CSV")
    p.set_defaults(func=cmd_regularity)

    p = sub.add_parser("bohr-search", help="Bohr witness inside W(A)")
    common(p)
    p.add_argument("--mode", choices=["tripling", "alternation"], default="tripling")
    p.add_argument("--n-max", type=int, default=2)
    p.add_argument("--deltas", default="1/2,1/4,1/8")
    p.set_defaults(func=cmd_bohr_search)

    p = sub.add_parser("saturation", help="product-saturation measurements")
    common(p)
    p.add_argument("--set-b", default=None)
    p.add_argument("--set-c", default=None)
    p.set_defaults(func=cmd_saturation)

    p = sub.add_parser("verify", help="run an exact-theorem suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--trials", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecSyntaxError as exc:
        print(f"ablab: parse error: {exc}", file=sys.stderr)
        return 2
    except FeasibilityError as exc:
        print(f"ablab: budget/cap exhausted: {exc}", file=sys.stderr)
        return 3
    except TheoremViolationError as exc:
        print(f"ablab: internal theorem violation: {exc}", file=sys.stderr)
        sys.stderr.write(canonical_dumps(exc.reproducer))
        return 4
    except AblabError as exc:
        print(f"ablab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
