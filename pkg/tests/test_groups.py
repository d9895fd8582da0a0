import math

import numpy as np
import pytest

from ablab import (
    FeasibilityError,
    GroupConstructionError,
    GroupSet,
    SizeBudgetError,
    abelianization,
    build_group,
    cyclic_group,
    dihedral_group,
    direct_product_group,
    elementary_abelian_group,
    enumerate_subgroups,
    exponent,
    group_from_cayley_file,
    normal_core,
    parse_group_spec,
    subgroup_from_indices,
    symmetric_group,
)
from ablab.groups import GroupSpec

from conftest import brute_closure, random_nonempty, rng


def brute_element_order(g, x):
    k, p = 1, x
    while p != 0:
        p = g.mul(p, x)
        k += 1
    return k


class TestBuilders:
    def test_cyclic(self):
        g = cyclic_group(8)
        assert g.order == 8 and exponent(g) == 8

    def test_elementary_abelian(self):
        g = elementary_abelian_group(2, 4)
        assert g.order == 16 and exponent(g) == 2

    def test_dihedral_exponent_by_brute_force(self, d4):
        orders = {brute_element_order(d4, x) for x in range(d4.order)}
        assert d4.order == 8
        assert exponent(d4) == math.lcm(*orders) == 4

    def test_symmetric_exponent(self, s4):
        orders = [brute_element_order(s4, x) for x in range(s4.order)]
        assert exponent(s4) == math.lcm(*orders) == 12

    def test_product(self):
        g = direct_product_group([cyclic_group(2), cyclic_group(4)])
        assert g.order == 8 and exponent(g) == 4

    def test_budget(self):
        with pytest.raises(SizeBudgetError):
            cyclic_group(5000)
        with pytest.raises(SizeBudgetError):
            build_group(parse_group_spec("ea:2^13"))

    def test_identity_is_zero_everywhere(self, small_zoo):
        for g in small_zoo:
            assert g.mul(0, 3 % g.order) == 3 % g.order
            assert g.invert(0) == 0

    def test_invalid_table_rejected(self):
        from ablab.groups import Group

        bad = [[0, 1], [1, 1]]  # second row not a permutation
        with pytest.raises(GroupConstructionError):
            Group(np.asarray(bad), "bad")
        with pytest.raises(GroupConstructionError):
            build_group(GroupSpec("cayley", ("/nonexistent",)))

    def test_nonassociative_table_rejected(self):
        # Latin square with two-sided identity that is not a group (n=5):
        # rows form a quasigroup built from a non-associative loop.
        t = np.array(
            [
                [0, 1, 2, 3, 4],
                [1, 0, 3, 4, 2],
                [2, 4, 0, 1, 3],
                [3, 2, 4, 0, 1],
                [4, 3, 1, 2, 0],
            ]
        )
        from ablab.groups import Group

        with pytest.raises(GroupConstructionError):
            Group(t, "loop5")


class TestInvariants:
    def test_exponent_divides_order_and_annihilates(self, small_zoo):
        for g in small_zoo:
            r = exponent(g)
            assert g.order % r == 0
            assert all(g.pow_elem(x, r) == 0 for x in range(g.order))

    def test_mult_rows_and_columns_are_permutations(self, small_zoo):
        for g in small_zoo:
            n = g.order
            assert np.all(np.sort(g.mult, axis=1) == np.arange(n))
            assert np.all(np.sort(g.mult, axis=0) == np.arange(n)[:, None])

    def test_associativity_spot_checks(self, small_zoo):
        r = rng("assoc")
        for g in small_zoo:
            for _ in range(200):
                x, y, z = (r.randint(0, g.order - 1) for _ in range(3))
                assert g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z))


class TestCayleyFile:
    def test_round_trip(self, tmp_path, d6):
        path = tmp_path / "d6.cayley"
        lines = [str(d6.order)] + [
            " ".join(str(int(v)) for v in row) for row in d6.mult
        ]
        path.write_text("\n".join(lines) + "\n")
        g = group_from_cayley_file(path)
        assert g.order == d6.order and g.signature == d6.signature

    def test_malformed(self, tmp_path):
        path = tmp_path / "bad.cayley"
        path.write_text("3\n0 1 2\n1 2 0\n")
        with pytest.raises(GroupConstructionError):
            group_from_cayley_file(path)

    def test_identity_must_be_zero(self, tmp_path):
        path = tmp_path / "shift.cayley"
        # cyclic(3) with elements relabeled so index 0 is not the identity
        path.write_text("3\n2 0 1\n0 1 2\n1 2 0\n")
        with pytest.raises(GroupConstructionError):
            group_from_cayley_file(path)


class TestAbelianization:
    def test_abelian_group_is_its_own(self, c12):
        q, proj = abelianization(c12)
        assert q.order == c12.order
        assert sorted(set(int(p) for p in proj)) == list(range(12))

    def test_s3_has_order_two(self, s3):
        q, proj = abelianization(s3)
        assert q.order == 2
        for x in range(6):
            for y in range(6):
                assert proj[s3.mul(x, y)] == q.mul(int(proj[x]), int(proj[y]))

    def test_a5_is_perfect(self):
        from ablab import alternating_group

        q, _ = abelianization(alternating_group(5))
        assert q.order == 1


class TestSubgroupEnumeration:
    @pytest.mark.parametrize("n", [6, 8, 12, 30])
    def test_cyclic_counts_match_divisors(self, n):
        divisors = sum(1 for d in range(1, n + 1) if n % d == 0)
        assert len(enumerate_subgroups(cyclic_group(n))) == divisors

    def test_ea22_has_five(self):
        assert len(enumerate_subgroups(elementary_abelian_group(2, 2))) == 5

    def test_s3_exhaustive_cross_check(self, s3):
        subs = enumerate_subgroups(s3)
        naive = {brute_closure(s3, list(h.members)) for h in subs}
        assert len(subs) == 6
        # every enumerated subgroup is closed, and the closure adds nothing
        for h in subs:
            assert brute_closure(s3, list(h.members)) == frozenset(h.members)
        assert len(naive) == 6

    def test_every_subgroup_verifies(self, d6):
        for h in enumerate_subgroups(d6):
            members = list(h.members)
            assert 0 in members
            assert brute_closure(d6, members) == frozenset(members)
            assert d6.order == h.order * h.index

    def test_unbounded_guard(self):
        g = elementary_abelian_group(2, 10)
        with pytest.raises(FeasibilityError):
            enumerate_subgroups(g)

    def test_max_index_filter(self, s4):
        subs = enumerate_subgroups(s4, max_index=4)
        assert all(h.index <= 4 for h in subs)
        assert any(h.index == 2 for h in subs)  # A4 inside S4


class TestNormalCore:
    def test_normal_subgroup_is_its_own_core(self, c12):
        h = subgroup_from_indices(c12, [0, 4, 8])
        assert normal_core(c12, h).mask == h.mask

    def test_s3_two_element_subgroup_has_trivial_core(self, s3):
        two = [h for h in enumerate_subgroups(s3) if h.order == 2][0]
        assert normal_core(s3, two).order == 1

    def test_whole_group(self, d6):
        assert normal_core(d6, d6.whole_subgroup()).order == d6.order

    def test_core_contains_all_enumerated_normals_inside(self, d6):
        subs = enumerate_subgroups(d6)
        for h in subs:
            core = normal_core(d6, h)
            assert core.is_normal
            assert not core.mask & ~h.mask
            for k in subs:
                if k.is_normal and not k.mask & ~h.mask:
                    assert not k.mask & ~core.mask

    def test_core_index_reported_not_assumed(self, s4):
        h = [x for x in enumerate_subgroups(s4) if x.order == 4][0]
        core = normal_core(s4, h)
        assert core.order in (1, 2, 4)


class TestConcurrencySafety:
    def test_lazy_caches_are_idempotent(self, s4):
        import threading

        results = []

        def work():
            results.append((exponent(s4), abelianization(s4)[0].order))

        threads = [threading.Thread(target=work) for _ in range(8)]
        [t.start() for t in threads]
        [t.join() for t in threads]
        assert len(set(results)) == 1
