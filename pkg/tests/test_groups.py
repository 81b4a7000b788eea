import json
import math
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from gradcount.errors import BoundExceeded, CayleyTableError, DomainError, GroupParseError
from gradcount.groups import (
    AbelianGroupType,
    CayleyGroup,
    NonAbelianCertificate,
    OrderProfile,
    abelian_groups_of_order,
    all_abelian_groups,
    alpha_lambda,
    cayley_from_abelian,
    dihedral_group,
    enumerate_order_profile,
    enumerate_subgroups,
    exponent,
    generated_subgroup,
    heisenberg_group,
    identify_from_profile,
    iso_type_of_subgroup,
    make_abelian,
    order_profile,
    quotient_profile,
    subgroup_from_elements,
    symmetric_group,
)

ABELIAN_64 = all_abelian_groups(64)


def brute_subgroups(g):
    """Every subgroup, as the closures of all element subsets (tiny groups only)."""
    elems = list(g.elements())
    found = set()
    for r in range(len(elems) + 1):
        for subset in combinations(elems, r):
            closure = {g.identity, *subset}
            while True:
                new = {g.add(x, y) for x in closure for y in closure} | closure
                if new == closure:
                    break
                closure = new
            found.add(frozenset(closure))
    return found


class TestMakeAbelian:
    def test_trivial(self):
        assert make_abelian("Z1").components == ()
        assert make_abelian("Z1").order == 1

    def test_crt_split(self):
        assert make_abelian("Z6").components == ((2, (1,)), (3, (1,)))

    def test_two_group(self):
        assert make_abelian("Z4xZ2").components == ((2, (2, 1)),)

    def test_case_and_whitespace(self):
        assert make_abelian(" z2 X z 2 ") == make_abelian("Z2xZ2")

    def test_merge_across_factors(self):
        assert make_abelian("Z6xZ4") == AbelianGroupType(((2, (2, 1)), (3, (1,))))

    @pytest.mark.parametrize("bad", ["", "Z", "Z2x", "Z2*Z3", "C4", "Z-2", "xZ2"])
    def test_malformed(self, bad):
        with pytest.raises(GroupParseError):
            make_abelian(bad)

    def test_zero_rejected(self):
        with pytest.raises(GroupParseError):
            make_abelian("Z0xZ2")

    def test_invariant_factor_display(self):
        assert str(make_abelian("Z2xZ3xZ4")) == "Z12xZ2"
        assert str(make_abelian("Z1")) == "Z1"
        assert make_abelian(str(make_abelian("Z2xZ6xZ9"))) == make_abelian("Z2xZ6xZ9")


class TestAbelianType:
    def test_normalization(self):
        g = AbelianGroupType([(3, [1]), (2, [1, 2]), (5, [])])
        assert g.components == ((2, (2, 1)), (3, (1,)))

    @pytest.mark.parametrize("comps", [[(4, (1,))], [(2, (1,)), (2, (1,))], [(2, (0,))]])
    def test_invalid(self, comps):
        with pytest.raises(DomainError):
            AbelianGroupType(comps)

    def test_order_exponent(self):
        g = make_abelian("Z4xZ2")
        assert (g.order, g.exponent) == (8, 4)
        assert make_abelian("Z1").exponent == 1

    @pytest.mark.parametrize("g", ABELIAN_64, ids=str)
    def test_exponent_is_lcm_of_element_orders(self, g):
        assert g.exponent == math.lcm(*(g.element_order(x) for x in g.elements()))

    def test_groups_of_order_counts(self):
        # number of abelian groups of order n = product of partition numbers
        assert [len(abelian_groups_of_order(n)) for n in (1, 8, 16, 36, 64, 72)] == [1, 3, 5, 4, 11, 6]

    def test_alpha_lambda_is_sum_of_min(self):
        for lam in [(3, 1), (2, 2, 1), (1,), (4, 2, 2)]:
            for s in range(0, 6):
                assert alpha_lambda(lam, s) == sum(min(u, s) for u in lam)


class TestCayley:
    def test_abelian_table_roundtrip(self):
        g = make_abelian("Z2xZ2")
        c = cayley_from_abelian(g)
        assert c.order == 4 and c.identity == 0 and c.is_abelian()

    def test_json(self, tmp_path):
        path = tmp_path / "z3.json"
        path.write_text(json.dumps({"order": 3, "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]}))
        c = CayleyGroup.from_json(path)
        assert c.order == 3 and exponent(c) == 3

    def test_identity_inferred_when_not_zero(self):
        # Z2 with element 1 as identity
        c = CayleyGroup(((1, 0), (0, 1)))
        assert c.identity == 1

    def test_not_latin(self):
        with pytest.raises(CayleyTableError):
            CayleyGroup(((0, 1), (0, 1)))

    def test_no_identity(self):
        with pytest.raises(CayleyTableError):
            CayleyGroup(((0, 2, 1), (2, 1, 0), (1, 0, 2)))

    def test_not_associative(self):
        # Latin square with identity 0 that is not associative (order 5 loop)
        loop = ((0, 1, 2, 3, 4), (1, 0, 3, 4, 2), (2, 4, 0, 1, 3), (3, 2, 4, 0, 1), (4, 3, 1, 2, 0))
        with pytest.raises(CayleyTableError, match="associativity"):
            CayleyGroup(loop)

    def test_declared_order_mismatch(self):
        with pytest.raises(CayleyTableError):
            CayleyGroup.from_json({"order": 3, "table": [[0, 1], [1, 0]]})

    def test_cap(self):
        with pytest.raises(BoundExceeded):
            CayleyGroup(((1, 0), (0, 1)), max_order=1)

    def test_builders(self):
        assert symmetric_group(3).order == 6 and not symmetric_group(3).is_abelian()
        assert dihedral_group(4).order == 8 and not dihedral_group(4).is_abelian()
        h = heisenberg_group(3)
        assert h.order == 27 and not h.is_abelian()


class TestOrderProfile:
    def test_trivial(self):
        assert order_profile(make_abelian("Z1")).as_dict() == {1: 1}

    def test_klein(self):
        assert order_profile(make_abelian("Z2xZ2")).as_dict() == {1: 1, 2: 3}

    @pytest.mark.parametrize("n", [1, 2, 6, 12, 30, 64, 97])
    def test_cyclic_is_totient(self, n):
        prof = order_profile(AbelianGroupType.cyclic(n))
        for t in range(1, n + 1):
            want = sum(1 for k in range(1, t + 1) if math.gcd(k, t) == 1) if n % t == 0 else 0
            assert prof[t] == want

    @pytest.mark.parametrize("g", ABELIAN_64, ids=str)
    def test_formula_matches_cayley_enumeration(self, g):
        assert order_profile(g) == enumerate_order_profile(cayley_from_abelian(g))

    def test_heisenberg_exponent(self):
        assert exponent(heisenberg_group(3)) == 3
        assert order_profile(heisenberg_group(3)).as_dict() == {1: 1, 3: 26}

    def test_s3_profile_and_exponent(self):
        assert order_profile(symmetric_group(3)).as_dict() == {1: 1, 2: 3, 3: 2}
        assert exponent(symmetric_group(3)) == 6

    def test_validation(self):
        with pytest.raises(DomainError):
            OrderProfile(4, {1: 1, 2: 2})
        with pytest.raises(DomainError):
            OrderProfile(4, {1: 2, 2: 2})
        with pytest.raises(DomainError):
            OrderProfile(4, {1: 1, 3: 3})

    def test_psi(self):
        prof = order_profile(make_abelian("Z4"))
        assert [prof.psi(t) for t in (1, 2, 4)] == [1, 2, 4]

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(1, 30), min_size=0, max_size=3))
    def test_profile_sums(self, factors):
        g = AbelianGroupType.from_cyclic_factors(factors)
        prof = order_profile(g)
        assert prof[1] == 1
        assert sum(c for _, c in prof.items()) == g.order
        assert all(g.exponent % t == 0 for t in prof.support)


class TestSubgroups:
    def test_trivial(self):
        assert len(enumerate_subgroups(make_abelian("Z1"))) == 1

    def test_klein(self):
        subs = enumerate_subgroups(make_abelian("Z2xZ2"))
        assert [h.order for h in subs] == [1, 2, 2, 2, 4]

    def test_z4_types(self):
        subs = enumerate_subgroups(make_abelian("Z4"))
        assert [str(h.iso_type) for h in subs] == ["Z1", "Z2", "Z4"]

    @pytest.mark.parametrize("spec", ["Z2xZ2", "Z4", "Z6", "Z2xZ4", "Z3xZ3", "Z2xZ2xZ2"])
    def test_matches_brute_closure(self, spec):
        g = make_abelian(spec)
        assert {frozenset(h.elements) for h in enumerate_subgroups(g)} == brute_subgroups(g)

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_count_elementary_abelian_rank_two(self, p):
        assert len(enumerate_subgroups(make_abelian(f"Z{p}xZ{p}"))) == p + 3

    @pytest.mark.parametrize("spec", ["Z2xZ4xZ3", "Z4xZ4", "Z2xZ2xZ2xZ2", "Z8xZ2", "Z3xZ9"])
    def test_closure_and_lagrange(self, spec):
        g = make_abelian(spec)
        subs = enumerate_subgroups(g)
        assert len({h.elements for h in subs}) == len(subs)
        for h in subs:
            members = set(h.elements)
            assert g.identity in members
            assert g.order % h.order == 0
            for x in h.elements:
                assert g.neg(x) in members
                assert all(g.add(x, y) in members for y in h.elements)
            assert h.iso_type.order == h.order

    def test_bound(self):
        with pytest.raises(BoundExceeded):
            enumerate_subgroups(make_abelian("Z2xZ2"), bound=3)

    def test_cayley_rejected(self):
        with pytest.raises(DomainError):
            enumerate_subgroups(symmetric_group(3))


class TestIsoType:
    def test_diagonal(self):
        g = make_abelian("Z2xZ2")
        h = subgroup_from_elements(g, [(0, 0), (1, 1)])
        assert h.iso_type == make_abelian("Z2")

    def test_generated_in_z4xz4(self):
        g = make_abelian("Z4xZ4")
        h = generated_subgroup(g, [(1, 1)])
        assert h.order == 4 and iso_type_of_subgroup(h) == make_abelian("Z4")

    @pytest.mark.parametrize("g", ABELIAN_64, ids=str)
    def test_full_group(self, g):
        full = subgroup_from_elements(g, g.elements())
        assert iso_type_of_subgroup(full) == g

    def test_not_closed(self):
        with pytest.raises(DomainError):
            subgroup_from_elements(make_abelian("Z4"), [(0,), (1,)])


class TestQuotient:
    def test_full_quotient_trivial(self):
        g = make_abelian("Z2xZ3")
        qt, prof = quotient_profile(g, enumerate_subgroups(g)[-1])
        assert qt == make_abelian("Z1") and prof.as_dict() == {1: 1}

    def test_klein_mod_diagonal(self):
        g = make_abelian("Z2xZ2")
        h = subgroup_from_elements(g, [(0, 0), (1, 1)])
        assert quotient_profile(g, h)[0] == make_abelian("Z2")

    def test_z4_mod_two(self):
        g = make_abelian("Z4")
        h = subgroup_from_elements(g, [(0,), (2,)])
        qt, prof = quotient_profile(g, h)
        assert qt == make_abelian("Z2") and prof.as_dict() == {1: 1, 2: 1}

    def test_z4xz2_quotients(self):
        # cyclic subgroups of order 2 in Z4xZ2: <(2,0)> gives Z2xZ2, <(0,1)> and <(2,1)> give Z4
        g = make_abelian("Z4xZ2")
        got = sorted(str(quotient_profile(g, h)[0]) for h in enumerate_subgroups(g) if h.order == 2)
        assert got == ["Z2xZ2", "Z4", "Z4"]


class TestIdentify:
    def test_klein(self):
        assert identify_from_profile(OrderProfile(4, {1: 1, 2: 3})) == make_abelian("Z2xZ2")

    def test_z4(self):
        assert identify_from_profile(OrderProfile(4, {1: 1, 2: 1, 4: 2})) == make_abelian("Z4")

    def test_s3_certificate(self):
        cert = identify_from_profile(order_profile(symmetric_group(3)))
        assert isinstance(cert, NonAbelianCertificate) and cert.prime == 2

    def test_heisenberg_collides(self):
        # same profile as Z3^3, so inversion returns the abelian group
        assert identify_from_profile(order_profile(heisenberg_group(3))) == make_abelian("Z3xZ3xZ3")

    def test_non_multiplicative_profile(self):
        # D10 has 5 elements of order 2 and 4 of order 5: the 2-part check fails
        assert isinstance(identify_from_profile(order_profile(dihedral_group(5))), NonAbelianCertificate)

    def test_d8(self):
        # D8 has profile {1:1, 2:5, 4:2}; psi(2)=6 is not a power of 2
        assert isinstance(identify_from_profile(order_profile(dihedral_group(4))), NonAbelianCertificate)
