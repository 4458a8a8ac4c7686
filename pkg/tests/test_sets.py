import pytest

from repfn.errors import EmptySetError, ScanBoundExceeded, SetSpecError
from repfn.sets import (
    Complement,
    FiniteSet,
    PeriodicSet,
    PowersOfTwo,
    Shifted,
    complement,
    complement_prefix,
    contains,
    min_element,
    parse_set_spec,
    shift_down,
)


def unrolled_bit(pre: str, per: str, n: int) -> bool:
    # independent oracle: literally unroll the bit sequence out to index n
    seq = pre
    while len(seq) <= n:
        seq += per
    return seq[n] == "1"


class TestMembership:
    def test_pow2_members(self):
        p = parse_set_spec("pow2")
        assert [n for n in range(20) if p.contains(n)] == [2, 4, 8, 16]
        assert contains(p, 2) and not contains(p, 1)

    def test_finite_singleton(self):
        assert [n for n in range(5) if parse_set_spec("finite:0").contains(n)] == [0]

    def test_complement_brute_force(self):
        a = parse_set_spec("complement(finite:2,5)")
        expected = set(range(101)) - {2, 5}
        assert {n for n in range(101) if a.contains(n)} == expected

    def test_complement_of_pow2_contains_zero(self):
        assert contains(parse_set_spec("complement(pow2)"), 0)

    def test_periodic_against_unroll(self):
        a = PeriodicSet("110", "10")
        for n in range(40):
            assert a.contains(n) == unrolled_bit("110", "10", n), n
        # the unrolled sequence is 1,1,0,1,0,1,0,... so index 5 is a member
        assert a.contains(5)

    def test_periodic_empty_preperiod(self):
        a = parse_set_spec("periodic:;10")
        assert [n for n in range(6) if a.contains(n)] == [0, 2, 4]

    def test_negative_n_rejected(self):
        with pytest.raises(ValueError):
            contains(PowersOfTwo(), -1)

    def test_nat_and_empty(self):
        nat = parse_set_spec("nat")
        empty = parse_set_spec("empty")
        assert all(nat.contains(n) for n in range(50))
        assert not any(empty.contains(n) for n in range(50))


class TestMembershipBytes:
    @pytest.mark.parametrize(
        "spec",
        [
            "empty",
            "nat",
            "pow2",
            "finite:0,3,17",
            "periodic:110;10",
            "periodic:;0010",
            "complement(pow2)",
            "complement(periodic:1;01)",
            "shift(2,pow2)",
            "shift(1,complement(finite:0,3,8))",
        ],
    )
    def test_matches_contains(self, spec):
        a = parse_set_spec(spec)
        bts = a.membership_bytes(150)
        assert len(bts) == 151
        assert list(bts) == [int(a.contains(n)) for n in range(151)]


class TestParse:
    @pytest.mark.parametrize(
        "spec",
        [
            "empty",
            "nat",
            "pow2",
            "finite:1,2,9",
            "periodic:;1",
            "periodic:0110;01",
            "complement(finite:2,5)",
            "complement(periodic:;10)",
            "shift(2,pow2)",
            "shift(1,complement(finite:0,3,8))",
        ],
    )
    def test_round_trip(self, spec):
        a = parse_set_spec(spec)
        again = parse_set_spec(a.spec())
        assert again == a
        assert again.membership_bytes(500) == a.membership_bytes(500)

    def test_whitespace_not_significant(self):
        assert parse_set_spec(" complement( finite:2, 5 ) ") == parse_set_spec(
            "complement(finite:2,5)"
        )

    def test_sugar_forms(self):
        assert parse_set_spec("nat") == complement(FiniteSet())
        assert parse_set_spec("empty") == FiniteSet()

    @pytest.mark.parametrize(
        "bad",
        [
            "",
            "foo",
            "finite:5,3",
            "finite:2,2",
            "periodic:10;",
            "periodic:12;1",
            "complement(finite:2,5",
            "complement finite:2",
            "shift(5,pow2)",
            "shift(1,empty)",
            "shift(,pow2)",
            "pow2junk",
            "finite:3,",
        ],
    )
    def test_rejects(self, bad):
        with pytest.raises(SetSpecError):
            parse_set_spec(bad)

    def test_error_carries_position(self):
        with pytest.raises(SetSpecError) as err:
            parse_set_spec("complement(wat)")
        assert err.value.position == 11


class TestComplement:
    def test_double_complement_normalizes(self):
        a = parse_set_spec("periodic:01;110")
        assert complement(complement(a)) == a

    def test_double_complement_membership(self):
        for spec in ("pow2", "finite:1,4", "periodic:0;01"):
            a = parse_set_spec(spec)
            b = complement(complement(a))
            assert b.membership_bytes(10**4) == a.membership_bytes(10**4)

    def test_parse_normalizes_nested(self):
        assert parse_set_spec("complement(complement(pow2))") == PowersOfTwo()


class TestComplementPrefix:
    def test_cofinite_exhausts(self):
        p = complement_prefix(parse_set_spec("complement(finite:2,5)"), 2, 100)
        assert p.elements == (2, 5)
        assert p.exhausted

    def test_full_set_empty_prefix(self):
        p = complement_prefix(parse_set_spec("nat"), 4, 50)
        assert p.elements == ()
        assert p.exhausted

    def test_pow2_complement(self):
        p = complement_prefix(parse_set_spec("complement(pow2)"), 3, 100)
        assert p.elements == (2, 4, 8)
        assert not p.exhausted  # 16, 32, 64 remain below the bound

    def test_matches_direct_scan(self):
        for spec in ("pow2", "periodic:10;0110", "complement(finite:0,7)"):
            a = parse_set_spec(spec)
            missing = [n for n in range(61) if not a.contains(n)]
            p = complement_prefix(a, 5, 60)
            assert list(p.elements) == missing[:5]
            assert p.exhausted == (len(missing) <= 5)

    def test_count_validation(self):
        with pytest.raises(ValueError):
            complement_prefix(PowersOfTwo(), 0, 10)


class TestShift:
    def test_elementwise(self):
        a = shift_down(parse_set_spec("finite:3,5,9"), 3)
        assert {n for n in range(10) if a.contains(n)} == {0, 2, 6}

    def test_zero_shift_identity(self):
        a = parse_set_spec("pow2")
        assert shift_down(a, 0) is a

    def test_shift_then_complement_prefix(self):
        a = parse_set_spec("complement(finite:0,3,8)")
        assert min_element(a) == 1
        shifted = shift_down(a, 1)
        assert complement_prefix(shifted, 2, 100).elements == (2, 7)

    def test_membership_translation(self):
        a = parse_set_spec("periodic:0011;101")
        m = min_element(a)
        s = shift_down(a, m)
        for n in range(200):
            assert s.contains(n) == a.contains(n + m)

    def test_offset_beyond_minimum_rejected(self):
        with pytest.raises(SetSpecError):
            shift_down(PowersOfTwo(), 3)

    def test_empty_set_rejected(self):
        with pytest.raises(EmptySetError):
            shift_down(FiniteSet(), 0)

    def test_nested_shifts_flatten(self):
        inner = parse_set_spec("finite:4,9")
        assert shift_down(shift_down(inner, 1), 2) == Shifted(inner, 3)


class TestMinElement:
    def test_examples(self):
        assert min_element(parse_set_spec("pow2")) == 2
        assert min_element(parse_set_spec("finite:0,4")) == 0
        assert min_element(parse_set_spec("complement(finite:0,1,2)")) == 3

    def test_empty_variants(self):
        with pytest.raises(EmptySetError):
            min_element(FiniteSet())
        with pytest.raises(EmptySetError):
            min_element(PeriodicSet("00", "0"))
        with pytest.raises(EmptySetError):
            min_element(Complement(PeriodicSet("", "1")))

    def test_scan_bound_exhaustion(self):
        a = parse_set_spec("complement(finite:0,1,2,3,4,5,6,7,8,9)")
        with pytest.raises(ScanBoundExceeded) as err:
            min_element(a, scan_bound=5)
        assert err.value.bound == 5
        assert min_element(a, scan_bound=50) == 10

    def test_periodic_late_first_member(self):
        a = PeriodicSet("0000000", "0001")
        assert min_element(a) == 10
