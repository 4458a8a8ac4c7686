import json

import numpy as np
import pytest

from repfn.core import (
    RepKind,
    batch_table,
    closed_form,
    diagonal_indicator,
    r1_array_via_complement,
    r1_at,
    r1_via_complement,
    r2_at,
    r3_at,
    table_from_r1,
)
from repfn.errors import BudgetExceededError, IncompletePrefixError
from repfn.pool import mixed_pool
from repfn.sets import ComplementPrefix, complement_prefix, min_element, parse_set_spec, shift_down


def brute_counts(a, n):
    """Oracle: enumerate all ordered pairs directly."""
    pairs = [(x, n - x) for x in range(n + 1) if a.contains(x) and a.contains(n - x)]
    return len(pairs), sum(1 for x, y in pairs if x <= y), sum(1 for x, y in pairs if x < y)


class TestPointwise:
    def test_known_values(self):
        nat = parse_set_spec("nat")
        assert r1_at(nat, 5) == 6
        assert r1_at(parse_set_spec("empty"), 7) == 0
        assert r1_at(parse_set_spec("finite:2,4,8"), 6) == 2
        assert r2_at(nat, 7) == 4
        assert r2_at(parse_set_spec("finite:0"), 0) == 1
        assert r2_at(parse_set_spec("complement(finite:2,5)"), 4) == 2
        assert r3_at(nat, 0) == 0
        assert r3_at(nat, 9) == 5
        assert r3_at(parse_set_spec("finite:1,2"), 3) == 1

    @pytest.mark.parametrize("spec", ["pow2", "periodic:01;110", "complement(finite:1,6)"])
    def test_against_pair_enumeration(self, spec):
        a = parse_set_spec(spec)
        for n in range(80):
            b1, b2, b3 = brute_counts(a, n)
            assert (r1_at(a, n), r2_at(a, n), r3_at(a, n)) == (b1, b2, b3)


class TestClosedForm:
    def test_known_values(self):
        assert closed_form(RepKind.R1, 5) == 6
        assert closed_form(RepKind.R2, 0) == 1
        assert closed_form(RepKind.R3, 8) == 4
        assert closed_form(RepKind.R3, 0) == 0

    def test_matches_full_set_counting(self):
        nat = parse_set_spec("nat")
        for n in range(120):
            b1, b2, b3 = brute_counts(nat, n)
            assert closed_form(RepKind.R1, n) == b1
            assert closed_form(RepKind.R2, n) == b2
            assert closed_form(RepKind.R3, n) == b3


class TestBatchTable:
    def test_spec_example(self):
        t = batch_table(parse_set_spec("complement(finite:1)"), 4)
        assert t.r1.tolist() == [1, 0, 2, 2, 3]
        assert t.r2.tolist() == [1, 0, 1, 1, 2]
        assert t.r3.tolist() == [0, 0, 1, 1, 1]

    def test_full_set_row(self):
        t = batch_table(parse_set_spec("nat"), 6)
        assert t.r1.tolist() == [1, 2, 3, 4, 5, 6, 7]

    def test_empty_set(self):
        t = batch_table(parse_set_spec("empty"), 9)
        assert not t.r1.any() and not t.r2.any() and not t.r3.any()

    @pytest.mark.parametrize("strategy", ["naive", "word_parallel"])
    def test_matches_pointwise(self, strategy):
        for a in mixed_pool(6, seed=5):
            t = batch_table(a, 64, strategy)
            for n in range(65):
                assert int(t.r1[n]) == r1_at(a, n)
                assert int(t.r2[n]) == r2_at(a, n)
                assert int(t.r3[n]) == r3_at(a, n)

    def test_strategies_agree_midsize(self):
        for a in mixed_pool(8, seed=11):
            tn = batch_table(a, 600, "naive")
            tw = batch_table(a, 600, "word_parallel")
            ta = batch_table(a, 600, "auto")
            for x, y in ((tn.r1, tw.r1), (tn.r2, tw.r2), (tn.r3, tw.r3), (tn.r1, ta.r1)):
                assert np.array_equal(x, y)

    def test_count_bounds(self):
        for a in mixed_pool(6, seed=3):
            t = batch_table(a, 100)
            for n in range(101):
                assert t.r1[n] <= n + 1
                assert t.r2[n] <= n // 2 + 1
                assert t.r3[n] <= (n - 1) // 2 + 1

    def test_decomposition_invariant(self):
        for a in mixed_pool(6, seed=9):
            t = batch_table(a, 200)
            d = diagonal_indicator(a, 200)
            assert np.array_equal(t.r1, t.r2 + t.r3)
            assert np.array_equal(t.r2 - t.r3, d)
            assert np.array_equal(t.r1, 2 * t.r3 + d)

    def test_tables_immutable(self):
        t = batch_table(parse_set_spec("pow2"), 10)
        with pytest.raises(ValueError):
            t.r1[0] = 99

    def test_budget_error_names_budget(self):
        with pytest.raises(BudgetExceededError) as err:
            batch_table(parse_set_spec("nat"), 10**9, memory_budget=1024)
        assert "1024" in str(err.value)

    def test_bad_strategy(self):
        with pytest.raises(ValueError):
            batch_table(parse_set_spec("nat"), 4, "fft")

    def test_max_n_zero(self):
        t = batch_table(parse_set_spec("nat"), 0)
        assert t.r1.tolist() == [1] and t.r2.tolist() == [1] and t.r3.tolist() == [0]


class TestSubsetMonotonicity:
    def test_bitwise_superset_dominates(self):
        import random

        rng = random.Random(2)
        for _ in range(10):
            bits_a = [rng.randint(0, 1) for _ in range(150)]
            bits_b = [x | rng.randint(0, 1) for x in bits_a]
            a = parse_set_spec("periodic:" + "".join(map(str, bits_a)) + ";0")
            b = parse_set_spec("periodic:" + "".join(map(str, bits_b)) + ";0")
            ta, tb = batch_table(a, 149), batch_table(b, 149)
            assert np.all(ta.r1 <= tb.r1)
            assert np.all(ta.r2 <= tb.r2)
            assert np.all(ta.r3 <= tb.r3)


class TestShiftIdentity:
    @pytest.mark.parametrize(
        "spec", ["pow2", "complement(finite:0,3,8)", "periodic:0001;0110", "finite:2,5,11"]
    )
    def test_all_three_functions(self, spec):
        a = parse_set_spec(spec)
        m = min_element(a)
        s = shift_down(a, m)
        ta = batch_table(a, 2 * m + 120)
        ts = batch_table(s, 120)
        for kind in RepKind:
            va, vs = ta.values(kind), ts.values(kind)
            for n in range(121):
                assert va[2 * m + n] == vs[n]


class TestComplementPath:
    def test_known_values(self):
        assert r1_via_complement(ComplementPrefix((1,), True, 100), 4) == 3
        assert r1_via_complement(ComplementPrefix((), True, 100), 9) == 10
        assert r1_via_complement(ComplementPrefix((2, 4, 8), True, 100), 10) == 7

    def test_matches_direct_count(self):
        a = parse_set_spec("complement(finite:2,4,8,9,15)")
        prefix = complement_prefix(a, 10, 200)
        for n in range(120):
            assert r1_via_complement(prefix, n) == r1_at(a, n)

    def test_incomplete_prefix_rejected(self):
        # truncated by count: elements stop at 4 but more misses exist below 100
        truncated = ComplementPrefix((2, 4), False, 100)
        with pytest.raises(IncompletePrefixError):
            r1_via_complement(truncated, 50)
        # exhausted but the scan never reached n
        short = ComplementPrefix((2, 4), True, 10)
        with pytest.raises(IncompletePrefixError):
            r1_via_complement(short, 50)

    def test_truncated_prefix_ok_below_last_element(self):
        truncated = ComplementPrefix((2, 4, 8), False, 100)
        assert r1_via_complement(truncated, 7) == r1_at(parse_set_spec("complement(pow2)"), 7)

    def test_array_form_matches_naive(self):
        a = parse_set_spec("complement(finite:1,2,6,30,101)")
        arr = r1_array_via_complement((1, 2, 6, 30, 101), 500)
        t = batch_table(a, 500, "naive")
        assert np.array_equal(arr, t.r1)

    def test_array_form_empty_misses(self):
        assert r1_array_via_complement((), 5).tolist() == [1, 2, 3, 4, 5, 6]

    def test_array_form_validates_order(self):
        with pytest.raises(ValueError):
            r1_array_via_complement((4, 2), 10)

    def test_table_from_r1(self):
        a = parse_set_spec("complement(pow2)")
        arr = r1_array_via_complement((2, 4, 8, 16, 32), 40)
        t = table_from_r1(a, arr)
        direct = batch_table(a, 40, "naive")
        assert np.array_equal(t.r2, direct.r2)
        assert np.array_equal(t.r3, direct.r3)


class TestSerialization:
    def test_csv_shape(self):
        t = batch_table(parse_set_spec("nat"), 3)
        lines = t.to_csv().strip().split("\n")
        assert lines[0] == "n,r1,r2,r3"
        assert lines[1] == "0,1,1,0"
        assert len(lines) == 5

    def test_json_keys(self):
        t = batch_table(parse_set_spec("pow2"), 5)
        obj = json.loads(json.dumps(t.to_json_obj()))
        assert set(obj) == {"set", "max_n", "r1", "r2", "r3"}
        assert obj["set"] == "pow2"
        assert obj["max_n"] == 5
        assert obj["r1"] == [0, 0, 0, 0, 1, 0]
