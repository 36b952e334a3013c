import pytest

from boxcong.errors import CapExceeded
from boxcong.invariants import (
    davenport_exact,
    det_hypothesis,
    egz_exact,
    guaranteed_k_ranges,
    kemnitz_check,
    s_X_exact,
    s_kq_exact,
    sxq_bound,
    transfer_decompose,
    transfer_extend,
)
from boxcong.zerosum import AbelianPGroup, count_by_length, load_sequence, parse_group

C2 = AbelianPGroup(2, (2,))
C3 = AbelianPGroup(3, (3,))
C2_2 = AbelianPGroup(2, (2, 2))
C3_2 = AbelianPGroup(3, (3, 3))
C2_C4 = AbelianPGroup(2, (2, 4))
TRIVIAL = AbelianPGroup(3, ())


def test_davenport_examples():
    assert davenport_exact(C2_2).value == 3
    assert davenport_exact(C2_C4).value == 5
    assert davenport_exact(TRIVIAL).value == 1


def test_davenport_matches_structural_bound():
    for spec in ["p=2;orders=2", "p=2;orders=2,2,2", "p=3;orders=3",
                 "p=3;orders=9", "p=2;orders=4,4", "p=3;orders=3,3"]:
        g = parse_group(spec)
        res = davenport_exact(g)
        assert res.value == g.dstar
        assert res.verified


def test_davenport_witness_is_zero_sum_free():
    res = davenport_exact(C3_2)
    w = load_sequence(C3_2, res.witness)
    assert len(w) == res.value - 1
    assert all(c == 0 for c in count_by_length(w)[1:])


def test_davenport_cap():
    with pytest.raises(CapExceeded):
        davenport_exact(AbelianPGroup(3, (3, 3, 3)), cap=10)


def test_egz_cyclic():
    for n in (2, 3, 4, 5):
        p = 2 if n in (2, 4) else n
        g = AbelianPGroup(p, (n,))
        assert egz_exact(g).value == 2 * n - 1


def test_egz_rank2_small():
    assert egz_exact(C2_2).value == 5
    assert egz_exact(C3_2).value == 9


def test_s4_of_c2():
    res = s_kq_exact(C2, 2)  # X = {4}
    assert res.value == 5
    assert res.X == [4]


def test_s_X_witness_avoids_X():
    res = s_X_exact(C3, {3, 6})
    w = load_sequence(C3, res.witness)
    counts = count_by_length(w)
    assert len(w) == res.value - 1
    assert all(counts[x] == 0 for x in (3, 6) if x <= len(w))


def test_s_X_monotone_in_X():
    pairs = [({3}, {3, 6}), ({2}, {2, 4}), ({4}, {2, 4})]
    groups = [C3, C2_2, C2]
    for g in groups:
        for small, big in pairs:
            if any(x % g.exponent for x in small | big):
                continue
            v_small = s_X_exact(g, small).value
            v_big = s_X_exact(g, big).value
            assert v_big <= v_small


def test_s_X_validation():
    with pytest.raises(ValueError):
        s_X_exact(C2, set())
    with pytest.raises(ValueError):
        s_X_exact(C2, {0, 2})


def test_s_X_trivial_group():
    res = s_X_exact(TRIVIAL, {3})
    assert res.value == 3  # 0-runs shorter than 3 avoid; length 3 cannot


def test_det_hypothesis_examples():
    assert det_hypothesis({1, 2, 3, 4}, 5, 0) == (1, True)
    assert det_hypothesis({1, 3}, 3, 0) == (2, True)
    assert det_hypothesis({2}, 2, 0) == (1, True)
    # complement {1,2,3}: product 6 * (1*2*1) = 12, divisible by 4
    product, ok = det_hypothesis({4}, 2, 1)
    assert product == 12 and not ok


def test_sxq_bound_example():
    res = sxq_bound(C3_2, {1, 2}, 0)
    assert res.applicable
    assert res.d == 2 and res.r == 2
    assert res.bound == 7  # (2 - 2 + 0 + 1)*3 + 4
    assert res.bound_exact == 7
    assert res.bound2 == (2 + 1) * 3 - 2
    assert res.bound <= res.bound2


def test_sxq_bound_inapplicable():
    res = sxq_bound(C3_2, {5}, 0)  # |X| = 1 < d = 2
    assert not res.applicable
    assert res.bound is None and res.bound2 is None


def test_sxq_bound_det_failure():
    # complement [1,3] has product 12 divisible by 4
    res = sxq_bound(C2, {4}, 1)
    assert not res.det_ok
    assert not res.applicable


def test_guaranteed_k_ranges():
    kr = guaranteed_k_ranges(C3_2)
    assert kr.d == 2
    assert kr.small_d_from == 2  # p = 3 >= 2d - 1 = 3
    assert kr.large_p_above == 1  # p = 3 > d(d-1) = 2

    kr = guaranteed_k_ranges(C2)
    assert kr.d == 1
    assert kr.small_d_from == 1

    kr = guaranteed_k_ranges(C2_2)  # d = 2, p = 2 < 3 and p = 2 = d(d-1)
    assert kr.small_d_from is None
    assert kr.large_p_above is None


def test_transfer():
    assert transfer_extend(2, {2, 3})
    assert transfer_extend(1, {1})
    assert not transfer_extend(2, {2})
    assert transfer_decompose(7, 2) == (2, 3)
    assert transfer_decompose(2, 2) == (0, 2)
    with pytest.raises(ValueError):
        transfer_decompose(1, 2)


def test_kemnitz_check():
    assert kemnitz_check(2).value == 5
    assert kemnitz_check(3).value == 9
    with pytest.raises(ValueError, match="infeasible"):
        kemnitz_check(5)


def test_skq_values_in_guaranteed_range():
    # d = 1 groups: all k >= 1 carry the bound
    for g in (C2, C3):
        q = g.exponent
        for k in (1, 2, 3):
            res = s_kq_exact(g, k, predicted=k * q + g.dstar - 1)
            assert res.verified, (g.spec_string(), k, res.value)
