import random

import pytest

from boxcong.errors import CapExceeded
from boxcong.zerosum import (
    AbelianPGroup,
    GroupSequence,
    check_altsum,
    check_altsum_q,
    count_by_length,
    count_by_length_naive,
    extremal_sequence,
    load_sequence,
    parse_group,
    sigma,
    sigma_X_contains_zero,
)

C2 = AbelianPGroup(2, (2,))
C4 = AbelianPGroup(2, (4,))
C2_2 = AbelianPGroup(2, (2, 2))
C3 = AbelianPGroup(3, (3,))
C3_2 = AbelianPGroup(3, (3, 3))
C2_C4 = AbelianPGroup(2, (2, 4))
C3_C9 = AbelianPGroup(3, (3, 9))
TRIVIAL = AbelianPGroup(5, ())

TEST_GROUPS = [C2, C4, C2_2, C3, C3_2, C2_C4]


def seq(group, *terms):
    return GroupSequence.from_coords(group, terms)


def test_group_basics():
    assert C3_C9.exponent == 9
    assert C3_C9.dstar == 1 + 2 + 8
    assert C3_C9.order == 27
    assert TRIVIAL.is_trivial and TRIVIAL.exponent == 1 and TRIVIAL.dstar == 1
    assert C2_C4.orders == (2, 4)  # sorted ascending


def test_group_rejects_bad_orders():
    with pytest.raises(ValueError):
        AbelianPGroup(2, (3,))
    with pytest.raises(ValueError):
        AbelianPGroup(2, (1,))
    with pytest.raises(ValueError):
        AbelianPGroup(4, (4,))


def test_parse_group():
    g = parse_group("p=3;orders=3,9")
    assert g == C3_C9
    assert parse_group(g.spec_string()) == g
    assert parse_group("p=5;orders=") == TRIVIAL
    with pytest.raises(ValueError):
        parse_group("orders=3")


def test_element_encoding_round_trip():
    for g in TEST_GROUPS:
        for i in range(g.order):
            assert g.index_of(g.coords_of(i)) == i


def test_sigma():
    assert sigma(GroupSequence(TRIVIAL, ())) == ()
    assert sigma(seq(C2, (1,), (1,))) == (0,)
    assert sigma(seq(C4, (1,), (2,))) == (3,)


def test_count_examples():
    assert count_by_length(seq(C2, (1,), (1,))) == [1, 0, 1]
    assert count_by_length(seq(C2, (0,), (0,))) == [1, 2, 1]
    assert count_by_length(seq(C2_2, (1, 0), (0, 1), (1, 1))) == [1, 0, 0, 1]


def test_count_length_cap():
    s = GroupSequence(C2, (0,) * 10)
    with pytest.raises(CapExceeded):
        count_by_length(s, length_cap=9)


def test_count_oracle_equivalence_random():
    rng = random.Random(2)
    for _ in range(200):
        g = rng.choice(TEST_GROUPS)
        ell = rng.randint(0, 11)
        s = GroupSequence(g, tuple(rng.randrange(g.order) for _ in range(ell)))
        assert count_by_length(s) == count_by_length_naive(s)


def test_count_modular_fast_path_agrees():
    rng = random.Random(4)
    for _ in range(100):
        g = rng.choice(TEST_GROUPS)
        ell = rng.randint(0, 12)
        s = GroupSequence(g, tuple(rng.randrange(g.order) for _ in range(ell)))
        exact = count_by_length(s)
        for mod in (2, 4, 9, 8):
            assert count_by_length(s, modulus=mod) == [c % mod for c in exact]


def test_complement_duality_and_total():
    rng = random.Random(6)
    for _ in range(100):
        g = rng.choice(TEST_GROUPS)
        ell = rng.randint(0, 12)
        s = GroupSequence(g, tuple(rng.randrange(g.order) for _ in range(ell)))
        counts = count_by_length(s)
        if sigma(s) == (0,) * g.rank:
            assert counts == counts[::-1]  # complement of zero-sum is zero-sum
        if all(i == 0 for i in s.indices):
            assert sum(counts) == 2 ** len(s)


def test_zero_append_recurrence():
    rng = random.Random(8)
    zero = lambda g: (0,) * g.rank
    for _ in range(100):
        g = rng.choice(TEST_GROUPS)
        ell = rng.randint(0, 11)
        s = GroupSequence(g, tuple(rng.randrange(g.order) for _ in range(ell)))
        base = count_by_length(s)
        appended = count_by_length(s.append(zero(g)))
        for j in range(1, len(s) + 2):
            left = base[j] if j <= len(s) else 0
            assert appended[j] == left + base[j - 1]


def test_sigma_X_contains_zero():
    s = seq(C2, (1,), (1,))
    assert sigma_X_contains_zero(s, {2})
    assert not sigma_X_contains_zero(s, {1})
    assert not sigma_X_contains_zero(s, set())


def test_check_altsum_examples():
    rep = check_altsum(seq(C2, (1,), (1,)), 0)
    assert rep.parameters["sum"] == 2
    assert rep.verified

    rep = check_altsum(seq(C2, (1,), (1,), (0,)), 1)
    assert rep.parameters["sum"] == 4
    assert rep.verified

    rep = check_altsum(seq(C2_2, (1, 0), (0, 1), (1, 1)), 0)
    assert rep.parameters["sum"] == 2
    assert rep.verified


def test_check_altsum_length_guard():
    with pytest.raises(ValueError, match="length >= 3"):
        check_altsum(seq(C2_2, (1, 0)), 0)
    with pytest.raises(ValueError, match="nontrivial"):
        check_altsum(GroupSequence(TRIVIAL, ()), 0)


def test_check_altsum_q_examples():
    reps = check_altsum_q(seq(C2, (1,), (1,), (0,)), alpha=1, t=1, m=0)
    assert len(reps) == 1
    assert reps[0].parameters["sum"] == 2
    assert reps[0].verified

    reps = check_altsum_q(seq(C2, (0,), (0,), (0,)), alpha=0, t=1, m=0)
    assert reps[0].parameters["sum"] == 4  # N_0 + N_2 = 1 + 3
    assert reps[0].verified


def test_check_altsum_q_validation():
    s = seq(C2, (1,), (1,), (0,), (0,))
    with pytest.raises(ValueError):
        check_altsum_q(s, alpha=2, t=1, m=0)
    with pytest.raises(ValueError):
        check_altsum_q(s, alpha=0, t=0, m=0)
    with pytest.raises(ValueError, match="length"):
        check_altsum_q(seq(C3_2, (1, 1)), alpha=0, t=1, m=0)


def test_altsum_random_sequences():
    rng = random.Random(10)
    for g in [C2_2, C3, C3_2, C2_C4]:
        p, q = g.p, g.exponent
        phi_q = q - q // p
        for _ in range(60):
            m = rng.choice([0, 1])
            ell = m * phi_q + 2 * q - 1 + g.dstar
            s = GroupSequence(g, tuple(rng.randrange(g.order) for _ in range(ell)))
            assert check_altsum(s, m).verified
            for alpha in range(q):
                for t in (1, 2):
                    for rep in check_altsum_q(s, alpha=alpha, t=t, m=m):
                        assert rep.verified, rep.to_dict()


def test_extremal_davenport():
    s = extremal_sequence(C2_2, "davenport")
    assert len(s) == C2_2.dstar - 1 == 2
    assert count_by_length(s) == [1, 0, 0]
    assert len(extremal_sequence(TRIVIAL, "davenport")) == 0
    s9 = extremal_sequence(C3_C9, "davenport")
    assert len(s9) == C3_C9.dstar - 1
    assert all(c == 0 for c in count_by_length(s9)[1:])


def test_extremal_egz_rank2():
    s = extremal_sequence(C2_2, "egz_rank2")
    assert len(s) == 4
    assert count_by_length(s)[2] == 0
    s3 = extremal_sequence(C3_2, "egz_rank2")
    assert len(s3) == 8
    assert count_by_length(s3)[3] == 0
    with pytest.raises(ValueError):
        extremal_sequence(C4, "egz_rank2")
    with pytest.raises(ValueError):
        extremal_sequence(C2_2, "nonsense")


def test_sequence_json_round_trip():
    s = seq(C2_C4, (1, 3), (1, 3), (0, 2))
    data = s.to_json()
    assert load_sequence(C2_C4, data) == s
    assert load_sequence(C2_C4, '[{"coords": [1, 1], "mult": 2}]').indices
