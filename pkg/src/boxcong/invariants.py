"""Exhaustive zero-sum invariants on tiny groups, plus bound predicates.

The searches enumerate multisets as nondecreasing index tuples, extending
only those that still avoid the defining zero-sum property; the frontier
emptying at length L certifies the invariant equals L, and the last
nonempty frontier supplies the extremal witness.  Witnesses are always
re-verified through the independent counting DP.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded
from .reports import InvariantResult
from .zerosum import (
    AbelianPGroup,
    GroupSequence,
    count_by_length,
    extremal_sequence,
)

DEFAULT_MULTISET_CAP = 10**7


def _witness_sequence(group: AbelianPGroup, terms) -> GroupSequence:
    return GroupSequence(group, tuple(terms))


def davenport_exact(
    group: AbelianPGroup, cap: int = DEFAULT_MULTISET_CAP
) -> InvariantResult:
    """Exact Davenport constant: least length forcing a nontrivial
    zero-sum subsequence.  Certified by exhausting all zero-sum-free
    multisets; the witness is a longest zero-sum-free sequence."""
    if group.is_trivial:
        return InvariantResult(
            group=group.spec_string(), invariant="davenport", value=1,
            search_space=0, witness=[], predicted=group.dstar, verified=True,
        )
    order = group.order
    neg = group._neg_perm()
    perms = [group._add_perm(g) for g in range(order)]
    nodes = 0
    frontier = [(1, 0, ())]  # (next candidate index, achievable-sums mask, terms)
    max_len = 0
    witness: tuple = ()
    while True:
        nxt = []
        for start, mask, terms in frontier:
            for g in range(start, order):
                if mask >> neg[g] & 1:
                    continue  # adding g would close a zero-sum
                perm = perms[g]
                new_mask = mask | (1 << g)
                rest = mask
                while rest:
                    low = rest & -rest
                    new_mask |= 1 << perm[low.bit_length() - 1]
                    rest ^= low
                nodes += 1
                if nodes > cap:
                    raise CapExceeded(
                        f"more than {cap} multisets examined", required=nodes
                    )
                nxt.append((g, new_mask, terms + (g,)))
        if not nxt:
            break
        max_len += 1
        witness = nxt[0][2]
        frontier = nxt

    counts = count_by_length(_witness_sequence(group, witness))
    assert all(c == 0 for c in counts[1:]), "witness is not zero-sum free"
    value = max_len + 1
    return InvariantResult(
        group=group.spec_string(),
        invariant="davenport",
        value=value,
        search_space=nodes,
        witness=_witness_sequence(group, witness).to_json(),
        predicted=group.dstar,
        verified=value == group.dstar,
    )


def s_X_exact(
    group: AbelianPGroup,
    X,
    cap: int = DEFAULT_MULTISET_CAP,
    predicted: int | None = None,
) -> InvariantResult:
    """Exact s_X: least length forcing a zero-sum subsequence whose length
    lies in X (a set of positive integers)."""
    X = sorted(set(int(x) for x in X))
    if not X or X[0] < 1:
        raise ValueError("X must be a nonempty set of positive integers")
    order = group.order
    q = group.exponent
    # a length in X that kills constant runs guarantees termination
    terminating = [x for x in X if x % q == 0]
    hard_max = order * (terminating[0] - 1) + 1 if terminating else None

    neg = group._neg_perm()
    perms = [group._add_perm(g) for g in range(order)]
    nodes = 0
    # masks[j]: sums achievable with exactly j chosen terms
    frontier = [(0, (1,), ())]
    max_len = 0
    witness: tuple = ()
    while frontier:
        nxt = []
        cur_len = max_len
        for start, masks, terms in frontier:
            for g in range(start, order):
                bad = False
                for x in X:
                    if x > cur_len + 1:
                        break
                    if masks[x - 1] >> neg[g] & 1:
                        bad = True
                        break
                if bad:
                    continue
                perm = perms[g]
                new_masks = [masks[0]]
                for j in range(1, cur_len + 2):
                    grown = 0
                    rest = masks[j - 1]
                    while rest:
                        low = rest & -rest
                        grown |= 1 << perm[low.bit_length() - 1]
                        rest ^= low
                    prev = masks[j] if j <= cur_len else 0
                    new_masks.append(prev | grown)
                nodes += 1
                if nodes > cap:
                    raise CapExceeded(
                        f"more than {cap} multisets examined", required=nodes
                    )
                nxt.append((g, tuple(new_masks), terms + (g,)))
        if not nxt:
            break
        max_len += 1
        witness = nxt[0][2]
        frontier = nxt
        if hard_max is not None and max_len > hard_max:
            raise AssertionError("search ran past its pigeonhole bound")

    counts = count_by_length(_witness_sequence(group, witness))
    assert not any(
        counts[x] for x in X if x <= len(witness)
    ), "witness admits a forbidden zero-sum"
    value = max_len + 1
    return InvariantResult(
        group=group.spec_string(),
        invariant="s_X",
        value=value,
        search_space=nodes,
        witness=_witness_sequence(group, witness).to_json(),
        X=list(X),
        predicted=predicted,
        verified=True if predicted is None else value == predicted,
    )


def egz_exact(group: AbelianPGroup, cap: int = DEFAULT_MULTISET_CAP) -> InvariantResult:
    """s(G): the s_X instance with X = {exp(G)}."""
    res = s_X_exact(group, {group.exponent}, cap=cap)
    res.invariant = "egz"
    return res


def s_kq_exact(
    group: AbelianPGroup, k: int, cap: int = DEFAULT_MULTISET_CAP,
    predicted: int | None = None,
) -> InvariantResult:
    """s_kq(G): the s_X instance with X = {k * exp(G)}."""
    if k < 1:
        raise ValueError("k must be >= 1")
    res = s_X_exact(group, {k * group.exponent}, cap=cap, predicted=predicted)
    res.invariant = "s_kq"
    return res


# ---------------------------------------------------------------------------
# bound predicates


def det_hypothesis(X, p: int, m: int):
    """Product of the complement of X in [1, max X] times all pairwise
    differences; ok when it is nonzero mod p**(m+1)."""
    X = sorted(set(int(x) for x in X))
    if not X or X[0] < 1:
        raise ValueError("X must be a nonempty set of positive integers")
    if m < 0:
        raise ValueError("m must be >= 0")
    complement = [x for x in range(1, X[-1] + 1) if x not in set(X)]
    product = 1
    for x in complement:
        product *= x
    for i in range(len(complement)):
        for j in range(i + 1, len(complement)):
            product *= complement[j] - complement[i]
    return product, product % p ** (m + 1) != 0


@dataclass
class SxqBound:
    applicable: bool
    d: int
    r: int
    det_product: int
    det_ok: bool
    bound_exact: Fraction | None = None
    bound: int | None = None
    bound2: int | None = None


def sxq_bound(group: AbelianPGroup, X, m: int) -> SxqBound:
    """Upper bounds for the least length forcing a zero-sum of length in
    X*q, valid when |X| >= d + m and the determinant hypothesis holds."""
    X = sorted(set(int(x) for x in X))
    if not X or X[0] < 1:
        raise ValueError("X must be a nonempty set of positive integers")
    q = group.exponent
    p = group.p
    dstar = group.dstar
    d = -(-dstar // q)
    r = d * q - dstar + 1  # in [1, q]
    product, ok = det_hypothesis(X, p, m)
    applicable = q > 1 and len(X) >= d + m and ok
    out = SxqBound(applicable=applicable, d=d, r=r, det_product=product, det_ok=ok)
    if applicable:
        exact = (
            Fraction(max(X) - len(X) + 1) + Fraction(m * (p - 1), p)
        ) * q + dstar - 1
        out.bound_exact = exact
        out.bound = math.floor(exact)
        out.bound2 = (max(X) + 1) * q - m * (q // p) - r
    return out


@dataclass
class KRanges:
    d: int
    r: int
    small_d_from: int | None   # all k >= this when d <= 4 and p >= 2d - 1
    large_p_above: int | None  # all k > this when p > d(d - 1)


def guaranteed_k_ranges(group: AbelianPGroup) -> KRanges:
    """Which k carry the bound s_kq <= kq + dstar - 1 by the two criteria:
    small d (d <= 4, p >= 2d-1, all k >= d) and large p (p > d(d-1),
    all k > d(d-1)/2)."""
    q = group.exponent
    p = group.p
    d = -(-group.dstar // q)
    r = d * q - group.dstar + 1
    small = d if (d <= 4 and p >= 2 * d - 1) else None
    large = d * (d - 1) // 2 if p > d * (d - 1) else None
    return KRanges(d=d, r=r, small_d_from=small, large_p_above=large)


def transfer_decompose(k: int, k0: int):
    """Write k = m*k0 + r with r in [k0, 2k0 - 1] (requires k >= k0)."""
    if k0 < 1 or k < k0:
        raise ValueError("need 1 <= k0 <= k")
    r = k0 + (k - k0) % k0
    m = (k - r) // k0
    assert m * k0 + r == k and k0 <= r <= 2 * k0 - 1
    return m, r


def transfer_extend(k0: int, verified_ks) -> bool:
    """True when the base window [k0, 2k0-1] is fully verified, which
    extends the bound to every k >= k0 by splicing zero-sum blocks."""
    if k0 < 1:
        raise ValueError("k0 must be >= 1")
    return all(k in set(verified_ks) for k in range(k0, 2 * k0))


def kemnitz_check(p: int, cap: int = DEFAULT_MULTISET_CAP) -> InvariantResult:
    """Exhaustive s(C_p^2) = 4p - 3, feasible only for p in {2, 3}; the
    canonical four-orbit extremal sequence is verified alongside."""
    if p not in (2, 3):
        raise ValueError("exhaustive Kemnitz check infeasible at desk scale")
    group = AbelianPGroup(p, (p, p))
    res = s_X_exact(group, {p}, cap=cap, predicted=4 * p - 3)
    res.invariant = "kemnitz"
    canonical = extremal_sequence(group, "egz_rank2")
    assert len(canonical) == 4 * p - 4
    assert count_by_length(canonical)[p] == 0
    return res
