"""The bundled verification suites.

Each criterion below is an executable check with its tolerances pinned:
exact anchor values, exhaustive parameter sweeps, or seeded randomized
batches.  The CLI `suite` subcommand and the acceptance tests both run
these; a criterion returns a record with a `verified` flag and carries
its first few failures verbatim.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .congruence import (
    DEFAULT_BOX_CAP,
    DEFAULT_WINDOW_CAP,
    AxKatzInstance,
    Box,
    MultiPoly,
    hypothesis_margin,
    box_weighted_count,
    verify_axkatz,
    weisman_fleck_check,
    weisman_fleck_value,
    wilson_approx,
)
from .exactmod import phi_ps
from .intpoly import DiffTable, IntValuedPoly
from .invariants import (
    DEFAULT_MULTISET_CAP,
    davenport_exact,
    det_hypothesis,
    guaranteed_k_ranges,
    kemnitz_check,
    s_X_exact,
    s_kq_exact,
    sxq_bound,
    transfer_decompose,
    transfer_extend,
)
from .residues import ResidueSystem, build_unit_system, validate_system
from .zerosum import (
    AbelianPGroup,
    GroupSequence,
    check_altsum,
    check_altsum_q,
    count_by_length,
    count_by_length_naive,
    load_sequence,
    sigma,
)

ONE = IntValuedPoly.constant(1)
X_POLY = IntValuedPoly((0, 1))
X_SQ = IntValuedPoly((0, 1, 2))
BINOM2 = IntValuedPoly.binomial(2)

ANCHORS = {
    "wf_4_0_2_1": 8,
    "wf_6_0_3_1": -18,
    "unit_3_2": (0, 1, 8),
    "unit_5_2": (0, 1, 7, 18, 24),
    "v_size_x1_plus_x2": 2,
}


@dataclass
class Caps:
    box: int = DEFAULT_BOX_CAP
    multiset: int = DEFAULT_MULTISET_CAP
    window: int = DEFAULT_WINDOW_CAP


@dataclass
class Ctx:
    seed: int
    caps: Caps
    anchors: dict = field(default_factory=lambda: dict(ANCHORS))


class Check:
    """Accumulates pass/fail counts and keeps the first few failures."""

    def __init__(self, keep: int = 5):
        self.checks = 0
        self.failures: list[str] = []
        self.keep = keep

    def expect(self, ok: bool, label) -> bool:
        self.checks += 1
        if not ok and len(self.failures) < self.keep:
            self.failures.append(str(label))
        return ok

    def record(self, criterion: str, description: str, seed: int) -> dict:
        passed = not self.failures
        return {
            "criterion": criterion,
            "description": description,
            "checks": self.checks,
            "passed": passed,
            "verified": passed,
            "failures": list(self.failures),
            "seed": seed,
        }


# ---------------------------------------------------------------------------


def c01_residue_systems(ctx: Ctx) -> dict:
    ck = Check()
    for p in (2, 3, 5, 7):
        for m in range(1, 5):
            sys_ = build_unit_system(p, m)
            ck.expect(validate_system(sys_.elements, p), f"complete p={p} m={m}")
            q = p**m
            for x in sys_.elements:
                if x % p:
                    ck.expect((x ** (p - 1) - 1) % q == 0, f"fermat {x} p={p} m={m}")
                else:
                    ck.expect(x == 0, f"zero rep p={p} m={m}")
    ck.expect(
        build_unit_system(3, 2).elements == ctx.anchors["unit_3_2"], "anchor (3,2)"
    )
    ck.expect(
        build_unit_system(5, 2).elements == ctx.anchors["unit_5_2"], "anchor (5,2)"
    )
    return ck.record(
        "c01-residue-systems",
        "lifted unit systems are complete and satisfy the mod p^m Fermat property",
        ctx.seed,
    )


def c02_weisman_fleck(ctx: Ctx) -> dict:
    ck = Check()
    ck.expect(
        weisman_fleck_value(4, 0, 2, 1, ONE) == ctx.anchors["wf_4_0_2_1"],
        "anchor (4,0,2,1)",
    )
    ck.expect(
        weisman_fleck_value(6, 0, 3, 1, ONE) == ctx.anchors["wf_6_0_3_1"],
        "anchor (6,0,3,1)",
    )
    for p in (2, 3, 5):
        for s in (1, 2):
            for n in range(0, 31):
                for r in range(p**s):
                    for w in (ONE, X_POLY, X_SQ, BINOM2):
                        rep = weisman_fleck_check(n, r, p, s, w)
                        ck.expect(rep.verified, f"wf p={p} s={s} n={n} r={r}")
    return ck.record(
        "c02-weisman-fleck",
        "alternating-sum valuations meet the ceiling bound exhaustively",
        ctx.seed,
    )


def c03_wilson(ctx: Ctx) -> dict:
    ck = Check()
    for p in (2, 3):
        for s in (1, 2):
            ps = p**s
            for m in (1, 2):
                for r in range(ps):
                    table = DiffTable(
                        tuple(1 if i == r else 0 for i in range(ps)), period=ps
                    )
                    for w in (ONE, X_POLY):
                        res = wilson_approx(table, w, p, m,
                                            window_cap=ctx.caps.window)
                        t = w.degree
                        ck.expect(
                            res.g.degree < (t + 1) * ps + (m - 1) * phi_ps(p, s),
                            f"degree p={p} s={s} m={m} r={r}",
                        )
                        ck.expect(res.report.verified,
                                  f"congruence p={p} s={s} m={m} r={r}")
    return ck.record(
        "c03-wilson",
        "periodic-map approximations: degree, coefficient valuations, congruence",
        ctx.seed,
    )


def _random_system(rng: random.Random, p: int) -> ResidueSystem:
    kind = rng.randrange(3)
    if kind == 0:
        return ResidueSystem(p, 1, tuple(range(p)))
    if kind == 1:
        return build_unit_system(p, rng.randint(1, 3))
    return ResidueSystem.from_elements(
        p, tuple(c + p * rng.randint(0, 6) for c in range(p))
    )


def _random_poly(rng: random.Random, n: int, deg: int) -> MultiPoly:
    monomials: dict[tuple, int] = {}
    # one monomial of full degree, plus a few lower ones
    for want, full in [(deg, True)] + [
        (rng.randint(0, deg), False) for _ in range(rng.randint(0, 2))
    ]:
        exps = [0] * n
        left = want
        while left > 0:
            j = rng.randrange(n)
            exps[j] += 1
            left -= 1
        key = tuple(exps)
        coeff = rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5])
        monomials[key] = monomials.get(key, 0) + coeff
        if full and monomials[key] == 0:
            monomials[key] = 1
    f = MultiPoly(n, monomials)
    if f.degree != deg:  # cancellation wiped the top term
        exps = [0] * n
        for _ in range(deg):
            exps[rng.randrange(n)] += 1
        monomials[tuple(exps)] = 1
        f = MultiPoly(n, monomials)
    return f


def _draw_instance(rng: random.Random, p: int, trivial_weights: bool,
                   size_limit: int):
    """One margin >= 1 instance with the variable count at the threshold."""
    weight_pool = [ONE, X_POLY, X_SQ, BINOM2]
    while True:
        s = rng.randint(1, 2)
        degs = [rng.choice([1, 1, 1, 2]) for _ in range(s)]
        levels = [rng.choice([1, 1, 2]) for _ in range(s)]
        if trivial_weights:
            weights = [ONE] * s
        else:
            weights = [rng.choice(weight_pool) for _ in range(s)]
        target_margin = rng.choice([1, 1, 1, 2])
        C = Fraction(0)
        M = Fraction(1)
        for d, lev, w in zip(degs, levels, weights):
            t = w.degree
            C += Fraction((t + 1) * p**lev - 1, p - 1) * d
            M = max(M, Fraction(phi_ps(p, lev), p - 1) * d)
        bound = (target_margin - 1) * M + C
        n = int(bound) + 1  # smallest n strictly above the bound
        if p**n > size_limit:
            continue
        polys = tuple(_random_poly(rng, n, d) for d in degs)
        box = Box(tuple(_random_system(rng, p) for _ in range(n)))
        return AxKatzInstance(p, polys, tuple(levels), tuple(weights), box)


def c04_axkatz_random(ctx: Ctx, per_prime: int = 500) -> dict:
    ck = Check()
    rng = random.Random(ctx.seed)
    # exact anchor: common zeros of x1 + x2 over the default 2x2 box
    f = MultiPoly(2, {(1, 0): 1, (0, 1): 1})
    inst = AxKatzInstance(2, (f,), (1,), (ONE,), Box.default(2, 2))
    v_size, n_val = box_weighted_count(inst, cap=ctx.caps.box)
    ck.expect(v_size == ctx.anchors["v_size_x1_plus_x2"], "anchor |V| over {0,1}^2")
    ck.expect(n_val == ctx.anchors["v_size_x1_plus_x2"], "anchor N over {0,1}^2")
    for p in (2, 3):
        size_limit = min(ctx.caps.box, 2**20, 3**9 if p == 3 else 2**13)
        margins = []
        for i in range(per_prime):
            inst = _draw_instance(rng, p, trivial_weights=i % 5 == 0,
                                  size_limit=size_limit)
            rep = verify_axkatz(inst, cap=ctx.caps.box)
            margins.append(rep.predicted_valuation)
            ck.expect(rep.predicted_valuation >= 1, f"margin p={p} #{i}")
            ck.expect(rep.verified, f"divisibility p={p} #{i}: {rep.to_dict()}")
        ck.expect(max(margins) >= 2, f"margin 2 reached for p={p}")
    return ck.record(
        "c04-axkatz-random",
        "randomized weighted instances: p^margin divides the weighted count",
        ctx.seed,
    )


def c05_classical(ctx: Ctx, per_prime: int = 200) -> dict:
    ck = Check()
    rng = random.Random(ctx.seed + 1)
    for p in (2, 3):
        for i in range(per_prime):
            s = rng.randint(1, 2)
            degs = [rng.choice([1, 1, 2]) for _ in range(s)]
            extra = rng.choice([0, 0, 1])  # 0: zero-count threshold, 1: one higher
            n = sum(degs) + 1 + extra * max(degs)
            if p**n > min(ctx.caps.box, 2**16):
                continue
            polys = tuple(_random_poly(rng, n, d) for d in degs)
            box = Box(tuple(_random_system(rng, p) for _ in range(n)))
            inst = AxKatzInstance(p, polys, (1,) * s, (ONE,) * s, box)
            margin = hypothesis_margin(inst)
            ck.expect(margin >= 1 + extra, f"threshold margin p={p} #{i}")
            v_size, n_val = box_weighted_count(inst, cap=ctx.caps.box)
            ck.expect(n_val == v_size, f"unweighted N == |V| p={p} #{i}")
            ck.expect(
                v_size % p**margin == 0,
                f"|V| = {v_size} not divisible by {p}^{margin} #{i}",
            )
    return ck.record(
        "c05-classical",
        "all-weights-1, all-levels-1 case: plain zero counts divisible by p^m",
        ctx.seed,
    )


DP_GROUPS = [
    AbelianPGroup(2, (2,)),
    AbelianPGroup(2, (4,)),
    AbelianPGroup(2, (8,)),
    AbelianPGroup(2, (16,)),
    AbelianPGroup(2, (2, 2)),
    AbelianPGroup(2, (2, 4)),
    AbelianPGroup(2, (2, 8)),
    AbelianPGroup(2, (4, 4)),
    AbelianPGroup(2, (2, 2, 2)),
    AbelianPGroup(2, (2, 2, 2, 2)),
    AbelianPGroup(3, (3,)),
    AbelianPGroup(3, (9,)),
    AbelianPGroup(3, (3, 3)),
    AbelianPGroup(5, (5,)),
    AbelianPGroup(7, (7,)),
    AbelianPGroup(13, (13,)),
]


def c06_zerosum_dp(ctx: Ctx, n_sequences: int = 200) -> dict:
    ck = Check()
    rng = random.Random(ctx.seed + 2)
    for i in range(n_sequences):
        g = rng.choice(DP_GROUPS)
        ell = rng.randint(0, 14)
        s = GroupSequence(g, tuple(rng.randrange(g.order) for _ in range(ell)))
        counts = count_by_length(s)
        ck.expect(counts == count_by_length_naive(s), f"oracle #{i}")
        if sigma(s) == (0,) * g.rank:
            ck.expect(counts == counts[::-1], f"complement duality #{i}")
        zero = (0,) * g.rank
        appended = count_by_length(s.append(zero))
        ok = all(
            appended[j] == (counts[j] if j <= ell else 0) + counts[j - 1]
            for j in range(1, ell + 2)
        )
        ck.expect(ok, f"zero-append #{i}")
        ck.expect(sum(counts) <= 2**ell, f"total bound #{i}")
    return ck.record(
        "c06-zerosum-dp",
        "counting DP equals brute-force subset enumeration; recurrences hold",
        ctx.seed,
    )


ALTSUM_GROUPS = [
    AbelianPGroup(2, (2, 2)),
    AbelianPGroup(3, (3,)),
    AbelianPGroup(3, (3, 3)),
    AbelianPGroup(2, (2, 4)),
    AbelianPGroup(3, (3, 9)),
]


def c07_altsum(ctx: Ctx, per_group: int = 1000) -> dict:
    ck = Check()
    rng = random.Random(ctx.seed + 3)
    for g in ALTSUM_GROUPS:
        p, q = g.p, g.exponent
        phi_q = q - q // p
        for i in range(per_group):
            m = i % 3
            if i % 2 == 0:
                # minimal qualifying length for the plain congruence
                ell = m * phi_q + g.dstar
                s = GroupSequence(
                    g, tuple(rng.randrange(g.order) for _ in range(ell))
                )
                ck.expect(check_altsum(s, m).verified,
                          f"altsum {g.spec_string()} m={m} #{i}")
            else:
                # minimal qualifying length for the length-class version, t = 2
                ell = m * phi_q + 2 * q - 1 + g.dstar
                s = GroupSequence(
                    g, tuple(rng.randrange(g.order) for _ in range(ell))
                )
                ck.expect(check_altsum(s, m).verified,
                          f"altsum-long {g.spec_string()} m={m} #{i}")
                for alpha in range(q):
                    for t in (1, 2):
                        for rep in check_altsum_q(s, alpha=alpha, t=t, m=m):
                            ck.expect(
                                rep.verified,
                                f"class {g.spec_string()} a={alpha} t={t} m={m} #{i}",
                            )
    return ck.record(
        "c07-altsum",
        "alternating-sum congruences on random sequences at qualifying lengths",
        ctx.seed,
    )


DAVENPORT_GROUPS = [
    "p=2;orders=2",
    "p=2;orders=2,2",
    "p=2;orders=2,2,2",
    "p=2;orders=2,2,2,2",
    "p=3;orders=3",
    "p=3;orders=3,3",
    "p=3;orders=3,3,3",
    "p=2;orders=4",
    "p=2;orders=8",
    "p=3;orders=9",
    "p=2;orders=2,4",
    "p=2;orders=4,4",
]


def c08_davenport(ctx: Ctx) -> dict:
    from .zerosum import parse_group

    ck = Check()
    for spec in DAVENPORT_GROUPS:
        g = parse_group(spec)
        res = davenport_exact(g, cap=ctx.caps.multiset)
        ck.expect(res.value == g.dstar, f"{spec}: got {res.value}, want {g.dstar}")
        witness = load_sequence(g, res.witness)
        ck.expect(len(witness) == res.value - 1, f"{spec}: witness length")
        counts = count_by_length(witness)
        ck.expect(all(c == 0 for c in counts[1:]), f"{spec}: witness not free")
    return ck.record(
        "c08-davenport",
        "exhaustive Davenport constants equal the structural bound, with witnesses",
        ctx.seed,
    )


def c09_egz_kemnitz(ctx: Ctx) -> dict:
    ck = Check()
    for n, p in [(2, 2), (3, 3), (4, 2), (5, 5), (7, 7)]:
        g = AbelianPGroup(p, (n,))
        res = s_X_exact(g, {n}, cap=ctx.caps.multiset, predicted=2 * n - 1)
        ck.expect(res.verified, f"s(C{n}) = {res.value}, want {2 * n - 1}")
    for p in (2, 3):
        res = kemnitz_check(p, cap=ctx.caps.multiset)
        ck.expect(res.verified, f"s(C{p}^2) = {res.value}, want {4 * p - 3}")
    return ck.record(
        "c09-egz-kemnitz",
        "cyclic and rank-2 forcing lengths match 2n-1 and 4p-3 exhaustively",
        ctx.seed,
    )


SKQ_GROUPS = {
    "p=2;orders=2": AbelianPGroup(2, (2,)),
    "p=3;orders=3": AbelianPGroup(3, (3,)),
    "p=2;orders=2,2": AbelianPGroup(2, (2, 2)),
    "p=3;orders=3,3": AbelianPGroup(3, (3, 3)),
}


def c10_skq(ctx: Ctx) -> dict:
    ck = Check()
    for spec, g in SKQ_GROUPS.items():
        ranges = guaranteed_k_ranges(g)
        verified_ks = set()
        for k in (1, 2, 3):
            covered = (
                ranges.small_d_from is not None and k >= ranges.small_d_from
            ) or (ranges.large_p_above is not None and k > ranges.large_p_above)
            res = s_kq_exact(g, k, cap=ctx.caps.multiset)
            expected = k * g.exponent + g.dstar - 1
            if covered:
                ck.expect(
                    res.value == expected,
                    f"{spec} k={k}: got {res.value}, want {expected}",
                )
                if res.value == expected:
                    verified_ks.add(k)
            else:
                ck.expect(res.value >= expected, f"{spec} k={k}: below lower bound")
        k0 = ranges.small_d_from
        if k0 is not None and 2 * k0 - 1 <= 3:
            ck.expect(transfer_extend(k0, verified_ks), f"{spec}: transfer base")
    ck.expect(transfer_decompose(7, 2) == (2, 3), "decomposition 7 = 2*2 + 3")
    ck.expect(not transfer_extend(2, {2}), "incomplete window rejected")
    return ck.record(
        "c10-skq",
        "guaranteed k-ranges match kq + dstar - 1 exhaustively; transfer certified",
        ctx.seed,
    )


def c11_bound_machinery(ctx: Ctx) -> dict:
    ck = Check()
    # applicability on the complement-interval family [1, d-1] + {k}
    for p in (5, 7):
        for d in (2, 3, 4):
            for k in range(d, p + 1):
                X = set(range(1, d)) | {k}
                _, ok = det_hypothesis(X, p, 0)
                ck.expect(ok, f"[1,{d - 1}]+{{{k}}} mod {p}")
    # the four-element set from the last reduction step needs p != k+1
    for k, bad_p, good_ps in [(4, 5, (7, 11)), (6, 7, (11, 13))]:
        X = {1, k, k + 2, k + 3}
        _, ok_bad = det_hypothesis(X, bad_p, 0)
        ck.expect(not ok_bad, f"complement hits p at p={bad_p}")
        for p in good_ps:
            _, ok_good = det_hypothesis(X, p, 0)
            ck.expect(ok_good, f"{sorted(X)} fine at p={p}")
    # every applicable bound dominates the exhaustive value
    cases = [
        (AbelianPGroup(2, (2,)), [{1}, {2}, {1, 2}]),
        (AbelianPGroup(3, (3,)), [{1}, {2}, {3}, {1, 3}]),
        (AbelianPGroup(3, (3, 3)), [{1, 2}, {2, 3}, {1, 3}]),
        (AbelianPGroup(2, (2, 2)), [{1, 2}, {2, 3}]),
    ]
    for g, x_sets in cases:
        q = g.exponent
        for X in x_sets:
            res = sxq_bound(g, X, 0)
            if not res.applicable:
                continue
            ck.expect(res.bound <= res.bound2, f"{g.spec_string()} X={X} chain")
            exact = s_X_exact(
                g, {x * q for x in X}, cap=ctx.caps.multiset
            ).value
            ck.expect(
                exact <= res.bound,
                f"{g.spec_string()} X={sorted(X)}: exact {exact} > bound {res.bound}",
            )
    return ck.record(
        "c11-bound-machinery",
        "determinant hypothesis applicability and bound consistency vs exhaustive",
        ctx.seed,
    )


ALGEBRA = [c01_residue_systems, c02_weisman_fleck, c03_wilson, c04_axkatz_random,
           c05_classical]
COMBINATORICS = [c06_zerosum_dp, c07_altsum, c08_davenport, c09_egz_kemnitz,
                 c10_skq, c11_bound_machinery]


def run_suite(name: str, seed: int = 1729, caps: Caps | None = None,
              log=None, corrupt: bool = False) -> list:
    """Run a named suite; returns one record per criterion.

    corrupt flips a known anchor value, for harness self-tests: the run
    must then report a failure.
    """
    if name == "algebra":
        criteria = ALGEBRA
    elif name == "combinatorics":
        criteria = COMBINATORICS
    elif name == "all":
        criteria = ALGEBRA + COMBINATORICS
    else:
        raise ValueError(f"unknown suite {name!r}")
    ctx = Ctx(seed=seed, caps=caps or Caps())
    if corrupt:
        ctx.anchors["wf_4_0_2_1"] += 1
    records = []
    for fn in criteria:
        t0 = time.perf_counter()
        rec = fn(ctx)
        elapsed = time.perf_counter() - t0
        if log is not None:
            status = "pass" if rec["passed"] else "FAIL"
            print(
                f"[{rec['criterion']}] {status} ({rec['checks']} checks, "
                f"{elapsed:.2f}s)",
                file=log,
            )
        records.append(rec)
    return records
