"""Finite abelian p-groups, sequences over them, and zero-sum counting.

Sequences are multisets; N_j counts the index-subsets of size j whose
terms sum to the identity.  Counting is exact dynamic programming over
(group element, chosen length); an optional modulus reduces counts in
flight when only a congruence is needed (the two paths must agree, and
the tests enforce that).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapExceeded
from .exactmod import check_prime, phi_ps
from .reports import CongruenceReport, make_report

DEFAULT_LENGTH_CAP = 64


@dataclass(frozen=True)
class AbelianPGroup:
    """Invariant-factor form: orders are powers of p, ascending, each > 1.

    The empty list is the trivial group.  dstar is the structural length
    bound 1 + sum(q_i - 1).
    """

    p: int
    orders: tuple

    def __post_init__(self):
        check_prime(self.p)
        orders = tuple(sorted(int(q) for q in self.orders))
        object.__setattr__(self, "orders", orders)
        for q in orders:
            if q < 2 or not _is_power_of(q, self.p):
                raise ValueError(f"order {q} is not a power of {self.p} above 1")

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def exponent(self) -> int:
        return self.orders[-1] if self.orders else 1

    @property
    def dstar(self) -> int:
        return 1 + sum(q - 1 for q in self.orders)

    @property
    def order(self) -> int:
        n = 1
        for q in self.orders:
            n *= q
        return n

    @property
    def is_trivial(self) -> bool:
        return not self.orders

    # -- element encoding: mixed-radix index over coordinates ---------------

    def check_element(self, coords) -> tuple:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise ValueError(f"element needs {self.rank} coordinates")
        if any(not 0 <= c < q for c, q in zip(coords, self.orders)):
            raise ValueError(f"coordinates {coords} out of range {self.orders}")
        return coords

    def index_of(self, coords) -> int:
        coords = self.check_element(coords)
        idx = 0
        for c, q in zip(coords, self.orders):
            idx = idx * q + c
        return idx

    def coords_of(self, idx: int) -> tuple:
        coords = []
        for q in reversed(self.orders):
            coords.append(idx % q)
            idx //= q
        return tuple(reversed(coords))

    def add(self, a, b) -> tuple:
        return tuple((x + y) % q for x, y, q in zip(a, b, self.orders))

    def basis_element(self, i: int) -> tuple:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def elements(self):
        return (self.coords_of(i) for i in range(self.order))

    @lru_cache(maxsize=None)
    def _add_perm(self, g_idx: int) -> tuple:
        g = self.coords_of(g_idx)
        return tuple(
            self.index_of(self.add(self.coords_of(h), g)) for h in range(self.order)
        )

    @lru_cache(maxsize=None)
    def _neg_perm(self) -> tuple:
        return tuple(
            self.index_of(tuple((-c) % q for c, q in zip(self.coords_of(h), self.orders)))
            for h in range(self.order)
        )

    def spec_string(self) -> str:
        return f"p={self.p};orders={','.join(str(q) for q in self.orders)}"


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def parse_group(spec: str) -> AbelianPGroup:
    """Parse `p=3;orders=3,9`; an empty orders list is the trivial group."""
    p = None
    orders: list[int] = []
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        key, _, val = part.partition("=")
        key = key.strip()
        if key == "p":
            p = int(val)
        elif key == "orders":
            orders = [int(x) for x in val.split(",") if x.strip()]
        else:
            raise ValueError(f"unknown key {key!r} in group spec {spec!r}")
    if p is None:
        raise ValueError(f"group spec {spec!r} must set p")
    return AbelianPGroup(p, tuple(orders))


@dataclass(frozen=True)
class GroupSequence:
    """Unordered multiset of group elements, stored as sorted indices."""

    group: AbelianPGroup
    indices: tuple

    def __post_init__(self):
        order = self.group.order
        idxs = tuple(sorted(int(i) for i in self.indices))
        if any(not 0 <= i < order for i in idxs):
            raise ValueError("element index out of range")
        object.__setattr__(self, "indices", idxs)

    @classmethod
    def from_coords(cls, group: AbelianPGroup, terms) -> "GroupSequence":
        return cls(group, tuple(group.index_of(t) for t in terms))

    @classmethod
    def from_pairs(cls, group: AbelianPGroup, pairs) -> "GroupSequence":
        """pairs of (coords, multiplicity)."""
        idxs = []
        for coords, mult in pairs:
            if mult < 1:
                raise ValueError("multiplicities must be >= 1")
            idxs.extend([group.index_of(coords)] * mult)
        return cls(group, tuple(idxs))

    def __len__(self) -> int:
        return len(self.indices)

    def terms(self):
        return [self.group.coords_of(i) for i in self.indices]

    def multiplicity(self, coords) -> int:
        idx = self.group.index_of(coords)
        return sum(1 for i in self.indices if i == idx)

    def append(self, coords) -> "GroupSequence":
        return GroupSequence(
            self.group, self.indices + (self.group.index_of(coords),)
        )

    def to_json(self) -> list:
        seen: dict[int, int] = {}
        for i in self.indices:
            seen[i] = seen.get(i, 0) + 1
        return [
            {"coords": list(self.group.coords_of(i)), "mult": m}
            for i, m in sorted(seen.items())
        ]


def load_sequence(group: AbelianPGroup, data) -> GroupSequence:
    """Inverse of GroupSequence.to_json; accepts a JSON string or list."""
    if isinstance(data, str):
        data = json.loads(data)
    pairs = [(tuple(entry["coords"]), int(entry.get("mult", 1))) for entry in data]
    return GroupSequence.from_pairs(group, pairs)


def sigma(seq: GroupSequence) -> tuple:
    """Componentwise sum of all terms; the identity for the empty sequence."""
    g = seq.group
    total = (0,) * g.rank
    for i in seq.indices:
        total = g.add(total, g.coords_of(i))
    return total


def count_by_length(
    seq: GroupSequence,
    modulus: int | None = None,
    length_cap: int = DEFAULT_LENGTH_CAP,
) -> list:
    """N_j for j in [0, |S|]: index-subsets of size j summing to zero.

    With a modulus the DP reduces counts in flight; this is the fast path
    for congruence checks and must agree with the exact path.
    """
    ell = len(seq)
    if ell > length_cap:
        raise CapExceeded(
            f"sequence length {ell} above cap {length_cap}", required=ell
        )
    g = seq.group
    order = g.order
    # counts[j][h]: subsets of size j with sum h
    counts = [[0] * order for _ in range(ell + 1)]
    counts[0][0] = 1
    placed = 0
    for idx in seq.indices:
        perm = g._add_perm(idx)
        placed += 1
        for j in range(placed - 1, -1, -1):
            row, nxt = counts[j], counts[j + 1]
            for h in range(order):
                c = row[h]
                if c:
                    nxt[perm[h]] += c
        if modulus is not None:
            for j in range(placed + 1):
                row = counts[j]
                for h in range(order):
                    if row[h] >= modulus:
                        row[h] %= modulus
    return [counts[j][0] for j in range(ell + 1)]


def count_by_length_naive(seq: GroupSequence) -> list:
    """Brute-force oracle over all 2^|S| subsets (tests only)."""
    ell = len(seq)
    g = seq.group
    idxs = seq.indices
    out = [0] * (ell + 1)
    sums = [0] * (1 << ell)
    for mask in range(1, 1 << ell):
        low = mask & -mask
        i = low.bit_length() - 1
        sums[mask] = g._add_perm(idxs[i])[sums[mask ^ low]]
    for mask in range(1 << ell):
        if sums[mask] == 0:
            out[bin(mask).count("1")] += 1
    return out


def sigma_X_contains_zero(seq: GroupSequence, X) -> bool:
    """Whether some nonempty subsequence with length in X sums to zero."""
    lengths = sorted(x for x in set(X) if 1 <= x <= len(seq))
    if not lengths:
        return False
    counts = count_by_length(seq)
    return any(counts[j] > 0 for j in lengths)


def _require_length(seq: GroupSequence, needed: int, what: str):
    if len(seq) < needed:
        raise ValueError(
            f"{what} needs length >= {needed}, sequence has {len(seq)}"
        )


def check_altsum(seq: GroupSequence, m: int) -> CongruenceReport:
    """Weighted count sum_j (p-1)**j N_j(S), claimed divisible by p**(m+1)
    once |S| >= m*phi(q) + dstar."""
    g = seq.group
    if g.is_trivial:
        raise ValueError("group must be nontrivial (exponent > 1)")
    if m < 0:
        raise ValueError("m must be >= 0")
    p, q = g.p, g.exponent
    needed = m * _phi_of(p, q) + g.dstar
    _require_length(seq, needed, f"alternating-sum check at m={m}")
    counts = count_by_length(seq)
    total = 0
    power = 1
    for nj in counts:
        total += power * nj
        power *= p - 1
    params = {
        "group": g.spec_string(),
        "length": len(seq),
        "m": m,
        "sum": total,
    }
    return make_report("altsum", params, m + 1, total, p,
                       witness_on_failure={"sum": total, "counts": counts})


def check_altsum_q(
    seq: GroupSequence, alpha: int, t: int, m: int
) -> list:
    """For each i in [0, t-1], the sum over j of
    (p-1)**(jq+alpha) * j**i * N_{jq+alpha}(S), with 0**0 = 1, claimed
    divisible by p**(m+1) once |S| >= m*phi(q) + t*q - 1 + dstar."""
    g = seq.group
    if g.is_trivial:
        raise ValueError("group must be nontrivial (exponent > 1)")
    p, q = g.p, g.exponent
    if not 0 <= alpha < q:
        raise ValueError("alpha must lie in [0, q-1]")
    if t < 1 or m < 0:
        raise ValueError("need t >= 1 and m >= 0")
    needed = m * _phi_of(p, q) + t * q - 1 + g.dstar
    _require_length(seq, needed, f"length-class check at t={t}, m={m}")
    counts = count_by_length(seq)
    reports = []
    for i in range(t):
        total = 0
        j = 0
        while j * q + alpha <= len(seq):
            nj = counts[j * q + alpha]
            if nj:
                jpow = 1 if (j == 0 and i == 0) else j**i  # 0**0 = 1
                total += (p - 1) ** (j * q + alpha) * jpow * nj
            j += 1
        params = {
            "group": g.spec_string(),
            "length": len(seq),
            "alpha": alpha,
            "t": t,
            "i": i,
            "m": m,
            "sum": total,
        }
        reports.append(
            make_report("altsum-class", params, m + 1, total, p,
                        witness_on_failure={"sum": total})
        )
    return reports


def _phi_of(p: int, q: int) -> int:
    s = 0
    qq = q
    while qq % p == 0:
        qq //= p
        s += 1
    return phi_ps(p, s)


def extremal_sequence(group: AbelianPGroup, kind: str) -> GroupSequence:
    """Canonical tight constructions.

    davenport: each basis element repeated order-1 times (zero-sum free,
    length dstar - 1).  egz_rank2: for G = C_p x C_p, the four elements
    0, e1, e2, e1+e2 each repeated p-1 times (no zero-sum subsequence of
    length p, length 4p - 4).
    """
    if kind == "davenport":
        pairs = []
        for i, q in enumerate(group.orders):
            pairs.append((group.basis_element(i), q - 1))
        return GroupSequence.from_pairs(group, pairs)
    if kind == "egz_rank2":
        p = group.p
        if group.orders != (p, p):
            raise ValueError("egz_rank2 requires the rank-2 elementary group")
        zero = (0, 0)
        pairs = [(zero, p - 1), ((1, 0), p - 1), ((0, 1), p - 1), ((1, 1), p - 1)]
        return GroupSequence.from_pairs(group, pairs)
    raise ValueError(f"unknown extremal construction {kind!r}")
