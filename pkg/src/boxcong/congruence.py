"""The analytic core: alternating binomial sums restricted to residue
classes, their polynomial approximations, box summation, and the
prime-power divisibility verifier for weighted zero counts over boxes.

All divisibility claims are checked by exact enumeration; nothing here is
floating point or probabilistic.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded
from .exactmod import binom_int, check_prime, phi_ps, vp, vp_factorial
from .intpoly import DiffTable, IntValuedPoly, eval_iv, format_poly
from .reports import CongruenceReport, make_report
from .residues import ResidueSystem

DEFAULT_BOX_CAP = 2**24
DEFAULT_WINDOW_CAP = 10**5


# ---------------------------------------------------------------------------
# sparse multivariate integer polynomials


class MultiPoly:
    """Sparse multivariate polynomial over Z.

    monomials maps exponent tuples (length n_vars) to nonzero integer
    coefficients.  The zero polynomial has degree -1.
    """

    def __init__(self, n_vars: int, monomials: dict):
        if n_vars < 1:
            raise ValueError("need at least one variable")
        self.n_vars = n_vars
        cleaned = {}
        for exps, c in monomials.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n_vars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps}")
            c = int(c)
            if c:
                cleaned[exps] = c
        self.monomials = cleaned
        # flattened (coeff, ((var, exp), ...)) form for fast evaluation
        self._terms = [
            (c, tuple((j, e) for j, e in enumerate(exps) if e))
            for exps, c in sorted(cleaned.items())
        ]

    @property
    def is_zero(self) -> bool:
        return not self.monomials

    @property
    def degree(self) -> int:
        if not self.monomials:
            return -1
        return max(sum(e) for e in self.monomials)

    def degree_in(self, j: int) -> int:
        if not self.monomials:
            return -1
        return max(e[j] for e in self.monomials)

    def __call__(self, point) -> int:
        total = 0
        for c, factors in self._terms:
            term = c
            for j, e in factors:
                term *= point[j] ** e
            total += term
        return total

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.n_vars == other.n_vars
            and self.monomials == other.monomials
        )

    def __repr__(self):
        return f"MultiPoly({self.n_vars}, {self.to_string()!r})"

    def to_string(self) -> str:
        if not self.monomials:
            return "0"
        parts = []
        for exps, c in sorted(self.monomials.items(), reverse=True):
            factors = [
                f"x{j + 1}" if e == 1 else f"x{j + 1}^{e}"
                for j, e in enumerate(exps)
                if e
            ]
            mag = abs(c)
            if not factors:
                body = str(mag)
            else:
                body = "*".join(([str(mag)] if mag != 1 else []) + factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)


_MONO_FACTOR_RE = re.compile(r"^(?:(?P<int>\d+)|x(?P<var>\d+)(?:\^(?P<exp>\d+))?)$")


def parse_multipoly(text: str, n_vars: int | None = None) -> MultiPoly:
    """Parse the `2*x1^2*x3 - x2 + 7` format: integer coefficients,
    variables x1..xN, `*` products and `^` powers."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    terms = []
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        s = s[1:]
    buf = ""
    for ch in s:
        if ch in "+-":
            if not buf:
                raise ValueError(f"misplaced sign in {text!r}")
            terms.append((sign, buf))
            sign = -1 if ch == "-" else 1
            buf = ""
        else:
            buf += ch
    if not buf:
        raise ValueError(f"trailing operator in {text!r}")
    terms.append((sign, buf))

    parsed = []
    max_var = 0
    for sgn, term in terms:
        coeff = sgn
        exps: dict[int, int] = {}
        for factor in term.split("*"):
            m = _MONO_FACTOR_RE.match(factor)
            if not m:
                raise ValueError(f"cannot parse factor {factor!r} in {text!r}")
            if m.group("int") is not None:
                coeff *= int(m.group("int"))
            else:
                v = int(m.group("var"))
                if v < 1:
                    raise ValueError(f"variables are numbered from x1: {factor!r}")
                exps[v - 1] = exps.get(v - 1, 0) + int(m.group("exp") or 1)
                max_var = max(max_var, v)
        parsed.append((coeff, exps))

    n = n_vars if n_vars is not None else max(max_var, 1)
    if max_var > n:
        raise ValueError(f"variable x{max_var} exceeds declared arity {n}")
    monomials: dict[tuple, int] = {}
    for coeff, exps in parsed:
        key = tuple(exps.get(j, 0) for j in range(n))
        monomials[key] = monomials.get(key, 0) + coeff
    return MultiPoly(n, monomials)


# ---------------------------------------------------------------------------
# boxes


@dataclass(frozen=True)
class Box:
    """Product of one complete residue system mod p per variable."""

    systems: tuple

    def __post_init__(self):
        if not self.systems:
            raise ValueError("box needs at least one variable")
        p = self.systems[0].p
        if any(s.p != p for s in self.systems):
            raise ValueError("all residue systems must share the same prime")

    @property
    def p(self) -> int:
        return self.systems[0].p

    @property
    def n_vars(self) -> int:
        return len(self.systems)

    @property
    def size(self) -> int:
        return self.p ** self.n_vars

    def points(self, start: int = 0, stop: int | None = None):
        """Odometer enumeration (last variable fastest); [start, stop)
        slices partition the range for independent summation."""
        it = itertools.product(*(s.elements for s in self.systems))
        if start == 0 and stop is None:
            return it
        return itertools.islice(it, start, stop)

    @classmethod
    def default(cls, p: int, n: int) -> "Box":
        sys = ResidueSystem(p, 1, tuple(range(p)))
        return cls((sys,) * n)

    @classmethod
    def uniform(cls, system: ResidueSystem, n: int) -> "Box":
        return cls((system,) * n)


# ---------------------------------------------------------------------------
# alternating sums over residue classes


def weisman_fleck_value(n: int, r: int, p: int, s: int, w: IntValuedPoly) -> int:
    """Sum of (-1)**i * binom(n, i) * w((i - r) / p**s) over i in [0, n]
    congruent to r mod p**s."""
    check_prime(p)
    ps = p**s
    if not 0 <= r < ps:
        raise ValueError("need 0 <= r < p**s")
    if n < 0 or s < 0:
        raise ValueError("n and s must be >= 0")
    total = 0
    for i in range(r, n + 1, ps):
        term = binom_int(n, i) * eval_iv(w, (i - r) // ps)
        total += -term if i % 2 else term
    return total


def alternating_sum_bound(n: int, t: int, p: int, s: int) -> int:
    """Guaranteed valuation: max(0, ceil((n - (t+1)p**s + 1) / phi(p**s)))."""
    num = n - (t + 1) * p**s + 1
    den = phi_ps(p, s)
    return max(0, -((-num) // den))


def weisman_fleck_check(
    n: int, r: int, p: int, s: int, w: IntValuedPoly
) -> CongruenceReport:
    if w.degree < 0:
        raise ValueError("weight must be nonzero")
    value = weisman_fleck_value(n, r, p, s, w)
    predicted = alternating_sum_bound(n, w.degree, p, s)
    params = {
        "n": n,
        "r": r,
        "p": p,
        "s": s,
        "w": format_poly(w.monomial_coeffs()),
        "value": value,
    }
    return make_report("weisman-fleck", params, predicted, value, p,
                       witness_on_failure={"value": value})


# ---------------------------------------------------------------------------
# polynomial approximation of weighted periodic maps


def _power_of(period: int, p: int) -> int:
    s = 0
    while period % p == 0:
        period //= p
        s += 1
    if period != 1:
        raise ValueError("period not a power of p")
    return s


@dataclass
class WilsonApproximation:
    g: IntValuedPoly
    valuations: list  # per raw coefficient index; None marks a zero coefficient
    window: int       # points actually checked
    full_period: int  # period that would certify all integers
    capped: bool
    report: CongruenceReport


def wilson_approx(
    f: DiffTable,
    w: IntValuedPoly,
    p: int,
    m: int,
    window_cap: int = DEFAULT_WINDOW_CAP,
) -> WilsonApproximation:
    """Build g with g(x) == w(floor(x / p**s)) f(x) mod p**m for all x.

    The coefficients are the iterated differences at 0 of the weighted map,
    evaluated class by class so that each inherits the alternating-sum
    valuation bound.  The congruence is then re-checked pointwise over one
    full period of both sides mod p**m (capped, with the cap recorded).
    """
    check_prime(p)
    if m < 1:
        raise ValueError("target level must be >= 1")
    if f.period is None:
        raise ValueError("table must declare a period")
    s = _power_of(f.period, p)
    t = w.degree
    if t < 0:
        raise ValueError("weight must be nonzero")
    ps = p**s
    phi = phi_ps(p, s)
    d = (t + 1) * ps + (m - 1) * phi - 1

    f_vals = [f.at(r) for r in range(ps)]
    coeffs = []
    for n in range(d + 1):
        acc = 0
        for r in range(ps):
            if f_vals[r]:
                acc += f_vals[r] * weisman_fleck_value(n, r, p, s, w)
        coeffs.append(-acc if n % 2 else acc)

    # cross-check against the plain difference triangle of the weighted map
    h = [eval_iv(w, i // ps) * f.at(i) for i in range(d + 1)]
    row = h
    for n in range(d + 1):
        assert row[0] == coeffs[n], "expansion disagrees with difference table"
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]

    valuations = [vp(a, p) if a else None for a in coeffs]
    for n, v in enumerate(valuations):
        bound = alternating_sum_bound(n, t, p, s)
        assert v is None or v >= bound, "coefficient valuation below bound"

    g = IntValuedPoly(tuple(coeffs))
    assert g.degree < (t + 1) * ps + (m - 1) * phi

    dg = max(g.degree, 0)
    full_period = p ** max(m + vp_factorial(dg, p), s + m + vp_factorial(t, p))
    window = min(full_period, window_cap)
    worst = _scan_congruence_window(g, f, w, p, s, m, window)

    params = {
        "p": p,
        "s": s,
        "m": m,
        "w": format_poly(w.monomial_coeffs()),
        "table": list(f.values[: ps]),
        "g_coeffs": list(g.coeffs),
        "coeff_valuations": list(valuations),
        "degree": g.degree,
        "degree_bound": d,
        "window": window,
        "full_period": full_period,
        "window_capped": window < full_period,
    }
    if worst is None:
        achieved, infinite = m, False  # congruence holds; m is a lower bound
        verified = True
        witness = None
    else:
        x, residue = worst
        achieved, infinite = vp(residue, p), False
        verified = False
        witness = {"x": x, "difference_mod": residue}
    report = CongruenceReport(
        claim="wilson-approx",
        parameters=params,
        predicted_valuation=m,
        achieved_valuation=achieved,
        infinite=infinite,
        verified=verified,
        witness=witness,
    )
    return WilsonApproximation(g, valuations, window, full_period,
                               window < full_period, report)


def _scan_congruence_window(g, f, w, p, s, m, window):
    """Return (x, nonzero difference mod p**m) for the first failure, else
    None.  Incremental Pascal rows keep every step O(deg) in small ints."""
    q = p**m
    ps = p**s
    dg = len(g.coeffs)
    dw = len(w.coeffs)
    g_row = [1 % q] + [0] * max(dg - 1, 0)   # binom(x, n) mod q at x = 0
    w_row = [1 % q] + [0] * max(dw - 1, 0)   # binom(z, n) mod q at z = 0
    for x in range(window):
        z_val = sum(c * b for c, b in zip(w.coeffs, w_row)) % q
        g_val = sum(c * b for c, b in zip(g.coeffs, g_row)) % q
        diff = (g_val - z_val * f.at(x)) % q
        if diff:
            return x, diff
        # advance binom(x, .) to x+1
        for n in range(len(g_row) - 1, 0, -1):
            g_row[n] = (g_row[n] + g_row[n - 1]) % q
        if (x + 1) % ps == 0:
            for n in range(len(w_row) - 1, 0, -1):
                w_row[n] = (w_row[n] + w_row[n - 1]) % q
    return None


# ---------------------------------------------------------------------------
# box summation


def box_poly_sum(poly: MultiPoly, box: Box) -> int:
    """Exact sum of the polynomial over all points of the box."""
    return sum(poly(a) for a in box.points())


def binomial_product_box_sum(polys, ks, box: Box, cap: int = DEFAULT_BOX_CAP):
    """Sum over the box of prod_i binom(f_i(a), k_i), with the largest
    guaranteed p-power recorded in the report."""
    polys = list(polys)
    ks = list(ks)
    if len(polys) != len(ks) or not polys:
        raise ValueError("need matching nonempty polys and ks")
    for f in polys:
        if f.is_zero:
            raise ValueError("polynomials must be nonzero")
        if f.n_vars != box.n_vars:
            raise ValueError("arity mismatch with box")
    if any(k < 0 for k in ks):
        raise ValueError("ks must be >= 0")
    if box.size > cap:
        raise CapExceeded(
            f"box has {box.size} points, cap is {cap}", required=box.size
        )
    p = box.p
    n = box.n_vars
    deg_f = sum(k * f.degree for f, k in zip(polys, ks))
    # largest m >= 0 with n >= (m - 1) + (deg_f + 1)/(p - 1)
    predicted = max(0, math.floor(Fraction(n + 1) - Fraction(deg_f + 1, p - 1)))
    value = 0
    for a in box.points():
        term = 1
        for f, k in zip(polys, ks):
            term *= binom_int(f(a), k)
            if term == 0:
                break
        value += term
    params = {
        "polys": [f.to_string() for f in polys],
        "ks": ks,
        "p": p,
        "n": n,
        "deg": deg_f,
        "value": value,
    }
    report = make_report("box-binomial-sum", params, predicted, value, p,
                         witness_on_failure={"value": value})
    return value, report


# ---------------------------------------------------------------------------
# the divisibility verifier


@dataclass
class AxKatzInstance:
    """One verification instance: congruences f_i == 0 mod p**levels[i]
    counted over the box with weights applied to the exact quotients."""

    p: int
    polys: tuple
    levels: tuple
    weights: tuple
    box: Box

    def __post_init__(self):
        check_prime(self.p)
        self.polys = tuple(self.polys)
        self.levels = tuple(int(m) for m in self.levels)
        self.weights = tuple(self.weights)
        if not (len(self.polys) == len(self.levels) == len(self.weights)):
            raise ValueError("polys, levels and weights must align")
        if not self.polys:
            raise ValueError("need at least one polynomial")
        if any(f.is_zero for f in self.polys):
            raise ValueError("polynomials must be nonzero")
        if any(m < 0 for m in self.levels):
            raise ValueError("levels must be >= 0")
        if any(w.degree < 0 for w in self.weights):
            raise ValueError("weights must be nonzero")
        if self.box.p != self.p:
            raise ValueError("box prime differs from instance prime")
        if any(f.n_vars != self.box.n_vars for f in self.polys):
            raise ValueError("polynomial arity differs from box arity")

    @property
    def n_vars(self) -> int:
        return self.box.n_vars


def hypothesis_margin(inst: AxKatzInstance) -> int:
    """Largest m >= 0 for which the variable-count inequality holds
    (strict, exact rational arithmetic); 0 when even m = 1 fails."""
    p = inst.p
    pm1 = p - 1
    M = Fraction(1)
    C = Fraction(0)
    for f, lev, w in zip(inst.polys, inst.levels, inst.weights):
        d = f.degree
        t = w.degree
        M = max(M, Fraction(phi_ps(p, lev), pm1) * d)
        C += Fraction((t + 1) * p**lev - 1, pm1) * d
    z = (Fraction(inst.n_vars) - C) / M
    return max(0, -((-z.numerator) // z.denominator))


def box_weighted_count(inst: AxKatzInstance, cap: int = DEFAULT_BOX_CAP):
    """Enumerate the box; return (|V|, N) where V holds the points with
    every f_i divisible by p**levels[i] and N is the exact weighted count."""
    if inst.box.size > cap:
        raise CapExceeded(
            f"box has {inst.box.size} points, cap is {cap}",
            required=inst.box.size,
        )
    p = inst.p
    moduli = [p**lev for lev in inst.levels]
    polys = inst.polys
    weights = inst.weights
    v_size = 0
    total = 0
    for a in inst.box.points():
        term = 1
        for f, q, w in zip(polys, moduli, weights):
            val = f(a)
            if val % q:
                term = None
                break
            term *= eval_iv(w, val // q)
        if term is not None:
            v_size += 1
            total += term
    return v_size, total


def verify_axkatz(inst: AxKatzInstance, cap: int = DEFAULT_BOX_CAP) -> CongruenceReport:
    margin = hypothesis_margin(inst)
    v_size, total = box_weighted_count(inst, cap=cap)
    params = {
        "p": inst.p,
        "n": inst.n_vars,
        "polys": [f.to_string() for f in inst.polys],
        "levels": list(inst.levels),
        "weights": [format_poly(w.monomial_coeffs()) for w in inst.weights],
        "V_size": v_size,
        "N": total,
    }
    return make_report(
        "axkatz-box", params, margin, total, inst.p,
        witness_on_failure={"V_size": v_size, "N": total},
    )
