"""Univariate integer-valued polynomials in the binomial basis.

A polynomial is stored as integer coefficients (a_0, ..., a_d) meaning
sum of a_n * binom(X, n).  Such polynomials are exactly the rational
polynomials taking integer values on all of Z, and the coefficients are
recovered as iterated finite differences at 0 (Newton expansion).

Monomial-basis rational polynomials exist only at the parsing boundary;
see parse_poly / format_poly.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .exactmod import binom_int


@dataclass(frozen=True)
class IntValuedPoly:
    """Integer-valued polynomial as binomial-basis coefficients.

    coeffs[n] multiplies binom(X, n); the stored tuple carries no trailing
    zeros, so degree == len(coeffs) - 1, with the zero polynomial at -1.
    """

    coeffs: tuple = ()

    def __post_init__(self):
        trimmed = list(self.coeffs)
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        object.__setattr__(self, "coeffs", tuple(int(c) for c in trimmed))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, c: int) -> "IntValuedPoly":
        return cls((c,))

    @classmethod
    def binomial(cls, n: int) -> "IntValuedPoly":
        """The basis polynomial binom(X, n)."""
        return cls((0,) * n + (1,))

    def __call__(self, x: int) -> int:
        return eval_iv(self, x)

    def monomial_coeffs(self) -> list:
        """Expand into monomial-basis Fraction coefficients, ascending."""
        out = [Fraction(0)] * (len(self.coeffs) or 1)
        # binom(X, n) = X(X-1)...(X-n+1) / n!, built up by one factor at a time
        basis = [Fraction(1)]
        for n, a in enumerate(self.coeffs):
            if n > 0:
                shifted = [Fraction(0)] + basis
                basis = [
                    (shifted[i] - (n - 1) * (basis[i] if i < len(basis) else 0)) / n
                    for i in range(len(shifted))
                ]
            for i, b in enumerate(basis):
                out[i] += a * b
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out


@dataclass(frozen=True)
class DiffTable:
    """Consecutive values f(0), ..., f(d) of an integer map, optionally periodic.

    When period P is set the table is the P-periodic extension, so the
    stored values must satisfy values[i] == values[i % P].
    """

    values: tuple
    period: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.period is not None:
            if self.period < 1:
                raise ValueError("period must be positive")
            if len(self.values) < self.period:
                raise ValueError("table must cover at least one full period")
            for i, v in enumerate(self.values):
                if v != self.values[i % self.period]:
                    raise ValueError("values do not match the declared period")

    def __len__(self) -> int:
        return len(self.values)

    def at(self, x: int) -> int:
        if self.period is not None:
            return self.values[x % self.period]
        if 0 <= x < len(self.values):
            return self.values[x]
        raise IndexError(f"table has no value at {x}")


def finite_difference(t: DiffTable) -> DiffTable:
    """First differences f(x+1) - f(x); one entry shorter, or same length
    via wraparound when the table is periodic."""
    if t.period is not None:
        vals = [t.at(i + 1) - t.at(i) for i in range(len(t))]
        return DiffTable(tuple(vals), period=t.period)
    if len(t) < 2:
        raise ValueError("need at least two values to difference")
    vals = [t.values[i + 1] - t.values[i] for i in range(len(t) - 1)]
    return DiffTable(tuple(vals))


def newton_coeffs(t: DiffTable) -> IntValuedPoly:
    """Iterated differences at 0: coefficients reproducing t on [0, d]."""
    if len(t) == 0:
        raise ValueError("empty table")
    row = list(t.values)
    coeffs = [row[0]]
    while len(row) > 1:
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
        coeffs.append(row[0])
    return IntValuedPoly(tuple(coeffs))


def eval_iv(p: IntValuedPoly, x: int) -> int:
    total = 0
    b = 1  # binom(x, n), updated incrementally
    for n, a in enumerate(p.coeffs):
        if n > 0:
            b = b * (x - n + 1) // n
        total += a * b
    return total


def to_binomial_basis(monomial_coeffs) -> IntValuedPoly:
    """Convert a rational monomial-basis polynomial, requiring integer values.

    Decided by exact evaluation at 0..deg: integer values there force all
    Newton coefficients integral, which is also sufficient.  The two forms
    are then re-compared coefficient by coefficient as rational polynomials.
    """
    coeffs = [Fraction(c) for c in monomial_coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return IntValuedPoly(())
    deg = len(coeffs) - 1
    values = []
    for x in range(deg + 1):
        v = sum(c * Fraction(x) ** i for i, c in enumerate(coeffs))
        if v.denominator != 1:
            raise ValueError(f"not integer-valued: value {v} at x={x}")
        values.append(int(v))
    poly = newton_coeffs(DiffTable(tuple(values)))
    back = poly.monomial_coeffs()
    back += [Fraction(0)] * (len(coeffs) - len(back))
    if [Fraction(c) for c in back[: len(coeffs)]] != coeffs:
        raise AssertionError("binomial-basis conversion disagrees with input")
    return poly


_TERM_RE = re.compile(
    r"""^
    (?:
        (?P<coeff>\d+(?:/\d+)?)            # coefficient, maybe a fraction
        (?:\*(?P<var1>x(?:\^(?P<exp1>\d+))?))?   # optional *x^k
      |
        (?P<var2>x(?:\^(?P<exp2>\d+))?)    # bare x^k
    )
    $""",
    re.VERBOSE,
)


def parse_poly(text: str) -> list:
    """Parse a univariate monomial-basis polynomial.

    Grammar: terms joined by + or -, each a signed integer or fraction
    coefficient, optionally times x with a ^ exponent, e.g.
    ``1/2*x^2 + 1/2*x`` or ``x^3 - 2``.  Returns ascending Fraction
    coefficients.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    # split into signed terms
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

    coeffs: dict[int, Fraction] = {}
    for sgn, term in terms:
        m = _TERM_RE.match(term)
        if not m:
            raise ValueError(f"cannot parse term {term!r} in {text!r}")
        if m.group("coeff") is not None:
            c = Fraction(m.group("coeff"))
            if m.group("var1") is not None:
                k = int(m.group("exp1") or 1)
            else:
                k = 0
        else:
            c = Fraction(1)
            k = int(m.group("exp2") or 1)
        coeffs[k] = coeffs.get(k, Fraction(0)) + sgn * c
    deg = max(coeffs)
    return [coeffs.get(i, Fraction(0)) for i in range(deg + 1)]


def format_poly(monomial_coeffs) -> str:
    """Canonical printer, descending powers; round-trips through parse_poly."""
    coeffs = [Fraction(c) for c in monomial_coeffs]
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            xpow = "x" if k == 1 else f"x^{k}"
            body = xpow if mag == 1 else f"{mag}*{xpow}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts) if parts else "0"


def parse_weight(text: str) -> IntValuedPoly:
    """Parse a weight polynomial and convert to the binomial basis."""
    return to_binomial_basis(parse_poly(text))
