"""Complete residue systems mod p and Hensel lifting.

A complete system of residues mod p is any set of p integers that are
pairwise distinct mod p.  build_unit_system produces the canonical system
in [0, p**m - 1] whose nonzero-class elements x satisfy
x**(p-1) == 1 mod p**m (the zero-class representative is literally 0),
obtained by iterated Hensel lifting of the roots of X**(p-1) - 1.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exactmod import check_prime

# univariate integer polynomials are coefficient lists, ascending degree


def poly_eval(coeffs, x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(coeffs) -> list:
    return [i * c for i, c in enumerate(coeffs)][1:]


@dataclass(frozen=True)
class ResidueSystem:
    """A complete system of residues modulo p.

    m is the lifting level when the system was built to live inside
    [0, p**m - 1]; ad-hoc systems (arbitrary representatives) carry
    m = None.
    """

    p: int
    m: int | None
    elements: tuple

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "elements", tuple(int(x) for x in self.elements))
        if not validate_system(self.elements, self.p):
            raise ValueError("not a complete system of residues mod p")
        if self.m is not None:
            if self.m < 1:
                raise ValueError("level must be >= 1")
            hi = self.p ** self.m
            if any(not (0 <= x < hi) for x in self.elements):
                raise ValueError("elements out of range for declared level")

    @classmethod
    def from_elements(cls, p: int, elements) -> "ResidueSystem":
        return cls(p, None, tuple(elements))


def validate_system(candidates, p: int) -> bool:
    """True iff the list has exactly p entries, pairwise distinct mod p."""
    check_prime(p)
    elems = list(candidates)
    return len(elems) == p and len({x % p for x in elems}) == p


def hensel_lift(f, x: int, p: int, m: int, e: int) -> int:
    """Lift a simple root of f mod p**m to the unique root mod p**(m+e).

    Requires f(x) == 0 mod p**m and f'(x) != 0 mod p, with step e in
    [1, m].  Returns y in [0, p**(m+e) - 1] with y == x mod p**m.
    """
    check_prime(p)
    if m < 1 or not 1 <= e <= m:
        raise ValueError("need m >= 1 and 1 <= e <= m")
    pm = p**m
    target = pm * p**e
    fx = poly_eval(f, x)
    if fx % pm != 0:
        raise ValueError("not a root at level m")
    dfx = poly_eval(poly_derivative(f), x)
    if dfx % p == 0:
        raise ValueError("singular root, lift not unique")
    u = pow(dfx, -1, p**e)
    y = (x - fx * u) % target
    assert y % pm == x % pm
    assert poly_eval(f, y) % target == 0
    return y


def build_unit_system(p: int, m: int) -> ResidueSystem:
    """Canonical system in [0, p**m - 1]: 0 plus the lifted roots of
    X**(p-1) - 1, each congruent to its starting residue mod p."""
    check_prime(p)
    if m < 1:
        raise ValueError("level must be >= 1")
    f = [-1] + [0] * (p - 2) + [1]  # X**(p-1) - 1
    elements = [0]
    for r in range(1, p):
        x, level = r, 1
        while level < m:
            e = min(level, m - level)
            x = hensel_lift(f, x, p, level, e)
            level += e
        elements.append(x % p**m)
    return ResidueSystem(p, m, tuple(sorted(elements)))
