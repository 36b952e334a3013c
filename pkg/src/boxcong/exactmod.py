"""Exact integer and rational primitives.

Everything here is arbitrary precision: valuations, totients of prime
powers, binomial coefficients at arbitrary integer arguments, Legendre
factorial valuations, and power-sum residues.  The convention 0**0 = 1 is
used throughout the package.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


def is_prime(n: int) -> bool:
    """Deterministic trial division, intended for desk-scale primes."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d <= isqrt(n):
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


@dataclass(frozen=True)
class PrimePower:
    """A prime power p**s with s >= 0."""

    p: int
    s: int

    def __post_init__(self):
        check_prime(self.p)
        if self.s < 0:
            raise ValueError("exponent must be >= 0")

    @property
    def value(self) -> int:
        return self.p ** self.s


def vp(x, p: int) -> int:
    """p-adic valuation of a nonzero integer or Fraction.

    For fractions the valuation of the numerator minus that of the
    denominator; may be negative.
    """
    check_prime(p)
    if x == 0:
        raise ValueError("valuation of zero undefined")
    if isinstance(x, Fraction):
        return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)
    return _vp_int(int(x), p)


def _vp_int(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def euler_phi_pp(q: PrimePower) -> int:
    """Euler totient of a prime power: 1 at s = 0, else (p-1) * p**(s-1)."""
    if q.s == 0:
        return 1
    return (q.p - 1) * q.p ** (q.s - 1)


def phi_ps(p: int, s: int) -> int:
    """Shorthand for euler_phi_pp(PrimePower(p, s))."""
    if s == 0:
        return 1
    return (p - 1) * p ** (s - 1)


def binom_int(x: int, n: int) -> int:
    """Binomial coefficient x over n for any integer x and n >= 0.

    Computed as the falling factorial x(x-1)...(x-n+1) divided by n!; the
    division is always exact.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    num = 1
    for i in range(n):
        num *= x - i
    den = 1
    for i in range(2, n + 1):
        den *= i
    return num // den


def vp_factorial(n: int, p: int) -> int:
    """Valuation of n! at p via the Legendre sum of floor(n / p**i)."""
    check_prime(p)
    if n < 0:
        raise ValueError("n must be >= 0")
    total = 0
    pk = p
    while pk <= n:
        total += n // pk
        pk *= p
    return total


def sum_of_powers_mod(p: int, m: int) -> int:
    """Sum of x**m over x in [0, p-1], reduced mod p, with 0**0 = 1.

    Equals 0 when (p-1) does not divide m and also at m = 0 (the direct
    sum is then p, which vanishes mod p); equals p-1 when (p-1) | m with
    m > 0.
    """
    check_prime(p)
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return 0  # p terms each equal to 1 under 0**0 = 1
    if m % (p - 1) == 0:
        return p - 1
    return 0
