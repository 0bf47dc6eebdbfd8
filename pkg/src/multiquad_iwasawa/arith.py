"""Exact integer primitives: valuations, factorization, residue symbols and
the closed-form orders of odd primes modulo powers of two."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import sympy


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: Tuple[Tuple[int, int], ...]

    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0


def v2(n: int) -> int:
    """Largest k with 2**k dividing n."""
    if n == 0:
        raise ValueError("valuation of zero")
    n = abs(n)
    return (n & -n).bit_length() - 1


def vp(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    if p == 2:
        return v2(n)
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def is_prime(n: int) -> bool:
    return n >= 2 and bool(sympy.isprime(n))


_TRIAL_BOUND = 1 << 14
_SMALL_PRIMES = tuple(int(p) for p in sympy.primerange(2, _TRIAL_BOUND))


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> Factorization:
    """Trial division by primes below 2^14, sympy for whatever is left."""
    if n < 1:
        raise ValueError(f"factorize expects a positive integer, got {n}")
    fac = {}
    m = n
    for p in _SMALL_PRIMES:
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            fac[p] = e
    if m > 1:
        if m < _TRIAL_BOUND * _TRIAL_BOUND:
            fac[m] = fac.get(m, 0) + 1
        else:
            for q, e in sympy.factorint(m).items():
                fac[int(q)] = fac.get(int(q), 0) + int(e)
    return Factorization(n, tuple(sorted(fac.items())))


def sqf(n: int) -> int:
    """Product of the primes dividing n to an odd power."""
    out = 1
    for p, e in factorize(n).factors:
        if e & 1:
            out *= p
    return out


def signed_sqf(n: int) -> int:
    """Squarefree representative of the square class of a nonzero integer."""
    if n == 0:
        raise ValueError("zero has no square class")
    return sqf(n) if n > 0 else -sqf(-n)


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for _, e in factorize(abs(n)).factors)


def _require_odd_prime(p: int) -> None:
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")


def legendre(a: int, p: int) -> int:
    _require_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def quartic_symbol(a: int, p: int) -> int:
    """Rational quartic residue symbol (a/p)_4 for p = 1 mod 4 and (a/p) = 1.

    Convention: the sign of a**((p-1)/4) mod p.
    """
    _require_odd_prime(p)
    if p % 4 != 1:
        raise ValueError(f"quartic symbol undefined: {p} is not 1 mod 4")
    if legendre(a, p) != 1:
        raise ValueError(f"quartic symbol undefined: ({a}/{p}) != 1")
    r = pow(a % p, (p - 1) // 4, p)
    return 1 if r == 1 else -1


def quartic_symbol_mod2(m: int) -> int:
    """(m/2)_4 := (-1)**((m-1)/8) for m = 1 mod 8."""
    if m % 8 != 1:
        raise ValueError(f"quartic symbol at 2 undefined: {m} is not 1 mod 8")
    return -1 if ((m - 1) // 8) & 1 else 1


def _check_odd(p: int, n: int) -> None:
    if p % 2 == 0:
        raise ValueError(f"{p} is not odd")
    if n < 1:
        raise ValueError(f"level exponent must be >= 1, got {n}")


def order_mod_2pow(p: int, n: int) -> int:
    """Multiplicative order of p modulo 2**n (three-branch closed form)."""
    _check_odd(p, n)
    a = v2(p - 1) if p != 1 else n
    b = v2(p * p - 1) if p * p != 1 else n
    if n <= a:
        return 1
    if n <= b:
        return 2
    return 1 << (n - b + 1)


def f2n(p: int, n: int) -> int:
    """min{f >= 1 : p**f = +-1 mod 2**n} (two-branch closed form)."""
    _check_odd(p, n)
    b = v2(p * p - 1) if p * p != 1 else n + 1
    if n < b:
        return 1
    return 1 << (n - b + 1)
