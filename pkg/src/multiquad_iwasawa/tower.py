"""Decomposition of odd primes in the layers Q_n of the cyclotomic
Z_2-extension of Q and in quadratic / multi-quadratic extensions of them."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd
from typing import Iterable, List, Sequence, Tuple

from .arith import f2n, factorize, is_prime, is_squarefree, legendre, sqf, v2


class Behavior(str, enum.Enum):
    SPLIT = "Split"
    INERT = "Inert"
    RAMIFIED = "Ramified"
    # reserved for compositum reports; never produced here
    MIXED = "Mixed"


@dataclass(frozen=True)
class SplittingReport:
    prime: int
    level: int
    e: int
    f: int
    g: int
    behavior: Behavior | None = None

    def to_dict(self) -> dict:
        return {
            "prime": self.prime,
            "level": self.level,
            "e": self.e,
            "f": self.f,
            "g": self.g,
            "behavior": None if self.behavior is None else self.behavior.value,
        }


def _require_odd_prime(p: int) -> None:
    if p == 2:
        raise ValueError("p = 2 is excluded: only odd primes are supported")
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")


def _v(p: int) -> int:
    return v2(p * p - 1)


def residual_degree_Qn(p: int, n: int) -> int:
    _require_odd_prime(p)
    if n < 0:
        raise ValueError("level must be non-negative")
    return f2n(p, n + 2)


def num_primes_Qn(p: int, n: int) -> int:
    _require_odd_prime(p)
    if n < 0:
        raise ValueError("level must be non-negative")
    v = _v(p)
    if n + 2 < v:
        return 1 << n
    return 1 << (v - 3)


def level_report(p: int, n: int) -> SplittingReport:
    return SplittingReport(p, n, 1, residual_degree_Qn(p, n), num_primes_Qn(p, n))


def _subgroup(gens: Iterable[int], m: int) -> set:
    """Closure of the generators in (Z/mZ)^x."""
    H = {1 % m}
    frontier = [1 % m]
    gens = [g % m for g in gens]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % m
            if y not in H:
                H.add(y)
                frontier.append(y)
    return H


def frobenius_degree_subfield(p: int, m: int, H_generators: Sequence[int]) -> int:
    """Residual degree of p in the subfield of Q(zeta_m) fixed by H.

    Equals min{f >= 1 : p**f mod m in H}.
    """
    if m < 1:
        raise ValueError("modulus must be positive")
    if gcd(p, m) != 1:
        raise ValueError("ramified case out of scope: p divides the modulus")
    for g in H_generators:
        if gcd(g, m) != 1:
            raise ValueError(f"generator {g} is not a unit mod {m}")
    H = _subgroup(H_generators, m)
    x = p % m
    f = 1
    while x not in H:
        x = x * p % m
        f += 1
    return f


def splitting_Qn_quadratic(p: int, d: int, n: int) -> Behavior:
    """Behaviour of the primes of Q_n above p in Q_n(sqrt d)/Q_n."""
    _require_odd_prime(p)
    if not is_squarefree(d):
        raise ValueError(f"{d} is not squarefree")
    if n < 0:
        raise ValueError("level must be non-negative")
    if d % p == 0:
        return Behavior.RAMIFIED
    if legendre(d, p) == 1:
        return Behavior.SPLIT
    # The residue field of Q_n at p is F_q with q = p^f, f = f2n(p, n + 2).
    # Once f is even every element of F_p is a square in F_q, which happens
    # from n = v2(p^2 - 1) - 2 on.
    if n + 2 < _v(p):
        return Behavior.INERT
    return Behavior.SPLIT


def quadratic_step_report(p: int, d: int, n: int) -> SplittingReport:
    """Decomposition of p in Q_n(sqrt d)/Q, d != 1 a square class."""
    base = level_report(p, n)
    beh = splitting_Qn_quadratic(p, d, n)
    if d == 1:
        return SplittingReport(p, n, 1, base.f, base.g, Behavior.SPLIT)
    if beh is Behavior.RAMIFIED:
        return SplittingReport(p, n, 2, base.f, base.g, beh)
    if beh is Behavior.INERT:
        return SplittingReport(p, n, 1, 2 * base.f, base.g, beh)
    return SplittingReport(p, n, 1, base.f, 2 * base.g, beh)


def splits_completely_Qinf_multiquad(p: int, radicands: Sequence[int]) -> bool:
    """Whether the primes above p split completely in Q_inf(sqrt d_i)/Q_inf."""
    _require_odd_prime(p)
    return all(d % p != 0 for d in radicands)


def _odd_primes(n: int) -> List[int]:
    return [q for q in factorize(abs(n)).primes() if q != 2]


def count_si_fi(i: int, d_list: Sequence[int], d: int) -> Tuple[int, int]:
    """Place counts (s_i, f_i) over Q for K = Q(sqrt d_1, ..., sqrt d_r, sqrt -d).

    s_i counts places over p | gcd(d_i, sqf(t_{i+1})), f_i places over p | d_i,
    both restricted to p not dividing 2*d_1*...*d_{i-1};
    t_{i+1} = d_{i+1} * ... * d_r * d.
    """
    r = len(d_list)
    if not 1 <= i <= r:
        raise ValueError(f"index {i} out of range 1..{r}")
    for x in list(d_list) + [d]:
        if x < 1 or not is_squarefree(x):
            raise ValueError(f"radicand {x} must be a positive squarefree integer")
    earlier = 2
    for t in d_list[: i - 1]:
        earlier *= t
    t_next = d
    for t in d_list[i:]:
        t_next *= t
    core = sqf(t_next)
    s = f = 0
    for p in _odd_primes(d_list[i - 1]):
        if earlier % p == 0:
            continue
        f += 1 << (_v(p) + i - 4)
        if core % p == 0:
            s += 1 << (_v(p) + i - 3)
    return s, f
