"""Class number parity classifiers for multi-quadratic fields.

Real fields F of odd conductor are matched against six shapes (a-f) of
fields whose cyclotomic Z_2 invariants all vanish. A real field
L containing sqrt 2 has odd class number iff L = F(sqrt 2) for such an F.
Imaginary fields containing sqrt 2 are matched against the four odd
families Q(sqrt 2, sqrt -p), Q(sqrt 2, sqrt -1, sqrt -p),
Q(sqrt 2, sqrt -p, sqrt -q), Q(sqrt 2, sqrt -1).

Quartic symbols follow arith: (a/p)_4 is the sign of a^((p-1)/4) mod p and
(m/2)_4 = (-1)^((m-1)/8).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Dict, List, Optional, Tuple

from .arith import legendre, quartic_symbol, quartic_symbol_mod2
from .errors import HypothesisError
from .field import (
    MultiQuadField,
    conductor_two_part_exceeds_4,
    kernel,
    narrow_genus_field,
)

CONFLICT_NOTE = (
    "another published result claims 2 | h(K) for every Q(sqrt 2, sqrt -p, sqrt -q) "
    "with p = q = 3 mod 8; the Odd verdict follows the classification implemented "
    "here, which agrees with h(Q(sqrt 2, sqrt -11, sqrt 33)) = 1"
)


class Verdict(str, enum.Enum):
    ODD = "Odd"
    EVEN = "Even"
    EVEN_NOT_DIV4 = "EvenNotDiv4"
    OUT_OF_SCOPE = "OutOfScope"


@dataclass
class ParityVerdict:
    verdict: Verdict
    matched_case: Optional[str] = None
    witness: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        has_case = self.matched_case is not None
        if has_case != (self.verdict in (Verdict.ODD, Verdict.EVEN_NOT_DIV4)):
            raise ValueError("matched_case must be set exactly for Odd / EvenNotDiv4")

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "matched_case": self.matched_case,
            "witness": self.witness,
        }


def _f(*rads: int) -> MultiQuadField:
    return MultiQuadField.from_classes(list(rads))


def _q(a: int, p: int) -> int:
    return quartic_symbol(a, p)


def _cond_a(p: int) -> Optional[int]:
    if p % 4 == 3:
        return 1
    if p % 8 == 5:
        return 2
    if p % 8 == 1 and _q(2, p) * quartic_symbol_mod2(p) == -1:
        return 3
    return None


def _cond_b(p: int, q: int) -> Optional[int]:
    return 1 if p % 4 == 3 and q % 8 == 3 else None


def _cond_c(p: int, q: int) -> Optional[int]:
    a, b = p % 8, q % 8
    if a == 3 and b == 3:
        return 1
    if a == 3 and b == 5:
        return 2
    if a == 3 and b == 7:
        return 3
    if a == 5 and b == 7:
        return 4
    if a == 5 and b == 1:
        if legendre(q, p) == -1 and _q(2, q) * quartic_symbol_mod2(q) == -1:
            return 5
        return None
    if a == 5 and b == 5:
        if legendre(q, p) == 1:
            return 6 if _q(q, p) * _q(p, q) == -1 else None
        # (2q/p) = (2p/q) = 1 here since (2/p) = (q/p) = -1
        if _q(2 * q, p) * _q(2 * p, q) * quartic_symbol_mod2(p * q) == 1:
            return 7
    return None


def _cond_d(p: int, q: int, l: int) -> Optional[int]:
    a, b, c = p % 8, q % 8, l % 8
    if a == 3 and b == 3 and c == 5 and legendre(p * q, l) == -1:
        return 1
    if a == 3 and b == 3 and c == 7 and legendre(p * q, l) == -1:
        return 2
    if a == 3 and b == 5 and c == 7 and legendre(q, l) == -1:
        return 3
    return None


def _cond_e(p: int, q: int, l: int) -> Optional[int]:
    a, b, c = p % 8, q % 8, l % 8
    if a == 3 and b == 3 and c == 5 and legendre(p * q, l) == -1:
        return 1
    if a == 3 and b == 7 and c == 5 and legendre(l, q) == -1:
        return 2
    return None


def _cond_f(p: int, q: int, l: int) -> Optional[int]:
    if p % 8 == 3 and q % 8 == 3 and l % 8 == 7 and legendre(p * q, l) == -1:
        return 1
    return None


# (label, number of primes, shape of the field, conditions)
_YAMAMOTO: List[Tuple[str, int, Callable[..., MultiQuadField], Callable[..., Optional[int]]]] = [
    ("a", 1, lambda p: _f(p), _cond_a),
    ("b", 2, lambda p, q: _f(p * q), _cond_b),
    ("c", 2, lambda p, q: _f(p, q), _cond_c),
    ("d", 3, lambda p, q, l: _f(p, q, l), _cond_d),
    ("e", 3, lambda p, q, l: _f(p * q, l), _cond_e),
    ("f", 3, lambda p, q, l: _f(p * q, p * l), _cond_f),
]


def _match_yamamoto(F: MultiQuadField) -> Optional[Tuple[str, dict]]:
    if not F.is_real:
        raise ValueError(f"{F} is not real")
    if conductor_two_part_exceeds_4(F):
        raise HypothesisError("hypothesis 8 does not divide the conductor violated")
    primes = F.ramified_odd_primes()
    for label, k, shape, cond in _YAMAMOTO:
        if len(primes) != k:
            continue
        for perm in permutations(primes):
            if shape(*perm) != F:
                continue
            sub = cond(*perm)
            if sub is None:
                continue
            if narrow_genus_field(F).genus != F:
                continue
            names = ("p", "q", "l")[:k]
            witness = {
                "primes": dict(zip(names, perm)),
                "residues_mod_8": {n: x % 8 for n, x in zip(names, perm)},
                "condition": sub,
            }
            return f"real-{label}", witness
    return None


def yamamoto_case(F: MultiQuadField) -> Optional[str]:
    """Label of the first matching case a-f for a real field of odd conductor."""
    hit = _match_yamamoto(F)
    return None if hit is None else hit[0]


def real_parity_with_sqrt2(L: MultiQuadField) -> ParityVerdict:
    if not L.is_real:
        raise ValueError(f"{L} is not real")
    if not L.contains_class(2):
        raise ValueError(f"sqrt 2 is not in {L}")
    F = kernel(L, 2)
    base = {"F": F.to_text()}
    if F.rank == 0:
        # h(Q(sqrt 2)) = 1
        return ParityVerdict(Verdict.ODD, "real-trivial", base)
    hit = _match_yamamoto(F)
    if hit is None:
        return ParityVerdict(Verdict.EVEN, None, base)
    label, witness = hit
    return ParityVerdict(Verdict.ODD, label, {**base, **witness})


def imag_parity_with_sqrt2(K: MultiQuadField) -> ParityVerdict:
    if K.is_real:
        raise ValueError(f"{K} is not imaginary")
    if not K.contains_class(2):
        raise ValueError(f"sqrt 2 is not in {K}")
    E = kernel(K, 2)
    primes = E.ramified_odd_primes()
    witness: Dict[str, object] = {
        "odd_part": E.to_text(),
        "residues_mod_8": {str(p): p % 8 for p in primes},
    }
    if E == _f(-1):
        return ParityVerdict(Verdict.ODD, "imag-4", witness)
    if len(primes) == 1:
        (p,) = primes
        if E == _f(-p):
            if p % 8 == 3:
                return ParityVerdict(Verdict.ODD, "imag-1", witness)
            if p % 8 == 5:
                return ParityVerdict(Verdict.EVEN_NOT_DIV4, "imag-p5", witness)
        elif E == _f(-1, -p) and p % 8 in (3, 5):
            return ParityVerdict(Verdict.ODD, "imag-2", witness)
    elif len(primes) == 2:
        p, q = primes
        if E == _f(-p, -q) and p % 8 == 3 and q % 8 == 3:
            witness["note"] = CONFLICT_NOTE
            return ParityVerdict(Verdict.ODD, "imag-3", witness)
    return ParityVerdict(Verdict.EVEN, None, witness)


def classify_parity(K: MultiQuadField) -> ParityVerdict:
    """Dispatch on signature; fields without sqrt 2 are out of scope."""
    if not K.contains_class(2):
        return ParityVerdict(
            Verdict.OUT_OF_SCOPE, None, {"reason": "sqrt 2 is not in the field"}
        )
    if K.is_real:
        return real_parity_with_sqrt2(K)
    return imag_parity_with_sqrt2(K)


__all__ = [
    "ParityVerdict",
    "Verdict",
    "classify_parity",
    "imag_parity_with_sqrt2",
    "real_parity_with_sqrt2",
    "yamamoto_case",
]
