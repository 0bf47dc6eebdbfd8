"""Multi-quadratic fields as finite subgroups of Q^x / (Q^x)^2.

A square class is stored as its signed squarefree representative. Its F_2
coordinates ("atoms") are -1, 2 and the odd primes dividing it, ordered
-1 < 2 < 3 < 5 < ...; the group law is the product reduced mod squares.
A field is kept as the reduced row-echelon basis of its subgroup, where the
pivot of each row is its smallest atom. That basis is unique, so two fields
are equal iff their bases are.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import FrozenSet, Iterator, List, Sequence, Tuple

from .arith import factorize, is_squarefree, signed_sqf


def mul(a: int, b: int) -> int:
    """Product of two square classes, as a signed squarefree integer."""
    g = gcd(a, b)
    return (a // g) * (b // g)


def atoms(x: int) -> FrozenSet[int]:
    s = set(factorize(abs(x)).primes())
    if x < 0:
        s.add(-1)
    return frozenset(s)


@lru_cache(maxsize=1 << 16)
def pivot(x: int) -> int:
    if x == 1:
        raise ValueError("the trivial class has no pivot")
    if x < 0:
        return -1
    if x % 2 == 0:
        return 2
    return factorize(x).primes()[0]


def has_atom(x: int, a: int) -> bool:
    if a == -1:
        return x < 0
    return x % a == 0


@dataclass(frozen=True)
class SquareClass:
    value: int

    def __post_init__(self) -> None:
        if not is_squarefree(self.value):
            raise ValueError(f"{self.value} is not a squarefree integer")

    @classmethod
    def of(cls, n: int) -> "SquareClass":
        return cls(signed_sqf(n))

    @property
    def sign(self) -> int:
        return int(self.value < 0)

    @property
    def two(self) -> int:
        return int(self.value % 2 == 0)

    @property
    def odd_primes(self) -> FrozenSet[int]:
        return frozenset(p for p in factorize(abs(self.value)).primes() if p != 2)

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return SquareClass(mul(self.value, other.value))

    def __str__(self) -> str:
        return str(self.value)


def _reduce(x: int, rows: Sequence[int]) -> int:
    for r in rows:
        if has_atom(x, pivot(r)):
            x = mul(x, r)
    return x


def _echelon(gens: Sequence[int]) -> Tuple[int, ...]:
    rows: List[int] = []
    for g in gens:
        x = _reduce(g, rows)
        if x == 1:
            continue
        pv = pivot(x)
        rows = [mul(r, x) if has_atom(r, pv) else r for r in rows]
        rows.append(x)
    rows.sort(key=pivot)
    return tuple(rows)


@dataclass(frozen=True)
class MultiQuadField:
    """Q(sqrt b for b in basis); ``basis`` is canonical (reduced echelon)."""

    basis: Tuple[int, ...] = ()

    @classmethod
    def from_classes(cls, gens: Sequence[int]) -> "MultiQuadField":
        return cls(_echelon([signed_sqf(g) for g in gens]))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def degree(self) -> int:
        return 1 << len(self.basis)

    @property
    def is_real(self) -> bool:
        # only the row pivoting on -1 can carry the sign coordinate
        return all(b > 0 for b in self.basis)

    @property
    def is_imaginary(self) -> bool:
        return not self.is_real

    def elements(self) -> Iterator[int]:
        elems = [1]
        for b in self.basis:
            elems += [mul(e, b) for e in elems]
        return iter(sorted(elems, key=lambda v: (abs(v), v)))

    def contains_class(self, x: int) -> bool:
        return _reduce(x, self.basis) == 1

    def ramified_odd_primes(self) -> Tuple[int, ...]:
        ps = set()
        for b in self.basis:
            ps.update(p for p in factorize(abs(b)).primes() if p != 2)
        return tuple(sorted(ps))

    def adjoin(self, *gens: int) -> "MultiQuadField":
        return MultiQuadField.from_classes(list(self.basis) + list(gens))

    def contains_field(self, other: "MultiQuadField") -> bool:
        return all(self.contains_class(b) for b in other.basis)

    def to_text(self) -> str:
        return ",".join(str(b) for b in self.basis) if self.basis else "1"

    @classmethod
    def from_text(cls, text: str) -> "MultiQuadField":
        return cls.from_classes(parse_radicands(text))

    def __str__(self) -> str:
        if not self.basis:
            return "Q"
        return "Q(" + ", ".join(f"sqrt({b})" for b in self.basis) + ")"


def parse_radicands(text: str) -> List[int]:
    """Comma-separated nonzero integers, each reduced to its square class."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            n = int(tok)
        except ValueError:
            raise ValueError(f"malformed radicand {tok!r}") from None
        if n == 0:
            raise ValueError("radicand 0 is not allowed")
        out.append(signed_sqf(n))
    return out


def field_from_radicands(rads: Sequence[int]) -> MultiQuadField:
    for d in rads:
        if d == 0 or not is_squarefree(d):
            raise ValueError(f"radicand {d} is not a nonzero squarefree integer")
    return MultiQuadField(_echelon(list(rads)))


def contains_sqrt(K: MultiQuadField, d: int) -> bool:
    if d == 0:
        raise ValueError("sqrt(0) is not a square class")
    return K.contains_class(signed_sqf(d))


def kernel(K: MultiQuadField, atom: int) -> MultiQuadField:
    """Subfield fixed by the coordinate functional of one atom (-1, 2 or p)."""
    hit = [b for b in K.basis if has_atom(b, atom)]
    if not hit:
        return K
    r0 = hit[0]
    rows = [b for b in K.basis if not has_atom(b, atom)]
    rows += [mul(b, r0) for b in hit[1:]]
    return MultiQuadField(_echelon(rows))


def maximal_real_subfield(K: MultiQuadField) -> MultiQuadField:
    return kernel(K, -1)


@dataclass(frozen=True)
class Presentation:
    """K = Q(sqrt d_1, ..., sqrt d_r, sqrt -d) with d_i, d > 0.

    ``theta`` is 1 iff sqrt 2 lies in K; then d_list[0] == 2 and the remaining
    radicands and d are odd. ``admissible`` reports whether some odd prime
    divides d_r but not d * d_1 * ... * d_{r-1} (for theta = 1 the condition is
    checked on the list with 2 removed; an empty list is vacuously fine).
    """

    d_list: Tuple[int, ...]
    d: int
    theta: int
    admissible: bool

    @property
    def r(self) -> int:
        return len(self.d_list)


def _make_admissible(rest: List[int], d: int) -> Tuple[List[int], int, bool]:
    if not rest:
        return rest, d, True
    # plain reordering first, given order preferred
    for k in reversed(range(len(rest))):
        cand = rest[:k] + rest[k + 1:] + [rest[k]]
        others = d
        for t in cand[:-1]:
            others *= t
        if any(others % p for p in factorize(cand[-1]).primes() if p != 2):
            return cand, d, True
    primes = sorted({p for t in rest for p in factorize(t).primes() if p != 2})
    if not primes:
        return rest, d, False
    p = primes[0]
    k = min(i for i, t in enumerate(rest) if t % p == 0)
    last = rest[k]
    others = [mul(t, last) if t % p == 0 else t for i, t in enumerate(rest) if i != k]
    if d % p == 0:
        d = mul(d, last)
    return others + [last], d, True


def canonical_presentation(K: MultiQuadField) -> Presentation:
    if K.is_real:
        raise ValueError(f"{K} is real; a CM presentation needs an imaginary field")
    Kp = maximal_real_subfield(K)
    neg = next(b for b in K.basis if b < 0)
    theta = int(K.contains_class(2))
    if theta:
        odd_part = kernel(Kp, 2)
        rest = list(odd_part.basis)
        if neg % 2 == 0:
            neg = mul(neg, 2)
        rest, d, ok = _make_admissible(rest, -neg)
        return Presentation(tuple([2] + rest), d, 1, ok)
    rest, d, ok = _make_admissible(list(Kp.basis), -neg)
    return Presentation(tuple(rest), d, 0, ok)


def field_of_presentation(pres: Presentation) -> MultiQuadField:
    return MultiQuadField.from_classes(list(pres.d_list) + [-pres.d])


def conductor_two_part_exceeds_4(F: MultiQuadField) -> bool:
    """True iff 8 divides the conductor of the real field F."""
    if not F.is_real:
        raise ValueError(f"{F} is not real")
    return any(b % 2 == 0 for b in F.basis)


def star(p: int) -> int:
    """p* = (-1)**((p-1)/2) * p."""
    return p if p % 4 == 1 else -p


@dataclass(frozen=True)
class GenusFieldResult:
    base: MultiQuadField
    narrow_generators: Tuple[int, ...]
    narrow: MultiQuadField
    genus: MultiQuadField

    @property
    def genus_generators(self) -> Tuple[int, ...]:
        return self.genus.basis

    def to_dict(self) -> dict:
        return {
            "base": self.base.to_text(),
            "narrow_generators": list(self.narrow_generators),
            "narrow": self.narrow.to_text(),
            "genus": self.genus.to_text(),
        }


def narrow_genus_field(F: MultiQuadField) -> GenusFieldResult:
    gens = tuple(star(p) for p in F.ramified_odd_primes())
    narrow = F.adjoin(*gens)
    # a totally imaginary field has no real places to split off
    genus = maximal_real_subfield(narrow) if F.is_real else narrow
    return GenusFieldResult(F, gens, narrow, genus)
