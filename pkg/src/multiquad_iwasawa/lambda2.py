"""Closed-form lambda_2 invariants of cyclotomic Z_2-extensions.

Three evaluators live here: imaginary quadratic fields, imaginary
multi-quadratic fields over Q (with the real part's invariant supplied or
assumed zero under Greenberg's conjecture), and the linear combinator that
expresses lambda_2(K) for K over a totally real base F through
lambda_2 values of smaller fields and place counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .arith import factorize, is_squarefree, sqf, v2
from .errors import HypothesisError
from .field import (
    MultiQuadField,
    Presentation,
    canonical_presentation,
    field_of_presentation,
    maximal_real_subfield,
)
from .tower import count_si_fi


@dataclass
class LambdaResult:
    lambda2: int
    assumed_lambda_plus: int = 0
    greenberg_assumed: bool = True
    terms: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "lambda2": self.lambda2,
            "assumed_lambda_plus": self.assumed_lambda_plus,
            "greenberg_assumed": self.greenberg_assumed,
            "terms": self.terms,
        }


def _odd_primes(n: int) -> List[int]:
    return [p for p in factorize(abs(n)).primes() if p != 2]


def _vp2(p: int) -> int:
    return v2(p * p - 1)


def lambda2_imaginary_quadratic(d: int) -> LambdaResult:
    """lambda_2 of Q(sqrt -d) for squarefree d >= 1."""
    if d < 1 or not is_squarefree(d):
        raise ValueError(f"{d} is not a positive squarefree integer")
    contribs = [(p, _vp2(p) - 3, 1 << (_vp2(p) - 3)) for p in _odd_primes(d)]
    if d in (1, 2):
        value = 0
    else:
        value = sum(c for _, _, c in contribs) - 1
    terms = {
        "r": 0,
        "d": d,
        "contributions": [{"prime": p, "exponent": e, "value": c} for p, e, c in contribs],
    }
    return LambdaResult(value, 0, False, terms)


def _cm_terms(pres: Presentation, K: MultiQuadField) -> Tuple[int, dict]:
    r, theta, d = pres.r, pres.theta, pres.d
    prod = 1
    for t in pres.d_list:
        prod *= t
    contribs = []
    total = 0
    for p in _odd_primes(prod):
        e = _vp2(p) + r - theta - 4
        if e < 0:
            raise HypothesisError(f"negative exponent at p={p}; presentation is not of CM shape")
        contribs.append({"prime": p, "exponent": e, "value": 1 << e, "kind": "real"})
        total += 1 << e
    for p in _odd_primes(d):
        if prod % p == 0:
            continue
        e = _vp2(p) + r - theta - 3
        contribs.append({"prime": p, "exponent": e, "value": 1 << e, "kind": "imaginary"})
        total += 1 << e
    Kp2 = maximal_real_subfield(K).adjoin(2)
    delta = int(Kp2.contains_class(d))
    total += delta - (1 << (r - theta))
    terms = {
        "r": r,
        "theta": theta,
        "delta": delta,
        "d_list": list(pres.d_list),
        "d": d,
        "contributions": contribs,
        "unit_term": -(1 << (r - theta)),
    }
    return total, terms


def _odd_presentation(pres: Presentation) -> Tuple[Tuple[int, ...], int]:
    if pres.theta:
        return pres.d_list[1:], pres.d
    return pres.d_list, pres.d


def place_counts(pres: Presentation) -> Tuple[List[int], List[int]]:
    """(s_i) and (f_i) for the presentation with any sqrt 2 stripped."""
    d_list, d = _odd_presentation(pres)
    s_list, f_list = [], []
    for i in range(1, len(d_list) + 1):
        s, f = count_si_fi(i, d_list, d)
        s_list.append(s)
        f_list.append(f)
    return s_list, f_list


def lambda2_multiquad_imaginary(
    K: MultiQuadField,
    lambda_plus: Optional[int] = None,
    presentation: Optional[Presentation] = None,
) -> LambdaResult:
    """lambda_2 of an imaginary multi-quadratic field K over Q.

    ``lambda_plus`` is lambda_2(K^+); None means it is taken to be 0 as
    Greenberg's conjecture predicts. A caller-supplied presentation must
    generate K.
    """
    if K.is_real:
        raise ValueError(f"{K} is real; lambda_2 formula needs an imaginary field")
    pres = presentation or canonical_presentation(K)
    if presentation is not None and field_of_presentation(pres) != K:
        raise ValueError("presentation does not generate the field")
    if not pres.admissible:
        raise HypothesisError(
            "hypothesis unmet: no odd prime divides d_r but not d * d_1 * ... * d_{r-1}"
        )
    value, terms = _cm_terms(pres, K)
    s_list, f_list = place_counts(pres)
    terms["s"] = s_list
    terms["f"] = f_list
    trivial_plus = maximal_real_subfield(K).rank == 0
    if trivial_plus and lambda_plus not in (None, 0):
        raise ValueError("K^+ = Q has lambda_2 = 0; a nonzero value was supplied")
    greenberg = lambda_plus is None and not trivial_plus
    lp = 0 if lambda_plus is None else int(lambda_plus)
    if lp < 0:
        raise ValueError("lambda_2(K^+) must be non-negative")
    value += lp
    if value < 0:
        raise HypothesisError(f"formula evaluated to {value} < 0", terms)
    return LambdaResult(value, lp, greenberg, terms)


def lambda2_general_F_combinator(
    lambda_F: int,
    lambda_F_t1: int,
    lambda_plus: int,
    s_list: Sequence[int],
    f_list: Sequence[int],
    r: int,
    delta: int,
) -> int:
    """2^r l(F(sqrt -t_1)) + l(K^+) - 2^r l(F) + sum 2^(r-i)(s_i - f_i) + delta."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if len(s_list) != r or len(f_list) != r:
        raise ValueError("need exactly r place counts of each kind")
    if delta not in (0, 1):
        raise ValueError("delta must be 0 or 1")
    total = (1 << r) * lambda_F_t1 + lambda_plus - (1 << r) * lambda_F + delta
    for i in range(1, r + 1):
        total += (1 << (r - i)) * (s_list[i - 1] - f_list[i - 1])
    if total < 0:
        raise HypothesisError(f"inconsistent inputs: combination is {total}")
    return total


def combinator_over_Q(K: MultiQuadField, lambda_plus: int = 0) -> int:
    """Evaluate the combinator with F = Q from quadratic lambda_2 values."""
    pres = canonical_presentation(K)
    d_list, d = _odd_presentation(pres)
    r = len(d_list)
    if r == 0:
        return lambda2_imaginary_quadratic(sqf(d)).lambda2
    t1 = d
    for t in d_list:
        t1 *= t
    s_list, f_list = place_counts(pres)
    Kp2 = maximal_real_subfield(K).adjoin(2)
    delta = int(Kp2.contains_class(d))
    lam_t1 = lambda2_imaginary_quadratic(sqf(t1)).lambda2
    return lambda2_general_F_combinator(0, lam_t1, lambda_plus, s_list, f_list, r, delta)


def kida_relation_check(
    K: MultiQuadField,
    lambda_K: Optional[int] = None,
    lambda_L: Optional[int] = None,
    lambda_Kplus: int = 0,
    lambda_Lplus: int = 0,
) -> bool:
    """Check 2 l(K) = l(L) - 1 + 2 l(K^+) - l(L^+) for L = K(sqrt -1).

    K must not contain sqrt 2, every prime of d must divide d_1 * ... * d_r,
    and sqrt d must lie outside K^+(sqrt 2) (otherwise K(sqrt 2) = L(sqrt 2)).
    Missing lambda values are computed from the closed formula.
    """
    pres = canonical_presentation(K)
    if pres.theta:
        raise HypothesisError("relation needs sqrt 2 outside K")
    prod = 1
    for t in pres.d_list:
        prod *= t
    if any(prod % p for p in factorize(pres.d).primes()):
        raise HypothesisError(f"d = {pres.d} does not divide d_1 * ... * d_r = {prod}")
    Kp2 = maximal_real_subfield(K).adjoin(2)
    if Kp2.contains_class(pres.d):
        raise HypothesisError("sqrt d lies in K^+(sqrt 2); K(sqrt -1) adds nothing over K(sqrt 2)")
    L = K.adjoin(-1)
    if lambda_K is None:
        lambda_K = lambda2_multiquad_imaginary(K, lambda_Kplus).lambda2
    if lambda_L is None:
        lambda_L = lambda2_multiquad_imaginary(L, lambda_Lplus).lambda2
    return 2 * lambda_K == lambda_L - 1 + 2 * lambda_Kplus - lambda_Lplus


__all__ = [
    "LambdaResult",
    "combinator_over_Q",
    "kida_relation_check",
    "lambda2_general_F_combinator",
    "lambda2_imaginary_quadratic",
    "lambda2_multiquad_imaginary",
    "place_counts",
]
