"""Brute-force verifiers for the closed forms, and the sweep harness.

Nothing in the checking half of this module calls the closed forms it
checks: orders are found by iteration, residual degrees by walking powers
of p through a subgroup of (Z/mZ)^x, quadratic characters by a Jacobi
symbol routine, class numbers by counting reduced forms.
"""

from __future__ import annotations

import json
import logging
import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd, isqrt
from pathlib import Path
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple

from . import arith, tower
from .errors import HypothesisError
from .field import MultiQuadField
from .lambda2 import (
    combinator_over_Q,
    kida_relation_check,
    lambda2_imaginary_quadratic,
    lambda2_multiquad_imaginary,
)

log = logging.getLogger(__name__)


# -- independent arithmetic ---------------------------------------------------


def _val2(n: int) -> int:
    k = 0
    while n % 2 == 0:
        n //= 2
        k += 1
    return k


def odd_primes_below(n: int) -> List[int]:
    """Sieve of Eratosthenes, odd primes < n."""
    if n <= 3:
        return []
    sieve = bytearray([1]) * n
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(n - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n, i)))
    return [i for i in range(3, n) if sieve[i]]


def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs an odd positive modulus")
    a %= n
    acc = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                acc = -acc
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            acc = -acc
        a %= n
    return acc if n == 1 else 0


def brute_order(p: int, n: int) -> int:
    """Smallest k >= 1 with p**k = 1 mod 2**n, by iteration."""
    m = 1 << n
    x, k = p % m, 1
    while x != 1 % m:
        x = x * p % m
        k += 1
    return k


def brute_min_pm1(p: int, n: int) -> int:
    m = 1 << n
    x, k = p % m, 1
    while x != 1 % m and x != m - 1:
        x = x * p % m
        k += 1
    return k


def brute_residual_degree(p: int, m: int, member: Callable[[int], bool]) -> int:
    """min{f >= 1 : p**f mod m in H}, H given by a membership predicate."""
    x, f = p % m, 1
    while not member(x):
        x = x * p % m
        f += 1
    return f


def brute_qn_residual_degree(p: int, n: int) -> int:
    m = 1 << (n + 2)
    return brute_residual_degree(p, m, lambda a: a == 1 or a == m - 1)


def _fundamental_disc(d: int) -> int:
    return d if d % 4 == 1 else 4 * d


def quadratic_step_oracle(p: int, d: int, n: int) -> str:
    """Behaviour of p in Q_n(sqrt d)/Q_n via its cyclotomic model.

    Q_n(sqrt d) is fixed inside Q(zeta_m), m = lcm(2^(n+2), |D|), by
    {a : a = +-1 mod 2^(n+2) and (D/a) = 1}; compare residual degrees.
    """
    D = _fundamental_disc(d)
    if D % p == 0:
        return "Ramified"
    two = 1 << (n + 2)
    m = two * abs(D) // gcd(two, abs(D))

    def in_base(a: int) -> bool:
        return a % two in (1, two - 1)

    def in_ext(a: int) -> bool:
        return in_base(a) and jacobi(D, a) == 1

    f_base = brute_residual_degree(p, m, in_base)
    f_ext = brute_residual_degree(p, m, in_ext)
    return "Inert" if f_ext == 2 * f_base else "Split"


def compositum_g_oracle(p: int, ds: Iterable[int], n: int) -> int:
    """Number of primes above p in Q_n(sqrt d for d in ds), p unramified."""
    Ds = [_fundamental_disc(d) for d in ds]
    two = 1 << (n + 2)
    m = two
    for D in Ds:
        if D % p == 0:
            raise ValueError("p ramifies")
        m = m * abs(D) // gcd(m, abs(D))

    def member(a: int) -> bool:
        return a % two in (1, two - 1) and all(jacobi(D, a) == 1 for D in Ds)

    # [Q_n(sqrt ds) : Q] = 2^n * 2^(rank of the radicands); e = 1 away from p
    deg = (1 << n) * MultiQuadField.from_classes(list(ds)).degree
    return deg // brute_residual_degree(p, m, member)


def is_fundamental(D: int) -> bool:
    if D % 4 == 1:
        return _squarefree_brute(abs(D))
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree_brute(abs(m))
    return False


def _squarefree_brute(n: int) -> bool:
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def bqf_class_number(D: int) -> int:
    """Number of reduced primitive positive forms of discriminant D < 0."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"invalid negative discriminant {D}")
    if -D >= 10**6:
        raise ValueError("|D| must be below 10^6")
    h = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a:
                continue
            if c == a and b < 0:
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            h += 1
        a += 1
    return h


def distinct_prime_count(n: int) -> int:
    n = abs(n)
    k, c = 2, 0
    while k * k <= n:
        if n % k == 0:
            c += 1
            while n % k == 0:
                n //= k
        k += 1
    return c + (n > 1)


def genus_predicts_odd(D: int) -> bool:
    """For fundamental D < 0 the 2-rank is t - 1, t = #prime divisors of D."""
    return distinct_prime_count(D) == 1


# -- field families used by the sweeps ----------------------------------------


def absorption_family(p_max: int, max_rank: int = 4) -> Iterator[MultiQuadField]:
    """Imaginary Q(sqrt a_1..sqrt a_k, sqrt -b), a_i distinct odd primes,
    b = 1 or an odd prime, all below p_max, rank <= max_rank."""
    primes = odd_primes_below(p_max)
    seen = set()
    for k in range(0, max_rank):
        for real in combinations(primes, k):
            for b in [1] + primes:
                K = MultiQuadField.from_classes(list(real) + [-b])
                if K.basis in seen:
                    continue
                seen.add(K.basis)
                yield K


def kida_family(p_max: int) -> Iterator[MultiQuadField]:
    """K = Q(sqrt pq, sqrt -d) and Q(sqrt pq, sqrt l, sqrt -d) with
    d | prod d_i and sqrt d outside K^+(sqrt 2); primes below p_max."""
    primes = odd_primes_below(p_max)
    for p, q in combinations(primes, 2):
        for d in (p, q):
            yield MultiQuadField.from_classes([p * q, -d])
        for l in primes:
            if l in (p, q):
                continue
            for d in (p, q, p * l, q * l):
                yield MultiQuadField.from_classes([p * q, l, -d])


def random_imaginary_field(rng: random.Random, p_max: int, max_rank: int) -> MultiQuadField:
    """Random imaginary field generated by products of small signed primes."""
    primes = odd_primes_below(p_max)
    while True:
        k = rng.randint(1, max_rank)
        gens = []
        for _ in range(k):
            x = rng.choice([-1, 1]) * rng.choice([1, 2])
            for p in rng.sample(primes, rng.randint(0, 2)):
                x *= p
            gens.append(x)
        K = MultiQuadField.from_classes(gens)
        if K.is_imaginary and K.rank <= max_rank:
            return K


# -- sweeps -------------------------------------------------------------------

ALL_SUITES = (
    "order",
    "f2n",
    "residual",
    "num_primes",
    "lemma23",
    "lemma21",
    "sqf",
    "bqf_genus",
    "quadratic_split",
    "lambda_r0",
    "sqrt2",
    "kida",
    "combinator",
)

FAULTS = ("order", "f2n", "num_primes")


@dataclass
class SweepConfig:
    suites: Tuple[str, ...] = ALL_SUITES
    seed: int = 0
    p_max: int = 10_000
    n_max: int = 12
    lemma21_max: int = 200
    lemma23_p_max: int = 10_000
    lemma23_t_max: int = 64
    sqf_max: int = 100_000
    bqf_max: int = 5000
    split_p_max: int = 300
    split_n_max: int = 8
    lambda_d_max: int = 5000
    family_p_max: int = 100
    combinator_samples: int = 500
    inject_fault: Optional[str] = None

    def __post_init__(self) -> None:
        bad = [s for s in self.suites if s not in ALL_SUITES]
        if bad:
            raise ValueError(f"unknown suites: {', '.join(bad)}")
        if self.inject_fault is not None and self.inject_fault not in FAULTS:
            raise ValueError(f"unknown fault {self.inject_fault!r}; choose from {FAULTS}")


def parse_config(text: str) -> SweepConfig:
    """Plain key = value lines; '#' starts a comment."""
    kwargs: Dict[str, object] = {}
    ints = {k for k, v in SweepConfig.__dataclass_fields__.items() if v.type == "int"}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key == "suites":
            if value == "all":
                kwargs[key] = ALL_SUITES
            else:
                kwargs[key] = tuple(s.strip() for s in value.split(",") if s.strip())
        elif key == "inject_fault":
            kwargs[key] = value or None
        elif key in ints:
            kwargs[key] = int(value)
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    return SweepConfig(**kwargs)


def load_config(path: str | Path) -> SweepConfig:
    return parse_config(Path(path).read_text())


@dataclass
class SweepReport:
    checked: int = 0
    failures: List[Tuple[str, object, object, object]] = field(default_factory=list)
    elapsed: float = 0.0
    per_suite: Dict[str, Dict[str, int]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        """Deterministic content only; elapsed time goes to the log."""
        return {
            "checked": self.checked,
            "passed": self.passed,
            "suites": {k: self.per_suite[k] for k in sorted(self.per_suite)},
            "failures": [
                {"suite": s, "input": _jsonable(i), "expected": _jsonable(e), "got": _jsonable(g)}
                for s, i, e, g in self.failures
            ],
        }


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    return x


# branch-flipped closed forms for testing the tester


def _faulty_order(p: int, n: int) -> int:
    a, b = arith.v2(p - 1), arith.v2(p * p - 1)
    if n < a:
        return 1
    if n <= b:
        return 2
    return 1 << (n - b + 1)


def _faulty_f2n(p: int, n: int) -> int:
    b = arith.v2(p * p - 1)
    if n <= b:
        return 1
    return 1 << (n - b + 1)


def _faulty_num_primes(p: int, n: int) -> int:
    v = arith.v2(p * p - 1)
    if n + 2 <= v:
        return 1 << n
    return 1 << (v - 3)


class _Suite:
    def __init__(self, name: str, report: SweepReport):
        self.name = name
        self.report = report
        self.checked = 0
        self.failed = 0

    def check(self, inp, expected, got) -> None:
        self.checked += 1
        if expected != got:
            self.failed += 1
            self.report.failures.append((self.name, inp, expected, got))

    def close(self) -> None:
        self.report.checked += self.checked
        self.report.per_suite[self.name] = {"checked": self.checked, "failed": self.failed}


def _suite_order(cfg, s, fns):
    for p in odd_primes_below(cfg.p_max):
        for n in range(1, cfg.n_max + 1):
            s.check((p, n), brute_order(p, n), fns["order"](p, n))


def _suite_f2n(cfg, s, fns):
    for p in odd_primes_below(cfg.p_max):
        for n in range(1, cfg.n_max + 1):
            s.check((p, n), brute_min_pm1(p, n), fns["f2n"](p, n))


def _suite_residual(cfg, s, fns):
    for p in odd_primes_below(cfg.p_max):
        for n in range(0, cfg.n_max + 1):
            s.check((p, n), brute_qn_residual_degree(p, n), tower.residual_degree_Qn(p, n))


def _suite_num_primes(cfg, s, fns):
    for p in odd_primes_below(cfg.p_max):
        for n in range(0, cfg.n_max + 1):
            s.check((p, n), (1 << n) // brute_qn_residual_degree(p, n), fns["num_primes"](p, n))


def _suite_lemma23(cfg, s, fns):
    for p in odd_primes_below(cfg.lemma23_p_max):
        for n in range(1, cfg.n_max + 1):
            m = 1 << n
            hit = any(pow(p, t, m) == m - 1 for t in range(1, cfg.lemma23_t_max + 1))
            # p**t = -1 forces p = -1
            s.check((p, n), True, (not hit) or p % m == m - 1)


def _suite_lemma21(cfg, s, fns):
    for x in range(1, cfg.lemma21_max, 2):
        for y in range(1, cfg.lemma21_max, 2):
            if x == y or _val2(x - y) < 2:
                continue
            base = _val2(abs(x - y))
            for n in range(1, 65):
                s.check((x, y, n), base + _val2(n), _val2(abs(x**n - y**n)))


def _suite_sqf(cfg, s, fns):
    N = cfg.sqf_max
    spf = list(range(N + 1))
    for i in range(2, isqrt(N) + 1):
        if spf[i] == i:
            for j in range(i * i, N + 1, i):
                if spf[j] == j:
                    spf[j] = i
    for n in range(1, N + 1):
        kernel, m = 1, n
        while m > 1:
            p, e = spf[m], 0
            while m % p == 0:
                m //= p
                e += 1
            if e & 1:
                kernel *= p
        s.check(n, kernel, arith.sqf(n))


def _suite_bqf_genus(cfg, s, fns):
    for D in range(-3, -cfg.bqf_max, -1):
        if not is_fundamental(D):
            continue
        s.check(D, genus_predicts_odd(D), bqf_class_number(D) % 2 == 1)


_SPLIT_RADICANDS = (-1, 2, -2, 3, -3, 5, -5, 6, 7, -7, 10, -11, 13, 15, -15, 17, 21, 33, -35)


def _suite_quadratic_split(cfg, s, fns):
    for p in odd_primes_below(cfg.split_p_max):
        for d in _SPLIT_RADICANDS:
            for n in range(0, cfg.split_n_max + 1):
                got = tower.splitting_Qn_quadratic(p, d, n).value
                s.check((p, d, n), quadratic_step_oracle(p, d, n), got)


def _suite_lambda_r0(cfg, s, fns):
    for d in range(1, cfg.lambda_d_max + 1):
        if not arith.is_squarefree(d):
            continue
        K = MultiQuadField.from_classes([-d])
        s.check(d, lambda2_imaginary_quadratic(d).lambda2, lambda2_multiquad_imaginary(K).lambda2)


def _suite_sqrt2(cfg, s, fns):
    for K in absorption_family(cfg.family_p_max):
        K2 = K.adjoin(2)
        s.check(K.to_text(), lambda2_multiquad_imaginary(K).lambda2, lambda2_multiquad_imaginary(K2).lambda2)


def _suite_kida(cfg, s, fns):
    for K in kida_family(cfg.family_p_max):
        s.check(K.to_text(), True, kida_relation_check(K))


def _suite_combinator(cfg, s, fns):
    rng = random.Random(cfg.seed)
    for _ in range(cfg.combinator_samples):
        K = random_imaginary_field(rng, 60, 4)
        s.check(K.to_text(), lambda2_multiquad_imaginary(K).lambda2, combinator_over_Q(K))


_RUNNERS = {
    "order": _suite_order,
    "f2n": _suite_f2n,
    "residual": _suite_residual,
    "num_primes": _suite_num_primes,
    "lemma23": _suite_lemma23,
    "lemma21": _suite_lemma21,
    "sqf": _suite_sqf,
    "bqf_genus": _suite_bqf_genus,
    "quadratic_split": _suite_quadratic_split,
    "lambda_r0": _suite_lambda_r0,
    "sqrt2": _suite_sqrt2,
    "kida": _suite_kida,
    "combinator": _suite_combinator,
}


def run_sweeps(config: SweepConfig | None = None) -> SweepReport:
    cfg = config or SweepConfig()
    fns = {
        "order": arith.order_mod_2pow,
        "f2n": arith.f2n,
        "num_primes": tower.num_primes_Qn,
    }
    if cfg.inject_fault == "order":
        fns["order"] = _faulty_order
    elif cfg.inject_fault == "f2n":
        fns["f2n"] = _faulty_f2n
    elif cfg.inject_fault == "num_primes":
        fns["num_primes"] = _faulty_num_primes
    report = SweepReport()
    start = time.perf_counter()
    for name in cfg.suites:
        t0 = time.perf_counter()
        suite = _Suite(name, report)
        try:
            _RUNNERS[name](cfg, suite, fns)
        except (ValueError, HypothesisError) as exc:
            suite.check("exception", None, repr(exc))
        suite.close()
        log.info("suite %s: %d checked, %d failed in %.2fs", name, suite.checked, suite.failed, time.perf_counter() - t0)
    report.elapsed = time.perf_counter() - start
    return report


def report_json(report: SweepReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True)
