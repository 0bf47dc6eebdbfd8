import json

import pytest
import sympy
from hypothesis import given, strategies as st

from multiquad_iwasawa import arith
from multiquad_iwasawa.cli import validate
from multiquad_iwasawa.oracle import (
    ALL_SUITES,
    SweepConfig,
    bqf_class_number,
    brute_min_pm1,
    brute_order,
    genus_predicts_odd,
    is_fundamental,
    jacobi,
    kida_family,
    absorption_family,
    load_config,
    odd_primes_below,
    parse_config,
    report_json,
    run_sweeps,
)

CLASS_NUMBERS = {-3: 1, -4: 1, -7: 1, -8: 1, -15: 2, -20: 2, -23: 3, -24: 2, -47: 5,
                 -56: 4, -71: 7, -84: 4, -163: 1, -420: 8}


def test_class_numbers_frozen():
    assert {D: bqf_class_number(D) for D in CLASS_NUMBERS} == CLASS_NUMBERS


def test_class_number_domain():
    for D in (5, -5, -6, -10**6):
        with pytest.raises(ValueError):
            bqf_class_number(D)


def test_fundamental():
    assert [is_fundamental(D) for D in (-3, -4, -8, -12, -16, -20, -7, -75)] == [
        True, True, True, False, False, True, True, False]


def test_genus_parity_small():
    for D in range(-3, -2000, -1):
        if is_fundamental(D):
            assert (bqf_class_number(D) % 2 == 1) == genus_predicts_odd(D)


@given(st.integers(-10**6, 10**6), st.integers(0, 10**5).map(lambda k: 2 * k + 1))
def test_jacobi_matches_sympy(a, n):
    assert jacobi(a, n) == sympy.jacobi_symbol(a % n, n)


def test_brute_oracles_small():
    assert [brute_order(7, n) for n in range(1, 7)] == [1, 2, 2, 2, 4, 8]
    assert [brute_min_pm1(7, n) for n in range(1, 7)] == [1, 1, 1, 2, 4, 8]
    assert odd_primes_below(20) == [3, 5, 7, 11, 13, 17, 19]
    assert odd_primes_below(3) == []


def test_families_are_duplicate_free_and_imaginary():
    fam = list(absorption_family(20))
    assert len({K.basis for K in fam}) == len(fam)
    assert all(K.is_imaginary and not K.contains_class(2) for K in fam)
    assert all(K.rank == 2 or K.rank == 3 for K in kida_family(12))


def test_parse_config():
    cfg = parse_config("# comment\nsuites = order, f2n\np_max = 50  # inline\nseed=3\n")
    assert cfg.suites == ("order", "f2n") and cfg.p_max == 50 and cfg.seed == 3
    assert parse_config("suites = all").suites == ALL_SUITES
    assert parse_config("suites =").suites == ()
    assert parse_config("inject_fault = f2n").inject_fault == "f2n"
    for bad in ("p_max 5", "colour = red", "suites = nope", "inject_fault = everything", "p_max = x"):
        with pytest.raises(ValueError):
            parse_config(bad)


def test_load_config(tmp_path):
    path = tmp_path / "s.cfg"
    path.write_text("suites = order\np_max = 30\n")
    assert load_config(path).p_max == 30
    with pytest.raises(OSError):
        load_config(tmp_path / "missing.cfg")


def test_empty_suites():
    rep = run_sweeps(SweepConfig(suites=()))
    assert rep.passed and rep.checked == 0


def _planted(p_max, n_max, boundary):
    return {(p, n) for p in odd_primes_below(p_max) for n in range(0, n_max + 1) if n == boundary(p)}


def test_fault_f2n_found_exactly_at_boundary():
    rep = run_sweeps(SweepConfig(suites=("f2n",), p_max=300, n_max=10, inject_fault="f2n"))
    got = {tuple(inp) for _, inp, _, _ in rep.failures}
    assert got == _planted(300, 10, lambda p: arith.v2(p * p - 1))


def test_fault_order_found_exactly_at_boundary():
    rep = run_sweeps(SweepConfig(suites=("order",), p_max=300, n_max=10, inject_fault="order"))
    got = {tuple(inp) for _, inp, _, _ in rep.failures}
    assert got == _planted(300, 10, lambda p: arith.v2(p - 1))


def test_fault_num_primes_found_exactly_at_boundary():
    rep = run_sweeps(SweepConfig(suites=("num_primes",), p_max=300, n_max=10, inject_fault="num_primes"))
    got = {tuple(inp) for _, inp, _, _ in rep.failures}
    assert got == _planted(300, 10, lambda p: arith.v2(p * p - 1) - 2)


def test_fault_does_not_leak_into_other_suites():
    rep = run_sweeps(SweepConfig(suites=("order", "residual"), p_max=200, n_max=8, inject_fault="f2n"))
    assert rep.passed


def test_report_is_schema_valid_and_deterministic():
    cfg = SweepConfig(suites=("order", "bqf_genus", "combinator"), p_max=100, bqf_max=300,
                      combinator_samples=40, inject_fault="order")
    a, b = run_sweeps(cfg), run_sweeps(cfg)
    assert not a.passed
    validate(a.to_dict(), "sweep")
    assert report_json(a) == report_json(b)
    assert json.loads(report_json(a))["suites"]["order"]["failed"] == len(a.failures)


@pytest.mark.parametrize("suite", [s for s in ALL_SUITES if s not in ("lemma21", "sqf")])
def test_small_sweeps_pass(suite):
    cfg = SweepConfig(suites=(suite,), p_max=500, lemma23_p_max=500, bqf_max=1000, split_p_max=60,
                      lambda_d_max=500, family_p_max=30, combinator_samples=100)
    rep = run_sweeps(cfg)
    assert rep.passed, rep.failures[:5]
    assert rep.checked > 0


def test_valuation_of_power_differences_full_range():
    # odd x, y < 1000 with 4 | x - y and every n <= 64
    rep = run_sweeps(SweepConfig(suites=("lemma21",), lemma21_max=1000))
    assert rep.passed and rep.checked > 7_000_000


def test_sqf_up_to_a_million():
    rep = run_sweeps(SweepConfig(suites=("sqf",), sqf_max=10**6))
    assert rep.passed and rep.checked == 10**6
