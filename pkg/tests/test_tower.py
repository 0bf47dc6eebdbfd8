import pytest
from hypothesis import given, strategies as st

from multiquad_iwasawa import tower
from multiquad_iwasawa.arith import v2
from multiquad_iwasawa.oracle import (
    brute_qn_residual_degree,
    compositum_g_oracle,
    odd_primes_below,
    quadratic_step_oracle,
)
from multiquad_iwasawa.tower import Behavior

PRIMES = odd_primes_below(3000)
odd_primes = st.sampled_from(PRIMES)

RESIDUAL = {  # from the coset-walk oracle
    3: [1, 2, 4, 8, 16, 32, 64],
    7: [1, 1, 2, 4, 8, 16, 32],
    17: [1, 1, 1, 2, 4, 8, 16],
    31: [1, 1, 1, 1, 2, 4, 8],
    97: [1, 1, 1, 1, 2, 4, 8],
}


@pytest.mark.parametrize("p", sorted(RESIDUAL))
def test_residual_frozen(p):
    assert [tower.residual_degree_Qn(p, n) for n in range(7)] == RESIDUAL[p]


def test_seven_g_column():
    assert [tower.num_primes_Qn(7, n) for n in range(6)] == [1, 2, 2, 2, 2, 2]


@given(odd_primes, st.integers(0, 12))
def test_residual_matches_walk(p, n):
    assert tower.residual_degree_Qn(p, n) == brute_qn_residual_degree(p, n)


@given(odd_primes, st.integers(0, 12))
def test_efg_fills_the_degree(p, n):
    rep = tower.level_report(p, n)
    assert rep.e * rep.f * rep.g == 1 << n


def test_num_primes_boundary():
    # v2(17^2 - 1) = 5: g doubles until n + 2 = 5
    assert [tower.num_primes_Qn(17, n) for n in range(6)] == [1, 2, 4, 4, 4, 4]


def test_frobenius_degree_subfield_cases():
    assert tower.frobenius_degree_subfield(7, 16, [-1]) == tower.residual_degree_Qn(7, 2)
    assert tower.frobenius_degree_subfield(3, 5, []) == 4
    assert tower.frobenius_degree_subfield(3, 5, [4]) == 2
    with pytest.raises(ValueError, match="ramified case out of scope"):
        tower.frobenius_degree_subfield(3, 12, [-1])


@given(odd_primes, st.integers(0, 10))
def test_frobenius_on_Qn_subgroup(p, n):
    m = 1 << (n + 2)
    assert tower.frobenius_degree_subfield(p, m, [m - 1]) == tower.residual_degree_Qn(p, n)


@pytest.mark.parametrize(
    "p,d,n,expected",
    [
        (7, 3, 1, Behavior.INERT),
        (7, 3, 4, Behavior.SPLIT),
        (7, 2, 1, Behavior.SPLIT),
        (7, 21, 3, Behavior.RAMIFIED),
        (3, 5, 0, Behavior.INERT),
        (3, 5, 3, Behavior.SPLIT),
    ],
)
def test_quadratic_step_examples(p, d, n, expected):
    assert tower.splitting_Qn_quadratic(p, d, n) is expected


def test_inert_region_ends_two_levels_early():
    # 3 is a non-residue mod 7 but a square in F_49, the residue field at level 2
    assert [tower.splitting_Qn_quadratic(7, 3, n).value for n in range(4)] == [
        "Inert", "Inert", "Split", "Split"]
    assert [quadratic_step_oracle(7, 3, n) for n in range(4)] == [
        "Inert", "Inert", "Split", "Split"]


@given(odd_primes.filter(lambda p: p < 400),
       st.sampled_from([-1, 2, -2, 3, -3, 5, -5, 6, -7, 10, 13, -15, 17, 33, -35, 105]),
       st.integers(0, 7))
def test_quadratic_step_matches_character_model(p, d, n):
    assert tower.splitting_Qn_quadratic(p, d, n).value == quadratic_step_oracle(p, d, n)


@given(odd_primes, st.integers(0, 8))
def test_stable_split_from_v(p, n):
    v = v2(p * p - 1)
    assert tower.splitting_Qn_quadratic(p, 3 if p != 3 else 5, v + n) is Behavior.SPLIT


def test_quadratic_step_report_counts():
    r = tower.quadratic_step_report(7, 3, 1)
    assert (r.e, r.f, r.g) == (1, 2, 2)
    r = tower.quadratic_step_report(7, 3, 3)
    assert r.e * r.f * r.g == 2 * (1 << 3)


def test_two_inert_steps_split_in_compositum():
    # 3 is inert in Q(sqrt 5)/Q and Q(sqrt -1)/Q at level 0
    assert tower.splitting_Qn_quadratic(3, 5, 0) is Behavior.INERT
    assert tower.splitting_Qn_quadratic(3, -1, 0) is Behavior.INERT
    # so Q(sqrt 5, sqrt -1) has two primes above 3 (each with f = 2)
    assert compositum_g_oracle(3, [5, -1], 0) == 2


@given(odd_primes.filter(lambda p: p < 200), st.sampled_from([(5, 13), (3, -1), (-7, 11), (2, 5)]),
       st.integers(0, 4))
def test_compositum_of_inert_pair(p, ds, n):
    a, b = ds
    if any(d % p == 0 for d in ds):
        return
    beh = [tower.splitting_Qn_quadratic(p, d, n) for d in ds]
    if all(x is Behavior.INERT for x in beh):
        g_base = tower.num_primes_Qn(p, n)
        assert compositum_g_oracle(p, ds, n) == 2 * g_base


def test_splits_completely():
    assert tower.splits_completely_Qinf_multiquad(7, [3, 5, -1])
    assert not tower.splits_completely_Qinf_multiquad(7, [3, 21])


def test_count_si_fi():
    # d_1 = 533 = 13 * 41, d = 1: f_1 = 2^(3-3) + 2^(4-3), nothing survives in t_2
    assert tower.count_si_fi(1, [533], 1) == (0, 3)
    # 21 = 3 * 7 with t_2 = 3: s_1 counts 2^1 places over 3, f_1 = 2^0 + 2^1
    assert tower.count_si_fi(1, [21], 3) == (2, 3)
    with pytest.raises(ValueError):
        tower.count_si_fi(2, [21], 3)


@pytest.mark.parametrize("fn", [tower.residual_degree_Qn, tower.num_primes_Qn, tower.level_report])
def test_p_two_excluded(fn):
    with pytest.raises(ValueError, match="p = 2 is excluded"):
        fn(2, 1)


def test_bad_inputs():
    with pytest.raises(ValueError, match="not squarefree"):
        tower.splitting_Qn_quadratic(7, 12, 1)
    with pytest.raises(ValueError, match="not an odd prime"):
        tower.residual_degree_Qn(9, 1)
