"""
Odd primes along the cyclotomic Z_2-tower
=========================================

Q_n is the degree 2^n layer inside Q(zeta_{2^(n+2)}). An odd prime p stays
unramified; its residual degree and number of primes are controlled by
v = v2(p^2 - 1).
"""

from multiquad_iwasawa import residual_degree_Qn, splitting_Qn_quadratic
from multiquad_iwasawa.oracle import brute_qn_residual_degree, quadratic_step_oracle
from multiquad_iwasawa.tower import level_report

# closed form next to the coset walk in (Z/2^(n+2))^x
for p in (3, 7, 17, 31):
    row = [(residual_degree_Qn(p, n), brute_qn_residual_degree(p, n)) for n in range(8)]
    print(p, [f for f, _ in row], all(a == b for a, b in row))

# e f g = 2^n at every level
for n in range(6):
    r = level_report(7, n)
    print(f"n={n}  e={r.e} f={r.f:2d} g={r.g}")

# A non-residue d stays inert in Q_n(sqrt d)/Q_n only while the residue
# field of Q_n is F_p, i.e. for n + 2 < v. For p = 7 (v = 4) that is n < 2:
for n in range(5):
    print(n, splitting_Qn_quadratic(7, 3, n).value, quadratic_step_oracle(7, 3, n))
