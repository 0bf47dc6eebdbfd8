"""
A family with lambda_2 = 2^N
============================

Pick l with v2(l - 1) = N + 2 and l' = 5 mod 8 with (l/l') = -1.
Then K = Q(sqrt(l l'), sqrt -1) has lambda_2(K) = 2^N, so the Z_2-rank
of the Iwasawa module can be made as large as we like.
"""

from multiquad_iwasawa import MultiQuadField, lambda2_multiquad_imaginary, v2
from multiquad_iwasawa.oracle import jacobi, odd_primes_below

# first suitable pair for each N
primes = odd_primes_below(5000)
for N in range(1, 6):
    l = next(p for p in primes if v2(p - 1) == N + 2)
    lp = next(q for q in primes if q % 8 == 5 and jacobi(l, q) == -1)
    K = MultiQuadField.from_classes([l * lp, -1])
    res = lambda2_multiquad_imaginary(K)
    print(f"N={N}  l={l:5d}  l'={lp:3d}  lambda_2 = {res.lambda2:3d}")

# the breakdown for the last one: one contribution per prime of l l',
# minus 2^r, plus delta = 1 because d = 1
for c in res.terms["contributions"]:
    print(f"  p={c['prime']:5d}  2^{c['exponent']} = {c['value']}")
print("  unit term", res.terms["unit_term"], " delta", res.terms["delta"])

# Greenberg's conjecture for the real quadratic subfield is assumed; a
# different lambda_2(K^+) just shifts the answer
print(lambda2_multiquad_imaginary(K, lambda_plus=3).lambda2 - res.lambda2)
