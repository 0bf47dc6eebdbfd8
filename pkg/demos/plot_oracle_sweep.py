"""
Checking the checker
====================

run_sweeps compares every closed form with a brute-force oracle. Planting a
one-character fault in a branch condition shows that the sweep finds it, and
finds it exactly on the boundary.
"""

from multiquad_iwasawa.arith import v2
from multiquad_iwasawa.oracle import SweepConfig, parse_config, run_sweeps

clean = run_sweeps(SweepConfig(suites=("order", "f2n", "residual"), p_max=1000))
print(clean.per_suite, clean.passed)

# "n < v" flipped to "n <= v" in the two-branch form
cfg = parse_config("""
suites = f2n
p_max = 60
n_max = 8
inject_fault = f2n
""")
rep = run_sweeps(cfg)
for _, (p, n), want, got in rep.failures:
    print(f"p={p:2d} n={n}  v2(p^2-1)={v2(p * p - 1)}  oracle {want}, closed form {got}")
