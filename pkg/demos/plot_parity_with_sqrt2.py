"""
Class number parity of fields containing sqrt 2
===============================================

The classifier works on the odd part of the field: for L real it strips
sqrt 2 and asks whether what is left has trivial cyclotomic Z_2 invariants;
for K imaginary it compares the odd part with four small families.
"""

from multiquad_iwasawa import MultiQuadField, classify_parity
from multiquad_iwasawa.oracle import bqf_class_number

for text in ("2,-1", "2,-3", "2,-5", "2,-7", "2,-1,-3", "2,-11,33", "2,3", "2,17", "2,41", "3,-1"):
    v = classify_parity(MultiQuadField.from_text(text))
    print(f"{text:10s} {v.verdict.value:12s} {v.matched_case or ''}")

# an outside check on Q(sqrt 2, sqrt -p): h = Q h(-p) h(-2p) / 2 with Q = 1 or 2,
# so an Odd verdict needs h(-p) h(-2p) to have at most one factor of 2
for p in (3, 5, 7, 11, 13, 19):
    disc = -p if p % 4 == 3 else -4 * p
    X = bqf_class_number(disc) * bqf_class_number(-8 * p)
    v = classify_parity(MultiQuadField.from_classes([2, -p]))
    print(p, v.verdict.value, X)

# the verdict does not depend on how the field was written down
assert classify_parity(MultiQuadField.from_text("2,-11,33")) == classify_parity(
    MultiQuadField.from_text("-22,-3,-6"))
