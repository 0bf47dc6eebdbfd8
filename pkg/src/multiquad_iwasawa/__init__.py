"""Iwasawa lambda_2 invariants and 2-class number parity of multi-quadratic fields.

The public surface mirrors the submodules:

arith     valuations, squarefree kernels, Legendre and quartic symbols,
          orders of odd primes modulo powers of 2
tower     splitting of odd primes along the cyclotomic Z_2-tower
field     multi-quadratic fields as F_2-subspaces of square classes
lambda2   closed forms for lambda_2 of imaginary multi-quadratic fields
parity    class number parity for fields containing sqrt 2
oracle    brute-force cross-checks and the sweep harness
cli       command-line reports
"""

from .arith import f2n, legendre, order_mod_2pow, quartic_symbol, sqf, v2
from .errors import HypothesisError, InvariantError
from .field import (
    MultiQuadField,
    canonical_presentation,
    maximal_real_subfield,
    narrow_genus_field,
    parse_radicands,
)
from .lambda2 import (
    LambdaResult,
    combinator_over_Q,
    kida_relation_check,
    lambda2_general_F_combinator,
    lambda2_imaginary_quadratic,
    lambda2_multiquad_imaginary,
)
from .parity import ParityVerdict, Verdict, classify_parity, yamamoto_case
from .tower import (
    Behavior,
    SplittingReport,
    num_primes_Qn,
    residual_degree_Qn,
    splitting_Qn_quadratic,
)

__version__ = "0.1.0"

__all__ = [
    "Behavior",
    "HypothesisError",
    "InvariantError",
    "LambdaResult",
    "MultiQuadField",
    "ParityVerdict",
    "SplittingReport",
    "Verdict",
    "canonical_presentation",
    "classify_parity",
    "combinator_over_Q",
    "f2n",
    "kida_relation_check",
    "lambda2_general_F_combinator",
    "lambda2_imaginary_quadratic",
    "lambda2_multiquad_imaginary",
    "legendre",
    "maximal_real_subfield",
    "narrow_genus_field",
    "num_primes_Qn",
    "order_mod_2pow",
    "parse_radicands",
    "quartic_symbol",
    "residual_degree_Qn",
    "splitting_Qn_quadratic",
    "sqf",
    "v2",
    "yamamoto_case",
]
