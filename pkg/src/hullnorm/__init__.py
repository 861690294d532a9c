"""Pseudo-norms synthesised from hull structures on finite commutative monoids.

The package works on finite carriers with exact arithmetic: subsets are int
bitmasks, values are dyadic fractions, and every guaranteed property of a
construction is re-checked exhaustively on the instance at hand.
"""
from .boolfn import FiniteBooleanAlgebra, fn_equivalence_suite, is_submeasure, make_ba
from .dyadic import TOP
from .gauge import RationalPolytope, gauge, polytope
from .hull import Certificate, HullStructure, make_builtin, powerset
from .monoid import FiniteCommMonoid, make_monoid
from .synth import (PseudoNorm, combine, continuity_transfer, generate_family, induced_filter,
                    regularize_pnorm, symmetrize, synth_additive, synth_QR, synth_translation,
                    synthesize)
from .zerotop import QString, ZeroFilter, make_zero_filter, refine_string

__all__ = [
    "TOP", "Certificate", "FiniteBooleanAlgebra", "FiniteCommMonoid", "HullStructure", "PseudoNorm",
    "QString", "RationalPolytope", "ZeroFilter", "combine", "continuity_transfer", "fn_equivalence_suite",
    "gauge", "generate_family", "induced_filter", "is_submeasure", "make_ba", "make_builtin",
    "make_monoid", "make_zero_filter", "polytope", "powerset", "refine_string", "regularize_pnorm",
    "symmetrize", "synth_QR", "synth_additive", "synth_translation", "synthesize",
]
