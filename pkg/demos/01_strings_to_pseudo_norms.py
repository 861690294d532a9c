"""From a shrinking string of neighbourhoods to a pseudo-norm on Z8.

The string {0,1,2,6,7} ⊇ {0,1,7} ⊇ {0} ⊇ ... halves at every step
(U_n + U_n ⊆ U_{n-1}), and the synthesised pseudo-norm reads off, for each
element, the first dyadic level whose set contains it.
"""
from fractions import Fraction

from hullnorm import QString, make_builtin, make_monoid, powerset, synthesize
from hullnorm import subsets as ss
from hullnorm.dyadic import fmt
from hullnorm.synth import dyadic_level_set, regularize_pnorm

z8 = make_monoid("cyclic(8)")
s = QString(z8, (ss.mask([0, 1, 2, 6, 7]), ss.mask([0, 1, 7])), ss.mask([0]))
print("string", s.describe())

for q in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)):
    print(f"  level {q}: {ss.fmt(dyadic_level_set(s, q, 2))}")

rho = synthesize(z8, powerset(8), s)
print("pseudo-norm:", " ".join(f"{e}:{fmt(v)}" for e, v in enumerate(rho.values)))

# the string is symmetric already, so regularising against symmetric sets changes nothing
sym = regularize_pnorm(z8, make_builtin("symmetric", z8), rho)
print("symmetric regularisation unchanged:", sym == rho)
