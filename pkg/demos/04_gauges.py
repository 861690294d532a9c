"""Exact Minkowski functionals of balanced rational polytopes.

Each value is an optimal LP solution over the rationals, shipped with a
certificate that weak duality alone can re-check.
"""
from fractions import Fraction

from hullnorm.dyadic import fmt

from hullnorm.gauge import (check_certificate, cross_polytope, gauge, gauge_certified, hypercube,
                            is_M_seminorm, polytope)

x = (Fraction(1, 3), Fraction(-3, 4))
shown = ", ".join(map(str, x))
for name, p in (("cross-polytope", cross_polytope(2)), ("square", hypercube(2))):
    g = gauge_certified(p, x)
    print(f"{name:<15} gauge({shown}) = {g.value}  certificate ok: {check_certificate(p, x, g)}")

seg = polytope([(1, 0), (-1, 0)])
print("segment gauge of (0, 1):", fmt(gauge(seg, (0, 1))))

pairs = [((1, 0), (0, 1)), ((Fraction(1, 2), 2), (1, 0))]
print("square is an M-seminorm:", is_M_seminorm(hypercube(2), pairs))
print("cross-polytope is an M-seminorm:", is_M_seminorm(cross_polytope(2), pairs))
