"""A zero-neighbourhood filter is generated by the pseudo-norms it induces.

Start from a filter base on Z8, build one pseudo-norm per base set, merge
them into a single pseudo-norm, and check that its sublevel sets give back
the same filter.
"""
from hullnorm import generate_family, induced_filter, make_builtin, make_monoid, make_zero_filter, powerset
from hullnorm import subsets as ss
from hullnorm.dyadic import fmt
from hullnorm.zerotop import filter_equal

z8 = make_monoid("cyclic(8)")
f = make_zero_filter(z8, [ss.mask([0, 1, 2, 6, 7]), ss.mask([0, 1, 7]), ss.mask([0])])
print("filter base", f.describe(), "least neighbourhood", ss.fmt(f.least))

family = generate_family(f, make_builtin("symmetric", z8), powerset(8))
for i, rho in enumerate(family.norms):
    print(f"  generator {i}:", " ".join(fmt(v) for v in rho.values))
print("  combined:   ", " ".join(fmt(v) for v in family.combined.values))
print("combined regenerates the filter:", filter_equal(induced_filter(family.combined), f))
