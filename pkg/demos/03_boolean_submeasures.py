"""Group topologies on a Boolean algebra that have a base of lower sets.

For every ideal of the eight-element algebra the three characterisations
agree and the ideal comes back as the kernel of the generated submeasure.
A subgroup that is not a lower set fails all three together.
"""
from hullnorm import fn_equivalence_suite, make_ba, make_zero_filter
from hullnorm import subsets as ss
from hullnorm.boolfn import enumerate_ideals, fn_filter_from_ideal, table

ba = make_ba(3)
for ideal in enumerate_ideals(ba):
    rep = fn_equivalence_suite(ba, fn_filter_from_ideal(ba, ideal))
    kernel = rep.family.combined.kernel
    print(f"ideal {ss.fmt(ideal):<24} clauses {rep.clauses}  kernel back: {kernel == ideal}")

ba2 = make_ba(2)
odd = make_zero_filter(ba2.sym, [ss.mask([0, 3])])
print("subgroup {∅, ab}:", fn_equivalence_suite(ba2, odd).clauses)

ideal = ss.mask([0, 1])
rep = fn_equivalence_suite(ba, fn_filter_from_ideal(ba, ideal))
print("combined submeasure for the ideal generated by the first atom:")
print(table(ba, rep.family.combined.values))
