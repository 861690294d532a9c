from fractions import Fraction

import pytest

from hullnorm import oracles
from hullnorm import subsets as ss
from hullnorm.hull import (EXHAUSTIVE, MissingContext, NotOneAlgebraic, Poset, check_closure_axioms, core,
                           from_members, from_point_closures, full_sets, intersect, is_enhancible,
                           is_lower_continuous, is_one_algebraic, lower_regularize, lower_sets,
                           make_builtin, powerset, upper_regularize)
from hullnorm.monoid import cyclic, saturating_cube

from .conftest import chain

F = Fraction
A, B, C = 0, 1, 2


def abc_members():
    """X = {a,b,c} with members X, {a,b}, {b}."""
    return from_members(3, [ss.mask([A, B]), ss.mask([B])])


def test_close_lower_chain():
    assert lower_sets(chain(3)).close(ss.mask([2])) == ss.mask([0, 1, 2])


def test_close_powerset():
    assert powerset(4).close(ss.mask([1, 3])) == ss.mask([1, 3])


def test_close_explicit_members():
    assert abc_members().close(ss.mask([B, C])) == ss.mask([A, B, C])


def test_core_lower_chain():
    assert core(lower_sets(chain(3)), ss.mask([0, 2])) == ss.mask([0])


def test_core_antichain():
    anti = Poset(3, lambda a, b: a == b)
    assert core(lower_sets(anti), ss.mask([0, 1])) == ss.mask([0, 1])


def test_core_needs_one_algebraic():
    with pytest.raises(NotOneAlgebraic):
        core(full_sets(chain(3)), ss.mask([0]))


def test_one_algebraic():
    assert is_one_algebraic(lower_sets(chain(4)))
    assert is_one_algebraic(powerset(5))
    c = is_one_algebraic(full_sets(chain(3)))
    assert not c.holds and c.tag == EXHAUSTIVE
    # the witness really separates the closure from the union of point closures
    h = full_sets(chain(3))
    a = ss.parse(c.witness)
    assert h.close(a) != _union_points(h, a)
    assert h.close(ss.mask([0, 2])) == ss.mask([0, 1, 2])


def _union_points(h, a):
    out = 0
    for x in ss.bits(a):
        out |= h.point(x)
    return out


@pytest.mark.parametrize("h", [lower_sets(chain(4)), full_sets(chain(4)), abc_members(), powerset(4)])
def test_closure_axioms(h):
    assert check_closure_axioms(h)


def test_point_closures_must_be_preorder():
    with pytest.raises(ValueError):
        from_point_closures([ss.mask([1]), ss.mask([1])])
    with pytest.raises(ValueError):
        from_point_closures([ss.mask([0, 1]), ss.mask([1, 2]), ss.mask([2])])


def test_lower_continuity():
    h = lower_sets(chain(3))
    assert is_lower_continuous(h, (0, F(1, 2), 1))
    c = is_lower_continuous(h, (1, 0, 1))
    assert not c.holds
    assert "0" in str(c.witness) and "{1}" in str(c.witness)
    assert is_lower_continuous(powerset(3), (F(1, 4), 0, 1))


def test_upper_regularize():
    assert upper_regularize(lower_sets(chain(3)), (1, 0, F(1, 2))) == (1, 1, 1)
    vee = Poset(3, lambda a, b: a == b or b == C)
    got = upper_regularize(lower_sets(vee), (F(1, 4), F(1, 2), 0))
    assert got == (F(1, 4), F(1, 2), F(1, 2))
    f = (F(1, 4), 0, F(3, 4))
    assert upper_regularize(powerset(3), f) == f


def test_lower_regularize_against_enumeration():
    h = abc_members()
    f = (F(1), F(0), F(1, 2))
    expect = (F(1, 2), F(0), F(1, 2))
    assert lower_regularize(h, f) == expect
    grid = [F(k, 4) for k in range(5)]
    assert oracles.largest_grid_minorant(h.close, f, grid) == expect


def test_lower_regularize_fixed_points():
    h = lower_sets(chain(3))
    f = (0, F(1, 4), 1)
    assert lower_regularize(h, f) == f
    assert lower_regularize(abc_members(), (0, 0, 0)) == (0, 0, 0)


def test_enhancible_examples():
    m = saturating_cube(3, 1)
    full, low = make_builtin("full", m), make_builtin("lower", m)
    assert is_enhancible(full, powerset(4))
    assert is_enhancible(full, low)
    assert is_enhancible(low, low)


def test_enhancible_exact_path_matches_enumeration():
    # 1-algebraic q takes the exact path; compare with enumerating members
    m = cyclic(6)
    sym = make_builtin("symmetric", m)
    sub = make_builtin("cosets", (m, ss.mask([0, 3])))
    for q, r in [(sym, sym), (sub, sym), (sym, sub), (sub, sub), (powerset(6), sym)]:
        fast = is_enhancible(q, r)
        assert fast.tag == EXHAUSTIVE
        zbit = 1
        slow = all(q.is_member(core(r, u)) and core(r, u) & zbit
                   for u in range(1 << 6) if u & zbit and q.is_member(u))
        assert fast.holds == slow


def test_intersect_lower_and_upper():
    q = lower_sets(chain(3))
    r = from_members(3, [ss.mask([1, 2]), ss.mask([2])])
    both = intersect(q, r)
    assert both.close(ss.mask([1])) == ss.mask([0, 1, 2])
    assert intersect(powerset(3), r).close(ss.mask([1])) == r.close(ss.mask([1]))
    assert intersect(q, q).close(ss.mask([1])) == q.close(ss.mask([1]))


def test_builtin_needs_order():
    with pytest.raises(MissingContext):
        make_builtin("lower", cyclic(4))
