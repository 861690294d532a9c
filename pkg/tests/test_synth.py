from fractions import Fraction

import pytest

from hullnorm import oracles
from hullnorm import subsets as ss
from hullnorm.hull import from_members, make_builtin
from hullnorm.monoid import boolean_sym_diff, cyclic, saturating_cube
from hullnorm.synth import (NotAdditive, NotAPseudoNorm, NotBasic, NotContinuousAtZero,
                            NotEnhancible, NotTranslationInvariant, PseudoNorm, check_pseudo_norm,
                            combine, continuity_delta, continuity_transfer, dyadic_level_set,
                            generate_family, induced_filter, is_rho_continuous, regularize_pnorm,
                            symmetrize, synth_additive, synth_QR, synth_translation, synthesize,
                            validate_string)
from hullnorm.zerotop import QString, filter_equal, make_zero_filter

F = Fraction
Z8_RHO = (0, F(1, 2), 1, 1, 1, 1, 1, F(1, 2))


# -- strings and level sets ---------------------------------------------------

def test_validate_string(z8, z8_string, z8_powerset):
    assert validate_string(z8, z8_powerset, z8_string)
    assert validate_string(z8, make_builtin("symmetric", z8), z8_string)
    bad = QString(z8, (ss.mask([0, 1]), ss.mask([0, 1])), 1)
    c = validate_string(z8, z8_powerset, bad)
    assert not c.holds


def test_validate_string_needs_closed_sets(z8, z8_string):
    lopsided = make_builtin("cosets", (z8, ss.mask([0, 4])))
    assert not validate_string(z8, lopsided, z8_string)


@pytest.mark.parametrize("q, expect", [
    (F(1, 2), [0, 1, 7]),
    (F(3, 4), [0, 1, 7]),
    (F(1, 4), [0]),
    (F(1), [0, 1, 2, 6, 7]),
    (F(3, 2), [0, 1, 2, 3, 5, 6, 7]),
])
def test_level_sets_z8(z8, z8_string, q, expect):
    assert dyadic_level_set(z8_string, q, 2) == ss.mask(expect)
    assert oracles.level_set(z8.table, 0, 8, z8_string.prefix, z8_string.tail, q, 2) == ss.mask(expect)


def test_level_set_off_grid(z8_string):
    with pytest.raises(ValueError):
        dyadic_level_set(z8_string, F(1, 8), 2)


# -- synthesis ------------------------------------------------------------------

def test_synth_additive_z8(z8, z8_string, z8_powerset):
    rho = synth_additive(z8, z8_powerset, z8_string)
    assert rho.values == Z8_RHO
    assert rho.kernel == 1
    assert rho.values == oracles.string_pseudo_norm(z8.table, 0, 8, z8_string.prefix, z8_string.tail, 2)


def test_synth_constant_string(z8, z8_powerset):
    g = ss.full(8)
    rho = synth_additive(z8, z8_powerset, QString(z8, (g,), g))
    assert set(rho.values) == {0}


def test_synth_boolean_ideal():
    # V_{1/4} = U_2 + T is the tail {∅}, so {1} first appears at level 1/2
    m = boolean_sym_diff(3)
    ideal = ss.mask([0, 1])
    s = QString(m, (ideal, ideal), 1)
    rho = synth_additive(m, make_builtin("lower", m), s)
    assert rho.values == (0, F(1, 2), 1, 1, 1, 1, 1, 1)


def test_synth_translation_chain():
    m = saturating_cube(3, 1)
    s = QString(m, (ss.mask([0, 1, 2]), ss.mask([0, 1])), 1)
    full = make_builtin("full", m)
    theta = synth_translation(m, full, s)
    assert theta.values == (0, F(1, 2), 1, 1)
    assert synthesize(m, full, s) == theta


def test_synth_translation_powerset_is_raw(z8, z8_string, z8_powerset):
    assert synth_translation(z8, z8_powerset, z8_string).values == Z8_RHO


def test_synth_translation_strictly_below():
    # translates of {0,2,3} in Z6: translation-invariant, not additive, and
    # V_{1/2} = {0,2,3,5} is not closed (corpus search, pinned in translation6.hn)
    m = cyclic(6)
    h = from_members(6, [m.translate(e, ss.mask([0, 2, 3])) for e in range(6)])
    s = QString(m, (ss.full(6), ss.mask([0, 2, 3])), ss.mask([0, 3]))
    theta = synth_translation(m, h, s)
    raw = oracles.string_pseudo_norm(m.table, 0, 6, s.prefix, s.tail, 2)
    assert raw == (0, 1, F(1, 2), 0, 1, F(1, 2))
    assert theta.values == (0, F(1, 2), F(1, 2), 0, F(1, 2), F(1, 2))
    grid = [F(j, 4) for j in range(5)]
    assert oracles.largest_grid_minorant(h.close, raw, grid) == theta.values


def test_synth_needs_capability():
    m = saturating_cube(2, 2)
    full = make_builtin("full", m)
    s = QString(m, (ss.full(9),), ss.full(9))
    with pytest.raises(NotAdditive):
        synth_additive(m, full, s)
    z = cyclic(6)
    sym = make_builtin("symmetric", z)
    with pytest.raises(NotTranslationInvariant):
        synth_translation(z, sym, QString(z, (ss.full(6),), ss.full(6)))


# -- pseudo-norms -----------------------------------------------------------------

def test_pseudo_norm_validation(z8):
    assert check_pseudo_norm(z8, Z8_RHO)
    bad = (0, 1, 0, 0, 0, 0, 0, 0)
    c = check_pseudo_norm(z8, bad)
    assert not c.holds and c.witness is not None
    with pytest.raises(NotAPseudoNorm):
        PseudoNorm(z8, bad)
    with pytest.raises(NotAPseudoNorm):
        PseudoNorm(z8, (F(1, 2),) + Z8_RHO[1:])


def test_pseudo_norm_with_top(z8):
    rho = PseudoNorm(z8, (0, "top", "top", "top", 0, "top", "top", "top"))
    assert rho.kernel == ss.mask([0, 4])
    assert rho.sublevel(F(1)) == ss.mask([0, 4])


def test_regularize_powerset_identity(z8, z8_powerset):
    rho = PseudoNorm(z8, Z8_RHO)
    assert regularize_pnorm(z8, z8_powerset, rho) == rho


def test_regularize_chain_lower():
    # input is not subadditive (1/2 > 1/4 + 1/4), so only the table is compared
    m = saturating_cube(3, 1)
    out = regularize_pnorm(m, make_builtin("lower", m), (0, F(1, 2), F(1, 4), 1))
    assert out.values == (0, F(1, 2), F(1, 2), 1)


def test_regularize_boolean_counting():
    m = boolean_sym_diff(2)
    rho = PseudoNorm(m, (0, F(1, 2), F(1, 2), 1))
    assert regularize_pnorm(m, make_builtin("lower", m), rho) == rho


def test_regularize_needs_basic(z8):
    with pytest.raises(NotBasic):
        regularize_pnorm(z8, make_builtin("submonoids", z8), Z8_RHO)


def test_symmetrize():
    z3 = cyclic(3)
    rho = PseudoNorm(z3, (0, F(1, 4), F(1, 2)))
    assert symmetrize(z3, rho).values == (0, F(1, 2), F(1, 2))
    m = boolean_sym_diff(2)
    mu = PseudoNorm(m, (0, F(1, 4), F(1, 2), F(1, 2)))
    assert symmetrize(m, mu) == mu


def test_combine(z8):
    rho = PseudoNorm(z8, Z8_RHO)
    assert combine([rho]).values == tuple(v / 2 for v in Z8_RHO)
    assert combine([rho, rho]).values == tuple(v / 2 for v in Z8_RHO)
    ind = PseudoNorm(z8, (0,) + (1,) * 7)
    both = combine([rho, ind])
    assert both[1] == F(1, 4)
    assert both.values == tuple(max(a / 2, b / 4) for a, b in zip(Z8_RHO, ind.values))


def test_rho_continuity():
    rho = (0, F(1, 2), 1, F(1, 2))
    assert is_rho_continuous((0, F(1, 4), F(1, 2), F(1, 4)), rho)
    assert is_rho_continuous(tuple(min(v, 1) for v in rho), rho)
    assert not is_rho_continuous((0, 1, 1, 1), (0, 0, 0, 0))
    assert continuity_delta((0, 1, 1, 1), (0, 0, 0, 0)) is None
    assert continuity_delta((0, 1, 1, 1), rho) == F(1, 2)


def test_induced_filter(z8):
    assert induced_filter(PseudoNorm(z8, (0,) * 8)).least == ss.full(8)
    f = induced_filter(PseudoNorm(z8, Z8_RHO))
    assert f.base == (ss.full(8), ss.mask([0, 1, 7]), 1)
    discrete = induced_filter(PseudoNorm(z8, (0,) + (F(1, 4),) * 7))
    assert discrete.least == 1


# -- filters to pseudo-norms ----------------------------------------------------------

def test_synth_qr_powerset_reduces(z8, z8_base, z8_powerset):
    f = make_zero_filter(z8, z8_base)
    rho = synth_QR(f, z8_powerset, z8_powerset, z8_base)
    assert rho.values == Z8_RHO


def test_synth_qr_boolean_ideal():
    m = boolean_sym_diff(3)
    low = make_builtin("lower", m)
    f = make_zero_filter(m, [ss.mask([0, 1])])
    rho = synth_QR(f, low, low, list(f.base))
    assert rho.values == (0, 0, 1, 1, 1, 1, 1, 1)


def test_synth_qr_square():
    m = saturating_cube(3, 2)
    f = make_zero_filter(m, [ss.mask([0, 1, 2, 4, 5, 8]), ss.mask([0, 1, 4]), 1])
    rho = synth_QR(f, make_builtin("full", m), make_builtin("lower", m), list(f.base))
    expect = [1] * 16
    expect[0] = 0
    expect[1] = expect[4] = F(1, 2)
    assert list(rho.values) == expect


def test_synth_qr_not_enhancible():
    # the symmetric core of {0,1} in Z3 is {0}, which is not a member of q
    m = cyclic(3)
    q = from_members(3, [ss.mask([0, 1])])
    r = make_builtin("symmetric", m)
    f = make_zero_filter(m, [ss.full(3)])
    with pytest.raises(NotEnhancible):
        synth_QR(f, q, r, [ss.full(3)])


def test_generate_family_z8(z8, z8_base, z8_powerset):
    f = make_zero_filter(z8, z8_base)
    fam = generate_family(f, make_builtin("symmetric", z8), z8_powerset)
    assert len(fam.norms) == 3
    assert all(r.symmetric for r in fam.norms)
    assert filter_equal(induced_filter(fam.combined), f)
    assert fam.combined[1] == F(1, 4)


def test_generate_family_discrete(z8, z8_powerset):
    f = make_zero_filter(z8, [1])
    fam = generate_family(f, make_builtin("symmetric", z8), z8_powerset)
    assert all(r.kernel == 1 for r in fam.norms)
    assert filter_equal(induced_filter(fam.combined), f)


def test_generate_family_boolean():
    m = boolean_sym_diff(3)
    low = make_builtin("lower", m)
    f = make_zero_filter(m, [ss.mask([0, 1])])
    fam = generate_family(f, low, low)
    assert fam.combined.kernel == ss.mask([0, 1])


def test_continuity_transfer(z8, z8_base, z8_powerset):
    f = make_zero_filter(z8, z8_base)
    sym = make_builtin("symmetric", z8)
    rho = continuity_transfer(Z8_RHO, f, sym, z8_powerset)
    assert rho.kernel == 1
    assert is_rho_continuous(Z8_RHO, rho)
    zero = continuity_transfer((0,) * 8, f, sym, z8_powerset)
    assert is_rho_continuous((0,) * 8, zero)
    with pytest.raises(NotContinuousAtZero):
        continuity_transfer((F(1, 2),) * 8, f, sym, z8_powerset)
