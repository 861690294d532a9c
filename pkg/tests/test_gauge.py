import random
from fractions import Fraction

import pytest

from hullnorm.dyadic import is_top
from hullnorm.gauge import (DimensionMismatch, EmptyCore, NotBalanced, check_certificate,
                            cross_polytope, gauge, gauge_certified, hypercube, is_M_seminorm,
                            polytope, product_polytope, random_balanced, random_point,
                            read_polytope, seminorm_axioms, symm_core, write_polytope)

F = Fraction


def test_cross_polytope_values():
    p = cross_polytope(2)
    assert gauge(p, (1, 1)) == 2
    assert gauge(p, (0, 0)) == 0
    assert gauge(p, (F(-1, 3), F(1, 2))) == F(5, 6)


def test_hypercube_values():
    assert gauge(hypercube(3), (F(1, 2), -2, 1)) == 2


def test_segment_is_top_off_its_line():
    seg = polytope([(1, 0), (-1, 0)])
    assert is_top(gauge(seg, (0, 1)))
    assert gauge(seg, (3, 0)) == 3


def test_certificates_verify():
    p = cross_polytope(3)
    for x in [(1, 2, 3), (0, 0, 0), (F(1, 2), F(-1, 4), 0)]:
        g = gauge_certified(p, x)
        assert check_certificate(p, x, g)
    seg = polytope([(1, 0), (-1, 0)])
    assert check_certificate(seg, (0, 1), gauge_certified(seg, (0, 1)))


def test_formulas_on_random_points():
    rng = random.Random(5)
    cross, cube = cross_polytope(3), hypercube(3)
    for _ in range(30):
        x = random_point(rng, 3)
        assert gauge(cross, x) == sum(abs(a) for a in x)
        assert gauge(cube, x) == max(abs(a) for a in x)


def test_seminorm_axioms():
    rng = random.Random(11)
    p = random_balanced(rng, 2, 3)
    pairs = [(random_point(rng, 2), random_point(rng, 2)) for _ in range(100)]
    rep = seminorm_axioms(p, pairs, scalars=[F(-3, 2)])
    assert rep.subadditive == 100 and rep.homogeneous == 200


def test_symm_core():
    core = symm_core([(1, 0), (-1, 0), (0, 2)])
    assert set(core.vertices) == {(1, 0), (-1, 0)}
    with pytest.raises(EmptyCore):
        symm_core([(1, 0), (0, 2)])


def test_m_seminorm():
    sample = [((1, 0), (0, 1)), ((F(1, 2), 2), (1, 0))]
    assert is_M_seminorm(hypercube(2), sample)
    assert not is_M_seminorm(cross_polytope(2), sample)
    with pytest.raises(ValueError):
        is_M_seminorm(hypercube(2), [((-1, 0), (0, 1))])


def test_product_polytope_is_max():
    p = product_polytope(cross_polytope(1), cross_polytope(2))
    assert gauge(p, (F(1, 2), 1, 1)) == 2
    assert gauge(p, (3, F(1, 2), 0)) == 3


def test_errors():
    with pytest.raises(NotBalanced):
        gauge(polytope([(1, 0), (0, 1)]), (1, 1))
    with pytest.raises(DimensionMismatch):
        gauge(cross_polytope(2), (1, 1, 1))
    with pytest.raises(DimensionMismatch):
        polytope([(1, 0), (1,)])


def test_polytope_file_round_trip(tmp_path):
    p = polytope([(F(1, 2), 1), (F(-1, 2), -1), (2, 0), (-2, 0)])
    path = tmp_path / "p.txt"
    write_polytope(path, p)
    assert read_polytope(path) == p
