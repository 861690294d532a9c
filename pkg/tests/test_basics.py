"""Bitmask subsets and exact dyadic values."""
from fractions import Fraction

import pytest

from hullnorm import dyadic
from hullnorm import subsets as ss


def test_mask_round_trip():
    m = ss.mask([0, 3, 5])
    assert ss.elements(m) == [0, 3, 5]
    assert ss.fmt(m) == "{0,3,5}"
    assert ss.parse("{0,3,5}") == m
    assert ss.parse("{}") == 0
    assert ss.card(m) == 3


def test_subset_relations():
    assert ss.is_subset(ss.mask([1]), ss.mask([0, 1]))
    assert not ss.is_subset(ss.mask([2]), ss.mask([0, 1]))
    assert ss.full(4) == 0b1111


@pytest.mark.parametrize("bad", ["{a}", "{1,,2}", "{-1}"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        ss.parse(bad)


def test_dyadic_grid():
    assert dyadic.is_dyadic(Fraction(3, 8))
    assert not dyadic.is_dyadic(Fraction(1, 3))
    assert dyadic.exponent(Fraction(3, 8)) == 3
    assert dyadic.on_grid(Fraction(1, 4), 2)
    assert not dyadic.on_grid(Fraction(1, 8), 2)


def test_top_arithmetic():
    top = dyadic.TOP
    assert dyadic.add(top, Fraction(1, 2)) == top
    assert dyadic.clip(top) == 1
    assert dyadic.clip(Fraction(3, 2)) == 1
    assert dyadic.scale(0, top) == 0
    assert dyadic.fmt(top) == "top"
    assert dyadic.fmt(Fraction(1)) == "1/1"
    assert dyadic.coerce("top") == top
    assert dyadic.coerce("3/4") == Fraction(3, 4)
