from fractions import Fraction

import pytest

from hullnorm import subsets as ss
from hullnorm.dyadic import is_top
from hullnorm.structfile import ParseError, dump, parse
from hullnorm.suites import packaged_fixtures

MEMBERS = """
[monoid]
spec cyclic(6)

[hull T]
member {0,2,3}
member {1,3,4}

[string U]
hull T
prefix {0,2,3}
tail {0}

[pnorm p]
0 0
1 1/2
2 top
3 1
4 1
5 1/2
"""


def test_members_kind_is_inferred():
    doc = parse(MEMBERS)
    assert doc.hulls["T"].kind == "members"
    t = doc.hull("T")
    assert t.close(ss.mask([3])) == ss.mask([3])
    assert t.close(ss.mask([0])) == ss.mask([0, 2, 3])
    assert doc.string("U").tail == 1


def test_pnorm_values():
    doc = parse(MEMBERS)
    vals = doc.pnorm_values("p")
    assert vals[1] == Fraction(1, 2)
    assert is_top(vals[2])


@pytest.mark.parametrize("path", packaged_fixtures())
def test_dump_round_trip(path):
    doc = parse(open(path).read())
    text = dump(doc)
    assert dump(parse(text)) == text


@pytest.mark.parametrize("text, line", [
    ("[monoid]\nspec cyclic(4)\n[hull H]\nkind nonsense\n", 4),
    ("[monoid]\nspec cyclic(4)\n[filter F]\nbase {0,x}\n", 4),
    ("[wibble]\n", 1),
    ("stray line\n", 1),
    ("[pnorm p]\n0 1/0\n", 2),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.line == line


def test_unknown_hull_name():
    doc = parse("[monoid]\nspec cyclic(4)\n")
    assert doc.hull("symmetric").close(ss.mask([1])) == ss.mask([1, 3])
    with pytest.raises(KeyError):
        doc.hull("nosuch")
