"""Documented single-entry mutations of the packaged fixtures.

Each entry replaces one line of one fixture. Every mutated file must make
``suite --fixtures`` exit 4 and leave a witness that fails again on replay.
"""
from pathlib import Path

from hullnorm.suites import packaged_fixtures

MUTATIONS = [
    # (fixture, original line, mutated line, what should notice)
    ("z8.hn", "prefix {0,1,7}", "prefix {0,1,2,7}",
     "{0,1,2,7} doubled escapes U_0, so the string is rejected"),
    ("z8.hn", "point 1 {1}", "point 1 {1,2}",
     "P stops being additive, so additive synthesis refuses it"),
    ("boolean3.hn", "prefix {0,1}", "prefix {0,3}",
     "{0,3} is not a lower set, so the string is not made of closed sets"),
    ("cube.hn", "kind lower", "kind full",
     "the Low hull becomes the full-set hull, which is not 1-algebraic"),
    ("cosets16.hn", "point 9 {1,9}", "point 9 {9}",
     "closure of {9} doubled leaves the hull, so K is not additive"),
    ("translation6.hn", "member {0,3,5}", "member {0,3,4}",
     "the member family stops being translation-invariant"),
    ("translation6.hn", "tail {0,3}", "tail {0}",
     "the kernel shrinks, so the pinned regularised values change"),
]


def fixture_path(name: str) -> Path:
    return next(Path(p) for p in packaged_fixtures() if Path(p).name == name)


def mutate(name: str, old: str, new: str) -> str:
    lines = fixture_path(name).read_text().splitlines()
    hits = [i for i, ln in enumerate(lines) if ln == old]
    assert hits, f"{old!r} not in {name}"
    lines[hits[0]] = new
    return "\n".join(lines) + "\n"
