"""Line-oriented structure files.

A file is a sequence of sections, each opened by a ``[kind NAME]`` header.
``#`` starts a comment.  Grammar, one item per line::

    [monoid]
    spec cyclic(8)

    [hull NAME]
    kind powerset|lower|full|solid|symmetric|submonoids|cosets|points|members
    sub {0,4}                 # cosets only
    point 1 {1,9}             # points only: closure of a singleton
    member {0,2,3}            # members only: generators, closed under meets

    [filter NAME]
    base {0,1,2,6,7}          # repeated, in order

    [string NAME]
    hull NAME
    prefix {0,1,2,6,7}        # repeated, U_0 first
    tail {0}

    [pnorm NAME]
    3 1/2                     # element value; missing elements are errors

    [polytope NAME]
    1/2 -1                    # one vertex per line

    [check NAME]
    run KIND key=value ...    # see hullnorm.suites
    3 1/2                     # optional golden lines

Sets are element indices.  A hull name that is not declared falls back to
the builtin kind of that name, built over the file's monoid.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import subsets as ss
from .dyadic import coerce, fmt
from .gauge import format_polytope, parse_polytope
from .hull import BUILTIN_KINDS, HullStructure, from_members, from_point_closures, make_builtin
from .monoid import FiniteCommMonoid, make_monoid
from .zerotop import QString

SECTIONS = ("monoid", "hull", "filter", "string", "pnorm", "polytope", "check")
HULL_KINDS = BUILTIN_KINDS + ("points", "members")

_HEADER = re.compile(r"^\[\s*([a-z]+)(?:\s+([A-Za-z0-9_.\-]+))?\s*\]$")


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass
class HullSpec:
    kind: str
    sub: Optional[int] = None
    points: Optional[dict] = None
    members: Optional[list] = None
    line: int = 0

    def build(self, m: FiniteCommMonoid, name: str) -> HullStructure:
        if self.kind == "points":
            pts = self.points or {}
            missing = [x for x in range(m.size) if x not in pts]
            if missing:
                raise ValueError(f"no point closure given for element {missing[0]}")
            h = from_point_closures([pts[x] for x in range(m.size)], m.zero, name=name)
        elif self.kind == "members":
            h = from_members(m.size, self.members or [], m.zero, name=name)
        elif self.kind == "cosets":
            if self.sub is None:
                raise ValueError("cosets need a 'sub' line")
            h = make_builtin("cosets", (m, self.sub))
        else:
            h = make_builtin(self.kind, m)
        h.name = name
        return h


@dataclass
class StringSpec:
    hull: str
    prefix: list
    tail: Optional[int]
    line: int = 0

    def build(self, m: FiniteCommMonoid) -> QString:
        if self.tail is None:
            raise ValueError("string needs a 'tail' line")
        prefix = tuple(self.prefix) or (self.tail,)
        return QString(m, prefix, self.tail)


@dataclass
class CheckSpec:
    kind: str
    params: dict
    data: list
    line: int = 0


@dataclass
class StructureFile:
    monoid_spec: Optional[str] = None
    hulls: dict = field(default_factory=dict)
    filters: dict = field(default_factory=dict)
    strings: dict = field(default_factory=dict)
    pnorms: dict = field(default_factory=dict)
    polytopes: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    _monoid: Optional[FiniteCommMonoid] = field(default=None, repr=False)
    _built: dict = field(default_factory=dict, repr=False)

    @property
    def monoid(self) -> FiniteCommMonoid:
        if self._monoid is None:
            if self.monoid_spec is None:
                raise ValueError("file declares no monoid")
            self._monoid = make_monoid(self.monoid_spec)
        return self._monoid

    def hull(self, name: str) -> HullStructure:
        if name not in self._built:
            spec = self.hulls.get(name)
            if spec is None:
                if name not in BUILTIN_KINDS or name == "cosets":
                    raise KeyError(f"unknown hull {name!r}")
                spec = HullSpec(name)
            self._built[name] = spec.build(self.monoid, name)
        return self._built[name]

    def string(self, name: str) -> QString:
        return self.strings[name].build(self.monoid)

    def pnorm_values(self, name: str) -> tuple:
        table = self.pnorms[name]
        size = self.monoid.size
        missing = [e for e in range(size) if e not in table]
        if missing:
            raise ValueError(f"pnorm {name} has no value for element {missing[0]}")
        extra = [e for e in table if e >= size]
        if extra:
            raise ValueError(f"pnorm {name} names element {extra[0]} outside the carrier")
        return tuple(table[e] for e in range(size))


def _set(tok: str, lineno: int) -> int:
    try:
        return ss.parse(tok)
    except ValueError:
        raise ParseError(f"bad set {tok!r}", lineno) from None


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None


def _value(tok: str, lineno: int):
    try:
        return coerce(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad value {tok!r}", lineno) from None


def parse(text: str) -> StructureFile:
    doc = StructureFile()
    section = None
    name = None
    poly_lines: list = []

    def flush_polytope():
        if section == "polytope":
            try:
                doc.polytopes[name] = parse_polytope("\n".join(poly_lines))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"polytope {name}: {exc}") from None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = _HEADER.match(line)
        if head:
            flush_polytope()
            section, name = head.group(1), head.group(2)
            if section not in SECTIONS:
                raise ParseError(f"unknown section [{section}]", lineno)
            if section == "monoid":
                if name is not None:
                    raise ParseError("[monoid] takes no name", lineno)
                if doc.monoid_spec is not None:
                    raise ParseError("second [monoid] section", lineno)
            elif name is None:
                raise ParseError(f"[{section}] needs a name", lineno)
            store = {"hull": doc.hulls, "filter": doc.filters, "string": doc.strings,
                     "pnorm": doc.pnorms, "polytope": doc.polytopes, "check": doc.checks}.get(section)
            if store is not None and name in store:
                raise ParseError(f"duplicate {section} {name}", lineno)
            if section == "hull":
                doc.hulls[name] = HullSpec("", line=lineno)
            elif section == "filter":
                doc.filters[name] = []
            elif section == "string":
                doc.strings[name] = StringSpec("", [], None, line=lineno)
            elif section == "pnorm":
                doc.pnorms[name] = {}
            elif section == "polytope":
                poly_lines = []
            continue
        if section is None:
            raise ParseError("content before the first section", lineno)
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if section == "monoid":
            if key != "spec" or not rest:
                raise ParseError("expected 'spec <monoid>'", lineno)
            doc.monoid_spec = rest
        elif section == "hull":
            spec = doc.hulls[name]
            if key == "kind":
                if rest not in HULL_KINDS:
                    raise ParseError(f"unknown hull kind {rest!r}", lineno)
                spec.kind = rest
            elif key == "sub":
                spec.sub = _set(rest, lineno)
            elif key == "point":
                x, _, s = rest.partition(" ")
                spec.points = spec.points or {}
                xi = _int(x, lineno)
                if xi in spec.points:
                    raise ParseError(f"point {xi} given twice", lineno)
                spec.points[xi] = _set(s, lineno)
            elif key == "member":
                spec.members = spec.members or []
                spec.members.append(_set(rest, lineno))
            else:
                raise ParseError(f"unknown hull key {key!r}", lineno)
        elif section == "filter":
            if key != "base":
                raise ParseError("expected 'base <set>'", lineno)
            doc.filters[name].append(_set(rest, lineno))
        elif section == "string":
            spec = doc.strings[name]
            if key == "hull":
                spec.hull = rest
            elif key == "prefix":
                spec.prefix.append(_set(rest, lineno))
            elif key == "tail":
                spec.tail = _set(rest, lineno)
            else:
                raise ParseError(f"unknown string key {key!r}", lineno)
        elif section == "pnorm":
            if not rest:
                raise ParseError("expected '<element> <value>'", lineno)
            doc.pnorms[name][_int(key, lineno)] = _value(rest, lineno)
        elif section == "polytope":
            poly_lines.append(line)
        elif section == "check":
            if key == "run":
                if name in doc.checks:
                    raise ParseError("second 'run' line", lineno)
                toks = rest.split()
                if not toks:
                    raise ParseError("'run' needs a check kind", lineno)
                params = {}
                for tok in toks[1:]:
                    k, eq, v = tok.partition("=")
                    if not eq:
                        raise ParseError(f"expected key=value, got {tok!r}", lineno)
                    params[k] = v
                doc.checks[name] = CheckSpec(toks[0], params, [], line=lineno)
            elif name not in doc.checks:
                raise ParseError("check data before its 'run' line", lineno)
            else:
                doc.checks[name].data.append(line)
    flush_polytope()
    for hname, spec in doc.hulls.items():
        if not spec.kind:
            spec.kind = "points" if spec.points else "members" if spec.members else ""
        if not spec.kind:
            raise ParseError(f"hull {hname} has no kind", spec.line)
    for sname, spec in doc.strings.items():
        if not spec.hull:
            raise ParseError(f"string {sname} has no hull", spec.line)
    return doc


def read(path) -> StructureFile:
    return parse(Path(path).read_text())


# -- writing -------------------------------------------------------------------

def format_hull(name: str, spec: HullSpec) -> list[str]:
    out = [f"[hull {name}]", f"kind {spec.kind}"]
    if spec.kind == "cosets":
        out.append(f"sub {ss.fmt(spec.sub)}")
    if spec.kind == "points":
        out += [f"point {x} {ss.fmt(spec.points[x])}" for x in sorted(spec.points)]
    if spec.kind == "members":
        out += [f"member {ss.fmt(u)}" for u in spec.members or []]
    return out


def dump(doc: StructureFile, header: str = "") -> str:
    out = [f"# {ln}" for ln in header.splitlines()]
    if doc.monoid_spec is not None:
        out += ["[monoid]", f"spec {doc.monoid_spec}", ""]
    for name, spec in doc.hulls.items():
        out += format_hull(name, spec) + [""]
    for name, base in doc.filters.items():
        out += [f"[filter {name}]"] + [f"base {ss.fmt(u)}" for u in base] + [""]
    for name, spec in doc.strings.items():
        out += [f"[string {name}]", f"hull {spec.hull}"]
        out += [f"prefix {ss.fmt(u)}" for u in spec.prefix]
        out += [f"tail {ss.fmt(spec.tail)}", ""]
    for name, table in doc.pnorms.items():
        out += [f"[pnorm {name}]"] + [f"{e} {fmt(v)}" for e, v in sorted(table.items())] + [""]
    for name, poly in doc.polytopes.items():
        out += [f"[polytope {name}]"] + format_polytope(poly).splitlines() + [""]
    for name, chk in doc.checks.items():
        params = " ".join(f"{k}={v}" for k, v in chk.params.items())
        out += [f"[check {name}]", f"run {chk.kind} {params}".rstrip()] + list(chk.data) + [""]
    return "\n".join(out).rstrip() + "\n"


def hull_spec_of(h: HullStructure, kind: str, sub: Optional[int] = None) -> HullSpec:
    """Spec that rebuilds ``h``; point tables are written for 1-algebraic kinds."""
    if kind == "points":
        return HullSpec("points", points={x: h.point(x) for x in range(h.size)})
    return HullSpec(kind, sub=sub)
