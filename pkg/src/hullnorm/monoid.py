"""Finite commutative monoids with exact subset arithmetic."""
from __future__ import annotations

import itertools
import random
import re
from typing import Optional, Sequence

import numpy as np

from . import subsets as ss
from .hull import (BY_CONSTRUCTION, DEFAULT_SAMPLES, EXHAUSTIVE, SAMPLED, Certificate,
                   HullStructure, Poset, is_one_algebraic, members)

PAIR_LIMIT = 256  # member count up to which all member pairs are checked
PAIR_SAMPLES = 10_000


class InvalidTable(ValueError):
    pass


class MissingInverse(ValueError):
    pass


NotAGroup = MissingInverse


class FiniteCommMonoid:
    """Carrier ``{0..n-1}`` with a validated commutative associative table.

    ``inverse`` is derived from the table when every element has one; the
    optional ``order`` is a :class:`~hullnorm.hull.Poset`.
    """

    def __init__(self, table, zero: int = 0, order: Optional[Poset] = None,
                 name: str = "explicit", labels: Optional[Sequence[str]] = None,
                 trusted: bool = False):
        t = np.asarray(table, dtype=np.int64)
        n = t.shape[0]
        if t.shape != (n, n) or n == 0:
            raise InvalidTable("table must be a non-empty square")
        if t.min() < 0 or t.max() >= n:
            raise InvalidTable("table entries outside the carrier")
        if not 0 <= zero < n:
            raise InvalidTable("zero outside the carrier")
        bad = np.argwhere(t != t.T)
        if len(bad):
            a, b = bad[0]
            raise InvalidTable(f"not commutative: {a}+{b}")
        bad = np.argwhere(t[zero] != np.arange(n))
        if len(bad):
            raise InvalidTable(f"zero is not a unit: {zero}+{bad[0][0]}")
        if not trusted:
            _check_associative(t)
        self.size = n
        self.zero = int(zero)
        self.table = t
        self.name = name
        self.labels = list(labels) if labels is not None else None
        self._rows = [[1 << int(v) for v in row] for row in t]
        inv = []
        for g in range(n):
            hits = np.flatnonzero(t[g] == zero)
            if len(hits) == 0:
                inv = None
                break
            inv.append(int(hits[0]))
        self.inverse = tuple(inv) if inv is not None else None
        if order is not None and order.size != n:
            raise InvalidTable("order lives on a different carrier")
        self.order = order
        self._compatible = None

    @property
    def order_compatible(self) -> bool:
        """``a ≤ b`` implies ``a + c ≤ b + c``."""
        if self._compatible is None:
            order, t, n = self.order, self.table, self.size
            self._compatible = order is not None and all(
                order.leq(int(t[a, c]), int(t[b, c]))
                for a in range(n) for b in ss.bits(order.up[a]) for c in range(n))
        return self._compatible

    @property
    def is_group(self) -> bool:
        return self.inverse is not None

    def add(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def neg(self, a: int) -> int:
        if self.inverse is None:
            raise MissingInverse(f"{self.name} has no inverses")
        return self.inverse[a]

    def label(self, e: int) -> str:
        return self.labels[e] if self.labels else str(e)

    def set_sum(self, a: int, b: int) -> int:
        """``{x + y : x ∈ a, y ∈ b}``."""
        out = 0
        ys = ss.elements(b)
        for x in ss.bits(a):
            row = self._rows[x]
            for y in ys:
                out |= row[y]
        return out

    def translate(self, e: int, a: int) -> int:
        return self.set_sum(1 << e, a)

    def preimage(self, e: int, a: int) -> int:
        """``T_e⁻¹(a) = {g : e + g ∈ a}``."""
        row = self._rows[e]
        return ss.mask(g for g in range(self.size) if row[g] & a)

    def negate(self, a: int) -> int:
        if self.inverse is None:
            raise MissingInverse(f"{self.name} has no inverses")
        return ss.mask(self.inverse[x] for x in ss.bits(a))

    def spec(self) -> str:
        """A string :func:`make_monoid` parses back to an equal monoid."""
        if self.name != "explicit" and "(" in self.name:
            return self.name
        rows = ";".join(",".join(str(int(v)) for v in row) for row in self.table)
        return f"explicit({rows})"

    def __repr__(self):
        return f"FiniteCommMonoid({self.name}, size={self.size})"


def _check_associative(t: np.ndarray) -> None:
    """``(a+b)+c == a+(b+c)`` for all triples, one ``a`` slab at a time."""
    n = t.shape[0]
    for a in range(n):
        left = t[t[a]]              # left[b, c] = (a+b)+c
        right = t[a][t]             # right[b, c] = a+(b+c)
        bad = np.argwhere(left != right)
        if len(bad):
            b, c = bad[0]
            raise InvalidTable(f"not associative: ({a},{b},{c})")


# -- factories ---------------------------------------------------------------

def cyclic(m: int) -> FiniteCommMonoid:
    idx = np.arange(m)
    return FiniteCommMonoid((idx[:, None] + idx[None, :]) % m, name=f"cyclic({m})")


def boolean_sym_diff(n: int) -> FiniteCommMonoid:
    idx = np.arange(1 << n)
    return FiniteCommMonoid(idx[:, None] ^ idx[None, :], order=_inclusion(n),
                            name=f"boolean_sym_diff({n})", trusted=n > 6)


def boolean_join(n: int) -> FiniteCommMonoid:
    idx = np.arange(1 << n)
    return FiniteCommMonoid(idx[:, None] | idx[None, :], order=_inclusion(n),
                            name=f"boolean_join({n})", trusted=n > 6)


def _inclusion(n: int) -> Poset:
    return Poset(1 << n, lambda a, b: a & ~b == 0)


def cube_coords(e: int, k: int, d: int) -> tuple[int, ...]:
    out = []
    for _ in range(d):
        out.append(e % (k + 1))
        e //= k + 1
    return tuple(out)


def cube_index(coords: Sequence[int], k: int) -> int:
    e = 0
    for c in reversed(coords):
        e = e * (k + 1) + c
    return e


def saturating_cube(k: int, d: int) -> FiniteCommMonoid:
    """``{0..k}^d`` with coordinatewise ``min(a+b, k)`` and the product order."""
    n = (k + 1) ** d
    coords = [cube_coords(e, k, d) for e in range(n)]
    table = [[cube_index([min(a + b, k) for a, b in zip(coords[x], coords[y])], k)
              for y in range(n)] for x in range(n)]
    order = Poset(n, lambda a, b: all(p <= q for p, q in zip(coords[a], coords[b])))
    labels = ["(" + ",".join(map(str, c)) + ")" for c in coords] if d > 1 else None
    return FiniteCommMonoid(table, order=order, name=f"saturating_cube({k},{d})", labels=labels)


def monogenic(index: int, period: int) -> FiniteCommMonoid:
    """``{0, g, 2g, ...}`` with ``(index+period)g = index·g``."""
    n = index + period

    def norm(s: int) -> int:
        return s if s < n else index + (s - index) % period

    table = [[norm(a + b) for b in range(n)] for a in range(n)]
    return FiniteCommMonoid(table, name=f"monogenic({index},{period})")


def product(parts: Sequence[FiniteCommMonoid]) -> FiniteCommMonoid:
    sizes = [p.size for p in parts]
    combos = list(itertools.product(*[range(s) for s in sizes]))
    index = {c: i for i, c in enumerate(combos)}
    table = [[index[tuple(p.add(a, b) for p, a, b in zip(parts, x, y))] for y in combos] for x in combos]
    zero = index[tuple(p.zero for p in parts)]
    order = None
    if all(p.order is not None for p in parts):
        order = Poset(len(combos), lambda a, b: all(
            p.order.leq(u, v) for p, u, v in zip(parts, combos[a], combos[b])))
    name = "product(" + ",".join(p.spec() for p in parts) + ")"
    return FiniteCommMonoid(table, zero=zero, order=order, name=name)


def explicit(rows: Sequence[Sequence[int]], zero: int = 0) -> FiniteCommMonoid:
    return FiniteCommMonoid(rows, zero=zero)


def _split_args(body: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


_SPEC = re.compile(r"^\s*([a-z_]+)\s*\((.*)\)\s*$", re.S)


def make_monoid(spec) -> FiniteCommMonoid:
    """Parse a monoid spec such as ``cyclic(8)`` or ``product(cyclic(2),cyclic(3))``.

    ``explicit(r0;r1;...)`` takes rows of comma-separated entries with the
    unit at index 0.
    """
    if isinstance(spec, FiniteCommMonoid):
        return spec
    m = _SPEC.match(spec)
    if not m:
        raise ValueError(f"cannot parse monoid spec {spec!r}")
    kind, body = m.group(1), m.group(2)
    if kind == "explicit":
        rows = [[int(v) for v in r.split(",")] for r in body.split(";") if r.strip()]
        return explicit(rows)
    if kind == "product":
        return product([make_monoid(a) for a in _split_args(body)])
    args = [int(a) for a in _split_args(body)]
    factories = {"cyclic": cyclic, "boolean_sym_diff": boolean_sym_diff,
                 "boolean_join": boolean_join, "saturating_cube": saturating_cube,
                 "monogenic": monogenic}
    if kind not in factories:
        raise ValueError(f"unknown monoid kind {kind!r}")
    return factories[kind](*args)


# -- capability checks ---------------------------------------------------------

def _one_algebraic(h: HullStructure) -> Certificate:
    c = h.cert("1-algebraic")
    if c is None:
        c = is_one_algebraic(h)
        h.certs[c.prop] = c
    return c


def _reduced(h: HullStructure) -> tuple[str, dict]:
    """Tag and replay info for a check run through point closures.

    The reduction is exact, so it is only as strong as the 1-algebraic
    certificate it rests on.
    """
    c = h.cert("1-algebraic")
    if c.tag == SAMPLED:
        return SAMPLED, {"seed": c.seed, "samples": c.samples}
    return EXHAUSTIVE, {}


def _member_pairs(family: list[int], seed: int):
    if len(family) <= PAIR_LIMIT:
        return itertools.product(family, repeat=2), EXHAUSTIVE
    rng = random.Random(seed)
    return ((rng.choice(family), rng.choice(family)) for _ in range(PAIR_SAMPLES)), SAMPLED


def check_additive(m: FiniteCommMonoid, h: HullStructure, seed: int = 0) -> Certificate:
    """``Q + R`` is a member whenever ``Q`` and ``R`` are.

    For 1-algebraic structures this reduces exactly to
    ``cl{x+y} ⊆ cl{x} + cl{y}`` over all pairs of points.
    """
    if _one_algebraic(h):
        tag, extra = _reduced(h)
        for x in range(m.size):
            for y in range(x, m.size):
                if not ss.is_subset(h.point(m.add(x, y)), m.set_sum(h.point(x), h.point(y))):
                    return Certificate("additive", False, tag,
                                       witness=(ss.fmt(h.point(x)), ss.fmt(h.point(y))), **extra)
        return Certificate("additive", True, tag, **extra)
    family, tag = members(h, seed=seed)
    pairs, ptag = _member_pairs(family, seed)
    tag = EXHAUSTIVE if tag == EXHAUSTIVE and ptag == EXHAUSTIVE else SAMPLED
    extra = {} if tag == EXHAUSTIVE else {"seed": seed, "samples": PAIR_SAMPLES}
    for a, b in pairs:
        if not h.is_member(m.set_sum(a, b)):
            return Certificate("additive", False, tag, witness=(ss.fmt(a), ss.fmt(b)), **extra)
    return Certificate("additive", True, tag, **extra)


def check_translation_invariant(m: FiniteCommMonoid, h: HullStructure, seed: int = 0) -> Certificate:
    """Every ``T_e⁻¹`` maps members to members.

    For 1-algebraic structures: ``y ∈ cl{g}`` implies ``e+y ∈ cl{e+g}``.
    """
    if _one_algebraic(h):
        tag, extra = _reduced(h)
        for e in range(m.size):
            for g in range(m.size):
                target = h.point(m.add(e, g))
                for y in ss.bits(h.point(g)):
                    if not ss.contains(target, m.add(e, y)):
                        return Certificate("translation-invariant", False, tag,
                                           witness=(e, ss.fmt(h.point(m.add(e, g)))), **extra)
        return Certificate("translation-invariant", True, tag, **extra)
    family, tag = members(h, seed=seed)
    extra = {} if tag == EXHAUSTIVE else {"seed": seed, "samples": DEFAULT_SAMPLES}
    for q in family:
        for e in range(m.size):
            if not h.is_member(m.preimage(e, q)):
                return Certificate("translation-invariant", False, tag, witness=(e, ss.fmt(q)), **extra)
    return Certificate("translation-invariant", True, tag, **extra)


def check_symmetric(m: FiniteCommMonoid, h: HullStructure, seed: int = 0) -> Certificate:
    if m.inverse is None:
        raise MissingInverse("symmetric check needs an inverse table")
    if _one_algebraic(h):
        tag, extra = _reduced(h)
        for g in range(m.size):
            target = h.point(m.neg(g))
            for y in ss.bits(h.point(g)):
                if not ss.contains(target, m.neg(y)):
                    return Certificate("symmetric", False, tag, witness=ss.fmt(h.point(g)), **extra)
        return Certificate("symmetric", True, tag, **extra)
    family, tag = members(h, seed=seed)
    extra = {} if tag == EXHAUSTIVE else {"seed": seed, "samples": DEFAULT_SAMPLES}
    for q in family:
        if not h.is_member(m.negate(q)):
            return Certificate("symmetric", False, tag, witness=ss.fmt(q), **extra)
    return Certificate("symmetric", True, tag, **extra)


_CHECKS = {"additive": check_additive,
           "translation-invariant": check_translation_invariant,
           "symmetric": check_symmetric}


def capability(m: FiniteCommMonoid, h: HullStructure, prop: str, seed: int = 0) -> Certificate:
    """Cached certificate for ``prop``; by-construction ones are trusted."""
    c = h.cert(prop)
    if c is None:
        c = _CHECKS[prop](m, h, seed)
        h.certs[prop] = c
    return c


def hull_capabilities(m: FiniteCommMonoid, h: HullStructure, seed: int = 0) -> dict[str, Certificate]:
    props = ["additive", "translation-invariant"]
    if m.inverse is not None:
        props.append("symmetric")
    return {p: capability(m, h, p, seed) for p in props}


def is_basic(m: FiniteCommMonoid, h: HullStructure) -> Certificate:
    """1-algebraic, additive, and ``{0}`` is a member."""
    if not _one_algebraic(h):
        return Certificate("basic", False, h.cert("1-algebraic").tag, witness="not 1-algebraic")
    add = capability(m, h, "additive")
    if not add:
        return Certificate("basic", False, add.tag, witness=f"not additive {add.witness}")
    if not h.is_member(1 << m.zero):
        return Certificate("basic", False, EXHAUSTIVE, witness="{0} is not a member")
    strength = (BY_CONSTRUCTION, EXHAUSTIVE, SAMPLED)
    tag = max(h.cert("1-algebraic").tag, add.tag, key=strength.index)
    return Certificate("basic", True, tag)
