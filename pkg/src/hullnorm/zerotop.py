"""Additive topologies on finite monoids, through their zero-neighbourhood filter.

On a finite carrier every such filter is principal: a directed finite base
has a least member, and the filter is everything above it.  All checks here
reduce to statements about that least set, which keeps them exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import subsets as ss
from .hull import Certificate, EXHAUSTIVE, HullStructure, core, make_builtin
from .monoid import FiniteCommMonoid, NotAGroup


class FilterError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotDirected(FilterError):
    pass


class NoHalvingSet(FilterError):
    pass


class NotQBase(FilterError):
    pass


class NotInFilter(FilterError):
    pass


@dataclass(frozen=True)
class QString:
    """Prefix ``U_0 ⊇ U_1 ⊇ ...`` followed by a constant tail ``T``.

    The infinite string is ``U_n = T`` for every ``n >= len(prefix)``.
    """

    monoid: FiniteCommMonoid
    prefix: tuple[int, ...]
    tail: int

    def at(self, n: int) -> int:
        return self.prefix[n] if n < len(self.prefix) else self.tail

    def __len__(self) -> int:
        return len(self.prefix)

    def describe(self) -> str:
        body = ", ".join(ss.fmt(u) for u in self.prefix)
        return f"({body}; tail {ss.fmt(self.tail)})"


@dataclass(frozen=True)
class ZeroFilter:
    monoid: FiniteCommMonoid
    base: tuple[int, ...]

    @property
    def least(self) -> int:
        """The smallest neighbourhood of zero (the intersection of the base)."""
        out = ss.full(self.monoid.size)
        for u in self.base:
            out &= u
        return out

    def contains(self, a: int) -> bool:
        """Whether ``a`` is a neighbourhood of zero."""
        return ss.is_subset(self.least, a)

    def describe(self) -> str:
        return "[" + ", ".join(ss.fmt(u) for u in self.base) + "]"


def make_zero_filter(m: FiniteCommMonoid, base: Sequence[int]) -> ZeroFilter:
    base = tuple(base)
    if not base:
        raise FilterError("a filter base needs at least one set")
    zbit = 1 << m.zero
    for u in base:
        if not u & zbit:
            raise FilterError(f"{ss.fmt(u)} does not contain zero", witness=ss.fmt(u))
    for u in base:
        for v in base:
            if not any(ss.is_subset(w, u & v) for w in base):
                raise NotDirected(f"no base set inside {ss.fmt(u)} ∩ {ss.fmt(v)}",
                                  witness=(ss.fmt(u), ss.fmt(v)))
    for u in base:
        if not any(ss.is_subset(m.set_sum(v, v), u) for v in base):
            raise NoHalvingSet(f"no base set V with V+V ⊆ {ss.fmt(u)}", witness=ss.fmt(u))
    return ZeroFilter(m, base)


def is_Q_base(f: ZeroFilter, h: HullStructure) -> Certificate:
    """Whether members of ``h`` form a base of the filter.

    Every base set ``U`` must contain a closed neighbourhood; the smallest
    candidate is the closure of the least neighbourhood, so the test is
    ``cl(least) ⊆ U``.
    """
    c = h.close(f.least)
    for u in f.base:
        if not ss.is_subset(c, u):
            return Certificate("Q-base", False, EXHAUSTIVE, witness=ss.fmt(u))
    return Certificate("Q-base", True, EXHAUSTIVE)


def is_group_filter(f: ZeroFilter) -> Certificate:
    """Inversion is continuous: the filter has a base of symmetric sets."""
    if not f.monoid.is_group:
        raise NotAGroup(f"{f.monoid.name} is not a group")
    c = is_Q_base(f, make_builtin("symmetric", f.monoid))
    return Certificate("group-filter", c.holds, c.tag, witness=c.witness)


def _largest(cands: Sequence[int]) -> int:
    return max(cands, key=lambda a: (ss.card(a), -a))


def refine_string(f: ZeroFilter, h: HullStructure, w: Sequence[int]) -> QString:
    """Closed string subordinate to ``w`` built from the filter base.

    Follows the inductive construction: ``V_0 = G``; ``U_n`` is a closed
    neighbourhood inside ``V_n ∩ W_n``; ``V_{n+1}`` is a neighbourhood with
    ``V+V ⊆ U_n``.  At each step the largest qualifying base set is chosen
    (the least neighbourhood always qualifies).  ``w`` is extended by its last
    entry; once ``w`` is exhausted and ``U_n`` repeats, the construction has
    stabilised and the repeated set becomes the tail.
    """
    m = f.monoid
    if not w:
        w = [ss.full(m.size)]
    cert = is_Q_base(f, h)
    if not cert:
        raise NotQBase(f"filter has no {h.name} base (at {cert.witness})", witness=cert.witness)
    for x in w:
        if not f.contains(x):
            raise NotInFilter(f"{ss.fmt(x)} is not a neighbourhood of zero", witness=ss.fmt(x))
    least = f.least
    closed = [u for u in f.base if h.is_member(u)]
    if h.is_member(least):
        closed.append(least)
    halving_pool = list(f.base) + [least]

    us: list[int] = []
    v = ss.full(m.size)
    n = 0
    while True:
        wn = w[min(n, len(w) - 1)]
        u = _largest([c for c in closed if ss.is_subset(c, v & wn)])
        if n >= len(w) and us and u == us[-1]:
            break
        us.append(u)
        v = _largest([c for c in halving_pool if ss.is_subset(m.set_sum(c, c), u)])
        n += 1
    tail = us[-1]
    prefix = us[:-1]
    while len(prefix) > 1 and prefix[-1] == tail:
        prefix.pop()
    if not prefix:
        prefix = [tail]
    return QString(m, tuple(prefix), tail)


def filter_equal(f1: ZeroFilter, f2: ZeroFilter) -> bool:
    """Mutual refinement of the two bases."""
    if f1.monoid is not f2.monoid and f1.monoid.size != f2.monoid.size:
        raise ValueError("filters live on different monoids")
    return (all(any(ss.is_subset(b, a) for b in f2.base) for a in f1.base)
            and all(any(ss.is_subset(a, b) for a in f1.base) for b in f2.base))


def join_filters(filters: Sequence[ZeroFilter]) -> ZeroFilter:
    """Smallest filter containing all of ``filters`` (base closed under meets)."""
    m = filters[0].monoid
    base = []
    for f in filters:
        base.extend(f.base)
    least = ss.full(m.size)
    for f in filters:
        least &= f.least
    base.append(least)
    return ZeroFilter(m, tuple(dict.fromkeys(base)))


def core_in_filter(f: ZeroFilter, h: HullStructure) -> Optional[int]:
    """First base set whose ``h``-core is not a neighbourhood, if any."""
    for u in f.base:
        if not f.contains(core(h, u)):
            return u
    return None
