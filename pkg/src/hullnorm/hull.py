"""Hull structures on finite carriers.

A hull structure is handled through its closure operator: the members are
exactly the fixed points of ``close``.  Nothing ever lists the members, so a
structure on a 64-point carrier costs no more than the operator itself.

Graded functions (sublevel-set arguments, pseudo-norm candidates) are plain
tuples of exact values indexed by carrier element; see :mod:`hullnorm.dyadic`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

from . import subsets as ss
from .dyadic import TOP, ZERO, coerce, is_top

EXHAUSTIVE_LIMIT = 16   # all 2**n subsets enumerated up to here
MEMBER_SCAN_LIMIT = 12  # member families enumerated up to here
DEFAULT_SAMPLES = 2000

BY_CONSTRUCTION = "by-construction"
EXHAUSTIVE = "exhaustive"
SAMPLED = "sampled"


class HullError(Exception):
    pass


class NotOneAlgebraic(HullError):
    pass


class MissingContext(HullError):
    pass


@dataclass(frozen=True)
class Certificate:
    """Outcome of a property check.

    ``tag`` says how much was checked; ``witness`` is a counterexample when
    ``holds`` is false.  Sampled checks record their seed and sample count so
    they can be replayed.
    """

    prop: str
    holds: bool
    tag: str
    witness: object = None
    seed: Optional[int] = None
    samples: Optional[int] = None

    def __bool__(self) -> bool:
        return self.holds

    def describe(self) -> str:
        state = "holds" if self.holds else "FAILS"
        extra = ""
        if self.tag == SAMPLED:
            extra = f" seed={self.seed} samples={self.samples}"
        if not self.holds and self.witness is not None:
            extra += f" witness={self.witness}"
        return f"{self.prop}: {state} [{self.tag}]{extra}"


class Poset:
    """Partial order on ``{0..n-1}`` stored as down-set masks."""

    def __init__(self, size: int, leq: Callable[[int, int], bool]):
        self.size = size
        down = []
        for x in range(size):
            down.append(ss.mask(y for y in range(size) if leq(y, x)))
        self.down = tuple(down)
        self.up = tuple(ss.mask(y for y in range(size) if ss.contains(down[y], x))
                        for x in range(size))
        for x in range(size):
            if not ss.contains(down[x], x):
                raise ValueError(f"order is not reflexive at {x}")
            for y in ss.bits(down[x]):
                if y != x and ss.contains(down[y], x):
                    raise ValueError(f"order is not antisymmetric at {x},{y}")
                if not ss.is_subset(down[y], down[x]):
                    raise ValueError(f"order is not transitive at {y}<={x}")

    def leq(self, a: int, b: int) -> bool:
        return ss.contains(self.down[b], a)

    def bottom(self) -> Optional[int]:
        every = ss.full(self.size)
        for x in range(self.size):
            if self.up[x] == every:
                return x
        return None

    def __eq__(self, other):
        return isinstance(other, Poset) and self.down == other.down

    def __hash__(self):
        return hash(self.down)


class HullStructure:
    """Closure operator on subsets of ``{0..size-1}`` with base point ``zero``.

    ``point_closures`` may be supplied for structures that are 1-algebraic by
    construction; closing a set is then a union of point closures.
    """

    def __init__(self, size: int, zero: int, closure: Optional[Callable[[int], int]] = None, *,
                 name: str = "hull", point_closures: Optional[Sequence[int]] = None,
                 certs: Iterable[Certificate] = ()):
        if not 0 <= zero < size:
            raise ValueError("zero must be a carrier element")
        if closure is None and point_closures is None:
            raise ValueError("need a closure operator or point closures")
        self.size = size
        self.zero = zero
        self.name = name
        self._closure = closure
        self._points = tuple(point_closures) if point_closures is not None else None
        self._cache: dict[int, int] = {}
        self.certs = {c.prop: c for c in certs}

    def close(self, a: int) -> int:
        hit = self._cache.get(a)
        if hit is not None:
            return hit
        if self._points is not None:
            out = 0
            for x in ss.bits(a):
                out |= self._points[x]
        else:
            out = self._closure(a)
        self._cache[a] = out
        return out

    def point(self, x: int) -> int:
        if self._points is not None:
            return self._points[x]
        return self.close(1 << x)

    def is_member(self, a: int) -> bool:
        return self.close(a) == a

    @property
    def carrier(self) -> int:
        return ss.full(self.size)

    def cert(self, prop: str) -> Optional[Certificate]:
        return self.certs.get(prop)

    def __repr__(self):
        return f"HullStructure({self.name!r}, size={self.size})"


def close(h: HullStructure, a: int) -> int:
    return h.close(a)


def _require_one_algebraic(h: HullStructure) -> None:
    c = h.cert("1-algebraic")
    if c is None:
        c = is_one_algebraic(h)
        h.certs[c.prop] = c
    if not c.holds:
        raise NotOneAlgebraic(f"{h.name} is not 1-algebraic (witness {c.witness})")


def core(h: HullStructure, a: int) -> int:
    """Largest member inside ``a``: the points whose closure stays in ``a``."""
    _require_one_algebraic(h)
    out = 0
    for x in ss.bits(a):
        if ss.is_subset(h.point(x), a):
            out |= 1 << x
    return out


def all_subsets(size: int) -> Iterator[int]:
    return iter(range(1 << size))


def _subset_stream(size: int, seed: int, samples: int) -> tuple[Iterable[int], str]:
    if size <= EXHAUSTIVE_LIMIT:
        return all_subsets(size), EXHAUSTIVE
    rng = random.Random(seed)
    return (ss.random_subset(rng, size, rng.random()) for _ in range(samples)), SAMPLED


def is_one_algebraic(h: HullStructure, seed: int = 0, samples: int = DEFAULT_SAMPLES) -> Certificate:
    """Check ``cl(A) = ∪ cl({x})`` over all subsets (or a seeded sample)."""
    stream, tag = _subset_stream(h.size, seed, samples)
    points = [h.close(1 << x) for x in range(h.size)]
    for a in stream:
        union = 0
        for x in ss.bits(a):
            union |= points[x]
        if h.close(a) != union:
            return Certificate("1-algebraic", False, tag, witness=ss.fmt(a), seed=seed, samples=samples)
    extra = {} if tag == EXHAUSTIVE else {"seed": seed, "samples": samples}
    return Certificate("1-algebraic", True, tag, **extra)


def check_closure_axioms(h: HullStructure, seed: int = 0, samples: int = DEFAULT_SAMPLES,
                         limit: int = MEMBER_SCAN_LIMIT) -> Certificate:
    """Extensive, monotone, idempotent and ``cl(X) = X``.

    Exhaustive (monotonicity via single-element extensions, which suffices by
    induction) for carriers up to ``limit``; seeded samples above.
    """
    full = h.carrier
    if h.close(full) != full:
        return Certificate("closure-axioms", False, EXHAUSTIVE, witness="cl(X) != X")
    if h.size <= limit:
        stream, tag = all_subsets(h.size), EXHAUSTIVE
    else:
        rng = random.Random(seed)
        stream = [ss.random_subset(rng, h.size, rng.random()) for _ in range(samples)]
        tag = SAMPLED
    for a in stream:
        c = h.close(a)
        if not ss.is_subset(a, c):
            return Certificate("closure-axioms", False, tag, witness=f"not extensive at {ss.fmt(a)}")
        if h.close(c) != c:
            return Certificate("closure-axioms", False, tag, witness=f"not idempotent at {ss.fmt(a)}")
        for x in range(h.size):
            if not ss.contains(a, x) and not ss.is_subset(c, h.close(a | (1 << x))):
                return Certificate("closure-axioms", False, tag,
                                   witness=f"not monotone at {ss.fmt(a)} + {x}")
    extra = {} if tag == EXHAUSTIVE else {"seed": seed, "samples": samples}
    return Certificate("closure-axioms", True, tag, **extra)


def members(h: HullStructure, *, containing: int = 0, seed: int = 0,
            samples: int = DEFAULT_SAMPLES, limit: int = MEMBER_SCAN_LIMIT) -> tuple[list[int], str]:
    """Members containing ``containing``; exhaustive up to ``limit`` points."""
    if h.size <= limit:
        found = [a for a in all_subsets(h.size) if a & containing == containing and h.is_member(a)]
        return found, EXHAUSTIVE
    rng = random.Random(seed)
    seen = {h.close(containing), h.carrier}
    for _ in range(samples):
        seen.add(h.close(ss.random_subset(rng, h.size, rng.random()) | containing))
    return sorted(seen), SAMPLED


# -- graded functions -------------------------------------------------------

def graded(values: Iterable) -> tuple:
    return tuple(coerce(v) for v in values)


def sublevel(f: Sequence, r) -> int:
    return ss.mask(x for x, v in enumerate(f) if v <= r)


def levels(f: Sequence) -> list:
    """Finite attained values plus 0: the only places a sublevel set changes."""
    return sorted({v for v in f if not is_top(v)} | {ZERO})


def is_lower_continuous(h: HullStructure, f: Sequence) -> Certificate:
    for r in levels(f):
        s = sublevel(f, r)
        if not h.is_member(s):
            return Certificate("lower-continuous", False, EXHAUSTIVE, witness=(r, ss.fmt(s)))
    return Certificate("lower-continuous", True, EXHAUSTIVE)


def upper_regularize(h: HullStructure, f: Sequence) -> tuple:
    """``x ↦ max f`` over the closure of ``{x}``."""
    _require_one_algebraic(h)
    return tuple(max(f[y] for y in ss.bits(h.point(x))) for x in range(h.size))


def lower_regularize(h: HullStructure, f: Sequence) -> tuple:
    """Largest lower-continuous function below ``f``.

    ``θ(x)`` is the least level ``r`` whose closed sublevel ``cl(f⁻¹[0,r])``
    reaches ``x``.  Levels only need to range over attained values and 0,
    because the sublevel sets of ``f`` are constant in between.
    """
    theta = [TOP] * h.size
    pending = h.carrier
    for r in levels(f):
        reach = h.close(sublevel(f, r)) & pending
        for x in ss.bits(reach):
            theta[x] = r
        pending &= ~reach
        if not pending:
            break
    return tuple(theta)


def pointwise_max(f: Sequence, g: Sequence) -> tuple:
    return tuple(max(a, b) for a, b in zip(f, g))


# -- combining structures ---------------------------------------------------

def is_enhancible(q: HullStructure, r: HullStructure, seed: int = 0,
                  samples: int = DEFAULT_SAMPLES) -> Certificate:
    """Whether the ``r``-core of every member of ``q`` through zero is again in ``q``.

    When ``q`` is 1-algebraic with an exact certificate the check is exact in
    ``O(n²)`` closures: the worst member for a point ``x`` is the smallest one
    through zero that holds ``cl_r{x}``, so it suffices that this member also
    holds ``cl_r{y}`` for every ``y ∈ cl_q{x}``.
    """
    _require_one_algebraic(r)
    qc = q.cert("1-algebraic")
    if qc is None and q.size <= EXHAUSTIVE_LIMIT:
        qc = is_one_algebraic(q)
        q.certs[qc.prop] = qc
    if qc is not None and qc.holds and qc.tag != SAMPLED:
        zbit = 1 << q.zero
        if not ss.is_subset(r.point(q.zero), q.close(zbit)):
            return Certificate("enhancible", False, EXHAUSTIVE, witness=ss.fmt(q.close(zbit)))
        for x in range(q.size):
            worst = q.close(r.point(x) | zbit)
            for y in ss.bits(q.point(x)):
                if not ss.is_subset(r.point(y), worst):
                    return Certificate("enhancible", False, EXHAUSTIVE, witness=ss.fmt(worst))
        return Certificate("enhancible", True, EXHAUSTIVE)
    zbit = 1 << q.zero
    family, tag = members(q, containing=zbit, seed=seed, samples=samples)
    for m in family:
        c = core(r, m)
        if not c & zbit or not q.is_member(c):
            return Certificate("enhancible", False, tag, witness=ss.fmt(m), seed=seed, samples=samples)
    extra = {} if tag == EXHAUSTIVE else {"seed": seed, "samples": samples}
    return Certificate("enhancible", True, tag, **extra)


def intersect(q: HullStructure, r: HullStructure) -> HullStructure:
    """Structure whose members are common members of ``q`` and ``r``."""
    if q.size != r.size or q.zero != r.zero:
        raise ValueError("hull structures live on different carriers")

    def closure(a: int) -> int:
        while True:
            b = r.close(q.close(a))
            if b == a:
                return a
            a = b

    certs = []
    if q.cert("1-algebraic") and r.cert("1-algebraic"):
        certs.append(Certificate("1-algebraic", True, BY_CONSTRUCTION))
    return HullStructure(q.size, q.zero, closure, name=f"{q.name}&{r.name}", certs=certs)


# -- builtins -----------------------------------------------------------------

BUILTIN_KINDS = ("powerset", "lower", "full", "symmetric", "submonoids", "solid", "cosets")


def powerset(size: int, zero: int = 0) -> HullStructure:
    certs = [Certificate(p, True, BY_CONSTRUCTION)
             for p in ("1-algebraic", "additive", "translation-invariant", "symmetric")]
    return HullStructure(size, zero, name="powerset",
                         point_closures=[1 << x for x in range(size)], certs=certs)


def lower_sets(order: Poset, zero: int = 0) -> HullStructure:
    return HullStructure(order.size, zero, name="lower", point_closures=order.down,
                         certs=[Certificate("1-algebraic", True, BY_CONSTRUCTION)])


def full_sets(order: Poset, zero: int = 0) -> HullStructure:
    def closure(a: int) -> int:
        below = 0
        above = 0
        for x in ss.bits(a):
            below |= order.up[x]
            above |= order.down[x]
        return below & above

    return HullStructure(order.size, zero, closure, name="full")


def from_point_closures(points: Sequence[int], zero: int = 0, name: str = "preorder") -> HullStructure:
    """Lower sets of the preorder ``y ≤ x ⟺ y ∈ points[x]``.

    ``points`` must be reflexive and transitive; this is checked.
    """
    for x, p in enumerate(points):
        if not ss.contains(p, x):
            raise ValueError(f"point closure of {x} misses {x}")
        for y in ss.bits(p):
            if not ss.is_subset(points[y], p):
                raise ValueError(f"point closures not transitive at {y} in cl({x})")
    return HullStructure(len(points), zero, name=name, point_closures=points,
                         certs=[Certificate("1-algebraic", True, BY_CONSTRUCTION)])


def from_members(size: int, family: Iterable[int], zero: int = 0, name: str = "members") -> HullStructure:
    """Intersection-closed family generated by ``family`` together with the carrier."""
    fam = tuple(set(family) | {ss.full(size)})

    def closure(a: int) -> int:
        out = ss.full(size)
        for m in fam:
            if a & ~m == 0:
                out &= m
        return out

    return HullStructure(size, zero, closure, name=name)


def make_builtin(kind: str, context) -> HullStructure:
    """Build a named structure.

    ``context`` is a monoid (anything with ``size``, ``zero`` and optionally
    ``order``, ``inverse``, ``add``) or, for the order-only kinds, a
    :class:`Poset`.  ``cosets`` takes ``(monoid, subgroup_mask)``.
    """
    if kind == "cosets":
        monoid, sub = context
        return cosets(monoid, sub)
    if isinstance(context, Poset):
        size, zero, order, mon = context.size, 0, context, None
    else:
        mon = context
        size, zero, order = mon.size, mon.zero, getattr(mon, "order", None)
    if kind == "powerset":
        return powerset(size, zero)
    if kind in ("lower", "full", "solid") and order is None:
        raise MissingContext(f"{kind} sets need an order")
    if kind in ("lower", "full"):
        h = lower_sets(order, zero) if kind == "lower" else full_sets(order, zero)
        if getattr(mon, "order_compatible", False):
            # translations preserve the order, so preimages of lower (or
            # order-convex) sets under translation stay lower (convex)
            h.certs["translation-invariant"] = Certificate("translation-invariant", True,
                                                           BY_CONSTRUCTION)
        return h
    if kind == "solid":
        # positive cone only: with zero at the bottom |x| = x, so solid = lower
        if mon is None or order.bottom() != zero:
            raise MissingContext("solid sets need an ordered monoid whose zero is the least element")
        h = lower_sets(order, zero)
        h.name = "solid"
        return h
    if kind == "symmetric":
        inverse = getattr(mon, "inverse", None)
        if inverse is None:
            raise MissingContext("symmetric sets need an inverse table")
        points = [(1 << x) | (1 << int(inverse[x])) for x in range(size)]
        certs = [Certificate(p, True, BY_CONSTRUCTION) for p in ("1-algebraic", "additive", "symmetric")]
        return HullStructure(size, zero, name="symmetric", point_closures=points, certs=certs)
    if kind == "submonoids":
        if mon is None:
            raise MissingContext("submonoids need a monoid")

        def closure(a: int) -> int:
            cur = a | (1 << zero)
            while True:
                nxt = cur | mon.set_sum(cur, cur)
                if nxt == cur:
                    return cur
                cur = nxt

        return HullStructure(size, zero, closure, name="submonoids",
                             certs=[Certificate("additive", True, BY_CONSTRUCTION)])
    raise ValueError(f"unknown hull kind {kind!r}")


def cosets(monoid, sub: int) -> HullStructure:
    """Sets saturated by a submonoid ``K``: ``Q + K = Q``.

    The point closure of ``x`` is ``x + K``; reflexive because ``0 ∈ K`` and
    transitive because ``K + K ⊆ K``.
    """
    if not monoid.set_sum(sub, sub) | sub == sub or not ss.contains(sub, monoid.zero):
        raise ValueError("coset structure needs a submonoid")
    points = [monoid.set_sum(1 << x, sub) for x in range(monoid.size)]
    h = from_point_closures(points, monoid.zero, name=f"cosets{ss.fmt(sub)}")
    return h
