"""Random instance generators for the property suites.

Everything is driven by a :class:`random.Random` passed in by the caller, so
one seed reproduces a whole run.  Generators only produce instances that meet
the hypotheses they are meant for; where a hypothesis is checked rather than
guaranteed, the check uses the exact certificates of :mod:`hullnorm.monoid`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from . import subsets as ss
from .hull import HullStructure, SAMPLED, make_builtin
from .monoid import (FiniteCommMonoid, boolean_join, boolean_sym_diff, capability, cyclic,
                     monogenic, product, saturating_cube)
from .structfile import HullSpec
from .zerotop import QString, ZeroFilter, make_zero_filter


def random_monoid(rng: random.Random, max_carrier: int, groups_only: bool = False) -> FiniteCommMonoid:
    cands = []
    for m in range(2, max_carrier + 1):
        cands.append(("cyclic", (m,)))
    for n in range(1, 7):
        if 1 << n <= max_carrier:
            cands.append(("boolean_sym_diff", (n,)))
            if not groups_only:
                cands.append(("boolean_join", (n,)))
    for a in range(2, 9):
        for b in range(2, 9):
            if a * b <= max_carrier and a <= b:
                cands.append(("product", (a, b)))
    if not groups_only:
        for k in range(1, 8):
            for d in range(1, 4):
                if (k + 1) ** d <= max_carrier:
                    cands.append(("saturating_cube", (k, d)))
        for i in range(1, 6):
            for p in range(1, 8):
                if i + p <= max_carrier:
                    cands.append(("monogenic", (i, p)))
    kind, args = rng.choice(cands)
    if kind == "product":
        return product([cyclic(args[0]), cyclic(args[1])])
    return {"cyclic": cyclic, "boolean_sym_diff": boolean_sym_diff, "boolean_join": boolean_join,
            "saturating_cube": saturating_cube, "monogenic": monogenic}[kind](*args)


def generated_submonoid(m: FiniteCommMonoid, gens: int) -> int:
    cur = (1 << m.zero) | gens
    while True:
        nxt = cur | m.set_sum(cur, cur)
        if nxt == cur:
            return cur
        cur = nxt


def _random_submonoid(rng: random.Random, m: FiniteCommMonoid) -> int:
    return generated_submonoid(m, 1 << rng.randrange(m.size))


def candidate_hulls(rng: random.Random, m: FiniteCommMonoid) -> list[HullSpec]:
    specs = [HullSpec("powerset"), HullSpec("submonoids"), HullSpec("cosets", sub=_random_submonoid(rng, m))]
    if m.order is not None:
        specs += [HullSpec("lower"), HullSpec("full")]
    if m.is_group:
        specs.append(HullSpec("symmetric"))
    sub = _random_submonoid(rng, m)
    specs.append(HullSpec("points", points={x: m.set_sum(1 << x, sub) for x in range(m.size)}))
    return specs


def _exact(cert) -> bool:
    return cert.holds and cert.tag != SAMPLED


def random_hull(rng: random.Random, m: FiniteCommMonoid, prop: str,
                exclude: tuple = ()) -> Optional[tuple[HullSpec, HullStructure]]:
    """A hull with an exact (non-sampled) certificate for ``prop``, or None."""
    specs = [s for s in candidate_hulls(rng, m) if s.kind not in exclude]
    rng.shuffle(specs)
    for spec in specs:
        h = spec.build(m, spec.kind)
        if _exact(capability(m, h, prop)):
            return spec, h
    return None


def closed_submonoid(m: FiniteCommMonoid, h: HullStructure, seed: int) -> int:
    """Smallest set containing ``seed`` and zero that is closed and additively closed."""
    cur = seed | (1 << m.zero)
    while True:
        nxt = h.close(cur | m.set_sum(cur, cur))
        if nxt == cur:
            return cur
        cur = nxt


def random_string(rng: random.Random, m: FiniteCommMonoid, h: HullStructure,
                  max_len: int = 3) -> QString:
    """Valid ``h``-string by repeated shrinking towards a closed tail."""
    gens = 0 if rng.random() < 0.5 else 1 << rng.randrange(m.size)
    tail = closed_submonoid(m, h, gens)
    length = rng.randint(1, max_len)
    prefix = [h.close(tail | ss.random_subset(rng, m.size, rng.choice((0.3, 0.6, 0.9))))]
    while len(prefix) < length:
        prev = prefix[-1]
        keep = ss.random_subset(rng, m.size, 0.7) & prev | tail
        cand = h.close(keep)
        while not ss.is_subset(m.set_sum(cand, cand), prev) or not ss.is_subset(cand, prev):
            extra = keep & ~tail
            if not extra:
                cand = tail
                break
            drop = rng.choice(ss.elements(extra))
            keep &= ~(1 << drop)
            cand = h.close(keep)
        prefix.append(cand)
    return QString(m, tuple(prefix), tail)


@dataclass
class FilterInstance:
    monoid: FiniteCommMonoid
    q_spec: HullSpec
    r_spec: HullSpec
    q: HullStructure
    r: HullStructure
    filt: ZeroFilter


def _joint_closure(m: FiniteCommMonoid, hulls, a: int) -> int:
    """Least subgroup containing ``a`` closed in every hull of ``hulls``."""
    cur = a | (1 << m.zero)
    while True:
        nxt = cur | m.set_sum(cur, cur)
        for h in hulls:
            nxt = h.close(nxt)
        if nxt == cur:
            return cur
        cur = nxt


def random_group_filter(rng: random.Random, m: FiniteCommMonoid, q: HullStructure,
                        r: HullStructure, max_len: int = 3) -> ZeroFilter:
    """Group filter with a ``q``-base and an ``r``-base.

    The least set is a subgroup closed in ``q``, ``r`` and the symmetric
    structure; larger base sets are random supersets built by halving.
    """
    sym = make_builtin("symmetric", m)
    seed = 0 if rng.random() < 0.4 else ss.random_subset(rng, m.size, 1.5 / m.size)
    least = _joint_closure(m, (q, r, sym), seed)
    base = [least | ss.random_subset(rng, m.size, rng.choice((0.3, 0.7, 1.0)))]
    while len(base) < rng.randint(1, max_len):
        prev = base[-1]
        keep = ss.random_subset(rng, m.size, 0.6) & prev | least
        while not ss.is_subset(m.set_sum(keep, keep), prev):
            extra = keep & ~least
            if not extra:
                break
            keep &= ~(1 << rng.choice(ss.elements(extra)))
        base.append(keep)
    base.append(least)
    return make_zero_filter(m, list(dict.fromkeys(base)))


SYMMETRIC_KINDS = ("powerset", "symmetric", "cosets", "lower")


def random_filter_instance(rng: random.Random, max_carrier: int) -> Optional[FilterInstance]:
    """Group, symmetric ``q`` and basic symmetric ``r`` with ``q`` r-enhancible, plus a filter."""
    from .hull import is_enhancible
    from .monoid import is_basic
    m = random_monoid(rng, max_carrier, groups_only=True)
    specs = [s for s in candidate_hulls(rng, m) if s.kind in SYMMETRIC_KINDS]
    q_spec = rng.choice(specs)
    r_cands = [s for s in specs if s.kind in ("powerset", "symmetric", "lower")]
    r_spec = rng.choice(r_cands)
    q, r = q_spec.build(m, "Q"), r_spec.build(m, "R")
    if not (_exact(capability(m, q, "symmetric")) and _exact(capability(m, r, "symmetric"))):
        return None
    if not (_exact(capability(m, q, "additive")) or _exact(capability(m, q, "translation-invariant"))):
        return None
    if not _exact(is_basic(m, r)) or not _exact(is_enhancible(q, r)):
        return None
    return FilterInstance(m, q_spec, r_spec, q, r, random_group_filter(rng, m, q, r))


def random_pseudo_norm_table(rng: random.Random, m: FiniteCommMonoid, h: HullStructure):
    """Values of a synthesised pseudo-norm on a random string (always subadditive)."""
    from .synth import synthesize
    s = random_string(rng, m, h)
    return synthesize(m, h, s)
