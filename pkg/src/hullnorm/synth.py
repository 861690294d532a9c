"""Pseudo-norms from strings of neighbourhoods, and what can be built from them.

The construction: a closed string ``U_0 ⊇ U_1 ⊇ ...`` with ``U_n + U_n ⊆
U_{n-1}`` yields the dyadic level sets ``V_q = k_0 U_0 + k_1 U_1 + ...`` (the
binary digits of ``q`` select the summands), and ``ρ(e) = inf{q : e ∈ V_q}``.

Strings here are a prefix plus a constant tail ``T``.  Every digit past the
prefix contributes ``T``, and ``T + T = T``, so for any dyadic ``q`` the set
``V_q`` is either ``V_{q'}`` or ``V_{q'} + T`` where ``q'`` is ``q`` cut to
the prefix length.  The infimum is therefore attained on the grid ``2^-N``
(``N`` = prefix length) once every level set is saturated by ``T``:

    ρ(e) = 0                             if e ∈ T
         = min{q ∈ 2^-N·ℕ, q ≤ 1 : e ∈ V_q + T}
         = 1                             if no such q   (clipping at 1)

which is exact, not an approximation.  Any finer grid gives the same values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import subsets as ss
from .dyadic import ONE, ZERO, OffGrid, Value, clip, coerce, exponent, fmt, is_top
from .hull import (Certificate, EXHAUSTIVE, HullStructure, intersect, is_enhancible,
                   is_lower_continuous, lower_regularize, make_builtin, powerset, upper_regularize)
from .monoid import FiniteCommMonoid, NotAGroup, capability, is_basic
from .zerotop import (QString, ZeroFilter, filter_equal, is_group_filter, is_Q_base,
                      join_filters, make_zero_filter, refine_string)


class PreconditionError(ValueError):
    """A required certificate is missing; ``missing`` names it."""

    def __init__(self, message: str, missing: str, witness=None):
        super().__init__(message)
        self.missing = missing
        self.witness = witness


class NotAdditive(PreconditionError):
    pass


class NotTranslationInvariant(PreconditionError):
    pass


class InvalidString(PreconditionError):
    pass


class NotBasic(PreconditionError):
    pass


class NotEnhancible(PreconditionError):
    pass


class NotSymmetric(PreconditionError):
    pass


class NotContinuousAtZero(PreconditionError):
    pass


class NotAPseudoNorm(ValueError):
    pass


class Falsification(AssertionError):
    """A guaranteed property failed on a concrete instance.

    Never caught inside the library: it means a bug or a false theorem
    instance, and the attached witness reproduces it.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(f"{message} (witness: {witness})")
        self.witness = witness


class SubadditivityViolation(Falsification):
    pass


class GenerationMismatch(Falsification):
    pass


class EmptyList(ValueError):
    pass


class MixedMonoids(ValueError):
    pass


# -- pseudo-norms ------------------------------------------------------------

def _integer_scale(values: Sequence[Value]) -> np.ndarray:
    """Values times a common denominator; top becomes a huge sentinel."""
    finite = [Fraction(v) for v in values if not is_top(v)]
    denom = int(np.lcm.reduce([q.denominator for q in finite])) if finite else 1
    scaled = [int(q * denom) for q in finite]
    top = 4 * (max(scaled, default=0) + 1)
    ints = [top if is_top(v) else int(Fraction(v) * denom) for v in values]
    return np.array(ints, dtype=np.int64 if top < 2 ** 60 else object)


def subadditivity_witness(m: FiniteCommMonoid, values: Sequence[Value]) -> Optional[tuple[int, int]]:
    """A pair ``(f, g)`` with ``v(f+g) > v(f) + v(g)``, or None."""
    arr = _integer_scale(values)
    bad = np.argwhere(arr[m.table] > arr[:, None] + arr[None, :])
    if len(bad):
        f, g = bad[0]
        return int(f), int(g)
    return None


def check_pseudo_norm(m: FiniteCommMonoid, values: Sequence[Value]) -> Certificate:
    if len(values) != m.size:
        return Certificate("pseudo-norm", False, EXHAUSTIVE, witness="wrong length")
    if values[m.zero] != 0:
        return Certificate("pseudo-norm", False, EXHAUSTIVE, witness=f"value at zero is {values[m.zero]}")
    if any(v < 0 for v in values):
        return Certificate("pseudo-norm", False, EXHAUSTIVE, witness="negative value")
    w = subadditivity_witness(m, values)
    if w is not None:
        return Certificate("pseudo-norm", False, EXHAUSTIVE, witness=w)
    return Certificate("pseudo-norm", True, EXHAUSTIVE)


class PseudoNorm:
    """Subadditive ``[0, top]``-valued function vanishing at zero.

    Validated exhaustively at construction.  ``lower_continuous`` records the
    names of hull structures whose sublevel-set condition has been checked.
    """

    def __init__(self, monoid: FiniteCommMonoid, values: Sequence, *, symmetric: bool = False,
                 lower_continuous: Sequence[str] = (), string: Optional[QString] = None):
        vals = tuple(coerce(v) for v in values)
        cert = check_pseudo_norm(monoid, vals)
        if not cert:
            raise NotAPseudoNorm(f"not a pseudo-norm: {cert.witness}")
        self.monoid = monoid
        self.values = vals
        self.symmetric = symmetric
        self.lower_continuous = tuple(dict.fromkeys(lower_continuous))
        self.string = string

    def __getitem__(self, e: int) -> Value:
        return self.values[e]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def kernel(self) -> int:
        return ss.mask(e for e, v in enumerate(self.values) if v == 0)

    def sublevel(self, r, strict: bool = False) -> int:
        if strict:
            return ss.mask(e for e, v in enumerate(self.values) if v < r)
        return ss.mask(e for e, v in enumerate(self.values) if v <= r)

    def table(self, label=None) -> str:
        """One ``<element> <numerator>/<denominator>`` line per element."""
        label = label or str
        return "\n".join(f"{label(e)} {fmt(v)}" for e, v in enumerate(self.values))

    def __eq__(self, other):
        if isinstance(other, PseudoNorm):
            return self.values == other.values
        return NotImplemented

    def __repr__(self):
        return "PseudoNorm(" + ", ".join(fmt(v) for v in self.values) + ")"


def _as_values(x) -> tuple:
    return x.values if isinstance(x, PseudoNorm) else tuple(coerce(v) for v in x)


def _falsify_unless_pnorm(m: FiniteCommMonoid, values, what: str) -> None:
    cert = check_pseudo_norm(m, values)
    if not cert:
        raise SubadditivityViolation(f"{what} is not a pseudo-norm",
                                     witness={"monoid": m.spec(), "values": [fmt(v) for v in values],
                                              "pair": cert.witness})


# -- strings -----------------------------------------------------------------

def validate_string(m: FiniteCommMonoid, h: HullStructure, s: QString) -> Certificate:
    zbit = 1 << m.zero
    sets = list(s.prefix) + [s.tail]
    for i, u in enumerate(sets):
        if not u & zbit:
            return Certificate("string", False, EXHAUSTIVE, witness=f"set {i} misses zero")
        if not h.is_member(u):
            return Certificate("string", False, EXHAUSTIVE, witness=f"set {i} {ss.fmt(u)} not closed")
    for n in range(1, len(s.prefix)):
        if not ss.is_subset(m.set_sum(s.prefix[n], s.prefix[n]), s.prefix[n - 1]):
            return Certificate("string", False, EXHAUSTIVE,
                               witness=f"U_{n}+U_{n} not inside U_{n - 1}")
    if not ss.is_subset(m.set_sum(s.tail, s.tail), s.tail):
        return Certificate("string", False, EXHAUSTIVE, witness="T+T not inside T")
    if s.prefix and not ss.is_subset(s.tail, s.prefix[-1]):
        return Certificate("string", False, EXHAUSTIVE, witness="T not inside the last prefix set")
    return Certificate("string", True, EXHAUSTIVE)


def _multiple(m: FiniteCommMonoid, u: int, k: int) -> int:
    out = 1 << m.zero
    for _ in range(k):
        out = m.set_sum(out, u)
    return out


def dyadic_level_set(s: QString, q, grid_exp: int) -> int:
    """``V_q + T`` for a positive dyadic ``q`` on the grid ``2^-grid_exp``."""
    q = Fraction(q)
    if q <= 0 or (q * (1 << grid_exp)).denominator != 1:
        raise OffGrid(f"{q} is not a positive multiple of 2^-{grid_exp}")
    m = s.monoid
    k = int(q * (1 << grid_exp))
    whole, frac = divmod(k, 1 << grid_exp)
    out = _multiple(m, s.at(0), whole)
    for i in range(1, grid_exp + 1):
        if (frac >> (grid_exp - i)) & 1:
            out = m.set_sum(out, s.at(i))
    return m.set_sum(out, s.tail)


def _raw_pseudo_norm(s: QString, grid_exp: int) -> tuple:
    """Grid minimisation over saturated level sets, clipped at 1."""
    m = s.monoid
    steps = 1 << grid_exp
    values = [ONE] * m.size
    pending = ss.full(m.size) & ~s.tail
    for e in ss.bits(s.tail):
        values[e] = ZERO
    cache = {0: s.tail}
    for k in range(1, steps + 1):
        if not pending:
            break
        if k == steps:
            level = m.set_sum(s.at(0), s.tail)
        else:
            low = k & -k
            i = grid_exp - (low.bit_length() - 1)
            level = m.set_sum(cache[k ^ low], s.at(i))
        cache[k] = level
        reached = level & pending
        q = Fraction(k, steps)
        for e in ss.bits(reached):
            values[e] = q
        pending &= ~reached
    return tuple(values)


def _check_sandwich(values: Sequence, s: QString, depth: int) -> Optional[str]:
    for n in range(depth + 1):
        u = s.at(n)
        r = Fraction(1, 1 << n)
        strict = ss.mask(e for e, v in enumerate(values) if v < r)
        weak = ss.mask(e for e, v in enumerate(values) if v <= r)
        if not (ss.is_subset(strict, u) and ss.is_subset(u, weak)):
            return f"level {n}"
    if ss.mask(e for e, v in enumerate(values) if v == 0) != s.tail:
        return "kernel differs from tail"
    return None


def _postconditions(m: FiniteCommMonoid, h: HullStructure, s: QString, values, grid_exp: int,
                    what: str) -> None:
    _falsify_unless_pnorm(m, values, what)
    lc = is_lower_continuous(h, values)
    if not lc:
        raise Falsification(f"{what} is not lower {h.name}-continuous", witness=lc.witness)
    bad = _check_sandwich(values, s, max(grid_exp, len(s.prefix)) + 1)
    if bad:
        raise Falsification(f"{what} breaks the string sandwich", witness=bad)


def _require_string(m: FiniteCommMonoid, h: HullStructure, s: QString) -> None:
    cert = validate_string(m, h, s)
    if not cert:
        raise InvalidString(f"not a {h.name}-string: {cert.witness}", missing="string",
                            witness=cert.witness)


def synth_additive(m: FiniteCommMonoid, h: HullStructure, s: QString,
                   grid_exp: Optional[int] = None) -> PseudoNorm:
    """``[0,1]``-valued lower ``h``-continuous pseudo-norm squeezed by the string."""
    add = capability(m, h, "additive")
    if not add:
        raise NotAdditive(f"{h.name} is not additive (witness {add.witness})", missing="additive")
    _require_string(m, h, s)
    n = len(s.prefix) if grid_exp is None else grid_exp
    values = _raw_pseudo_norm(s, n)
    _postconditions(m, h, s, values, n, "string pseudo-norm")
    return PseudoNorm(m, values, lower_continuous=[h.name], string=s)


def synth_translation(m: FiniteCommMonoid, h: HullStructure, s: QString,
                      grid_exp: Optional[int] = None) -> PseudoNorm:
    """Largest lower ``h``-continuous minorant of the unconstrained string pseudo-norm."""
    ti = capability(m, h, "translation-invariant")
    if not ti:
        raise NotTranslationInvariant(f"{h.name} is not translation-invariant (witness {ti.witness})",
                                      missing="translation-invariant")
    _require_string(m, h, s)
    rough = synth_additive(m, powerset(m.size, m.zero), s, grid_exp)
    theta = lower_regularize(h, rough.values)
    n = len(s.prefix) if grid_exp is None else grid_exp
    _postconditions(m, h, s, theta, n, "regularised string pseudo-norm")
    return PseudoNorm(m, theta, lower_continuous=[h.name], string=s)


def synthesize(m: FiniteCommMonoid, h: HullStructure, s: QString,
               grid_exp: Optional[int] = None) -> PseudoNorm:
    """Additive route when ``h`` is additive, else the translation-invariant one."""
    if capability(m, h, "additive"):
        return synth_additive(m, h, s, grid_exp)
    if capability(m, h, "translation-invariant"):
        return synth_translation(m, h, s, grid_exp)
    raise NotAdditive(f"{h.name} is neither additive nor translation-invariant",
                      missing="additive|translation-invariant")


def regularize_pnorm(m: FiniteCommMonoid, r: HullStructure, rho) -> PseudoNorm:
    """``x ↦ max ρ`` over the ``r``-closure of ``x``; ``r`` must be basic.

    ``rho`` may also be a bare value table.  Subadditivity of the result is
    only guaranteed for pseudo-norm input, so a failure on other input is a
    rejected argument rather than a falsification.
    """
    basic = is_basic(m, r)
    if not basic:
        raise NotBasic(f"{r.name} is not basic: {basic.witness}", missing="basic")
    src = _as_values(rho)
    values = upper_regularize(r, src)
    if isinstance(rho, PseudoNorm) or check_pseudo_norm(m, src):
        _falsify_unless_pnorm(m, values, f"{r.name}-regularisation")
    if any(a < b for a, b in zip(values, src)):
        raise Falsification("regularisation went down", witness=r.name)
    if not isinstance(rho, PseudoNorm):
        return PseudoNorm(m, values, lower_continuous=[r.name])
    return PseudoNorm(m, values, symmetric=rho.symmetric,
                      lower_continuous=list(rho.lower_continuous) + [r.name], string=rho.string)


def _levels_below(values: Sequence, n: int) -> int:
    r = Fraction(1, 1 << n)
    return ss.mask(e for e, v in enumerate(values) if v < r)


def synth_QR(f: ZeroFilter, q: HullStructure, r: HullStructure, w: Sequence[int],
             grid_exp: Optional[int] = None) -> PseudoNorm:
    """Continuous ``q∩r``-pseudo-norm whose small balls sit inside ``w``."""
    m = f.monoid
    enh = is_enhancible(q, r)
    if not enh:
        raise NotEnhancible(f"{q.name} is not {r.name}-enhancible (at {enh.witness})",
                            missing="enhancible", witness=enh.witness)
    if not (capability(m, q, "additive") or capability(m, q, "translation-invariant")):
        raise NotAdditive(f"{q.name} is neither additive nor translation-invariant",
                          missing="additive|translation-invariant")
    for h in (q, r):
        c = is_Q_base(f, h)
        if not c:
            raise PreconditionError(f"filter has no {h.name} base", missing=f"{h.name}-base",
                                    witness=c.witness)
    s = refine_string(f, q, w)
    rho = regularize_pnorm(m, r, synthesize(m, q, s, grid_exp))
    both = intersect(q, r)
    lc = is_lower_continuous(both, rho.values)
    if not lc:
        raise Falsification(f"result is not lower {both.name}-continuous", witness=lc.witness)
    w = list(w) or [ss.full(m.size)]
    for n in range(max(len(w), len(s.prefix) + 2)):
        if not ss.is_subset(_levels_below(rho.values, n), w[min(n, len(w) - 1)]):
            raise Falsification("small ball escapes W", witness=n)
    if not ss.is_subset(f.least, rho.kernel):
        raise Falsification("result is not continuous at zero", witness=ss.fmt(f.least))
    rho.lower_continuous = tuple(dict.fromkeys(rho.lower_continuous + (both.name,)))
    return rho


# -- symmetric pseudo-norms and topologies -------------------------------------

def symmetrize(m: FiniteCommMonoid, rho: PseudoNorm) -> PseudoNorm:
    if not m.is_group:
        raise NotAGroup(f"{m.name} is not a group")
    values = tuple(max(rho[g], rho[m.neg(g)]) for g in range(m.size))
    _falsify_unless_pnorm(m, values, "symmetrisation")
    return PseudoNorm(m, values, symmetric=True, lower_continuous=rho.lower_continuous,
                      string=rho.string)


def is_rho_continuous(lam, rho) -> bool:
    """ε-δ continuity of ``lam`` with respect to ``rho`` on a finite carrier.

    Equivalent to ``ker rho ⊆ ker lam``: take δ below the least positive
    value of ``rho`` to force ``rho(g) = 0``; conversely a point of
    ``ker rho`` with ``lam(g) = ε > 0`` defeats every δ.
    """
    lv, rv = _as_values(lam), _as_values(rho)
    return all(lv[g] == 0 for g, v in enumerate(rv) if v == 0)


def continuity_delta(lam, rho) -> Optional[Fraction]:
    """A δ that works for every ε (the least positive value of ``rho``), or None."""
    if not is_rho_continuous(lam, rho):
        return None
    positive = [v for v in _as_values(rho) if v > 0 and not is_top(v)]
    return min(positive) if positive else ONE


def combine(rhos: Sequence[PseudoNorm]) -> PseudoNorm:
    """``max_n (ρ_n ∧ 1) / 2^n`` over ``n = 1..k``."""
    if not rhos:
        raise EmptyList("combine needs at least one pseudo-norm")
    m = rhos[0].monoid
    if any(r.monoid is not m for r in rhos):
        raise MixedMonoids("pseudo-norms live on different monoids")
    values = tuple(max(clip(r[e]) / (1 << n) for n, r in enumerate(rhos, start=1))
                   for e in range(m.size))
    _falsify_unless_pnorm(m, values, "combination")
    shared = set(rhos[0].lower_continuous)
    for r in rhos[1:]:
        shared &= set(r.lower_continuous)
    out = PseudoNorm(m, values, symmetric=all(r.symmetric for r in rhos),
                     lower_continuous=[n for n in rhos[0].lower_continuous if n in shared])
    for r in rhos:
        if not is_rho_continuous(r, out):
            raise Falsification("a combined pseudo-norm is not continuous for the result", witness=r)
    return out


def is_symmetric_values(m: FiniteCommMonoid, values: Sequence) -> bool:
    return all(values[g] == values[m.neg(g)] for g in range(m.size))


def induced_filter(rho: PseudoNorm, grid_exp: Optional[int] = None) -> ZeroFilter:
    """Balls ``ρ⁻¹[0, 2^-n]`` for ``n ≤ grid_exp`` plus the kernel (their limit)."""
    m = rho.monoid
    if m.is_group and not is_symmetric_values(m, rho.values):
        raise NotSymmetric("induced topology on a group needs a symmetric pseudo-norm",
                           missing="symmetric")
    if grid_exp is None:
        finite = [v for v in rho.values if not is_top(v) and v > 0]
        grid_exp = max((exponent(v) for v in finite), default=0)
    base = [rho.sublevel(Fraction(1, 1 << n)) for n in range(grid_exp + 1)]
    base.append(rho.kernel)
    return make_zero_filter(m, list(dict.fromkeys(base)))


@dataclass
class GeneratedFamily:
    norms: list[PseudoNorm]
    combined: PseudoNorm
    basic: HullStructure
    certificates: list[Certificate] = field(default_factory=list)


def _symmetric_route(f: ZeroFilter, q: HullStructure, r: HullStructure) -> tuple[HullStructure, list]:
    """Check the hypotheses of the generation theorem; return ``r ∩ symmetric``."""
    m = f.monoid
    if not m.is_group:
        raise NotAGroup(f"{m.name} is not a group")
    certs = []
    for h in (q, r):
        c = capability(m, h, "symmetric")
        if not c:
            raise NotSymmetric(f"{h.name} is not symmetric", missing="symmetric", witness=c.witness)
        certs.append(c)
    g = is_group_filter(f)
    if not g:
        raise PreconditionError("filter is not a group filter", missing="group-filter", witness=g.witness)
    rs = intersect(r, make_builtin("symmetric", m))
    basic = is_basic(m, rs)
    if not basic:
        raise Falsification("r ∩ symmetric is not basic", witness=basic.witness)
    certs.append(g)
    return rs, certs


def generate_family(f: ZeroFilter, q: HullStructure, r: HullStructure) -> GeneratedFamily:
    """One symmetric ``q∩r``-pseudo-norm per base set, and their combination.

    Both the family and the single combined pseudo-norm must regenerate the
    filter; a mismatch is a falsified instance.
    """
    m = f.monoid
    basic = is_basic(m, r)
    if not basic:
        raise NotBasic(f"{r.name} is not basic: {basic.witness}", missing="basic")
    rs, certs = _symmetric_route(f, q, r)
    norms = []
    for w in f.base:
        rho = synth_QR(f, q, rs, [w])
        sym = symmetrize(m, rho)
        if sym.values != rho.values:
            raise Falsification("synthesised pseudo-norm is not symmetric", witness=ss.fmt(w))
        norms.append(sym)
    regenerated = join_filters([induced_filter(rho) for rho in norms])
    if not filter_equal(regenerated, f):
        raise GenerationMismatch("family does not regenerate the filter",
                                 witness={"filter": f.describe(), "regenerated": regenerated.describe()})
    combined = combine(norms)
    single = induced_filter(combined)
    if not filter_equal(single, f):
        raise GenerationMismatch("combined pseudo-norm does not regenerate the filter",
                                 witness={"filter": f.describe(), "regenerated": single.describe()})
    return GeneratedFamily(norms, combined, rs, certs)


def continuity_transfer(values: Sequence, f: ZeroFilter, q: HullStructure,
                        r: HullStructure) -> PseudoNorm:
    """Continuous ``q∩r``-pseudo-norm for which ``values`` is continuous.

    On groups with symmetric ``q`` and ``r`` the result is also symmetric.
    """
    m = f.monoid
    vals = _as_values(values)
    if vals[m.zero] != 0:
        raise NotContinuousAtZero("function does not vanish at zero", missing="continuity-at-zero")
    if any(vals[e] != 0 for e in ss.bits(f.least)):
        raise NotContinuousAtZero("function is not continuous at zero", missing="continuity-at-zero",
                                  witness=ss.fmt(f.least))
    positive = [v for v in vals if v > 0 and not is_top(v)]
    depth = 0
    while positive and Fraction(1, 1 << depth) > min(positive):
        depth += 1
    w = [ss.mask(e for e, v in enumerate(vals) if v < Fraction(1, 1 << n)) for n in range(depth + 1)]
    symmetric = False
    rr = r
    if m.is_group and capability(m, q, "symmetric") and capability(m, r, "symmetric"):
        basic = is_basic(m, r)
        if not basic:
            raise NotBasic(f"{r.name} is not basic: {basic.witness}", missing="basic")
        rr, _ = _symmetric_route(f, q, r)
        symmetric = True
    rho = synth_QR(f, q, rr, w)
    if symmetric:
        rho = symmetrize(m, rho)
    if not ss.is_subset(rho.kernel, ss.mask(e for e, v in enumerate(vals) if v == 0)):
        raise Falsification("kernel of the result is not inside the kernel of f", witness=vals)
    if not is_rho_continuous(vals, rho):
        raise Falsification("f is not continuous for the result", witness=vals)
    return rho
