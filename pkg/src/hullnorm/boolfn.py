"""Finite Boolean algebras, submeasures and their group topologies.

An element of ``2^n`` is its atom bitmask: bit ``i`` stands for atom ``i+1``.
The same indexing serves the symmetric-difference group and the join monoid.

On a finite algebra a zero-neighbourhood filter is principal at its least set
``M0``, and the three descriptions of a Fréchet–Nikodým topology collapse to
statements about ``M0``:

* a group topology with a base of lower sets: ``M0`` is a lower set;
* join and complementation continuous, base of lower sets: checked point by
  point on the topology whose neighbourhoods are ``x △ M0``;
* generated by submeasures: ``M0`` is an intersection of submeasure kernels.
  Kernels of submeasures are ideals, and the indicator of ``G ∖ M0`` is a
  submeasure exactly when ``M0`` is an ideal, so this is decidable directly.

The suite computes each clause on its own and insists they agree.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import subsets as ss
from .dyadic import ONE, ZERO, coerce, fmt
from .hull import Certificate, EXHAUSTIVE, HullStructure, is_lower_continuous, make_builtin
from .monoid import FiniteCommMonoid, boolean_join, boolean_sym_diff
from .synth import (Falsification, GeneratedFamily, PseudoNorm, check_pseudo_norm,
                    generate_family, induced_filter)
from .zerotop import ZeroFilter, filter_equal, is_group_filter, is_Q_base, join_filters, make_zero_filter

log = logging.getLogger(__name__)

MAX_ATOMS = 10


class SizeOutOfRange(ValueError):
    pass


class NotAnIdeal(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class FiniteBooleanAlgebra:
    n: int
    sym: FiniteCommMonoid
    join: FiniteCommMonoid
    lower: HullStructure

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def top(self) -> int:
        return self.size - 1

    def complement(self, a: int) -> int:
        return a ^ self.top

    def label(self, e: int) -> str:
        """Atom bitmask, atom 1 rightmost."""
        return format(e, f"0{self.n}b")

    def down(self, a: int) -> int:
        """All elements below ``a``, as a carrier subset."""
        return self.lower.point(a)


def make_ba(n: int) -> FiniteBooleanAlgebra:
    if not 1 <= n <= MAX_ATOMS:
        raise SizeOutOfRange(f"atom count {n} outside 1..{MAX_ATOMS}")
    sym = boolean_sym_diff(n)
    lower = make_builtin("lower", sym)
    return FiniteBooleanAlgebra(n, sym, boolean_join(n), lower)


def table(ba: FiniteBooleanAlgebra, values: Sequence) -> str:
    """Submeasure table, one ``<bitmask> <value>`` line per element."""
    return "\n".join(f"{ba.label(e)} {fmt(v)}" for e, v in enumerate(values))


# -- submeasures ---------------------------------------------------------------

def is_submeasure(ba: FiniteBooleanAlgebra, mu: Sequence) -> Certificate:
    """Order preserving, zero at the bottom, subadditive under join."""
    mu = tuple(coerce(v) for v in mu)
    if len(mu) != ba.size:
        return Certificate("submeasure", False, EXHAUSTIVE, witness="wrong length")
    # covering pairs suffice for monotonicity
    for a in range(ba.size):
        for i in range(ba.n):
            b = a | (1 << i)
            if b != a and mu[a] > mu[b]:
                return Certificate("submeasure", False, EXHAUSTIVE,
                                   witness=f"{ba.label(a)} <= {ba.label(b)} but values decrease")
    if mu[0] != 0:
        return Certificate("submeasure", False, EXHAUSTIVE, witness="nonzero at the bottom")
    for a in range(ba.size):
        for b in range(a, ba.size):
            if mu[a | b] > mu[a] + mu[b]:
                return Certificate("submeasure", False, EXHAUSTIVE,
                                   witness=(ba.label(a), ba.label(b)))
    return Certificate("submeasure", True, EXHAUSTIVE)


def is_lower_pseudo_norm(ba: FiniteBooleanAlgebra, mu: Sequence) -> Certificate:
    """Subadditive under symmetric difference with lower sublevel sets."""
    mu = tuple(coerce(v) for v in mu)
    pn = check_pseudo_norm(ba.sym, mu)
    if not pn:
        return Certificate("lower-pseudo-norm", False, EXHAUSTIVE, witness=pn.witness)
    lc = is_lower_continuous(ba.lower, mu)
    if not lc:
        return Certificate("lower-pseudo-norm", False, EXHAUSTIVE, witness=lc.witness)
    return Certificate("lower-pseudo-norm", True, EXHAUSTIVE)


@dataclass
class EquivReport:
    submeasure: Certificate
    lower_pseudo_norm: Certificate

    @property
    def agree(self) -> bool:
        return self.submeasure.holds == self.lower_pseudo_norm.holds


def submeasure_equiv(ba: FiniteBooleanAlgebra, mu: Sequence, explain: bool = False) -> EquivReport:
    """Evaluate both descriptions of a submeasure and require agreement.

    With ``explain`` the chain ``μ(l∨m) = μ((l∖m)△m) ≤ μ(l∖m)+μ(m) ≤ μ(l)+μ(m)``
    is checked for every pair and logged at debug level.
    """
    mu = tuple(coerce(v) for v in mu)
    report = EquivReport(is_submeasure(ba, mu), is_lower_pseudo_norm(ba, mu))
    if not report.agree:
        raise Falsification("submeasure descriptions disagree",
                            witness={"n": ba.n, "values": [fmt(v) for v in mu],
                                     "submeasure": report.submeasure.witness,
                                     "lower-pseudo-norm": report.lower_pseudo_norm.witness})
    if explain and report.lower_pseudo_norm:
        for l in range(ba.size):
            for m in range(ba.size):
                diff = l & ~m
                assert (diff ^ m) == (l | m)
                chain = (mu[l | m], mu[diff] + mu[m], mu[l] + mu[m])
                if not chain[0] <= chain[1] <= chain[2]:
                    raise Falsification("bridging inequality fails", witness=(l, m))
                log.debug("l=%s m=%s: %s <= %s <= %s", ba.label(l), ba.label(m), *map(fmt, chain))
    return report


# -- ideals and filters --------------------------------------------------------

def is_ideal(ba: FiniteBooleanAlgebra, ideal: int) -> bool:
    return (ss.contains(ideal, 0) and ba.lower.close(ideal) == ideal
            and ba.sym.set_sum(ideal, ideal) == ideal)


def principal_ideal(ba: FiniteBooleanAlgebra, a: int) -> int:
    return ba.down(a)


def enumerate_ideals(ba: FiniteBooleanAlgebra) -> list[int]:
    """All ideals.  Each is the down-set of its join, so there are ``2^n``."""
    return [principal_ideal(ba, a) for a in range(ba.size)]


def enumerate_subgroups(ba: FiniteBooleanAlgebra) -> list[int]:
    """All △-subgroups, by closing every subset of generators (small ``n`` only)."""
    found = set()
    for k in range(ba.n + 1):
        for gens in itertools.combinations(range(1, ba.size), k):
            group = 1
            for g in gens:
                group |= ba.sym.set_sum(group, 1 << g)
            found.add(group)
    return sorted(found)


def fn_filter_from_ideal(ba: FiniteBooleanAlgebra, ideal) -> ZeroFilter:
    """Filter over the △ group with base ``[ideal]``, or a chain of nested ideals."""
    chain = [ideal] if isinstance(ideal, int) else list(ideal)
    for i in chain:
        if not is_ideal(ba, i):
            raise NotAnIdeal(f"{ss.fmt(i)} is not an ideal", witness=ss.fmt(i))
    return make_zero_filter(ba.sym, chain)


# -- the lattice inequality ------------------------------------------------------

def _inequality_holds(a: int, b: int, c: int, d: int) -> bool:
    """``(a△b)∨(c△d) ⊇ (a∨c)△(b∨d)``."""
    lhs = (a ^ b) | (c ^ d)
    rhs = (a | c) ^ (b | d)
    return rhs & ~lhs == 0


def lattice_inequality_atomwise() -> Optional[tuple]:
    """Truth table over one atom; Boolean identities hold iff they hold atomwise."""
    for bits in itertools.product((0, 1), repeat=4):
        if not _inequality_holds(*bits):
            return bits
    return None


def lattice_inequality_bruteforce(n: int) -> Optional[tuple]:
    size = 1 << n
    idx = np.arange(size, dtype=np.int64)
    a, b, c, d = np.meshgrid(idx, idx, idx, idx, indexing="ij", sparse=True)
    lhs = (a ^ b) | (c ^ d)
    rhs = (a | c) ^ (b | d)
    bad = np.argwhere((rhs & ~lhs) != 0)
    return tuple(int(x) for x in bad[0]) if len(bad) else None


# -- the equivalence suite --------------------------------------------------------

@dataclass
class FNReport:
    group_lower: Certificate
    join_complement: Certificate
    generated: Certificate
    family: Optional[GeneratedFamily] = None
    submeasures: list = field(default_factory=list)

    @property
    def clauses(self) -> tuple[bool, bool, bool]:
        return (self.group_lower.holds, self.join_complement.holds, self.generated.holds)

    @property
    def consistent(self) -> bool:
        return len(set(self.clauses)) == 1


def _join_complement_clause(ba: FiniteBooleanAlgebra, f: ZeroFilter) -> Certificate:
    """Join and complementation continuous at every point, base of lower sets.

    The smallest neighbourhood of ``x`` is ``x △ M0``, so continuity of join
    at ``(x, y)`` reads ``(x△M0) ∨ (y△M0) ⊆ (x∨y) △ M0``.
    """
    m0 = f.least
    least = [x for x in ss.bits(m0)]
    nbhd = [ss.mask(x ^ u for u in least) for x in range(ba.size)]
    for x in range(ba.size):
        cx = ss.mask(ba.complement(z) for z in ss.bits(nbhd[x]))
        if not ss.is_subset(cx, nbhd[ba.complement(x)]):
            return Certificate("join-complement", False, EXHAUSTIVE, witness=("complement", ba.label(x)))
        for y in range(x, ba.size):
            if not ss.is_subset(ba.join.set_sum(nbhd[x], nbhd[y]), nbhd[x | y]):
                return Certificate("join-complement", False, EXHAUSTIVE,
                                   witness=("join", ba.label(x), ba.label(y)))
    base = is_Q_base(f, ba.lower)
    if not base:
        return Certificate("join-complement", False, EXHAUSTIVE, witness=("lower base", base.witness))
    return Certificate("join-complement", True, EXHAUSTIVE)


def _indicator(ba: FiniteBooleanAlgebra, kernel: int) -> tuple:
    return tuple(ZERO if ss.contains(kernel, e) else ONE for e in range(ba.size))


def fn_equivalence_suite(ba: FiniteBooleanAlgebra, f: ZeroFilter) -> FNReport:
    """Decide the three clauses separately; they must all hold or all fail."""
    group = is_group_filter(f)
    lower_base = is_Q_base(f, ba.lower)
    clause_i = Certificate("group-lower", group.holds and lower_base.holds, EXHAUSTIVE,
                           witness=group.witness if not group else lower_base.witness)
    clause_ii = _join_complement_clause(ba, f)

    indicator = _indicator(ba, f.least)
    ind = is_submeasure(ba, indicator)
    clause_iii = Certificate("generated", ind.holds, EXHAUSTIVE, witness=ind.witness)
    family = None
    submeasures: list = []
    if ind:
        single = induced_filter(PseudoNorm(ba.sym, indicator, symmetric=True))
        if not filter_equal(single, f):
            raise Falsification("indicator submeasure does not regenerate the filter", witness=f.describe())
    if clause_i:
        family = generate_family(f, ba.lower, ba.lower)
        submeasures = family.norms + [family.combined]
        for mu in submeasures:
            if not is_submeasure(ba, mu.values):
                raise Falsification("synthesised generator is not a submeasure", witness=mu)
            if not is_ideal(ba, mu.kernel):
                raise Falsification("kernel of a submeasure is not an ideal", witness=mu)
        regenerated = join_filters([induced_filter(mu) for mu in family.norms])
        if not filter_equal(regenerated, f):
            raise Falsification("submeasures do not regenerate the filter", witness=f.describe())

    report = FNReport(clause_i, clause_ii, clause_iii, family, submeasures)
    if not report.consistent:
        raise Falsification("clauses of the equivalence disagree",
                            witness={"n": ba.n, "base": f.describe(), "clauses": report.clauses})
    return report
