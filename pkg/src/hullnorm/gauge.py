"""Minkowski functionals of balanced rational polytopes, computed exactly.

For a polytope ``P = conv(v_1..v_k)`` the gauge is

    ρ(x) = min Σλ_i   subject to   Σλ_i v_i = x,  λ ≥ 0

(``x ∈ tP`` iff ``x = Σλ_i v_i`` with ``Σλ_i = t``, because 0 ∈ P for balanced
P).  An infeasible program means no dilate reaches ``x`` and the value is
``top``.  Each evaluation returns the LP certificate, so a value can be
re-verified by weak duality alone: a dual ``a`` with ``a·v_i ≤ 1`` for all
vertices and ``a·x = Σλ`` proves optimality.

No floating point is used anywhere in this module.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .dyadic import TOP, is_top
from .exactlp import INFEASIBLE, OPTIMAL, LPResult, solve, verify
from .synth import Falsification

MAX_DIM = 4

Vector = tuple[Fraction, ...]


class DimensionMismatch(ValueError):
    pass


class NotBalanced(ValueError):
    pass


class EmptyCore(ValueError):
    pass


def vec(values) -> Vector:
    return tuple(Fraction(v) for v in values)


def neg(v: Vector) -> Vector:
    return tuple(-a for a in v)


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def mul(s, v: Vector) -> Vector:
    s = Fraction(s)
    return tuple(s * a for a in v)


def vjoin(u: Vector, v: Vector) -> Vector:
    """Coordinatewise maximum."""
    return tuple(max(a, b) for a, b in zip(u, v))


@dataclass(frozen=True)
class RationalPolytope:
    vertices: tuple[Vector, ...]
    dim: int

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("a polytope needs at least one vertex")
        if not 1 <= self.dim <= MAX_DIM:
            raise DimensionMismatch(f"dimension {self.dim} outside 1..{MAX_DIM}")
        if any(len(v) != self.dim for v in self.vertices):
            raise DimensionMismatch("vertices of different dimensions")

    @property
    def balanced(self) -> bool:
        """Vertex set closed under negation (enough for a balanced hull)."""
        pts = set(self.vertices)
        return all(neg(v) in pts for v in pts)

    def contains(self, x: Sequence) -> bool:
        """Membership in the convex hull, by its own feasibility program."""
        x = vec(x)
        if len(x) != self.dim:
            raise DimensionMismatch(f"point of dimension {len(x)} for a {self.dim}-polytope")
        k = len(self.vertices)
        rows = [[v[i] for v in self.vertices] for i in range(self.dim)] + [[Fraction(1)] * k]
        res = solve([0] * k, rows, list(x) + [1])
        return res.status == OPTIMAL


def polytope(vertices: Sequence[Sequence]) -> RationalPolytope:
    verts = tuple(dict.fromkeys(vec(v) for v in vertices))
    return RationalPolytope(verts, len(verts[0]) if verts else 0)


def cross_polytope(d: int) -> RationalPolytope:
    verts = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        verts += [vec(e), neg(vec(e))]
    return polytope(verts)


def hypercube(d: int) -> RationalPolytope:
    return polytope(itertools.product((-1, 1), repeat=d))


def product_polytope(p: RationalPolytope, q: RationalPolytope) -> RationalPolytope:
    return polytope([u + v for u in p.vertices for v in q.vertices])


def random_rational(rng: random.Random, lo: int = -2, hi: int = 2, den: int = 6) -> Fraction:
    d = rng.randint(1, den)
    return Fraction(rng.randint(lo * d, hi * d), d)


def random_point(rng: random.Random, d: int, lo: int = -2, hi: int = 2) -> Vector:
    return tuple(random_rational(rng, lo, hi) for _ in range(d))


def random_balanced(rng: random.Random, d: int, k: Optional[int] = None) -> RationalPolytope:
    """``±`` pairs of random rational points; not necessarily full-dimensional."""
    k = k or rng.randint(1, 4)
    pts = []
    for _ in range(k):
        v = random_point(rng, d)
        if any(v):
            pts += [v, neg(v)]
    if not pts:
        e = vec([1] + [0] * (d - 1))
        pts = [e, neg(e)]
    return polytope(pts)


# -- the gauge -------------------------------------------------------------------

@dataclass(frozen=True)
class GaugeValue:
    value: object          # Fraction or TOP
    certificate: LPResult


def _program(p: RationalPolytope, x: Vector):
    k = len(p.vertices)
    rows = [[v[i] for v in p.vertices] for i in range(p.dim)]
    return [1] * k, rows, list(x)


def gauge_certified(p: RationalPolytope, x: Sequence) -> GaugeValue:
    x = vec(x)
    if len(x) != p.dim:
        raise DimensionMismatch(f"point of dimension {len(x)} for a {p.dim}-polytope")
    if not p.balanced:
        raise NotBalanced("vertex set is not symmetric under negation")
    c, a, b = _program(p, x)
    res = solve(c, a, b)
    if res.status == INFEASIBLE:
        return GaugeValue(TOP, res)
    return GaugeValue(res.value, res)


def gauge(p: RationalPolytope, x: Sequence):
    """``inf{r > 0 : x ∈ rP}``, exact; ``top`` if no dilate contains ``x``."""
    return gauge_certified(p, x).value


def check_certificate(p: RationalPolytope, x: Sequence, g: GaugeValue) -> bool:
    c, a, b = _program(p, vec(x))
    return verify(c, a, b, g.certificate)


class Seminorm:
    """Evaluation oracle for the gauge of a balanced polytope."""

    def __init__(self, p: RationalPolytope):
        if not p.balanced:
            raise NotBalanced("vertex set is not symmetric under negation")
        self.polytope = p

    def __call__(self, x: Sequence):
        return gauge(self.polytope, x)


def _scaled(s, v):
    if is_top(v):
        return v if s != 0 else Fraction(0)
    return abs(Fraction(s)) * v


@dataclass
class AxiomReport:
    subadditive: int
    homogeneous: int


def seminorm_axioms(p: RationalPolytope, pairs: Sequence[tuple], scalars: Sequence = ()) -> AxiomReport:
    """Exact subadditivity on ``pairs`` and homogeneity for every scalar on both points."""
    rho = Seminorm(p)
    n_sub = n_hom = 0
    for x, y in pairs:
        x, y = vec(x), vec(y)
        rx, ry, rxy = rho(x), rho(y), rho(add(x, y))
        if rxy > rx + ry:
            raise Falsification("gauge is not subadditive", witness=(x, y))
        n_sub += 1
        for s in scalars:
            for z, rz in ((x, rx), (y, ry)):
                if rho(mul(s, z)) != _scaled(s, rz):
                    raise Falsification("gauge is not absolutely homogeneous", witness=(s, z))
                n_hom += 1
    return AxiomReport(n_sub, n_hom)


def symm_core(points: Sequence[Sequence]) -> RationalPolytope:
    """Convex hull of the points whose negation is also in the list."""
    pts = [vec(v) for v in points]
    present = set(pts)
    core = [v for v in pts if neg(v) in present]
    if not core:
        raise EmptyCore("no point has its negation in the set")
    return polytope(core)


def is_M_seminorm(p: RationalPolytope, sample: Sequence[tuple]) -> bool:
    """``ρ(e∨f) = max(ρ(e), ρ(f))`` on every pair of non-negative vectors."""
    rho = Seminorm(p)
    for e, f in sample:
        e, f = vec(e), vec(f)
        if any(a < 0 for a in e + f):
            raise ValueError("M-identity sample must be non-negative")
        if rho(vjoin(e, f)) != max(rho(e), rho(f)):
            return False
    return True


# -- files -------------------------------------------------------------------------

def parse_polytope(text: str) -> RationalPolytope:
    """One vertex per line, coordinates as ``p/q``; ``#`` starts a comment."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(vec(line.split()))
    if not rows:
        raise ValueError("polytope file has no vertices")
    return polytope(rows)


def format_polytope(p: RationalPolytope) -> str:
    return "\n".join(" ".join(str(a) for a in v) for v in p.vertices) + "\n"


def read_polytope(path) -> RationalPolytope:
    return parse_polytope(Path(path).read_text())


def write_polytope(path, p: RationalPolytope) -> None:
    Path(path).write_text(format_polytope(p))
