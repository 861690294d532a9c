"""Property suites and the checks behind pinned fixtures.

Every random instance is first written down as a :class:`StructureFile` with
one ``[check]`` section and then run through :func:`run_check`, the same
entry point that fixture files use.  A failing instance is therefore already
a replayable witness: dump it and feed it back to ``suite --fixtures``.

Check kinds (``run KIND key=value ...``):

``strps string=S [hull=Q] [basic=R] [grid=N] [path=auto|additive|translation]``
    synthesise, then re-verify against the oracles; optional golden table.
``capabilities hull=Q holds=a,b,...``
    exact set of capabilities that hold.
``regularize pnorm=P basic=R``
    upper regularisation, sublevel identity; optional golden table.
``generate filter=F hull=Q basic=R``
    generated family regenerates the filter.
``fn filter=F``
    the three-clause equivalence on a Boolean algebra.
``gauge polytope=A [seed=S] [points=K]``
    exact gauge sandwich, homogeneity and LP certificates.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Optional

from . import oracles
from . import subsets as ss
from .boolfn import fn_equivalence_suite, enumerate_ideals, enumerate_subgroups, make_ba
from .corpus import (candidate_hulls, random_filter_instance, random_hull, random_monoid,
                     random_string)
from .dyadic import coerce, fmt
from .gauge import (check_certificate, cross_polytope, gauge, gauge_certified, hypercube,
                    mul, random_balanced, random_point)
from .hull import intersect
from .monoid import capability, is_basic
from .structfile import CheckSpec, StringSpec, StructureFile, dump, parse
from .synth import (Falsification, PseudoNorm, dyadic_level_set, generate_family, regularize_pnorm,
                    synth_QR, synth_additive, synth_translation, synthesize)
from .zerotop import make_zero_filter

BRUTE_FORCE_CARRIER = 6
BRUTE_FORCE_GRID = 2
CAPABILITIES = ("1-algebraic", "additive", "translation-invariant", "symmetric")


class CheckFailed(Falsification):
    """A pinned expectation or oracle comparison failed."""


# -- checks ----------------------------------------------------------------------

def _golden(data: list) -> dict:
    out = {}
    for line in data:
        idx, val = line.split()
        out[int(idx)] = coerce(val)
    return out


def _compare_golden(values, data: list, what: str) -> None:
    if not data:
        return
    gold = _golden(data)
    got = {e: v for e, v in enumerate(values)}
    if gold != got:
        diff = sorted(e for e in set(gold) | set(got) if gold.get(e) != got.get(e))
        e = diff[0]
        raise CheckFailed(f"{what} differs from the pinned table",
                          witness=f"element {e}: pinned {fmt(gold[e]) if e in gold else '-'}, "
                                  f"got {fmt(got[e]) if e in got else '-'}")


def _check_pnorm_oracles(m, h, values, what: str) -> None:
    pair = oracles.subadditive_pair(m.table, values)
    if pair is not None:
        raise CheckFailed(f"{what} is not subadditive", witness=pair)
    if values[m.zero] != 0:
        raise CheckFailed(f"{what} is nonzero at zero")
    if h is not None:
        r = oracles.lower_continuity_failure(h.close, values)
        if r is not None:
            raise CheckFailed(f"{what} is not lower {h.name}-continuous", witness=fmt(r))


def _check_sandwich(values, s, depth: int) -> None:
    for n in range(depth + 1):
        r = Fraction(1, 1 << n)
        u = s.at(n)
        if not ss.is_subset(oracles.sublevel(values, r, strict=True), u):
            raise CheckFailed("open ball escapes U_n", witness=n)
        if not ss.is_subset(u, oracles.sublevel(values, r)):
            raise CheckFailed("U_n escapes the closed ball", witness=n)
    if oracles.sublevel(values, 0) != s.tail:
        raise CheckFailed("kernel differs from the tail",
                          witness=(ss.fmt(oracles.sublevel(values, 0)), ss.fmt(s.tail)))


def _check_level_chain(s, grid: int) -> None:
    """Monotone in q, and V_p + V_q ⊆ V_{p+q} for grid points with p+q ≤ 2."""
    m = s.monoid
    steps = 1 << grid
    levels = {k: dyadic_level_set(s, Fraction(k, steps), grid) for k in range(1, 2 * steps + 1)}
    for k in range(1, 2 * steps):
        if not ss.is_subset(levels[k], levels[k + 1]):
            raise CheckFailed("level sets not monotone", witness=fmt(Fraction(k, steps)))
    for p in range(1, steps + 1):
        for q in range(p, 2 * steps + 1 - p):
            if not ss.is_subset(m.set_sum(levels[p], levels[q]), levels[p + q]):
                raise CheckFailed("V_p + V_q not inside V_(p+q)",
                                  witness=(fmt(Fraction(p, steps)), fmt(Fraction(q, steps))))


def _check_strps(doc: StructureFile, chk: CheckSpec):
    p = chk.params
    m = doc.monoid
    s = doc.string(p["string"])
    h = doc.hull(p.get("hull", doc.strings[p["string"]].hull))
    grid = int(p["grid"]) if "grid" in p else len(s.prefix)
    path = p.get("path", "auto")
    if path == "additive":
        rho = synth_additive(m, h, s, grid)
    elif path == "translation":
        rho = synth_translation(m, h, s, grid)
    else:
        rho = synthesize(m, h, s, grid)
        path = "additive" if capability(m, h, "additive") else "translation"
    values = rho.values
    _check_pnorm_oracles(m, h, values, "synthesised pseudo-norm")
    _check_sandwich(values, s, max(grid, len(s.prefix)) + 1)
    if grid <= 4:
        _check_level_chain(s, grid)
    raw = oracles.string_pseudo_norm(m.table, m.zero, m.size, s.prefix, s.tail, grid)
    if path == "additive":
        if values != raw:
            e = next(i for i in range(m.size) if values[i] != raw[i])
            raise CheckFailed("pseudo-norm differs from the grid oracle",
                              witness=f"element {e}: {fmt(values[e])} vs {fmt(raw[e])}")
    else:
        if any(a > b for a, b in zip(values, raw)):
            raise CheckFailed("regularised pseudo-norm exceeds the unconstrained one")
        if m.size <= BRUTE_FORCE_CARRIER and grid <= BRUTE_FORCE_GRID:
            gridvals = [Fraction(k, 1 << grid) for k in range((1 << grid) + 1)]
            best = oracles.largest_grid_minorant(h.close, raw, gridvals)
            if tuple(best) != values:
                raise CheckFailed("not the largest lower-continuous minorant",
                                  witness=[fmt(v) for v in best])
    if "basic" in p:
        rho = _check_regularize(doc, rho, p["basic"])
    _compare_golden(rho.values, chk.data, "pseudo-norm")
    return rho


def _check_regularize(doc: StructureFile, rho, basic: str):
    m = doc.monoid
    r = doc.hull(basic)
    out = regularize_pnorm(m, r, rho)
    src = rho.values if isinstance(rho, PseudoNorm) else rho
    expect = oracles.upper_regularization(r.point, src)
    if out.values != expect:
        raise CheckFailed("regularisation differs from the oracle")
    _check_pnorm_oracles(m, r, out.values, "regularised pseudo-norm")
    levels = sorted(set(src) | set(out.values) | {Fraction(0)})
    for t in levels:
        lhs = oracles.sublevel(out.values, t)
        rhs = oracles.core(r.point, oracles.sublevel(src, t), m.size)
        if lhs != rhs:
            raise CheckFailed("sublevel of the regularisation is not the core of the sublevel",
                              witness=fmt(t))
    return out


def _check_capabilities(doc: StructureFile, chk: CheckSpec) -> None:
    m = doc.monoid
    h = doc.hull(chk.params["hull"])
    props = [p for p in CAPABILITIES if p != "symmetric" or m.is_group]
    holding = {p for p in props if capability(m, h, p)}
    pinned = {p for p in chk.params.get("holds", "").split(",") if p}
    if holding != pinned:
        raise CheckFailed("capabilities differ from the pinned set",
                          witness={"pinned": sorted(pinned), "found": sorted(holding)})


def _filter(doc: StructureFile, name: str, monoid=None):
    return make_zero_filter(monoid or doc.monoid, doc.filters[name])


def _check_generate(doc: StructureFile, chk: CheckSpec) -> None:
    p = chk.params
    m = doc.monoid
    f = _filter(doc, p["filter"])
    q, r = doc.hull(p["hull"]), doc.hull(p["basic"])
    fam = generate_family(f, q, r)
    kernels = ss.full(m.size)
    for rho in fam.norms:
        _check_pnorm_oracles(m, fam.basic, rho.values, "generator")
        if any(rho[g] != rho[m.neg(g)] for g in range(m.size)):
            raise CheckFailed("generator is not symmetric")
        kernels &= oracles.sublevel(rho.values, 0)
    if kernels != f.least:
        raise CheckFailed("generators do not cut out the least neighbourhood",
                          witness=(ss.fmt(kernels), ss.fmt(f.least)))
    _check_pnorm_oracles(m, None, fam.combined.values, "combined generator")
    if oracles.sublevel(fam.combined.values, 0) != f.least:
        raise CheckFailed("combined generator has the wrong kernel")
    for rho in fam.norms:
        for e in range(m.size):
            if fam.combined[e] < min(rho[e], 1) / (1 << (fam.norms.index(rho) + 1)):
                raise CheckFailed("combination below a weighted input")


def _check_fn(doc: StructureFile, chk: CheckSpec) -> None:
    spec = doc.monoid_spec or ""
    if not spec.startswith("boolean_sym_diff("):
        raise ValueError("fn checks need a boolean_sym_diff monoid")
    ba = make_ba(int(spec[len("boolean_sym_diff("):-1]))
    f = make_zero_filter(ba.sym, doc.filters[chk.params["filter"]])
    report = fn_equivalence_suite(ba, f)
    lower = ba.lower.close(f.least) == f.least
    if report.clauses[0] != lower:
        raise CheckFailed("first clause disagrees with the lower-set oracle")
    if report.submeasures:
        for mu in report.submeasures:
            for a in range(ba.size):
                for b in range(ba.size):
                    if mu[a ^ b] > mu[a] + mu[b]:
                        raise CheckFailed("submeasure not subadditive under symmetric difference")
        kernels = ss.full(ba.size)
        for mu in report.family.norms:
            kernels &= oracles.sublevel(mu.values, 0)
        if kernels != f.least:
            raise CheckFailed("submeasures do not regenerate the filter")


_FORMULAS = {
    "l1": lambda x: sum(abs(c) for c in x),
    "sup": lambda x: max(abs(c) for c in x),
}


def _check_gauge(doc: StructureFile, chk: CheckSpec) -> None:
    p = doc.polytopes[chk.params["polytope"]]
    rng = random.Random(int(chk.params.get("seed", 0)))
    npts = int(chk.params.get("points", 200))
    formula = _FORMULAS[chk.params["formula"]] if "formula" in chk.params else None
    for i in range(npts):
        x = random_point(rng, p.dim)
        g = gauge_certified(p, x)
        if not check_certificate(p, x, g):
            raise CheckFailed("gauge certificate does not verify", witness=x)
        if formula is not None and g.value != formula(x):
            raise CheckFailed(f"gauge differs from the {chk.params['formula']} formula", witness=x)
        inside = p.contains(x)
        if inside != (g.value <= 1):
            raise CheckFailed("gauge sandwich fails", witness=x)
        if i % 10 == 0:
            t = Fraction(rng.randint(1, 12), rng.randint(1, 6))
            if gauge(p, mul(t, x)) != t * g.value:
                raise CheckFailed("gauge is not positively homogeneous", witness=(t, x))
            if gauge(p, mul(-1, x)) != g.value:
                raise CheckFailed("gauge is not symmetric", witness=x)


def _check_pipeline(doc: StructureFile, chk: CheckSpec) -> None:
    p = chk.params
    m = doc.monoid
    f = _filter(doc, p["filter"])
    q, r = doc.hull(p["hull"]), doc.hull(p["basic"])
    w = list(f.base)
    rho = synth_QR(f, q, r, w)
    _check_pnorm_oracles(m, intersect(q, r), rho.values, "pipeline pseudo-norm")
    for n in range(len(w) + 2):
        if not ss.is_subset(_open_ball(rho.values, n), w[min(n, len(w) - 1)]):
            raise CheckFailed("small ball escapes W_n", witness=n)
    if not ss.is_subset(f.least, oracles.sublevel(rho.values, 0)):
        raise CheckFailed("pipeline pseudo-norm is not continuous at zero")
    _compare_golden(rho.values, chk.data, "pipeline pseudo-norm")


def _open_ball(values, n: int) -> int:
    return oracles.sublevel(values, Fraction(1, 1 << n), strict=True)


def _check_levels(doc: StructureFile, chk: CheckSpec) -> None:
    """Level sets ``V_q + T`` for ``q`` on the grid up to 1, against the oracle and the pins."""
    m = doc.monoid
    s = doc.string(chk.params["string"])
    grid = int(chk.params.get("grid", len(s.prefix)))
    steps = 1 << grid
    got = {}
    for k in range(1, steps + 1):
        q = Fraction(k, steps)
        fast = dyadic_level_set(s, q, grid)
        slow = oracles.level_set(m.table, m.zero, m.size, s.prefix, s.tail, q, grid)
        if fast != slow:
            raise CheckFailed("level set differs from the oracle", witness=fmt(q))
        got[q] = fast
    for line in chk.data:
        q, _, mask = line.partition(" ")
        q = coerce(q)
        if got.get(q) != ss.parse(mask.strip()):
            have = ss.fmt(got[q]) if q in got else "-"
            raise CheckFailed("level set differs from the pinned one",
                              witness=f"{fmt(q)}: pinned {mask.strip()}, got {have}")


CHECKS: dict[str, Callable] = {
    "pipeline": _check_pipeline,
    "strps": _check_strps,
    "levels": _check_levels,
    "capabilities": _check_capabilities,
    "regularize": lambda doc, chk: _check_regularize_entry(doc, chk),
    "generate": _check_generate,
    "fn": _check_fn,
    "gauge": _check_gauge,
}


def _check_regularize_entry(doc: StructureFile, chk: CheckSpec) -> None:
    values = doc.pnorm_values(chk.params["pnorm"])
    out = _check_regularize(doc, values, chk.params["basic"])
    _compare_golden(out.values, chk.data, "regularisation")


def run_check(doc: StructureFile, name: str) -> None:
    chk = doc.checks[name]
    if chk.kind not in CHECKS:
        raise ValueError(f"unknown check kind {chk.kind!r}")
    CHECKS[chk.kind](doc, chk)


# -- suite driver -------------------------------------------------------------------

@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    seconds: float = 0.0
    witnesses: list = field(default_factory=list)
    messages: list = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.passed + self.failed

    def line(self) -> str:
        state = "PASS" if not self.failed else "FAIL"
        count = f"{self.passed}/{self.total}" if self.total else "0 instances"
        return f"{self.name:<20} {state} {count}"


def _record(result: SuiteResult, doc: StructureFile, label: str, exc: BaseException,
            witness_dir: Optional[Path]) -> None:
    result.failed += 1
    msg = f"{label}: {type(exc).__name__}: {exc}"
    result.messages.append(msg)
    if witness_dir is not None:
        witness_dir.mkdir(parents=True, exist_ok=True)
        safe = "".join(c if c.isalnum() or c in "-_." else "_" for c in label)
        path = witness_dir / f"witness-{result.name}-{safe}.hn"
        note = msg.replace("\n", " ")
        path.write_text(dump(doc, header=f"witness for {result.name}\n{note}\n"
                                         f"replay: python3 -m hullnorm suite --corpus-size 0 --fixtures {path.name}"))
        result.witnesses.append(str(path))


def _run_docs(name: str, docs: Iterable, witness_dir: Optional[Path]) -> SuiteResult:
    result = SuiteResult(name)
    start = time.perf_counter()
    for label, doc in docs:
        try:
            for cname in doc.checks:
                run_check(doc, cname)
        except Exception as exc:  # noqa: BLE001 - every failure is reported with its witness
            _record(result, doc, label, exc, witness_dir)
        else:
            result.passed += 1
    result.seconds = time.perf_counter() - start
    return result


def _rng(seed: int, suite: str, i: int) -> random.Random:
    return random.Random(f"{seed}:{suite}:{i}")


def _doc(monoid, hulls: dict, check: CheckSpec, strings=None, filters=None, pnorms=None,
         polytopes=None) -> StructureFile:
    return StructureFile(monoid_spec=monoid.spec(), hulls=dict(hulls), strings=dict(strings or {}),
                         filters=dict(filters or {}), pnorms=dict(pnorms or {}),
                         polytopes=dict(polytopes or {}), checks={"main": check}, _monoid=monoid)


def strps_additive_docs(k: int, seed: int, max_carrier: int):
    i = 0
    made = 0
    while made < k:
        rng = _rng(seed, "strps-additive", i)
        i += 1
        m = random_monoid(rng, max_carrier)
        found = random_hull(rng, m, "additive")
        if found is None:
            continue
        spec, h = found
        s = random_string(rng, m, h)
        made += 1
        yield f"instance-{i - 1}", _doc(
            m, {"H": spec}, CheckSpec("strps", {"string": "S", "path": "additive"}, []),
            strings={"S": StringSpec("H", list(s.prefix), s.tail)})


def strps_translation_docs(k: int, seed: int, max_carrier: int):
    i = 0
    made = 0
    while made < k:
        rng = _rng(seed, "strps-translation", i)
        i += 1
        small = i % 3 == 0
        m = random_monoid(rng, min(max_carrier, BRUTE_FORCE_CARRIER) if small else max_carrier)
        found = random_hull(rng, m, "translation-invariant", exclude=("powerset",))
        if found is None:
            continue
        spec, h = found
        # every carrier in brute-force range gets a grid the enumeration can afford
        s = random_string(rng, m, h, max_len=BRUTE_FORCE_GRID if m.size <= BRUTE_FORCE_CARRIER else 3)
        made += 1
        yield f"instance-{i - 1}", _doc(
            m, {"H": spec}, CheckSpec("strps", {"string": "S", "path": "translation"}, []),
            strings={"S": StringSpec("H", list(s.prefix), s.tail)})


def regularization_docs(k: int, seed: int, max_carrier: int):
    i = 0
    made = 0
    while made < k:
        rng = _rng(seed, "regularization", i)
        i += 1
        m = random_monoid(rng, max_carrier)
        basics = [s for s in candidate_hulls(rng, m) if s.kind in ("powerset", "lower", "symmetric", "points")]
        rng.shuffle(basics)
        r_spec = next((s for s in basics if is_basic(m, s.build(m, "R"))), None)
        found = random_hull(rng, m, "additive")
        if r_spec is None or found is None:
            continue
        q_spec, q = found
        rho = synthesize(m, q, random_string(rng, m, q))
        made += 1
        yield f"instance-{i - 1}", _doc(
            m, {"R": r_spec}, CheckSpec("regularize", {"pnorm": "P", "basic": "R"}, []),
            pnorms={"P": dict(enumerate(rho.values))})


def generation_docs(k: int, seed: int, max_carrier: int):
    i = 0
    made = 0
    while made < k:
        rng = _rng(seed, "generation", i)
        i += 1
        inst = random_filter_instance(rng, max_carrier)
        if inst is None:
            continue
        made += 1
        yield f"instance-{i - 1}", _doc(
            inst.monoid, {"Q": inst.q_spec, "R": inst.r_spec},
            CheckSpec("generate", {"filter": "F", "hull": "Q", "basic": "R"}, []),
            filters={"F": list(inst.filt.base)})


def fn_docs(max_atoms: int = 4, subgroup_atoms: int = 3):
    for n in range(1, max_atoms + 1):
        ba = make_ba(n)
        bases = [("ideal", i) for i in enumerate_ideals(ba)]
        if n <= subgroup_atoms:
            ideals = set(enumerate_ideals(ba))
            bases += [("subgroup", g) for g in enumerate_subgroups(ba) if g not in ideals]
        for kind, base in bases:
            yield f"n{n}-{kind}-{base}", _doc(
                ba.sym, {}, CheckSpec("fn", {"filter": "F"}, []), filters={"F": [base]})


def gauge_docs(k: int, seed: int):
    yield "cross-polytope", _doc_poly(cross_polytope(2), seed, 200, formula="l1")
    yield "hypercube", _doc_poly(hypercube(2), seed, 200, formula="sup")
    for i in range(k):
        rng = _rng(seed, "gauge", i)
        yield f"polytope-{i}", _doc_poly(random_balanced(rng, rng.randint(1, 3)), seed + i, 200)


def _doc_poly(p, seed: int, points: int, formula: Optional[str] = None) -> StructureFile:
    params = {"polytope": "A", "seed": str(seed), "points": str(points)}
    if formula:
        params["formula"] = formula
    return StructureFile(polytopes={"A": p}, checks={"main": CheckSpec("gauge", params, [])})


def packaged_fixtures() -> list[Path]:
    root = resources.files("hullnorm") / "fixtures"
    return sorted(Path(str(p)) for p in root.iterdir() if str(p).endswith(".hn"))


def run_fixtures(paths, witness_dir: Optional[Path]) -> SuiteResult:
    """Run every check of every file; any failure at all falsifies the pin.

    The witness for a fixture is the file itself, copied verbatim under a
    header, so replaying it reproduces the failure exactly.
    """
    result = SuiteResult("fixtures")
    start = time.perf_counter()
    for path in map(Path, paths):
        text = path.read_text()
        try:
            doc = parse(text)
            if not doc.checks:
                raise ValueError("fixture has no checks")
            for cname in doc.checks:
                run_check(doc, cname)
        except Exception as exc:  # noqa: BLE001 - every failure is reported with its witness
            result.failed += 1
            msg = f"{path.name}: {type(exc).__name__}: {exc}"
            result.messages.append(msg)
            if witness_dir is not None:
                witness_dir.mkdir(parents=True, exist_ok=True)
                out = witness_dir / f"witness-fixture-{path.name}"
                header = "".join(f"# {ln}\n" for ln in
                                 (f"witness for fixture {path.name}", msg.replace("\n", " "),
                                  f"replay: python3 -m hullnorm suite --corpus-size 0 --fixtures {out.name}"))
                out.write_text(header + text)
                result.witnesses.append(str(out))
        else:
            result.passed += 1
    result.seconds = time.perf_counter() - start
    return result


SUITES = ("strps-additive", "strps-translation", "regularization", "generation",
          "fn-equivalence", "gauge")


def run_suite(name: str, k: int, seed: int, max_carrier: int,
              witness_dir: Optional[Path] = None) -> SuiteResult:
    if name == "strps-additive":
        docs = strps_additive_docs(k, seed, max_carrier)
    elif name == "strps-translation":
        docs = strps_translation_docs(k // 2 if k > 1 else k, seed, max_carrier)
    elif name == "regularization":
        docs = regularization_docs(k, seed, max_carrier)
    elif name == "generation":
        docs = generation_docs(k, seed, max_carrier)
    elif name == "fn-equivalence":
        docs = fn_docs() if k > 0 else iter(())
    elif name == "gauge":
        docs = gauge_docs(k // 4, seed) if k > 0 else iter(())
    else:
        raise ValueError(f"unknown suite {name!r}")
    return _run_docs(name, docs, witness_dir)
