"""Command line front end: ``python3 -m hullnorm {validate,synth,suite}``.

Exit codes: 0 success, 1 parse error, 2 validation failure, 3 precondition
failure, 4 falsification.  Tables go to standard output, diagnostics to
standard error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import subsets as ss
from .dyadic import fmt
from .hull import HullError, is_enhancible
from .monoid import InvalidTable, MissingInverse, hull_capabilities
from .structfile import ParseError, read
from .suites import SUITES, packaged_fixtures, run_fixtures, run_suite
from .synth import (Falsification, PreconditionError, check_pseudo_norm, regularize_pnorm,
                    synthesize, validate_string)
from .zerotop import FilterError, make_zero_filter

OK, PARSE_ERROR, INVALID, PRECONDITION, FALSIFIED = range(5)


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _load(path: str):
    try:
        return read(path)
    except FileNotFoundError:
        _err(f"error: no such file {path}")
    except (ParseError, UnicodeDecodeError) as exc:
        _err(f"parse error: {exc}")
    return None


def cmd_validate(args) -> int:
    doc = _load(args.path)
    if doc is None:
        return PARSE_ERROR
    lines: list[str] = []
    failures = 0

    def fail(what: str, exc) -> None:
        nonlocal failures
        failures += 1
        witness = getattr(exc, "witness", None)
        lines.append(f"{what}: INVALID {exc}" + (f" (witness {witness})" if witness is not None else ""))

    needs_monoid = doc.hulls or doc.filters or doc.strings or doc.pnorms
    m = None
    if doc.monoid_spec is not None or needs_monoid:
        try:
            m = doc.monoid
            kind = "group" if m.is_group else "monoid"
            lines.append(f"monoid {m.spec()}: ok ({m.size} elements, {kind})")
        except (ValueError, InvalidTable) as exc:
            fail("monoid", exc)
    if m is not None:
        for name in doc.hulls:
            try:
                h = doc.hull(name)
            except (ValueError, HullError, MissingInverse) as exc:
                fail(f"hull {name}", exc)
                continue
            caps = hull_capabilities(m, h)
            lines.append(f"hull {name} ({doc.hulls[name].kind}): ok")
            lines += [f"  {c.describe()}" for c in caps.values()]
        for name, base in doc.filters.items():
            try:
                f = make_zero_filter(m, base)
                lines.append(f"filter {name}: ok, least neighbourhood {ss.fmt(f.least)}")
            except FilterError as exc:
                fail(f"filter {name}", exc)
        for name, spec in doc.strings.items():
            try:
                cert = validate_string(m, doc.hull(spec.hull), doc.string(name))
            except (KeyError, ValueError, HullError) as exc:
                fail(f"string {name}", exc)
                continue
            if cert:
                lines.append(f"string {name}: ok  {cert.describe()}")
            else:
                fail(f"string {name}", ValueError(cert.describe()))
        for name in doc.pnorms:
            try:
                cert = check_pseudo_norm(m, doc.pnorm_values(name))
            except ValueError as exc:
                fail(f"pnorm {name}", exc)
                continue
            if cert:
                lines.append(f"pnorm {name}: ok  {cert.describe()}")
            else:
                fail(f"pnorm {name}", ValueError(cert.describe()))
    for name, p in doc.polytopes.items():
        state = "balanced" if p.balanced else "not balanced"
        lines.append(f"polytope {name}: ok ({len(p.vertices)} vertices in dimension {p.dim}, {state})")
    for name, chk in doc.checks.items():
        lines.append(f"check {name}: {chk.kind} (run with 'suite --fixtures')")
    for ln in lines:
        print(ln)
    return INVALID if failures else OK


def cmd_synth(args) -> int:
    doc = _load(args.path)
    if doc is None:
        return PARSE_ERROR
    try:
        m = doc.monoid
        spec = doc.strings[args.string]
    except KeyError:
        _err(f"error: no string named {args.string}")
        return INVALID
    except (ValueError, InvalidTable) as exc:
        _err(f"error: {exc}")
        return INVALID
    try:
        q = doc.hull(args.hull or spec.hull)
        r = doc.hull(args.basic) if args.basic else None
    except KeyError as exc:
        _err(f"error: {exc}")
        return INVALID
    except (HullError, MissingInverse) as exc:
        _err(f"precondition failed: {exc}")
        return PRECONDITION
    try:
        s = doc.string(args.string)
        rho = synthesize(m, q, s, args.grid)
        if r is not None:
            enh = is_enhancible(q, r)
            if not enh:
                _err(f"precondition failed: missing certificate 'enhancible' "
                     f"({q.name} is not {r.name}-enhancible, witness {enh.witness})")
                return PRECONDITION
            rho = regularize_pnorm(m, r, rho)
            for n in range(len(s.prefix) + 2):
                ball = rho.sublevel(Fraction(1, 1 << n), strict=True)
                if not ss.is_subset(ball, s.at(n)):
                    raise Falsification("regularised ball escapes the string", witness=n)
    except PreconditionError as exc:
        _err(f"precondition failed: missing certificate '{exc.missing}' ({exc})")
        return PRECONDITION
    except Falsification as exc:
        _err(f"FALSIFIED: {exc}")
        return FALSIFIED
    for e, v in enumerate(rho.values):
        print(f"{e} {fmt(v)}")
    print("# sandwich-verified")
    return OK


def cmd_suite(args) -> int:
    witness_dir = Path(args.witness_dir)
    results = []
    names = args.only or list(SUITES)
    for name in names:
        if name not in SUITES:
            _err(f"error: unknown suite {name}")
            return PARSE_ERROR
    for name in sorted(names):
        results.append(run_suite(name, args.corpus_size, args.seed, args.max_carrier, witness_dir))
    if args.fixtures is not None:
        paths = args.fixtures or packaged_fixtures()
    else:
        paths = packaged_fixtures() if args.corpus_size > 0 and not args.only else []
    if paths or args.fixtures is not None:
        results.append(run_fixtures(paths, witness_dir))
    failed = False
    for res in sorted(results, key=lambda r: r.name):
        print(res.line())
        if args.timing:
            _err(f"{res.name}: {res.seconds:.2f}s")
        for msg in res.messages:
            _err(f"  {msg}")
        for w in res.witnesses:
            _err(f"  witness written to {w}")
        failed |= bool(res.failed)
    return FALSIFIED if failed else OK


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with the parse-error code rather than argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(PARSE_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hullnorm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a structure file and certify its objects")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("synth", help="synthesise a pseudo-norm from a declared string")
    p.add_argument("path")
    p.add_argument("--string", required=True, help="name of a [string] section")
    p.add_argument("--hull", help="hull Q (defaults to the string's own hull)")
    p.add_argument("--basic", help="basic hull R to regularise against")
    p.add_argument("--grid", type=int, help="grid exponent (default: prefix length)")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("suite", help="run the property suites over a random corpus")
    p.add_argument("--corpus-size", type=int, default=200, metavar="K")
    p.add_argument("--seed", type=int, default=1, metavar="S")
    p.add_argument("--max-carrier", type=int, default=64, metavar="M")
    p.add_argument("--fixtures", nargs="*", metavar="FILE",
                   help="fixture files to check (no files: the packaged fixtures)")
    p.add_argument("--only", nargs="+", metavar="SUITE", help=f"subset of {', '.join(SUITES)}")
    p.add_argument("--witness-dir", default="hullnorm-witnesses", metavar="DIR")
    p.add_argument("--timing", action="store_true", help="report seconds per suite on stderr")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)
