"""orthocell build | verify | export.

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .complex import CellComplex
from .crystal import IncompatibleGenerator
from .exact import Q
from .io import (
    MalformedDocument,
    complex_from_document,
    document_from_complex,
    document_from_quotient,
    from_json,
    to_json,
    to_off,
)
from .lattes import build_quotient_complexes
from .suites import FAULTS, SUITES, VerifyConfig, ko_complex, parse_generator, run_suite, suite_cell_decomp
from .symmetric import (
    Orthotope,
    build_K,
    build_K_orthotope,
    build_K_subdivided,
    cube_structure,
    orthotope_structure,
)

MAX_DIM = 3        # symmetric decompositions and quotients
MAX_BOX_DIM = 6    # plain face complexes of boxes
KINDS = ("ko", "k", "k-subdivided", "cube", "rec", "quotient")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _sides(text: str | None) -> tuple:
    if not text:
        return ()
    try:
        vals = tuple(Q(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError, TypeError):
        raise UsageError(f"--sides must be a comma list of rationals, got {text!r}") from None
    if any(v <= 0 for v in vals):
        raise UsageError("--sides entries must be positive")
    return vals


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--lambda", dest="lam", type=int, default=2)
    p.add_argument("--sides", default=None, help="comma separated side lengths a1,a2,...")
    p.add_argument("--group", choices=("tor", "custom"), default="tor")
    p.add_argument("--generator", action="append", default=[],
                   help="point generator 'perm;signs[;translation]' for --group custom")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="orthocell", description="Symmetric cube decompositions and Lattes Markov partitions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="build a complex and print it as JSON")
    b.add_argument("kind", choices=KINDS)
    b.add_argument("--level", type=int, choices=(0, 1), default=0, help="quotient: 0 for D0, 1 for D1")
    _common(b)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--input", default=None, help="cell-decomp: verify this JSON complex instead")
    v.add_argument("--inject", choices=FAULTS, default=None, help="deliberately break the input")
    _common(v)

    e = sub.add_parser("export", help="convert a JSON complex document")
    e.add_argument("format", choices=("off", "json"))
    e.add_argument("--input", default=None, help="document path (default: standard input)")
    e.add_argument("--precision", type=int, default=12)
    e.add_argument("--out", default=None)
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check_dim(dim, kind: str, limit: int = MAX_DIM, low: int = 1) -> int:
    if dim is None:
        raise UsageError(f"{kind} needs --dim")
    if not low <= dim <= limit:
        raise UsageError(f"--dim {dim} outside the supported range {low}..{limit} for {kind}")
    return dim


def _group_config(args, dim: int) -> VerifyConfig:
    sides = _sides(args.sides)
    if sides and len(sides) != dim:
        raise UsageError(f"--sides needs {dim} entries")
    if args.group == "custom" and not sides:
        raise UsageError("--group custom needs --sides for the lattice")
    if args.group == "tor" and args.generator:
        raise UsageError("--generator only applies to --group custom")
    if args.l < 1 or args.lam < 1 or args.samples < 0 or args.radius < 1:
        raise UsageError("--l, --lambda and --radius must be positive and --samples nonnegative")
    try:
        gens = tuple(parse_generator(g, dim) for g in args.generator)
    except ValueError as e:
        raise UsageError(str(e)) from None
    return VerifyConfig(dim=dim, l=args.l, lam=args.lam, seed=args.seed, samples=args.samples,
                        radius=args.radius, sides=sides, generators=gens, inject=getattr(args, "inject", None))


def cmd_build(args) -> int:
    meta = {"kind": args.kind}
    if args.kind == "rec":
        sides = _sides(args.sides)
        if not sides:
            raise UsageError("rec needs --sides")
        _check_dim(len(sides), "rec", MAX_BOX_DIM)
        doc = document_from_complex(orthotope_structure(Orthotope.standard(sides)),
                                    {**meta, "sides": [str(s) for s in sides]})
    elif args.kind == "cube":
        d = _check_dim(args.dim, "cube", MAX_BOX_DIM)
        doc = document_from_complex(cube_structure(d), {**meta, "dim": d})
    elif args.kind == "ko":
        d = _check_dim(args.dim, "ko", low=0)
        doc = document_from_complex(ko_complex(d), {**meta, "dim": d})
    elif args.kind == "k":
        sides = _sides(args.sides)
        if sides:
            d = _check_dim(len(sides), "k")
            D = build_K_orthotope(Orthotope.standard(sides))
            meta["sides"] = [str(s) for s in sides]
        else:
            d = _check_dim(args.dim, "k")
            D = build_K(d)
        doc = document_from_complex(D, {**meta, "dim": d})
    elif args.kind == "k-subdivided":
        d = _check_dim(args.dim, "k-subdivided")
        if args.l < 1:
            raise UsageError("--l must be positive")
        doc = document_from_complex(build_K_subdivided(d, args.l), {**meta, "dim": d, "l": args.l})
    else:
        d = _check_dim(args.dim, "quotient")
        cfg = _group_config(args, d)
        D0, D1 = build_quotient_complexes(cfg.group(), cfg.lam)
        Dq = D0 if args.level == 0 else D1
        doc = document_from_quotient(Dq, {**meta, "dim": d, "lambda": cfg.lam, "level": args.level,
                                          "group": args.group})
    _emit(to_json(doc), args.out)
    return 0


def cmd_verify(args) -> int:
    D = None
    if args.input is not None:
        if args.suite != "cell-decomp":
            raise UsageError("--input is only supported by the cell-decomp suite")
        D = _read_complex(args.input)
        d = D.ambient_dim
    else:
        d = _check_dim(args.dim, "verify")
    if args.inject == "table" and args.suite not in ("markov", "all"):
        raise UsageError("--inject table applies to the markov suite")
    if args.inject in ("overlap", "missing-vertex") and args.suite not in ("cell-decomp", "all"):
        raise UsageError(f"--inject {args.inject} applies to the cell-decomp suite")
    cfg = _group_config(args, d)
    if D is not None:
        reports = suite_cell_decomp(cfg, D)
    else:
        reports = run_suite(args.suite, cfg)
    passed = all(r.passed for r in reports)
    doc = {"suite": args.suite, "passed": passed,
           "config": {"dim": d, "l": cfg.l, "lambda": cfg.lam, "seed": cfg.seed, "samples": cfg.samples,
                      "radius": cfg.radius, "group": args.group, "inject": cfg.inject},
           "reports": [r.to_dict() for r in reports]}
    _emit(json.dumps(doc, indent=1, sort_keys=True) + "\n", args.out)
    for r in reports:
        print(r.summary(), file=sys.stderr)
    return 0 if passed else 1


def _read_text(path: str | None) -> str:
    if path is None:
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from None


def _read_complex(path: str | None) -> CellComplex:
    try:
        return complex_from_document(from_json(_read_text(path)))
    except (MalformedDocument, KeyError, TypeError, ValueError) as e:
        raise UsageError(f"malformed document: {e}") from None


def cmd_export(args) -> int:
    text = _read_text(args.input)
    try:
        doc = from_json(text)
        D = complex_from_document(doc)
    except (MalformedDocument, KeyError, TypeError, ValueError) as e:
        raise UsageError(f"malformed document: {e}") from None
    if args.format == "json":
        _emit(to_json(doc), args.out)
    else:
        if args.precision < 0:
            raise UsageError("--precision must be nonnegative")
        _emit(to_off(D, args.precision), args.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        handler = {"build": cmd_build, "verify": cmd_verify, "export": cmd_export}[args.command]
        return handler(args)
    except UsageError as e:
        print(f"orthocell: error: {e}", file=sys.stderr)
        return 2
    except IncompatibleGenerator as e:
        print(f"orthocell: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
