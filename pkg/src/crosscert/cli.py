"""Command-line interface: build, bound, select, certify, validate, render."""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .certificate import (Certificate, PrecisionMismatchError, SchemaError, build_certificate,
                          validate)
from .content import (BudgetError, DomainError, best_covering, cover_sum_lemma1, lemma1_bound,
                      lemma2_series)
from .enclosure import DEFAULT_PREC, InconclusiveError
from .geometry import (DeltaSequence, InvalidSequenceError, build_Fm, complement_region,
                       frac_to_json)
from .render import DepthCapError, render_Fm
from .selector import select_geometric, verify

PRECISION_ENV = "CROSSCERT_PRECISION"

EXIT_OK = 0
EXIT_FAIL = 1  # a verdict came out FAIL
EXIT_USAGE = 2  # argparse
EXIT_INPUT = 3  # malformed rational / sequence / domain violation
EXIT_IO = 4
EXIT_INCONCLUSIVE = 5  # precision cap or covering budget


class InputError(ValueError):
    pass


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed rational {text!r}") from exc


def parse_sequence(text: str) -> DeltaSequence:
    """``default``, ``geometric:A,rho``, ``explicit:d0,d1,...`` or a JSON file."""
    if text == "default":
        return DeltaSequence.default()
    kind, _, rest = text.partition(":")
    if kind == "geometric" and rest:
        parts = rest.split(",")
        if len(parts) != 2:
            raise InputError("geometric sequence needs A,rho")
        return DeltaSequence.geometric(parse_rational(parts[0]), parse_rational(parts[1]))
    if kind == "explicit" and rest:
        return DeltaSequence.explicit(parse_rational(p) for p in rest.split(","))
    path = Path(text)
    if path.exists():
        data = json.loads(path.read_text())
        return DeltaSequence.from_json(data.get("sequence", data))
    raise InputError(f"cannot parse sequence {text!r}")


def _default_prec() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_PREC
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{PRECISION_ENV}={raw!r} is not an integer")


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------


def cmd_build(args) -> int:
    seq = parse_sequence(args.seq)
    if args.what == "complement":
        region = complement_region(seq, args.depth)
    else:
        region = build_Fm(seq, args.depth)
    doc = region.to_json(kind=args.what)
    doc.update(depth=args.depth, sequence=seq.to_json(), area=frac_to_json(region.area()))
    _emit(_dump(doc), args.output)
    return EXIT_OK


def cmd_bound(args) -> int:
    prec = args.precision
    if args.lemma1:
        if args.delta is None or args.n0 is None:
            raise InputError("--lemma1 needs --delta and --n0")
        delta = parse_rational(args.delta)
        b = lemma1_bound(delta, args.n0, prec)
        doc = b.to_json()
        doc["cover_sum"] = frac_to_json(cover_sum_lemma1(delta, args.n0))
    elif args.lemma2:
        seq = parse_sequence(args.seq)
        doc = {"witness": "lemma2-series", "sequence": seq.to_json(),
               **lemma2_series(seq, prec).to_json()}
    else:
        seq = parse_sequence(args.seq)
        region = complement_region(seq, args.depth)
        sides = ([parse_rational(args.side)] if args.side
                 else [seq.delta(n) for n in range(args.depth + 1)])
        b = best_covering(region, sides, args.budget)
        doc = b.to_json(include_squares=args.squares)
        doc.update(depth=args.depth, sequence=seq.to_json())
    _emit(_dump(doc), args.output)
    return EXIT_OK


def cmd_select(args) -> int:
    eps = parse_rational(args.eps)
    seq = select_geometric(eps, args.precision)
    report = verify(seq, eps, args.precision)
    _emit(_dump({"sequence": seq.to_json(), "report": report.to_json()}), args.output)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_certify(args) -> int:
    cert = build_certificate(args.precision, args.convention, args.refine)
    _emit(cert.dumps(), args.output)
    return EXIT_OK if cert.verdict == "PASS" else EXIT_FAIL


def cmd_validate(args) -> int:
    cert = Certificate.read(args.certificate)
    v = validate(cert, args.precision)
    text = "\n".join(v.log) + "\n"
    _emit(text, args.output)
    return EXIT_OK if v.passed else EXIT_FAIL


def cmd_render(args) -> int:
    seq = parse_sequence(args.seq)
    _emit(render_Fm(seq, args.depth), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crosscert", description=__doc__)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seq=True):
        sp.add_argument("-o", "--output", default=None, help="output file (default stdout)")
        if seq:
            sp.add_argument("--seq", default="default",
                            help="default | geometric:A,rho | explicit:d0,d1,... | JSON file")
        return sp

    b = common(sub.add_parser("build", help="geometry JSON of F_m or its complement"))
    b.add_argument("--depth", type=int, default=2)
    b.add_argument("--what", choices=("Fm", "complement"), default="Fm")
    b.set_defaults(func=cmd_build)

    bd = common(sub.add_parser("bound", help="content bounds"))
    g = bd.add_mutually_exclusive_group(required=True)
    g.add_argument("--lemma1", action="store_true", help="single-scale bound 8 delta^eta")
    g.add_argument("--lemma2", action="store_true", help="multi-scale series bound")
    g.add_argument("--oracle", action="store_true", help="grid covering of the complement")
    bd.add_argument("--delta")
    bd.add_argument("--n0", type=int)
    bd.add_argument("--depth", type=int, default=2)
    bd.add_argument("--side", help="grid side (default: best of delta_0..delta_depth)")
    bd.add_argument("--budget", type=int, default=10 ** 6)
    bd.add_argument("--squares", action="store_true", help="list witness squares")
    bd.set_defaults(func=cmd_bound)

    s = common(sub.add_parser("select", help="choose a certified geometric sequence"), seq=False)
    s.add_argument("--eps", required=True)
    s.set_defaults(func=cmd_select)

    c = common(sub.add_parser("certify", help="build the separation certificate"), seq=False)
    c.add_argument("--convention", choices=("side", "diameter"), default="side")
    c.add_argument("--refine", type=int, default=0, help="self-similar refinement steps")
    c.set_defaults(func=cmd_certify)

    v = common(sub.add_parser("validate", help="replay a certificate"), seq=False)
    v.add_argument("certificate")
    v.set_defaults(func=cmd_validate)

    r = common(sub.add_parser("render", help="SVG picture of F_m"))
    r.add_argument("--depth", type=int, default=2)
    r.set_defaults(func=cmd_render)

    for sp in (bd, s, c, v):
        sp.add_argument("--precision", type=int, default=None, help="working precision in bits")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if hasattr(args, "precision") and args.precision is None and args.command != "validate":
            args.precision = _default_prec()
        return args.func(args)
    except (InputError, InvalidSequenceError, DomainError, SchemaError,
            PrecisionMismatchError, DepthCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InconclusiveError, BudgetError) as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
