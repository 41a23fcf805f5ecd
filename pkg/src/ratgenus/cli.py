"""Command-line front end.

Exit codes: 0 success, 1 domain error, 2 verification failure, 3 internal
invariant violation, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .atlas import FORMATS, write_atlas
from .core import DomainError, InternalInvariantError, format_rational, normalize_lens
from .lensd import d_all
from .oracle import run_all, verification_envelope
from .surgery import (
    dual_theta_terms,
    parse_alexander,
    parse_knot,
    surgery_d,
    torsion_coefficients,
)
from .theta import simple_knot_invariants, theta_lower_bound

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_VERIFY = 2
EXIT_INTERNAL = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _dump(obj, out) -> None:
    out.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def cmd_dinv(args, out) -> int:
    L = normalize_lens(args.p, args.q)
    d = d_all(L)
    _dump({"p": L.p, "q": L.q, "d": [format_rational(v) for v in d.values]}, out)
    return EXIT_OK


def cmd_theta(args, out) -> int:
    L = normalize_lens(args.p, args.q)
    report = theta_lower_bound(d_all(L), args.k)
    _dump({"p": L.p, "q": L.q, "k": args.k % L.p, **report.to_json_dict()}, out)
    return EXIT_OK


def cmd_simple(args, out) -> int:
    L = normalize_lens(args.p, args.q)
    report = simple_knot_invariants(L, args.k)
    payload = {"p": L.p, "q": L.q, "k": args.k % L.p, **report.to_json_dict()}
    payload["theta"] = format_rational(report.theta)
    _dump(payload, out)
    return EXIT_OK


def cmd_surgery(args, out) -> int:
    delta = parse_knot(args.knot) if args.knot else parse_alexander(args.alex)
    V = torsion_coefficients(delta)
    d = surgery_d(args.p, V)
    terms = dual_theta_terms(args.p, V)
    bound = max(terms)
    target = Fraction(2 * delta.genus - 1, args.p)
    _dump(
        {
            "knot": args.knot or str(delta),
            "p": args.p,
            "genus": delta.genus,
            "alexander": list(delta.coeffs),
            "V": list(V.values),
            "d": [format_rational(v) for v in d.values],
            "convention": d.convention,
            "dual_bound": format_rational(bound),
            "attained_at": [i for i, t in enumerate(terms) if t == bound],
            "seifert_upper_bound": format_rational(target),
            "minimizer": bound == target,
        },
        out,
    )
    return EXIT_OK


def cmd_atlas(args, out) -> int:
    if args.out in (None, "-"):
        write_atlas(sys.stdout.buffer, args.pmax, args.format, args.jobs)
        sys.stdout.buffer.flush()
    else:
        with open(args.out, "wb") as fh:
            write_atlas(fh, args.pmax, args.format, args.jobs)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    envelope = verification_envelope(run_all(args.pmax))
    _dump(envelope, out)
    return EXIT_OK if envelope["passed"] else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ratgenus", description="Correction terms and rational genus bounds for lens spaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("dinv", help="full table of correction terms of L(p,q)")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_dinv)

    for name, func, text in (
        ("theta", cmd_theta, "correction-term lower bound on Theta for class k"),
        ("simple", cmd_simple, "exact rational genus and fiberedness of the simple knot in class k"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("p", type=int)
        p.add_argument("q", type=int)
        p.add_argument("k", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("surgery", help="p-surgery on an L-space knot in S^3")
    knot = p.add_mutually_exclusive_group(required=True)
    knot.add_argument("--knot", help="torus knot shorthand, e.g. T(2,3)")
    knot.add_argument("--alex", help="symmetric Alexander coefficients c_{-g},...,c_g")
    p.add_argument("--p", type=_positive, required=True, help="surgery coefficient")
    p.set_defaults(func=cmd_surgery)

    p = sub.add_parser("atlas", help="simple-knot table for every lens space with p <= pmax")
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--jobs", type=_positive, default=1)
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("verify", help="run the brute-force oracle suite")
    p.add_argument("--pmax", type=_positive, required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.command == "atlas" and args.pmax < 2:
            raise UsageError("--pmax must be >= 2")
    except UsageError as exc:
        print(f"ratgenus: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except DomainError as exc:
        print(f"ratgenus: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except InternalInvariantError as exc:
        print(f"ratgenus: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
