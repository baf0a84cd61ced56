"""Command-line driver: proof replay and finite-ring verification.

Subcommands::

    mnjordan prove <script.steps> [--format text|json]
    mnjordan ring (--kind Zn --n 6 | --kind Mat --k 2 --p 7 | --spec file.json)
                  --law gen-centralizer --m 1 --n 2 [--format ...]
    mnjordan search --family zn|mat2|products ... --law ... --m ... --n ...

Exit codes: 0 verified (or hypotheses unmet, reported); 1 failed replay or a
hypothesis-satisfying counterexample; 2 verified with assumptions; 3 bad
input, I/O trouble, or a size bound.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from . import finring, proofcheck

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ASSUMPTIONS = 2
EXIT_ERROR = 3


def shipped_script_path(name: str):
    """Path to a proof script shipped inside the package."""
    return resources.files("mnjordan").joinpath("proofs", name)


def cmd_prove(args) -> int:
    try:
        text = open(args.script).read()
    except OSError as exc:
        # bare names fall back to the scripts shipped with the package
        shipped = shipped_script_path(args.script.split("/")[-1])
        if shipped.is_file():
            text = shipped.read_text()
        else:
            print(f"cannot read script: {exc}", file=sys.stderr)
            return EXIT_ERROR
    try:
        script = proofcheck.parse_script(text, args.script)
    except proofcheck.ScriptError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report = proofcheck.replay(script)
    if args.format == "json":
        print(proofcheck.report_to_json_text(report))
    else:
        print(report.to_text())
    if report.overall == "VERIFIED":
        return EXIT_OK
    if report.overall == "VERIFIED-WITH-ASSUMPTIONS":
        return EXIT_ASSUMPTIONS
    return EXIT_FAILED


def _ring_from_args(args) -> tuple:
    """Ring plus the law weight n.

    ``--n`` is overloaded the way the examples use it: with ``--kind Zn`` the
    first occurrence is the modulus and the second the weight of the law.
    """
    ns = args.n_values or []
    if args.spec:
        if len(ns) != 1:
            raise finring.RingConstructionError("--spec needs exactly one --n (the weight)")
        return finring.from_spec(args.spec), ns[0]
    if args.kind == "Zn":
        if len(ns) != 2:
            raise finring.RingConstructionError(
                "--kind Zn needs --n twice: the modulus, then the law weight"
            )
        return finring.Zn(ns[0]), ns[1]
    if args.kind == "Mat":
        if args.p is None or len(ns) != 1:
            raise finring.RingConstructionError("--kind Mat needs --p and one --n")
        return finring.MatRing(args.k, args.p), ns[0]
    raise finring.RingConstructionError("give --spec FILE or --kind Zn|Mat")


def cmd_ring(args) -> int:
    try:
        ring, weight_n = _ring_from_args(args)
        spec = finring.LawSpec(args.law, args.m, weight_n)
        report = finring.check_theorem(
            ring, spec, max_solutions=args.max_solutions, scan_bound=args.max_size
        )
    except (finring.RingConstructionError, finring.RingSizeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.format == "json":
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(f"ring: {report.ring}   law: {report.law}   (m, n) = ({report.m}, {report.n})")
        for key, val in report.hypotheses.items():
            print(f"  {key}: {val}")
        print(f"  solutions: {report.solution_count}")
        print(f"  verdict: {report.verdict}")
        for v in report.violations[:5]:
            print(f"  violation: {v}")
    if report.applicable and report.violations:
        return EXIT_FAILED
    return EXIT_OK


def cmd_search(args) -> int:
    try:
        if args.family == "zn":
            rings = finring.family_zn(args.max_n)
        elif args.family == "mat2":
            primes = [int(p) for p in args.primes.split(",")] if args.primes else [3, 5, 7]
            rings = finring.family_mat2(primes)
        elif args.family == "products":
            rings = finring.family_products(args.max_n)
        else:
            print(f"unknown family {args.family!r}", file=sys.stderr)
            return EXIT_ERROR
        spec = finring.LawSpec(args.law, args.m, args.n)
        rows = finring.search_family(
            rings, spec, max_solutions=args.max_solutions, scan_bound=args.max_size
        )
    except (finring.RingConstructionError, finring.RingSizeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.format == "json":
        print(json.dumps([r.to_json() for r in rows], indent=2))
    else:
        for r in rows:
            flag = "" if r.applicable else "  [hypotheses fail]"
            print(
                f"{r.ring:14s} solutions={r.solution_count:<8d} {r.verdict}{flag}"
            )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mnjordan",
        description="replay equational proof certificates and verify the "
        "corresponding theorems on finite rings",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prove", help="replay a proof script")
    p.add_argument("script")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_prove)

    r = sub.add_parser("ring", help="check a theorem on one finite ring")
    r.add_argument("--spec", help="JSON ring description")
    r.add_argument("--kind", choices=("Zn", "Mat"))
    r.add_argument("--n", dest="n_values", type=int, action="append",
                   help="for --kind Zn: the modulus, then the law weight; "
                   "otherwise the law weight")
    r.add_argument("--k", type=int, default=2, help="matrix size for --kind Mat")
    r.add_argument("--p", type=int, help="base modulus for --kind Mat")
    r.add_argument("--law", required=True, choices=finring.LAWS)
    r.add_argument("--m", type=int, required=True)
    r.add_argument("--max-size", type=int, default=finring.PAIR_SCAN_BOUND)
    r.add_argument("--max-solutions", type=int, default=finring.MAX_SOLUTIONS)
    r.add_argument("--jobs", type=int, default=1, help="accepted for symmetry; "
                   "the checks are single-process")
    r.add_argument("--format", choices=("text", "json"), default="text")
    r.set_defaults(func=cmd_ring)

    s = sub.add_parser("search", help="sweep a family of rings")
    s.add_argument("--family", required=True, choices=("zn", "mat2", "products"))
    s.add_argument("--max-n", type=int, default=12)
    s.add_argument("--primes", help="comma list for --family mat2")
    s.add_argument("--law", required=True, choices=finring.LAWS)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True, help="the law weight n")
    s.add_argument("--max-size", type=int, default=finring.PAIR_SCAN_BOUND)
    s.add_argument("--max-solutions", type=int, default=finring.MAX_SOLUTIONS)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
