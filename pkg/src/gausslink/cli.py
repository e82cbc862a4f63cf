"""Command-line interface.

Exit codes: 0 success, 1 verification failure (or inconclusive search),
2 usage error, 3 unreadable or malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .codec import GaussCodeError, parse, report_json, serialize
from .diagram import GaussDiagram
from .families import FAMILIES, generate
from .invariants import report
from .moves import ALL_KINDS, MoveKind, MoveSite, StaleSite, apply, enumerate_sites
from .search import min_negative_omega2
from .verify import CLAIMS, VerifySuiteConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.buffer.read().decode("utf-8")
    try:
        with open(path, "rb") as fh:
            return fh.read().decode("utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    except UnicodeDecodeError as exc:
        raise InputError(f"{path}: not UTF-8 ({exc.reason} at byte {exc.start})") from exc


def _load(path: str) -> GaussDiagram:
    text = _read(path)
    try:
        return parse(text)
    except GaussCodeError as exc:
        raise InputError(f"{path}: parse error: {exc}") from exc


def _kinds(text: str | None):
    if not text:
        return list(ALL_KINDS)
    try:
        return [MoveKind.parse(k) for k in text.split(",") if k.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def cmd_compute(args) -> int:
    d = _load(args.input)
    target = _load(args.target) if args.target else None
    print(report_json(report(d, target)))
    return EXIT_OK


def cmd_generate(args) -> int:
    try:
        d = generate(args.family, *args.params)
    except ValueError as exc:
        print(f"gausslink: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(serialize(d))
    return EXIT_OK


def cmd_moves_list(args) -> int:
    d = _load(args.input)
    sites = enumerate_sites(d, args.kinds, args.max_crossings)
    for i, s in enumerate(sites):
        print(json.dumps({"index": i, **s.to_json()}))
    return EXIT_OK


def cmd_moves_apply(args) -> int:
    d = _load(args.input)
    if (args.site is None) == (args.index is None):
        print("gausslink: give exactly one of --site or --index", file=sys.stderr)
        return EXIT_USAGE
    if args.site is not None:
        try:
            site = MoveSite.from_json(json.loads(args.site))
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"bad site description: {exc}") from exc
    else:
        sites = enumerate_sites(d, args.kinds, args.max_crossings)
        if not 0 <= args.index < len(sites):
            print(f"gausslink: site index {args.index} out of range ({len(sites)} sites)", file=sys.stderr)
            return EXIT_USAGE
        site = sites[args.index]
    try:
        print(serialize(apply(d, site)))
    except StaleSite as exc:
        raise InputError(f"site does not fit the diagram: {exc}") from exc
    return EXIT_OK


def cmd_verify(args) -> int:
    claims = args.claims.split(",") if args.claims else list(CLAIMS)
    bad = [c for c in claims if c not in CLAIMS]
    if bad:
        print(f"gausslink: unknown claims {bad}; expected {', '.join(CLAIMS)}", file=sys.stderr)
        return EXIT_USAGE
    cfg = VerifySuiteConfig(args.seed, args.trials, args.max_crossings)
    ok = True
    for verdict in run_suite(cfg, claims):
        print(json.dumps(verdict.to_json()), flush=True)
        ok &= verdict.passed
    return EXIT_OK if ok else EXIT_FAIL


def cmd_search(args) -> int:
    src = _load(args.source)
    dst = _load(args.target) if args.target else GaussDiagram.empty(src.n_components)
    try:
        res = min_negative_omega2(src, dst, args.max_crossings, args.max_states, args.potential)
    except ValueError as exc:
        print(f"gausslink: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps(res.to_json()))
    return EXIT_OK if res.reachable else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gausslink", description="Gauss-diagram linking invariants and Reidemeister moves.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="print the invariant report of a diagram")
    c.add_argument("input", nargs="?", default="-", help="Gauss code file, '-' for stdin")
    c.add_argument("--target", help="reference diagram for the RII bound (default: crossingless)")
    c.set_defaults(func=cmd_compute)

    g = sub.add_parser("generate", help="print the Gauss code of a family member")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("params", nargs="+", type=int, help="n, or m n for L and K")
    g.set_defaults(func=cmd_generate)

    m = sub.add_parser("moves", help="list or apply Reidemeister move sites")
    msub = m.add_subparsers(dest="action", required=True)
    for name, func in (("list", cmd_moves_list), ("apply", cmd_moves_apply)):
        a = msub.add_parser(name)
        a.add_argument("input", nargs="?", default="-")
        a.add_argument("--kinds", type=_kinds, default=list(ALL_KINDS), help="comma list such as O2a+,O3b")
        a.add_argument("--max-crossings", type=int, default=12)
        if name == "apply":
            a.add_argument("--site", help="site JSON as printed by 'moves list'")
            a.add_argument("--index", type=int, help="index into 'moves list' output")
        a.set_defaults(func=func)

    v = sub.add_parser("verify", help="run the randomised verification suite")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=1000)
    v.add_argument("--max-crossings", type=int, default=12)
    v.add_argument("--claims", help=f"comma list from {', '.join(CLAIMS)}")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="fewest negative inter-component Omega-2 moves")
    s.add_argument("--from", dest="source", required=True)
    s.add_argument("--to", dest="target", help="default: crossingless diagram")
    s.add_argument("--max-crossings", type=int, default=12)
    s.add_argument("--max-states", type=int, default=200_000)
    s.add_argument("--potential", choices=("none", "T"), default="none",
                   help="'T' turns on the A* potential built from the T invariant")
    s.set_defaults(func=cmd_search)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on usage errors
    try:
        return args.func(args)
    except InputError as exc:
        print(f"gausslink: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
