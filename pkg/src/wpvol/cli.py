"""Command-line front end.

Subcommands: chamber classify / chamber enumerate, volume, wallcross, eval,
verify.  All rationals in CLI I/O are strings "p/q"; pi stays formal except
under --numeric, which prints a decimal at --precision digits.

Exit codes: 0 success, 1 domain error (on a wall, not realizable, ...),
2 usage error.  The intersection cache persists to the file named by the
WPVOL_CACHE environment variable (or --cache) when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .chambers import (
    StabilitySpace,
    WeightVector,
    chamber_from_json_dict,
    classify,
    enumerate_chambers,
)
from .errors import WpvolError
from .intersection import CACHE_ENV_VAR, default_cache
from .poly import Poly
from .rationals import parse_weights
from .verify import run as run_verify
from .volumes import chamber_volume, piecewise_volume, wall_crossing_poly

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


def _emit(data: dict, poly: Optional[Poly], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data, separators=(",", ":"), sort_keys=True)
    if fmt == "latex":
        return poly.to_latex() if poly is not None else json.dumps(data)
    lines = []
    for k, v in data.items():
        if isinstance(v, dict):
            if k == "chamber":
                lines.append(f"chamber: {json.dumps(v, separators=(',', ':'))}")
            continue
        lines.append(f"{k}: {v}")
    if poly is not None:
        lines.append(str(poly))
    return "\n".join(lines)


def _parse_chamber(args) -> "Chamber":
    from .chambers import Chamber  # local alias for type clarity

    if getattr(args, "weights", None):
        a = parse_weights(args.weights)
        space = StabilitySpace(args.g, len(a))
        return classify(WeightVector(space, a))
    if getattr(args, "chamber", None):
        data = json.loads(args.chamber)
        return chamber_from_json_dict(data, g=args.g, n=args.n)
    raise WpvolError("provide either --weights or --chamber")


def _cache_path(args) -> Optional[str]:
    return getattr(args, "cache", None) or os.environ.get(CACHE_ENV_VAR)


def _load_cache(args) -> None:
    path = _cache_path(args)
    if path and os.path.exists(path):
        default_cache().load(path)


def _save_cache(args) -> None:
    path = _cache_path(args)
    if path:
        default_cache().save(path)


def cmd_chamber_classify(args) -> int:
    a = parse_weights(args.weights)
    space = StabilitySpace(args.g, len(a))
    c = classify(WeightVector(space, a))
    print(_emit(c.to_json_dict(), None, args.format) if args.format == "json" else str(c))
    return EXIT_OK


def cmd_chamber_enumerate(args) -> int:
    space = StabilitySpace(args.g, args.n)
    chambers = enumerate_chambers(space, up_to_symmetry=args.up_to_symmetry)
    if args.format == "json":
        print(
            json.dumps(
                {"count": len(chambers), "chambers": [c.to_json_dict() for c in chambers]},
                separators=(",", ":"),
                sort_keys=True,
            )
        )
    else:
        print(f"{len(chambers)} chambers")
        for c in chambers:
            print(" ", c)
    return EXIT_OK


def cmd_volume(args) -> int:
    _load_cache(args)
    c = _parse_chamber(args)
    vr = chamber_volume(c, max_genus=args.max_genus)
    _save_cache(args)
    print(_emit(vr.to_json_dict(), vr.poly, args.format))
    return EXIT_OK


def cmd_wallcross(args) -> int:
    _load_cache(args)
    c = _parse_chamber(args)
    wall = {int(x) for x in args.wall.split(",")}
    wcp = wall_crossing_poly(c, wall, max_genus=args.max_genus)
    _save_cache(args)
    print(_emit(wcp.to_json_dict(), wcp.poly, args.format))
    return EXIT_OK


def cmd_eval(args) -> int:
    _load_cache(args)
    a = parse_weights(args.weights)
    space = StabilitySpace(args.g, len(a))
    w = WeightVector(space, a)
    if args.numeric:
        c, vr, value = piecewise_volume(
            w, numeric=True, digits=args.precision, max_genus=args.max_genus
        )
        data = {"chamber": c.to_json_dict(), "value_numeric": str(value)}
        _save_cache(args)
        if args.format == "json":
            print(json.dumps(data, separators=(",", ":"), sort_keys=True))
        else:
            print(value)
        return EXIT_OK
    c, vr, value = piecewise_volume(w, max_genus=args.max_genus)
    _save_cache(args)
    data = {"chamber": c.to_json_dict(), "value_poly": value.to_json_dict()}
    print(_emit(data, value, args.format))
    return EXIT_OK


def cmd_verify(args) -> int:
    _load_cache(args)
    results = run_verify(args.suite)
    _save_cache(args)
    failures = [r for r in results if not r.passed]
    if args.format == "json":
        print(
            json.dumps(
                {
                    "suite": args.suite,
                    "passed": len(results) - len(failures),
                    "failed": len(failures),
                    "results": [r.to_json_dict() for r in results],
                },
                separators=(",", ":"),
                sort_keys=True,
            )
        )
    else:
        for r in results:
            print(f"[{'PASS' if r.passed else 'FAIL'}] {r.id}: {r.description}")
            if not r.passed:
                print(f"    expected: {r.expected}")
                print(f"    computed: {r.computed}")
        print(f"{len(results) - len(failures)} passed, {len(failures)} failed")
    return EXIT_OK if not failures else EXIT_DOMAIN


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wpvol",
        description="Exact Weil-Petersson volumes of conical hyperbolic surfaces "
        "across the Hassett chamber decomposition.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_n=False):
        p.add_argument("--g", type=int, required=True, help="genus")
        if needs_n:
            p.add_argument("--n", type=int, help="number of marked points")
        p.add_argument("--format", choices=["text", "json", "latex"], default="text")
        p.add_argument("--precision", type=int, default=50, help="digits for numeric mode")
        p.add_argument("--max-genus", type=int, default=3, help="intersection backend bound")
        p.add_argument("--cache", help=f"intersection cache file (default ${CACHE_ENV_VAR})")

    p = sub.add_parser("chamber", help="chamber operations")
    chamber_sub = p.add_subparsers(dest="chamber_command", required=True)
    pc = chamber_sub.add_parser("classify", help="classify a weight vector")
    common(pc)
    pc.add_argument("--weights", required=True, help='comma-separated rationals "1/2,1/2,3/4"')
    pc.set_defaults(func=cmd_chamber_classify)
    pe = chamber_sub.add_parser("enumerate", help="enumerate all realizable chambers")
    common(pe, needs_n=True)
    pe.add_argument("--up-to-symmetry", action="store_true")
    pe.set_defaults(func=cmd_chamber_enumerate)

    p = sub.add_parser("volume", help="chamber volume polynomial")
    common(p, needs_n=True)
    p.add_argument("--weights", help="classify these weights first")
    p.add_argument("--chamber", help='inline chamber JSON {"light_max":[[3,4]]}')
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("wallcross", help="wall-crossing polynomial")
    common(p, needs_n=True)
    p.add_argument("--weights", help="classify these weights first")
    p.add_argument("--chamber", help="inline chamber JSON")
    p.add_argument("--wall", required=True, help='wall set "1,2"')
    p.set_defaults(func=cmd_wallcross)

    p = sub.add_parser("eval", help="evaluate the volume at a weight vector")
    common(p)
    p.add_argument("--weights", required=True)
    p.add_argument("--numeric", action="store_true", help="numeric output (quarantined)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--suite", choices=["paper", "invariants", "all"], default="all")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--cache", help=f"intersection cache file (default ${CACHE_ENV_VAR})")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except WpvolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
