"""Command line: ``verify list``, ``verify run``, ``verify map-order``, ``verify surface``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from ..weyl import DEFAULT_BUDGET
from .registry import (
    ERROR,
    EXCEEDED,
    REFUTED,
    SKIPPED,
    VERIFIED,
    BadParameter,
    Report,
    RunConfig,
    UnknownClaim,
    list_claims,
    parse_param_args,
    run_claims,
)

MARKERS = {VERIFIED: "✓", REFUTED: "✗", SKIPPED: "–", EXCEEDED: "–", ERROR: "!"}


def _brief(value, limit: int = 160) -> str:
    text = json.dumps(value, sort_keys=True, ensure_ascii=False)
    return text if len(text) <= limit else text[: limit - 3] + "..."


def format_text(report: Report) -> str:
    lines = []
    for v in report.verdicts:
        mark = MARKERS[v.status]
        line = f"{mark} {v.claim_id:<30} {v.status:<9} {v.millis:>7} ms"
        if v.status == REFUTED:
            line += f"  witness: {_brief(v.witness)}"
            if v.expected_refuted:
                line += "  (expected)"
        elif v.reason:
            line += f"  {v.reason.splitlines()[0]}"
        lines.append(line)
    s = report.summary()
    lines.append(
        f"{s['verified']} verified, {s['refuted']} refuted, {s['skipped']} skipped, {s['exceeded']} exceeded"
        + (f", {s['errors']} errors" if s.get("errors") else "")
    )
    return "\n".join(lines)


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False)


def _cmd_list(args) -> int:
    claims = list_claims(args.prefix or "")
    if args.json:
        print(dump_json([c.summary() for c in claims]))
    else:
        for c in claims:
            print(f"{c.id:<30} {c.description}")
    return 0


def _split_patterns(items: Sequence[str] | None) -> tuple[str, ...]:
    out = []
    for item in items or ():
        out.extend(p.strip() for p in item.split(",") if p.strip())
    return tuple(out)


def _cmd_run(args) -> int:
    if not args.all and not args.claim:
        print("verify run: give --claim ID or --all", file=sys.stderr)
        return 2
    params = parse_param_args(args.param or [])
    config = RunConfig(
        seed=args.seed,
        budget=args.budget,
        jobs=max(1, args.jobs),
        exclude=_split_patterns(args.exclude),
        expect_refuted=_split_patterns(args.expect_refuted),
        params=params,
        normalize_timing=args.normalize_timing,
    )
    if args.all:
        ids = [c.id for c in list_claims()]
    else:
        ids = list(args.claim)
        if len(ids) == 1:
            # a single named claim rejects parameters it does not have
            from .registry import get_claim, merge_params

            merge_params(get_claim(ids[0]), params, strict=True)
    report = run_claims(ids, config)
    print(dump_json(report.to_json()) if args.json else format_text(report))
    if args.figures:
        from .figures import render_report_figures

        paths = render_report_figures(report, args.figures)
        if not args.json:
            for p in paths:
                print(f"figure: {p}")
    return report.exit_code()


def _cmd_map_order(args) -> int:
    from .maps import map_from_json, map_order_report

    with open(args.map_file) as fh:
        data = json.load(fh)
    g = map_from_json(data)
    print(dump_json(map_order_report(g, args.cutoff)))
    return 0


def _cmd_surface(args) -> int:
    from ..surfaces import load_surface
    from .maps import surface_report

    with open(args.file) as fh:
        data = json.load(fh)
    X = load_surface(data)
    print(dump_json(surface_report(X, data)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="verify", description="Run exact checks of birational-geometry claims.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_list = sub.add_parser("list", help="list registered claims")
    p_list.add_argument("--prefix", default="")
    p_list.add_argument("--json", action="store_true")
    p_list.set_defaults(func=_cmd_list)

    p_run = sub.add_parser("run", help="run claims and print verdicts")
    target = p_run.add_mutually_exclusive_group()
    target.add_argument("--claim", action="append", metavar="ID")
    target.add_argument("--all", action="store_true")
    p_run.add_argument("--param", action="append", metavar="K=V")
    p_run.add_argument("--json", action="store_true")
    p_run.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_run.add_argument("--jobs", type=int, default=1)
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--exclude", action="append", metavar="GLOB")
    p_run.add_argument("--expect-refuted", action="append", metavar="GLOB")
    p_run.add_argument("--normalize-timing", action="store_true", help="report 0 ms for every claim")
    p_run.add_argument("--figures", metavar="DIR", help="also write summary charts (PNG) to DIR")
    p_run.set_defaults(func=_cmd_run)

    p_map = sub.add_parser("map-order", help="order of a map given as JSON")
    p_map.add_argument("--map-file", required=True)
    p_map.add_argument("--cutoff", type=int, default=64)
    p_map.set_defaults(func=_cmd_map_order)

    p_surf = sub.add_parser("surface", help="analyse a surface given as JSON")
    p_surf.add_argument("--file", required=True)
    p_surf.set_defaults(func=_cmd_surface)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UnknownClaim, BadParameter) as exc:
        print(f"verify: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError) as exc:
        print(f"verify: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
