"""Command-line driver: ``table``, ``levels``, ``verify`` and ``corpus list``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence

from . import __version__
from .chartab import DEFAULT_MAX_CLASSES, CharacterTableError
from .groups import (
    GroupSpec,
    GroupSpecError,
    builtin_corpus,
    group_from_label,
    parse_group_file,
)
from .permgrp import CapExceeded, DEFAULT_MAX_ORDER
from .rationality import level_histogram, level_profiles
from .verify import GroupContext, VerificationReport, primes_dividing, run_checks


class UsageError(Exception):
    pass


def load_group(arg: str) -> GroupSpec:
    path = Path(arg)
    if path.suffix == ".json" or path.is_file():
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read group file {arg}: {exc}") from exc
        return parse_group_file(text)
    return group_from_label(arg)


def load_corpus(arg: str) -> List[GroupSpec]:
    if arg == "builtin":
        return builtin_corpus()
    path = Path(arg)
    if not path.is_dir():
        raise UsageError(f"corpus must be 'builtin' or a directory, got {arg!r}")
    specs = []
    for f in sorted(path.glob("*.json")):
        try:
            specs.append(parse_group_file(f.read_text(encoding="utf-8")))
        except GroupSpecError as exc:
            raise GroupSpecError(f"{f}: {exc}") from exc
    names = [s.name for s in specs]
    if len(set(names)) != len(names):
        raise GroupSpecError(f"duplicate group names in corpus {arg}")
    return specs


def parse_primes(arg: str, order: int) -> List[int]:
    if arg == "all":
        return primes_dividing(order)
    try:
        ps = sorted({int(x) for x in arg.split(",")})
    except ValueError as exc:
        raise UsageError(f"-p expects a prime, a comma list of primes, or 'all'; got {arg!r}") from exc
    for p in ps:
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise UsageError(f"{p} is not a prime")
    return ps


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------

def cmd_table(args) -> int:
    spec = load_group(args.group)
    ctx = GroupContext(spec.build(), spec.name, args.max_order, args.max_classes)
    t = ctx.table
    if args.format == "json":
        doc = {"group": spec.name, **t.to_dict()}
        _emit(json.dumps(doc, indent=1) + "\n", args.out)
    else:
        head = f"# {spec.name} (order {t.group_order}, {len(t)} classes)\n\n"
        _emit(head + "```\n" + t.format_text() + "\n```\n", args.out)
    return 0


def cmd_levels(args) -> int:
    spec = load_group(args.group)
    ctx = GroupContext(spec.build(), spec.name, args.max_order, args.max_classes)
    docs = []
    for p in parse_primes(args.p, ctx.order):
        hist = level_histogram(ctx.table, p)
        profs = level_profiles(ctx.table, p)
        docs.append({
            "prime": p,
            "histogram": hist.to_dict(),
            "characters": [pr.to_dict() for pr in profs],
        })
    if args.format == "json":
        _emit(json.dumps({"group": spec.name, "order": ctx.order, "levels": docs}, indent=1) + "\n", args.out)
    else:
        lines = [f"# {spec.name} (order {ctx.order})", ""]
        for d in docs:
            h = d["histogram"]
            counts = ", ".join(f"{k}: {v}" for k, v in h["counts"].items())
            lines.append(f"p = {d['prime']}: |Irr_p'| = {h['total']}, levels {{{counts}}}")
            for c in d["characters"]:
                lines.append(
                    f"  X.{c['index'] + 1}  degree {c['degree']}  conductor {c['conductor']}"
                    f"  level {c['level']}  achieved at p-element: {c['achieved_at_p_element']}"
                )
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _verify_one(job):
    spec_dict, primes_arg, max_order, max_classes = job
    spec = GroupSpec(spec_dict["name"], spec_dict["degree"], spec_dict["generators"], spec_dict.get("tags", {}))
    G = spec.build()
    if G.order() > max_order:
        raise CapExceeded(f"{spec.name}: order {G.order()} exceeds cap max_order={max_order}")
    ctx = GroupContext(G, spec.name, max_order, max_classes)
    primes = parse_primes(primes_arg, ctx.order)
    results = run_checks(ctx, primes)
    info = {
        "name": spec.name,
        "order": ctx.order,
        "classes": len(ctx.classes),
        "primes": primes,
        "exp_P_mod_Pprime": {str(p): ctx.abelianized_exponent(p) for p in primes if ctx.order % p == 0},
        "histograms": {str(p): level_histogram(ctx.table, p).to_dict()["counts"] for p in primes},
    }
    return info, results


def markdown_summary(report: VerificationReport) -> str:
    lines = ["# Verification summary", ""]
    lines.append(f"corpus: {report.metadata.get('corpus')}; groups: {len(report.metadata['groups'])}; "
                 f"result: {'PASS' if report.ok else 'FAIL'}")
    lines.append("")
    lines.append("| group | order | exp(P/P') by prime | level histograms | checks |")
    lines.append("|---|---|---|---|---|")
    by_group = {}
    for r in report.results:
        by_group.setdefault(r.group, []).append(r)
    for g in report.metadata["groups"]:
        rs = by_group.get(g["name"], [])
        exps = ", ".join(f"{p}: {e}" for p, e in g["exp_P_mod_Pprime"].items()) or "-"
        hists = "; ".join(
            f"{p}: " + ", ".join(f"{k}:{v}" for k, v in h.items()) for p, h in g["histograms"].items()
        ) or "-"
        n_pass = sum(r.status == "pass" for r in rs)
        n_na = sum(r.status == "not_applicable" for r in rs)
        fails = [f"{r.check_id}@{r.prime}" for r in rs if r.status == "fail"]
        status = f"{n_pass} pass, {n_na} n/a" + (f", FAIL: {' '.join(fails)}" if fails else "")
        lines.append(f"| {g['name']} | {g['order']} | {exps} | {hists} | {status} |")
    lines.append("")
    lines.append("| check | pass | fail | not applicable |")
    lines.append("|---|---|---|---|")
    for cid, s in report.summary().items():
        lines.append(f"| {cid} | {s['pass']} | {s['fail']} | {s['not_applicable']} |")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    if args.all:
        specs = load_corpus(args.corpus)
    elif args.group:
        specs = [load_group(args.group)]
    else:
        raise UsageError("verify needs --all or --group")
    jobs = [(s.to_dict(), args.p, args.max_order, args.max_classes) for s in specs]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outputs = list(pool.map(_verify_one, jobs))
    else:
        outputs = [_verify_one(j) for j in jobs]
    infos = sorted((o[0] for o in outputs), key=lambda g: g["name"])
    results = [r for o in outputs for r in o[1]]
    meta = {
        "tool": "charlevels",
        "version": __version__,
        "corpus": args.corpus if args.all else args.group,
        "primes": args.p,
        "max_order": args.max_order,
        "max_classes": args.max_classes,
        "groups": infos,
    }
    report = VerificationReport(meta, results)
    text = report.to_json() if args.format == "json" else markdown_summary(report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        s = report.summary()
        total_fail = sum(v["fail"] for v in s.values())
        print(f"{len(report.results)} checks on {len(infos)} groups, {total_fail} failed -> {args.out}")
    else:
        sys.stdout.write(text)
    for r in report.failures():
        print(f"FAIL {r.group} p={r.prime} {r.check_id}: {json.dumps(r.witnesses)}", file=sys.stderr)
    return 0 if report.ok else 1


def cmd_corpus(args) -> int:
    if args.action != "list":
        raise UsageError(f"unknown corpus action {args.action!r}")
    specs = load_corpus(args.corpus)
    rows = []
    for s in specs:
        G = s.build()
        rows.append({"name": s.name, "degree": s.degree, "order": G.order(),
                     "primes": primes_dividing(G.order())})
    if args.format == "json":
        _emit(json.dumps(rows, indent=1) + "\n", args.out)
    else:
        text = "\n".join(f"{r['name']:<12} degree {r['degree']:<3} order {r['order']:<6} primes {r['primes']}" for r in rows)
        _emit(text + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER,
                        help="cap on group order for element enumeration (default %(default)s)")
    common.add_argument("--max-classes", type=int, default=DEFAULT_MAX_CLASSES,
                        help="cap on class number for table computation (default %(default)s)")
    common.add_argument("--out", help="write output to this path instead of stdout")

    parser = argparse.ArgumentParser(prog="charlevels", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", parents=[common], help="print a character table")
    t.add_argument("--group", required=True, help="family:params label or JSON group file")
    t.add_argument("--format", choices=("json", "md"), default="md")
    t.set_defaults(func=cmd_table)

    lv = sub.add_parser("levels", parents=[common], help="p-rationality levels of Irr_p'(G)")
    lv.add_argument("--group", required=True)
    lv.add_argument("-p", default="all", help="prime, comma list, or 'all' (default)")
    lv.add_argument("--format", choices=("json", "md"), default="json")
    lv.set_defaults(func=cmd_levels)

    v = sub.add_parser("verify", parents=[common], help="run the checks and write a report")
    v.add_argument("--all", action="store_true", help="verify every group of --corpus")
    v.add_argument("--group")
    v.add_argument("--corpus", default="builtin", help="'builtin' or a directory of JSON group files")
    v.add_argument("-p", default="all")
    v.add_argument("--format", choices=("json", "md"), default="json")
    v.add_argument("--jobs", type=int, default=1, help="worker processes (output is identical)")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("corpus", parents=[common], help="corpus utilities")
    c.add_argument("action", choices=("list",))
    c.add_argument("--corpus", default="builtin")
    c.add_argument("--format", choices=("json", "md"), default="md")
    c.set_defaults(func=cmd_corpus)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, GroupSpecError, CapExceeded, CharacterTableError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run(argv: Optional[Sequence[str]] = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
