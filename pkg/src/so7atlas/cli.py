"""Command line entry point: ``so7-atlas``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import atlas7, report
from .groupkit import CacheError, closure
from .signedperm import SignedPerm, matrix_text, to_matrix

log = logging.getLogger("so7atlas")


def _dump(payload) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_list(args) -> int:
    for gid in atlas7.CATALOG:
        recipe, _ = atlas7.parse_id(gid)
        if args.json:
            print(json.dumps({"id": gid, "order": atlas7.catalog_order(gid), "case": f"case{recipe.case}"}))
        else:
            print(f"{gid:<26} {atlas7.catalog_order(gid):>7}  case{recipe.case}")
    return 0


def cmd_report(args) -> int:
    rep = report.build_report(args.id, args.cache_dir)
    _dump(rep)
    return 1 if rep["errors"] else 0


def cmd_verify(args) -> int:
    summary = report.verify_table1(args.cache_dir, workers=args.threads)
    if args.json:
        _dump(summary)
    else:
        for row in summary["table1_rows"]:
            print(
                f"{row['id']:<22} claimed {row['claimed'][2]:>4}  direct {row['direct_classes']:>4}  "
                f"nfc {row['nfc']:>3}  fc_orbit {row['fc_orbit']:>3}  fc_paper {row['fc_paper']:>3}  "
                f"{'confirmed' if row['row_confirmed'] else 'DIFFERS'}"
            )
        for name, check in summary["checks"].items():
            print(f"{name:<24} {'pass' if check['pass'] else 'FAIL'}")
        print(f"internally consistent: {summary['internally_consistent']}")
    return 0 if summary["internally_consistent"] else 1


def write_export(path: str | Path, group_id: str, generators, elements=None) -> None:
    lines = [f"# so7-atlas export {group_id} generators={len(generators)}"]
    for g in generators:
        lines.append(matrix_text(g))
        lines.append("")
    if elements is not None:
        lines.append(f"# elements={len(elements)}")
        for g in elements:
            lines.append(matrix_text(g))
            lines.append("")
    Path(path).write_text("\n".join(lines))


def read_export(path: str | Path) -> tuple[list[SignedPerm], list[SignedPerm] | None]:
    """Parse an export file back into (generators, elements or None)."""
    sections: list[list[SignedPerm]] = []
    rows: list[list[int]] = []

    def flush():
        if rows:
            if len(rows) != 7:
                raise ValueError(f"matrix block with {len(rows)} rows")
            sections[-1].append(SignedPerm.from_matrix(rows))
            rows.clear()

    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if line.startswith("#"):
            flush()
            sections.append([])
        elif not line:
            flush()
        else:
            rows.append([int(x) for x in line.split()])
    flush()
    if not sections:
        raise ValueError("empty export file")
    return sections[0], (sections[1] if len(sections) > 1 else None)


def cmd_export(args) -> int:
    G = report.obtain_group(args.id, args.cache_dir)
    gens = report.canonical_generators(args.id, G)
    elements = list(G) if args.all else None
    write_export(args.path, args.id, gens, elements)
    log.info("wrote %d generator blocks to %s", len(gens), args.path)
    return 0


def cmd_split_check(args) -> int:
    _dump(report.split_check(args.id, args.cache_dir))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", default="./.so7-cache", help="group cache directory (default ./.so7-cache)")
    common.add_argument("--no-cache", action="store_true", help="build every group from scratch")
    common.add_argument("--json", action=argparse.BooleanOptionalAction, default=None)
    common.add_argument("--threads", type=int, default=1, help="worker processes, 0 = one per CPU")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="so7-atlas", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("list", parents=[common]).set_defaults(func=cmd_list, json_default=False)
    p = sub.add_parser("report", parents=[common])
    p.add_argument("id", choices=atlas7.CATALOG, metavar="id")
    p.set_defaults(func=cmd_report, json_default=True)
    sub.add_parser("verify-table1", parents=[common]).set_defaults(func=cmd_verify, json_default=True)
    p = sub.add_parser("export", parents=[common])
    p.add_argument("id", choices=atlas7.CATALOG, metavar="id")
    p.add_argument("path")
    p.add_argument("--all", action="store_true", help="also write every element")
    p.set_defaults(func=cmd_export, json_default=False)
    p = sub.add_parser("split-check", parents=[common])
    p.add_argument("id", choices=atlas7.CATALOG, metavar="id")
    p.set_defaults(func=cmd_split_check, json_default=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.json is None:
        args.json = args.json_default
    if args.no_cache:
        args.cache_dir = None
    if args.threads == 0:
        args.threads = os.cpu_count() or 1
    try:
        return args.func(args)
    except CacheError as exc:
        print(f"so7-atlas: cache corrupted: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
