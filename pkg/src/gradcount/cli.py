"""Command-line front end.

Exit codes: 0 ok, 1 verification failure, 2 usage, 3 domain error, 4 bad data.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .elementary import BlockShape, compositions, count_elementary
from .errors import (
    BoundExceeded,
    CayleyTableError,
    DomainError,
    GroupParseError,
    InconsistentSequenceError,
)
from .full import count_all
from .groups import AbelianGroupType, CayleyGroup, all_abelian_groups, make_abelian
from .oracle import count_orbits, orbit_representatives
from .reconstruction import CountSequence, identify_sequence

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DOMAIN, EXIT_DATA = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _load_group(args):
    if args.cayley:
        return CayleyGroup.from_json(args.cayley)
    return make_abelian(args.group)


def _parse_shape(args) -> BlockShape:
    if args.blocks is not None:
        try:
            blocks = tuple(int(b) for b in args.blocks.split(","))
        except ValueError:
            raise UsageError(f"--blocks expects comma-separated integers, got {args.blocks!r}")
        if any(b < 1 for b in blocks):
            raise UsageError("block sizes must be positive")
        return BlockShape(blocks)
    if args.m < 1:
        raise UsageError("--m must be positive")
    return BlockShape((args.m,))


def _require_abelian(g, what: str) -> AbelianGroupType:
    if not isinstance(g, AbelianGroupType):
        raise DomainError(f"{what} requires an abelian --group; Cayley-table input is not supported")
    return g


def cmd_count(args) -> int:
    g = _load_group(args)
    shape = _parse_shape(args)
    if args.kind == "n":
        value = count_all(_require_abelian(g, "count n"), shape)
    else:
        value = count_elementary(g, shape)
    print(value)
    return EXIT_OK


def cmd_table(args) -> int:
    g = _load_group(args)
    if args.max_m < 1:
        raise UsageError("--max-m must be positive")
    if args.kind in ("n", "both"):
        _require_abelian(g, f"table --kind {args.kind}")
    rows = []
    for m in range(1, args.max_m + 1):
        row = {"m": m}
        if args.kind in ("e", "both"):
            row["e"] = count_elementary(g, (m,))
        if args.kind in ("n", "both"):
            row["n"] = count_all(g, (m,))
        rows.append(row)
    cols = ["e", "n"] if args.kind == "both" else [args.kind]
    # single-kind tables use the count-sequence header so they feed `identify`
    names = cols if args.kind == "both" else ["count"]
    if args.format == "json":
        doc = {
            "group": str(g) if isinstance(g, AbelianGroupType) else (g.name or "cayley"),
            "kind": args.kind,
            "rows": [{"m": r["m"], **{nm: str(r[c]) for nm, c in zip(names, cols)}} for r in rows],
        }
        print(json.dumps(doc, indent=2))
    else:
        print(",".join(["m"] + names))
        for r in rows:
            print(",".join([str(r["m"])] + [str(r[c]) for c in cols]))
    return EXIT_OK


def cmd_verify(args) -> int:
    groups = all_abelian_groups(args.max_order)
    sizes = range(1, args.max_size + 1)
    failures = []
    width = max(len(str(g)) for g in groups)
    print("group".ljust(width) + "".join(f" n={n:<4}" for n in sizes))
    for g in groups:
        cells = []
        for n in sizes:
            ok = True
            for shape in compositions(n):
                formula = count_elementary(g, shape)
                part = count_orbits(g, shape, "partition")
                burn = count_orbits(g, shape, "burnside")
                if not formula == part == burn:
                    ok = False
                    failures.append((str(g), str(shape), formula, part, burn))
            cells.append("pass" if ok else "FAIL")
        print(str(g).ljust(width) + "".join(f" {c:<6}" for c in cells))
    total = len(groups) * len(sizes)
    if failures:
        for name, shape, f, p, b in failures:
            print(f"mismatch {name} ({shape}): formula={f} partition={p} burnside={b}")
        print(f"{len(failures)} shape(s) failed")
        return EXIT_VERIFY
    print(f"all {total} cells pass")
    return EXIT_OK


def cmd_identify(args) -> int:
    try:
        seq = CountSequence.read(args.sequence, args.order)
    except OSError as exc:
        raise InconsistentSequenceError(f"cannot read {args.sequence}: {exc}")
    print(identify_sequence(seq))
    return EXIT_OK


def cmd_orbits(args) -> int:
    g = _load_group(args)
    shape = _parse_shape(args)
    for rep, size in orbit_representatives(g, shape):
        print(" | ".join(" ".join(map(str, row)) for row in rep.values) + f"  (orbit size {size})")
    return EXIT_OK


def _add_group_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--group", help="abelian group, e.g. Z4xZ2")
    src.add_argument("--cayley", metavar="FILE", help='JSON {"order": n, "table": [[...]]}')


def _add_shape_args(p: argparse.ArgumentParser) -> None:
    sh = p.add_mutually_exclusive_group(required=True)
    sh.add_argument("--m", type=int, help="matrix size (full matrix algebra M_m)")
    sh.add_argument("--blocks", help="block sizes of UT(m), e.g. 1,2,1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gradcount", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count elementary (e) or all (n) gradings")
    p.add_argument("kind", choices=["e", "n"])
    _add_group_args(p)
    _add_shape_args(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", help="counts for m = 1..M")
    _add_group_args(p)
    p.add_argument("--max-m", type=int, required=True)
    p.add_argument("--kind", choices=["e", "n", "both"], default="e")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="closed formula vs brute-force orbit counts")
    p.add_argument("--max-order", type=int, default=8)
    p.add_argument("--max-size", type=int, default=6)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("identify", help="recover an abelian group from its E-sequence")
    p.add_argument("--sequence", required=True, metavar="FILE", help="CSV with header m,count")
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("orbits", help="list canonical orbit representatives")
    _add_group_args(p)
    _add_shape_args(p)
    p.set_defaults(func=cmd_orbits)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GroupParseError) as exc:
        print(f"gradcount: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CayleyTableError, InconsistentSequenceError) as exc:
        print(f"gradcount: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (DomainError, BoundExceeded) as exc:
        print(f"gradcount: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
