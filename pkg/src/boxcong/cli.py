"""Command-line front end.

Every subcommand emits one record per line on stdout (JSON objects by
default; CSV and text renderings are available).  The process exits 0
only when every emitted claim is verified, 2 on malformed input, and 3
when an enumeration cap would be exceeded.  Randomized suites take an
explicit seed and identical configurations produce byte-identical
report streams.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import acceptance
from .congruence import (
    DEFAULT_BOX_CAP,
    DEFAULT_WINDOW_CAP,
    AxKatzInstance,
    Box,
    parse_multipoly,
    verify_axkatz,
    weisman_fleck_check,
    wilson_approx,
)
from .errors import CapExceeded
from .intpoly import DiffTable, parse_weight
from .invariants import (
    DEFAULT_MULTISET_CAP,
    davenport_exact,
    guaranteed_k_ranges,
    s_X_exact,
    s_kq_exact,
    sxq_bound,
)
from .reports import to_csv_row, to_json_line, to_text_line, csv_columns
from .residues import build_unit_system
from .zerosum import check_altsum, check_altsum_q, load_sequence, parse_group

DEFAULT_SEED = 1729


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="boxcong",
        description="Exact prime-power congruence and zero-sum verification",
    )
    top.add_argument("--format", choices=("json", "csv", "text"), default="json")
    top.add_argument("--seed", type=int,
                     default=int(os.environ.get("BOXCONG_SEED", DEFAULT_SEED)))
    top.add_argument("--box-cap", type=int,
                     default=int(os.environ.get("BOXCONG_BOX_CAP", DEFAULT_BOX_CAP)))
    top.add_argument("--multiset-cap", type=int,
                     default=int(os.environ.get("BOXCONG_MULTISET_CAP",
                                                DEFAULT_MULTISET_CAP)))
    top.add_argument("--window-cap", type=int,
                     default=int(os.environ.get("BOXCONG_WINDOW_CAP",
                                                DEFAULT_WINDOW_CAP)))
    top.add_argument("--out", default=None,
                     help="directory for delimited output files and figures")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("residues", help="build the lifted unit residue system")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("weisman-fleck", help="check one alternating-sum valuation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--w", default="1", help="integer-valued weight, e.g. 'x^2'")

    p = sub.add_parser("wilson", help="approximate a weighted periodic map")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--table", required=True, help="comma-separated period values")
    p.add_argument("--w", default="1")

    p = sub.add_parser("verify-axkatz", help="verify divisibility for spec instances")
    p.add_argument("--spec", required=True, help="JSON instance file")

    p = sub.add_parser("altsum", help="alternating-sum congruences for a sequence")
    p.add_argument("--group", required=True)
    p.add_argument("--seq", required=True, help="JSON sequence file")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--alpha", type=int, default=None)
    p.add_argument("--t", type=int, default=1)

    p = sub.add_parser("davenport", help="exhaustive Davenport constant")
    p.add_argument("--group", required=True)

    p = sub.add_parser("egz", help="exhaustive s_X (default X = {exp G})")
    p.add_argument("--group", required=True)
    p.add_argument("--X", default=None, help="comma-separated lengths")

    p = sub.add_parser("skq", help="exhaustive s_kq")
    p.add_argument("--group", required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("bounds", help="bound predicates for a group")
    p.add_argument("--group", required=True)
    p.add_argument("--X", default=None, help="comma-separated X (in q-units)")
    p.add_argument("--m", type=int, default=0)

    p = sub.add_parser("suite", help="run the bundled verification suites")
    p.add_argument("name", choices=("algebra", "combinatorics", "all"))
    p.add_argument("--selftest-corrupt", action="store_true",
                   help=argparse.SUPPRESS)  # flips an anchor; run must fail
    return top


def _parse_int_set(text: str):
    return {int(x) for x in text.split(",") if x.strip()}


def _box_from_spec(p: int, n: int, spec):
    from .residues import ResidueSystem

    def one(entry):
        if entry == "default":
            return ResidueSystem(p, 1, tuple(range(p)))
        if isinstance(entry, dict) and "unit_level" in entry:
            return build_unit_system(p, int(entry["unit_level"]))
        if isinstance(entry, dict) and "elements" in entry:
            return ResidueSystem.from_elements(p, entry["elements"])
        raise ValueError(f"bad box entry {entry!r}")

    if spec is None or spec == "default":
        return Box.default(p, n)
    if isinstance(spec, dict):
        return Box.uniform(one(spec), n)
    if isinstance(spec, list):
        if len(spec) != n:
            raise ValueError(f"box needs {n} entries, got {len(spec)}")
        return Box(tuple(one(e) for e in spec))
    raise ValueError(f"bad box spec {spec!r}")


def _instance_from_spec(data, box_cap):
    p = int(data["p"])
    poly_texts = data["polys"]
    if not isinstance(poly_texts, list) or not poly_texts:
        raise ValueError("spec needs a nonempty 'polys' list")
    n = int(data["n_vars"]) if "n_vars" in data else None
    polys = [parse_multipoly(t, n_vars=n) for t in poly_texts]
    n = n or max(f.n_vars for f in polys)
    polys = [parse_multipoly(t, n_vars=n) for t in poly_texts]
    levels = [int(x) for x in data.get("levels", [1] * len(polys))]
    weights = [parse_weight(t) for t in data.get("weights", ["1"] * len(polys))]
    box = _box_from_spec(p, n, data.get("box"))
    return AxKatzInstance(p, tuple(polys), tuple(levels), tuple(weights), box)


def _run_command(args) -> list:
    if args.command == "residues":
        sys_ = build_unit_system(args.p, args.m)
        return [list(sys_.elements)]

    if args.command == "weisman-fleck":
        w = parse_weight(args.w)
        return [weisman_fleck_check(args.n, args.r, args.p, args.s, w)]

    if args.command == "wilson":
        values = tuple(int(v) for v in args.table.split(","))
        table = DiffTable(values, period=args.p**args.s)
        w = parse_weight(args.w)
        res = wilson_approx(table, w, args.p, args.m, window_cap=args.window_cap)
        return [res.report]

    if args.command == "verify-axkatz":
        with open(args.spec) as fh:
            data = json.load(fh)
        entries = data if isinstance(data, list) else [data]
        reports = []
        for entry in entries:
            inst = _instance_from_spec(entry, args.box_cap)
            reports.append(verify_axkatz(inst, cap=args.box_cap))
        return reports

    if args.command == "altsum":
        group = parse_group(args.group)
        with open(args.seq) as fh:
            seq = load_sequence(group, json.load(fh))
        if args.alpha is None:
            return [check_altsum(seq, args.m)]
        return check_altsum_q(seq, alpha=args.alpha, t=args.t, m=args.m)

    if args.command == "davenport":
        return [davenport_exact(parse_group(args.group), cap=args.multiset_cap)]

    if args.command == "egz":
        group = parse_group(args.group)
        if args.X is not None:
            return [s_X_exact(group, _parse_int_set(args.X), cap=args.multiset_cap)]
        predicted = None
        if group.rank == 1:
            predicted = 2 * group.exponent - 1
        elif group.orders == (group.p, group.p) and group.p in (2, 3):
            predicted = 4 * group.p - 3
        res = s_X_exact(group, {group.exponent}, cap=args.multiset_cap,
                        predicted=predicted)
        res.invariant = "egz"
        return [res]

    if args.command == "skq":
        group = parse_group(args.group)
        ranges = guaranteed_k_ranges(group)
        predicted = None
        if (ranges.small_d_from is not None and args.k >= ranges.small_d_from) or (
            ranges.large_p_above is not None and args.k > ranges.large_p_above
        ):
            predicted = args.k * group.exponent + group.dstar - 1
        return [s_kq_exact(group, args.k, cap=args.multiset_cap,
                           predicted=predicted)]

    if args.command == "bounds":
        group = parse_group(args.group)
        ranges = guaranteed_k_ranges(group)
        record = {
            "kind": "bounds",
            "group": group.spec_string(),
            "d": ranges.d,
            "r": ranges.r,
            "small_d_all_k_from": ranges.small_d_from,
            "large_p_all_k_above": ranges.large_p_above,
            "verified": True,
        }
        if args.X is not None:
            res = sxq_bound(group, _parse_int_set(args.X), args.m)
            record.update(
                X=sorted(_parse_int_set(args.X)),
                m=args.m,
                det_product=res.det_product,
                det_ok=res.det_ok,
                applicable=res.applicable,
                bound=res.bound,
                bound_exact=None if res.bound_exact is None else str(res.bound_exact),
                bound2=res.bound2,
            )
        return [record]

    if args.command == "suite":
        caps = acceptance.Caps(
            box=args.box_cap, multiset=args.multiset_cap, window=args.window_cap
        )
        return acceptance.run_suite(
            args.name, seed=args.seed, caps=caps, log=sys.stderr,
            corrupt=args.selftest_corrupt,
        )

    raise AssertionError(f"unhandled command {args.command}")


def _emit(records, fmt: str):
    if fmt == "json":
        for rec in records:
            if isinstance(rec, list):
                print(json.dumps(rec, sort_keys=True, separators=(",", ":")))
            else:
                print(to_json_line(rec))
    elif fmt == "csv":
        header = None
        for rec in records:
            if isinstance(rec, list):
                print(",".join(str(x) for x in rec))
                continue
            cols = csv_columns(rec)
            if header != cols:
                header = cols
                print(",".join(cols))
            print(to_csv_row(rec, columns=cols))
    else:
        for rec in records:
            if isinstance(rec, list):
                print(" ".join(str(x) for x in rec))
            else:
                print(to_text_line(rec))


def _all_verified(records) -> bool:
    ok = True
    for rec in records:
        d = rec.to_dict() if hasattr(rec, "to_dict") else rec
        if isinstance(d, dict) and d.get("verified") is False:
            ok = False
    return ok


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        records = _run_command(args)
    except CapExceeded as exc:
        extra = f" (required {exc.required})" if exc.required else ""
        print(f"boxcong: cap exceeded: {exc}{extra}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"boxcong: {exc}", file=sys.stderr)
        return 2
    _emit(records, args.format)
    if args.out:
        from . import plots

        paths = plots.write_outputs(records, args.out)
        print("wrote " + ", ".join(str(p) for p in paths), file=sys.stderr)
    return 0 if _all_verified(records) else 1


if __name__ == "__main__":
    sys.exit(main())
