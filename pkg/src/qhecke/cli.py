"""Command line interface.

Exit codes: 0 success, 1 reference mismatch (report), 2 usage or
configuration error, 3 resource limit or integrity failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time

from . import hecke
from .cache import FileCheckpoint, nww_key
from .classes import (
    ClassSet,
    check_coxeter_power_in_hecke,
    check_coxeter_power_lands_in_regular_class,
    check_half_power_hits_longest,
    regular_orders,
)
from .errors import ConfigurationError, IntegrityError, ResourceLimitError
from .kernel import HAVE_COMPILED
from .positivity import classify, compare_positive_nonregular, square_ladder_verdict
from .qpoly import render, to_json
from .reference import POSITIVE_NONREGULAR, REGULAR_ORDER_SETS, coxeter_diag_trace
from .rootsys import CoxeterType, ElementTable, RootDatum, group_order

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

SCHEMA_VERSION = 1

# groups beyond this size need --allow-huge; E8 is refused outright
HUGE_THRESHOLD = 250_000


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhecke",
        description="Exact trace polynomials and positivity of conjugacy "
        "classes for finite Weyl groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_type=True):
        if needs_type:
            p.add_argument("--type", "-t", required=True, help="group type, e.g. B3")
        p.add_argument(
            "--format",
            choices=("text", "json", "csv"),
            default="text",
            help="output format",
        )
        p.add_argument(
            "--memory-budget",
            type=int,
            default=2 * 1024**3,
            help="element table memory cap in bytes",
        )
        p.add_argument(
            "--allow-huge",
            action="store_true",
            help="permit groups with more than 250000 elements (not E8)",
        )

    def add_compute(p):
        p.add_argument(
            "--cache-dir",
            default=os.environ.get("HECKE_CACHE_DIR"),
            help="checkpoint directory (default: HECKE_CACHE_DIR)",
        )
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--chunk-size", type=int, default=4096)
        p.add_argument(
            "--kernel",
            choices=("auto", "compiled", "python"),
            default="auto",
        )
        p.add_argument(
            "--progress", action="store_true", help="progress lines on stderr"
        )

    p = sub.add_parser("roots", help="positive roots in simple root coordinates")
    add_common(p)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("elements", help="group elements with lengths and words")
    add_common(p)
    p.add_argument("--limit", type=int, default=0, help="emit at most this many rows")
    p.set_defaults(func=cmd_elements)

    p = sub.add_parser("classes", help="conjugacy classes and invariants")
    add_common(p)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("nww", help="trace polynomial for a pair of elements")
    add_common(p)
    add_compute(p)
    p.add_argument("--w", required=True, help="word, 1-based like '1,2,1', or 'e'")
    p.add_argument("--w-prime", required=True, help="second word, same format")
    p.set_defaults(func=cmd_nww)

    p = sub.add_parser("positive", help="classify all classes by positivity")
    add_common(p)
    add_compute(p)
    p.set_defaults(func=cmd_positive)

    p = sub.add_parser("report", help="compare computed results to reference data")
    add_common(p)
    add_compute(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("selftest", help="run the built-in invariant suite")
    add_common(p, needs_type=False)
    p.set_defaults(func=cmd_selftest)

    return parser


def load_table(args) -> ElementTable:
    ctype = CoxeterType.parse(args.type)
    order = group_order(ctype)
    if ctype.family == "E" and ctype.rank == 8:
        raise ResourceLimitError(
            f"type E8 has {order} elements; enumeration is refused"
        )
    if order > HUGE_THRESHOLD and not args.allow_huge:
        raise ResourceLimitError(
            f"type {ctype} has {order} elements; pass --allow-huge to proceed"
        )
    return ElementTable(RootDatum(ctype), memory_budget=args.memory_budget)


def parse_user_word(text: str) -> tuple[int, ...]:
    """1-based comma separated generator indices; '' or 'e' is the identity."""
    text = text.strip()
    if text in ("", "e"):
        return ()
    try:
        parts = [int(p) for p in text.split(",")]
    except ValueError:
        raise ConfigurationError(f"cannot parse word {text!r}") from None
    if any(p < 1 for p in parts):
        raise ConfigurationError("generator indices are 1-based")
    return tuple(p - 1 for p in parts)


def word_1based(word) -> str:
    return ",".join(str(i + 1) for i in word) or "e"


def emit(args, payload: dict, rows: list[dict], text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload))
    elif args.format == "csv":
        if rows:
            writer = csv.DictWriter(sys.stdout, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            writer.writerows(rows)
    else:
        for line in text_lines:
            print(line)


def cmd_roots(args) -> int:
    table_free = RootDatum(CoxeterType.parse(args.type))
    rows = []
    for i in range(table_free.nu):
        coords = table_free.roots[i]
        rows.append(
            {
                "index": i,
                "coords": " ".join(str(c) for c in coords),
                "height": sum(coords),
            }
        )
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "roots",
        "type": args.type.upper(),
        "rank": table_free.ctype.rank,
        "count": table_free.nu,
        "rows": [
            {"index": r["index"], "coords": list(table_free.roots[r["index"]]), "height": r["height"]}
            for r in rows
        ],
    }
    lines = [f"type {table_free.ctype}  positive roots {table_free.nu}"]
    lines += [f"  {r['index']:3d}  ({r['coords']})  height {r['height']}" for r in rows]
    emit(args, payload, rows, lines)
    return EXIT_OK


def cmd_elements(args) -> int:
    table = load_table(args)
    limit = args.limit if args.limit > 0 else table.size
    rows = []
    for x in range(min(limit, table.size)):
        rows.append(
            {
                "id": x,
                "length": int(table.lengths[x]),
                "word": word_1based(table.reduced_word_of(x)),
            }
        )
    by_len = {}
    for v in table.lengths:
        by_len[int(v)] = by_len.get(int(v), 0) + 1
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "elements",
        "type": args.type.upper(),
        "order": table.size,
        "length_distribution": [by_len[k] for k in sorted(by_len)],
        "rows": rows,
    }
    lines = [f"type {table.datum.ctype}  order {table.size}"]
    lines += [f"  {r['id']:6d}  len {r['length']:3d}  {r['word']}" for r in rows]
    emit(args, payload, rows, lines)
    return EXIT_OK


def cmd_classes(args) -> int:
    table = load_table(args)
    cs = ClassSet(table)
    rows = []
    for i, rec in enumerate(cs.records):
        rows.append(
            {
                "index": i,
                "rep_word": word_1based(table.reduced_word_of(rec.rep)),
                "min_length": rec.min_length,
                "size": rec.size,
                "order": rec.order,
                "centralizer": rec.centralizer_order,
                "label": rec.label_str,
                "elliptic": rec.is_elliptic,
                "regular": rec.is_regular,
            }
        )
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "classes",
        "type": args.type.upper(),
        "order": table.size,
        "class_count": len(rows),
        "regular_orders": sorted(regular_orders(table.datum.ctype)),
        "rows": rows,
    }
    lines = [
        f"type {table.datum.ctype}  classes {len(rows)}  "
        f"regular orders {sorted(regular_orders(table.datum.ctype))}"
    ]
    for r in rows:
        flags = ("e" if r["elliptic"] else "-") + ("r" if r["regular"] else "-")
        lines.append(
            f"  {r['index']:3d} {flags}  len {r['min_length']:3d}  size {r['size']:6d}"
            f"  order {r['order']:3d}  {r['label']:18s}  rep {r['rep_word']}"
        )
    emit(args, payload, rows, lines)
    return EXIT_OK


def _progress_printer(args):
    if not args.progress:
        return None
    t0 = time.time()

    def cb(done, total):
        print(f"progress {done}/{total}  {time.time() - t0:.1f}s", file=sys.stderr)

    return cb


def cmd_nww(args) -> int:
    table = load_table(args)
    w = table.word_to_id(parse_user_word(args.w))
    wp = table.word_to_id(parse_user_word(args.w_prime))
    checkpoint = None
    if args.cache_dir:
        key = nww_key(
            str(table.datum.ctype), w, wp, hecke.num_chunks(table.size, args.chunk_size)
        )
        checkpoint = FileCheckpoint(args.cache_dir, key)
    poly = hecke.nww(
        table,
        w,
        wp,
        kernel=args.kernel,
        threads=args.threads,
        chunk_size=args.chunk_size,
        checkpoint=checkpoint,
        progress=_progress_printer(args),
    )
    rows = [{"power": i, "coefficient": c} for i, c in enumerate(poly.coeffs)]
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "nww",
        "type": args.type.upper(),
        "w": word_1based(parse_user_word(args.w)),
        "w_prime": word_1based(parse_user_word(args.w_prime)),
        "poly": to_json(poly),
        "value_at_one": poly(1),
    }
    emit(args, payload, rows, [render(poly)])
    return EXIT_OK


def _run_classification(args, table):
    cs = ClassSet(table)
    provider = None
    if args.cache_dir:
        n_chunks = hecke.num_chunks(table.size, args.chunk_size)

        def provider(i, rec):
            key = nww_key(str(table.datum.ctype), rec.rep, rec.rep, n_chunks)
            return FileCheckpoint(args.cache_dir, key)

    return classify(
        table,
        cs,
        kernel=args.kernel,
        threads=args.threads,
        chunk_size=args.chunk_size,
        checkpoint_provider=provider,
        progress=_progress_printer(args),
    )


def _classification_rows(result):
    rows = []
    for i, r in enumerate(result.results):
        rows.append(
            {
                "index": i,
                "label": r.record.label_str,
                "min_length": r.record.min_length,
                "size": r.record.size,
                "order": r.record.order,
                "elliptic": r.record.is_elliptic,
                "regular": r.record.is_regular,
                "positive": r.positive,
                "nww": render(r.nww),
            }
        )
    return rows


def cmd_positive(args) -> int:
    table = load_table(args)
    result = _run_classification(args, table)
    rows = _classification_rows(result)
    pos_labels = [r.record.label_str for r in result.positive_elliptic_nonregular]
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "positive",
        "type": args.type.upper(),
        "class_count": len(rows),
        "positive_elliptic_nonregular": pos_labels,
        "positive_nonelliptic": [
            r.record.label_str for r in result.positive_nonelliptic
        ],
        "rows": [
            {**r, "nww": {"coeffs": list(result.results[r["index"]].nww.coeffs)}}
            for r in rows
        ],
    }
    lines = [f"type {table.datum.ctype}  classes {len(rows)}"]
    for r in rows:
        flags = (
            ("e" if r["elliptic"] else "-")
            + ("r" if r["regular"] else "-")
            + ("P" if r["positive"] else "-")
        )
        lines.append(f"  {r['index']:3d} {flags}  {r['label']:18s}  {r['nww']}")
    lines.append(f"positive elliptic non-regular: {pos_labels or 'none'}")
    if table.datum.ctype.family == "B":
        v = square_ladder_verdict(result)
        payload["square_ladder"] = v.__dict__
        if v.applicable:
            lines.append(
                f"rank k(k+1) check (k={v.k}): class {v.label or 'not found'}"
                f" positive={v.positive} regular={v.regular}"
            )
        else:
            lines.append("rank k(k+1) check: not applicable at this rank")
    emit(args, payload, rows, lines)
    return EXIT_OK


def cmd_report(args) -> int:
    table = load_table(args)
    type_name = str(table.datum.ctype)
    result = _run_classification(args, table)
    sections = []
    failures = 0

    # regular element orders against the frozen expectation
    if type_name in REGULAR_ORDER_SETS:
        got = regular_orders(table.datum.ctype)
        want = REGULAR_ORDER_SETS[type_name]
        ok = got == want
        failures += not ok
        sections.append(
            {
                "section": "regular-orders",
                "status": "PASS" if ok else "FAIL",
                "computed": sorted(got),
                "expected": sorted(want),
            }
        )

    # Coxeter class diagonal trace against the closed form
    h = table.datum.coxeter_number
    cox = [r for r in result.results if r.record.is_regular and r.record.order == h]
    fixture = coxeter_diag_trace(table.datum.ctype)
    ok = len(cox) == 1 and cox[0].nww == fixture
    failures += not ok
    sections.append(
        {
            "section": "coxeter-trace",
            "status": "PASS" if ok else "FAIL",
            "computed": render(cox[0].nww) if cox else "<no coxeter class>",
            "expected": render(fixture),
        }
    )

    # positive elliptic non-regular classes against the reference list
    anomalies = []
    omissions = []
    if type_name in POSITIVE_NONREGULAR:
        labels = [r.record.label_str for r in result.positive_elliptic_nonregular]
        diff = compare_positive_nonregular(type_name, labels)
        failures += not diff.ok
        anomalies = list(diff.anomalies)
        omissions = list(diff.omissions)
        sections.append(
            {
                "section": "positive-nonregular",
                "status": "PASS" if diff.ok else "FAIL",
                "computed": labels,
                "matched": list(diff.matched),
                "anomalies": anomalies,
                "omissions": omissions,
                "missing": list(diff.missing),
                "extra": list(diff.extra),
            }
        )

    if table.datum.ctype.family == "B":
        v = square_ladder_verdict(result)
        status = "INFO"
        if v.applicable:
            status = "PASS" if (v.found and v.positive) else "FAIL"
            failures += status == "FAIL"
        sections.append(
            {"section": "square-ladder", "status": status, **v.__dict__}
        )

    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "report",
        "type": type_name,
        "sections": sections,
        "ok": failures == 0,
    }
    lines = [f"report for {type_name}"]
    for s in sections:
        detail = {k: v for k, v in s.items() if k not in ("section", "status")}
        lines.append(f"  [{s['status']}] {s['section']}  {detail}")
    for ref, got in anomalies:
        lines.append(
            f"  ANOMALY reference label {ref} has inconsistent degree; "
            f"matched computed class {got} by factor containment"
        )
    for lab in omissions:
        lines.append(
            f"  OMISSION computed positive class {lab} is verified "
            f"but absent from the reference row"
        )
    lines.append("OK" if failures == 0 else f"FAILURES: {failures}")
    emit(args, payload, sections, lines)
    return EXIT_OK if failures == 0 else EXIT_MISMATCH


def cmd_selftest(args) -> int:
    checks: list[tuple[str, bool, str]] = []

    def run(name, fn):
        try:
            fn()
            checks.append((name, True, ""))
        except Exception as exc:  # noqa: BLE001 - report, do not crash
            checks.append((name, False, f"{type(exc).__name__}: {exc}"))

    for name in ("A2", "B2", "G2"):
        table = ElementTable(RootDatum(CoxeterType.parse(name)))
        cs = ClassSet(table)

        def quadratic(table=table):
            for i in range(table.datum.ctype.rank):
                s = table.word_to_id((i,))
                prod = hecke.mul_basis(table, s, s)
                assert prod == {0: hecke._Q, s: hecke._QM1}

        def trace_vs_group(table=table):
            for w in range(table.size):
                for wp in range(table.size):
                    poly = hecke.nww(table, w, wp)
                    assert poly(1) == hecke.commuting_count(table, w, wp)
                    assert poly == hecke.nww_alt(table, w, wp)
                    n = int(table.lengths[w]) + int(table.lengths[wp])
                    assert all(
                        poly.coefficient(j) == (-1) ** n * poly.coefficient(n - j)
                        for j in range(n + 1)
                    )

        def class_identities(table=table, cs=cs):
            ds = regular_orders(table.datum.ctype)
            h = table.datum.coxeter_number
            for d in sorted(ds):
                if d % 2 == 0 and 2 in ds:
                    check_half_power_hits_longest(cs, d)
                if h % d == 0:
                    check_coxeter_power_lands_in_regular_class(cs, d)
            check_coxeter_power_in_hecke(cs)

        def positivity_integrity(table=table, cs=cs):
            result = classify(table, cs)
            fixture = coxeter_diag_trace(table.datum.ctype)
            h = table.datum.coxeter_number
            cox = [
                r for r in result.results if r.record.is_regular and r.record.order == h
            ]
            assert len(cox) == 1 and cox[0].nww == fixture
            assert regular_orders(table.datum.ctype) == REGULAR_ORDER_SETS[name]

        run(f"{name} quadratic relation", quadratic)
        run(f"{name} trace vs group algebra, symmetry, palindrome", trace_vs_group)
        run(f"{name} regular class power identities", class_identities)
        run(f"{name} positivity and reference fixtures", positivity_integrity)

    rows = [
        {"check": n, "status": "PASS" if ok else "FAIL", "detail": msg}
        for n, ok, msg in checks
    ]
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "selftest",
        "compiled_kernel": HAVE_COMPILED,
        "rows": rows,
        "ok": all(ok for _, ok, _ in checks),
    }
    lines = [
        f"  [{'PASS' if ok else 'FAIL'}] {n}" + (f"  {msg}" if msg else "")
        for n, ok, msg in checks
    ]
    lines.append("OK" if payload["ok"] else "SELFTEST FAILED")
    emit(args, payload, rows, lines)
    return EXIT_OK if payload["ok"] else EXIT_RESOURCE


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceLimitError, IntegrityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
