"""Command-line entry point.

    acsums verify   --coeffs FILE [--m M --n N]
    acsums witness  --m M --n N
    acsums search   --m M --n N --bound B [--mode brute|decomposed] [--workers W]
    acsums table    --m-max M --n-max N
    acsums selftest [--m-max M --n-max N --samples S --seed SEED]

Exit status: 0 success / criterion satisfied, 1 criterion fails,
2 usage or input error, 3 internal check failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from .ktheory import SacsCoefficients
from .ring import RingError
from .search import CeilingExceeded, SearchBox, SearchMode, search_witnesses
from .topology import WitnessRecord, acs_criterion, hirzebruch_check, invariants, prop31_witness

SCHEMA_VERSION = "1"
CEILING_ENV = "ACSUMS_SEARCH_CEILING"
TABLE_COLUMNS = ["m", "n", "chi", "sigma", "hirzebruch", "c_top", "verdict"]

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="acsums", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json", "csv")):
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--output", "-o", help="write the report here instead of stdout")

    p = sub.add_parser("verify", help="evaluate the criterion for a coefficient file")
    p.add_argument("--coeffs", required=True, help="SacsCoefficients JSON file ('-' for stdin)")
    p.add_argument("--m", type=_positive)
    p.add_argument("--n", type=_positive)
    common(p)

    p = sub.add_parser("witness", help="build and verify the explicit odd-m witness")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    common(p)

    p = sub.add_parser("search", help="enumerate witnesses in a coefficient box")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--bound", type=_nonnegative, required=True)
    p.add_argument("--mode", choices=[m.value for m in SearchMode], default="decomposed")
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--ceiling", type=_positive,
                   help=f"candidate ceiling (default from ${CEILING_ENV} or built-in)")
    common(p, ("text", "json", "jsonl", "csv"))

    p = sub.add_parser("table", help="invariants and explicit-witness values over a grid")
    p.add_argument("--m-max", type=_positive, required=True)
    p.add_argument("--n-max", type=_positive, required=True)
    common(p)

    p = sub.add_parser("selftest", help="run the identity suites")
    p.add_argument("--m-max", type=_positive, default=4)
    p.add_argument("--n-max", type=_positive, default=4)
    p.add_argument("--samples", type=_nonnegative, default=100)
    p.add_argument("--seed", type=int, default=0)
    common(p, ("text", "json"))
    return parser


def _load_coeffs(path: str) -> SacsCoefficients:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}") from None
    try:
        return SacsCoefficients.from_dict(data)
    except RingError as exc:
        raise UsageError(f"invalid coefficients in {path}: {exc}") from None


def _record_text(rec: WitnessRecord) -> str:
    c = rec.coeffs
    a = ", ".join(f"a_{j}^{k}={v}" for (j, k), v in c.a.items()) or "all a = 0"
    b = ", ".join(f"b_{j}={v}" for j, v in c.b.items())
    coeffs = a + (f", {b}" if b else "")
    return (f"m={rec.m} n={rec.n} [{coeffs}] c_{2 * rec.n}={rec.c_top} chi={rec.chi} "
            f"verdict={'true' if rec.verdict else 'false'}")


def _csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _record_row(rec: WitnessRecord) -> dict:
    inv = invariants(rec.m, rec.n)
    return {"m": rec.m, "n": rec.n, "chi": rec.chi, "sigma": inv.signature,
            "hirzebruch": str(hirzebruch_check(rec.m, rec.n)).lower(),
            "c_top": str(rec.c_top), "verdict": str(rec.verdict).lower()}


def _render_record(rec: WitnessRecord, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"schema_version": SCHEMA_VERSION, **rec.to_dict()}, indent=2) + "\n"
    if fmt == "csv":
        return _csv([_record_row(rec)], TABLE_COLUMNS)
    return _record_text(rec) + "\n"


def _check_mn(args, coeffs: SacsCoefficients) -> None:
    if args.m is not None and args.m != coeffs.m:
        raise UsageError(f"--m {args.m} disagrees with coefficient file (m={coeffs.m})")
    if args.n is not None and args.n != coeffs.n:
        raise UsageError(f"--n {args.n} disagrees with coefficient file (n={coeffs.n})")


def cmd_verify(args) -> tuple[str, int]:
    coeffs = _load_coeffs(args.coeffs)
    _check_mn(args, coeffs)
    rec = acs_criterion(coeffs)
    return _render_record(rec, args.format), EXIT_OK if rec.verdict else EXIT_FALSE


def cmd_witness(args) -> tuple[str, int]:
    try:
        coeffs = prop31_witness(args.m, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rec = acs_criterion(coeffs)
    if rec.c_top != rec.chi:
        raise AssertionError(f"explicit witness failed: c_top={rec.c_top}, chi={rec.chi}")
    return _render_record(rec, args.format), EXIT_OK


def _ceiling(args) -> int | None:
    if args.ceiling is not None:
        return args.ceiling
    env = os.environ.get(CEILING_ENV)
    if env is None:
        return None
    try:
        value = int(env)
    except ValueError:
        raise UsageError(f"${CEILING_ENV} must be an integer, got {env!r}") from None
    if value < 1:
        raise UsageError(f"${CEILING_ENV} must be positive")
    return value


def cmd_search(args) -> tuple[str, int]:
    box = SearchBox(args.m, args.n, args.bound)
    start = time.perf_counter()
    try:
        records = search_witnesses(box, args.mode, ceiling=_ceiling(args), workers=args.workers)
    except CeilingExceeded as exc:
        raise UsageError(str(exc)) from None
    elapsed = time.perf_counter() - start
    summary = {"m": box.m, "n": box.n, "bound": box.bound, "mode": args.mode,
               "candidates": box.candidate_count, "witnesses": len(records),
               "seconds": round(elapsed, 3)}
    print(f"# {json.dumps(summary)}", file=sys.stderr)
    if args.format == "json":
        out = json.dumps({"schema_version": SCHEMA_VERSION, "summary": summary,
                          "witnesses": [r.to_dict() for r in records]}, indent=2) + "\n"
    elif args.format == "jsonl":
        out = "".join(json.dumps(r.to_dict()) + "\n" for r in records)
    elif args.format == "csv":
        out = _csv([_record_row(r) for r in records], TABLE_COLUMNS)
    else:
        out = "".join(_record_text(r) + "\n" for r in records)
        out += f"{len(records)} witnesses among {box.candidate_count} candidates\n"
    return out, EXIT_OK


def table_rows(m_max: int, n_max: int) -> list[dict]:
    rows = []
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            inv = invariants(m, n)
            row = {"m": m, "n": n, "chi": inv.euler, "sigma": inv.signature,
                   "hirzebruch": str(hirzebruch_check(m, n)).lower(), "c_top": "", "verdict": ""}
            if m % 2:
                rec = acs_criterion(prop31_witness(m, n))
                row["c_top"] = str(rec.c_top)
                row["verdict"] = str(rec.verdict).lower()
            rows.append(row)
    return rows


def cmd_table(args) -> tuple[str, int]:
    rows = table_rows(args.m_max, args.n_max)
    if args.format == "csv":
        return _csv(rows, TABLE_COLUMNS), EXIT_OK
    if args.format == "json":
        return json.dumps({"schema_version": SCHEMA_VERSION, "rows": rows}, indent=2) + "\n", EXIT_OK
    widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in TABLE_COLUMNS}
    lines = ["  ".join(c.rjust(widths[c]) for c in TABLE_COLUMNS)]
    lines += ["  ".join(str(r[c]).rjust(widths[c]) for c in TABLE_COLUMNS) for r in rows]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_selftest(args) -> tuple[str, int]:
    from .checks import run_selftest

    results = run_selftest(args.m_max, args.n_max, args.samples, args.seed)
    passed = sum(r.passed for r in results)
    status = EXIT_OK if passed == len(results) else EXIT_INTERNAL
    if args.format == "json":
        body = {"schema_version": SCHEMA_VERSION, "passed": passed, "failed": len(results) - passed,
                "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]}
        return json.dumps(body, indent=2) + "\n", status
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name}" + (f"  ({r.detail})" if not r.passed else "")
             for r in results]
    lines.append(f"{passed} passed, {len(results) - passed} failed")
    return "\n".join(lines) + "\n", status


COMMANDS = {
    "verify": cmd_verify,
    "witness": cmd_witness,
    "search": cmd_search,
    "table": cmd_table,
    "selftest": cmd_selftest,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, status = COMMANDS[args.command](args)
    except (UsageError, RingError, ValueError) as exc:
        print(f"acsums {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"acsums {args.command}: internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
