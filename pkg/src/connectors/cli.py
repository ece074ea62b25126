"""``connectors`` command-line interface.

JSON (or CSV for ``table``) goes to stdout; human-readable reports go to
stderr. Exit codes: 0 ok, 2 usage/parse error, 3 verification mismatch,
4 enumeration cap exceeded.
"""
from __future__ import annotations

import argparse
import csv
import functools
import io
import json
import sys
from typing import Callable

from . import linsys
from .algebra import Poly
from .genfunc import closed_form_gf, transfer_distribution
from .totals import total
from .verify import run_verify
from .words import (
    EnumerationTooLarge,
    InvalidWord,
    Word,
    brute_distribution,
    gkcon,
    kcon,
    stat_by_name,
    stat_count,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MISMATCH = 3
EXIT_CAP = 4


class UsageError(Exception):
    pass


def record(command: str, inputs: dict, result, method: str, status: str = "ok") -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "result": result,
        "method": method,
        "status": status,
    }


def emit(rec: dict, out=None) -> None:
    out = out or sys.stdout
    json.dump(rec, out, indent=2, sort_keys=False)
    out.write("\n")


def _report(line: str) -> None:
    print(line, file=sys.stderr)


def cmd_stats(args) -> tuple[dict, int]:
    try:
        w = Word.parse(args.word, args.k)
    except InvalidWord as exc:
        raise UsageError(str(exc)) from exc
    result = {"kcon": str(stat_count(w, kcon(args.k))), "gkcon": str(stat_count(w, gkcon(args.k)))}
    return record("stats", {"word": str(w), "k": args.k}, result, "direct"), EXIT_OK


def _methods_for(name: str) -> list[str]:
    return ["brute", "transfer", "gf"] if name == "all" else [name]


def _compute_dist(method: str, n: int, k: int, s, cap, workers: int) -> Poly:
    if method == "brute":
        return brute_distribution(n, k, s, cap=cap, workers=workers)
    if method == "transfer":
        return transfer_distribution(n, k, s)
    return closed_form_gf(s, k).coefficient(n)


def _dist_inputs(args, threshold: int) -> dict:
    return {"n": args.n, "k": args.k, "stat": args.stat, "threshold": threshold, "method": args.method}


def cmd_dist(args) -> tuple[dict, int]:
    threshold = args.threshold if args.threshold is not None else args.k
    s = stat_by_name(args.stat, threshold)
    if args.method == "gf" and threshold != args.k:
        raise UsageError("method gf needs threshold equal to k")
    computed: dict[str, Poly] = {}
    skipped: dict[str, str] = {}
    for m in _methods_for(args.method):
        if args.method == "all" and m == "gf" and threshold != args.k:
            skipped[m] = "no closed form for threshold != k"
            continue
        try:
            computed[m] = _compute_dist(m, args.n, args.k, s, args.enum_cap, args.workers)
        except EnumerationTooLarge as exc:
            if args.method != "all":
                raise
            skipped[m] = str(exc)
    values = list(computed.values())
    agreement = all(v == values[0] for v in values)
    result = {
        "distribution": values[0].to_json(),
        "agreement": agreement,
        "methods": {m: p.to_json() for m, p in computed.items()},
        "skipped": skipped,
    }
    if args.pretty:
        result["pretty"] = str(values[0])
    status, code = "ok", EXIT_OK
    if not agreement:
        status, code = "mismatch", EXIT_MISMATCH
        for m, p in computed.items():
            _report(f"{m:>9}: {p}")
    return record("dist", _dist_inputs(args, threshold), result, ",".join(computed), status), code


def cmd_total(args) -> tuple[dict, int]:
    s = stat_by_name(args.stat, args.k)
    computed: dict[str, int] = {}
    skipped: dict[str, str] = {}
    methods = ["formula", "brute", "transfer", "gf"] if args.method == "all" else [args.method]
    for m in methods:
        try:
            if m == "formula":
                computed[m] = total(args.stat, args.n, args.k)
            else:
                dist = _compute_dist(m, args.n, args.k, s, args.enum_cap, args.workers)
                computed[m] = dist.derivative()(1)
        except EnumerationTooLarge as exc:
            if args.method != "all":
                raise
            skipped[m] = str(exc)
    values = list(computed.values())
    agreement = all(v == values[0] for v in values)
    result = {
        "total": str(values[0]),
        "agreement": agreement,
        "methods": {m: str(v) for m, v in computed.items()},
        "skipped": skipped,
    }
    inputs = {"n": args.n, "k": args.k, "stat": args.stat, "method": args.method}
    if not agreement:
        return record("total", inputs, result, ",".join(computed), "mismatch"), EXIT_MISMATCH
    return record("total", inputs, result, ",".join(computed)), EXIT_OK


def cmd_det(args) -> tuple[dict, int]:
    k = args.k
    A = linsys.build_system_matrix(k)
    det = linsys.poly_det(A)
    closed = linsys.detA_closed_form(k)
    nums = linsys.cramer_numerators(k)
    term_sum = linsys.lemma_term_sum(k)
    num_sum = Poly((), "b")
    for n in nums:
        num_sum = num_sum + n
    result = {
        "k": k,
        "matrix": A.to_json(),
        "det_computed": det.to_json(),
        "det_closed_form": closed.to_json(),
        "match": det == closed,
        "cramer_numerators": [n.to_json() for n in nums],
        "term_sum": term_sum.to_json(),
        "sum_match": num_sum == term_sum,
        "permutation": linsys.numerator_permutation(k),
    }
    if args.pretty:
        result["pretty"] = {
            "det": str(det),
            "cramer_numerators": [str(n) for n in nums],
            "term_sum": str(term_sum),
        }
    ok = result["match"] and result["sum_match"]
    return (
        record("det", {"k": k}, result, "bareiss", "ok" if ok else "mismatch"),
        EXIT_OK if ok else EXIT_MISMATCH,
    )


def cmd_verify(args) -> tuple[dict, int]:
    report = run_verify(
        kmax=args.kmax,
        nmax=args.nmax,
        kdet=args.kdet,
        nseries=args.nseries,
        cap=args.enum_cap,
        workers=args.workers,
        on_result=lambda r: _report(r.line()),
    )
    for note in report.notes:
        _report(f"NOTE  {note}")
    inputs = {"kmax": args.kmax, "nmax": args.nmax, "kdet": args.kdet, "nseries": args.nseries}
    if report.passed:
        _report(f"all {len(report.results)} checks passed")
        return record("verify", inputs, report.to_json(), "all"), EXIT_OK
    f = report.first_failure
    _report(f"first failure: check={f.check!r} k={f.k} n={f.n}: {f.detail}")
    return record("verify", inputs, report.to_json(), "all", "mismatch"), EXIT_MISMATCH


def totals_table(stat: str, kmax: int, nmax: int) -> list[list[int]]:
    """Rows n = 0..nmax, columns k = 1..kmax."""
    return [[total(stat, n, k) for k in range(1, kmax + 1)] for n in range(nmax + 1)]


def cmd_table(args) -> tuple[dict | str, int]:
    rows = totals_table(args.stat, args.kmax, args.nmax)
    header = ["n\\k"] + [str(k) for k in range(1, args.kmax + 1)]
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for n, row in enumerate(rows):
            writer.writerow([n] + row)
        return buf.getvalue(), EXIT_OK
    result = {"header": header, "rows": [[str(n)] + [str(v) for v in row] for n, row in enumerate(rows)]}
    inputs = {"stat": args.stat, "kmax": args.kmax, "nmax": args.nmax, "format": args.format}
    return record("table", inputs, result, "formula"), EXIT_OK


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


@functools.lru_cache(maxsize=None)
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="also render polynomials as text")
    common.add_argument(
        "--enum-cap", type=_positive, default=None,
        help="max words to enumerate (default 10^8, env CONNECTOR_ENUM_CAP)",
    )
    common.add_argument("--workers", type=_positive, default=1, help="processes for brute force")

    parser = argparse.ArgumentParser(
        prog="connectors",
        description="k-connector and gk-connector statistics on k-ary words",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", parents=[common], help="statistics of one word")
    p.add_argument("--word", required=True, help="digits (e.g. 143114) or comma-separated letters")
    p.add_argument("--k", type=_positive, required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("dist", parents=[common], help="distribution polynomial in q")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--stat", choices=["kcon", "gkcon"], required=True)
    p.add_argument("--method", choices=["brute", "transfer", "gf", "all"], default="transfer")
    p.add_argument("--threshold", type=_positive, default=None, help="pair-sum threshold (default k)")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("total", parents=[common], help="statistic summed over all words")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--stat", choices=["kcon", "gkcon"], required=True)
    p.add_argument("--method", choices=["formula", "brute", "transfer", "gf", "all"], default="formula")
    p.set_defaults(func=cmd_total)

    p = sub.add_parser("det", parents=[common], help="system matrix determinant and Cramer numerators")
    p.add_argument("--k", type=_positive, required=True)
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("verify", parents=[common], help="run every cross-check")
    p.add_argument("--kmax", type=_positive, default=6)
    p.add_argument("--nmax", type=_nonneg, default=8)
    p.add_argument("--kdet", type=_positive, default=14, help="largest k for determinant checks")
    p.add_argument("--nseries", type=_nonneg, default=50, help="series length for totals checks")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", parents=[common], help="totals triangle T(n, k)")
    p.add_argument("--stat", choices=["kcon", "gkcon"], required=True)
    p.add_argument("--kmax", type=_positive, required=True)
    p.add_argument("--nmax", type=_nonneg, required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler: Callable = args.func
    try:
        out, code = handler(args)
    except UsageError as exc:
        _report(f"error: {exc}")
        return EXIT_USAGE
    except EnumerationTooLarge as exc:
        _report(f"error: {exc}")
        return EXIT_CAP
    if isinstance(out, str):
        sys.stdout.write(out)
    else:
        emit(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
