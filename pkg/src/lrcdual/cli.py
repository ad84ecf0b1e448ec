"""Command-line front end.

Exit codes: 0 success, 1 verification failure or row error, 2 bad input,
3 missing k_opt entries, 4 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import (
    LrcParams,
    ParamError,
    dual_distance_bound,
    evaluate,
    generalized_singleton,
    load_kopt_table,
    lrc_lp_bound,
    lrc_lp_problem,
    shortening_bound,
    KOptProvider,
)
from .checks import PROPERTIES
from .code import CodeError, EnumerationBudgetExceeded, random_code
from .gf import FieldError, field_new
from .io import (
    FormatError,
    format_code,
    load_table_spec,
    normalize_methods,
    read_code,
    render_csv,
    render_markdown,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_KOPT, EXIT_BUDGET = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _int_list(raw: str) -> list[int]:
    try:
        return [int(x) for x in raw.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {raw!r}") from None


def _kopt_table(path: str | None):
    if path in (None, "bundled"):
        return load_kopt_table()
    try:
        return load_kopt_table(path)
    except (OSError, ValueError) as exc:
        raise CliError(f"cannot read k_opt table: {exc}") from None


def _evaluate_row(args):
    p, methods, table = args
    out = {}
    for m in methods:
        try:
            out[m] = evaluate(p, m, kopt_table=table)
        except Exception as exc:  # reported as an ERR cell
            out[m] = exc
    return p, out


def _details(rows, methods) -> str:
    lines = []
    for p, results in rows:
        for m in methods:
            res = results[m]
            if isinstance(res, Exception) or not res.details:
                continue
            info = {k: v for k, v in res.details.items() if k not in ("pivots", "per_t", "formulation")}
            lines.append(f"# {p.q} {p.n} {p.d} {p.r} {m}: " + ", ".join(f"{k}={v}" for k, v in info.items()))
    return "".join(ln + "\n" for ln in lines)


def _result_text(res) -> str:
    if isinstance(res, Exception):
        return f"ERR ({res})"
    if res.status == "ok":
        return str(res.value)
    if res.status == "unavailable":
        keys = ", ".join(f"k_opt({q}, {n}, {d})" for q, n, d in res.details.get("missing", []))
        return f"unavailable (no entry for {keys})"
    return res.status


def _render(rows, methods, fmt: str, details: bool) -> str:
    if fmt == "csv":
        if details:
            sys.stderr.write(_details(rows, methods))
        return render_csv(rows, methods)
    if fmt == "markdown":
        text = render_markdown(rows, methods)
    else:
        lines = []
        for p, results in rows:
            if len(rows) > 1:
                lines.append(f"q={p.q} n={p.n} d={p.d} r={p.r}" + (f" k={p.k}" if p.k is not None else ""))
            lines += [f"{m}: {_result_text(results[m])}" for m in methods]
        text = "".join(ln + "\n" for ln in lines)
    return text + (_details(rows, methods) if details else "")


def cmd_bounds(args) -> int:
    methods = normalize_methods(args.methods)
    if args.k is not None and "dual_distance" not in methods and not args.methods_given:
        methods.append("dual_distance")
    table = _kopt_table(args.kopt_table) if "sh_exact" in methods else None
    rows = []
    for q, n, d, r in product(args.q, args.n, args.d, args.r):
        try:
            p = LrcParams(q, n, d, r, k=args.k)
        except (ParamError, FieldError) as exc:
            raise CliError(str(exc)) from None
        if args.dump_lp:
            Path(args.dump_lp).write_text(lrc_lp_problem(p).dump())
        rows.append(_evaluate_row((p, methods, table)))
    sys.stdout.write(_render(rows, methods, args.format, args.details))
    return _row_status(rows)


def _row_status(rows) -> int:
    code = EXIT_OK
    for _, results in rows:
        for res in results.values():
            if isinstance(res, ParamError):
                raise CliError(str(res))
            if isinstance(res, Exception):
                code = EXIT_FAIL
            elif res.status == "unavailable" and code == EXIT_OK:
                code = EXIT_KOPT
    return code


def cmd_table(args) -> int:
    try:
        spec = load_table_spec(args.spec)
    except (OSError, FormatError) as exc:
        raise CliError(f"cannot load table spec: {exc}") from None
    methods = normalize_methods(args.methods) if args.methods else spec.methods
    fmt = args.format or spec.format
    table = _kopt_table(args.kopt_table) if "sh_exact" in methods else None
    jobs = [(p, methods, table) for p in spec.rows]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_evaluate_row, jobs))
    else:
        rows = [_evaluate_row(j) for j in jobs]
    sys.stdout.write(_render(rows, methods, fmt, args.details))
    code = EXIT_OK
    for _, results in rows:
        for res in results.values():
            if isinstance(res, Exception):
                code = EXIT_FAIL
            elif res.status == "unavailable" and code == EXIT_OK:
                code = EXIT_KOPT
    if code == EXIT_KOPT:
        skipped = [p for p, results in rows
                   if any(not isinstance(r, Exception) and r.status == "unavailable" for r in results.values())]
        sys.stderr.write(f"{len(skipped)} row(s) skipped for missing k_opt entries\n")
    return code


def _matrix_lines(title: str, rows) -> list[str]:
    return [title] + ["  " + " ".join(f"{v:>4}" for v in row) for row in rows]


def cmd_analyze(args) -> int:
    try:
        C = read_code(args.code)
    except OSError as exc:
        raise CliError(f"cannot read code file: {exc}") from None
    except (FormatError, FieldError, CodeError) as exc:
        raise CliError(str(exc)) from None
    try:
        prof = C.profile()
        W, Wd = C.weight_distribution(), C.dual_weight_distribution()
        R, Rd = C.refined_weight_distribution(), C.dual_refined_weight_distribution()
    except EnumerationBudgetExceeded as exc:
        raise CliError(str(exc), EXIT_BUDGET) from None
    q = C.field.q
    out = [
        f"q={q} n={prof.n} k={prof.k}",
        f"d={prof.d}",
        f"d_dual={prof.d_dual if prof.d_dual is not None else 'undefined'}",
        f"r={prof.r if prof.r is not None else 'undefined'}",
        f"nondegenerate={str(prof.nondegenerate).lower()}",
        f"dual_nondegenerate={str(prof.dual_nondegenerate).lower()}",
        f"self_dual={str(prof.k * 2 == prof.n and C.k < C.n and C == C.dual()).lower()}",
        "W(C)    = " + " ".join(map(str, W)),
        "W(dual) = " + " ".join(map(str, Wd)),
    ]
    out += _matrix_lines("W_i^j(C), rows i=1..n+1, columns j=1..n:", R.entries)
    out += _matrix_lines("W_i^j(dual), rows i=1..n+1, columns j=1..n:", Rd.entries)
    out.append("bounds:")
    n, k, d, r = prof.n, prof.k, prof.d, prof.r
    if r is None or d < 2 or r > n - 1:
        out.append("  not applicable (needs 2 <= d and a defined locality)")
    else:
        p = LrcParams(q, n, d, r)
        checks = [("gen_singleton", generalized_singleton(p)),
                  ("sh_lp", shortening_bound(p, KOptProvider("delsarte_lp")))]
        if prof.nondegenerate:
            checks.append(("lp", lrc_lp_bound(p)))
        for name, res in checks:
            verdict = "satisfied" if res.status == "ok" and k <= res.value else "VIOLATED"
            out.append(f"  {name}: k={k} <= {res.value}: {verdict}")
        if 2 <= k <= n - 2 and prof.d_dual is not None:
            res = dual_distance_bound(q, n, k, d, r)
            ok = res.status == "ok" and prof.d_dual <= res.value
            out.append(f"  dual_distance: d_dual={prof.d_dual} <= {res.value}: {'satisfied' if ok else 'VIOLATED'}")
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        F = field_new(args.q)
    except FieldError as exc:
        raise CliError(str(exc)) from None
    if not 1 <= args.kmax <= args.n - 1:
        raise CliError(f"need 1 <= kmax <= n-1, got kmax={args.kmax}, n={args.n}")
    if args.trials < 0:
        raise CliError("trials must be >= 0")
    rng = np.random.default_rng(args.seed)
    passed = {name: 0 for name in PROPERTIES}
    print(f"verify q={args.q} n={args.n} kmax={args.kmax} trials={args.trials} seed={args.seed}")
    for trial in range(args.trials):
        k = int(rng.integers(1, args.kmax + 1))
        try:
            C = random_code(F, args.n, k, rng)
        except CodeError as exc:
            raise CliError(str(exc)) from None
        except EnumerationBudgetExceeded as exc:  # pragma: no cover
            raise CliError(str(exc), EXIT_BUDGET) from None
        for name, check in PROPERTIES.items():
            if check(C):
                passed[name] += 1
                continue
            text = format_code(C)
            print(f"FAIL {name} on trial {trial}; counterexample code:")
            sys.stdout.write(text)
            if args.counterexample:
                Path(args.counterexample).write_text(text)
            return EXIT_FAIL
    for name, count in passed.items():
        print(f"{name}: {count}/{args.trials} passed")
    print("all properties passed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lrcdual", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="evaluate dimension bounds for (q, n, d, r)")
    b.add_argument("--q", type=_int_list, required=True, help="field size (comma list allowed)")
    b.add_argument("--n", type=_int_list, required=True)
    b.add_argument("--d", type=_int_list, required=True)
    b.add_argument("--r", type=_int_list, required=True)
    b.add_argument("--k", type=int, help="dimension, for the dual distance bound")
    b.add_argument("--methods", default=None, help="comma list: lp,sh_lp,sh_exact,gsing,dual_distance")
    b.add_argument("--kopt-table", default=None, help="k_opt data file for sh_exact (default: bundled)")
    b.add_argument("--format", choices=("text", "csv", "markdown"), default="text")
    b.add_argument("--details", action="store_true", help="also print mu*, minimizing t, ...")
    b.add_argument("--dump-lp", metavar="FILE", help="write the LP bound's program as text")
    b.set_defaults(func=cmd_bounds)

    t = sub.add_parser("table", help="compute a comparison table from a spec file")
    t.add_argument("--spec", required=True, help="spec file, or one of table1..table4")
    t.add_argument("--jobs", type=int, default=1)
    t.add_argument("--methods", default=None)
    t.add_argument("--kopt-table", default=None)
    t.add_argument("--format", choices=("csv", "markdown"), default=None)
    t.add_argument("--details", action="store_true")
    t.set_defaults(func=cmd_table)

    a = sub.add_parser("analyze", help="profile a code given by a generator-matrix file")
    a.add_argument("--code", required=True)
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="check the duality identities on random codes")
    v.add_argument("--q", type=int, required=True)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--kmax", type=int, required=True)
    v.add_argument("--trials", type=int, default=50)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--counterexample", metavar="FILE", help="where to write a failing code")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_INPUT
    if args.command == "bounds":
        args.methods_given = args.methods is not None
        if args.methods is None:
            args.methods = "lp,sh_lp,gen_singleton"
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code
    except FormatError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
