"""Command-line front end: ``fibotomic {poly,disc,res,factor,verify,table}``.

Exit code 0 means everything checked agrees and 1 means some closed form
disagreed with its engine.  Usage errors (bad flags, indices outside a
formula's range, composite moduli) exit with 2.

JSON records share one envelope::

    {"schema_version": "1", "command": ..., "inputs": {...},
     "result": {...}, "status": "ok" | "mismatch" | "error"}

Every integer is written as a decimal string and coefficient lists run from
the constant term upward.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Any, Sequence

from . import families, modfactor, numth, resdisc, suites
from .errors import FibotomicError
from .polycore import IntPoly

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

TABLE_COLUMNS = {
    "disc": ("n", "phi", "formula", "engine"),
    "res": ("m", "n", "formula", "engine"),
    "shape": ("n", "p", "k", "m", "predicted", "observed", "ok"),
}

_FAMILIES = {"fib": families.fibonacci, "psi": families.fibotomic, "cyclo": families.cyclotomic}


class UsageError(Exception):
    """Bad user input detected after argparse; maps to exit code 2."""


def jsonable(obj: Any) -> Any:
    """Recursively turn ints into decimal strings; bools and None pass through."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj if isinstance(obj, str) else str(obj)


def make_record(command: str, inputs: dict, result: dict, status: str) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": jsonable(inputs),
        "result": jsonable(result),
        "status": status,
    }


def dump_record(record: dict) -> str:
    """Canonical serialization; ``dump_record(json.loads(s)) == s`` for emitted s."""
    return json.dumps(record, indent=2, ensure_ascii=False)


def default_seed() -> int:
    raw = os.environ.get("FIBOTOMIC_SEED")
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"FIBOTOMIC_SEED must be an integer, got {raw!r}") from None


def _prime_list(text: str) -> tuple[int, ...]:
    try:
        primes = tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None
    if not primes:
        raise argparse.ArgumentTypeError("empty prime list")
    bad = [p for p in primes if not numth.is_prime(p)]
    if bad:
        raise argparse.ArgumentTypeError(f"not prime: {','.join(map(str, bad))}")
    return primes


def _max_n(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 2:
        raise argparse.ArgumentTypeError(f"--max-n must be >= 2, got {n}")
    return n


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


# ---------------------------------------------------------------------------
# commands; each returns (record, text, exit code)


def _poly_result(f: IntPoly) -> dict:
    return {"degree": f.degree if not f.is_zero() else -1, "coeffs": list(f.coeffs), "text": str(f)}


def cmd_poly(args) -> tuple[dict, str, int]:
    f = _FAMILIES[args.family](args.n)
    rec = make_record("poly", {"family": args.family, "n": args.n}, _poly_result(f), "ok")
    return rec, str(f), EXIT_OK


def _compare(method: str, formula, engine) -> tuple[dict, str, int]:
    result: dict = {}
    if method in ("formula", "both"):
        result["formula"] = formula()
    if method in ("engine", "both"):
        result["engine"] = engine()
    agree = method != "both" or result["formula"] == result["engine"]
    status = "ok" if agree else "mismatch"
    text = "  ".join(f"{k}={v}" for k, v in result.items()) + f"  [{status}]"
    return result, text, EXIT_OK if agree else EXIT_MISMATCH


def cmd_disc(args) -> tuple[dict, str, int]:
    if args.n < 2:
        raise UsageError(f"disc needs n >= 2, got {args.n}")
    poly_fn = families.fibotomic if args.family == "psi" else families.cyclotomic
    closed = resdisc.disc_formula_psi if args.family == "psi" else resdisc.disc_formula_phi
    result, text, code = _compare(
        args.method,
        lambda: closed(args.n),
        lambda: resdisc.discriminant(poly_fn(args.n), args.engine),
    )
    inputs = {"family": args.family, "n": args.n, "method": args.method, "engine": args.engine}
    rec = make_record("disc", inputs, result, "ok" if code == EXIT_OK else "mismatch")
    return rec, text, code


def cmd_res(args) -> tuple[dict, str, int]:
    m, n = args.m, args.n
    if not 2 <= m < n:
        raise UsageError(f"res needs 2 <= m < n, got m={m}, n={n}")
    poly_fn = families.fibotomic if args.family == "psi" else families.cyclotomic
    closed = resdisc.res_formula_psi if args.family == "psi" else resdisc.res_formula_phi
    result, text, code = _compare(
        args.method,
        lambda: closed(m, n),
        lambda: resdisc.resultant(poly_fn(m), poly_fn(n), args.engine),
    )
    inputs = {"family": args.family, "m": m, "n": n, "method": args.method, "engine": args.engine}
    rec = make_record("res", inputs, result, "ok" if code == EXIT_OK else "mismatch")
    return rec, text, code


def cmd_factor(args) -> tuple[dict, str, int]:
    if args.n < 2:
        raise UsageError(f"factor needs n >= 2, got {args.n}")
    if not numth.is_prime(args.p):
        raise UsageError(f"{args.p} is not prime")
    seed = default_seed() if args.seed is None else args.seed
    rep = modfactor.reconcile(args.n, args.p, seed)
    factors = [{"coeffs": list(g.coeffs), "multiplicity": e, "text": str(g)} for g, e in rep.factorization.factors]
    result = {
        "k": rep.k,
        "m": rep.m,
        "predicted": str(rep.predicted),
        "observed": str(rep.observed),
        "factors": factors,
        "delta": rep.delta,
        "checks": rep.checks,
    }
    status = "ok" if rep.ok else "mismatch"
    lines = [
        f"Psi_{args.n} mod {args.p}  (n = {args.p}^{rep.k} * {rep.m})",
        f"  predicted: {rep.predicted}",
        f"  observed:  {rep.observed}",
        f"  factors:   {rep.factorization}",
    ]
    if rep.delta:
        d = rep.delta
        lines.append(f"  delta:     formula={d['formula']} ({d['case']}) oracle={d['oracle']} observed={d['observed']}")
    if rep.failed():
        lines.append(f"  failed:    {', '.join(rep.failed())}")
    lines.append(f"  [{status}]")
    rec = make_record("factor", {"n": args.n, "p": args.p, "seed": seed}, result, status)
    return rec, "\n".join(lines), EXIT_OK if rep.ok else EXIT_MISMATCH


def _summary_text(results: dict[str, suites.SuiteResult]) -> str:
    header = ("suite", "check", "run", "passed", "failed", "first failure")
    rows = [
        (name, s.check, str(s.run), str(s.passed), str(s.failed), s.first_failure or "-")
        for name, res in results.items()
        for s in res.summaries
    ]
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(5)]
    fmt = lambda r: "  ".join(  # noqa: E731
        [r[0].ljust(widths[0]), r[1].ljust(widths[1])]
        + [r[i].rjust(widths[i]) for i in (2, 3, 4)]
        + [r[5]]
    )
    total_run = sum(s.run for res in results.values() for s in res.summaries)
    total_fail = sum(s.failed for res in results.values() for s in res.summaries)
    verdict = "ALL PASS" if total_fail == 0 else f"{total_fail} FAILED"
    return "\n".join([fmt(header), *map(fmt, rows), f"{total_run} checks, {verdict}"])


def cmd_verify(args) -> tuple[dict, str, int]:
    seed = default_seed() if args.seed is None else args.seed
    if args.jobs < 1:
        raise UsageError(f"--jobs must be >= 1, got {args.jobs}")
    cfg = suites.SuiteConfig(max_n=args.max_n, primes=args.primes, seed=seed, jobs=args.jobs)
    results = suites.run_suite(args.suite, cfg)
    ok = all(r.ok for r in results.values())
    body = {
        name: [
            {"check": s.check, "run": s.run, "passed": s.passed, "failed": s.failed, "first_failure": s.first_failure}
            for s in res.summaries
        ]
        for name, res in results.items()
    }
    inputs = {"suite": args.suite, "max_n": args.max_n, "primes": list(args.primes), "seed": seed}
    status = "ok" if ok else "mismatch"
    # jobs is deliberately left out of the record: output must not depend on it
    return make_record("verify", inputs, body, status), _summary_text(results), EXIT_OK if ok else EXIT_MISMATCH


def _table_rows(args, seed: int) -> tuple[list[tuple], bool]:
    N, rows, ok = args.max_n, [], True
    if args.kind == "disc":
        for n in range(2, N + 1):
            f, e = resdisc.disc_formula_psi(n), resdisc.discriminant(families.fibotomic(n))
            rows.append((n, numth.totient(n), f, e))
            ok &= f == e
    elif args.kind == "res":
        for n in range(3, N + 1):
            for m in range(2, n):
                f = resdisc.res_formula_psi(m, n)
                e = resdisc.resultant(families.fibotomic(m), families.fibotomic(n))
                rows.append((m, n, f, e))
                ok &= f == e
    else:
        for p in args.primes:
            for n in range(2, N + 1):
                rep = modfactor.reconcile(n, p, seed)
                rows.append((n, p, rep.k, rep.m, str(rep.predicted), str(rep.observed), rep.ok))
                ok &= rep.ok
    return rows, ok


def cmd_table(args) -> tuple[dict, str, int]:
    seed = default_seed() if args.seed is None else args.seed
    rows, ok = _table_rows(args, seed)
    cols = TABLE_COLUMNS[args.kind]
    status = "ok" if ok else "mismatch"
    inputs = {"kind": args.kind, "max_n": args.max_n}
    if args.kind == "shape":
        inputs.update(primes=list(args.primes), seed=seed)
    rec = make_record("table", inputs, {"columns": list(cols), "rows": [list(r) for r in rows]}, status)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    writer.writerows([[str(v).lower() if isinstance(v, bool) else str(v) for v in r] for r in rows])
    return rec, buf.getvalue().rstrip("\n"), EXIT_OK if ok else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibotomic",
        description="Fibotomic and cyclotomic polynomials: generators, closed forms, and checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt_flag(p, choices=("text", "json"), default="text"):
        p.add_argument("--format", choices=choices, default=default)

    p = sub.add_parser("poly", help="print F_n, Psi_n or Phi_n")
    p.add_argument("family", choices=sorted(_FAMILIES))
    p.add_argument("n", type=_positive)
    fmt_flag(p)

    for name, helptext in (("disc", "discriminant of Psi_n or Phi_n"), ("res", "resultant of two family members")):
        p = sub.add_parser(name, help=helptext)
        if name == "res":
            p.add_argument("m", type=int)
        p.add_argument("n", type=int)
        p.add_argument("--family", choices=("psi", "cyclo"), default="psi")
        p.add_argument("--method", choices=("formula", "engine", "both"), default="both")
        p.add_argument("--engine", choices=("subresultant", "sylvester"), default="subresultant")
        fmt_flag(p)

    p = sub.add_parser("factor", help="factor Psi_n mod p and reconcile with the predicted shape")
    p.add_argument("n", type=int)
    p.add_argument("p", type=int)
    p.add_argument("--seed", type=int, default=None, help="default: $FIBOTOMIC_SEED or 0")
    fmt_flag(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=(*suites.SUITE_NAMES, "all"))
    p.add_argument("--max-n", type=_max_n, default=60)
    p.add_argument("--primes", type=_prime_list, default=suites.DEFAULT_PRIMES, help="comma-separated, for modp")
    p.add_argument("--seed", type=int, default=None, help="default: $FIBOTOMIC_SEED or 0")
    p.add_argument("--jobs", type=int, default=1, help="worker processes; output is identical for any value")
    fmt_flag(p)

    p = sub.add_parser(
        "table",
        help="tabulate closed form against engine",
        epilog="CSV columns: disc = n,phi,formula,engine; res = m,n,formula,engine; "
        "shape = n,p,k,m,predicted,observed,ok. A header row is always written.",
    )
    p.add_argument("kind", choices=sorted(TABLE_COLUMNS))
    p.add_argument("--max-n", type=_max_n, default=20)
    p.add_argument("--primes", type=_prime_list, default=suites.DEFAULT_PRIMES)
    p.add_argument("--seed", type=int, default=None)
    fmt_flag(p, ("csv", "json"), "csv")
    return parser


_COMMANDS = {
    "poly": cmd_poly,
    "disc": cmd_disc,
    "res": cmd_res,
    "factor": cmd_factor,
    "verify": cmd_verify,
    "table": cmd_table,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    want_json = args.format == "json"
    try:
        record, text, code = _COMMANDS[args.command](args)
    except (UsageError, FibotomicError) as exc:
        if want_json:
            inputs = {k: v for k, v in vars(args).items() if k not in ("format", "command")}
            print(dump_record(make_record(args.command, inputs, {"error": str(exc)}, "error")))
        print(f"fibotomic {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(dump_record(record) if want_json else text)
    return code


if __name__ == "__main__":
    sys.exit(main())
