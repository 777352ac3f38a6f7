"""Command-line front end: ``python -m complegs <command> ...``.

Exit codes: 0 on success, 2 for bad input (usage or domain errors), 1 for
internal errors, failed invariants and failed verification suites.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from typing import Callable, Iterable, Optional, Sequence

from . import classify, lisca, plumbing, rationals, seifert, verify
from .errors import CFDivisionByZero, DomainError, InvariantViolation
from .rationals import format_cf, format_rational, parse_cf, parse_rational

FORMATS = ("json", "table", "csv")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# output


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False)


def _flatten(row: dict) -> dict:
    out = {}
    for k, v in row.items():
        if isinstance(v, dict):
            for k2, v2 in _flatten(v).items():
                out[f"{k}.{k2}"] = v2
        elif isinstance(v, (list, tuple)):
            out[k] = " ".join(str(x) for x in v)
        else:
            out[k] = "" if v is None else v
    return out


def _table(rows: Sequence[dict]) -> str:
    if not rows:
        return ""
    flat = [_flatten(r) for r in rows]
    cols = list(dict.fromkeys(k for r in flat for k in r))
    cells = [[str(r.get(c, "")) for c in cols] for r in flat]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines += ["  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines)


def _csv(rows: Sequence[dict]) -> str:
    if not rows:
        return ""
    flat = [_flatten(r) for r in rows]
    cols = list(dict.fromkeys(k for r in flat for k in r))
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    w.writerows(flat)
    return buf.getvalue().rstrip("\n")


def emit(obj, fmt: str, out) -> None:
    """Print a dict (one record) or a list of dicts in the chosen format."""
    if fmt == "json":
        text = _dump_json(obj)
    else:
        rows = obj if isinstance(obj, list) else [obj]
        text = _table(rows) if fmt == "table" else _csv(rows)
    if text:
        print(text, file=out)


# ---------------------------------------------------------------------------
# commands


def _cf_record(s: rationals.CFString) -> dict:
    v = rationals.cf_evaluate(s)
    rec = {"string": format_cf(s), "value": format_rational(v), "length": len(s),
           "I": rationals.i_value(s)}
    if v != 1:
        rec["dual"] = format_cf(rationals.riemenschneider_dual(s))
    rec["reversed_value"] = format_rational(rationals.cf_reverse_value(s))
    return rec


def cmd_cf(args, out) -> int:
    text = args.value.strip()
    if text.startswith("["):
        s = parse_cf(text)
        if not s.entries:
            raise DomainError("empty string has no value")
        if not s.strict:
            raise DomainError(f"{text} has an entry below 2")
        emit(_cf_record(s), args.format, out)
        return 0
    x = parse_rational(text)
    if x > 1:
        emit(_cf_record(rationals.cf_expand(x)), args.format, out)
        return 0
    n, t = rationals.split_framing(x)
    emit({"value": format_rational(x), "n": n, "string": format_cf(t)}, args.format, out)
    return 0


def cmd_theta(args, out) -> int:
    if args.a1 is None or args.a2 is None:
        raise UsageError("theta needs --a1 and --a2")
    a1, a2 = parse_cf(args.a1), parse_cf(args.a2)
    res = plumbing.theta_canonical_formula(a1, a2)
    rec = {"a1": format_cf(a1), "a2ext": format_cf(a2), **res.to_json()}
    if args.check:
        other = plumbing.theta_canonical_matrix(a1, a2)
        if other != res:
            raise InvariantViolation(f"theta paths disagree: {res} vs {other}")
        rec["matrix_path_agrees"] = True
    emit(rec, args.format, out)
    return 0


def _parse_pq(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*/\s*(\d+)\s*", text)
    if not m:
        raise DomainError(f"expected p/q with positive integers, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def cmd_rmember(args, out) -> int:
    p, q = _parse_pq(args.value)
    if args.all:
        certs = lisca.all_certificates(p, q)
        rec = {"p": p, "q": q, "member": bool(certs), "certificates": [c.to_json() for c in certs]}
        emit(rec, args.format, out)
        return 0
    cert = lisca.r_membership(p, q)
    rec: dict = {"member": cert is not None}
    if cert is not None:
        rec["certificate"] = cert.to_json()
    emit(rec, args.format, out)
    return 0


def _seifert_arg(args) -> seifert.SeifertData:
    if args.seifert is None:
        raise UsageError("classify needs --seifert 'e0;r1,r2,r3'")
    return seifert.SeifertData.parse(args.seifert)


def _verdict_row(y: seifert.SeifertData, v: classify.FillingVerdict) -> dict:
    row = {"Y": _compact(y), **v.to_json()}
    row["theta_gate"] = format_rational(classify.theta_gate(y))
    return row


def _compact(y: seifert.SeifertData) -> str:
    return f"{y.e0};" + ",".join(format_rational(x) for x in y.r)


def cmd_classify(args, out) -> int:
    y = _seifert_arg(args)
    v = classify.symplectic_verdict(y)
    rec = _verdict_row(y, v)
    if args.both:
        w = classify.symplectic_verdict(seifert.reverse_orientation(y))
        rec = [rec, _verdict_row(seifert.reverse_orientation(y), w)]
    emit(rec, args.format, out)
    return 0


def _grid(args) -> verify.GridSpec:
    g = verify.GridSpec()
    over = {}
    if args.len is not None:
        over["max_string_len"] = args.len
    if args.entry is not None:
        over["max_entry"] = args.entry
    if args.m is not None:
        over["m_max"] = args.m
    if args.n is not None:
        over["n_max"] = args.n
    if args.pmax is not None:
        over["p_max"] = over["cf_p_max"] = args.pmax
    if getattr(args, "denom", None) is not None:
        over["denom_max"] = args.denom
    if getattr(args, "e0", None) is not None:
        over["e0_range"] = _parse_range(args.e0)
    return verify.GridSpec(**{**g.__dict__, **over})


def _parse_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*([+-]?\d+)\s*(?::\s*([+-]?\d+)\s*)?", text)
    if not m:
        raise DomainError(f"expected e0 or lo:hi, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    return lo, hi


def cmd_verify(args, out) -> int:
    g = _grid(args)
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    if args.suite not in verify.SUITES + ("all",):
        raise DomainError(f"unknown suite {args.suite!r}")
    reports = []
    for name in names:
        n = sum(len(insts) for _, insts in verify.suite_instances(name, g))
        print(f"{name}: running {n} instances", file=sys.stderr)
        rep = verify.run_suite(name, g, jobs=args.jobs)
        reports.append(rep)
        if not rep.ok:
            break
    if args.format == "json":
        emit({"grid": g.to_json(), "reports": [r.to_json() for r in reports]}, "json", out)
    else:
        for r in reports:
            print(f"{r.suite}: {r.instances} instances, {r.failures} failures ({r.checks} checks)", file=out)
        bad = next((r for r in reports if not r.ok), None)
        if bad is not None:
            print("first counterexample: " + json.dumps(bad.first_failure, sort_keys=True), file=out)
    return 0 if all(r.ok for r in reports) else 1


_FILTER = re.compile(r"^\s*(\w+)\s*(==|!=)\s*(\S+)\s*$")


def _row_value(row: dict, key: str) -> str:
    if key == "symplectic":
        return row["symplectic"]["kind"]
    if key == "e0":
        return str(row["e0"])
    if key not in row:
        raise DomainError(f"cannot filter on {key!r}")
    return str(row[key])


def compile_filters(exprs: Iterable[str]) -> Callable[[dict], bool]:
    preds = []
    for e in exprs:
        m = _FILTER.match(e)
        if not m:
            raise DomainError(f"bad filter {e!r}; use field==value or field!=value")
        key, op, val = m.groups()
        preds.append((key, op == "==", val))
    return lambda row: all((_row_value(row, k) == v) == eq for k, eq, v in preds)


def enumerate_rows(g: verify.GridSpec, source: str) -> list[dict]:
    ys: dict = {}
    if source in ("grid", "both"):
        for y in verify.seifert_grid(g):
            ys[y] = None
    if source in ("ymhn", "both"):
        lo, hi = g.e0_range
        if lo <= -1 <= hi:
            for n in range(1, g.n_max + 1):
                ys[seifert.y_mhn(1, 0, n)] = None
            for m in range(2, g.m_max + 1):
                for h in range(1, m):
                    if math.gcd(m, h) == 1:
                        for n in range(1, g.n_max + 1):
                            ys[seifert.y_mhn(m, h, n)] = None
    rows = []
    for y in sorted(ys, key=lambda y: y.sort_key()):
        v = classify.symplectic_verdict(y)
        row = {"Y": _compact(y), "e0": y.e0, "smooth": v.smooth.value, "symplectic": v.symplectic.to_json(),
               "rule": v.rule_fired.value, "theta_gate": format_rational(classify.theta_gate(y))}
        if y.e0 <= -2:
            row["theta_can"] = format_rational(classify.theta_canonical_of(y))
        rows.append(row)
    return rows


def cmd_enumerate(args, out) -> int:
    g = _grid(args)
    keep = compile_filters(args.filter or [])
    rows = [r for r in enumerate_rows(g, args.source) if keep(r)]
    emit(rows, args.format, out)
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_format(p: argparse.ArgumentParser, default: str = "json") -> None:
    p.add_argument("--format", choices=FORMATS, default=default)


def _add_grid(p: argparse.ArgumentParser) -> None:
    p.add_argument("--len", type=int, help="longest continued-fraction string")
    p.add_argument("--entry", type=int, help="largest string entry")
    p.add_argument("--m", type=int, help="largest m in the (m, h, n) families")
    p.add_argument("--n", type=int, help="largest n in the (m, h, n) families")
    p.add_argument("--pmax", type=int, help="largest p for rational and lens-space checks")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="complegs", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cf", help="expand a rational or evaluate a bracketed string")
    p.add_argument("value", help="p/q or [a1,...,ak]")
    _add_format(p)
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("theta", help="theta of the canonical structure on a plumbing")
    p.add_argument("--a1")
    p.add_argument("--a2", help="the extended middle string, central vertex first")
    p.add_argument("--check", action="store_true", help="also run the matrix route and compare")
    _add_format(p)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("rmember", help="membership in Lisca's set")
    p.add_argument("value", help="p/q")
    p.add_argument("--all", action="store_true", help="list every certificate")
    _add_format(p)
    p.set_defaults(func=cmd_rmember)

    p = sub.add_parser("classify", help="rational ball fillings of Y(e0; r1, r2, r3)")
    p.add_argument("--seifert", help="'e0;r1,r2,r3'")
    p.add_argument("--both", action="store_true", help="also classify the reversed orientation")
    _add_format(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run an invariant suite over a grid")
    p.add_argument("suite", help=f"one of {', '.join(verify.SUITES)}, all")
    _add_grid(p)
    p.add_argument("--jobs", type=int, default=1)
    _add_format(p, "table")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="classify every space on a grid")
    _add_grid(p)
    p.add_argument("--e0", help="e0 or lo:hi")
    p.add_argument("--denom", type=int, help="largest denominator of r1")
    p.add_argument("--source", choices=("grid", "ymhn", "both"), default="grid")
    p.add_argument("--filter", action="append", help="field==value or field!=value, repeatable")
    _add_format(p, "csv")
    p.set_defaults(func=cmd_enumerate)
    return ap


_NEGATIVE = re.compile(r"^-\d")


def _shield_negatives(argv: Sequence[str]) -> list[str]:
    # "-2;1/2,1/3,1/2" and "-5/4" are values, not flags; a leading space keeps
    # argparse from reading them as options and every parser here strips it
    return [" " + a if _NEGATIVE.match(a) else a for a in argv]


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    ap = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = ap.parse_args(_shield_negatives(argv))
    except SystemExit as e:
        return int(e.code or 0)
    if getattr(args, "jobs", 1) is not None and getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args, out)
    except (DomainError, UsageError, CFDivisionByZero) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except InvariantViolation as e:
        print(f"invariant violated: {e}", file=sys.stderr)
        return 1
    except Exception as e:  # noqa: BLE001
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
