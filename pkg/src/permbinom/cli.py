"""Command-line interface.

Exit codes: 0 success / PP, 1 negative verdict, 2 usage error,
3 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__, kernels
from .binomial import BinomialSpec, b_class, is_permutation, zero_only_root
from .gf import MAX_FIELD_SIZE, PrimePower, prime_power, quadratic_extension
from .hermite import (
    exceptional_alphas,
    hermite_check,
    lambda_closed,
    lambda_direct,
    lemma26_special,
)
from .search import classify, conjecture_scan, enumerate_prime_powers, report_records
from .symbolic import FIXTURE_ALPHAS, appendix_g, diff_coefficients, extract_g
from .verify import TARGETS

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _scalar(v):
    if isinstance(v, (list, tuple)):
        return ",".join(str(x) for x in v)
    if v is None:
        return ""
    return v


def emit(out, fmt: str, command: str, params: dict, records: list[dict], summary: dict, columns=None):
    columns = columns or (sorted(records[0]) if records else [])
    if fmt == "json":
        doc = {"meta": {"version": __version__, "command": command, "params": params},
               "records": records, "summary": summary}
        out.write(json.dumps(doc, sort_keys=True, indent=1) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for rec in records:
            w.writerow([_scalar(rec.get(c)) for c in columns])
        out.write(buf.getvalue())
    else:
        if records:
            cells = [[str(_scalar(rec.get(c))) for c in columns] for rec in records]
            widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(columns)]
            out.write("  ".join(c.rjust(w) for c, w in zip(columns, widths)) + "\n")
            for row in cells:
                out.write("  ".join(x.rjust(w) for x, w in zip(row, widths)) + "\n")
        for k in sorted(summary):
            out.write(f"{k}: {_scalar(summary[k])}\n")


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------


def _prime_power(args) -> PrimePower:
    if args.q is not None:
        pp = prime_power(args.q)
        if pp is None:
            raise UsageError(f"q={args.q} is not a prime power")
    elif args.p is not None and args.n is not None:
        try:
            pp = PrimePower(args.p ** args.n, args.p, args.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        raise UsageError("give --q, or --p together with --n")
    if pp.q * pp.q > MAX_FIELD_SIZE:
        raise UsageError(f"q^2 = {pp.q * pp.q} exceeds the field cap {MAX_FIELD_SIZE}")
    return pp


def _element(args, pp: PrimePower):
    ctx = quadratic_extension(pp)
    if args.a_power is not None:
        return ctx.gen_pow(args.a_power)
    if args.a_coeffs is not None:
        try:
            coeffs = [int(c) for c in args.a_coeffs.split(",")]
        except ValueError:
            raise UsageError(f"bad --a-coeffs {args.a_coeffs!r}") from None
        if len(coeffs) > ctx.d or any(not 0 <= c < ctx.p for c in coeffs):
            raise UsageError(f"--a-coeffs needs at most {ctx.d} residues mod {ctx.p}")
        return ctx.from_coeffs(coeffs)
    raise UsageError("give --a-power or --a-coeffs")


def _r(value: int) -> int:
    from .gf import is_prime

    if value < 3 or not is_prime(value):
        raise UsageError(f"r must be an odd prime, got {value}")
    return value


def _add_field_args(sp):
    sp.add_argument("--q", type=int)
    sp.add_argument("--p", type=int)
    sp.add_argument("--n", type=int)


def _add_element_args(sp):
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--a-power", type=int, help="a = g^k for the canonical generator g of F_{q^2}")
    g.add_argument("--a-coeffs", help="a as comma-separated coordinates c0,c1,... in the power basis")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_check(args, out) -> int:
    pp = _prime_power(args)
    r = _r(args.r)
    a = _element(args, pp)
    if a.is_zero():
        raise UsageError("a must be nonzero")
    ctx = a.ctx
    spec = BinomialSpec(pp, r, a)
    pp_verdict = is_permutation(spec)
    rec = {
        "q": pp.q, "p": pp.p, "n": pp.n, "r": r,
        "exponent": spec.exponent,
        "a_index": a.index, "a_coeffs": list(a.coeffs), "a_power": ctx.log(a),
        "is_permutation": pp_verdict,
        "zero_only_root": zero_only_root(spec),
    }
    if (pp.q + 1) % r == 0:
        b = b_class(spec).b
        rec.update(b_index=b.index, b_coeffs=list(b.coeffs), b_power=ctx.log(b))
    if not args.no_hermite:
        rec["hermite_agrees"] = hermite_check(spec) == pp_verdict
    emit(out, args.format, "check", {"q": pp.q, "r": r}, [rec], {"verdict": "PP" if pp_verdict else "not PP"},
         columns=list(rec))
    return EXIT_OK if pp_verdict else EXIT_NEGATIVE


def cmd_search(args, out) -> int:
    r = _r(args.r)
    if args.q_max < 2:
        raise UsageError("--q-max must be >= 2")
    if args.q_max * args.q_max > MAX_FIELD_SIZE:
        raise UsageError(f"--q-max {args.q_max}: q^2 exceeds the field cap {MAX_FIELD_SIZE}")
    records = []
    per_q = []
    for pp in enumerate_prime_powers(args.q_max, r):
        rep = classify(pp, r, jobs=args.jobs, hermite_fraction=args.hermite_fraction)
        recs = report_records(rep)
        if args.pp_only:
            recs = [x for x in recs if x["is_pp"]]
        records.extend(recs)
        s = rep.summary()
        per_q.append(s)
    summary = {
        "qs": [s["q"] for s in per_q],
        "pp_qs": [s["q"] for s in per_q if s["pp_classes"]],
        "pp_classes": {str(s["q"]): s["pp_classes"] for s in per_q},
        "theorem_diffs": {str(s["q"]): {"unexpected": s["unexpected"], "missing": s["missing"]}
                          for s in per_q if s["unexpected"] or s["missing"]},
    }
    if args.hermite_fraction > 0:
        summary["hermite_disagreements"] = sum(len(s["hermite_disagreements"]) for s in per_q)
    columns = ["q", "p", "n", "r", "b_index", "b_coeffs", "a_rep_index", "a_rep_power", "a_rep_coeffs",
               "is_pp", "matched_theorem_case"]
    emit(out, args.format, "search", {"r": r, "q_max": args.q_max, "pp_only": args.pp_only}, records, summary,
         columns=columns)
    return EXIT_OK


def cmd_scan(args, out) -> int:
    r = _r(args.r)
    if args.q_max * args.q_max > MAX_FIELD_SIZE:
        raise UsageError(f"--q-max {args.q_max}: q^2 exceeds the field cap {MAX_FIELD_SIZE}")
    res = conjecture_scan(r, args.q_max, jobs=args.jobs)
    records = [
        {"q": f.q, "b_index": f.b_index, "a_rep_index": f.a_rep_index, "a_rep_power": f.a_rep_power,
         "root_of_unity": f.root_of_unity}
        for f in sorted(res.sporadic + res.roots_of_unity)
    ]
    summary = {"qs": res.qs, "sporadic_qs": res.sporadic_qs, "sporadic_classes": len(res.sporadic),
               "root_of_unity_classes": len(res.roots_of_unity)}
    emit(out, args.format, "scan", {"r": r, "q_max": args.q_max}, records, summary,
         columns=["q", "b_index", "a_rep_index", "a_rep_power", "root_of_unity"])
    return EXIT_OK


def cmd_verify(args, out) -> int:
    fn = TARGETS[args.target]
    kwargs = {}
    if args.target.startswith("thm"):
        kwargs = {"errata": args.errata, "in_scope_only": args.in_scope_only, "jobs": args.jobs}
        if args.q_max is not None:
            kwargs["q_max"] = args.q_max
    elif args.target in ("lemma-2.4", "lemma-2.6"):
        kwargs = {"errata": args.errata}
    res = fn(**kwargs)
    for line in res.details:
        out.write(line + "\n")
    out.write(f"{res.name}: {'PASS' if res.passed else 'FAIL'}\n")
    if not res.passed:
        out.write(f"first diff: {res.first_diff()}\n")
    return EXIT_OK if res.passed else EXIT_MISMATCH


def cmd_galpha(args, out) -> int:
    try:
        ga = extract_g(args.alpha)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    fixture = appendix_g(args.alpha) if args.alpha in FIXTURE_ALPHAS else None
    diff = diff_coefficients(ga.g, fixture) if fixture is not None else None
    records = [{"degree": i, "coefficient": str(c)} for i, c in enumerate(ga.g.coeffs)]
    summary = {
        "alpha": args.alpha, "e": ga.e, "degree": ga.g.degree, "sign": ga.sign,
        "fixture": "none (experimental)" if fixture is None else ("match" if not diff else f"{len(diff)} differences"),
    }
    emit(out, args.format, "galpha", {"alpha": args.alpha}, records, summary, columns=["degree", "coefficient"])
    return EXIT_MISMATCH if diff else EXIT_OK


def cmd_lambda(args, out) -> int:
    pp = _prime_power(args)
    r = _r(args.r)
    a = _element(args, pp)
    if a.is_zero():
        raise UsageError("a must be nonzero")
    alphas = range(pp.q) if args.alpha is None else [args.alpha]
    records = []
    for alpha in alphas:
        if not 0 <= alpha < pp.q:
            raise UsageError(f"alpha must lie in [0, {pp.q - 1}]")
        lv = lambda_direct(pp.q, alpha, a, r)
        rec = {"alpha": alpha, "value": str(lv.value), "value_index": lv.value.index, "term_count": lv.term_count,
               "closed_form": ""}
        if r == 5 and (pp.q + 1) % 5 == 0 and alpha > 0 and (alpha + 1) % 5 == 0:
            if pp.q >= 4 * alpha + 8:
                rec["closed_form"] = "agree" if lambda_closed(pp.q, alpha, a) == lv.value else "DIFFER"
            elif alpha in exceptional_alphas(pp.q):
                y = a ** ((pp.q + 1) // 5)
                if y != a.ctx.one and y ** 5 == a.ctx.one:
                    rec["closed_form"] = "agree" if lemma26_special(pp.q, alpha, a) == lv.value else "DIFFER"
        records.append(rec)
    summary = {"q": pp.q, "r": r, "a_index": a.index, "nonzero": sum(1 for x in records if x["value_index"])}
    emit(out, args.format, "lambda", {"q": pp.q, "r": r, "alpha": args.alpha}, records, summary,
         columns=["alpha", "value", "value_index", "term_count", "closed_form"])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="permbinom", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({kernels.BACKEND} kernels)")
    sub = ap.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")

    sp = sub.add_parser("check", help="is a x + x^(r(q-1)+1) a PP of F_{q^2}?")
    _add_field_args(sp)
    sp.add_argument("--r", type=int, default=5)
    _add_element_args(sp)
    sp.add_argument("--no-hermite", action="store_true", help="skip the Hermite-criterion cross-check")
    fmt(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("search", help="classify all b-classes for q = -1 mod r")
    sp.add_argument("--r", type=int, default=5)
    sp.add_argument("--q-max", type=int, default=128)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--pp-only", action="store_true")
    sp.add_argument("--hermite-fraction", type=float, default=0.0)
    fmt(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("scan", help="PP classes split into r-th roots of unity and sporadic ones")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--q-max", type=int, required=True)
    sp.add_argument("--jobs", type=int, default=1)
    fmt(sp)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("verify", help="run a named verification")
    sp.add_argument("target", choices=sorted(TARGETS))
    sp.add_argument("--q-max", type=int)
    sp.add_argument("--errata", action="store_true", help="apply the documented corrections")
    sp.add_argument("--in-scope-only", action="store_true", help="judge theorem targets only on q >= r")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("galpha", help="regenerate g_alpha")
    sp.add_argument("alpha", type=int)
    fmt(sp)
    sp.set_defaults(func=cmd_galpha)

    sp = sub.add_parser("lambda", help="Lambda(q, alpha, a) values")
    _add_field_args(sp)
    sp.add_argument("--r", type=int, default=5)
    sp.add_argument("--alpha", type=int)
    _add_element_args(sp)
    fmt(sp)
    sp.set_defaults(func=cmd_lambda)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"permbinom {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
