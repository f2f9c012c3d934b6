"""Command-line front end.

Exit status: 0 on success, 1 on a usage or input error, 2 when a verification
or golden-file check finds a mismatch.
"""
import argparse
import csv
import io
import json
import sys

from . import extremal, formulas, kakeya, polyset, tables
from .errors import NonhittingError
from .gf import factor_prime_power, field_new, prime_powers
from .plane import intersection_distribution

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class Output:
    """Text lines plus optional JSON and CSV renderings of one command."""

    def __init__(self, text=(), data=None, rows=None, header=None, code=EXIT_OK):
        self.text = list(text)
        self.data = data
        self.rows = rows
        self.header = header
        self.code = code

    def render(self, fmt):
        if fmt == "json":
            return json.dumps(self.data, sort_keys=False) + "\n"
        if fmt == "csv":
            if self.rows is None:
                raise UsageError("this command has no CSV form")
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            if self.header:
                w.writerow(self.header)
            w.writerows(self.rows)
            return buf.getvalue()
        return "".join(line + "\n" for line in self.text)


def _field(args):
    if args.q is not None:
        p, s = factor_prime_power(args.q)
    elif args.p is not None:
        p, s = args.p, args.s or 1
        factor_prime_power(p ** s)
    else:
        raise UsageError("give the field with --q (or --p and --s)")
    return field_new(p, s)


def _counts(dist):
    return {str(i): n for i, n in dist.items()}


# -- subcommands -------------------------------------------------------------

def cmd_field(args):
    ctx = _field(args)
    data = {"q": ctx.q, "p": ctx.p, "s": ctx.s, "modulus": list(ctx.modulus),
            "generator": ctx.generator}
    mod = " + ".join((f"{a}" if a > 1 or e == 0 else "") + ("" if e == 0 else "x" if e == 1 else f"x^{e}")
                     for e, a in reversed(list(enumerate(ctx.modulus))) if a)
    text = [f"GF({ctx.q}) = GF({ctx.p})[x] / ({mod})", f"generator: {ctx.generator}"]
    return Output(text, data, [[ctx.q, ctx.p, ctx.s, ctx.generator]],
                  ["q", "p", "s", "generator"])


def _poly(args, ctx):
    if args.poly:
        return polyset.FieldPoly.parse(ctx, args.poly)
    if args.d is not None:
        return polyset.FieldPoly.monomial(ctx, args.d)
    raise UsageError("give the polynomial with --poly or --d")


def cmd_dist(args):
    ctx = _field(args)
    f = _poly(args, ctx)
    if args.c is not None and not args.all_c:
        row = polyset.multiplicity_distribution(f, args.c)
        data = {"q": ctx.q, "f": list(f.coeffs), "c": args.c, "M": _counts(row.dist)}
        rows = [[args.c, i, n] for i, n in row.dist.items()]
        return Output([f"c={args.c}: {row.dist.render('M')}"], data, rows, ["c", "i", "M_i"])
    prof = polyset.profile(f)
    text = [f"v: {prof.v.render('v')}"]
    rows = [["v", "", i, n] for i, n in prof.v.items()]
    if args.all_c:
        for r in prof.rows:
            text.append(f"c={r.c}: {r.dist.render('M')}")
            rows += [["M", r.c, i, n] for i, n in r.dist.items()]
        text.append(f"N_f: {sorted(prof.N_f)}")
    data = prof.to_dict()
    if not args.all_c:
        data.pop("rows")
    return Output(text, data, rows, ["kind", "c", "i", "count"])


def _families(args, ctx):
    fam_i = [args.i] if args.i is not None else None
    tag = formulas.PowerFamily(args.family).tag
    if tag in ("p^i", "p^i+1"):
        return [formulas.PowerFamily(tag, i) for i in (fam_i or range(ctx.s))]
    return [formulas.PowerFamily(tag)]


def cmd_verify(args):
    if args.qmax is not None:
        qs = prime_powers(2, args.qmax)
    else:
        qs = [_field(args).q]
    reports = []
    for q in qs:
        ctx = field_new(*factor_prime_power(q))
        for fam in _families(args, ctx):
            if not fam.applicable(ctx):
                if args.qmax is None:
                    fam.check(ctx)       # raises with the reason
                continue
            reports.append(formulas.verify_family(fam, ctx))
    if not reports:
        raise UsageError("no applicable (family, q) pair")
    bad = [r for r in reports if not r.ok]
    text = [f"{r.family} q={r.q} d={r.exponent}: "
            f"{'ok' if r.ok else f'{len(r.mismatches)} mismatches'}" for r in reports]
    for r in bad:
        for m in r.mismatches:
            text.append(f"  mismatch {r.family} q={r.q}: {json.dumps(m)}")
    text.append(f"{len(reports) - len(bad)}/{len(reports)} verified")
    data = {"reports": [r.to_dict() for r in reports], "ok": not bad}
    rows = [[r.family, r.q, r.exponent, r.rows_checked, len(r.mismatches)] for r in reports]
    return Output(text, data, rows, ["family", "q", "d", "rows", "mismatches"],
                  EXIT_MISMATCH if bad else EXIT_OK)


def _table_qs(args, default):
    return [args.q] if args.q is not None else list(default)


def cmd_table(args):
    which = args.which
    if which == 2:
        return _table2(args)
    if which == 4:
        return _table4(args)
    if args.q is None:
        raise UsageError(f"table {which} is a closed form; choose a field with --q")
    ctx = _field(args)
    text, rows, entries, bad = [], [], [], 0
    if which == 1:
        for fam, d, pred in tables.table1_rows(ctx.q, args.d):
            text.append(f"q={ctx.q} d={d} [{fam.name}]: {pred.dist.render('v')}")
            rows += [[ctx.q, d, fam.name, i, n] for i, n in pred.dist.items()]
            entries.append({"d": d, "family": fam.name, "v": _counts(pred.dist)})
            if args.check:
                bad += not formulas.verify_family(fam, ctx).ok
        header = ["q", "d", "family", "i", "v_i"]
    else:
        for fam, d, label, pred in tables.table3_rows(ctx.q, args.d):
            text.append(f"q={ctx.q} d={d} [{fam.name}] {label}: "
                        f"{pred.dist.render('u')}, |K|={pred.size}")
            rows += [[ctx.q, d, fam.name, label, i, n] for i, n in pred.dist.items()]
            entries.append({"d": d, "family": fam.name, "case": label,
                            "u": _counts(pred.dist), "size": pred.size})
            if args.check:
                f = polyset.FieldPoly.monomial(ctx, d)
                bad += pred.dist != kakeya.dk_distribution_direct(f, pred.c)
        header = ["q", "d", "family", "case", "i", "u_i"]
    if args.check:
        text.append("check: " + ("ok" if not bad else f"{bad} rows disagree with brute force"))
    return Output(text, {"table": which, "q": ctx.q, "rows": entries}, rows, header,
                  EXIT_MISMATCH if bad else EXIT_OK)


def _table2(args):
    golden = tables.load_table2()
    text, rows, entries, bad = [], [], [], []
    for q in _table_qs(args, tables.TABLE2_QS):
        got = tables.compute_table2(q)
        text.append(tables.render_table2_row(q, got))
        for group, v0, star in got:
            rows.append([q, " ".join(map(str, sorted(group))), v0, int(star)])
            entries.append({"q": q, "d": sorted(group), "v0": v0, "star": star})
        if args.check and (q not in golden or got != golden[q]):
            bad.append(q)
    text.append("* : neither d nor its inverse exponent lies in a known family")
    return _checked(args, 2, text, entries, rows, ["q", "d", "v0", "star"], bad)


def _table4(args):
    golden = tables.load_table4()
    text, rows, entries, bad = [], [], [], []
    for q in _table_qs(args, tables.TABLE4_QS):
        known = [k for k, _ in golden.get(q, [])]
        got = tables.compute_table4(q, known)
        text.append(tables.render_table4_row(q, got))
        for k, ds in got:
            rows.append([q, k, " ".join(map(str, sorted(ds)))])
            entries.append({"q": q, "size": k, "exponents": sorted(ds)})
        if args.check and (q not in golden or got != golden[q]):
            bad.append(q)
    return _checked(args, 4, text, entries, rows, ["q", "size", "exponents"], bad)


def _checked(args, which, text, entries, rows, header, bad):
    if args.check:
        text.append("check: " + ("ok" if not bad else f"golden mismatch at q = {bad}"))
    data = {"table": which, "rows": entries}
    if args.check:
        data["mismatched_q"] = bad
    return Output(text, data, rows, header, EXIT_MISMATCH if bad else EXIT_OK)


def cmd_kakeya(args):
    ctx = _field(args)
    if args.action == "census":
        census = kakeya.monomial_census(ctx, cap=args.cap, jobs=args.jobs)
        data = kakeya.census_to_dict(ctx.q, census)
        text = [f"({k},{{{','.join(map(str, sorted(ds)))}}})" for k, ds in census.items()]
        rows = [[ctx.q, k, " ".join(map(str, sorted(ds)))] for k, ds in census.items()]
        return Output([f"q={ctx.q}: " + ", ".join(text)], data, rows, ["q", "size", "exponents"])
    if args.c is None:
        raise UsageError("kakeya size needs --c")
    f = _poly(args, ctx)
    rep = kakeya.kakeya_report(f, args.c)
    code = EXIT_OK
    text = [f"u(DK): {rep.u.render('u')}", f"|K| = {rep.size}"]
    if args.direct:
        direct = kakeya.dk_distribution_direct(f, args.c)
        same = direct == rep.u
        text.append("direct line count: " + ("agrees" if same else f"DIFFERS {direct.render('u')}"))
        code = EXIT_OK if same else EXIT_MISMATCH
    return Output(text, rep.to_dict(), [[ctx.q, args.c, rep.size]], ["q", "c", "size"], code)


def cmd_spectrum(args):
    ctx = _field(args)
    mode = "partial" if args.partial else "exhaustive"
    budget = args.budget
    if budget is None:
        budget = extremal.DEFAULT_BUDGET if mode == "exhaustive" else 20_000
    res = extremal.spectrum(ctx, mode, budget=budget, seed=args.seed,
                            pinned=not args.no_pin, jobs=args.jobs)
    text = [f"Spec({ctx.q}) {'contains' if mode == 'partial' else '='} "
            "{" + ", ".join(map(str, res.attained)) + "}"]
    if mode == "partial":
        text += [f"  {v}: {src}" for v, src in sorted(res.evidence.items())]
    return Output(text, res.to_dict(), [[ctx.q, v] for v in res.attained], ["q", "u0"])


def cmd_example(args):
    ctx = _field(args)
    S = extremal.construct_example(args.kind, ctx)
    u = intersection_distribution(S)
    want = extremal.expected_distribution(args.kind, ctx.q)
    text = [f"{args.kind} in PG(2,{ctx.q}): {sorted(S.members)}"]
    if args.emit_distribution:
        text.append(f"u: {u.render('u')}")
    text.append("matches the stated distribution" if u == want
                else f"DIFFERS from stated {want.render('u')}")
    data = {"kind": args.kind, "q": ctx.q, "points": [list(P) for P in sorted(S.members)],
            "u": _counts(u), "expected": _counts(want), "ok": u == want}
    rows = [[args.kind, ctx.q, i, n] for i, n in u.items()]
    return Output(text, data, rows, ["kind", "q", "i", "u_i"],
                  EXIT_OK if u == want else EXIT_MISMATCH)


# -- parser ------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, help="field order (a prime power)")
    common.add_argument("--p", type=int, help="characteristic, with --s")
    common.add_argument("--s", type=int, help="extension degree, with --p")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output")
    fmt.add_argument("--csv", action="store_true", help="CSV output")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised runs")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")

    ap = _Parser(prog="nonhitting", description=(
        "Intersection distributions, non-hitting indices and Kakeya set sizes "
        "over GF(q) and PG(2,q)."))
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("field", parents=[common], help="field modulus and generator")
    sp.set_defaults(func=cmd_field)

    sp = sub.add_parser("dist", parents=[common], help="distributions of one polynomial")
    sp.add_argument("--poly", help="coefficients, constant term first: 0,0,1")
    sp.add_argument("--d", type=int, help="use the monomial x^d")
    sp.add_argument("--c", type=int, help="only the multiplicity row at c")
    sp.add_argument("--all-c", action="store_true", help="every multiplicity row")
    sp.set_defaults(func=cmd_dist)

    sp = sub.add_parser("verify", parents=[common], help="closed forms against brute force")
    sp.add_argument("--family", required=True,
                    help="one of " + ", ".join(formulas.FAMILY_TAGS))
    sp.add_argument("--i", type=int, help="parameter i for p^i and p^i+1 (default: all)")
    sp.add_argument("--qmax", type=int, help="every applicable prime power up to this")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("table", parents=[common], help="reproduce a table")
    sp.add_argument("which", type=int, choices=(1, 2, 3, 4))
    sp.add_argument("--d", type=int, help="only this exponent (tables 1 and 3)")
    sp.add_argument("--check", action="store_true",
                    help="compare with golden data or brute force; exit 2 on mismatch")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("kakeya", help="dual Kakeya sets")
    ksub = sp.add_subparsers(dest="action", required=True, parser_class=_Parser)
    kc = ksub.add_parser("census", parents=[common], help="sizes from all DK(d, c)")
    kc.add_argument("--cap", type=int, default=kakeya.CENSUS_CAP, help="largest q allowed")
    kc.set_defaults(func=cmd_kakeya)
    ks = ksub.add_parser("size", parents=[common], help="|K| for one DK(f, c)")
    ks.add_argument("--d", type=int, help="use the monomial x^d")
    ks.add_argument("--poly", help="coefficients, constant term first")
    ks.add_argument("--c", type=int, help="field element index c")
    ks.add_argument("--direct", action="store_true", help="also count lines directly")
    ks.set_defaults(func=cmd_kakeya)

    sp = sub.add_parser("spectrum", parents=[common], help="attainable u_0 of (q+1)-sets")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="every subset (default)")
    mode.add_argument("--partial", action="store_true", help="constructions plus sampling")
    sp.add_argument("--budget", type=int, help="subset budget or sample count")
    sp.add_argument("--no-pin", action="store_true", help="do not fix two points")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("example", parents=[common], help="build a named configuration")
    sp.add_argument("--kind", required=True, choices=extremal.EXAMPLE_KINDS)
    sp.add_argument("--emit-distribution", action="store_true",
                    help="print the full intersection distribution")
    sp.set_defaults(func=cmd_example)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    fmt = "json" if args.json else "csv" if args.csv else "text"
    try:
        out = args.func(args)
        text = out.render(fmt)
    except (UsageError, NonhittingError, ValueError) as e:
        print(f"nonhitting: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
