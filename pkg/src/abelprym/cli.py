"""Command-line interface: analyze, verify, search, table.

Exit codes: 0 success, 1 internal invariant violation, 2 input error.
"""

import argparse
import json
import sys

from . import conditions, forms, golden, table
from .abgroup import group_label, invariant_factors
from .coverdata import (
    eigenspace_table,
    genus_quotient,
    genus_total,
    parse_data,
    polarization_type,
    prym_dimension,
    ram_branch_counts,
)
from .errors import InputError, InvariantViolation
from .search import parse_spec_file, run_search, shapes

EXIT_OK, EXIT_INVARIANT, EXIT_INPUT = 0, 1, 2


def _catalog(path):
    if not path:
        return None
    try:
        return conditions.load_catalog(path)
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad catalog file {path}: {exc}") from None


def _char(n):
    return "(" + ",".join(map(str, n)) + ")"


def analyze_record(prym, trials, seed, catalog):
    datum = prym.datum
    report = conditions.full_report(prym, trials, seed, catalog)
    tab = eigenspace_table(prym)
    ram, br = ram_branch_counts(prym)
    return {
        "datum": str(prym),
        "G_tilde": group_label(invariant_factors(datum.group)),
        "H": group_label(invariant_factors(prym.H)),
        "G": group_label(invariant_factors(datum.group, prym.H)),
        "g_tilde": genus_total(datum),
        "g": genus_quotient(prym),
        "p": prym_dimension(prym),
        "ram": ram,
        "br": br,
        "eigenspaces": [
            {"character": list(n), "dim": tab.dims[n], "anti_invariant": n in tab.anti} for n in datum.characters
        ],
        "polarization": list(polarization_type(prym)),
        "conditions": report.to_json(),
    }


def _verdict_text(v):
    v_note = f" ({v['note']})" if v["note"] else ""
    return ("established" if v["established"] else "not established") + v_note


def print_analysis(rec, out):
    c = rec["conditions"]
    print(f"datum: {rec['datum']}", file=out)
    print(f"groups: G~ = {rec['G_tilde']}, H = {rec['H']}, G = {rec['G']}", file=out)
    print(f"genera: g~ = {rec['g_tilde']}, g = {rec['g']}, p = {rec['p']}", file=out)
    print(f"H-cover: {rec['ram']} ramification points, {rec['br']} branch points", file=out)
    print("eigenspaces (* = anti-invariant):", file=out)
    for e in rec["eigenspaces"]:
        mark = " *" if e["anti_invariant"] else ""
        print(f"  {_char(e['character'])}: {e['dim']}{mark}", file=out)
    print(f"dim P(G~) = {c['dim_PG']}, s - 3 = {c['s_minus_3']}", file=out)
    b1 = "yes" if c["cond_B1"] else "no"
    if c["b1_self_paired"]:
        b1 += f" ({conditions.SELF_PAIRED_B1_NOTE})"
    print(f"(A): {'yes' if c['cond_A'] else 'no'}", file=out)
    print(f"(B1): {b1}", file=out)
    print(f"(B): {_verdict_text(c['cond_B'])}", file=out)
    print(f"(B2-lite): {_verdict_text(c['cond_B2'])}", file=out)
    print(f"polarization type: {tuple(rec['polarization'])}", file=out)


def cmd_analyze(args, out):
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    data = parse_data(text)
    if not data:
        raise InputError(f"no datum found in {args.file}")
    catalog = _catalog(args.catalog)
    records = [analyze_record(p, args.trials, args.seed, catalog) for p in data]
    if args.json:
        print(json.dumps(records, indent=2), file=out)
    else:
        for i, rec in enumerate(records):
            if i:
                print(file=out)
            print_analysis(rec, out)
    return EXIT_OK


def cmd_verify(args, out):
    examples = golden.EXAMPLES
    if args.perturb:
        try:
            examples = golden.perturbed(examples, args.perturb)
        except (ValueError, AttributeError) as exc:
            raise InputError(f"bad --perturb target {args.perturb!r}: {exc}") from None
    results = []
    for i, ex in enumerate(examples, start=1):
        diffs = golden.check(ex)
        results.append({
            "example": i,
            "name": ex.name,
            "datum": ex.datum,
            "passed": not diffs,
            "mismatches": [{"field": f, "expected": repr(e), "actual": repr(a)} for f, e, a in diffs],
        })
    passed = sum(r["passed"] for r in results)
    if args.json:
        print(json.dumps(results, indent=2), file=out)
    else:
        for r in results:
            print(f"{'PASS' if r['passed'] else 'FAIL'} {r['example']} {r['name']}: {r['datum']}", file=out)
            for m in r["mismatches"]:
                print(f"  {m['field']}: expected {m['expected']}, got {m['actual']}", file=out)
        print(f"{passed}/{len(results)} examples pass", file=out)
    return EXIT_OK if passed == len(results) else EXIT_INVARIANT


def _search_rows(args):
    spec = parse_spec_file(args.spec)
    overrides = {}
    if args.trials is not None:
        overrides["trials"] = args.trials
    if args.seed is not None:
        overrides["seed"] = args.seed
    if overrides:
        spec = type(spec)(**{**spec.__dict__, **overrides})
    results = run_search(spec, workers=args.workers, catalog=_catalog(args.catalog))
    pairs = [table.row_from_result(r) for r in results]
    return spec, [p[0] for p in pairs], [p[1] for p in pairs]


def _emit(rows, extras, args, out):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            table.write_csv(rows, fh)
    else:
        table.write_csv(rows, out)
    if args.json:
        with open(args.json, "w", encoding="utf-8", newline="") as fh:
            fh.write(table.json_text(rows, extras))
    print(table.FLAG_FOOTNOTE, file=sys.stderr)
    if any(r.B1 == "Y*" for r in rows):
        print(table.SELF_PAIRED_FOOTNOTE, file=sys.stderr)


def cmd_search(args, out):
    _, rows, extras = _search_rows(args)
    _emit(rows, extras, args, out)
    return EXIT_OK


def cmd_table(args, out):
    spec, rows, extras = _search_rows(args)
    _emit(rows, extras, args, out)
    if args.import_file:
        try:
            with open(args.import_file, encoding="utf-8", newline="") as fh:
                imported, issues = table.read_import(fh)
        except OSError as exc:
            raise InputError(f"cannot read {args.import_file}: {exc.strerror}") from None
        searched = set(shapes(spec))

        def in_scope(row):
            return row.r in spec.s and table.label_factors(row.G_tilde) in searched

        cmp = table.compare(rows, imported, in_scope, issues)
        for line in cmp.summary_lines():
            print(line, file=sys.stderr)
        if args.report:
            with open(args.report, "w", encoding="utf-8") as fh:
                json.dump(cmp.to_json(), fh, indent=2, ensure_ascii=False)
                fh.write("\n")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="abelprym", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def condition_opts(p):
        p.add_argument("--trials", type=int, default=None, help="branch-point tuples tried for injectivity")
        p.add_argument("--seed", type=int, default=None, help="seed for the random branch-point tuples")
        p.add_argument("--catalog", help="CSV of known-special quotient families for (B2)")

    p = sub.add_parser("analyze", help="report invariants and conditions for data in a file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="print JSON instead of text")
    condition_opts(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="replay the worked examples against their expected values")
    p.add_argument("--json", action="store_true")
    p.add_argument("--perturb", metavar="INDEX.FIELD", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    for name, func, helptext in (
        ("search", cmd_search, "enumerate data from a spec file and classify them"),
        ("table", cmd_table, "emit the classification table, optionally compared to imported rows"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("spec")
        p.add_argument("--out", help="CSV output path (default stdout)")
        p.add_argument("--json", help="JSON output path")
        p.add_argument("--workers", type=int, default=1, help="worker processes for classification")
        condition_opts(p)
        if name == "table":
            p.add_argument("--import", dest="import_file", help="CSV of transcribed rows to compare against")
            p.add_argument("--report", help="write the comparison report as JSON")
        p.set_defaults(func=func)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "trials", None) is None and args.command == "analyze":
        args.trials = forms.DEFAULT_TRIALS
    if getattr(args, "seed", None) is None and args.command == "analyze":
        args.seed = 0
    try:
        if getattr(args, "trials", None) is not None and args.trials < 1:
            raise InputError("--trials must be at least 1")
        if getattr(args, "workers", 1) < 1:
            raise InputError("--workers must be at least 1")
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as exc:
        print(f"internal invariant violated: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
