"""Command-line entry point.

Exit status: 0 on success, 1 when a checked inequality fails, 2 on bad usage.
Big integers are emitted as decimal strings in JSON; degrees travel as
"num/den" strings.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import acceptance
from .asymptotics import appendix_bound_check, check_growth, crq, minimize_crq, q3_closed_form
from .coeff_oracle import CoeffOracleQuery, extract_coeff
from .coeffs import as_degree, coeff_row, eg_bound, format_degree, m_value
from .errors import DomainError, InvariantViolation, NumericalError
from .ffld import PointSet, ProgressionSpec
from .polyspace import combinatorial_bound_check, dim_V, proposition2_check, random_progression_free
from .search import DEFAULT_BUDGET, max_progression_free
from .setgame import find_valid_triples, read_cards

LAB_DEGREES = ["1", "4/3", "2", "8/3"]


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--q", type=int, default=3, help="field size / alphabet size (default 3)")
    p.add_argument("--n", type=int, help="dimension")
    p.add_argument("--d", help='degree as "num/den"')
    p.add_argument("--r", type=float, help="rate parameter in (0, 1)")
    p.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    p.add_argument("--spec", default="1,1,1", help='progression coefficients "alpha,beta,gamma"')
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv")
    p.add_argument("--one-based", action="store_true", help="card values are 1..3")
    p.add_argument("--cards", type=Path, help="CSV file of Set cards")
    p.add_argument("--points", type=Path, help="point set CSV (header p=<p>,n=<n>)")
    p.set_defaults(fmt="text")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="capset", description="Cap set bounds, rates and desk-scale checks.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()
    for name, help_text in [
        ("bound", "3 m_{(q-1)n/3} and the table of m_d"),
        ("coeffs", "coefficients of (1 + x + ... + x^(q-1))^n"),
        ("rate", "minimize C_{r,q} over r"),
        ("growth", "check m_{(q-1)n/3} <= C^n for n = 0..N"),
        ("lab", "rank checks of the dimension bounds on random sets"),
        ("oracle", "root-of-unity coefficient extraction against exact rows"),
        ("search", "largest progression-free set by branch and bound"),
        ("setgame", "valid triples among Set cards"),
        ("repro", "run the reproduction table"),
    ]:
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def _need_n(args):
    if args.n is None:
        raise UsageError("--n is required")
    return args.n


def _spec(args):
    try:
        a, b, c = (int(x) for x in args.spec.split(","))
    except ValueError as exc:
        raise UsageError(f"--spec must be three integers, got {args.spec!r}") from exc
    return ProgressionSpec(args.q, a, b, c)


def _emit(args, payload, text_lines, csv_rows=None):
    if args.fmt == "json":
        print(json.dumps(payload, separators=(",", ":")))
    elif args.fmt == "csv" and csv_rows is not None:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerows(csv_rows)
    else:
        print("\n".join(text_lines))


def cmd_bound(args):
    n = _need_n(args)
    q = args.q
    d = Fraction((q - 1) * n, 3)
    m = m_value(q, n, d)
    bound = eg_bound(q, n)
    row = coeff_row(q, n)
    lines = [f"q={q} n={n}: m_{{{format_degree(d)}}} = {m}, bound 3m = {bound}", "", "  d   m_d"]
    total = 0
    for j, c in enumerate(row):
        total += c
        lines.append(f"{j:>3}   {total}")
    _emit(args, {"q": q, "n": n, "m": str(m), "bound": str(bound)}, lines,
          [["q", "n", "m", "bound"], [q, n, m, bound]])
    return 0


def cmd_coeffs(args):
    n = _need_n(args)
    row = coeff_row(args.q, n)
    _emit(args, {"q": args.q, "n": n, "coeffs": [str(c) for c in row]},
          [" ".join(map(str, row))], [["j", "c_j"]] + [[j, c] for j, c in enumerate(row)])
    return 0


def cmd_rate(args):
    q = args.q
    if args.r is not None:
        value = crq(args.r, q)
        _emit(args, {"q": q, "r": args.r, "crq": value}, [f"C_(r={args.r},q={q}) = {value:.12g}"],
              [["q", "r", "crq"], [q, args.r, value]])
        return 0
    rep = minimize_crq(q)
    payload = rep.as_dict()
    lines = [f"q={q}: r* = {rep.r_star:.10f}, c* = {rep.c_star:.10f}, B = c*^2/(1-r*) = {rep.appendix_B:.6f}"]
    if q == 3:
        r, c = q3_closed_form()
        payload.update(closed_r=r, closed_c=c)
        lines.append(f"closed form: r = (sqrt(33)-1)/8 = {r:.10f}, c = (3/8) cbrt(207+33 sqrt(33)) = {c:.10f}")
    _emit(args, payload, lines, [list(payload), list(payload.values())])
    return 0


def cmd_growth(args):
    n_max = _need_n(args)
    r = args.r if args.r is not None else minimize_crq(args.q).r_star
    reports = [check_growth(args.q, n, r) for n in range(n_max + 1)]
    ok = all(rep["holds"] for rep in reports)
    payload = {"q": args.q, "r": r, "holds": ok,
               "rows": [{"n": rep["n"], "lhs": str(rep["lhs"]), "rhs": rep["rhs"], "holds": rep["holds"]}
                        for rep in reports]}
    lines = [f"q={args.q}, r={r:.10f}", "  n  m_{(q-1)n/3}  C^n  holds"]
    lines += [f"{rep['n']:>3}  {rep['lhs']}  {rep['rhs']:.6g}  {rep['holds']}" for rep in reports]
    appendix = appendix_bound_check(args.q, n_max // 3, r)
    lines.append(f"coarse bound at n={3 * (n_max // 3)}: {appendix['divisible']['lhs']} <= "
                 f"{appendix['divisible']['rhs']:.6g} ({appendix['holds']}); B = {appendix['B']:.6g}")
    _emit(args, payload, lines,
          [["n", "lhs", "rhs", "holds"]] + [[r_["n"], r_["lhs"], r_["rhs"], r_["holds"]] for r_ in reports])
    return 0 if ok and appendix["holds"] else 1


def cmd_lab(args):
    n = _need_n(args)
    spec = _spec(args)
    degrees = [as_degree(args.d)] if args.d else [as_degree(d) for d in LAB_DEGREES]
    if args.points:
        sets = [PointSet.from_csv(args.points.read_text())]
        if sets[0].p != args.q or sets[0].n != n:
            raise UsageError("point file does not match --q/--n")
    else:
        rng = random.Random(args.seed)
        sets = [random_progression_free(args.q, n, spec, rng) for _ in range(args.trials)]
    results = []
    for A in sets:
        for d in degrees:
            rep = dim_V(A, d, spec)
            prop = proposition2_check(A, d, spec)
            comb = combinatorial_bound_check(args.q, n, min(d, Fraction((args.q - 1) * n)))
            for key in ("lhs", "m_complement", "m_d"):
                comb[key] = str(comb[key])
            results.append({"size": len(A), "subspace": rep.as_dict(), "proposition": prop, "complement": comb})
    ok = all(r["proposition"]["holds"] and r["complement"]["holds"] for r in results)
    lines = ["size  d      dim_S  dim_V  lower  upper  prop(count<=bound)"]
    for r in results:
        s, p = r["subspace"], r["proposition"]
        lines.append(f"{r['size']:>4}  {s['d']:<6} {s['dim_S']:>5}  {s['dim_V']:>5}  {s['lower']:>5}  "
                     f"{s['upper']:>5}  {p['count']}<={p['bound']}")
    _emit(args, {"seed": args.seed, "results": results, "holds": ok}, lines,
          [["size", "d", "dim_S", "dim_V", "lower", "upper", "holds"]]
          + [[r["size"], r["subspace"]["d"], r["subspace"]["dim_S"], r["subspace"]["dim_V"],
              r["subspace"]["lower"], r["subspace"]["upper"], r["subspace"]["holds"]] for r in results])
    return 0 if ok else 1


def cmd_oracle(args):
    n = _need_n(args)
    r = args.r if args.r is not None else 0.6
    row = coeff_row(args.q, n)
    f = [float(c) for c in row]
    l = len(row)
    rows = []
    worst = 0.0
    for j, c in enumerate(row):
        got = extract_coeff(CoeffOracleQuery(f, j, l, r))
        err = abs(got - c) / c
        worst = max(worst, err)
        rows.append((j, c, got, err))
    ok = worst <= 1e-5
    lines = [f"q={args.q} n={n} l={l} r={r}: max relative error {worst:.3e}"]
    lines += [f"{j:>3}  {c}  {got:.10g}" for j, c, got, _ in rows]
    _emit(args, {"q": args.q, "n": n, "l": l, "r": r, "max_rel_error": worst, "holds": ok}, lines,
          [["j", "exact", "extracted", "rel_error"]] + [list(x) for x in rows])
    return 0 if ok else 1


def cmd_search(args):
    n = _need_n(args)
    res = max_progression_free(args.q, n, _spec(args), args.budget)
    if args.fmt == "csv":
        sys.stdout.write(res.witness.to_csv())
        return 0
    lines = [f"q={res.q} n={res.n} spec={res.spec.as_tuple()}: max size {res.max_size} "
             f"({'exhaustive' if res.exhaustive else 'budget exhausted'}, {res.nodes_explored} nodes)"]
    if n >= 1:
        lines.append(f"bound 3 m_{{(q-1)n/3}} = {eg_bound(args.q, n)}")
    lines += [str(v) for v in res.witness]
    _emit(args, res.as_dict(), lines)
    return 0


def cmd_setgame(args):
    if args.cards is None:
        raise UsageError("--cards is required")
    cards = read_cards(args.cards.read_text(), one_based=args.one_based)
    triples = find_valid_triples(cards)
    lines = ["no valid triples"] if not triples else [" ".join(map(str, t)) for t in triples]
    _emit(args, {"cards": len(cards), "triples": [list(t) for t in triples]}, lines,
          [["i", "j", "k"]] + [list(t) for t in triples])
    return 0


def cmd_repro(args):
    return 0 if acceptance.run_all(seed=args.seed) else 1


COMMANDS = {
    "bound": cmd_bound,
    "coeffs": cmd_coeffs,
    "rate": cmd_rate,
    "growth": cmd_growth,
    "lab": cmd_lab,
    "oracle": cmd_oracle,
    "search": cmd_search,
    "setgame": cmd_setgame,
    "repro": cmd_repro,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except InvariantViolation as exc:
        print(f"assertion failed: {exc}", file=sys.stderr)
        return 1
    except (UsageError, DomainError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
