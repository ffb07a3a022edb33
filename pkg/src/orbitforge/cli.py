"""Command-line entry point.

Exit codes: 0 success, 1 a verification or theorem hypothesis failed,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from orbitforge import orbits, plmap, sharkovskii, spectral, symbolic

log = logging.getLogger("orbitforge")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
ORACLE_DEFAULT_DEPTH = 12


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {value}")
    return value


def _emit(payload, fmt: str, text: str | None = None) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(text if text is not None else payload)


def _load_map(args) -> plmap.PLMap:
    if getattr(args, "map_file", None):
        return plmap.PLMap.from_json(Path(args.map_file).read_text())
    if args.map == "thm1":
        return plmap.make_theorem1_map()
    if args.n is None or args.n < 2:
        raise UsageError("--map fn needs --n >= 2")
    return plmap.make_family_map(args.n)


def _reference_counts(args, k_max: int) -> list[int] | None:
    if getattr(args, "map_file", None):
        return None
    return orbits.lucas_list(k_max) if args.map == "thm1" else orbits.c_sequence(args.n, k_max)


# -- subcommands -------------------------------------------------------------

def cmd_table(args) -> int:
    table = orbits.build_table(args.n_max, args.m_max)
    if args.format == "csv":
        sys.stdout.write(table.to_csv())
    elif args.format == "json":
        print(json.dumps(table.to_dict()))
    else:
        sys.stdout.write(table.to_text())
    return EXIT_OK


def cmd_count(args) -> int:
    value = orbits.orbit_count(args.n, args.m)
    _emit({"n": args.n, "m": args.m, "orbits": value}, args.format, str(value))
    return EXIT_OK


def cmd_lucas(args) -> int:
    value = orbits.lucas(args.k)
    _emit({"k": args.k, "lucas": value}, args.format, str(value))
    return EXIT_OK


def _suite_properties(args) -> list[dict]:
    ns = [args.n] if args.n is not None else list(range(2, 7))
    out = []
    for n in ns:
        if n < 2:
            raise UsageError("property suite needs --n >= 2")
        for res in orbits.check_properties(n, args.k_max):
            out.append({"suite": "properties", "n": n, **res.to_dict()})
    out.append({"suite": "properties", **orbits.check_lucas_sum(60).to_dict()})
    return out


def _suite_oracle(args) -> list[dict]:
    g = _load_map(args)
    # the exact iterates grow exponentially; only an explicit --suite oracle goes deeper
    k_max = args.k_max if args.suite == "oracle" else min(args.k_max, ORACLE_DEFAULT_DEPTH)
    found = plmap.periodic_point_counts(g, k_max)
    expected = _reference_counts(args, k_max)
    out = []
    if expected is None:
        sym = symbolic.crossing_counts(g, k_max)
        bad = next((k for k in range(k_max) if found[k] != sym[k]), None)
        out.append({"suite": "oracle", "property": "oracle=crossings", "range": f"1<=k<={k_max}",
                    "pass": bad is None, **({"counterexample": {"k": bad + 1}} if bad is not None else {})})
        return out
    bad = next((k for k in range(k_max) if found[k] != expected[k]), None)
    out.append({"suite": "oracle", "property": "points", "range": f"1<=k<={k_max}",
                "pass": bad is None,
                **({"counterexample": {"k": bad + 1, "oracle": found[bad], "expected": expected[bad]}}
                   if bad is not None else {})})
    sel = 1 if args.map == "thm1" else args.n
    bad = None
    for m in range(1, k_max + 1):
        o, e = plmap.count_minimal_period_orbits_oracle(g, m), orbits.orbit_count(sel, m)
        if o != e:
            bad = {"m": m, "oracle": o, "expected": e}
            break
    out.append({"suite": "oracle", "property": "orbits", "range": f"1<=m<={k_max}",
                "pass": bad is None, **({"counterexample": bad} if bad else {})})
    return out


def _suite_symbolic(args) -> list[dict]:
    g = _load_map(args)
    out = []
    sym = symbolic.crossing_counts(g, args.k_max)
    expected = _reference_counts(args, args.k_max)
    if expected is None:
        expected = plmap.periodic_point_counts(g, min(args.k_max, ORACLE_DEFAULT_DEPTH))
    bad = next((k for k in range(len(expected)) if sym[k] != expected[k]), None)
    out.append({"suite": "symbolic", "property": "crossings", "range": f"1<=k<={len(expected)}",
                "pass": bad is None, **({"counterexample": {"k": bad + 1}} if bad is not None else {})})
    if args.map == "fn" and not getattr(args, "map_file", None):
        n = args.n
        direct = orbits.b_states(n, args.k_max)
        seq = symbolic.count_sequence(g, args.k_max)
        bad = None
        for k, (state, b) in enumerate(zip(seq, direct), 1):
            for i in range(1, 2 * n + 1):
                for j in range(1, 2 * n + 1):
                    lo, hi = orbits.family_pair(n, j)
                    if state[(i - 1, (Fraction(lo), Fraction(hi)))] != b[i][j]:
                        bad = {"k": k, "i": i, "j": j}
                        break
                if bad:
                    break
            if bad:
                break
        out.append({"suite": "symbolic", "property": "branch-recursion", "range": f"1<=k<={args.k_max}",
                    "pass": bad is None, **({"counterexample": bad} if bad else {})})
    return out


def _suite_mobius(args) -> list[dict]:
    phis = [orbits.lucas_phi, orbits.power2_phi] + [orbits.c_phi(n) for n in range(2, 6)]
    return [{"suite": "mobius", **r.to_dict()} for r in orbits.check_inversion(args.m_max, phis)]


def _suite_thm1c(args) -> list[dict]:
    rep = spectral.thm1c_checks(max(args.m_max, 8))
    ok = rep["strictly_increasing"] and rep["ratio_error"] < 1e-2
    return [{"suite": "thm1c", "property": "increase+golden-ratio", "range": f"6<=m<={rep['m_max']}",
             "pass": ok, "detail": rep}]


SUITES = {
    "properties": _suite_properties,
    "oracle": _suite_oracle,
    "symbolic": _suite_symbolic,
    "mobius": _suite_mobius,
    "thm1c": _suite_thm1c,
}


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.suite == "all" and args.map == "fn" and args.n is None:
        args.n = 2
    report = []
    for name in names:
        log.info("running suite %s", name)
        report.extend(SUITES[name](args))
    passed = all(r["pass"] for r in report)
    if args.format == "json":
        print(json.dumps({"pass": passed, "checks": report}, indent=2, default=str))
    else:
        for r in report:
            tag = "PASS" if r["pass"] else "FAIL"
            extra = f" n={r['n']}" if "n" in r else ""
            print(f"{tag}  {r['suite']}:{r['property']}{extra}  [{r['range']}]")
            if not r["pass"] and "counterexample" in r:
                print(f"      counterexample: {r['counterexample']}")
    return EXIT_OK if passed else EXIT_FAIL


def cmd_oracle(args) -> int:
    g = _load_map(args)
    payload = {"map": "file" if args.map_file else args.map}
    if args.k is not None:
        payload["k"] = args.k
        payload["points"] = plmap.count_periodic_points(g, args.k)
    if args.m is not None:
        payload["m"] = args.m
        payload["orbits"] = plmap.count_minimal_period_orbits_oracle(g, args.m)
    if len(payload) == 1:
        raise UsageError("oracle needs --k and/or --m")
    text = "\n".join(f"{k}={v}" for k, v in payload.items())
    _emit(payload, args.format, text)
    return EXIT_OK


def cmd_lambda(args) -> int:
    root = spectral.dominant_root(args.n, args.tol)
    payload = {
        "n": args.n,
        "lambda": str(root.decimal(args.digits)),
        "tol": args.tol,
        "bracket": [str(root.lo), str(root.hi)],
    }
    text = f"{payload['lambda']}\nbracket [{root.lo}, {root.hi}]"
    _emit(payload, args.format, text)
    return EXIT_OK


def cmd_order(args) -> int:
    ordered = sharkovskii.sharkovskii_sorted(args.values)
    _emit({"ordered": ordered}, args.format, " < ".join(map(str, ordered)))
    return EXIT_OK


def cmd_bound(args) -> int:
    try:
        bound = sharkovskii.theorem3_bound(args.s, args.t)
    except sharkovskii.HypothesisError as exc:
        _emit({"s": args.s, "t": args.t, "error": str(exc)}, args.format, f"error: {exc}")
        return EXIT_FAIL
    _emit({"s": args.s, "t": args.t, "bound": bound.value, "status": bound.status},
          args.format, f"{bound.value}" + ("" if bound.status == sharkovskii.SHARP else f" ({bound.status})"))
    return EXIT_OK


def cmd_scan(args) -> int:
    report = orbits.scan_conjectures(args.n_max, args.m_max)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(f"equalities checked: {report['equalities_checked']}, all hold: {report['equalities_hold']}")
        print(f"strict inequalities checked: {report['strict_checked']}, "
              f"counterexamples: {len(report['strict_counterexamples'])}")
        for row in report["strict_counterexamples"]:
            print(f"  {row}")
    return EXIT_OK if report["equalities_hold"] else EXIT_FAIL


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orbitforge", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, formats=("text", "json")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=formats, default="text")
        p.set_defaults(func=func)
        return p

    p = add("table", cmd_table, "orbit-count table", ("text", "csv", "json"))
    p.add_argument("--n-max", type=_positive, default=5)
    p.add_argument("--m-max", type=_positive, default=31)

    p = add("count", cmd_count, "orbits of one minimal period")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--m", type=_positive, required=True)

    p = add("lucas", cmd_lucas, "k-th Lucas number (1, 3, 4, 7, ...)")
    p.add_argument("--k", type=_positive, required=True)

    p = add("verify", cmd_verify, "run verification suites")
    p.add_argument("--suite", choices=["all", *SUITES], default="all")
    p.add_argument("--n", type=_positive)
    p.add_argument("--k-max", type=_positive, default=40)
    p.add_argument("--m-max", type=_positive, default=200)
    p.add_argument("--map", choices=["thm1", "fn"], default="thm1")
    p.add_argument("--map-file")

    p = add("oracle", cmd_oracle, "exact brute-force counts for a map")
    p.add_argument("--map", choices=["thm1", "fn"], default="thm1")
    p.add_argument("--map-file", help='JSON {"nodes": [[x_num, x_den, y_num, y_den], ...]}')
    p.add_argument("--n", type=_positive)
    p.add_argument("--k", type=_positive, help="count solutions of f^k(x) = x")
    p.add_argument("--m", type=_positive, help="count orbits of minimal period m")

    p = add("lambda", cmd_lambda, "growth constant for index n")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--tol", type=_positive_float, default=1e-12)
    p.add_argument("--digits", type=_positive, default=20)

    p = add("order", cmd_order, "sort periods in Sharkovskii order")
    p.add_argument("values", type=_positive, nargs="+")

    p = add("bound", cmd_bound, "sharp lower bound on period-t orbits given earliest period s")
    p.add_argument("--s", type=_positive, required=True)
    p.add_argument("--t", type=_positive, required=True)

    p = add("scan", cmd_scan, "scan the power-of-two and doubling relations")
    p.add_argument("--n-max", type=_positive, default=5)
    p.add_argument("--m-max", type=_positive, default=63)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (plmap.PieceCapExceeded, plmap.DegenerateIterateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
