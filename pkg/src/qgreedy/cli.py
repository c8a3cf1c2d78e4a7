"""Command-line front end.

Subcommands compute single objects (greedy, cluster-var, standard,
triangular), re-expand elements (expand), run per-vector checks (check),
batch scans (scan), the built-in verification suites (verify), and
administer the cluster-variable cache (cache).

Exit codes: 0 on success, 1 when a requested check or suite fails (the
first witness is printed) or an internal correctness trap fires, 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bases, clusters
from .errors import ClusterAlgebraError
from .greedy import (
    check_divisibility_axiom,
    check_support_axiom,
    classical_greedy,
    is_imaginary_root,
    quantum_greedy,
)
from .laurent import LaurentV, quantum_binomial
from .qtorus import expand_in_cluster

CACHE_ENV = "QGREEDY_CACHE_DIR"


def _dump(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=True)


def _cache_from(args) -> clusters.ClusterCache:
    directory = args.cache_dir or os.environ.get(CACHE_ENV)
    return clusters.ClusterCache(directory)


def _print_pointed(element, fmt: str) -> None:
    if fmt == "json":
        print(_dump(element.to_json()))
    elif fmt == "latex":
        for (p, q), coeff in sorted(element.grid().items()):
            print(f"e({p},{q}) = {coeff.latex()}")
    else:
        print(f"pointed at ({element.a1}, {element.a2}), "
              f"b={element.b}, c={element.c}")
        for (p, q), coeff in sorted(element.grid().items()):
            print(f"  e({p},{q}) = {coeff}")


def _print_torus(element, fmt: str, names=("X_1", "X_2")) -> None:
    if fmt == "json":
        print(_dump(element.to_json()))
    elif fmt == "latex":
        print(element.latex(names))
    else:
        print(element)


def _print_expansion(expansion, fmt: str, symbol: str) -> None:
    if fmt == "json":
        print(_dump(expansion.to_json()))
        return
    for (i, j), coeff in sorted(expansion.coeffs.items(), reverse=True):
        rendered = coeff.latex() if fmt == "latex" else str(coeff)
        print(f"{symbol}[{i},{j}] = {rendered}")


def _cmd_greedy(args) -> int:
    if args.classical:
        element = classical_greedy(args.b, args.c, args.a[0], args.a[1])
        if args.format == "json":
            print(_dump(element.to_json()))
        else:
            print(f"pointed at ({element.a1}, {element.a2}), "
                  f"b={element.b}, c={element.c} (commutative)")
            for (p, q), n in sorted(element.grid.items()):
                print(f"  e({p},{q}) = {n}")
        return 0
    _print_pointed(quantum_greedy(args.b, args.c, args.a[0], args.a[1]), args.format)
    return 0


def _cmd_cluster_var(args) -> int:
    element = clusters.cluster_variable(args.b, args.c, args.m, _cache_from(args))
    _print_torus(element, args.format)
    return 0


def _cmd_standard(args) -> int:
    element = clusters.standard_monomial(args.b, args.c, args.a[0], args.a[1],
                                         _cache_from(args))
    _print_torus(element, args.format)
    return 0


def _cmd_triangular(args) -> int:
    cache = _cache_from(args)
    if args.r_table:
        expansion = bases.triangular_r_coeffs(args.b, args.c, args.a[0], args.a[1], cache)
        _print_expansion(expansion, args.format, "r")
        return 0
    element = bases.triangular_element(args.b, args.c, args.a[0], args.a[1], cache)
    _print_torus(element, args.format)
    return 0


def _cmd_expand(args) -> int:
    cache = _cache_from(args)
    a1, a2 = args.a
    if args.element == "greedy":
        element = quantum_greedy(args.b, args.c, a1, a2).to_torus()
    else:
        element = bases.triangular_element(args.b, args.c, a1, a2, cache)
    if args.standard:
        coeffs = bases.expand_in_standard_basis(element, args.b, args.c, cache)
        expansion = bases.BasisExpansion("standard", (a1, a2), coeffs)
        _print_expansion(expansion, args.format, "M")
        return 0
    target = args.cluster
    expanded = expand_in_cluster(element, target, args.b, args.c)
    _print_torus(expanded, args.format, (f"X_{{{target}}}", f"X_{{{target + 1}}}"))
    return 0


def _cmd_check(args) -> int:
    cache = _cache_from(args)
    b, c = args.b, args.c
    a1, a2 = args.a
    checks = args.checks.split(",")
    unknown = [ch for ch in checks if ch not in bases.SCAN_CHECKS]
    if unknown:
        print(f"unknown checks: {', '.join(unknown)}", file=sys.stderr)
        return 2
    needs_imaginary = {"support", "divisibility", "triangular-support"}
    bad = [ch for ch in checks if ch in needs_imaginary
           and not is_imaginary_root(b, c, a1, a2)]
    if bad:
        print(f"({a1}, {a2}) is not a positive imaginary root; "
              f"cannot run: {', '.join(bad)}", file=sys.stderr)
        return 2
    results = bases._cell_results(b, c, a1, a2, checks, 0, cache)
    status = 0
    for result in results:
        if result.passed:
            print(f"PASS {result.check} at ({a1}, {a2})")
        else:
            status = 1
            print(f"FAIL {result.check} at ({a1}, {a2}): {_dump(result.witness)}")
    return status


def _cmd_scan(args) -> int:
    checks = args.checks.split(",")
    directory = args.cache_dir or os.environ.get(CACHE_ENV)
    report = bases.scan(args.b, args.c, args.bound, checks,
                        cluster_range=args.cluster_range,
                        jobs=args.jobs, cache_dir=directory)
    if args.format == "json":
        print(_dump(report.to_json()))
    else:
        failures = report.failures()
        print(f"scan b={report.b} c={report.c} bound={report.bound} "
              f"checks={','.join(report.checks)} "
              f"clusters={','.join(map(str, report.clusters_covered))}")
        print(f"{len(report.results)} results, {len(failures)} failures")
        for result in failures:
            print(f"  FAIL {result.check} at {result.a}: {_dump(result.witness)}")
    return 1 if report.failures() else 0


def _cmd_verify(args) -> int:
    cache = _cache_from(args)
    checks = _VERIFY_SUITES[args.suite](cache)
    failures = 0
    for name, ok, detail in checks:
        if ok:
            print(f"PASS {args.suite}/{name}" + (f" ({detail})" if detail else ""))
        else:
            failures += 1
            print(f"FAIL {args.suite}/{name}: {detail}")
    print(f"suite {args.suite}: {len(checks) - failures} passed, {failures} failed")
    return 1 if failures else 0


def _cmd_cache(args) -> int:
    directory = args.cache_dir or os.environ.get(CACHE_ENV)
    if directory is None:
        print("no cache directory configured (use --cache-dir or "
              f"{CACHE_ENV})", file=sys.stderr)
        return 2
    cache = clusters.ClusterCache(directory)
    if args.action == "stats":
        stats = cache.stats()
        print(f"{stats['entries']} entries in {stats['directory']}")
    else:
        removed = cache.clear()
        print(f"cleared {removed} entries from {directory}")
    return 0


# -- verification suites -------------------------------------------------------


def _laurent(terms: dict[int, int]) -> LaurentV:
    return LaurentV(terms)


def _suite_paper_examples(cache) -> list[tuple[str, bool, str]]:
    out = []
    binom_4 = _laurent({6: 1, 2: 1, -2: 1, -6: 1})
    binom_3 = _laurent({6: 1, 0: 1, -6: 1})
    out.append(("qbinomial-4-1-at-v2", quantum_binomial(4, 1, 2) == binom_4,
                str(quantum_binomial(4, 1, 2))))
    out.append(("qbinomial-3-1-at-v3", quantum_binomial(3, 1, 3) == binom_3,
                str(quantum_binomial(3, 1, 3))))
    element = quantum_greedy(2, 3, 3, 4)
    expected = {
        (1, 0): binom_4,
        (0, 1): binom_3,
        (1, 1): binom_4,
        (2, 1): _laurent({2: 1, 0: -1, -2: 1}),
    }
    for key, value in expected.items():
        actual = element.coefficient(*key)
        out.append((f"greedy-2-3-pointed-3-4-e{key[0]}{key[1]}",
                    actual == value, str(actual)))
    positive, witness = element.is_positive()
    out.append(("greedy-2-3-pointed-3-4-has-negative-coefficient",
                not positive and witness[:2] == (2, 1),
                f"witness {witness[:2] if witness else None}"))
    commutative = classical_greedy(2, 3, 3, 4)
    classical_ok = (commutative.coefficient(1, 0) == 4
                    and commutative.coefficient(0, 1) == 3
                    and commutative.coefficient(2, 1) == 1)
    out.append(("classical-2-3-pointed-3-4", classical_ok,
                f"e(1,0)={commutative.coefficient(1, 0)} "
                f"e(0,1)={commutative.coefficient(0, 1)} "
                f"e(2,1)={commutative.coefficient(2, 1)}"))
    return out


_FINITE_PERIODS = {(1, 1): 5, (1, 2): 6, (2, 1): 6, (1, 3): 8, (3, 1): 8}


def _suite_finite_type(cache) -> list[tuple[str, bool, str]]:
    out = []
    for (b, c), period in _FINITE_PERIODS.items():
        ok = all(
            clusters.cluster_variable(b, c, m + period, cache)
            == clusters.cluster_variable(b, c, m, cache)
            for m in (0, 1, 2))
        out.append((f"mutation-period-{b}-{c}", ok, f"period {period}"))
    for (b, c) in ((1, 1), (1, 2), (1, 3)):
        mismatch = None
        for a1 in range(-3, 4):
            for a2 in range(-3, 4):
                located = clusters.find_cluster_monomial(b, c, a1, a2, cache=cache)
                if located is None:
                    mismatch = (a1, a2, "no cluster monomial found")
                    break
                m, s, t = located
                monomial = clusters.quantum_cluster_monomial(b, c, m, s, t, cache)
                if monomial != quantum_greedy(b, c, a1, a2).to_torus():
                    mismatch = (a1, a2, f"differs from X_{m}^{s} X_{m + 1}^{t}")
                    break
            if mismatch:
                break
        out.append((f"greedy-equals-cluster-monomial-{b}-{c}", mismatch is None,
                    str(mismatch) if mismatch else "|a| <= 3"))
        trivial = all(
            len(bases.triangular_r_coeffs(b, c, a1, a2, cache).coeffs) == 1
            for a1 in range(0, 4) for a2 in range(0, 4))
        out.append((f"triangular-equals-greedy-{b}-{c}", trivial, "0 <= a <= 3"))
    return out


def _suite_axioms(cache) -> list[tuple[str, bool, str]]:
    out = []
    for (b, c) in ((2, 2), (2, 3)):
        cells = [(a1, a2) for a1 in range(1, 6) for a2 in range(1, 6)
                 if is_imaginary_root(b, c, a1, a2)]
        bad = None
        for a1, a2 in cells:
            element = quantum_greedy(b, c, a1, a2)
            ok_s, witness_s = check_support_axiom(element)
            ok_d, witness_d = check_divisibility_axiom(element)
            if not ok_s:
                bad = (a1, a2, "support", witness_s)
                break
            if not ok_d:
                bad = (a1, a2, "divisibility", witness_d)
                break
        out.append((f"axioms-{b}-{c}", bad is None,
                    str(bad) if bad else f"{len(cells)} imaginary vectors"))
    return out


def _suite_triangular(cache) -> list[tuple[str, bool, str]]:
    out = []
    for (b, c) in ((1, 1), (2, 2), (2, 3)):
        failure = None
        for a1 in range(0, 4):
            for a2 in range(0, 4):
                try:
                    bases.triangular_element(b, c, a1, a2, cache)
                except ClusterAlgebraError as exc:
                    failure = (a1, a2, str(exc))
                    break
                table = bases.triangular_r_coeffs(b, c, a1, a2, cache)
                not_invariant = [idx for idx, r in table.coeffs.items()
                                 if not r.is_bar_invariant()]
                if not_invariant:
                    failure = (a1, a2, f"r not bar-invariant at {not_invariant[0]}")
                    break
            if failure:
                break
        out.append((f"triangular-pipeline-{b}-{c}", failure is None,
                    str(failure) if failure else "0 <= a <= 3"))
    return out


_NO_FAILURE_PAIRS = ((1, 5), (1, 6), (2, 4), (2, 6), (3, 3), (3, 6))
_FAILURE_VECTORS_2_3 = {(3, 4), (3, 5), (5, 4), (5, 7), (5, 8), (7, 5)}


def _suite_conjecture_evidence(cache) -> list[tuple[str, bool, str]]:
    out = []
    for (b, c) in _NO_FAILURE_PAIRS:
        report = bases.scan(b, c, 6, ["greedy-positivity"])
        out.append((f"positivity-no-failure-{b}-{c}-bound-6",
                    not report.failures(), f"{len(report.results)} vectors"))
    report = bases.scan(2, 3, 8, ["greedy-positivity"])
    found = report.failing_vectors("greedy-positivity")
    out.append(("positivity-failures-2-3-bound-8",
                _FAILURE_VECTORS_2_3 <= found,
                f"found {sorted(found)}"))
    for (b, c) in ((2, 2), (2, 3)):
        report = bases.scan(b, c, 3, ["r-positivity"])
        counterexamples = report.failing_vectors("r-positivity")
        out.append((f"r-positivity-evidence-{b}-{c}-bound-3", True,
                    f"{len(counterexamples)} counterexamples recorded"))
    verdict = bases.check_triangular_support_conjecture(2, 2, 1, 1, cache)
    out.append(("triangular-support-2-2-pointed-1-1", True,
                f"holds={verdict.holds} agreements={verdict.agreements}"))
    return out


_VERIFY_SUITES = {
    "paper-examples": _suite_paper_examples,
    "finite-type": _suite_finite_type,
    "axioms": _suite_axioms,
    "triangular": _suite_triangular,
    "conjecture-evidence": _suite_conjecture_evidence,
}


# -- argument parsing -----------------------------------------------------------


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _add_bc(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-b", type=_positive, required=True,
                        help="first exchange exponent")
    parser.add_argument("-c", type=_positive, required=True,
                        help="second exchange exponent")


def _add_common(parser: argparse.ArgumentParser, formats=("text", "json", "latex")) -> None:
    parser.add_argument("--format", choices=formats, default="text")
    parser.add_argument("--cache-dir", default=None,
                        help=f"cluster-variable cache directory (default: ${CACHE_ENV})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgreedy",
        description="Exact computations in rank 2 quantum cluster algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("greedy", help="quantum (or commutative) greedy element")
    _add_bc(p)
    p.add_argument("-a", nargs=2, type=int, required=True, metavar=("A1", "A2"))
    p.add_argument("--classical", action="store_true",
                   help="commutative coefficients (v = 1 recurrence)")
    _add_common(p)
    p.set_defaults(func=_cmd_greedy)

    p = sub.add_parser("cluster-var", help="cluster variable X_m in the initial torus")
    _add_bc(p)
    p.add_argument("-m", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_cluster_var)

    p = sub.add_parser("standard", help="standard monomial M[a1, a2]")
    _add_bc(p)
    p.add_argument("-a", nargs=2, type=int, required=True, metavar=("A1", "A2"))
    _add_common(p)
    p.set_defaults(func=_cmd_standard)

    p = sub.add_parser("triangular", help="triangular basis element C[a1, a2]")
    _add_bc(p)
    p.add_argument("-a", nargs=2, type=int, required=True, metavar=("A1", "A2"))
    p.add_argument("--r-table", action="store_true",
                   help="print the expansion over the greedy basis instead")
    _add_common(p)
    p.set_defaults(func=_cmd_triangular)

    p = sub.add_parser("expand", help="re-expand an element in a cluster or basis")
    _add_bc(p)
    p.add_argument("-a", nargs=2, type=int, required=True, metavar=("A1", "A2"))
    p.add_argument("--element", choices=("greedy", "triangular"), default="greedy")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--cluster", type=int, default=1, metavar="M",
                       help="target cluster index (default: initial)")
    group.add_argument("--standard", action="store_true",
                       help="expand in the standard monomial basis")
    _add_common(p)
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("check", help="run checks on a single pointing vector")
    _add_bc(p)
    p.add_argument("-a", nargs=2, type=int, required=True, metavar=("A1", "A2"))
    p.add_argument("--checks", default="support,divisibility",
                   help=f"comma-separated subset of: {','.join(bases.SCAN_CHECKS)}")
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("scan", help="run checks over a grid of pointing vectors")
    _add_bc(p)
    p.add_argument("--bound", type=_nonnegative, required=True)
    p.add_argument("--checks", default="greedy-positivity",
                   help=f"comma-separated subset of: {','.join(bases.SCAN_CHECKS)}")
    p.add_argument("--cluster-range", type=_nonnegative, default=0,
                   help="also check positivity in clusters |m| <= K")
    p.add_argument("--jobs", type=_positive, default=1,
                   help="worker processes (default 1; results are order-independent)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("verify", help="run a built-in verification suite")
    p.add_argument("suite", choices=sorted(_VERIFY_SUITES))
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("cache", help="administer the cluster-variable cache")
    p.add_argument("action", choices=("stats", "clear"))
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(func=_cmd_cache)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ClusterAlgebraError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
