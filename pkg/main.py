"""
Main Entry Point
Command-line front end for the umbral estimator engine

Usage: python main.py [global flags] <command> [args]
       python main.py kstat 3 --format latex
"""
import argparse
import json
import os
import sys
from typing import List, Optional

import logzero
from logzero import logger, logfile

from config import config
from src import formatters
from src.basis_conversion import aug_product, aug_to_ps, expectation_of_brackets, ps_to_aug
from src.errors import GuardViolation, InputError, UmbralError
from src.estimators import (
    cumulant_product_from_moments, cumulants_from_moments, joint_cumulant_from_moments,
    k_statistic, moments_from_cumulants, multivariate_k_statistic, multivariate_polykay,
    polykay, u_statistic,
)
from src.input_parser import (
    parse_bracket, parse_integers, parse_multiset, parse_partition, parse_vectors,
)
from src.monomial import Multiset
from src.oracle import FormalSample, check_conversion, check_unbiased
from src.partitions import bell_number
from src.rational import RationalExpr
from src.subdivisions import subdivisions, subdivisions_by_set_partitions
from src.symexpr import SymExpr, falling_factorial_expand, moment, power_sum

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_GUARD = 3

VERIFY_TARGETS = ("kstat", "polykay", "mkstat", "mpolykay", "ustat", "augtops", "pstoaug", "augprod")


def _single_order(text: str) -> int:
    orders = parse_integers(text)
    if len(orders) != 1:
        raise InputError(f"expected a single order, got {text!r}")
    return orders[0]


def _add_global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    """Global flags, accepted before or after the command."""
    default = (lambda value: argparse.SUPPRESS) if suppress else (lambda value: value)
    parser.add_argument("--format", choices=config.OUTPUT_FORMATS, default=default(config.DEFAULT_FORMAT),
                        help="output format (default: %(default)s)" if not suppress else argparse.SUPPRESS)
    parser.add_argument("--expand-factorials", action="store_true", default=default(False),
                        help="expand (n)_k into polynomials in n" if not suppress else argparse.SUPPRESS)
    parser.add_argument("--max-order", type=int, default=default(config.MAX_ORDER),
                        help="order guard (default: %(default)s)" if not suppress else argparse.SUPPRESS)
    parser.add_argument("--threads", type=int, default=default(config.DEFAULT_THREADS),
                        help="worker threads for bracket expansions" if not suppress else argparse.SUPPRESS)
    parser.add_argument("--verbose", action="store_true", default=default(False),
                        help="debug logging on stderr" if not suppress else argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="umbral",
        description="Exact k-statistics, polykays and symmetric-function conversions.",
        epilog="Multisets: a^3,g^2 or (a^2*b),a. Vectors and brackets: 2,0;1,0. See FORMATS.md.",
    )
    _add_global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help_text, parents=[common])

    p = add("kstat", "k-statistic k_i in power sums")
    p.add_argument("order", type=int)

    p = add("polykay", "polykay k_{r,...,t} in power sums")
    p.add_argument("orders", type=int, nargs="+")

    p = add("mkstat", "multivariate k-statistic of exponent vectors")
    p.add_argument("vectors", help="e.g. 1,0;0,1")

    p = add("mpolykay", "multivariate polykay, one vector list per cumulant factor")
    p.add_argument("groups", nargs="+", help='e.g. "1,0" "0,1"')

    p = add("ustat", "U-statistic of a moment product")
    p.add_argument("parts", help="integer partition (2,1) or, with --vectors, exponent vectors")
    p.add_argument("--vectors", action="store_true", help="read parts as exponent vectors")
    p.add_argument("--ps", action="store_true", help="power-sum form instead of the bracket form")

    p = add("cumulant", "cumulant in terms of moments")
    p.add_argument("order", help="order i or, with --vectors, exponent vectors of a joint cumulant")
    p.add_argument("--vectors", action="store_true", help="read order as exponent vectors")

    p = add("moments", "moment m_i in terms of cumulants")
    p.add_argument("order", type=int)

    p = add("augtops", "augmented symmetric function in power sums")
    p.add_argument("bracket", help="e.g. 2,0;1,0")

    p = add("pstoaug", "product of power sums in augmented symmetric functions")
    p.add_argument("vectors", help="one exponent vector per power-sum factor, e.g. 1,0;1,0;0,1")
    p.add_argument("--expect", action="store_true", help="print the expectation of the expansion")

    p = add("augprod", "product of augmented symmetric functions")
    p.add_argument("brackets", nargs="+")

    p = add("subdivisions", "subdivisions of a multiset with multiplicities")
    p.add_argument("multiset", help="e.g. a,a,b or a^3,g^2")
    p.add_argument("--check", action="store_true", help="compare against projected set partitions")

    p = add("verify", "cross-check a command against the brute-force oracle")
    p.add_argument("target", choices=VERIFY_TARGETS)
    p.add_argument("args", nargs="+")
    p.add_argument("--n", type=int, nargs="+", dest="n_values", help="sample sizes to check")
    p.add_argument("--vectors", action="store_true", help="for ustat: read parts as exponent vectors")

    p = add("bench", "run a benchmark profile")
    p.add_argument("profile", choices=sorted(config.BENCH_PROFILES))
    p.add_argument("--save", action="store_true", help="write JSON and CSV reports")
    return parser


class UmbralCLI:
    """Dispatches one parsed command and renders its result"""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.fmt = args.format

    def emit(self, expr) -> None:
        if self.args.expand_factorials:
            expr = expr.expand_factorials() if isinstance(expr, RationalExpr) else falling_factorial_expand(expr)
        if self.fmt == "json":
            print(json.dumps({"command": self.args.command, "result": formatters.to_json_data(expr)}, sort_keys=True))
        else:
            print(formatters.render(expr, self.fmt))

    def emit_data(self, text: str, data: dict) -> None:
        if self.fmt == "json":
            print(json.dumps({"command": self.args.command, "result": data}, sort_keys=True, default=str))
        else:
            print(text)

    # estimators

    def kstat(self) -> int:
        self.emit(k_statistic(self.args.order, max_order=self.args.max_order, threads=self.args.threads))
        return EXIT_OK

    def polykay(self) -> int:
        self.emit(polykay(self.args.orders, max_order=self.args.max_order, threads=self.args.threads))
        return EXIT_OK

    def mkstat(self) -> int:
        vectors = parse_vectors(self.args.vectors)
        self.emit(multivariate_k_statistic(vectors, max_order=self.args.max_order, threads=self.args.threads))
        return EXIT_OK

    def mpolykay(self) -> int:
        groups = [parse_vectors(g) for g in self.args.groups]
        self.emit(multivariate_polykay(groups, max_order=self.args.max_order, threads=self.args.threads))
        return EXIT_OK

    def _ustat_parts(self, text: str):
        return parse_vectors(text) if self.args.vectors else parse_partition(text)

    def ustat(self) -> int:
        parts = self._ustat_parts(self.args.parts)
        self.emit(u_statistic(parts, want_ps=self.args.ps, max_order=self.args.max_order))
        return EXIT_OK

    def cumulant(self) -> int:
        if self.args.vectors:
            self.emit(joint_cumulant_from_moments(parse_vectors(self.args.order)))
        else:
            order = _single_order(self.args.order)
            self.emit(cumulants_from_moments(order))
        return EXIT_OK

    def moments(self) -> int:
        self.emit(moments_from_cumulants(self.args.order))
        return EXIT_OK

    # conversions

    def augtops(self) -> int:
        self.emit(aug_to_ps(parse_bracket(self.args.bracket)))
        return EXIT_OK

    def pstoaug(self) -> int:
        expansion = ps_to_aug(Multiset.from_vectors(parse_vectors(self.args.vectors)))
        self.emit(expectation_of_brackets(expansion) if self.args.expect else expansion)
        return EXIT_OK

    def augprod(self) -> int:
        self.emit(aug_product([parse_bracket(b) for b in self.args.brackets]))
        return EXIT_OK

    def subdivisions(self) -> int:
        parsed = parse_multiset(self.args.multiset)
        rows = subdivisions(parsed.multiset)
        names = parsed.names
        data = formatters.subdivisions_to_json_data(rows, names)
        text = formatters.subdivisions_to_text(rows, names)
        ok = True
        if self.args.check:
            histogram = subdivisions_by_set_partitions(parsed.multiset)
            ok = {row.blocks: row.multiplicity for row in rows} == histogram
            size = parsed.multiset.size
            data["set_partition_check"] = ok
            text += f"\nset-partition check: {'ok' if ok else 'MISMATCH'} (Bell {size} = {bell_number(size)})"
        if self.fmt == "latex":
            print(formatters.subdivisions_to_latex(rows, names))
        else:
            self.emit_data(text, data)
        return EXIT_OK if ok else EXIT_MISMATCH

    # oracle

    def _estimator_and_target(self):
        target, args = self.args.target, self.args.args
        limits = dict(max_order=self.args.max_order, threads=self.args.threads)
        if target == "kstat":
            i = _single_order(args[0])
            return k_statistic(i, **limits), cumulant_product_from_moments([[(1,)] * i]), 1
        if target == "polykay":
            orders = [i for a in args for i in parse_integers(a)]
            groups = [[(1,)] * r for r in orders]
            return polykay(orders, **limits), cumulant_product_from_moments(groups), 1
        if target == "mkstat":
            vectors = parse_vectors(args[0])
            return multivariate_k_statistic(vectors, **limits), cumulant_product_from_moments([vectors]), len(vectors[0])
        if target == "mpolykay":
            groups = [parse_vectors(a) for a in args]
            return multivariate_polykay(groups, **limits), cumulant_product_from_moments(groups), len(groups[0][0])
        parts = self._ustat_parts(args[0])
        estimator = u_statistic(parts, want_ps=True, max_order=self.args.max_order)
        if self.args.vectors:
            vectors = parts
        else:
            vectors = [(p,) for p in parts.parts]
        target_expr = SymExpr.constant(1)
        for v in vectors:
            target_expr = target_expr * SymExpr.from_atom(moment(v))
        return estimator, target_expr, len(vectors[0])

    def _conversion_sides(self):
        target, args = self.args.target, self.args.args
        if target == "augtops":
            bracket = parse_bracket(args[0])
            return SymExpr.from_atom(bracket.atom()), aug_to_ps(bracket), bracket.width
        if target == "pstoaug":
            vectors = parse_vectors(args[0])
            lhs = SymExpr.constant(1)
            for v in vectors:
                lhs = lhs * SymExpr.from_atom(power_sum(v))
            return lhs, ps_to_aug(Multiset.from_vectors(vectors)), len(vectors[0])
        brackets = [parse_bracket(a) for a in args]
        lhs = SymExpr.constant(1)
        for b in brackets:
            lhs = lhs * SymExpr.from_atom(b.atom())
        return lhs, aug_product(brackets), brackets[0].width

    def verify(self) -> int:
        checks = []
        if self.args.target in ("augtops", "pstoaug", "augprod"):
            lhs, rhs, arity = self._conversion_sides()
            for n in self.args.n_values or [3, 4, 5]:
                checks.append({"n": n, "ok": check_conversion(lhs, rhs, FormalSample(n, arity))})
        else:
            estimator, target, arity = self._estimator_and_target()
            degree = estimator.total_degree
            n_values = self.args.n_values or [n for n in range(degree, degree + 3) if n <= config.ORACLE_MAX_N]
            if not n_values:
                raise GuardViolation(
                    f"estimator degree {degree} exceeds the oracle ceiling n <= {config.ORACLE_MAX_N}",
                    limit=config.ORACLE_MAX_N, requested=degree,
                )
            report = check_unbiased(estimator, target, n_values, arity)
            checks = [{"n": r["n"], "ok": r["ok"]} for r in report]
        ok = all(c["ok"] for c in checks)
        text = "\n".join(f"n={c['n']}: {'ok' if c['ok'] else 'MISMATCH'}" for c in checks)
        self.emit_data(text, {"target": self.args.target, "args": self.args.args, "ok": ok, "checks": checks})
        return EXIT_OK if ok else EXIT_MISMATCH

    def bench(self) -> int:
        from src.benchmark import Benchmark
        benchmark = Benchmark(threads=self.args.threads, max_order=self.args.max_order)
        summary = benchmark.run_profile(self.args.profile)
        if self.args.save:
            benchmark.save_results(summary)
        self.emit_data(benchmark.to_frame(summary).to_string(index=False), summary)
        return EXIT_OK

    def run(self) -> int:
        handler = getattr(self, self.args.command)
        return handler()


def configure_logging(verbose: bool) -> None:
    logzero.loglevel(logzero.DEBUG if verbose else logzero.WARNING)
    if config.LOG_FILE:
        os.makedirs(os.path.dirname(config.LOG_FILE) or ".", exist_ok=True)
        logfile(config.LOG_FILE, maxBytes=10e6, backupCount=3)  # 10MB max, 3 backups


def run(argv: Optional[List[str]] = None) -> int:
    """
    Run one command.

    Returns:
        int: 0 on success, 1 on a verification mismatch, 2 on a parse or
            input error, 3 on a guard violation
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    configure_logging(args.verbose)
    try:
        return UmbralCLI(args).run()
    except GuardViolation as e:
        logger.error(f"Guard violation: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_GUARD
    except InputError as e:
        logger.error(f"Invalid input: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except UmbralError as e:
        logger.exception(f"Command failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MISMATCH


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
