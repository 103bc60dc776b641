"""Command-line interface.

Exit codes: 0 success, 1 mathematical failure or oracle disagreement,
2 unreadable / invalid input, 3 usage error.
"""

import argparse
import json
import sys
from fractions import Fraction

from .action import VectorField, block_action, normalize_traceless, tangency_certificate
from .corpus import load_corpus, run_example
from .errors import (DuplicateWeights, InputError, MathError, NotEigenvector, NotTangent,
                     ParseError)
from .formula import Convention, apply_convention, fano_index
from .localization import (OracleVerdict, localization_instance_for, run_equivalence_suite,
                           theta_oracle)
from .parser import load_problem
from .pipeline import ASSUMPTION_NOTICE, analyze

EXIT_OK, EXIT_MATH, EXIT_INPUT, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def _fmt(value, approx=False):
    text = str(value)
    if approx:
        if value.im:
            text += " (~%.6g%+.6gi)" % (float(value.re), float(value.im))
        elif value.re.denominator != 1:
            text += " (~%.6g)" % float(value.re)
    return text


def _mono(mono, names):
    parts = [n if e == 1 else "%s^%d" % (n, e) for n, e in zip(names, mono) if e]
    return "*".join(parts) or "1"


def _read_text(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc.strerror)) from None


def _read_problem(path):
    return load_problem(_read_text(path))


def _report_math_error(exc, problem, out):
    print("error: %s: %s" % (type(exc).__name__, exc), file=out)
    names = list(problem.variables) if problem is not None else None
    if isinstance(exc, NotEigenvector) and exc.witness is not None and names:
        print("witness monomial: %s" % _mono(exc.witness, names), file=out)
    if isinstance(exc, NotTangent) and names:
        print("witness: X.F_%d = %s" % (exc.index + 1, exc.witness.to_string(names)), file=out)


def cmd_compute(args, out):
    problem = _read_problem(args.file)
    convention = Convention.parse(args.convention) if args.convention else None
    try:
        report = analyze(problem, convention=convention, run_oracle=not args.no_oracle)
    except MathError as exc:
        _report_math_error(exc, problem, sys.stderr)
        return EXIT_MATH
    status = EXIT_MATH if report.oracle is OracleVerdict.DISAGREE else EXIT_OK
    if args.json:
        print(json.dumps(report.to_json(), indent=2), file=out)
        return status
    fano = report.fano
    a = args.approx
    print("# " + ASSUMPTION_NOTICE, file=out)
    print("N = %d, s = %d, n = %d" % (fano.N, fano.s, fano.n), file=out)
    print("degrees = %s" % list(fano.degrees), file=out)
    print("Fano index m = %d" % fano.m, file=out)
    for (name, _), kappa in zip(problem.polynomials, report.kappas):
        print("kappa[%s] = %s" % (name, _fmt(kappa, a)), file=out)
    if report.block_action is not None and not report.block_action.is_diagonal():
        print("note: X mixes equal-degree polynomials; kappas are diagonal entries of the block "
              "matrices (their traces are what the formula uses)", file=out)
    print("trace kappa = %s" % _fmt(-report.constant_term, a), file=out)
    print("theta invariant (against omega_FS) = %s" % _fmt(report.theta_invariant, a), file=out)
    print("F(X) [paper] = %s" % _fmt(report.futaki, a), file=out)
    print("F(X) [dt-surface-x3] = %s" % _fmt(
        apply_convention(report.futaki, fano, Convention.DT_SURFACE_X3), a), file=out)
    print("reported F(X) (%s) = %s" % (report.convention.value, _fmt(report.futaki_reported, a)),
          file=out)
    print("sign of Re F(X): %s" % report.re_sign.value, file=out)
    print("oracle: %s" % (report.oracle.value if report.oracle else "skipped"), file=out)
    return status


def cmd_check(args, out):
    problem = _read_problem(args.file)
    names = list(problem.variables)
    try:
        fano_index(problem.ambient_dimension, problem.degrees)
        X = normalize_traceless(VectorField.from_spec(problem.vector_field))
        polys = problem.polys
        certificate = tangency_certificate(X, polys)
        print("tangency: X preserves the ideal in each defining degree", file=out)
        for i, row in enumerate(certificate.multipliers):
            terms = ["(%s)*%s" % (mult.to_string(names), problem.polynomials[j][0])
                     for j, mult in enumerate(row) if mult is not None and mult]
            print("  X.%s = %s" % (problem.polynomials[i][0], " + ".join(terms) or "0"), file=out)
        if not polys:
            print("  s = 0: M is projective space, trivially tangent", file=out)
            return EXIT_OK
        action = block_action(X, polys)
    except MathError as exc:
        _report_math_error(exc, problem, sys.stderr)
        return EXIT_MATH
    print("action on span(F_1..F_s):", file=out)
    for block in action.blocks:
        labels = [problem.polynomials[k][0] for k in block.indices]
        print("  degree %d block %s, trace %s" % (block.degree, labels, block.trace), file=out)
        for label, row in zip(labels, block.matrix):
            print("    X.%s -> [%s]" % (label, ", ".join(str(v) for v in row)), file=out)
    print("total trace kappa = %s" % action.kappa, file=out)
    return EXIT_OK


def cmd_oracle(args, out):
    if args.file is None and args.draws is None:
        raise UsageError("give a problem file, --draws K, or both")
    status = EXIT_OK
    if args.file is not None:
        problem = _read_problem(args.file)
        try:
            report = analyze(problem, run_oracle=False)
        except MathError as exc:
            _report_math_error(exc, problem, sys.stderr)
            return EXIT_MATH
        instance = localization_instance_for(problem)
        if isinstance(instance, str):
            if args.strict:
                print("error: DuplicateWeights: oracle not applicable: %s" % instance
                      if "repeated" in instance else "error: oracle not applicable: %s" % instance,
                      file=sys.stderr)
                return EXIT_MATH
            print("oracle: not applicable (%s)" % instance, file=out)
        else:
            try:
                value = theta_oracle(instance, report.fano)
            except DuplicateWeights as exc:
                print("error: DuplicateWeights: %s" % exc, file=sys.stderr)
                return EXIT_MATH
            print("fixed-point value = %s" % value, file=out)
            print("closed-form value = %s" % report.theta_invariant, file=out)
            agree = value == report.theta_invariant
            print("oracle: %s" % ("agree" if agree else "disagree"), file=out)
            if not agree:
                status = EXIT_MATH
    if args.draws is not None:
        if args.draws < 1:
            raise UsageError("--draws must be positive")
        result = run_equivalence_suite(args.draws, args.seed)
        print("randomized oracle suite: seed %d, %d/%d agreements"
              % (result.seed, result.passed, result.draws), file=out)
        for k, inst, oracle, closed in result.failures[:10]:
            print("  draw %d: oracle %s vs closed form %s (N=%d, degrees %s)"
                  % (k, oracle, closed, inst.N, list(inst.degrees)), file=out)
        if result.failures:
            status = EXIT_MATH
    return status


def cmd_examples(args, out):
    corpus_text = None
    if args.corpus:
        corpus_text = _read_text(args.corpus)
    records = load_corpus(corpus_text)
    if args.only:
        records = [r for r in records if r.id in args.only]
        if not records:
            raise UsageError("no example matches --only %s" % ", ".join(args.only))
    header = "%-12s %-16s %-16s %-10s %-14s %s" % ("id", "kappas", "expected F", "computed",
                                                   "oracle", "status")
    print(header, file=out)
    failures = []
    for record in records:
        outcome = run_example(record)
        kappas = ",".join(str(k) for k in record.expected_kappas)
        if outcome.report is None:
            computed, oracle = "error", "-"
        else:
            computed = str(outcome.report.futaki_reported)
            oracle = outcome.report.oracle.value
        status = "ok" if outcome.ok else "MISMATCH"
        print("%-12s %-16s %-16s %-10s %-14s %s" % (record.id, kappas,
                                                   record.expected_futaki_reported, computed,
                                                   oracle, status), file=out)
        if not outcome.ok:
            failures.append((record, outcome))
    print("%d/%d examples match exactly" % (len(records) - len(failures), len(records)), file=out)
    for record, outcome in failures:
        got = outcome.error or "kappas %s, F %s" % (
            [str(k) for k in outcome.report.kappas], outcome.report.futaki_reported)
        print("mismatch %s: expected kappas %s, F %s; got %s"
              % (record.id, [str(k) for k in record.expected_kappas],
                 record.expected_futaki_reported, got), file=out)
    return EXIT_MATH if failures else EXIT_OK


def build_parser():
    parser = _Parser(prog="futaki", description="Exact Futaki invariants of Fano complete "
                                                "intersections.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("compute", help="compute kappas, theta invariant and F(X)")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--no-oracle", action="store_true", help="skip the fixed-point cross-check")
    p.add_argument("--convention", choices=["paper", "dt-surface-x3"],
                   help="override the problem file's reporting convention")
    p.add_argument("--approx", action="store_true", help="append decimal approximations")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("check", help="print the tangency certificate and block action")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("oracle", help="fixed-point cross-check, or the randomized suite")
    p.add_argument("file", nargs="?")
    p.add_argument("--draws", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strict", action="store_true",
                   help="treat an inapplicable oracle (e.g. repeated weights) as a failure")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("examples", help="run the bundled published examples")
    p.add_argument("--only", action="append", metavar="ID")
    p.add_argument("--corpus", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
