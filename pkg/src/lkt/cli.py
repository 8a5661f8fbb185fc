"""Command-line frontend.

Exit codes are the programmatic contract: 0 = proved / valid / eliminated /
zero violations; 1 = not proved within bounds / invalid / violations found;
2 = usage or I/O error.  The first stdout line is always one of the stable
verdict strings (PROVED, EXHAUSTED, VALID, INVALID, ELIMINATED,
VIOLATIONS=<n>, AGREE, DISAGREE, INCONCLUSIVE(bounds)).
"""

from __future__ import annotations

import argparse
import sys

from .kernel import Unfocused, check, sequent_eq
from .oracles import ORACLES, oracle_axiom_suite
from .parser import ParseError, flip_connectives, parse_problem
from .proofio import ProofFormatError, dump_proof, load_proof
from .search import Proved, SearchConfig, prove
from .syntax import DeclarationError, mset
from .transform import TransformError, eliminate


def _add_theory(p):
    p.add_argument("--theory", choices=sorted(ORACLES), default="syntactic",
                   help="decision procedure for theory calls (default: syntactic)")


def _add_bounds(p):
    p.add_argument("--max-decisions", type=int, default=8, metavar="N",
                   help="focus steps allowed along a branch (default: 8)")
    p.add_argument("--max-witness-depth", type=int, default=2, metavar="N",
                   help="term depth for witness enumeration (default: 2)")
    p.add_argument("--branch-order", choices=("left", "right"), default="left",
                   help="disjunct tried first in a positive disjunction")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="lkt",
        description="Focused polarized sequent prover with theory calls: "
                    "prove, check, eliminate cuts, audit oracles.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prove", help="search for a proof of a problem file's goal")
    p.add_argument("file", metavar="FILE")
    _add_theory(p)
    _add_bounds(p)
    p.add_argument("--emit-proof", metavar="PATH", help="write the proof as JSON")

    p = sub.add_parser("check", help="validate a proof against a problem file")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--proof", required=True, metavar="PATH")
    _add_theory(p)
    p.add_argument("--allow-cuts", action="store_true",
                   help="accept extended proofs containing cut nodes")

    p = sub.add_parser("elim", help="rewrite an extended proof into a cut-free one")
    p.add_argument("--proof", required=True, metavar="PATH")
    _add_theory(p)
    p.add_argument("-o", "--output", required=True, metavar="PATH")
    p.add_argument("--trace", metavar="PATH", help="write one line per reduction")

    p = sub.add_parser("axioms", help="probe an oracle against the four-axiom contract")
    _add_theory(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10000, metavar="N")

    p = sub.add_parser("flip", help="flip a predicate's polarity and compare provability")
    p.add_argument("file", metavar="FILE")
    p.add_argument("pred", metavar="PRED")
    _add_theory(p)
    _add_bounds(p)

    return ap


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise SystemExit(_usage_error("cannot read %s: %s" % (path, e)))


def _write(path, text):
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as e:
        raise SystemExit(_usage_error("cannot write %s: %s" % (path, e)))


def _usage_error(msg):
    print("error: %s" % msg, file=sys.stderr)
    return 2


def _parse_problem_file(path):
    try:
        return parse_problem(_read(path))
    except ParseError as e:
        raise SystemExit(_usage_error("%s: %s" % (path, e)))


def _config(args):
    return SearchConfig(max_decisions=args.max_decisions,
                        max_witness_depth=args.max_witness_depth,
                        branch_order=args.branch_order + "_first")


def cmd_prove(args):
    problem = _parse_problem_file(args.file)
    oracle = ORACLES[args.theory]
    goal = Unfocused((), mset((problem.goal,)))
    outcome = prove(goal, problem.table, oracle, _config(args))
    if isinstance(outcome, Proved):
        print("PROVED")
        print(outcome.stats.line())
        if args.emit_proof:
            _write(args.emit_proof, dump_proof(outcome.proof, problem.table))
        return 0
    print("EXHAUSTED")
    print(outcome.stats.line())
    return 1


def cmd_check(args):
    problem = _parse_problem_file(args.file)
    oracle = ORACLES[args.theory]
    try:
        pf, sig = load_proof(_read(args.proof))
    except ProofFormatError as e:
        return _usage_error("%s: %s" % (args.proof, e))

    for name, decl in sig.preds.items():
        if name in problem.table.preds and problem.table.preds[name] != decl:
            print("INVALID")
            print("signature mismatch on predicate %s" % name)
            return 1
    expected = Unfocused((), mset((problem.goal,)))
    if not sequent_eq(pf.conclusion, expected):
        print("INVALID")
        print("proof concludes a different sequent than the problem goal")
        return 1
    try:
        report = check(pf, problem.table, oracle, allow_cuts=args.allow_cuts)
    except DeclarationError as e:
        return _usage_error(str(e))
    if report.ok:
        print("VALID")
        return 0
    print("INVALID")
    print(report)
    return 1


def cmd_elim(args):
    oracle = ORACLES[args.theory]
    try:
        pf, sig = load_proof(_read(args.proof))
    except ProofFormatError as e:
        return _usage_error("%s: %s" % (args.proof, e))
    trace = [] if args.trace else None
    try:
        result = eliminate(pf, sig, oracle, trace)
    except TransformError as e:
        print("error: %s" % e, file=sys.stderr)
        return 1
    _write(args.output, dump_proof(result, sig))
    if args.trace:
        _write(args.trace, "".join(line + "\n" for line in trace))
    print("ELIMINATED")
    return 0


def cmd_axioms(args):
    oracle = ORACLES[args.theory]
    try:
        violations = oracle_axiom_suite(oracle, args.seed, args.samples)
    except ValueError as e:
        return _usage_error(str(e))
    print("VIOLATIONS=%d" % len(violations))
    for v in violations[:20]:
        print("%s: %s" % (v.axiom, v.detail))
    return 0 if not violations else 1


def cmd_flip(args):
    problem = _parse_problem_file(args.file)
    if args.pred not in problem.table.preds:
        return _usage_error("unknown predicate: %s" % args.pred)
    oracle = ORACLES[args.theory]
    cfg = _config(args)

    flipped_tbl = problem.table.with_flipped(args.pred)
    flipped_goal = flip_connectives(problem.goal, problem.auto_paths)

    outcomes = []
    for label, tbl, goal in (("original", problem.table, problem.goal),
                             ("flipped", flipped_tbl, flipped_goal)):
        out = prove(Unfocused((), mset((goal,))), tbl, oracle, cfg)
        verdict = "PROVED" if isinstance(out, Proved) else "EXHAUSTED"
        print("%s: %s" % (label, verdict))
        outcomes.append(verdict)

    if outcomes[0] == outcomes[1] == "PROVED":
        print("AGREE")
        return 0
    # bounded search cannot conclusively disprove, so a mismatch or a double
    # exhaustion is never a DISAGREE
    print("INCONCLUSIVE(bounds)")
    return 0


_COMMANDS = {
    "prove": cmd_prove,
    "check": cmd_check,
    "elim": cmd_elim,
    "axioms": cmd_axioms,
    "flip": cmd_flip,
}


def main(argv=None) -> int:
    sys.setrecursionlimit(20000)
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2


if __name__ == "__main__":
    sys.exit(main())
