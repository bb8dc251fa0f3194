"""Command-line front end.

``relkanren rewrite`` parses one s-expression term, applies named rulesets
through graph walking (optionally to a fixed point), and prints reified
answers one per line.  ``relkanren query`` runs a small goal program.

Exit codes: 0 with at least one answer, 1 with none, 2 on step-budget
exhaustion (partial answers flushed, diagnostic on stderr), 3 for an
unknown ruleset name, 4 for a parse error.  All diagnostics go to stderr;
only answer lines go to the output channel.
"""

from __future__ import annotations

import argparse
import os
import sys

from .constraints import UnknownPredicateError, neq, type_constraint
from .goals import ALL, StepBudgetExceeded, eq, iter_solutions, step_budget
from .relations import conso, membero, permuteo, reduceo, walko
from .rules import builtin_rulesets, default_registry
from .sexpr import ParseError, parse_sexpr, print_term
from .terms import LogicVar, Symbol, list_from_term, term_eq, term_hash, fresh_var
from .goals import lany

EXIT_OK = 0
EXIT_NO_ANSWERS = 1
EXIT_BUDGET = 2
EXIT_UNKNOWN_RULESET = 3
EXIT_PARSE_ERROR = 4

BUDGET_ENV_VAR = "RELKANREN_MAX_STEPS"


class _CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV_VAR)
    if not raw:
        return 0
    try:
        return int(raw)
    except ValueError:
        return 0


def _read_input(path):
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _lookup_rules(names):
    rulesets = builtin_rulesets()
    rules = []
    for name in names:
        rs = rulesets.get(name)
        if rs is None:
            raise _CliError(f"unknown ruleset: {name}", EXIT_UNKNOWN_RULESET)
        rules.append(rs.rule)
    return rules


def _combine(rules):
    if len(rules) == 1:
        return rules[0]
    return lambda u, v: lany(*(r(u, v) for r in rules))


class _Emitter:
    """Dedup answers, skip identity rewrites, stream lines to the sink."""

    def __init__(self, out, skip=None, limit=0):
        self.out = out
        self.skip = skip
        self.limit = limit
        self.seen = set()
        self.count = 0

    def emit(self, term) -> bool:
        """Print one answer; returns False once the answer limit is hit."""
        if self.skip is not None and term_eq(term, self.skip):
            return True
        key = (term_hash(term), print_term(term))
        if key in self.seen:
            return True
        self.seen.add(key)
        self.out.write(print_term(term) + "\n")
        self.out.flush()
        self.count += 1
        return not (self.limit and self.count >= self.limit)


def _run_stream(solutions, emitter, budget):
    """Drain a solution stream through the emitter; returns the exit code."""
    exhausted = False
    with step_budget(budget):
        try:
            for answer in solutions:
                if not emitter.emit(answer):
                    break
        except StepBudgetExceeded:
            exhausted = True
    if exhausted:
        print(
            f"step budget of {budget} exhausted; {emitter.count} answer(s) flushed",
            file=sys.stderr,
        )
        return EXIT_BUDGET
    return EXIT_OK if emitter.count else EXIT_NO_ANSWERS


def cmd_rewrite(args) -> int:
    registry = default_registry()
    rules = _lookup_rules(args.rules)
    try:
        text = _read_input(args.input)
        term = parse_sexpr(text, registry=registry)
    except ParseError as exc:
        raise _CliError(f"parse error: {exc}", EXIT_PARSE_ERROR)
    rel = _combine(rules)
    q = fresh_var("q")
    if args.mode == "reduce":
        # fixed points of the rule reached at any position of the graph
        goal = walko(lambda a, b: reduceo(rel, a, b), term, q)
    else:
        goal = walko(rel, term, q)
    out = sys.stdout if args.output is None else open(args.output, "w", encoding="utf-8")
    try:
        emitter = _Emitter(out, skip=term, limit=args.max_answers)
        return _run_stream(iter_solutions(q, goal), emitter, args.max_steps)
    finally:
        if out is not sys.stdout:
            out.close()


_GOAL_HEADS = {"eq", "neq", "membero", "conso", "permuteo", "typeo", "rule"}


def _build_goal(form):
    try:
        parts = list_from_term(form)
    except ValueError:
        raise _CliError(f"malformed goal: {print_term(form)}", EXIT_PARSE_ERROR)
    if not parts or not isinstance(parts[0], Symbol):
        raise _CliError(f"malformed goal: {print_term(form)}", EXIT_PARSE_ERROR)
    head, args = parts[0].name, parts[1:]
    if head not in _GOAL_HEADS:
        raise _CliError(f"unknown goal: {head}", EXIT_PARSE_ERROR)
    if head == "rule":
        if len(args) != 3 or not isinstance(args[0], Symbol):
            raise _CliError("rule goal needs a name and two terms", EXIT_PARSE_ERROR)
        rs = builtin_rulesets().get(args[0].name)
        if rs is None:
            raise _CliError(f"unknown ruleset: {args[0].name}", EXIT_UNKNOWN_RULESET)
        return rs.rule(args[1], args[2])
    arities = {"eq": 2, "neq": 2, "membero": 2, "conso": 3, "permuteo": 2, "typeo": 2}
    if len(args) != arities[head]:
        raise _CliError(f"goal {head} expects {arities[head]} argument(s)", EXIT_PARSE_ERROR)
    if head == "eq":
        return eq(args[0], args[1])
    if head == "neq":
        return neq(args[0], args[1])
    if head == "membero":
        return membero(args[0], args[1])
    if head == "conso":
        return conso(args[0], args[1], args[2])
    if head == "permuteo":
        return permuteo(args[0], args[1])
    # typeo
    if not isinstance(args[1], Symbol):
        raise _CliError("typeo expects a predicate name symbol", EXIT_PARSE_ERROR)
    try:
        return type_constraint(args[0], args[1].name)
    except UnknownPredicateError:
        raise _CliError(f"unknown predicate: {args[1].name}", EXIT_PARSE_ERROR)


def cmd_query(args) -> int:
    registry = default_registry()
    try:
        form = parse_sexpr(args.goal, registry=registry)
        parts = list_from_term(form)
    except (ParseError, ValueError) as exc:
        raise _CliError(f"parse error: {exc}", EXIT_PARSE_ERROR)
    if (
        len(parts) < 3
        or not isinstance(parts[0], Symbol)
        or parts[0].name != "run"
        or not isinstance(parts[1], int)
        or isinstance(parts[1], bool)
        or not isinstance(parts[2], LogicVar)
    ):
        raise _CliError("query must look like (run N ?q goal...)", EXIT_PARSE_ERROR)
    n = ALL if parts[1] == 0 else parts[1]
    query = parts[2]
    goals = [_build_goal(g) for g in parts[3:]]
    out = sys.stdout if args.output is None else open(args.output, "w", encoding="utf-8")
    try:
        limit = 0 if n is ALL else n
        emitter = _Emitter(out, limit=limit)
        return _run_stream(iter_solutions(query, *goals), emitter, args.max_steps)
    finally:
        if out is not sys.stdout:
            out.close()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relkanren",
        description="Relational term rewriting with statistical-model rules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rw = sub.add_parser("rewrite", help="apply named rulesets to a term")
    rw.add_argument("--rules", action="append", required=True, metavar="NAME",
                    help="ruleset name (repeatable); see rules list below")
    rw.add_argument("--input", default=None, metavar="PATH",
                    help="input file with one s-expression term (default: stdin)")
    rw.add_argument("--output", default=None, metavar="PATH",
                    help="answer sink (default: stdout)")
    rw.add_argument("--max-answers", type=int, default=0, metavar="N",
                    help="answer limit; 0 means all (default: 0)")
    rw.add_argument("--max-steps", type=int, default=_default_budget(), metavar="M",
                    help="step budget; 0 means unlimited "
                         f"(default: ${BUDGET_ENV_VAR} or 0)")
    rw.add_argument("--mode", choices=("walk", "reduce"), default="walk",
                    help="walk applies rules once anywhere; reduce runs each "
                         "position to a fixed point")
    rw.set_defaults(func=cmd_rewrite)

    q = sub.add_parser("query", help="run a goal program")
    q.add_argument("--goal", required=True, metavar="SEXPR",
                   help="e.g. '(run 0 ?x (membero ?x (1 2 3)))'")
    q.add_argument("--output", default=None, metavar="PATH")
    q.add_argument("--max-steps", type=int, default=_default_budget(), metavar="M")
    q.set_defaults(func=cmd_query)

    epilog = ["builtin rulesets:"]
    for name, rs in builtin_rulesets().items():
        epilog.append(f"  {name}: {rs.description}")
    parser.epilog = "\n".join(epilog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
