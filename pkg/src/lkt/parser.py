"""Problem files: declarations plus one goal formula.

    # comments run to end of line
    pred p 2 +        # predicate, arity, polarity
    pred m 0 -
    fun  f 2
    fun  c 0
    goal forall x. p(x, c) \/- ~p(x, c)

Formula syntax: `~` negates an atom (negation normal form is enforced, so
`~(...)` is rejected); binary connectives `/\+ /\- \/+ \/-`; quantifiers
`forall x. F` and `exists x. F` scope as far right as possible; disjunctions
bind weaker than conjunctions, both are right-associative; parentheses
override.  Unsigned `/\` and `\/` are "auto" connectives: they parse as the
negative variants and the flip experiment toggles them together with a
predicate polarity.  Terms are variables, declared functions, integer
literals, sums `t + t`, and integer multiples `n*t`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .syntax import (
    NEGATIVE, POSITIVE,
    AndN, AndP, App, Exists, Forall, Formula, IntConst, Lit, Literal, OrN,
    OrP, Plus, PolarityTable, ScalarMul, Var, format_formula, free_vars,
)


class ParseError(Exception):
    def __init__(self, msg, line=None, col=None):
        if line is not None:
            msg = "%d:%d: %s" % (line, col, msg)
        super().__init__(msg)
        self.line = line
        self.col = col


@dataclass(frozen=True)
class ProblemFile:
    table: PolarityTable
    goal: Formula
    auto_paths: frozenset = frozenset()   # tree paths of auto connectives


_TOKEN = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<op>/\\\+|/\\-|\\/\+|\\/-|/\\|\\/|[~().,+*])
  | (?P<int>-?\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sign>[-])
""", re.VERBOSE)

_KEYWORDS = {"pred", "fun", "goal", "forall", "exists"}


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text):
    toks, line, col, i = [], 1, 1, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            raise ParseError("unexpected character %r" % text[i], line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind != "ws":
            if kind == "ident" and tok in _KEYWORDS:
                kind = tok
            toks.append(_Tok(kind, tok, line, col))
        nl = tok.count("\n")
        if nl:
            line += nl
            col = len(tok) - tok.rfind("\n")
        else:
            col += len(tok)
        i = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0
        self.preds = {}
        self.funs = {}

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind, what=None):
        t = self.next()
        if t.kind != kind and t.text != kind:
            raise ParseError("expected %s, found %r" % (what or kind, t.text or "end of file"),
                             t.line, t.col)
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.line, tok.col)

    # -- declarations ------------------------------------------------------

    def problem(self) -> ProblemFile:
        while self.peek().kind in ("pred", "fun"):
            self.declaration()
        self.expect("goal")
        goal, auto = self.formula(set())
        t = self.peek()
        if t.kind != "eof":
            self.error("trailing input after the goal formula")
        closed = free_vars(goal)
        if closed:
            self.error("goal must be closed; free: %s" % ", ".join(sorted(closed)))
        return ProblemFile(PolarityTable(self.preds, self.funs), goal, frozenset(auto))

    def declaration(self):
        kw = self.next()
        name = self.expect("ident", "a symbol name")
        if name.text in self.preds or name.text in self.funs:
            self.error("duplicate declaration of %s" % name.text, name)
        arity = self.expect("int", "an arity")
        if int(arity.text) < 0:
            self.error("arity must be non-negative", arity)
        if kw.kind == "pred":
            sign = self.next()
            if sign.text == "+":
                pol = POSITIVE
            elif sign.text == "-":
                pol = NEGATIVE
            else:
                self.error("expected polarity + or -", sign)
            self.preds[name.text] = (int(arity.text), pol)
        else:
            self.funs[name.text] = int(arity.text)

    # -- formulae ----------------------------------------------------------
    # Each parse method returns (formula, auto_paths) with paths relative to
    # the returned node.

    def formula(self, scope):
        t = self.peek()
        if t.kind in ("forall", "exists"):
            self.next()
            v = self.expect("ident", "a bound variable")
            self.expect(".", "'.'")
            body, auto = self.formula(scope | {v.text})
            cls = Forall if t.kind == "forall" else Exists
            return cls(v.text, body), {(0,) + p for p in auto}
        return self.disjunction(scope)

    def disjunction(self, scope):
        left, la = self.conjunction(scope)
        t = self.peek()
        if t.text in ("\\/+", "\\/-", "\\/"):
            self.next()
            right, ra = self.disjunction(scope)
            cls = OrP if t.text == "\\/+" else OrN
            auto = {()} if t.text == "\\/" else set()
            return cls(left, right), auto | {(0,) + p for p in la} | {(1,) + p for p in ra}
        return left, la

    def conjunction(self, scope):
        left, la = self.atom(scope)
        t = self.peek()
        if t.text in ("/\\+", "/\\-", "/\\"):
            self.next()
            right, ra = self.conjunction(scope)
            cls = AndP if t.text == "/\\+" else AndN
            auto = {()} if t.text == "/\\" else set()
            return cls(left, right), auto | {(0,) + p for p in la} | {(1,) + p for p in ra}
        return left, la

    def atom(self, scope):
        t = self.peek()
        if t.text == "(":
            self.next()
            f, auto = self.formula(scope)
            self.expect(")", "')'")
            return f, auto
        if t.text == "~":
            self.next()
            u = self.peek()
            if u.kind != "ident":
                self.error("negation applies only to atoms (formulae are in "
                           "negation normal form)")
            return Lit(self.predicate(scope).negate()), set()
        if t.kind in ("forall", "exists"):
            return self.formula(scope)
        if t.kind == "ident":
            return Lit(self.predicate(scope)), set()
        self.error("expected a formula, found %r" % (t.text or "end of file"))

    def predicate(self, scope) -> Literal:
        name = self.expect("ident", "a predicate")
        if name.text not in self.preds:
            self.error("undeclared predicate: %s" % name.text, name)
        arity = self.preds[name.text][0]
        args = self.argument_list(scope, name, arity)
        return Literal(name.text, args)

    def argument_list(self, scope, name, arity):
        args = []
        if self.peek().text == "(":
            self.next()
            if self.peek().text != ")":
                args.append(self.term(scope))
                while self.peek().text == ",":
                    self.next()
                    args.append(self.term(scope))
            self.expect(")", "')'")
        if len(args) != arity:
            self.error("%s expects %d argument(s), got %d" % (name.text, arity, len(args)),
                       name)
        return tuple(args)

    def term(self, scope):
        t = self.product(scope)
        while self.peek().text == "+":
            self.next()
            t = Plus(t, self.product(scope))
        return t

    def product(self, scope):
        t = self.peek()
        if t.kind == "int":
            self.next()
            if self.peek().text == "*":
                self.next()
                return ScalarMul(int(t.text), self.factor(scope))
            return IntConst(int(t.text))
        return self.factor(scope)

    def factor(self, scope):
        t = self.next()
        if t.text == "(":
            inner = self.term(scope)
            self.expect(")", "')'")
            return inner
        if t.kind == "int":
            return IntConst(int(t.text))
        if t.kind == "ident":
            if t.text in scope:
                return Var(t.text)
            if t.text in self.funs:
                arity = self.funs[t.text]
                args = []
                if self.peek().text == "(":
                    self.next()
                    if self.peek().text != ")":
                        args.append(self.term(scope))
                        while self.peek().text == ",":
                            self.next()
                            args.append(self.term(scope))
                    self.expect(")", "')'")
                if len(args) != arity:
                    self.error("%s expects %d argument(s), got %d"
                               % (t.text, arity, len(args)), t)
                return App(t.text, tuple(args))
            if t.text in self.preds:
                self.error("predicate %s used in term position" % t.text, t)
            self.error("undeclared symbol: %s" % t.text, t)
        self.error("expected a term, found %r" % (t.text or "end of file"), t)


def parse_problem(text: str) -> ProblemFile:
    return _Parser(text).problem()


def parse_formula(text: str, tbl: PolarityTable, scope=frozenset()) -> Formula:
    """Parse a single formula against an existing signature (open terms allowed)."""
    p = _Parser(text)
    p.preds = dict(tbl.preds)
    p.funs = dict(tbl.funs)
    f, _ = p.formula(set(scope))
    if p.peek().kind != "eof":
        p.error("trailing input after the formula")
    return f


def print_problem(problem: ProblemFile) -> str:
    lines = []
    for name in sorted(problem.table.preds):
        arity, pol = problem.table.preds[name]
        lines.append("pred %s %d %s" % (name, arity, "+" if pol == POSITIVE else "-"))
    for name in sorted(problem.table.funs):
        lines.append("fun %s %d" % (name, problem.table.funs[name]))
    lines.append("goal " + format_formula(problem.goal))
    return "\n".join(lines) + "\n"


def flip_connectives(f: Formula, auto_paths, path=()) -> Formula:
    """Swap the polarity of every connective whose path is in auto_paths."""
    match f:
        case Lit(_):
            return f
        case AndP(a, b) | AndN(a, b) | OrP(a, b) | OrN(a, b):
            a = flip_connectives(a, auto_paths, path + (0,))
            b = flip_connectives(b, auto_paths, path + (1,))
            cls = type(f)
            if path in auto_paths:
                cls = {AndP: AndN, AndN: AndP, OrP: OrN, OrN: OrP}[cls]
            return cls(a, b)
        case Exists(x, b) | Forall(x, b):
            return type(f)(x, flip_connectives(b, auto_paths, path + (0,)))
    raise TypeError("not a formula: %r" % (f,))
