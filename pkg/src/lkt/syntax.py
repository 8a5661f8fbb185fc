"""Polarized first-order syntax: terms, literals, formulae in negation normal form.

Formulae are immutable trees.  Negation is not a connective: it lives inside
literals, and `negate` pushes it through every connective by swapping each
connective with its dual.  Positivity of a literal depends on the declared
polarity of its predicate symbol (see PolarityTable).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

POSITIVE = "positive"
NEGATIVE = "negative"


class DeclarationError(Exception):
    """A symbol is used without a declaration (or redeclared)."""


# ---------------------------------------------------------------------------
# Terms

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    fun: str
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return self.fun
        return "%s(%s)" % (self.fun, ", ".join(str(a) for a in self.args))


@dataclass(frozen=True)
class IntConst:
    value: int

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Plus:
    left: "Term"
    right: "Term"

    def __str__(self):
        return "%s + %s" % (_term_atom_str(self.left), _term_atom_str(self.right))


@dataclass(frozen=True)
class ScalarMul:
    coeff: int
    body: "Term"

    def __str__(self):
        return "%d*%s" % (self.coeff, _term_atom_str(self.body))


Term = Var | App | IntConst | Plus | ScalarMul


def _term_atom_str(t):
    # parenthesize nested sums/products so printing round-trips
    if isinstance(t, (Plus, ScalarMul)):
        return "(%s)" % t
    return str(t)


# ---------------------------------------------------------------------------
# Literals and formulae

@dataclass(frozen=True)
class Literal:
    pred: str
    args: tuple = ()
    negated: bool = False

    def negate(self) -> "Literal":
        return Literal(self.pred, self.args, not self.negated)

    def __str__(self):
        body = self.pred if not self.args else "%s(%s)" % (
            self.pred, ", ".join(str(a) for a in self.args))
        return "~" + body if self.negated else body


@dataclass(frozen=True)
class Lit:
    lit: Literal


@dataclass(frozen=True)
class AndP:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class AndN:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class OrP:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class OrN:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Formula = Lit | AndP | AndN | OrP | OrN | Exists | Forall

_BINARY = {AndP: "/\\+", AndN: "/\\-", OrP: "\\/+", OrN: "\\/-"}
_QUANT = {Exists: "exists", Forall: "forall"}

# precedence levels: quantifiers bind weakest, then or, then and
_PREC_QUANT, _PREC_OR, _PREC_AND, _PREC_ATOM = 0, 1, 2, 3


def format_formula(f: Formula) -> str:
    return _fmt(f, 0)


def _fmt(f, level):
    match f:
        case Lit(l):
            return str(l)
        case AndP(a, b) | AndN(a, b):
            s = "%s %s %s" % (_fmt(a, _PREC_ATOM), _BINARY[type(f)], _fmt(b, _PREC_AND))
            return "(%s)" % s if level > _PREC_AND else s
        case OrP(a, b) | OrN(a, b):
            s = "%s %s %s" % (_fmt(a, _PREC_AND), _BINARY[type(f)], _fmt(b, _PREC_OR))
            return "(%s)" % s if level > _PREC_OR else s
        case Exists(x, b) | Forall(x, b):
            s = "%s %s. %s" % (_QUANT[type(f)], x, _fmt(b, _PREC_QUANT))
            return "(%s)" % s if level > _PREC_QUANT else s
    raise TypeError("not a formula: %r" % (f,))


# ---------------------------------------------------------------------------
# Signature / polarity table

@dataclass(frozen=True)
class PolarityTable:
    """Declared predicate symbols (arity + polarity) and function symbols (arity)."""

    preds: dict = field(default_factory=dict)   # name -> (arity, POSITIVE|NEGATIVE)
    funs: dict = field(default_factory=dict)    # name -> arity

    def pred_polarity(self, name: str) -> str:
        try:
            return self.preds[name][1]
        except KeyError:
            raise DeclarationError("undeclared predicate: %s" % name) from None

    def pred_arity(self, name: str) -> int:
        try:
            return self.preds[name][0]
        except KeyError:
            raise DeclarationError("undeclared predicate: %s" % name) from None

    def fun_arity(self, name: str) -> int:
        try:
            return self.funs[name]
        except KeyError:
            raise DeclarationError("undeclared function: %s" % name) from None

    def constants(self) -> list:
        return sorted(n for n, k in self.funs.items() if k == 0)

    def is_positive_literal(self, lit: Literal) -> bool:
        """Plain atom of a positive predicate, or negated atom of a negative one."""
        pos = self.pred_polarity(lit.pred) == POSITIVE
        return pos != lit.negated

    def literal_polarity(self, lit: Literal) -> str:
        return POSITIVE if self.is_positive_literal(lit) else NEGATIVE

    def with_flipped(self, pred: str) -> "PolarityTable":
        arity, pol = self.preds[pred]
        flipped = NEGATIVE if pol == POSITIVE else POSITIVE
        preds = dict(self.preds)
        preds[pred] = (arity, flipped)
        return PolarityTable(preds, dict(self.funs))


def polarity_of(f: Formula, tbl: PolarityTable) -> str:
    match f:
        case Lit(l):
            return tbl.literal_polarity(l)
        case AndP() | OrP() | Exists():
            return POSITIVE
        case AndN() | OrN() | Forall():
            return NEGATIVE
    raise TypeError("not a formula: %r" % (f,))


def is_literal(f: Formula) -> bool:
    return isinstance(f, Lit)


# ---------------------------------------------------------------------------
# Negation

def negate(f: Formula) -> Formula:
    match f:
        case Lit(l):
            return Lit(l.negate())
        case AndP(a, b):
            return OrN(negate(a), negate(b))
        case AndN(a, b):
            return OrP(negate(a), negate(b))
        case OrP(a, b):
            return AndN(negate(a), negate(b))
        case OrN(a, b):
            return AndP(negate(a), negate(b))
        case Exists(x, b):
            return Forall(x, negate(b))
        case Forall(x, b):
            return Exists(x, negate(b))
    raise TypeError("not a formula: %r" % (f,))


# ---------------------------------------------------------------------------
# Free variables, substitution, fresh names

def free_vars(obj) -> frozenset:
    """Free variables of a term, literal, formula, or collection thereof."""
    match obj:
        case Var(n):
            return frozenset((n,))
        case App(_, args) | Literal(_, args, _):
            return frozenset().union(*(free_vars(a) for a in args)) if args else frozenset()
        case IntConst():
            return frozenset()
        case Plus(a, b):
            return free_vars(a) | free_vars(b)
        case ScalarMul(_, b):
            return free_vars(b)
        case Lit(l):
            return free_vars(l)
        case AndP(a, b) | AndN(a, b) | OrP(a, b) | OrN(a, b):
            return free_vars(a) | free_vars(b)
        case Exists(x, b) | Forall(x, b):
            return free_vars(b) - {x}
        case tuple() | list() | set() | frozenset():
            out = frozenset()
            for item in obj:
                out |= free_vars(item)
            return out
    raise TypeError("cannot take free variables of %r" % (obj,))


def all_names(obj) -> frozenset:
    """Every variable name occurring in obj, bound or free."""
    match obj:
        case Var(n):
            return frozenset((n,))
        case App(_, args) | Literal(_, args, _):
            return frozenset().union(*(all_names(a) for a in args)) if args else frozenset()
        case IntConst():
            return frozenset()
        case Plus(a, b):
            return all_names(a) | all_names(b)
        case ScalarMul(_, b):
            return all_names(b)
        case Lit(l):
            return all_names(l)
        case AndP(a, b) | AndN(a, b) | OrP(a, b) | OrN(a, b):
            return all_names(a) | all_names(b)
        case Exists(x, b) | Forall(x, b):
            return all_names(b) | {x}
        case tuple() | list() | set() | frozenset():
            out = frozenset()
            for item in obj:
                out |= all_names(item)
            return out
    raise TypeError("cannot collect names of %r" % (obj,))


def fresh_name(base: str, avoid) -> str:
    """Smallest numeric suffix making `base` distinct from everything in avoid."""
    if base not in avoid:
        return base
    i = 1
    while "%s%d" % (base, i) in avoid:
        i += 1
    return "%s%d" % (base, i)


def substitute(obj, x: str, t: Term):
    """Capture-avoiding substitution of t for free occurrences of x.

    Accepts terms, literals, formulae, and tuples of formulae.  Returns the
    original object when x does not occur free in it.
    """
    if x not in free_vars(obj):
        return obj
    match obj:
        case Var(n):
            return t if n == x else obj
        case App(f, args):
            return App(f, tuple(substitute(a, x, t) for a in args))
        case IntConst():
            return obj
        case Plus(a, b):
            return Plus(substitute(a, x, t), substitute(b, x, t))
        case ScalarMul(c, b):
            return ScalarMul(c, substitute(b, x, t))
        case Literal(p, args, neg):
            return Literal(p, tuple(substitute(a, x, t) for a in args), neg)
        case Lit(l):
            return Lit(substitute(l, x, t))
        case AndP(a, b) | AndN(a, b) | OrP(a, b) | OrN(a, b):
            return type(obj)(substitute(a, x, t), substitute(b, x, t))
        case Exists(y, b) | Forall(y, b):
            # y != x here, since x is free in obj
            if y in free_vars(t):
                y2 = fresh_name(y, free_vars(t) | all_names(b) | {x})
                b = substitute(b, y, Var(y2))
                y = y2
            return type(obj)(y, substitute(b, x, t))
        case tuple():
            return tuple(substitute(item, x, t) for item in obj)
    raise TypeError("cannot substitute into %r" % (obj,))


# ---------------------------------------------------------------------------
# Alpha-equivalence and the canonical order on formulae

@lru_cache(maxsize=None)
def canon(f: Formula) -> Formula:
    """Rename bound variables to depth-indexed names; alpha-equal formulae coincide."""
    return _canon(f, {}, 0)


def _canon(f, env, depth):
    match f:
        case Lit(l):
            return Lit(_canon_lit(l, env))
        case AndP(a, b) | AndN(a, b) | OrP(a, b) | OrN(a, b):
            return type(f)(_canon(a, env, depth), _canon(b, env, depth))
        case Exists(x, b) | Forall(x, b):
            cx = "$%d" % depth
            env2 = dict(env)
            env2[x] = cx
            return type(f)(cx, _canon(b, env2, depth + 1))
    raise TypeError("not a formula: %r" % (f,))


def _canon_lit(l, env):
    return Literal(l.pred, tuple(_canon_term(a, env) for a in l.args), l.negated)


def _canon_term(t, env):
    match t:
        case Var(n):
            return Var(env.get(n, n))
        case App(f, args):
            return App(f, tuple(_canon_term(a, env) for a in args))
        case IntConst():
            return t
        case Plus(a, b):
            return Plus(_canon_term(a, env), _canon_term(b, env))
        case ScalarMul(c, b):
            return ScalarMul(c, _canon_term(b, env))
    raise TypeError("not a term: %r" % (t,))


def alpha_eq(f: Formula, g: Formula) -> bool:
    return f == g or canon(f) == canon(g)


def term_key(t: Term):
    match t:
        case Var(n):
            return (0, n)
        case App(f, args):
            return (1, f, tuple(term_key(a) for a in args))
        case IntConst(v):
            return (2, v)
        case Plus(a, b):
            return (3, term_key(a), term_key(b))
        case ScalarMul(c, b):
            return (4, c, term_key(b))
    raise TypeError("not a term: %r" % (t,))


def literal_key(l: Literal):
    return (l.pred, tuple(term_key(a) for a in l.args), l.negated)


@lru_cache(maxsize=None)
def formula_key(f: Formula):
    """Total-order key; alpha-equivalent formulae get equal keys."""
    return _key(canon(f))


def _key(f):
    match f:
        case Lit(l):
            return (0, literal_key(l))
        case AndP(a, b):
            return (1, _key(a), _key(b))
        case AndN(a, b):
            return (2, _key(a), _key(b))
        case OrP(a, b):
            return (3, _key(a), _key(b))
        case OrN(a, b):
            return (4, _key(a), _key(b))
        case Exists(_, b):
            return (5, _key(b))
        case Forall(_, b):
            return (6, _key(b))
    raise TypeError("not a formula: %r" % (f,))


def formula_size(f: Formula) -> int:
    """Logical size: connectives and quantifiers plus one per literal (terms ignored)."""
    match f:
        case Lit(_):
            return 1
        case AndP(a, b) | AndN(a, b) | OrP(a, b) | OrN(a, b):
            return 1 + formula_size(a) + formula_size(b)
        case Exists(_, b) | Forall(_, b):
            return 1 + formula_size(b)
    raise TypeError("not a formula: %r" % (f,))


# ---------------------------------------------------------------------------
# Multisets of formulae as canonically sorted tuples

def mset(items) -> tuple:
    return tuple(sorted(items, key=formula_key))


def mset_add(ms: tuple, *fs: Formula) -> tuple:
    return mset(ms + fs)


def mset_index(ms: tuple, f: Formula) -> int:
    """Index of the first element alpha-equal to f; -1 if absent."""
    k = formula_key(f)
    for i, g in enumerate(ms):
        if formula_key(g) == k:
            return i
    return -1


def mset_contains(ms: tuple, f: Formula) -> bool:
    return mset_index(ms, f) >= 0


def mset_remove(ms: tuple, f: Formula) -> tuple:
    """Drop one occurrence (up to alpha) of f; ValueError if absent."""
    i = mset_index(ms, f)
    if i < 0:
        raise ValueError("formula not in multiset: %s" % format_formula(f))
    return ms[:i] + ms[i + 1:]


def mset_count(ms: tuple, f: Formula) -> int:
    k = formula_key(f)
    return sum(1 for g in ms if formula_key(g) == k)


def mset_eq(a: tuple, b: tuple) -> bool:
    if len(a) != len(b):
        return False
    return all(formula_key(x) == formula_key(y) for x, y in zip(a, b))


def mset_diff(big: tuple, small: tuple) -> tuple:
    """Multiset difference big - small; ValueError if small is not included."""
    out = big
    for f in small:
        out = mset_remove(out, f)
    return out
