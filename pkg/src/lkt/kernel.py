"""Sequents, proof objects, and the independent proof checker.

A proof is a tree of rule applications.  Each node stores its full conclusion
sequent, so the checker can validate every node locally: shape of the
conclusion, shapes of the premiss conclusions, side conditions, and theory
calls (always re-executed against the oracle, never trusted from the stored
record).

Gamma contexts are restricted to negative formulae and positive literals;
delta is an arbitrary multiset.  Both are kept as canonically sorted tuples
(see syntax.mset) so that rule matching is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    NEGATIVE, POSITIVE,
    DeclarationError, Formula, Lit, Literal, AndP, AndN, OrP, OrN, Exists, Forall,
    Term, Var, alpha_eq, format_formula, free_vars, is_literal, mset, mset_add,
    mset_contains, mset_diff, mset_eq, mset_index, mset_remove, negate,
    polarity_of, substitute,
)


class KernelError(Exception):
    """A proof constructor was applied to premisses that do not fit the rule."""


class InputError(ValueError):
    """A public operation was called with arguments violating its contract."""


# ---------------------------------------------------------------------------
# Sequents

@dataclass(frozen=True)
class Unfocused:
    gamma: tuple
    delta: tuple


@dataclass(frozen=True)
class Focused:
    gamma: tuple
    focus: Formula


Sequent = Unfocused | Focused


def sequent_eq(a: Sequent, b: Sequent) -> bool:
    if isinstance(a, Unfocused) and isinstance(b, Unfocused):
        return mset_eq(a.gamma, b.gamma) and mset_eq(a.delta, b.delta)
    if isinstance(a, Focused) and isinstance(b, Focused):
        return mset_eq(a.gamma, b.gamma) and alpha_eq(a.focus, b.focus)
    return False


def format_sequent(s: Sequent) -> str:
    g = ", ".join(format_formula(f) for f in s.gamma)
    if isinstance(s, Focused):
        return "%s |- [%s]" % (g, format_formula(s.focus))
    return "%s |- %s" % (g, ", ".join(format_formula(f) for f in s.delta))


def storable_in_gamma(f: Formula, tbl) -> bool:
    """Gamma may hold negative formulae and literals of either polarity."""
    return is_literal(f) or polarity_of(f, tbl) == NEGATIVE


def storable_on_right(f: Formula, tbl) -> bool:
    """The store rule moves positive formulae and literals out of delta."""
    return is_literal(f) or polarity_of(f, tbl) == POSITIVE


def atoms(gamma: tuple) -> tuple:
    """Literal sub-multiset of gamma, multiplicity preserved."""
    return tuple(f.lit for f in gamma if isinstance(f, Lit))


def atom_set(gamma: tuple) -> frozenset:
    return frozenset(f.lit for f in gamma if isinstance(f, Lit))


# ---------------------------------------------------------------------------
# Proof nodes

@dataclass(frozen=True)
class TheoryRecord:
    literals: frozenset
    verdict: str = "unsat"


AND_PLUS = "and+"
OR_PLUS_LEFT = "or+left"
OR_PLUS_RIGHT = "or+right"
EXISTS_INTRO = "exists"
INIT = "init"
THEORY_INIT = "theory-init"
RELEASE = "release"
AND_MINUS = "and-"
OR_MINUS = "or-"
FORALL_INTRO = "forall"
STORE = "store"
FOCUS = "focus"
THEORY_CLOSE = "theory-close"

CUT_RULES = tuple("cut%d" % i for i in range(1, 10))

_ARITY = {
    AND_PLUS: 2, OR_PLUS_LEFT: 1, OR_PLUS_RIGHT: 1, EXISTS_INTRO: 1,
    INIT: 0, THEORY_INIT: 0, RELEASE: 1,
    AND_MINUS: 2, OR_MINUS: 1, FORALL_INTRO: 1, STORE: 1,
    FOCUS: 1, THEORY_CLOSE: 0,
    "cut1": 1, "cut2": 1, "cut3": 2, "cut4": 2, "cut5": 2,
    "cut6": 2, "cut7": 2, "cut8": 2, "cut9": 2,
}


@dataclass(frozen=True)
class Proof:
    rule: str
    conclusion: Sequent
    premisses: tuple = ()
    witness: Term | None = None      # exists
    eigen: str | None = None         # forall
    position: int | None = None      # and-/or-/forall/store: principal index in delta
    selected: Formula | None = None  # focus
    record: TheoryRecord | None = None
    lit: Literal | None = None       # cut1/cut2/cut8
    lits: tuple | None = None        # cut9


def conclusion(pf: Proof) -> Sequent:
    return pf.conclusion


def proof_height(pf: Proof) -> int:
    return 1 + max((proof_height(p) for p in pf.premisses), default=0)


def proof_size(pf: Proof) -> int:
    return 1 + sum(proof_size(p) for p in pf.premisses)


def has_cut(pf: Proof) -> bool:
    return pf.rule in CUT_RULES or any(has_cut(p) for p in pf.premisses)


# ---------------------------------------------------------------------------
# Smart constructors.  Each derives the conclusion from its premisses and
# raises KernelError when the pieces do not fit the rule schema; proofs built
# through them always pass check().

def init_node(gamma: tuple, p: Literal, tbl) -> Proof:
    if not tbl.is_positive_literal(p):
        raise KernelError("init focus must be a positive literal: %s" % p)
    if not mset_contains(gamma, Lit(p)):
        raise KernelError("init literal not in gamma: %s" % p)
    return Proof(INIT, Focused(gamma, Lit(p)))


def theory_init_node(gamma: tuple, p: Literal, tbl, oracle) -> Proof:
    if not tbl.is_positive_literal(p):
        raise KernelError("theory-init focus must be a positive literal: %s" % p)
    required = atom_set(gamma) | {p.negate()}
    if not oracle.entails_unsat(required):
        raise KernelError("oracle does not refute %s" % sorted(map(str, required)))
    return Proof(THEORY_INIT, Focused(gamma, Lit(p)), record=TheoryRecord(required))


def release_node(premiss: Proof, tbl) -> Proof:
    c = premiss.conclusion
    if not isinstance(c, Unfocused) or len(c.delta) != 1:
        raise KernelError("release premiss must have a single delta formula")
    n = c.delta[0]
    if polarity_of(n, tbl) != NEGATIVE:
        raise KernelError("release focus must be negative: %s" % format_formula(n))
    return Proof(RELEASE, Focused(c.gamma, n), (premiss,))


def and_plus_node(left: Proof, right: Proof) -> Proof:
    cl, cr = left.conclusion, right.conclusion
    if not (isinstance(cl, Focused) and isinstance(cr, Focused)):
        raise KernelError("and+ premisses must be focused")
    if not mset_eq(cl.gamma, cr.gamma):
        raise KernelError("and+ premisses disagree on gamma")
    return Proof(AND_PLUS, Focused(cl.gamma, AndP(cl.focus, cr.focus)), (left, right))


def or_plus_node(premiss: Proof, other: Formula, side: str) -> Proof:
    c = premiss.conclusion
    if not isinstance(c, Focused):
        raise KernelError("or+ premiss must be focused")
    if side == "left":
        return Proof(OR_PLUS_LEFT, Focused(c.gamma, OrP(c.focus, other)), (premiss,))
    if side == "right":
        return Proof(OR_PLUS_RIGHT, Focused(c.gamma, OrP(other, c.focus)), (premiss,))
    raise KernelError("side must be 'left' or 'right'")


def exists_node(premiss: Proof, var: str, body: Formula, witness: Term) -> Proof:
    c = premiss.conclusion
    if not isinstance(c, Focused):
        raise KernelError("exists premiss must be focused")
    if not alpha_eq(c.focus, substitute(body, var, witness)):
        raise KernelError("exists premiss does not match instantiated body")
    return Proof(EXISTS_INTRO, Focused(c.gamma, Exists(var, body)), (premiss,),
                 witness=witness)


def and_minus_node(left: Proof, right: Proof, a: Formula, b: Formula) -> Proof:
    cl, cr = left.conclusion, right.conclusion
    if not (isinstance(cl, Unfocused) and isinstance(cr, Unfocused)):
        raise KernelError("and- premisses must be unfocused")
    if not mset_eq(cl.gamma, cr.gamma):
        raise KernelError("and- premisses disagree on gamma")
    rest = mset_remove(cl.delta, a)
    if not mset_eq(mset_remove(cr.delta, b), rest):
        raise KernelError("and- premisses disagree on delta context")
    principal = AndN(a, b)
    delta = mset_add(rest, principal)
    return Proof(AND_MINUS, Unfocused(cl.gamma, delta), (left, right),
                 position=mset_index(delta, principal))


def or_minus_node(premiss: Proof, a: Formula, b: Formula) -> Proof:
    c = premiss.conclusion
    if not isinstance(c, Unfocused):
        raise KernelError("or- premiss must be unfocused")
    rest = mset_remove(mset_remove(c.delta, a), b)
    principal = OrN(a, b)
    delta = mset_add(rest, principal)
    return Proof(OR_MINUS, Unfocused(c.gamma, delta), (premiss,),
                 position=mset_index(delta, principal))


def forall_node(premiss: Proof, var: str, body: Formula, eigen: str) -> Proof:
    c = premiss.conclusion
    if not isinstance(c, Unfocused):
        raise KernelError("forall premiss must be unfocused")
    inst = substitute(body, var, Var(eigen))
    rest = mset_remove(c.delta, inst)
    principal = Forall(var, body)
    delta = mset_add(rest, principal)
    concl = Unfocused(c.gamma, delta)
    if eigen in free_vars(concl.gamma) | free_vars(concl.delta):
        raise KernelError("eigenvariable %s occurs free in the conclusion" % eigen)
    return Proof(FORALL_INTRO, concl, (premiss,),
                 eigen=eigen, position=mset_index(delta, principal))


def store_node(premiss: Proof, a: Formula) -> Proof:
    c = premiss.conclusion
    if not isinstance(c, Unfocused):
        raise KernelError("store premiss must be unfocused")
    gamma = mset_remove(c.gamma, negate(a))
    delta = mset_add(c.delta, a)
    return Proof(STORE, Unfocused(gamma, delta), (premiss,),
                 position=mset_index(delta, a))


def focus_node(premiss: Proof, tbl) -> Proof:
    c = premiss.conclusion
    if not isinstance(c, Focused):
        raise KernelError("focus premiss must be focused")
    p = c.focus
    if polarity_of(p, tbl) != POSITIVE:
        raise KernelError("focused formula must be positive: %s" % format_formula(p))
    if not mset_contains(c.gamma, negate(p)):
        raise KernelError("negation of focus not in gamma")
    return Proof(FOCUS, Unfocused(c.gamma, ()), (premiss,), selected=p)


def theory_close_node(gamma: tuple, oracle) -> Proof:
    required = atom_set(gamma)
    if not oracle.entails_unsat(required):
        raise KernelError("oracle does not refute %s" % sorted(map(str, required)))
    return Proof(THEORY_CLOSE, Unfocused(gamma, ()), record=TheoryRecord(required))


# ---------------------------------------------------------------------------
# Checker

@dataclass
class CheckReport:
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self):
        if self.ok:
            return "ok"
        return "\n".join("at %s: %s" % (_fmt_path(p), m) for p, m in self.failures)


def _fmt_path(path: tuple) -> str:
    return ".".join(map(str, path)) if path else "root"


def check(pf: Proof, tbl, oracle, allow_cuts: bool = False) -> CheckReport:
    """Validate every node of a proof; collects all violations, never aborts early."""
    failures = []

    def fail(path, msg):
        failures.append((path, msg))

    def visit(pf, path):
        c = pf.conclusion
        try:
            for g in c.gamma:
                if not storable_in_gamma(g, tbl):
                    fail(path, "gamma holds a positive non-literal: %s" % format_formula(g))
            if len(pf.premisses) != _ARITY.get(pf.rule, -1):
                fail(path, "rule %s has %d premisses" % (pf.rule, len(pf.premisses)))
            elif pf.rule in CUT_RULES:
                if allow_cuts:
                    _check_cut(pf, tbl, oracle, path, fail)
                else:
                    fail(path, "cut node %s not allowed in a plain proof" % pf.rule)
            else:
                _check_rule(pf, tbl, oracle, path, fail)
        except DeclarationError as e:
            fail(path, str(e))
        except (ValueError, KernelError) as e:
            fail(path, "malformed node: %s" % e)
        for i, pm in enumerate(pf.premisses):
            visit(pm, path + (i,))

    visit(pf, ())
    failures.sort(key=lambda x: x[0])
    return CheckReport(failures)


def _premiss_matches(pf, i, expected, path, fail):
    got = pf.premisses[i].conclusion
    if not sequent_eq(got, expected):
        fail(path, "premiss %d concludes %s, expected %s"
             % (i, format_sequent(got), format_sequent(expected)))


def _check_record(pf, required, oracle, path, fail):
    if pf.record is None or pf.record.literals != required or pf.record.verdict != "unsat":
        fail(path, "theory record does not match the required literal set")
    if not oracle.entails_unsat(required):
        fail(path, "theory call not UNSAT on %s" % sorted(map(str, required)))


def _check_rule(pf, tbl, oracle, path, fail):
    c = pf.conclusion
    r = pf.rule

    if r in (AND_PLUS, OR_PLUS_LEFT, OR_PLUS_RIGHT, EXISTS_INTRO, INIT,
             THEORY_INIT, RELEASE):
        if not isinstance(c, Focused):
            fail(path, "rule %s needs a focused conclusion" % r)
            return
        a = c.focus
        if r == AND_PLUS:
            if not isinstance(a, AndP):
                return fail(path, "focus is not a positive conjunction")
            _premiss_matches(pf, 0, Focused(c.gamma, a.left), path, fail)
            _premiss_matches(pf, 1, Focused(c.gamma, a.right), path, fail)
        elif r in (OR_PLUS_LEFT, OR_PLUS_RIGHT):
            if not isinstance(a, OrP):
                return fail(path, "focus is not a positive disjunction")
            picked = a.left if r == OR_PLUS_LEFT else a.right
            _premiss_matches(pf, 0, Focused(c.gamma, picked), path, fail)
        elif r == EXISTS_INTRO:
            if not isinstance(a, Exists):
                return fail(path, "focus is not an existential")
            if pf.witness is None:
                return fail(path, "missing witness term")
            _premiss_matches(pf, 0, Focused(c.gamma, substitute(a.body, a.var, pf.witness)),
                             path, fail)
        elif r == INIT:
            if not (is_literal(a) and tbl.is_positive_literal(a.lit)):
                return fail(path, "init focus must be a positive literal")
            if not mset_contains(c.gamma, a):
                fail(path, "init literal not present in gamma")
        elif r == THEORY_INIT:
            if not (is_literal(a) and tbl.is_positive_literal(a.lit)):
                return fail(path, "theory-init focus must be a positive literal")
            _check_record(pf, atom_set(c.gamma) | {a.lit.negate()}, oracle, path, fail)
        elif r == RELEASE:
            if polarity_of(a, tbl) != NEGATIVE:
                return fail(path, "release focus must be negative")
            _premiss_matches(pf, 0, Unfocused(c.gamma, mset((a,))), path, fail)
        return

    if not isinstance(c, Unfocused):
        fail(path, "rule %s needs an unfocused conclusion" % r)
        return

    if r in (AND_MINUS, OR_MINUS, FORALL_INTRO, STORE):
        i = pf.position
        if i is None or not 0 <= i < len(c.delta):
            fail(path, "missing or out-of-range principal position")
            return
        a = c.delta[i]
        rest = c.delta[:i] + c.delta[i + 1:]
        if r == AND_MINUS:
            if not isinstance(a, AndN):
                return fail(path, "principal formula is not a negative conjunction")
            _premiss_matches(pf, 0, Unfocused(c.gamma, mset_add(rest, a.left)), path, fail)
            _premiss_matches(pf, 1, Unfocused(c.gamma, mset_add(rest, a.right)), path, fail)
        elif r == OR_MINUS:
            if not isinstance(a, OrN):
                return fail(path, "principal formula is not a negative disjunction")
            _premiss_matches(pf, 0, Unfocused(c.gamma, mset_add(rest, a.left, a.right)),
                             path, fail)
        elif r == FORALL_INTRO:
            if not isinstance(a, Forall):
                return fail(path, "principal formula is not a universal")
            if pf.eigen is None:
                return fail(path, "missing eigenvariable")
            if pf.eigen in free_vars(c.gamma) | free_vars(c.delta):
                return fail(path, "eigenvariable %s occurs free in the conclusion"
                            % pf.eigen)
            inst = substitute(a.body, a.var, Var(pf.eigen))
            _premiss_matches(pf, 0, Unfocused(c.gamma, mset_add(rest, inst)), path, fail)
        elif r == STORE:
            if not storable_on_right(a, tbl):
                return fail(path, "stored formula must be positive or a literal")
            _premiss_matches(pf, 0, Unfocused(mset_add(c.gamma, negate(a)), rest),
                             path, fail)
        return

    if r in (FOCUS, THEORY_CLOSE):
        if c.delta:
            fail(path, "structural rule %s requires an empty delta" % r)
            return
        if r == FOCUS:
            p = pf.selected
            if p is None:
                return fail(path, "missing selected formula")
            if polarity_of(p, tbl) != POSITIVE:
                return fail(path, "selected formula must be positive")
            if not mset_contains(c.gamma, negate(p)):
                return fail(path, "negation of selected formula not in gamma")
            _premiss_matches(pf, 0, Focused(c.gamma, p), path, fail)
        else:
            _check_record(pf, atom_set(c.gamma), oracle, path, fail)
        return

    fail(path, "unknown rule tag: %s" % r)


def _check_cut(pf, tbl, oracle, path, fail):
    """Validate a cut node against its rule schema (transform.eliminate removes them)."""
    c = pf.conclusion
    r = pf.rule

    def uc(i):
        s = pf.premisses[i].conclusion
        if not isinstance(s, Unfocused):
            fail(path, "cut premiss %d must be unfocused" % i)
            return None
        return s

    def fc(i):
        s = pf.premisses[i].conclusion
        if not isinstance(s, Focused):
            fail(path, "cut premiss %d must be focused" % i)
            return None
        return s

    if r in ("cut1", "cut2"):
        p = pf.lit
        if p is None or not tbl.is_positive_literal(p):
            return fail(path, "%s needs a positive literal parameter" % r)
        rc = fc(0) if r == "cut2" else uc(0)
        if rc is None:
            return
        if not mset_contains(rc.gamma, Lit(p)):
            return fail(path, "cut literal not in the premiss gamma")
        gamma = mset_remove(rc.gamma, Lit(p))
        expected = (Focused(gamma, rc.focus) if r == "cut2"
                    else Unfocused(gamma, rc.delta))
        if not sequent_eq(c, expected):
            fail(path, "conclusion does not match the %s schema" % r)
        if not oracle.entails_unsat(atom_set(gamma) | {p.negate()}):
            fail(path, "side theory call not UNSAT")
        return

    if r == "cut3":
        lc, rc = fc(0), uc(1)
        if lc is None or rc is None:
            return
        na = negate(lc.focus)
        if not mset_contains(rc.delta, na):
            return fail(path, "negated cut formula not in the right delta")
        if not mset_eq(lc.gamma, rc.gamma):
            return fail(path, "cut3 premisses disagree on gamma")
        if not sequent_eq(c, Unfocused(lc.gamma, mset_remove(rc.delta, na))):
            fail(path, "conclusion does not match the cut3 schema")
        return

    if r in ("cut4", "cut5"):
        lc = uc(0)
        rc = fc(1) if r == "cut5" else uc(1)
        if lc is None or rc is None:
            return
        if len(lc.delta) != 1:
            return fail(path, "%s left premiss must have a single delta formula" % r)
        n = lc.delta[0]
        if polarity_of(n, tbl) != NEGATIVE:
            return fail(path, "cut formula must be negative")
        if not mset_eq(rc.gamma, mset_add(lc.gamma, n)):
            return fail(path, "%s premisses disagree on gamma" % r)
        expected = (Focused(lc.gamma, rc.focus) if r == "cut5"
                    else Unfocused(lc.gamma, rc.delta))
        if not sequent_eq(c, expected):
            fail(path, "conclusion does not match the %s schema" % r)
        return

    lc, rc = uc(0), uc(1)
    if lc is None or rc is None:
        return

    if r == "cut6":
        try:
            extra = mset_diff(rc.gamma, lc.gamma)
        except ValueError:
            return fail(path, "cut6 premisses disagree on gamma")
        if len(extra) != 1 or polarity_of(extra[0], tbl) != NEGATIVE:
            return fail(path, "cut6 right gamma must extend the left by one negative formula")
        n = extra[0]
        if not mset_contains(lc.delta, n):
            return fail(path, "cut formula missing from the left delta")
        if not (mset_eq(mset_remove(lc.delta, n), rc.delta)
                and sequent_eq(c, Unfocused(lc.gamma, rc.delta))):
            fail(path, "conclusion does not match the cut6 schema")
        return

    if r == "cut7":
        if not mset_eq(lc.gamma, rc.gamma):
            return fail(path, "cut7 premisses disagree on gamma")
        for i, cand in enumerate(lc.delta):
            if not mset_contains(rc.delta, negate(cand)):
                continue
            d1 = lc.delta[:i] + lc.delta[i + 1:]
            d2 = mset_remove(rc.delta, negate(cand))
            if mset_eq(d1, d2) and sequent_eq(c, Unfocused(lc.gamma, d1)):
                return
        fail(path, "no cut formula matches the cut7 schema")
        return

    if r == "cut8":
        l = pf.lit
        if l is None:
            return fail(path, "cut8 needs a literal parameter")
        if not (mset_contains(lc.gamma, Lit(l)) and mset_contains(rc.gamma, Lit(l.negate()))):
            return fail(path, "cut literal not present in the premiss gammas")
        gamma = mset_remove(lc.gamma, Lit(l))
        if not (mset_eq(gamma, mset_remove(rc.gamma, Lit(l.negate())))
                and mset_eq(lc.delta, rc.delta)
                and sequent_eq(c, Unfocused(gamma, lc.delta))):
            fail(path, "conclusion does not match the cut8 schema")
        return

    if r == "cut9":
        ls = pf.lits
        if not ls:
            return fail(path, "cut9 needs a non-empty literal list")
        disj = _orn_chain([l.negate() for l in ls])
        try:
            gamma = mset_diff(lc.gamma, tuple(Lit(l) for l in ls))
        except ValueError:
            return fail(path, "cut literals not present in the left gamma")
        if not mset_contains(rc.gamma, disj):
            return fail(path, "disjunction of negated literals not in the right gamma")
        if not (mset_eq(gamma, mset_remove(rc.gamma, disj))
                and mset_eq(lc.delta, rc.delta)
                and sequent_eq(c, Unfocused(gamma, lc.delta))):
            fail(path, "conclusion does not match the cut9 schema")
        return

    fail(path, "unknown cut tag: %s" % r)


def _orn_chain(lits) -> Formula:
    out = Lit(lits[-1])
    for l in reversed(lits[:-1]):
        out = OrN(Lit(l), out)
    return out


def _andp_chain(lits) -> Formula:
    out = Lit(lits[-1])
    for l in reversed(lits[:-1]):
        out = AndP(Lit(l), out)
    return out
