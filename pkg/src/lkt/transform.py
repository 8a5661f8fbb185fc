"""Admissible rules and cut elimination as total functions on proofs.

weaken / contract / instantiate rewrite a proof without changing its rule
skeleton; invert strips an invertible rule off the root of an unfocused
proof; cut1..cut9 remove one cut each, recursing case by case on the shape
of a premiss; eliminate drives the nine of them over an extended proof,
innermost first.

Theory records are never patched: every rebuilt theory node re-queries the
oracle.  For an oracle honoring the four-axiom contract the re-query cannot
fail at the points where these constructions need it (that is exactly what
the weakening / instantiation / consistency axioms guarantee); a failure
surfaces as TransformError.
"""

from __future__ import annotations

from dataclasses import replace

from .kernel import (
    AND_MINUS, AND_PLUS, CUT_RULES, EXISTS_INTRO, FOCUS, FORALL_INTRO, INIT,
    OR_MINUS, OR_PLUS_LEFT, OR_PLUS_RIGHT, RELEASE, STORE, THEORY_CLOSE,
    THEORY_INIT,
    Focused, InputError, KernelError, Proof, TheoryRecord, Unfocused,
    _andp_chain, _fmt_path, _orn_chain, and_minus_node, and_plus_node,
    atom_set, exists_node, focus_node, forall_node, init_node, or_minus_node,
    or_plus_node, proof_height, release_node, sequent_eq, storable_in_gamma,
    store_node, theory_close_node, theory_init_node,
)
from .syntax import (
    NEGATIVE, POSITIVE,
    AndN, AndP, Exists, Forall, Formula, Lit, Literal, OrN, OrP, Term, Var,
    all_names, alpha_eq, format_formula, formula_size, free_vars, fresh_name,
    is_literal, mset, mset_add, mset_contains, mset_count, mset_diff, mset_eq,
    mset_index, mset_remove, negate, polarity_of, substitute,
)


class TransformError(Exception):
    """A proof transformation could not be carried out."""


def _log(trace, msg):
    if trace is not None:
        trace.append(msg)


def proof_names(pf: Proof) -> set:
    """Every identifier occurring anywhere in the proof (bound, free, eigen)."""
    names = set()

    def visit(p):
        c = p.conclusion
        names.update(all_names(c.gamma))
        if isinstance(c, Unfocused):
            names.update(all_names(c.delta))
        else:
            names.update(all_names(c.focus))
        if p.witness is not None:
            names.update(all_names(p.witness))
        if p.selected is not None:
            names.update(all_names(p.selected))
        if p.eigen is not None:
            names.add(p.eigen)
        if p.lit is not None:
            names.update(all_names(p.lit))
        for l in p.lits or ():
            names.update(all_names(l))
        for q in p.premisses:
            visit(q)

    visit(pf)
    return names


# ---------------------------------------------------------------------------
# Structure-preserving rewrites

def _retheory(pf, concl, prems, oracle, **changes):
    """Rebuild a node on a new conclusion, re-running its theory call if any."""
    if pf.rule == THEORY_INIT:
        required = atom_set(concl.gamma) | {concl.focus.lit.negate()}
    elif pf.rule == THEORY_CLOSE:
        required = atom_set(concl.gamma)
    else:
        return replace(pf, conclusion=concl, premisses=prems, **changes)
    if not oracle.entails_unsat(required):
        raise TransformError("theory call no longer UNSAT on %s"
                             % sorted(map(str, required)))
    return replace(pf, conclusion=concl, premisses=prems,
                   record=TheoryRecord(required), **changes)


def _rebuild_gamma(pf, adjust, tbl, oracle):
    prems = tuple(_rebuild_gamma(q, adjust, tbl, oracle) for q in pf.premisses)
    c = pf.conclusion
    gamma = adjust(c.gamma)
    concl = Unfocused(gamma, c.delta) if isinstance(c, Unfocused) else Focused(gamma, c.focus)
    return _retheory(pf, concl, prems, oracle)


def _subst_formula_tuple(fs, x, t):
    return mset(substitute(f, x, t) for f in fs)


def _naive_subst(pf, x, t, tbl, oracle):
    """Substitute t for x through a proof.  Preconditions: x is not the eigen
    of any node where it is free, and no eigenvariable occurs in t (callers
    rename first)."""
    c = pf.conclusion
    fv = free_vars(c.gamma) | (free_vars(c.delta) if isinstance(c, Unfocused)
                               else free_vars(c.focus))
    if x not in fv:
        # the subtree already proves the substituted sequent verbatim
        return pf
    prems = tuple(_naive_subst(q, x, t, tbl, oracle) for q in pf.premisses)
    if isinstance(c, Unfocused):
        delta = _subst_formula_tuple(c.delta, x, t)
        concl = Unfocused(_subst_formula_tuple(c.gamma, x, t), delta)
    else:
        delta = None
        concl = Focused(_subst_formula_tuple(c.gamma, x, t),
                        substitute(c.focus, x, t))
    changes = {}
    if pf.witness is not None:
        changes["witness"] = substitute(pf.witness, x, t)
    if pf.selected is not None:
        changes["selected"] = substitute(pf.selected, x, t)
    if pf.lit is not None:
        changes["lit"] = substitute(pf.lit, x, t)
    if pf.lits is not None:
        changes["lits"] = tuple(substitute(l, x, t) for l in pf.lits)
    if pf.position is not None and delta is not None:
        changes["position"] = mset_index(delta, substitute(c.delta[pf.position], x, t))
    return _retheory(pf, concl, prems, oracle, **changes)


def _rename_eigens(pf, bad, tbl, oracle, avoid=None):
    """Rename every eigenvariable whose name lies in `bad` to a globally fresh one."""
    if not bad:
        return pf
    if avoid is None:
        avoid = proof_names(pf) | set(bad)
    prems = tuple(_rename_eigens(q, bad, tbl, oracle, avoid) for q in pf.premisses)
    if prems != pf.premisses:
        pf = replace(pf, premisses=prems)
    if pf.eigen is not None and pf.eigen in bad:
        new = fresh_name(pf.eigen, avoid)
        avoid.add(new)
        prem = _naive_subst(pf.premisses[0], pf.eigen, Var(new), tbl, oracle)
        pf = replace(pf, eigen=new, premisses=(prem,))
    return pf


def weaken(pf: Proof, extra: Formula, tbl, oracle, trace=None) -> Proof:
    """Add `extra` (negative formula or literal) to gamma throughout the proof."""
    if not storable_in_gamma(extra, tbl):
        raise InputError("cannot weaken with a positive non-literal: %s"
                         % format_formula(extra))
    _log(trace, "- weaken %s" % format_formula(extra))
    pf = _rename_eigens(pf, free_vars(extra), tbl, oracle)
    return _rebuild_gamma(pf, lambda g: mset_add(g, extra), tbl, oracle)


def contract(pf: Proof, dup: Formula, tbl, oracle, trace=None) -> Proof:
    """Drop one of two copies of `dup` from gamma throughout the proof."""
    if mset_count(pf.conclusion.gamma, dup) < 2:
        raise InputError("contracted formula must occur at least twice in gamma")
    _log(trace, "- contract %s" % format_formula(dup))
    return _rebuild_gamma(pf, lambda g: mset_remove(g, dup), tbl, oracle)


def instantiate(pf: Proof, x: str, t: Term, tbl, oracle, trace=None) -> Proof:
    """Apply [t/x] to the whole proof, renaming clashing eigenvariables."""
    _log(trace, "- instantiate [%s := %s]" % (x, t))
    pf = _rename_eigens(pf, free_vars(t) | {x}, tbl, oracle)
    return _naive_subst(pf, x, t, tbl, oracle)


# ---------------------------------------------------------------------------
# Inversion of the four asynchronous rule families

def invert(pf: Proof, position: int, tbl, oracle, eigen: str | None = None) -> tuple:
    """Invert the root sequent at delta[position]; returns one or two proofs.

    Negative conjunction yields both component proofs; negative disjunction
    merges the disjuncts into delta; a universal exposes the body at a fresh
    eigenvariable (pass `eigen` to pick it); anything positive-or-literal is
    pushed into gamma negated.
    """
    c = pf.conclusion
    if not isinstance(c, Unfocused):
        raise InputError("can only invert an unfocused conclusion")
    if not 0 <= position < len(c.delta):
        raise InputError("position %r out of range" % (position,))
    a = c.delta[position]
    match a:
        case AndN(_, _):
            return _invert_and(pf, a, tbl, oracle)
        case OrN(_, _):
            return (_invert_or(pf, a, tbl, oracle),)
        case Forall(x, _):
            xhat = eigen or fresh_name(x, proof_names(pf))
            return (_invert_forall(pf, a, xhat, tbl, oracle),)
        case _:
            return (_invert_store(pf, a, tbl, oracle),)


def _principal(pf):
    c = pf.conclusion
    if pf.rule in (AND_MINUS, OR_MINUS, FORALL_INTRO, STORE) and pf.position is not None:
        return c.delta[pf.position]
    return None


def _commute(pf, rec, tbl, oracle):
    """Rebuild pf's last asynchronous rule over recursively inverted premisses.

    `rec` maps a premiss proof to its inverted proof (arity one inversion)."""
    prin = _principal(pf)
    if prin is None:
        raise TransformError("cannot invert past rule %s" % pf.rule)
    match pf.rule:
        case "and-":
            return and_minus_node(rec(pf.premisses[0]), rec(pf.premisses[1]),
                                  prin.left, prin.right)
        case "or-":
            return or_minus_node(rec(pf.premisses[0]), prin.left, prin.right)
        case "forall":
            return forall_node(rec(pf.premisses[0]), prin.var, prin.body, pf.eigen)
        case "store":
            return store_node(rec(pf.premisses[0]), prin)
    raise TransformError("cannot invert past rule %s" % pf.rule)


def _invert_store(pf, a, tbl, oracle):
    """Gamma |- a,Delta  =>  Gamma,~a |- Delta   (a positive or a literal)."""
    prin = _principal(pf)
    if pf.rule == STORE and alpha_eq(prin, a):
        return pf.premisses[0]
    return _commute(pf, lambda q: _invert_store(q, a, tbl, oracle), tbl, oracle)


def _invert_or(pf, a, tbl, oracle):
    """Gamma |- B orN C,Delta  =>  Gamma |- B,C,Delta."""
    prin = _principal(pf)
    if pf.rule == OR_MINUS and alpha_eq(prin, a):
        return pf.premisses[0]
    return _commute(pf, lambda q: _invert_or(q, a, tbl, oracle), tbl, oracle)


def _invert_forall(pf, a, xhat, tbl, oracle):
    """Gamma |- forall x B,Delta  =>  Gamma |- B[xhat/x],Delta."""
    prin = _principal(pf)
    if pf.rule == FORALL_INTRO and alpha_eq(prin, a):
        prem = pf.premisses[0]
        if pf.eigen == xhat:
            return prem
        return instantiate(prem, pf.eigen, Var(xhat), tbl, oracle)
    return _commute(pf, lambda q: _invert_forall(q, a, xhat, tbl, oracle), tbl, oracle)


def _invert_and(pf, a, tbl, oracle):
    """Gamma |- B andN C,Delta  =>  (Gamma |- B,Delta, Gamma |- C,Delta)."""
    prin = _principal(pf)
    if pf.rule == AND_MINUS and alpha_eq(prin, a):
        return (pf.premisses[0], pf.premisses[1])
    if prin is None:
        raise TransformError("cannot invert past rule %s" % pf.rule)
    match pf.rule:
        case "and-":
            l0, r0 = _invert_and(pf.premisses[0], a, tbl, oracle)
            l1, r1 = _invert_and(pf.premisses[1], a, tbl, oracle)
            return (and_minus_node(l0, l1, prin.left, prin.right),
                    and_minus_node(r0, r1, prin.left, prin.right))
        case "or-":
            l, r = _invert_and(pf.premisses[0], a, tbl, oracle)
            return (or_minus_node(l, prin.left, prin.right),
                    or_minus_node(r, prin.left, prin.right))
        case "forall":
            l, r = _invert_and(pf.premisses[0], a, tbl, oracle)
            return (forall_node(l, prin.var, prin.body, pf.eigen),
                    forall_node(r, prin.var, prin.body, pf.eigen))
        case "store":
            l, r = _invert_and(pf.premisses[0], a, tbl, oracle)
            return (store_node(l, prin), store_node(r, prin))
    raise TransformError("cannot invert past rule %s" % pf.rule)


# ---------------------------------------------------------------------------
# cut1 / cut2: cutting a positive literal against a theory fact

def cut1(p: Literal, right: Proof, tbl, oracle, trace=None) -> Proof:
    """From UNSAT(atoms(Gamma), ~p) and Gamma,p |- Delta conclude Gamma |- Delta."""
    rc = right.conclusion
    if not isinstance(rc, Unfocused):
        raise InputError("cut1 needs an unfocused right premiss")
    _check_cut_literal(p, rc, tbl)
    gamma = mset_remove(rc.gamma, Lit(p))
    if not oracle.entails_unsat(atom_set(gamma) | {p.negate()}):
        raise TransformError("cut1 side fact not UNSAT: %s, %s"
                             % (sorted(map(str, atom_set(gamma))), p.negate()))
    _log(trace, "- cut1 %s" % p)
    return _cut1(p, right, tbl, oracle, trace)


def cut2(p: Literal, right: Proof, tbl, oracle, trace=None) -> Proof:
    """As cut1, with a focused right premiss Gamma,p |- [B]."""
    rc = right.conclusion
    if not isinstance(rc, Focused):
        raise InputError("cut2 needs a focused right premiss")
    _check_cut_literal(p, rc, tbl)
    gamma = mset_remove(rc.gamma, Lit(p))
    if not oracle.entails_unsat(atom_set(gamma) | {p.negate()}):
        raise TransformError("cut2 side fact not UNSAT")
    _log(trace, "- cut2 %s" % p)
    return _cut2(p, right, tbl, oracle, trace)


def _check_cut_literal(p, rc, tbl):
    if not tbl.is_positive_literal(p):
        raise InputError("cut literal must be positive: %s" % p)
    if not mset_contains(rc.gamma, Lit(p)):
        raise InputError("cut literal %s not in the premiss gamma" % p)


def _cut1(p, right, tbl, oracle, trace):
    c = right.conclusion
    prin = _principal(right)
    match right.rule:
        case "and-":
            return and_minus_node(_cut1(p, right.premisses[0], tbl, oracle, trace),
                                  _cut1(p, right.premisses[1], tbl, oracle, trace),
                                  prin.left, prin.right)
        case "or-":
            return or_minus_node(_cut1(p, right.premisses[0], tbl, oracle, trace),
                                 prin.left, prin.right)
        case "forall":
            return forall_node(_cut1(p, right.premisses[0], tbl, oracle, trace),
                               prin.var, prin.body, right.eigen)
        case "store":
            return store_node(_cut1(p, right.premisses[0], tbl, oracle, trace), prin)
        case "focus":
            return focus_node(_cut2(p, right.premisses[0], tbl, oracle, trace), tbl)
        case "theory-close":
            # consistency: UNSAT(S,p) and UNSAT(S,~p) give UNSAT(S)
            return theory_close_node(mset_remove(c.gamma, Lit(p)), oracle)
    raise TransformError("cut1: unexpected rule %s" % right.rule)


def _cut2(p, right, tbl, oracle, trace):
    c = right.conclusion
    focus = c.focus
    match right.rule:
        case "and+":
            return and_plus_node(_cut2(p, right.premisses[0], tbl, oracle, trace),
                                 _cut2(p, right.premisses[1], tbl, oracle, trace))
        case "or+left":
            return or_plus_node(_cut2(p, right.premisses[0], tbl, oracle, trace),
                                focus.right, "left")
        case "or+right":
            return or_plus_node(_cut2(p, right.premisses[0], tbl, oracle, trace),
                                focus.left, "right")
        case "exists":
            return exists_node(_cut2(p, right.premisses[0], tbl, oracle, trace),
                               focus.var, focus.body, right.witness)
        case "release":
            return release_node(_cut1(p, right.premisses[0], tbl, oracle, trace), tbl)
        case "init":
            gamma = mset_remove(c.gamma, Lit(p))
            if mset_contains(gamma, focus):
                return init_node(gamma, focus.lit, tbl)
            # the initial literal was the cut literal itself: close by theory
            return theory_init_node(gamma, focus.lit, tbl, oracle)
        case "theory-init":
            # weakening then consistency absorb ~p into the recorded fact
            return theory_init_node(mset_remove(c.gamma, Lit(p)), focus.lit, tbl, oracle)
    raise TransformError("cut2: unexpected rule %s" % right.rule)


# ---------------------------------------------------------------------------
# cut3 / cut4 / cut5: cutting an arbitrary formula, by simultaneous recursion
# on (cut formula size, polarity, right premiss height).  The depth guard
# enforces the derived bound on that lexicographic measure.

class _Budget:
    def __init__(self, bound):
        self.bound = bound

    def step(self, depth):
        if depth > self.bound:
            raise TransformError("cut elimination recursion exceeded its bound (%d)"
                                 % self.bound)
        return depth + 1


def _measure_bound(cutformula, right):
    # size * 2 polarities * height, doubled for the release handoff where the
    # premiss height may stay equal, plus slack for degenerate leaves
    return 2 * formula_size(cutformula) * (2 * proof_height(right)) + 16


def cut3(left: Proof, right: Proof, tbl, oracle, trace=None) -> Proof:
    """From Gamma |- [A] and Gamma |- ~A,Delta conclude Gamma |- Delta."""
    lc, rc = left.conclusion, right.conclusion
    if not isinstance(lc, Focused) or not isinstance(rc, Unfocused):
        raise InputError("cut3 premiss shapes: focused left, unfocused right")
    if not mset_eq(lc.gamma, rc.gamma):
        raise InputError("cut3 premisses disagree on gamma")
    if not mset_contains(rc.delta, negate(lc.focus)):
        raise InputError("cut3: negated cut formula missing from the right delta")
    _log(trace, "- cut3 %s" % format_formula(lc.focus))
    budget = _Budget(_measure_bound(lc.focus, right))
    return _cut3(left, right, tbl, oracle, budget, 0, trace)


def cut4(left: Proof, right: Proof, tbl, oracle, trace=None) -> Proof:
    """From Gamma |- N and Gamma,N |- Delta conclude Gamma |- Delta."""
    n = _cut45_shape(left, right, tbl, focused_right=False)
    _log(trace, "- cut4 %s" % format_formula(n))
    budget = _Budget(_measure_bound(n, right))
    return _cut4(left, right, tbl, oracle, budget, 0, trace)


def cut5(left: Proof, right: Proof, tbl, oracle, trace=None) -> Proof:
    """From Gamma |- N and Gamma,N |- [B] conclude Gamma |- [B]."""
    n = _cut45_shape(left, right, tbl, focused_right=True)
    _log(trace, "- cut5 %s" % format_formula(n))
    budget = _Budget(_measure_bound(n, right))
    return _cut5(left, right, tbl, oracle, budget, 0, trace)


def _cut45_shape(left, right, tbl, focused_right):
    lc, rc = left.conclusion, right.conclusion
    if not isinstance(lc, Unfocused) or len(lc.delta) != 1:
        raise InputError("left premiss must conclude with a single delta formula")
    if focused_right != isinstance(rc, Focused):
        raise InputError("right premiss has the wrong sequent kind")
    n = lc.delta[0]
    if polarity_of(n, tbl) != NEGATIVE:
        raise InputError("cut formula must be negative: %s" % format_formula(n))
    if not mset_eq(rc.gamma, mset_add(lc.gamma, n)):
        raise InputError("premisses disagree on gamma")
    return n


def _cut3(left, right, tbl, oracle, budget, depth, trace):
    depth = budget.step(depth)
    a = left.conclusion.focus
    na = negate(a)
    match left.rule:
        case "and+":
            rho = _invert_or(right, na, tbl, oracle)
            inner = _cut3(left.premisses[0], rho, tbl, oracle, budget, depth, trace)
            return _cut3(left.premisses[1], inner, tbl, oracle, budget, depth, trace)
        case "or+left":
            rho, _ = _invert_and(right, na, tbl, oracle)
            return _cut3(left.premisses[0], rho, tbl, oracle, budget, depth, trace)
        case "or+right":
            _, rho = _invert_and(right, na, tbl, oracle)
            return _cut3(left.premisses[0], rho, tbl, oracle, budget, depth, trace)
        case "exists":
            xhat = fresh_name(a.var, proof_names(right) | proof_names(left)
                              | all_names(right.conclusion.gamma))
            rho = _invert_forall(right, na, xhat, tbl, oracle)
            rho = instantiate(rho, xhat, left.witness, tbl, oracle, trace)
            return _cut3(left.premisses[0], rho, tbl, oracle, budget, depth, trace)
        case "release":
            rho = _invert_store(right, na, tbl, oracle)
            return _cut4(left.premisses[0], rho, tbl, oracle, budget, depth, trace)
        case "init":
            rho = _invert_store(right, na, tbl, oracle)
            return contract(rho, a, tbl, oracle, trace)
        case "theory-init":
            rho = _invert_store(right, na, tbl, oracle)
            return cut1(a.lit, rho, tbl, oracle, trace)
    raise TransformError("cut3: unexpected rule %s" % left.rule)


def _cut4(left, right, tbl, oracle, budget, depth, trace):
    depth = budget.step(depth)
    n = left.conclusion.delta[0]
    gamma = left.conclusion.gamma
    prin = _principal(right)
    match right.rule:
        case "and-":
            return and_minus_node(
                _cut4(left, right.premisses[0], tbl, oracle, budget, depth, trace),
                _cut4(left, right.premisses[1], tbl, oracle, budget, depth, trace),
                prin.left, prin.right)
        case "or-":
            return or_minus_node(
                _cut4(left, right.premisses[0], tbl, oracle, budget, depth, trace),
                prin.left, prin.right)
        case "forall":
            return forall_node(
                _cut4(left, right.premisses[0], tbl, oracle, budget, depth, trace),
                prin.var, prin.body, right.eigen)
        case "store":
            left_w = weaken(left, negate(prin), tbl, oracle, trace)
            return store_node(
                _cut4(left_w, right.premisses[0], tbl, oracle, budget, depth, trace),
                prin)
        case "theory-close":
            if is_literal(n):
                # n is a negative literal; the left premiss can only end by
                # storing it, and its sub-proof closes the cut via cut1
                if left.rule != STORE:
                    raise TransformError("cut4: left premiss of a literal cut "
                                         "does not end with store")
                return cut1(n.lit.negate(), left.premisses[0], tbl, oracle, trace)
            return theory_close_node(gamma, oracle)
        case "focus":
            p = right.selected
            prem = right.premisses[0]
            if mset_contains(gamma, negate(p)):
                return focus_node(
                    _cut5(left, prem, tbl, oracle, budget, depth, trace), tbl)
            if not alpha_eq(negate(p), n):
                raise TransformError("cut4: focused formula matches neither gamma "
                                     "nor the cut formula")
            inner = _cut5(left, prem, tbl, oracle, budget, depth, trace)
            return _cut3(inner, left, tbl, oracle, budget, depth, trace)
    raise TransformError("cut4: unexpected rule %s" % right.rule)


def _cut5(left, right, tbl, oracle, budget, depth, trace):
    depth = budget.step(depth)
    gamma = left.conclusion.gamma
    focus = right.conclusion.focus
    match right.rule:
        case "and+":
            return and_plus_node(
                _cut5(left, right.premisses[0], tbl, oracle, budget, depth, trace),
                _cut5(left, right.premisses[1], tbl, oracle, budget, depth, trace))
        case "or+left":
            return or_plus_node(
                _cut5(left, right.premisses[0], tbl, oracle, budget, depth, trace),
                focus.right, "left")
        case "or+right":
            return or_plus_node(
                _cut5(left, right.premisses[0], tbl, oracle, budget, depth, trace),
                focus.left, "right")
        case "exists":
            return exists_node(
                _cut5(left, right.premisses[0], tbl, oracle, budget, depth, trace),
                focus.var, focus.body, right.witness)
        case "release":
            return release_node(
                _cut4(left, right.premisses[0], tbl, oracle, budget, depth, trace),
                tbl)
        case "init":
            # the focus literal is positive, the cut formula negative, so the
            # literal must already be in gamma
            return init_node(gamma, focus.lit, tbl)
        case "theory-init":
            try:
                return theory_init_node(gamma, focus.lit, tbl, oracle)
            except KernelError as e:
                raise TransformError(
                    "cut5: residual theory fact not UNSAT (the recorded call "
                    "absorbed the literal cut formula): %s" % e) from e
    raise TransformError("cut5: unexpected rule %s" % right.rule)


# ---------------------------------------------------------------------------
# cut6 .. cut9: derived from the above by inversion

def cut6(left: Proof, right: Proof, tbl, oracle, trace=None) -> Proof:
    """From Gamma |- N,Delta and Gamma,N |- Delta conclude Gamma |- Delta."""
    lc, rc = left.conclusion, right.conclusion
    if not isinstance(lc, Unfocused) or not isinstance(rc, Unfocused):
        raise InputError("cut6 needs two unfocused premisses")
    try:
        extra = mset_diff(rc.gamma, lc.gamma)
    except ValueError:
        raise InputError("cut6 premisses disagree on gamma") from None
    if len(extra) != 1:
        raise InputError("cut6 right gamma must extend the left by exactly one formula")
    n = extra[0]
    if polarity_of(n, tbl) != NEGATIVE:
        raise InputError("cut6 cut formula must be negative")
    if not mset_contains(lc.delta, n) or not mset_eq(mset_remove(lc.delta, n), rc.delta):
        raise InputError("cut6 deltas do not match the schema")
    _log(trace, "- cut6 %s" % format_formula(n))
    return _cut6(left, right, n, tbl, oracle, trace)


def _cut6(left, right, n, tbl, oracle, trace):
    delta = right.conclusion.delta
    if not delta:
        return cut4(left, right, tbl, oracle, trace)
    c = delta[0]
    match c:
        case AndN(a, b):
            l0, l1 = _invert_and(left, c, tbl, oracle)
            r0, r1 = _invert_and(right, c, tbl, oracle)
            return and_minus_node(_cut6(l0, r0, n, tbl, oracle, trace),
                                  _cut6(l1, r1, n, tbl, oracle, trace), a, b)
        case OrN(a, b):
            return or_minus_node(
                _cut6(_invert_or(left, c, tbl, oracle),
                      _invert_or(right, c, tbl, oracle), n, tbl, oracle, trace),
                a, b)
        case Forall(x, body):
            xhat = fresh_name(x, proof_names(left) | proof_names(right))
            return forall_node(
                _cut6(_invert_forall(left, c, xhat, tbl, oracle),
                      _invert_forall(right, c, xhat, tbl, oracle),
                      n, tbl, oracle, trace),
                x, body, xhat)
        case _:
            return store_node(
                _cut6(_invert_store(left, c, tbl, oracle),
                      _invert_store(right, c, tbl, oracle), n, tbl, oracle, trace),
                c)


def cut7(left: Proof, right: Proof, tbl, oracle, cutformula: Formula | None = None,
         trace=None) -> Proof:
    """From Gamma |- A,Delta and Gamma |- ~A,Delta conclude Gamma |- Delta."""
    lc, rc = left.conclusion, right.conclusion
    if not isinstance(lc, Unfocused) or not isinstance(rc, Unfocused):
        raise InputError("cut7 needs two unfocused premisses")
    if not mset_eq(lc.gamma, rc.gamma):
        raise InputError("cut7 premisses disagree on gamma")
    a = cutformula
    if a is None:
        for cand in lc.delta:
            if mset_contains(rc.delta, negate(cand)) and mset_eq(
                    mset_remove(lc.delta, cand), mset_remove(rc.delta, negate(cand))):
                a = cand
                break
        if a is None:
            raise InputError("cut7: no delta formula matches the schema")
    else:
        if not (mset_contains(lc.delta, a) and mset_contains(rc.delta, negate(a))
                and mset_eq(mset_remove(lc.delta, a),
                            mset_remove(rc.delta, negate(a)))):
            raise InputError("cut7 deltas do not match the given cut formula")
    _log(trace, "- cut7 %s" % format_formula(a))
    if polarity_of(a, tbl) == POSITIVE:
        a, left, right = negate(a), right, left
    rho = _invert_store(right, negate(a), tbl, oracle)
    return _cut6(left, rho, a, tbl, oracle, trace)


def cut8(l: Literal, left: Proof, right: Proof, tbl, oracle, trace=None) -> Proof:
    """From Gamma,l |- Delta and Gamma,~l |- Delta conclude Gamma |- Delta."""
    lc, rc = left.conclusion, right.conclusion
    if not isinstance(lc, Unfocused) or not isinstance(rc, Unfocused):
        raise InputError("cut8 needs two unfocused premisses")
    if not (mset_contains(lc.gamma, Lit(l)) and mset_contains(rc.gamma, Lit(l.negate()))):
        raise InputError("cut8 literal not present in the premiss gammas")
    if not mset_eq(mset_remove(lc.gamma, Lit(l)), mset_remove(rc.gamma, Lit(l.negate()))):
        raise InputError("cut8 premisses disagree on gamma")
    if not mset_eq(lc.delta, rc.delta):
        raise InputError("cut8 premisses disagree on delta")
    _log(trace, "- cut8 %s" % l)
    lpf = store_node(right, Lit(l))
    rpf = store_node(left, Lit(l.negate()))
    return cut7(lpf, rpf, tbl, oracle, Lit(l), trace)


def cut9(lits, left: Proof, right: Proof, tbl, oracle, trace=None) -> Proof:
    """From Gamma,l1..ln |- Delta and Gamma,(~l1 orN ... orN ~ln) |- Delta
    conclude Gamma |- Delta."""
    lits = tuple(lits)
    if not lits:
        raise InputError("cut9 needs at least one literal")
    lc, rc = left.conclusion, right.conclusion
    if not isinstance(lc, Unfocused) or not isinstance(rc, Unfocused):
        raise InputError("cut9 needs two unfocused premisses")
    conj = _andp_chain(list(lits))
    disj = negate(conj)
    try:
        gamma = mset_diff(lc.gamma, tuple(Lit(l) for l in lits))
    except ValueError:
        raise InputError("cut9 literals not all present in the left gamma") from None
    if not mset_contains(rc.gamma, disj):
        raise InputError("cut9: negated disjunction not in the right gamma")
    if not mset_eq(gamma, mset_remove(rc.gamma, disj)) or not mset_eq(lc.delta, rc.delta):
        raise InputError("cut9 premisses do not match the schema")
    _log(trace, "- cut9 %s" % ", ".join(map(str, lits)))
    lpf = store_node(right, conj)
    cur = left
    for li in lits:
        cur = store_node(cur, Lit(li.negate()))
    tail = Lit(lits[-1].negate())
    for li in reversed(lits[:-1]):
        cur = or_minus_node(cur, Lit(li.negate()), tail)
        tail = OrN(Lit(li.negate()), tail)
    return cut7(lpf, cur, tbl, oracle, conj, trace)


# ---------------------------------------------------------------------------
# Extended proofs: cut nodes and their elimination

def cut1_node(p: Literal, right: Proof, record: TheoryRecord | None = None) -> Proof:
    rc = right.conclusion
    gamma = mset_remove(rc.gamma, Lit(p))
    return Proof("cut1", Unfocused(gamma, rc.delta), (right,), lit=p, record=record)


def cut2_node(p: Literal, right: Proof, record: TheoryRecord | None = None) -> Proof:
    rc = right.conclusion
    gamma = mset_remove(rc.gamma, Lit(p))
    return Proof("cut2", Focused(gamma, rc.focus), (right,), lit=p, record=record)


def cut3_node(left: Proof, right: Proof) -> Proof:
    lc, rc = left.conclusion, right.conclusion
    delta = mset_remove(rc.delta, negate(lc.focus))
    return Proof("cut3", Unfocused(lc.gamma, delta), (left, right))


def cut4_node(left: Proof, right: Proof) -> Proof:
    return Proof("cut4", Unfocused(left.conclusion.gamma, right.conclusion.delta),
                 (left, right))


def cut5_node(left: Proof, right: Proof) -> Proof:
    return Proof("cut5", Focused(left.conclusion.gamma, right.conclusion.focus),
                 (left, right))


def cut6_node(left: Proof, right: Proof) -> Proof:
    return Proof("cut6", Unfocused(left.conclusion.gamma, right.conclusion.delta),
                 (left, right))


def cut7_node(left: Proof, right: Proof, cutformula: Formula) -> Proof:
    delta = mset_remove(left.conclusion.delta, cutformula)
    return Proof("cut7", Unfocused(left.conclusion.gamma, delta), (left, right))


def cut8_node(l: Literal, left: Proof, right: Proof) -> Proof:
    gamma = mset_remove(left.conclusion.gamma, Lit(l))
    return Proof("cut8", Unfocused(gamma, left.conclusion.delta), (left, right), lit=l)


def cut9_node(lits, left: Proof, right: Proof) -> Proof:
    lits = tuple(lits)
    gamma = mset_diff(left.conclusion.gamma, tuple(Lit(l) for l in lits))
    return Proof("cut9", Unfocused(gamma, left.conclusion.delta), (left, right),
                 lits=lits)


def eliminate(e: Proof, tbl, oracle, trace=None) -> Proof:
    """Replace every cut node, innermost first; the result is cut-free, has the
    same conclusion, and passes check."""

    def go(pf, path):
        prems = tuple(go(q, path + (i,)) for i, q in enumerate(pf.premisses))
        if pf.rule not in CUT_RULES:
            if all(a is b for a, b in zip(prems, pf.premisses)):
                return pf
            return replace(pf, premisses=prems)
        try:
            result = _apply_cut(pf, prems, tbl, oracle, trace)
        except (TransformError, KernelError, InputError, ValueError) as err:
            raise TransformError("at %s: %s" % (_fmt_path(path), err)) from err
        if not sequent_eq(result.conclusion, pf.conclusion):
            raise TransformError("at %s: eliminated %s changed the conclusion"
                                 % (_fmt_path(path), pf.rule))
        _log(trace, "%s %s -> %s" % (_fmt_path(path), pf.rule, result.rule))
        return result

    return go(e, ())


def _apply_cut(pf, prems, tbl, oracle, trace):
    match pf.rule:
        case "cut1":
            return cut1(pf.lit, prems[0], tbl, oracle, trace)
        case "cut2":
            return cut2(pf.lit, prems[0], tbl, oracle, trace)
        case "cut3":
            return cut3(prems[0], prems[1], tbl, oracle, trace)
        case "cut4":
            return cut4(prems[0], prems[1], tbl, oracle, trace)
        case "cut5":
            return cut5(prems[0], prems[1], tbl, oracle, trace)
        case "cut6":
            return cut6(prems[0], prems[1], tbl, oracle, trace)
        case "cut7":
            return cut7(prems[0], prems[1], tbl, oracle, trace=trace)
        case "cut8":
            return cut8(pf.lit, prems[0], prems[1], tbl, oracle, trace)
        case "cut9":
            return cut9(pf.lits, prems[0], prems[1], tbl, oracle, trace)
    raise TransformError("unknown cut tag %s" % pf.rule)
