"""Bounded proof search with the three-phase focusing discipline.

The asynchronous phase is deterministic: the leftmost delta formula (in the
canonical multiset order) is decomposed if it is a negative non-literal and
stored otherwise; invertibility makes backtracking across these steps
unnecessary.  Once delta is empty, the structural phase tries the theory call
first and then focuses on each candidate in canonical order; each focus
spends one unit of the decision budget.  Inside a focus, the synchronous
phase backtracks over disjunct choice and witness terms.

Every returned proof is built through the kernel's smart constructors and
passes the independent checker.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .kernel import (
    Focused, InputError, Proof, Sequent, Unfocused, and_minus_node,
    and_plus_node, atom_set, exists_node, focus_node, forall_node, init_node,
    or_minus_node, or_plus_node, release_node, storable_in_gamma, store_node,
    theory_close_node, theory_init_node,
)
from .syntax import (
    NEGATIVE, POSITIVE,
    AndN, AndP, App, Exists, Forall, Formula, Lit, OrN, OrP, PolarityTable,
    Term, Var, formula_key, free_vars, fresh_name, is_literal, mset, mset_add,
    mset_contains, negate, polarity_of, substitute,
)


@dataclass(frozen=True)
class SearchConfig:
    max_decisions: int = 8
    max_witness_depth: int = 2
    branch_order: str = "left_first"

    def __post_init__(self):
        if self.max_decisions < 0 or self.max_witness_depth < 0:
            raise InputError("search bounds must be non-negative")
        if self.branch_order not in ("left_first", "right_first"):
            raise InputError("branch_order must be left_first or right_first")


@dataclass
class SearchStats:
    nodes: int = 0
    decisions: int = 0
    witnesses: int = 0

    def line(self) -> str:
        return "nodes=%d decisions=%d witnesses=%d" % (
            self.nodes, self.decisions, self.witnesses)


@dataclass(frozen=True)
class Proved:
    proof: Proof
    stats: SearchStats


@dataclass(frozen=True)
class Exhausted:
    stats: SearchStats


SearchOutcome = Proved | Exhausted


def enumerate_witnesses(free, tbl: PolarityTable, depth: int) -> list:
    """All terms over the free variables and the signature, nesting depth <= depth.

    Ordered by (depth, variables first, printed form).  When the signature
    declares no constants a distinguished fresh one is added so the term
    universe is never empty.
    """
    free = sorted(free)
    consts = [App(c) for c in tbl.constants()]
    if not consts:
        i = 0
        while "w%d" % i in tbl.funs or "w%d" % i in free:
            i += 1
        consts = [App("w%d" % i)]
    funs = sorted((n, k) for n, k in tbl.funs.items() if k > 0)

    levels = [[Var(v) for v in free] + consts]
    for d in range(1, depth + 1):
        smaller = [t for level in levels for t in level]
        prev = levels[-1]
        level = []
        for name, arity in funs:
            for args in itertools.product(smaller, repeat=arity):
                if any(a in prev for a in args):
                    level.append(App(name, args))
        levels.append(level)

    out, seen = [], set()
    for level in levels:
        for t in sorted(level, key=lambda t: (not isinstance(t, Var), str(t))):
            if t not in seen:
                seen.add(t)
                out.append(t)
    return out


class _Searcher:
    def __init__(self, tbl, oracle, cfg):
        self.tbl = tbl
        self.oracle = oracle
        self.cfg = cfg
        self.stats = SearchStats()

    def unfocused(self, gamma, delta, budget):
        self.stats.nodes += 1
        tbl = self.tbl
        if delta:
            a, rest = delta[0], delta[1:]
            match a:
                case AndN(l, r):
                    p1 = self.unfocused(gamma, mset_add(rest, l), budget)
                    if p1 is None:
                        return None
                    p2 = self.unfocused(gamma, mset_add(rest, r), budget)
                    if p2 is None:
                        return None
                    return and_minus_node(p1, p2, l, r)
                case OrN(l, r):
                    p = self.unfocused(gamma, mset_add(rest, l, r), budget)
                    return None if p is None else or_minus_node(p, l, r)
                case Forall(x, body):
                    eigen = fresh_name(x, free_vars(gamma) | free_vars(delta))
                    inst = substitute(body, x, Var(eigen))
                    p = self.unfocused(gamma, mset_add(rest, inst), budget)
                    return None if p is None else forall_node(p, x, body, eigen)
                case _:
                    p = self.unfocused(mset_add(gamma, negate(a)), rest, budget)
                    return None if p is None else store_node(p, a)

        if self.oracle.entails_unsat(atom_set(gamma)):
            return theory_close_node(gamma, self.oracle)
        if budget <= 0:
            return None
        seen = set()
        for g in gamma:
            if polarity_of(g, tbl) != NEGATIVE:
                continue
            key = formula_key(g)
            if key in seen:
                continue
            seen.add(key)
            self.stats.decisions += 1
            p = self.focused(gamma, negate(g), budget - 1)
            if p is not None:
                return focus_node(p, tbl)
        return None

    def focused(self, gamma, focus, budget):
        self.stats.nodes += 1
        tbl = self.tbl
        match focus:
            case Lit(l) if tbl.is_positive_literal(l):
                if mset_contains(gamma, focus):
                    return init_node(gamma, l, tbl)
                if self.oracle.entails_unsat(atom_set(gamma) | {l.negate()}):
                    return theory_init_node(gamma, l, tbl, self.oracle)
                return None
            case AndP(a, b):
                p1 = self.focused(gamma, a, budget)
                if p1 is None:
                    return None
                p2 = self.focused(gamma, b, budget)
                return None if p2 is None else and_plus_node(p1, p2)
            case OrP(a, b):
                sides = (("left", a, b), ("right", b, a))
                if self.cfg.branch_order == "right_first":
                    sides = sides[::-1]
                for side, picked, other in sides:
                    p = self.focused(gamma, picked, budget)
                    if p is not None:
                        return or_plus_node(p, other, side)
                return None
            case Exists(x, body):
                free = free_vars(gamma) | free_vars(focus)
                for t in enumerate_witnesses(free, tbl, self.cfg.max_witness_depth):
                    self.stats.witnesses += 1
                    p = self.focused(gamma, substitute(body, x, t), budget)
                    if p is not None:
                        return exists_node(p, x, body, t)
                return None
            case _:
                # negative focus: release back to the asynchronous phase
                p = self.unfocused(gamma, mset((focus,)), budget)
                return None if p is None else release_node(p, tbl)


def prove(goal: Sequent, tbl: PolarityTable, oracle, cfg: SearchConfig) -> SearchOutcome:
    """Search for a proof of the goal sequent within the configured bounds."""
    for g in goal.gamma:
        if not storable_in_gamma(g, tbl):
            raise InputError("gamma holds a positive non-literal: %s" % (g,))
    searcher = _Searcher(tbl, oracle, cfg)
    if isinstance(goal, Unfocused):
        pf = searcher.unfocused(mset(goal.gamma), mset(goal.delta), cfg.max_decisions)
    else:
        pf = searcher.focused(mset(goal.gamma), goal.focus, cfg.max_decisions)
    if pf is None:
        return Exhausted(searcher.stats)
    return Proved(pf, searcher.stats)


def prove_formula(f: Formula, tbl: PolarityTable, oracle, cfg: SearchConfig) -> SearchOutcome:
    return prove(Unfocused((), mset((f,))), tbl, oracle, cfg)
