"""Shared test machinery: random formulae, provable instances, proof mutations."""

from __future__ import annotations

import random
from dataclasses import replace
from pathlib import Path

from lkt.kernel import (
    EXISTS_INTRO, FORALL_INTRO, OR_PLUS_LEFT, OR_PLUS_RIGHT, THEORY_CLOSE,
    THEORY_INIT,
    Proof, TheoryRecord, Unfocused,
)
from lkt.oracles import ORACLES
from lkt.parser import parse_problem
from lkt.search import Proved, SearchConfig, prove_formula
from lkt.syntax import (
    NEGATIVE, POSITIVE,
    AndN, AndP, App, Exists, Forall, IntConst, Lit, Literal, OrN, OrP, Plus,
    PolarityTable, ScalarMul, Var, alpha_eq, free_vars, negate, substitute,
)
from lkt.transform import _naive_subst

CORPUS_DIR = Path(__file__).resolve().parents[1] / "corpus"
SYN = ORACLES["syntactic"]
LIA = ORACLES["lia"]

TEST_TBL = PolarityTable(
    {"p": (1, POSITIVE), "q": (1, POSITIVE), "r": (2, POSITIVE),
     "s": (0, POSITIVE), "n": (1, NEGATIVE), "m": (0, NEGATIVE)},
    {"f": 1, "g": 2, "c": 0, "d": 0})

_QVARS = ("x", "y", "z", "u")


def load_corpus():
    out = []
    for path in sorted(CORPUS_DIR.glob("*.lkt")):
        out.append((path.name, parse_problem(path.read_text())))
    return out


def random_term(rng, depth, scope):
    roll = rng.random()
    if depth <= 0 or roll < 0.4:
        if scope and rng.random() < 0.6:
            return Var(rng.choice(sorted(scope)))
        if rng.random() < 0.7:
            return App(rng.choice(("c", "d")))
        return IntConst(rng.randint(-4, 4))
    if roll < 0.55:
        return Plus(random_term(rng, depth - 1, scope), random_term(rng, depth - 1, scope))
    if roll < 0.65:
        return ScalarMul(rng.randint(-2, 3), random_term(rng, depth - 1, scope))
    if rng.random() < 0.5:
        return App("f", (random_term(rng, depth - 1, scope),))
    return App("g", (random_term(rng, depth - 1, scope),
                     random_term(rng, depth - 1, scope)))


def random_literal(rng, scope):
    name, arity = rng.choice((("p", 1), ("q", 1), ("r", 2), ("s", 0), ("n", 1), ("m", 0)))
    args = tuple(random_term(rng, rng.randint(0, 2), scope) for _ in range(arity))
    return Literal(name, args, rng.random() < 0.5)


def random_formula(rng, depth, scope=frozenset()):
    if depth <= 0 or rng.random() < 0.3:
        return Lit(random_literal(rng, scope))
    kind = rng.randrange(6)
    if kind < 4:
        cls = (AndP, AndN, OrP, OrN)[kind]
        return cls(random_formula(rng, depth - 1, scope),
                   random_formula(rng, depth - 1, scope))
    v = rng.choice(_QVARS)
    cls = Exists if kind == 4 else Forall
    return cls(v, random_formula(rng, depth - 1, scope | {v}))


def instance_pool(rng, count, cfg=None):
    """Deterministic pool of (formula, proof) pairs: random F turned into the
    provable F orN ~F and proved with the syntactic oracle."""
    cfg = cfg or SearchConfig(max_decisions=5, max_witness_depth=1)
    pool = []
    while len(pool) < count:
        f = random_formula(rng, rng.randint(0, 2))
        goal = OrN(f, negate(f))
        out = prove_formula(goal, TEST_TBL, SYN, cfg)
        if isinstance(out, Proved):
            pool.append((goal, out.proof))
    return pool


def ground_literals(tbl, limit=4):
    """A few ground literals over a problem's own signature, both signs."""
    from lkt.search import enumerate_witnesses
    terms = enumerate_witnesses(frozenset(), tbl, 0)
    t0 = terms[0]
    out = []
    for name in sorted(tbl.preds):
        arity = tbl.preds[name][0]
        base = Literal(name, (t0,) * arity)
        out.extend([base, base.negate()])
    return out[:2 * limit]


def positive_ground_literal(tbl):
    for l in ground_literals(tbl, limit=99):
        if tbl.is_positive_literal(l):
            return l
    raise AssertionError("signature has no positive literal")


# ---------------------------------------------------------------------------
# Single-node mutations that must be rejected by the checker

def proof_nodes(pf):
    out = []

    def walk(p, path):
        out.append((path, p))
        for i, q in enumerate(p.premisses):
            walk(q, path + (i,))

    walk(pf, ())
    return out


def node_at(pf, path):
    for i in path:
        pf = pf.premisses[i]
    return pf


def replace_at(pf, path, new):
    if not path:
        return new
    prems = list(pf.premisses)
    prems[path[0]] = replace_at(prems[path[0]], path[1:], new)
    return replace(pf, premisses=tuple(prems))


MUTATION_KINDS = ("witness", "disjunct", "eigen", "record")


def mutation_candidates(pf):
    cands = []
    for path, node in proof_nodes(pf):
        if node.rule == EXISTS_INTRO:
            a = node.conclusion.focus
            if a.var in free_vars(a.body):
                cands.append(("witness", path))
        elif node.rule in (OR_PLUS_LEFT, OR_PLUS_RIGHT):
            f = node.conclusion.focus
            if not alpha_eq(f.left, f.right):
                cands.append(("disjunct", path))
        elif node.rule == FORALL_INTRO:
            c = node.conclusion
            if free_vars(c.gamma) | free_vars(c.delta):
                cands.append(("eigen", path))
        elif node.rule in (THEORY_INIT, THEORY_CLOSE):
            cands.append(("record", path))
    return cands


def apply_mutation(pf, kind, path, tbl, oracle, rng):
    """Corrupt one node; returns the mutated proof (guaranteed invalid)."""
    node = node_at(pf, path)
    if kind == "witness":
        a = node.conclusion.focus
        new_w = App("mutant_w")
        if alpha_eq(substitute(a.body, a.var, new_w),
                    node.premisses[0].conclusion.focus):
            new_w = App("mutant_w2")
        new = replace(node, witness=new_w)
    elif kind == "disjunct":
        flipped = OR_PLUS_RIGHT if node.rule == OR_PLUS_LEFT else OR_PLUS_LEFT
        new = replace(node, rule=flipped)
    elif kind == "eigen":
        c = node.conclusion
        fv = sorted(free_vars(c.gamma) | free_vars(c.delta))
        v = fv[rng.randrange(len(fv))]
        prem = _naive_subst(node.premisses[0], node.eigen, Var(v), tbl, oracle)
        new = replace(node, eigen=v, premisses=(prem,))
    elif kind == "record":
        tampered = node.record.literals | {Literal("mutant_q", (), rng.random() < 0.5)}
        new = replace(node, record=TheoryRecord(tampered))
    else:
        raise ValueError(kind)
    return replace_at(pf, path, new)
