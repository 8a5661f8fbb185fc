"""Decision procedures over literal sets, and the contract they must honor.

An oracle answers a single question: is this set of literals jointly
unsatisfiable?  Every oracle must satisfy four closure properties (weakening,
contraction, instantiation, consistency); `oracle_axiom_suite` probes them
empirically on seeded random inputs and is the admission test for third-party
oracles.

Two oracles ship built in:
  * syntactic -- UNSAT iff the set contains a literal and its exact negation;
  * lia       -- like syntactic, but after normalizing every arithmetic
                 subterm to a canonical linear form, so e.g. x+3 and 1+(2+x)
                 collide.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Protocol

from .syntax import (
    App, IntConst, Literal, Plus, ScalarMul, Term, Var, substitute, term_key,
)


class TheoryOracle(Protocol):
    name: str

    def entails_unsat(self, literals: Iterable[Literal]) -> bool: ...


class SyntacticOracle:
    """UNSAT iff some literal and its negation both occur (structural equality)."""

    name = "syntactic"

    def entails_unsat(self, literals) -> bool:
        s = frozenset(literals)
        return any(l.negate() in s for l in s)


# ---------------------------------------------------------------------------
# Linear normalization: every maximal arithmetic subterm becomes
# c0 + c1*a1 + ... + cn*an with atoms sorted, zero coefficients dropped, and
# normalization applied recursively inside uninterpreted applications.

def _linear_parts(t: Term):
    """Return (constant, {atom: coefficient}) for an arithmetic term."""
    match t:
        case IntConst(v):
            return v, {}
        case Plus(a, b):
            c1, m1 = _linear_parts(a)
            c2, m2 = _linear_parts(b)
            for atom, k in m2.items():
                m1[atom] = m1.get(atom, 0) + k
            return c1 + c2, m1
        case ScalarMul(c, b):
            c1, m1 = _linear_parts(b)
            return c * c1, {atom: c * k for atom, k in m1.items()}
        case Var(_):
            return 0, {t: 1}
        case App(f, args):
            return 0, {App(f, tuple(normalize_term(a) for a in args)): 1}
    raise TypeError("not a term: %r" % (t,))


def normalize_term(t: Term) -> Term:
    c0, coeffs = _linear_parts(t)
    atoms = sorted((a for a, k in coeffs.items() if k != 0),
                   key=lambda a: (str(a), term_key(a)))
    parts = []
    if c0 != 0 or not atoms:
        parts.append(IntConst(c0))
    for atom in atoms:
        k = coeffs[atom]
        parts.append(atom if k == 1 else ScalarMul(k, atom))
    out = parts[0]
    for p in parts[1:]:
        out = Plus(out, p)
    return out


def normalize_literal(l: Literal) -> Literal:
    return Literal(l.pred, tuple(normalize_term(a) for a in l.args), l.negated)


class LinearArithmeticOracle:
    """Complementary-pair check modulo canonical linear forms of all terms."""

    name = "lia"

    def entails_unsat(self, literals) -> bool:
        s = frozenset(normalize_literal(l) for l in literals)
        return any(l.negate() in s for l in s)


ORACLES = {
    "syntactic": SyntacticOracle(),
    "lia": LinearArithmeticOracle(),
}


# ---------------------------------------------------------------------------
# Empirical axiom suite

@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    detail: str


_SUITE_PREDS = (("p", 1), ("q", 1), ("r", 2), ("s", 0))
_SUITE_FUNS = (("f", 1), ("g", 2), ("c", 0), ("d", 0))
_SUITE_VARS = ("x", "y", "z")


def _random_term(rng: random.Random, depth: int) -> Term:
    roll = rng.random()
    if depth <= 0 or roll < 0.35:
        kind = rng.random()
        if kind < 0.5:
            return Var(rng.choice(_SUITE_VARS))
        if kind < 0.8:
            return App(rng.choice(("c", "d")))
        return IntConst(rng.randint(-3, 3))
    if roll < 0.55:
        return Plus(_random_term(rng, depth - 1), _random_term(rng, depth - 1))
    if roll < 0.7:
        return ScalarMul(rng.randint(-2, 3), _random_term(rng, depth - 1))
    name, arity = rng.choice(_SUITE_FUNS[:2])
    return App(name, tuple(_random_term(rng, depth - 1) for _ in range(arity)))


def _random_literal(rng: random.Random) -> Literal:
    name, arity = rng.choice(_SUITE_PREDS)
    args = tuple(_random_term(rng, rng.randint(0, 2)) for _ in range(arity))
    return Literal(name, args, rng.random() < 0.5)


def _random_literal_set(rng: random.Random) -> frozenset:
    lits = [_random_literal(rng) for _ in range(rng.randint(1, 4))]
    if rng.random() < 0.5:
        seed = rng.choice(lits)
        if rng.random() < 0.5:
            lits.append(seed.negate())
        else:
            # arithmetic disguise of the complement: detectable by lia only
            disguised = Literal(seed.pred,
                                tuple(Plus(IntConst(0), a) for a in seed.args),
                                not seed.negated)
            lits.append(disguised)
    return frozenset(lits)


def oracle_axiom_suite(oracle, seed: int, samples: int) -> list:
    """Probe the four oracle axioms on `samples` seeded random literal sets.

    Returns every violation found, each with a replayable witness; an empty
    list means the oracle passed.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = random.Random(seed)
    violations = []

    def report(axiom, detail):
        violations.append(AxiomViolation(axiom, detail))

    for _ in range(samples):
        s = _random_literal_set(rng)
        verdict = oracle.entails_unsat(s)

        # contraction: duplicated members must not change the verdict
        dup = tuple(s) + tuple(s)[:1]
        if oracle.entails_unsat(dup) != verdict:
            report("contraction", "S=%s" % sorted(map(str, s)))

        if verdict:
            extra = frozenset(_random_literal(rng) for _ in range(rng.randint(1, 3)))
            if not oracle.entails_unsat(s | extra):
                report("weakening", "S=%s, extra=%s"
                       % (sorted(map(str, s)), sorted(map(str, extra))))
            x = rng.choice(_SUITE_VARS)
            t = _random_term(rng, rng.randint(0, 2))
            inst = frozenset(substitute(l, x, t) for l in s)
            if not oracle.entails_unsat(inst):
                report("instantiation", "S=%s, [%s := %s]"
                       % (sorted(map(str, s)), x, t))

        p = _random_literal(rng)
        if (oracle.entails_unsat(s | {p}) and oracle.entails_unsat(s | {p.negate()})
                and not oracle.entails_unsat(s)):
            report("consistency", "S=%s, p=%s" % (sorted(map(str, s)), p))

    return violations
