import random

from helpers import LIA, SYN, random_literal
from lkt.oracles import (
    AxiomViolation, normalize_literal, normalize_term, oracle_axiom_suite,
)
from lkt.syntax import App, IntConst, Literal, Plus, ScalarMul, Var, substitute


def test_syntactic_examples():
    pc, npc = Literal("p", (App("c"),)), Literal("p", (App("c"),), True)
    assert SYN.entails_unsat({pc, npc})
    assert not SYN.entails_unsat({pc, Literal("p", (App("d"),), True)})
    # the syntactic oracle does not normalize arithmetic
    l1 = Literal("p", (Plus(Var("x"), IntConst(3)),))
    l2 = Literal("p", (Plus(IntConst(3), Var("x")),), True)
    assert not SYN.entails_unsat({l1, l2})
    assert LIA.entails_unsat({l1, l2})


def test_lia_examples():
    # the motivating instance: f(x+3, g(x)) vs f(1+(2+y), g(y)) at y = x
    a1 = Literal("p", (App("f", (Plus(Var("x"), IntConst(3)), App("g", (Var("x"),)))),))
    a2 = Literal("p", (App("f", (Plus(IntConst(1), Plus(IntConst(2), Var("x"))),
                                 App("g", (Var("x"),)))),), True)
    assert LIA.entails_unsat({a1, a2})
    assert not SYN.entails_unsat({a1, a2})
    assert not LIA.entails_unsat({Literal("p", (ScalarMul(2, Var("x")),))})
    assert LIA.entails_unsat({Literal("p", (Plus(Var("x"), Var("x")),)),
                              Literal("p", (ScalarMul(2, Var("x")),), True)})


def test_normalize_canonical_form():
    # c0 + sum of coefficient-weighted atoms, atoms ordered by printed form
    t = Plus(Plus(Var("y"), IntConst(2)), Plus(Var("x"), Var("y")))
    assert normalize_term(t) == Plus(Plus(IntConst(2), Var("x")), ScalarMul(2, Var("y")))
    assert normalize_term(IntConst(0)) == IntConst(0)
    assert normalize_term(Plus(Var("x"), ScalarMul(-1, Var("x")))) == IntConst(0)
    # normalization recurses inside uninterpreted applications
    inner = App("f", (Plus(IntConst(1), Plus(IntConst(2), Var("x"))),))
    assert normalize_term(inner) == App("f", (Plus(IntConst(3), Var("x")),))


def test_normalize_idempotent_and_subst_commute():
    rng = random.Random(11)
    from helpers import random_term
    for _ in range(300):
        t = random_term(rng, rng.randint(0, 3), {"x", "y"})
        n = normalize_term(t)
        assert normalize_term(n) == n
        u = random_term(rng, rng.randint(0, 2), {"y"})
        lhs = normalize_term(substitute(t, "x", u))
        rhs = normalize_term(substitute(normalize_term(t), "x", normalize_term(u)))
        assert lhs == rhs


def test_monotonicity():
    rng = random.Random(12)
    for oracle in (SYN, LIA):
        for _ in range(200):
            s = frozenset(random_literal(rng, {"x"}) for _ in range(rng.randint(1, 4)))
            if rng.random() < 0.5:
                l = next(iter(s))
                s = s | {l.negate()}
            bigger = s | {random_literal(rng, {"x"})}
            if oracle.entails_unsat(s):
                assert oracle.entails_unsat(bigger)


def test_axiom_suite_clean_oracles():
    assert oracle_axiom_suite(SYN, 1, 3000) == []
    assert oracle_axiom_suite(LIA, 1, 3000) == []


def test_axiom_suite_flags_broken_oracle():
    class SizeTwo:
        name = "size-two"

        def entails_unsat(self, lits):
            return len(frozenset(lits)) == 2

    violations = oracle_axiom_suite(SizeTwo(), 1, 300)
    assert any(v.axiom == "weakening" for v in violations)


def test_axiom_suite_flags_unstable_instantiation():
    class VarCounting:
        name = "var-counting"

        def entails_unsat(self, lits):
            from lkt.syntax import free_vars
            return bool(free_vars(tuple(lits)))

    violations = oracle_axiom_suite(VarCounting(), 2, 500)
    assert any(v.axiom == "instantiation" for v in violations)


def test_axiom_suite_rejects_bad_sample_count():
    import pytest
    with pytest.raises(ValueError):
        oracle_axiom_suite(SYN, 0, 0)
