import random

from helpers import TEST_TBL, random_formula
from lkt.syntax import (
    NEGATIVE, POSITIVE,
    AndN, AndP, App, Exists, Forall, IntConst, Lit, Literal, OrN, OrP, Plus,
    PolarityTable, Var, alpha_eq, format_formula, formula_key, free_vars,
    mset, mset_add, mset_count, mset_eq, mset_remove, negate, polarity_of,
    substitute,
)


def lp(name, *args, neg=False):
    return Lit(Literal(name, args, neg))


def test_polarity_of_literals():
    assert polarity_of(lp("p", Var("x")), TEST_TBL) == POSITIVE
    assert polarity_of(lp("p", Var("x"), neg=True), TEST_TBL) == NEGATIVE
    # a negatively declared predicate flips membership
    assert polarity_of(lp("n", Var("x")), TEST_TBL) == NEGATIVE
    assert polarity_of(lp("n", Var("x"), neg=True), TEST_TBL) == POSITIVE


def test_polarity_of_connectives():
    a, b = lp("s"), lp("m")
    assert polarity_of(AndP(a, b), TEST_TBL) == POSITIVE
    assert polarity_of(OrP(a, b), TEST_TBL) == POSITIVE
    assert polarity_of(Exists("x", lp("p", Var("x"))), TEST_TBL) == POSITIVE
    assert polarity_of(AndN(a, b), TEST_TBL) == NEGATIVE
    assert polarity_of(OrN(a, b), TEST_TBL) == NEGATIVE
    # universal is negative regardless of the body's predicate polarity
    assert polarity_of(Forall("x", lp("p", Var("x"))), TEST_TBL) == NEGATIVE
    assert polarity_of(Forall("x", lp("n", Var("x"))), TEST_TBL) == NEGATIVE


def test_negation_table():
    a, b = lp("p", Var("x")), lp("q", Var("x"))
    assert negate(AndP(a, b)) == OrN(negate(a), negate(b))
    assert negate(AndN(a, b)) == OrP(negate(a), negate(b))
    assert negate(OrP(a, b)) == AndN(negate(a), negate(b))
    assert negate(OrN(a, b)) == AndP(negate(a), negate(b))
    assert negate(Exists("x", a)) == Forall("x", negate(a))
    assert negate(Forall("x", a)) == Exists("x", negate(a))
    # composed: ~(exists x (p(x) or+ ~q(x))) = forall x (~p(x) and- q(x))
    f = Exists("x", OrP(a, negate(b)))
    assert negate(f) == Forall("x", AndN(negate(a), b))


def test_negation_involution_random():
    rng = random.Random(3)
    for _ in range(300):
        f = random_formula(rng, rng.randint(0, 5))
        assert negate(negate(f)) == f
        assert polarity_of(negate(f), TEST_TBL) != polarity_of(f, TEST_TBL)


def test_literal_membership_exclusive():
    rng = random.Random(4)
    for _ in range(200):
        f = random_formula(rng, 0)
        l = f.lit
        assert TEST_TBL.is_positive_literal(l) != TEST_TBL.is_positive_literal(l.negate())


def test_substitute_basic():
    f = OrP(lp("p", Var("x")), lp("q", Var("y")))
    got = substitute(f, "y", App("f", (Var("x"),)))
    assert got == OrP(lp("p", Var("x")), lp("q", App("f", (Var("x"),))))
    # bound occurrences untouched
    g = Forall("x", lp("p", Var("x")))
    assert substitute(g, "x", App("c")) == g


def test_substitute_capture_avoiding():
    # (forall y. p(x,y))[x := g(y)] renames the binder
    f = Forall("y", lp("r", Var("x"), Var("y")))
    got = substitute(f, "x", App("g", (Var("y"), Var("y"))))
    assert isinstance(got, Forall) and got.var != "y"
    assert free_vars(got) == {"y"}
    assert alpha_eq(negate(got), substitute(negate(f), "x", App("g", (Var("y"), Var("y")))))


def test_substitute_identity_when_absent():
    rng = random.Random(5)
    for _ in range(200):
        f = random_formula(rng, rng.randint(0, 4))
        if "zz" not in free_vars(f):
            assert substitute(f, "zz", App("c")) is f


def test_negate_substitute_commute():
    rng = random.Random(6)
    for _ in range(200):
        f = random_formula(rng, rng.randint(0, 4))
        t = App("f", (Var("y"),))
        assert alpha_eq(substitute(negate(f), "x", t), negate(substitute(f, "x", t)))


def test_free_vars():
    assert free_vars(Forall("x", lp("r", Var("x"), Var("y")))) == {"y"}
    t = App("f", (Plus(Var("x"), IntConst(3)),))
    assert free_vars(lp("p", t)) == {"x"}
    assert free_vars(()) == frozenset()


def test_alpha_equality_and_order():
    f = Forall("x", lp("p", Var("x")))
    g = Forall("y", lp("p", Var("y")))
    assert alpha_eq(f, g)
    assert formula_key(f) == formula_key(g)
    assert not alpha_eq(f, Forall("x", lp("q", Var("x"))))
    # nested binders with shadowing
    h1 = Forall("x", Exists("x", lp("p", Var("x"))))
    h2 = Forall("y", Exists("z", lp("p", Var("z"))))
    assert alpha_eq(h1, h2)


def test_multisets():
    a, b = lp("s"), lp("m")
    ms = mset((a, b, a))
    assert mset_count(ms, a) == 2
    assert mset_eq(mset_add(mset_remove(ms, a), a), ms)
    assert mset_eq(mset((b, a, a)), ms)
    # alpha-variants land in the same slot
    f = Forall("x", lp("p", Var("x")))
    g = Forall("y", lp("p", Var("y")))
    assert mset_eq(mset((f, b)), mset((g, b)))


def test_format_round_trips_through_parser():
    from lkt.parser import parse_formula
    rng = random.Random(8)
    tbl = PolarityTable(dict(TEST_TBL.preds), dict(TEST_TBL.funs))
    for _ in range(150):
        f = random_formula(rng, rng.randint(0, 4))
        text = format_formula(f)
        assert parse_formula(text, tbl, scope=free_vars(f)) == f
