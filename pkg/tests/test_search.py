import pytest

from helpers import LIA, SYN, TEST_TBL
from lkt.kernel import (
    EXISTS_INTRO, FOCUS, FORALL_INTRO, THEORY_CLOSE, Focused, InputError,
    Unfocused, check, sequent_eq,
)
from lkt.search import (
    Exhausted, Proved, SearchConfig, enumerate_witnesses, prove, prove_formula,
)
from lkt.syntax import (
    App, Exists, Forall, IntConst, Lit, Literal, OrN, OrP, Plus,
    PolarityTable, POSITIVE, Var, mset, negate,
)


def lp(name, *args, neg=False):
    return Lit(Literal(name, args, neg))


def nodes_of(pf):
    yield pf
    for q in pf.premisses:
        yield from nodes_of(q)


def test_excluded_middle_proves():
    out = prove_formula(OrN(lp("s"), lp("s", neg=True)), TEST_TBL, SYN,
                        SearchConfig(max_decisions=1, max_witness_depth=0))
    assert isinstance(out, Proved)
    assert check(out.proof, TEST_TBL, SYN).ok


def test_bare_positive_literal_exhausts():
    out = prove_formula(lp("s"), TEST_TBL, SYN, SearchConfig())
    assert isinstance(out, Exhausted)


def test_intro_formula_lia_vs_syntactic():
    tbl = PolarityTable({"p": (1, POSITIVE)}, {"f": 2, "g": 1})
    fx = App("f", (Plus(Var("x"), IntConst(3)), App("g", (Var("x"),))))
    fy = App("f", (Plus(IntConst(1), Plus(IntConst(2), Var("y"))), App("g", (Var("y"),))))
    goal = Forall("x", Exists("y", OrN(Lit(Literal("p", (fx,), True)),
                                       Lit(Literal("p", (fy,))))))
    cfg = SearchConfig(max_decisions=2, max_witness_depth=1)
    out = prove_formula(goal, tbl, LIA, cfg)
    assert isinstance(out, Proved)
    assert check(out.proof, tbl, LIA).ok
    # the witness is exactly the eigenvariable introduced for x
    ex = next(n for n in nodes_of(out.proof) if n.rule == EXISTS_INTRO)
    fa = next(n for n in nodes_of(out.proof) if n.rule == FORALL_INTRO)
    assert ex.witness == Var(fa.eigen)
    assert isinstance(prove_formula(goal, tbl, SYN, cfg), Exhausted)


def test_enumerate_witnesses_examples():
    assert enumerate_witnesses({"x"}, PolarityTable({}, {}), 0) == [Var("x"), App("w0")]
    assert enumerate_witnesses(set(), PolarityTable({}, {"c": 0, "f": 1}), 1) == \
        [App("c"), App("f", (App("c"),))]
    assert enumerate_witnesses(set(), PolarityTable({}, {}), 0) == [App("w0")]
    # size-then-lexicographic, variables first at equal size
    got = enumerate_witnesses({"a", "b"}, PolarityTable({}, {"c": 0}), 0)
    assert got == [Var("a"), Var("b"), App("c")]


def test_enumerate_witnesses_depth_two():
    got = enumerate_witnesses(set(), PolarityTable({}, {"c": 0, "f": 1}), 2)
    assert got == [App("c"), App("f", (App("c"),)), App("f", (App("f", (App("c"),)),))]


def test_ill_formed_goal_rejected():
    goal = Unfocused(mset((OrP(lp("s"), lp("s")),)), ())
    with pytest.raises(InputError):
        prove(goal, TEST_TBL, SYN, SearchConfig())


def test_determinism():
    goal = Exists("y", OrN(lp("p", Var("y"), neg=True), Forall("x", lp("p", Var("x")))))
    cfg = SearchConfig(max_decisions=4, max_witness_depth=1)
    a = prove_formula(goal, TEST_TBL, SYN, cfg)
    b = prove_formula(goal, TEST_TBL, SYN, cfg)
    assert isinstance(a, Proved) and a.proof == b.proof
    assert a.stats == b.stats


def test_bound_monotonicity():
    goal = Exists("y", OrN(lp("p", Var("y"), neg=True), Forall("x", lp("p", Var("x")))))
    assert isinstance(prove_formula(goal, TEST_TBL, SYN,
                                    SearchConfig(max_decisions=2, max_witness_depth=0)),
                      Proved)
    for d in (3, 5, 8):
        for w in (1, 2):
            out = prove_formula(goal, TEST_TBL, SYN,
                                SearchConfig(max_decisions=d, max_witness_depth=w))
            assert isinstance(out, Proved)


def test_phase_discipline_in_emitted_proofs(corpus_proofs):
    for name, problem, pf in corpus_proofs:
        for node in nodes_of(pf):
            if node.rule in (FOCUS, THEORY_CLOSE):
                assert node.conclusion.delta == (), name


def test_branch_order_flips_disjunct():
    goal = OrN(lp("s", neg=True), OrP(lp("s"), lp("s")))
    left = prove_formula(goal, TEST_TBL, SYN, SearchConfig(branch_order="left_first"))
    right = prove_formula(goal, TEST_TBL, SYN, SearchConfig(branch_order="right_first"))
    assert isinstance(left, Proved) and isinstance(right, Proved)
    rules_l = {n.rule for n in nodes_of(left.proof)}
    rules_r = {n.rule for n in nodes_of(right.proof)}
    assert "or+left" in rules_l and "or+right" in rules_r


def test_stats_line_format():
    out = prove_formula(OrN(lp("s"), lp("s", neg=True)), TEST_TBL, SYN, SearchConfig())
    assert out.stats.line() == "nodes=%d decisions=%d witnesses=%d" % (
        out.stats.nodes, out.stats.decisions, out.stats.witnesses)
