import pytest

from helpers import SYN, TEST_TBL
from lkt.kernel import (
    AND_MINUS, INIT, OR_MINUS, STORE, THEORY_CLOSE,
    Focused, KernelError, Proof, TheoryRecord, Unfocused, atom_set, atoms,
    check, conclusion, focus_node, init_node, or_minus_node, sequent_eq,
    store_node, theory_close_node, theory_init_node,
)
from lkt.syntax import (
    AndN, App, Lit, Literal, OrN, Var, mset, mset_add, negate,
)


def lp(name, *args, neg=False):
    return Lit(Literal(name, args, neg))


P, NP = lp("s"), lp("s", neg=True)
Q, NQ = lp("m", neg=True), lp("m")   # q := ~m is the positive literal


def em_proof(oracle=SYN):
    close = theory_close_node(mset((P, NP)), oracle)
    s2 = store_node(close, NP)
    s1 = store_node(s2, P)
    return or_minus_node(s1, P, NP)


def test_atoms_examples():
    g = mset((P, NQ, AndN(P, Q)))
    assert atoms(g) == (NQ.lit, P.lit)
    assert atoms(()) == ()
    assert atoms(mset((P, P))) == (P.lit, P.lit)       # multiplicity kept
    assert atom_set(mset((P, P))) == frozenset({P.lit})


def test_em_proof_checks():
    pf = em_proof()
    report = check(pf, TEST_TBL, SYN)
    assert report.ok and report.failures == []
    assert sequent_eq(conclusion(pf), Unfocused((), mset((OrN(P, NP),))))


def test_em_proof_fails_under_sat_oracle():
    class Never:
        name = "never"

        def entails_unsat(self, lits):
            return False

    report = check(em_proof(), TEST_TBL, Never())
    assert not report.ok
    assert any("theory call not UNSAT" in msg for _, msg in report.failures)
    # the failing node is addressed by its tree path
    assert report.failures[0][0] == (0, 0, 0)


def test_check_collects_all_failures():
    bad = Proof(THEORY_CLOSE, Unfocused(mset((P,)), ()),
                record=TheoryRecord(frozenset({P.lit})))
    root = Proof(OR_MINUS, Unfocused((), mset((OrN(P, NP),))), (bad,), position=0)
    report = check(root, TEST_TBL, SYN)
    msgs = [m for _, m in report.failures]
    assert not report.ok
    assert any("premiss" in m for m in msgs)           # shape break at the root
    assert any("not UNSAT" in m for m in msgs)         # and the theory break below


def test_gamma_wellformedness_enforced():
    from lkt.syntax import OrP
    bad_gamma = mset((OrP(P, Q),))                     # positive non-literal
    node = Proof(THEORY_CLOSE, Unfocused(bad_gamma, ()),
                 record=TheoryRecord(frozenset()))
    report = check(node, TEST_TBL, SYN)
    assert any("positive non-literal" in m for _, m in report.failures)


def test_eigenvariable_condition_reported():
    # forall node whose eigenvariable is free in gamma
    px = lp("p", Var("v"))
    close = theory_close_node(mset((px, negate(px))), SYN)
    st = store_node(close, negate(px))                 # {p(v)} |- ~p(v)
    from lkt.kernel import forall_node
    with pytest.raises(KernelError, match="eigenvariable"):
        forall_node(st, "y", lp("p", Var("y"), neg=True), "v")


def test_record_must_match_required_set():
    pf = em_proof()
    # tamper with the record only; the sequents stay valid
    from dataclasses import replace
    tampered = replace(pf.premisses[0].premisses[0],
                       record=TheoryRecord(frozenset({P.lit})))
    bad = replace(pf, premisses=(replace(pf.premisses[0], premisses=(tampered,)),))
    report = check(bad, TEST_TBL, SYN)
    assert not report.ok
    assert any("record" in m for _, m in report.failures)


def test_init_requires_membership_and_polarity():
    with pytest.raises(KernelError):
        init_node(mset(()), P.lit, TEST_TBL)
    with pytest.raises(KernelError):
        init_node(mset((NP,)), NP.lit, TEST_TBL)       # negative literal focus
    node = init_node(mset((P,)), P.lit, TEST_TBL)
    assert check(node, TEST_TBL, SYN).ok


def test_theory_init_requires_unsat():
    with pytest.raises(KernelError):
        theory_init_node(mset(()), P.lit, TEST_TBL, SYN)
    node = theory_init_node(mset((P,)), P.lit, TEST_TBL, SYN)
    assert check(node, TEST_TBL, SYN).ok
    assert node.record.literals == frozenset({P.lit, NP.lit})


def test_focus_requires_empty_delta_and_membership():
    inner = init_node(mset((P, negate(P))), P.lit, TEST_TBL)
    node = focus_node(inner, TEST_TBL)
    assert check(node, TEST_TBL, SYN).ok
    assert node.conclusion.delta == ()
    with pytest.raises(KernelError):
        focus_node(init_node(mset((P,)), P.lit, TEST_TBL), TEST_TBL)


def test_cut_nodes_rejected_without_flag():
    from lkt.transform import cut8_node, weaken
    pf = em_proof()
    e = cut8_node(Q.lit, weaken(pf, Q, TEST_TBL, SYN), weaken(pf, NQ, TEST_TBL, SYN))
    assert not check(e, TEST_TBL, SYN).ok
    assert check(e, TEST_TBL, SYN, allow_cuts=True).ok


def test_checker_rejects_wrong_arity():
    pf = em_proof()
    from dataclasses import replace
    bad = replace(pf, premisses=())
    report = check(bad, TEST_TBL, SYN)
    assert any("premisses" in m for _, m in report.failures)


def test_checker_reports_undeclared_predicate():
    mystery = Lit(Literal("zz_undeclared"))
    node = Proof(THEORY_CLOSE, Unfocused(mset((mystery,)), ()),
                 record=TheoryRecord(frozenset({mystery.lit})))
    report = check(node, TEST_TBL, SYN)
    assert any("undeclared" in m for _, m in report.failures)
