"""Focused polarized sequent calculus toolkit: kernel, prover, cut elimination."""

from .kernel import (
    CheckReport, Focused, Proof, Sequent, TheoryRecord, Unfocused, atoms,
    atom_set, check, conclusion,
)
from .oracles import (
    LinearArithmeticOracle, ORACLES, SyntacticOracle, TheoryOracle,
    normalize_term, oracle_axiom_suite,
)
from .parser import ParseError, ProblemFile, parse_problem, print_problem
from .proofio import dump_proof, format_proof, load_proof
from .search import (
    Exhausted, Proved, SearchConfig, SearchOutcome, SearchStats,
    enumerate_witnesses, prove, prove_formula,
)
from .syntax import (
    NEGATIVE, POSITIVE,
    AndN, AndP, App, Exists, Forall, Formula, IntConst, Lit, Literal, OrN,
    OrP, Plus, PolarityTable, ScalarMul, Term, Var, alpha_eq, format_formula,
    free_vars, negate, polarity_of, substitute,
)
from .transform import (
    TransformError, contract, cut1, cut2, cut3, cut4, cut5, cut6, cut7, cut8,
    cut9, eliminate, instantiate, invert, weaken,
)

__version__ = "0.1.0"
