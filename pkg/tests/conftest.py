import random
import sys

import pytest

sys.setrecursionlimit(20000)

from helpers import SYN, load_corpus, instance_pool  # noqa: E402
from lkt.kernel import Unfocused, check  # noqa: E402
from lkt.search import Proved, SearchConfig, prove  # noqa: E402
from lkt.syntax import mset  # noqa: E402

CORPUS_CFG = SearchConfig(max_decisions=4, max_witness_depth=1)


@pytest.fixture(scope="session")
def corpus():
    """[(name, problem)] for every golden corpus file."""
    return load_corpus()


@pytest.fixture(scope="session")
def corpus_proofs(corpus):
    """[(name, problem, proof)] with every proof found and checked once."""
    out = []
    for name, problem in corpus:
        outcome = prove(Unfocused((), mset((problem.goal,))), problem.table,
                        SYN, CORPUS_CFG)
        assert isinstance(outcome, Proved), "corpus file %s did not prove" % name
        assert check(outcome.proof, problem.table, SYN).ok
        out.append((name, problem, outcome.proof))
    return out


@pytest.fixture(scope="session")
def pool():
    """Random provable instances shared by the fuzzing tests."""
    return instance_pool(random.Random(7), 30)
