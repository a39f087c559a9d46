import random

import pytest
from hypothesis import strategies as st

from backjump.model import Check, CspInstance, DiagDiff, NotEqual
from backjump.problems import paper_problem, queens


def build_random_instance(rng: random.Random, max_vars=6, max_value=5) -> CspInstance:
    n = rng.randint(0, max_vars)
    order = list(range(1, n + 1))
    rng.shuffle(order)
    domains = {}
    for var in order:
        vals = rng.sample(range(1, max_value + 1), rng.randint(0 if rng.random() < 0.05 else 1, max_value))
        domains[var] = tuple(vals)
    plans = {}
    for k, var in enumerate(order):
        plan = []
        for _ in range(rng.randint(0, 2 * k)):
            partner = order[rng.randrange(k)]
            constraint = NotEqual() if rng.random() < 0.5 else DiagDiff(rng.randint(1, 3))
            plan.append(Check(partner, constraint))
        plans[var] = tuple(plan)
    return CspInstance(tuple(order), domains, plans)


random_instances = st.integers(min_value=0, max_value=2**32 - 1).map(
    lambda seed: build_random_instance(random.Random(seed))
)

# Instances used for the engine-level invariants; each has a tuple space <= 10**6.
CORPUS = {
    "paper(0,3)": paper_problem(0, 3),
    "paper(1,1)": paper_problem(1, 1),
    "paper(3,2)": paper_problem(3, 2),
    "paper(4,2)": paper_problem(4, 2),
    "paper(4,3)": paper_problem(4, 3),
    "paper(5,3)": paper_problem(5, 3),
    "paper(6,3)": paper_problem(6, 3),
    "paper(6,4)": paper_problem(6, 4),
    "paper(7,4)": paper_problem(7, 4),
    "paper(8,4)": paper_problem(8, 4),
    "queens(1)": queens(1),
    "queens(2)": queens(2),
    "queens(3)": queens(3),
    "queens(4)": queens(4),
    "queens(5)": queens(5),
    "queens(6)": queens(6),
    "queens(7)": queens(7),
}


@pytest.fixture(params=sorted(CORPUS), ids=sorted(CORPUS))
def corpus_instance(request):
    return CORPUS[request.param]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, f"rep_{rep.when}", rep)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
