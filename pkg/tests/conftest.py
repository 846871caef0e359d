from __future__ import annotations

import numpy as np
import pytest

from mhorizon.builder import build_model
from mhorizon.case_io import apply_scenario_flags, load_case
from mhorizon.lp import SparseLP, solve_simplex


def random_box_lp(rng: np.random.Generator, max_vars: int = 6, max_rows: int = 6) -> SparseLP:
    """Small integer-data LP with a finite box on every column."""
    n = int(rng.integers(1, max_vars + 1))
    m = int(rng.integers(1, max_rows + 1))
    A = rng.integers(-5, 6, (m, n)).astype(float)
    b = rng.integers(-10, 11, m).astype(float)
    c = rng.integers(-5, 6, n).astype(float)
    senses = rng.choice(list("LGE"), m, p=[0.45, 0.45, 0.10])
    lb = rng.integers(-5, 1, n).astype(float)
    ub = lb + rng.integers(0, 8, n)
    return SparseLP.from_dense(c, A, senses, b, lb, ub)


class Solved:
    def __init__(self, case):
        self.case = case
        self.model = build_model(case)
        self.lp = self.model.lp
        self.sol = solve_simplex(self.lp)


@pytest.fixture(scope="session")
def case3():
    return load_case("3node")


@pytest.fixture(scope="session")
def solved3(case3):
    return Solved(apply_scenario_flags(case3, russian_gas=True, gas_cost="affordable"))


@pytest.fixture(scope="session")
def solved3_costly(case3):
    return Solved(apply_scenario_flags(case3, russian_gas=False, gas_cost="costly"))


@pytest.fixture(scope="session")
def solved1():
    return Solved(load_case("1node"))


# one "CRITERION n: PASS|FAIL ..." line per acceptance criterion, echoed in the summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
