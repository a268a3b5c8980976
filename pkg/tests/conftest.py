import random

import pytest

from localinv.field import GF2, StateVec
from localinv.lrs import BlackBoxMap

F2 = GF2()


def table_map(n, table, name="table"):
    return BlackBoxMap.from_table(F2, n, table, name)


def random_map(rng, n, permutation=False):
    size = 1 << n
    if permutation:
        t = list(range(size))
        rng.shuffle(t)
    else:
        t = [rng.randrange(size) for _ in range(size)]
    return table_map(n, t, "perm" if permutation else "random")


def linear_map(field, A):
    """x -> A x with A given as a list of rows."""
    n = len(A)

    def fn(x):
        return StateVec(field, tuple(
            _dot(field, row, x.entries) for row in A))

    return BlackBoxMap(field, len(A[0]), n, fn, "linear")


def _dot(field, row, v):
    acc = 0
    for a, b in zip(row, v):
        acc = field.add(acc, field.mul(a, b))
    return acc


def vec(*bits):
    return StateVec(F2, tuple(bits))


@pytest.fixture
def fib():
    """The GF(2)^2 map x -> [[0,1],[1,1]] x."""
    return linear_map(F2, [[0, 1], [1, 1]])


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def fixtures_dir():
    import pathlib
    return pathlib.Path(__file__).resolve().parent.parent / "fixtures"


ACCEPTANCE_LINES = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1][len("test_criterion_"):]
    num, _, title = name.partition("_")
    detail = dict(report.user_properties).get("detail", "")
    status = "PASS" if report.passed else "FAIL"
    ACCEPTANCE_LINES.append(f"criterion {num} {title.replace('_', ' ')}: {status}" + (f" ({detail})" if detail else ""))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
