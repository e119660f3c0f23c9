import sys

import pytest

from toricaut import CORPUS
from toricaut.io import load_bundle, load_fan


def corpus_fan(name):
    return load_fan(CORPUS / f"{name}.fan")


def corpus_bundle(name):
    return load_bundle(CORPUS / f"{name}.bundle")


def pn_fan(n):
    from toricaut import Fan

    rays = [[-1] * n] + [[1 if i == k else 0 for i in range(n)] for k in range(n)]
    return Fan(n, rays, [[j for j in range(n + 1) if j != k] for k in range(n + 1)])


@pytest.fixture
def p1():
    return corpus_fan("p1")


@pytest.fixture
def p2():
    return corpus_fan("p2")


@pytest.fixture
def p5():
    return corpus_fan("p5")


@pytest.fixture
def p1xp1():
    return corpus_fan("p1xp1")


@pytest.fixture
def p1123():
    return corpus_fan("p1123")


@pytest.fixture(params=["numba", "numpy"])
def backend(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
