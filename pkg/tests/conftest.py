import pytest
from hypothesis import settings

from khlab.corpus import TREFOIL_PD, corpus
from khlab.diagram import mirror, parse_diagram

settings.register_profile("khlab", max_examples=40, deadline=None)
settings.load_profile("khlab")


@pytest.fixture(scope="session")
def trefoil():
    return parse_diagram(TREFOIL_PD)


@pytest.fixture(scope="session")
def left_trefoil(trefoil):
    return mirror(trefoil)


@pytest.fixture(scope="session")
def unknot():
    return parse_diagram("PD[O(1)]")


@pytest.fixture(scope="session")
def figure_eight():
    return parse_diagram("B[3; 1, -2, 1, -2]")


@pytest.fixture(scope="session")
def small_corpus():
    return corpus("small")


@pytest.fixture(scope="session")
def standard_corpus():
    return corpus("standard")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
