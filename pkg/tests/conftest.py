import pytest

from chromagraph.graph import Graph, generate_family


@pytest.fixture
def k3():
    return generate_family("complete", 3)


@pytest.fixture
def k4():
    return generate_family("complete", 4)


@pytest.fixture
def c4():
    return generate_family("cycle", 4)


@pytest.fixture
def c5():
    return generate_family("cycle", 5)


@pytest.fixture
def p3():
    return generate_family("path", 3)


@pytest.fixture
def edge():
    return Graph.from_edges(2, [(0, 1)])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
