import itertools

import hypothesis.strategies as st
import pytest
from hypothesis import settings

from twfree.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_n, max_n))
    slots = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(slots), max_size=len(slots)))
    return Graph(n, [e for e, keep in zip(slots, chosen) if keep])


@pytest.fixture
def tmp_graph_file(tmp_path):
    def write(g: Graph, name: str = "g.txt"):
        path = tmp_path / name
        path.write_text(g.to_text())
        return str(path)

    return write


# one PASS/FAIL line per acceptance criterion, repeated at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
