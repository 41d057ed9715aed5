import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from hdisc.fixtures import NAMED  # noqa: E402
from hdisc.graph import ColoredGraph, Graph  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL = ["K2", "K3", "K4", "P3", "C4", "C5", "K4-e", "K222-e", "P3+K2"]


@pytest.fixture(params=SMALL)
def small_graph(request):
    return request.param, NAMED[request.param]()


@st.composite
def graphs(draw, min_n=2, max_n=6, min_edges=1):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=min_edges, unique=True))
    return Graph(n, chosen)


@st.composite
def colored_graphs(draw, min_n=2, max_n=6):
    g = draw(graphs(min_n, max_n))
    signs = draw(st.lists(st.sampled_from((1, -1)), min_size=len(g.edges), max_size=len(g.edges)))
    return ColoredGraph(g.n, dict(zip(g.edges, signs)))


@st.composite
def permutations_of(draw, n):
    return draw(st.permutations(list(range(n))))


CRITERIA: dict[str, tuple[str, str]] = {}


def pytest_runtest_makereport(item, call):
    label = getattr(item.function, "criterion", None)
    if label and call.when == "call":
        outcome = "PASS" if call.excinfo is None else "FAIL"
        CRITERIA[label[0]] = (outcome, label[1])


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(CRITERIA, key=lambda k: (int(k.split(".")[0].rstrip("abcdefgh")), k)):
        outcome, title = CRITERIA[key]
        terminalreporter.write_line(f"criterion {key}: {outcome}  {title}")
