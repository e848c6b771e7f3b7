import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from resilient_spanners.graph import Graph

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion id -> (passed, detail); filled by test_acceptance, printed at the end
ACCEPTANCE_RESULTS: dict = {}


@st.composite
def graphs(draw, min_n=1, max_n=8, weighted=None, connected=False):
    """Small simple graphs, optionally weighted 1..5 and optionally connected."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = set(draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else [])
    if connected:
        for v in range(1, n):
            chosen.add((draw(st.integers(0, v - 1)), v))
    if weighted is None:
        weighted = draw(st.booleans())
    edges = []
    for (u, v) in sorted(chosen):
        w = draw(st.integers(1, 5)) if weighted else 1
        edges.append((u, v, w))
    return Graph(n, edges)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")


@pytest.fixture
def acceptance():
    return ACCEPTANCE_RESULTS
