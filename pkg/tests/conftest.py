"""Shared fixtures and hypothesis strategies."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from happycolor.graph import STRICT, ColorSpec, Graph, Hard, Soft

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, max_n: int = 8, weighted: bool = False, min_n: int = 1):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    if weighted:
        ws = draw(st.lists(st.integers(0, 5), min_size=len(chosen), max_size=len(chosen)))
        return Graph(n, [(u, v, w) for (u, v), w in zip(chosen, ws)])
    return Graph(n, chosen)


@st.composite
def instances(draw, max_n: int = 8, k: int | None = None, max_free: int = 7, weighted: bool = False):
    """``(graph, spec)`` with at most ``max_free`` uncolored vertices."""
    g = draw(graphs(max_n=max_n, weighted=weighted))
    k = k if k is not None else draw(st.integers(1, 4))
    colors = draw(st.lists(st.integers(0, k), min_size=g.n, max_size=g.n))
    pre = {v: c for v, c in enumerate(colors, start=1) if c}
    free = [v for v in range(1, g.n + 1) if v not in pre]
    for v in free[max_free:]:
        pre[v] = 1
    return g, ColorSpec(k, pre)


@st.composite
def modes(draw, max_q: int = 4):
    kind = draw(st.sampled_from(["strict", "soft", "hard"]))
    if kind == "soft":
        den = draw(st.integers(2, 7))
        return Soft(Fraction(draw(st.integers(1, den - 1)), den))
    if kind == "hard":
        return Hard(draw(st.integers(1, max_q)))
    return STRICT


# -- small named instances ---------------------------------------------------

@pytest.fixture
def path_abc():
    """Path a(1) - b - c(2) with k = 2."""
    return Graph(3, [(1, 2), (2, 3)]), ColorSpec(2, {1: 1, 3: 2})


@pytest.fixture
def star_112():
    """Leaves 1, 2, 3 colored 1, 1, 2 around the uncolored center 4; k = 2."""
    return Graph(4, [(1, 4), (2, 4), (3, 4)]), ColorSpec(2, {1: 1, 2: 1, 3: 2})


@pytest.fixture
def triangle_uu():
    """Triangle p(1), p'(2), r uncolored; k = 2."""
    return Graph(3, [(1, 2), (1, 3), (2, 3)]), ColorSpec(2, {1: 1, 2: 2})


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])
