"""Exhaustive oracles: enumerate every extension of the precoloring.

Enumeration order is lexicographic in the colors of the uncolored
vertices taken in increasing id order, so the first maximizer found is
the lexicographically smallest optimal coloring vector.  Evaluation is
vectorized with numpy in chunks; it reads the happiness definitions
directly and shares no code with the solvers it is used to check.
"""

from __future__ import annotations

import numpy as np

from .graph import STRICT, ColorSpec, Graph, HappinessMode, Solution, make_solution
from .flow import weight_scale

DEFAULT_BUDGET = 2_000_000
_CHUNK = 1 << 16


class Refusal(Exception):
    """The request was refused rather than answered (CLI exit code 2)."""


class BudgetExceeded(Refusal):
    def __init__(self, required: int, budget: int):
        super().__init__(f"brute force needs {required} enumerations, budget is {budget}")
        self.required = required
        self.budget = budget


def enumeration_count(graph: Graph, spec: ColorSpec) -> int:
    return spec.k ** len(spec.uncolored(graph.n))


def _chunks(graph: Graph, spec: ColorSpec, budget: int):
    free = spec.uncolored(graph.n)
    total = spec.k ** len(free)
    if total > budget:
        raise BudgetExceeded(total, budget)
    base = np.asarray(spec.initial(graph.n), dtype=np.int16)
    f = len(free)
    powers = spec.k ** np.arange(f - 1, -1, -1, dtype=np.int64)
    free_idx = np.asarray(free, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        block = np.broadcast_to(base, (len(idx), graph.n + 1)).copy()
        if f:
            block[:, free_idx] = (idx[:, None] // powers[None, :]) % spec.k + 1
        yield block


def _vertex_scores(graph: Graph, block: np.ndarray, mode: HappinessMode) -> np.ndarray:
    score = np.zeros(len(block), dtype=np.int64)
    for v in range(1, graph.n + 1):
        nbrs = graph.adj[v]
        if nbrs:
            same = (block[:, nbrs] == block[:, v:v + 1]).sum(axis=1)
        else:
            same = np.zeros(len(block), dtype=np.int64)
        score += same >= mode.need(len(nbrs))
    return score


def _edge_scores(graph: Graph, block: np.ndarray, scale: int) -> np.ndarray:
    if not graph.edges:
        return np.zeros(len(block), dtype=np.int64)
    us = np.asarray([u for u, _, _ in graph.edges])
    vs = np.asarray([v for _, v, _ in graph.edges])
    ws = np.asarray([int(w * scale) for _, _, w in graph.edges], dtype=np.int64)
    return ((block[:, us] == block[:, vs]) * ws).sum(axis=1)


def _best(graph, spec, budget, scorer):
    best_val, best_col = None, None
    for block in _chunks(graph, spec, budget):
        scores = scorer(block)
        j = int(np.argmax(scores))
        if best_val is None or scores[j] > best_val:
            best_val, best_col = int(scores[j]), block[j]
    return [int(c) for c in best_col]


def brute_force_mhv(graph: Graph, spec: ColorSpec, mode: HappinessMode = STRICT,
                    budget: int = DEFAULT_BUDGET) -> Solution:
    """Optimal MHV coloring by exhaustive enumeration."""
    spec.check(graph)
    col = _best(graph, spec, budget, lambda b: _vertex_scores(graph, b, mode))
    col[0] = 0
    return make_solution(graph, col, "MHV", "brute", mode)


def brute_force_mhe(graph: Graph, spec: ColorSpec, budget: int = DEFAULT_BUDGET) -> Solution:
    """Optimal MHE coloring (maximum happy edge weight) by exhaustive enumeration."""
    spec.check(graph)
    scale = weight_scale(graph)
    col = _best(graph, spec, budget, lambda b: _edge_scores(graph, b, scale))
    col[0] = 0
    return make_solution(graph, col, "MHE", "brute")
