"""Solvers for Maximum Happy Vertices.

* ``greedy_mhv``: try "every uncolored vertex gets color i" for each i.
* ``growth_mhv``: subset growth driven by the H/U/P/L vertex types, with
  the lemma ledgers recorded in ``Solution.counters``.
* ``exact_2mhv``: one min-cut computation for two colors.
* ``brute_force_mhv``: exhaustive oracle (re-exported from ``brute``).
"""

from __future__ import annotations

import random

from .brute import brute_force_mhv
from .flow import FlowError, build_2mhv_gadget, max_flow
from .graph import (STRICT, ColorSpec, Graph, HappinessMode, Solution, Strict,
                    count_happy_vertices, make_solution)
from .state import H, L_H, L_U, P, ColoringState, VType

__all__ = ["greedy_mhv", "growth_mhv", "exact_2mhv", "brute_force_mhv", "grow"]

STEP_KINDS = ("P", "Lh", "Lu")


def greedy_mhv(graph: Graph, spec: ColorSpec, mode: HappinessMode = STRICT) -> Solution:
    """Best of the ``k`` colorings that paint all uncolored vertices one color.

    Ties go to the smallest color.
    """
    spec.check(graph)
    best = None
    values = {}
    for i in range(1, spec.k + 1):
        col = spec.initial(graph.n)
        for v in range(1, graph.n + 1):
            if not col[v]:
                col[v] = i
        value = count_happy_vertices(graph, col, mode)
        values[i] = value
        if best is None or value > best[0]:
            best = (value, col)
    name = "greedy" if isinstance(mode, Strict) else f"greedy-{mode.name}"
    return Solution(best[1], best[0], "MHV", name, mode, {"candidates": values})


def _permutation(n: int, seed: int) -> list[int]:
    ids = list(range(1, n + 1))
    random.Random(seed).shuffle(ids)
    return [0] + ids


def _lu_color(state: ColoringState, v: int) -> int:
    # color of the smallest-id colored neighbor (in strict mode that is a
    # U-vertex); hard-mode L_u vertices may have none, then color 1
    col = state.color
    return next((col[u] for u in state.graph.adj[v] if col[u]), 1)


def _lh_color(state: ColoringState, v: int) -> int:
    best_i, best = 1, -1
    for i in range(1, state.k + 1):
        c = state.n_color(v, i)
        if c > best:
            best_i, best = i, c
    return best_i


def grow(graph: Graph, spec: ColorSpec, mode: HappinessMode = STRICT, *,
         seed: int | None = None, trace: bool = False, name: str | None = None) -> Solution:
    """Subset-growth coloring under any happiness mode.

    Each iteration processes, in order of preference, the smallest-id
    P-vertex (color just enough of its uncolored neighbors with its color
    to make it happy), else the smallest-id L_h-vertex (color it and just
    enough uncolored neighbors with its majority neighbor color), else the
    smallest-id L_u-vertex (color it alone).  Components without any
    precolored vertex are colored 1 up front.

    ``counters`` records ``H_org``, ``H_new``, ``L_org``, ``Lu_org``,
    ``Lu_new`` and, per step kind, the step count, total and maximum number
    of vertices that newly became L_u during one step.  With ``trace`` a
    per-step log is stored under ``counters["trace"]``.
    """
    spec.check(graph)
    name = name or ("growth" if isinstance(mode, Strict) else f"growth-{mode.name}")
    if seed is not None:
        perm = _permutation(graph.n, seed)
        sol = grow(graph.relabel(perm), spec.relabel(perm), mode, trace=trace, name=name)
        col = [0] * (graph.n + 1)
        for v in range(1, graph.n + 1):
            col[v] = sol.coloring[perm[v]]
        sol.coloring = col
        sol.counters["seed"] = seed
        return sol

    state = ColoringState(graph, spec, mode)
    tag = state.tag
    col = state.color
    n = graph.n
    counts = state.counts()
    counters: dict = {
        "Delta": graph.max_degree,
        "H_org": counts[VType.H],
        "L_org": sum(counts[t] for t in (VType.L_P, VType.L_H, VType.L_U, VType.L_F)),
        "Lu_org": counts[VType.L_U],
        "Lp_org": counts[VType.L_P],
        "P_org": counts[VType.P],
        "Lu_new": 0,
        "fill": 0,
    }
    for kind in STEP_KINDS:
        counters[f"steps_{kind}"] = 0
        counters[f"Lu_new_{kind}"] = 0
        counters[f"max_Lu_{kind}"] = 0
    log = [] if trace else None

    for comp in graph.components():
        if not any(v in spec.precolor for v in comp):
            for v in comp:
                state.apply_color(v, 1)
            counters["fill"] += len(comp)

    adj = graph.adj
    need = state.need
    while True:
        v = state.pop_min(P)
        if v is not None:
            kind, i = "P", col[v]
            deficit = need[v] - state.n_same(v)
            targets = [u for u in adj[v] if not col[u]][:deficit]
        else:
            v = state.pop_min(L_H)
            if v is not None:
                kind, i = "Lh", _lh_color(state, v)
                deficit = need[v] - state.n_color(v, i)
                targets = [v] + [u for u in adj[v] if not col[u]][:max(deficit, 0)]
            else:
                v = state.pop_min(L_U)
                if v is None:
                    break
                kind, i = "Lu", _lu_color(state, v)
                targets = [v]
        changed: dict = {}
        for u in targets:
            for x, old in state.apply_color(u, i).items():
                changed.setdefault(x, old)
        new_lu = sum(1 for x, old in changed.items() if tag[x] == L_U and old != L_U)
        new_h = sum(1 for x, old in changed.items() if tag[x] == H and old != H)
        counters[f"steps_{kind}"] += 1
        counters[f"Lu_new_{kind}"] += new_lu
        counters[f"max_Lu_{kind}"] = max(counters[f"max_Lu_{kind}"], new_lu)
        counters["Lu_new"] += new_lu
        if log is not None:
            log.append({"kind": kind, "vertex": v, "color": i, "colored": targets,
                        "new_Lu": new_lu, "new_H": new_h})

    if any(not col[v] for v in range(1, n + 1)):
        raise RuntimeError("growth loop stopped with uncolored vertices left")
    sol = make_solution(graph, list(col), "MHV", name, mode, counters)
    counters["H_new"] = sol.objective - counters["H_org"]
    if log is not None:
        counters["trace"] = log
    return sol


def growth_mhv(graph: Graph, spec: ColorSpec, *, seed: int | None = None,
               trace: bool = False) -> Solution:
    """Subset-growth algorithm for strict happiness (see ``grow``)."""
    return grow(graph, spec, STRICT, seed=seed, trace=trace)


def exact_2mhv(graph: Graph, spec: ColorSpec, backend: str = "auto") -> Solution:
    """Optimal two-color MHV via a single minimum cut.

    Happy count is ``2n - mincut`` for the closed-neighborhood gadget built
    by ``flow.build_2mhv_gadget``.
    """
    if spec.k != 2:
        raise ValueError(f"exact2 requires k=2, got k={spec.k}")
    spec.check(graph)
    n = graph.n
    if not spec.precolor:
        return make_solution(graph, [0] + [1] * n, "MHV", "exact2", STRICT, {"min_cut": n})
    net, node_of = build_2mhv_gadget(graph, spec)
    cut = max_flow(net, backend)
    col = [0] + [1 if node_of[v] in cut.source_side else 2 for v in range(1, n + 1)]
    sol = make_solution(graph, col, "MHV", "exact2", STRICT, {"min_cut": cut.value})
    if sol.objective != 2 * n - cut.value:
        raise FlowError(f"decoded coloring scores {sol.objective}, cut implies {2 * n - cut.value}")
    return sol
