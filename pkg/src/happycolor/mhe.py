"""Solvers for Maximum Happy Edges (nonnegative edge weights)."""

from __future__ import annotations

from fractions import Fraction

from .brute import brute_force_mhe
from .flow import DegenerateNetwork, FlowError, build_2mhe_network, max_flow
from .graph import ColorSpec, Graph, Solution, make_solution

__all__ = ["division_mhe", "exact_2mhe", "brute_force_mhe"]


def _normalize(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def division_mhe(graph: Graph, spec: ColorSpec) -> Solution:
    """Better of two colorings; guaranteed at least half the optimum.

    SOL1 colors each uncolored vertex that has colored neighbors with the
    neighbor color of largest incident weight (ties: smallest color) and
    everything left with color 1.  SOL2 colors every uncolored vertex 1.

    ``counters``: ``W_org`` (already happy), ``W1`` (best achievable on
    edges with exactly one colored endpoint), ``W2`` (edges with no colored
    endpoint) and ``bound = W_org + W1 + W2``, an upper bound on OPT.
    """
    spec.check(graph)
    pre = spec.initial(graph.n)
    w_org = w1 = w2 = 0
    star: dict[int, dict[int, object]] = {}
    for u, v, w in graph.edges:
        cu, cv = pre[u], pre[v]
        if cu and cv:
            if cu == cv:
                w_org += w
        elif cu or cv:
            center, c = (v, cu) if cu else (u, cv)
            by_color = star.setdefault(center, {})
            by_color[c] = by_color.get(c, 0) + w
        else:
            w2 += w
    sol1 = list(pre)
    for center, by_color in star.items():
        best_c = min(by_color, key=lambda c: (-by_color[c], c))
        sol1[center] = best_c
        w1 += by_color[best_c]
    sol2 = list(pre)
    for v in range(1, graph.n + 1):
        if not sol1[v]:
            sol1[v] = 1
        if not sol2[v]:
            sol2[v] = 1
    counters = {"W_org": _normalize(w_org), "W1": _normalize(w1), "W2": _normalize(w2),
                "bound": _normalize(w_org + w1 + w2)}
    a = make_solution(graph, sol1, "MHE", "division", counters=counters)
    b = make_solution(graph, sol2, "MHE", "division", counters=counters)
    counters["SOL1"], counters["SOL2"] = a.objective, b.objective
    return a if a.objective >= b.objective else b


def exact_2mhe(graph: Graph, spec: ColorSpec, backend: str = "auto") -> Solution:
    """Optimal two-color MHE: contract each precolor class, take a min s-t cut.

    Happy weight equals total weight minus the cut weight.
    """
    if spec.k != 2:
        raise ValueError(f"exact2 requires k=2, got k={spec.k}")
    spec.check(graph)
    try:
        net, node_of, scale = build_2mhe_network(graph, spec)
    except DegenerateNetwork as d:
        col = spec.initial(graph.n)
        col = [0] + [c or d.fill_color for c in col[1:]]
        return make_solution(graph, col, "MHE", "exact2", counters={"min_cut": 0})
    cut = max_flow(net, backend)
    col = [0] + [1 if node_of[v] in cut.source_side else 2 for v in range(1, graph.n + 1)]
    cut_weight = _normalize(Fraction(cut.value, scale))
    sol = make_solution(graph, col, "MHE", "exact2", counters={"min_cut": cut_weight})
    if sol.objective != graph.total_weight() - cut_weight:
        raise FlowError("decoded coloring disagrees with the cut value")
    return sol
