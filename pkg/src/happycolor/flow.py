"""Max-flow / min-cut and the two exact-solver networks.

``max_flow`` runs Dinic's algorithm in pure Python.  Large networks are
routed to ``scipy.sparse.csgraph.maximum_flow`` (also Dinic) when scipy
is importable; both backends report the same cut, because the set of
nodes reachable from the source in the residual network of *any*
maximum flow is the unique minimal min-cut source side.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .graph import ColorSpec, Graph

INFINITE = math.inf

# arcs above this count go to scipy when backend="auto"
SCIPY_THRESHOLD = 20_000


class FlowError(RuntimeError):
    """Internal fault: a gadget let flow through an 'infinite' bottleneck."""


class DegenerateNetwork(Exception):
    """A precolor class is empty; the optimum colors everything ``fill_color``."""

    def __init__(self, fill_color: int):
        super().__init__(f"degenerate instance: color everything {fill_color}")
        self.fill_color = fill_color


class FlowNetwork:
    """Directed capacitated network on nodes ``0..n_nodes-1``.

    Each arc ``(u, v, cap)`` implicitly has a reverse residual arc of
    capacity 0.  ``cap`` is a nonnegative int or ``INFINITE``; the
    sentinel is replaced by ``1 + sum of finite capacities`` at solve time.
    """

    def __init__(self, n_nodes: int, source: int, sink: int):
        if source == sink:
            raise ValueError("source and sink must differ")
        if not (0 <= source < n_nodes and 0 <= sink < n_nodes):
            raise ValueError("terminal out of range")
        self.n_nodes = n_nodes
        self.source = source
        self.sink = sink
        self.tails: list[int] = []
        self.heads: list[int] = []
        self.caps: list = []

    def add_arc(self, u: int, v: int, cap) -> None:
        if cap is not INFINITE and (cap < 0 or int(cap) != cap):
            raise ValueError(f"capacity must be a nonnegative integer, got {cap!r}")
        self.tails.append(u)
        self.heads.append(v)
        self.caps.append(cap)

    @property
    def arcs(self) -> list[tuple[int, int, object]]:
        return list(zip(self.tails, self.heads, self.caps))

    def finite_total(self) -> int:
        return sum(c for c in self.caps if c is not INFINITE)

    def infinite_value(self) -> int:
        return 1 + self.finite_total()

    def resolved_caps(self) -> list[int]:
        inf = self.infinite_value()
        return [inf if c is INFINITE else int(c) for c in self.caps]

    def cut_capacity(self, source_side) -> int:
        """Capacity of arcs leaving ``source_side`` (infinite arcs resolved)."""
        side = set(source_side)
        inf = self.infinite_value()
        total = 0
        for u, v, c in zip(self.tails, self.heads, self.caps):
            if u in side and v not in side:
                total += inf if c is INFINITE else c
        return total


@dataclass
class CutResult:
    value: int
    source_side: frozenset[int]
    flows: list[int] | None = None  # per-arc flow, pure-Python backend only


def _dinic(net: FlowNetwork, caps: list[int]) -> CutResult:
    n, s, t = net.n_nodes, net.source, net.sink
    m = len(caps)
    to = [0] * (2 * m)
    res = [0] * (2 * m)
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, (u, v, c) in enumerate(zip(net.tails, net.heads, caps)):
        to[2 * i] = v
        res[2 * i] = c
        adj[u].append(2 * i)
        to[2 * i + 1] = u
        adj[v].append(2 * i + 1)
    flow = 0
    while True:
        level = [-1] * n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            lu = level[u] + 1
            for e in adj[u]:
                if res[e] and level[to[e]] < 0:
                    level[to[e]] = lu
                    queue.append(to[e])
        if level[t] < 0:
            break
        it = [0] * n
        path: list[int] = []
        u = s
        while True:
            if u == t:
                f = min(res[e] for e in path)
                cut_at = None
                for j, e in enumerate(path):
                    res[e] -= f
                    res[e ^ 1] += f
                    if cut_at is None and not res[e]:
                        cut_at = j
                flow += f
                del path[cut_at:]
                u = to[path[-1]] if path else s
                continue
            adj_u = adj[u]
            i = it[u]
            nxt = level[u] + 1
            while i < len(adj_u):
                e = adj_u[i]
                if res[e] and level[to[e]] == nxt:
                    break
                i += 1
            it[u] = i
            if i < len(adj_u):
                path.append(adj_u[i])
                u = to[adj_u[i]]
                continue
            # dead end
            if u == s:
                break
            level[u] = -1
            e = path.pop()
            u = to[e ^ 1]
            it[u] += 1
    side = [False] * n
    side[s] = True
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for e in adj[u]:
            if res[e] and not side[to[e]]:
                side[to[e]] = True
                queue.append(to[e])
    flows = [caps[i] - res[2 * i] for i in range(m)]
    return CutResult(flow, frozenset(i for i in range(n) if side[i]), flows)


def _scipy_flow(net: FlowNetwork, caps: list[int]) -> CutResult:
    import numpy as np
    from scipy.sparse import csr_array
    from scipy.sparse.csgraph import breadth_first_order, maximum_flow

    n = net.n_nodes
    rows = np.asarray(net.tails, dtype=np.int32)
    cols = np.asarray(net.heads, dtype=np.int32)
    data = np.asarray(caps, dtype=np.int64)
    cap = csr_array((data, (rows, cols)), shape=(n, n))
    cap.sum_duplicates()
    cap = csr_array((cap.data.astype(np.int32), cap.indices, cap.indptr), shape=(n, n))
    result = maximum_flow(cap, net.source, net.sink, method="dinic")
    residual = (cap.astype(np.int64) - result.flow.astype(np.int64)).tocsr()
    residual.data = (residual.data > 0).astype(np.int8)
    residual.eliminate_zeros()
    reach = breadth_first_order(residual, net.source, directed=True, return_predecessors=False)
    return CutResult(int(result.flow_value), frozenset(int(x) for x in reach))


def max_flow(net: FlowNetwork, backend: str = "auto") -> CutResult:
    """Maximum ``source -> sink`` flow and the minimal minimum-cut source side.

    ``backend`` is ``"python"``, ``"scipy"`` or ``"auto"``.
    """
    caps = net.resolved_caps()
    inf = caps and max(caps)
    use_scipy = backend == "scipy" or (
        backend == "auto" and len(caps) > SCIPY_THRESHOLD and inf < 2**31 - 1
        and sum(caps) < 2**62)
    if use_scipy:
        try:
            result = _scipy_flow(net, caps)
        except ImportError:
            if backend == "scipy":
                raise
            result = _dinic(net, caps)
    elif backend in ("auto", "python"):
        result = _dinic(net, caps)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    if result.value > net.finite_total():
        raise FlowError(f"flow {result.value} exceeds finite capacity {net.finite_total()}")
    return result


# -- network builders --------------------------------------------------------

def _check_two_colors(spec: ColorSpec) -> None:
    if spec.k != 2:
        raise ValueError(f"exact two-color network requires k=2, got k={spec.k}")


def weight_scale(graph: Graph) -> int:
    """Least common denominator of the edge weights."""
    scale = 1
    for _, _, w in graph.edges:
        if isinstance(w, Fraction):
            scale = math.lcm(scale, w.denominator)
    return scale


def build_2mhe_network(graph: Graph, spec: ColorSpec) -> tuple[FlowNetwork, list[int], int]:
    """Contract color class 1 into ``s`` (node 0) and class 2 into ``t`` (node 1).

    Returns ``(network, node_of, scale)``: ``node_of[v]`` is the node of
    original vertex ``v`` and capacities are weights times ``scale``.
    Raises ``DegenerateNetwork`` when a precolor class is empty.
    """
    _check_two_colors(spec)
    spec.check(graph)
    present = set(spec.precolor.values())
    if 2 not in present:
        raise DegenerateNetwork(1)
    if 1 not in present:
        raise DegenerateNetwork(2)
    node_of = [0] * (graph.n + 1)
    nxt = 2
    for v in range(1, graph.n + 1):
        c = spec.precolor.get(v)
        if c is None:
            node_of[v] = nxt
            nxt += 1
        else:
            node_of[v] = c - 1
    scale = weight_scale(graph)
    merged: dict[tuple[int, int], int] = {}
    for u, v, w in graph.edges:
        a, b = node_of[u], node_of[v]
        if a == b:
            continue
        key = (a, b) if a < b else (b, a)
        merged[key] = merged.get(key, 0) + int(w * scale)
    net = FlowNetwork(nxt, 0, 1)
    for (a, b), c in merged.items():
        if c:
            net.add_arc(a, b, c)
            net.add_arc(b, a, c)
    return net, node_of, scale


def build_2mhv_gadget(graph: Graph, spec: ColorSpec) -> tuple[FlowNetwork, list[int]]:
    """Cut network whose minimum cut equals ``n + min #unhappy vertices``.

    Node layout: ``s = 0``, ``t = 1``, vertex ``v`` is node ``1 + v``, and
    each vertex gets two auxiliaries ``a_v = n + 1 + v`` and
    ``b_v = 2n + 1 + v``.  For every ``u`` in the closed neighborhood
    ``N[v]``: ``u -> a_v`` and ``b_v -> u`` are infinite, while
    ``a_v -> t`` and ``s -> b_v`` have capacity 1.  ``a_v`` may sit on the
    sink side for free only if all of ``N[v]`` does (``v`` happy in color
    2), and ``b_v`` may sit on the source side for free only if all of
    ``N[v]`` does (happy in color 1).  Precolored vertices are pinned with
    infinite arcs.  The source side decodes to color 1.
    """
    _check_two_colors(spec)
    spec.check(graph)
    n = graph.n
    net = FlowNetwork(3 * n + 2, 0, 1)
    node_of = [0] + [1 + v for v in range(1, n + 1)]
    for v in range(1, n + 1):
        a, b = n + 1 + v, 2 * n + 1 + v
        for u in (v, *graph.adj[v]):
            net.add_arc(1 + u, a, INFINITE)
            net.add_arc(b, 1 + u, INFINITE)
        net.add_arc(a, 1, 1)
        net.add_arc(0, b, 1)
    for v, c in spec.precolor.items():
        if c == 1:
            net.add_arc(0, 1 + v, INFINITE)
        else:
            net.add_arc(1 + v, 1, INFINITE)
    return net, node_of
