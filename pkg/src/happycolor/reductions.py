"""Hardness reductions and their value-relation verifiers.

Every constructor returns a ``ReductionOutput`` carrying the source
instance, the target instance and the relation between their optima.
``verify_reduction`` solves both sides exhaustively and checks the
relation exactly.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .brute import BudgetExceeded, brute_force_mhe, brute_force_mhv, DEFAULT_BUDGET
from .graph import STRICT, ColorSpec, Graph, Hard, HappinessMode, Soft


@dataclass(frozen=True)
class MultiwayCutInstance:
    """Unit-cost graph plus distinct terminal vertices."""

    graph: Graph
    terminals: tuple[int, ...]

    def __post_init__(self):
        ts = tuple(self.terminals)
        object.__setattr__(self, "terminals", ts)
        if len(ts) < 2:
            raise ValueError("need at least two terminals")
        if len(set(ts)) != len(ts):
            raise ValueError("terminals must be distinct")
        for t in ts:
            if not 1 <= t <= self.graph.n:
                raise ValueError(f"terminal {t} outside 1..{self.graph.n}")


@dataclass(frozen=True)
class AffineMap:
    """``OPT_target = a * OPT_source + b``."""

    a: int
    b: int

    def apply(self, x):
        return self.a * x + self.b


@dataclass(frozen=True)
class IffRelation:
    """``m* >= m0  <=>  n* >= offset + m0``, i.e. ``n* = offset + m*``.

    ``offset = delta * n + (h + 1) * m`` for the soft-threshold gadget.
    """

    delta: int
    n: int
    m: int
    h: int

    @property
    def offset(self) -> int:
        return self.delta * self.n + (self.h + 1) * self.m

    def apply(self, x):
        return self.offset + x


@dataclass
class ReductionOutput:
    """Target instance ``(graph, spec, mode)`` of a reduction.

    ``source`` is either a ``MultiwayCutInstance`` or a ``(graph, spec)``
    MHE instance; ``target_problem`` is ``"MHE"`` or ``"MHV"``.
    """

    kind: str
    source: object
    graph: Graph
    spec: ColorSpec
    mode: HappinessMode
    target_problem: str
    value_map: object
    params: dict = field(default_factory=dict)

    def record(self) -> dict:
        """JSON-ready description of the value relation and gadget parameters."""
        vm = self.value_map
        if isinstance(vm, AffineMap):
            rel = {"type": "affine", "a": vm.a, "b": vm.b}
        else:
            rel = {"type": "iff", "delta": vm.delta, "n": vm.n, "m": vm.m, "h": vm.h,
                   "offset": vm.offset}
        params = {k: (str(v) if isinstance(v, Fraction) else v) for k, v in self.params.items()}
        return {"reduction": self.kind, "target_problem": self.target_problem,
                "mode": str(self.mode), "value_map": rel, "params": params}


# -- constructors ------------------------------------------------------------

def multiway_cut_to_3mhe(mc: MultiwayCutInstance) -> ReductionOutput:
    """Same graph; terminals ``s1, s2, s3`` precolored ``1, 2, 3``.

    The best happy-edge count is ``m - c*`` for minimum 3-way cut ``c*``.
    """
    if len(mc.terminals) != 3:
        raise ValueError(f"need exactly 3 terminals, got {len(mc.terminals)}")
    g = mc.graph
    spec = ColorSpec(3, {t: i + 1 for i, t in enumerate(mc.terminals)})
    return ReductionOutput("mwc3->mhe3", mc, g, spec, STRICT, "MHE", AffineMap(-1, g.m))


def pad_3mhe_to_kmhe(graph: Graph, spec: ColorSpec, k: int) -> ReductionOutput:
    """Add pairs ``x_i - y_i`` precolored ``i`` (``4 <= i <= k``), each ``x_i``
    joined to the smallest-id vertex precolored 1.  Optimum grows by ``k - 3``."""
    if spec.k != 3:
        raise ValueError("source must be a 3-color instance")
    if k < 3:
        raise ValueError("k must be at least 3")
    if k == 3:
        return ReductionOutput("mhe3->mhek", (graph, spec), graph, spec, STRICT, "MHE",
                               AffineMap(1, 0), {"k": 3})
    anchors = [v for v, c in spec.precolor.items() if c == 1]
    if not anchors:
        raise ValueError("padding needs a vertex precolored 1 in the source instance")
    anchor = min(anchors)
    n = graph.n
    edges = list(graph.edges)
    pre = dict(spec.precolor)
    nxt = n + 1
    for i in range(4, k + 1):
        x, y = nxt, nxt + 1
        nxt += 2
        pre[x] = pre[y] = i
        edges += [(x, y, 1), (anchor, x, 1)]
    g2 = Graph(nxt - 1, edges)
    return ReductionOutput("mhe3->mhek", (graph, spec), g2, ColorSpec(k, pre), STRICT, "MHE",
                           AffineMap(1, k - 3), {"k": k, "anchor": anchor})


def mhe_to_mhv(graph: Graph, spec: ColorSpec, *, allow_monochrome: bool = False) -> ReductionOutput:
    """Apex ``x_i`` (precolored ``i``) joined to every original vertex, and each
    edge ``uv`` subdivided by a fresh ``y_uv``.  Optima coincide.

    Ids: originals ``1..n``, apexes ``n+1..n+k``, subdivision vertices after.

    The identity needs two distinct precolors among the originals: with a
    single precolor ``c``, apex ``x_c`` is happy once every original takes
    ``c``, and the target optimum exceeds the source optimum by one.  Such
    sources are rejected unless ``allow_monochrome`` is set; they are
    trivial anyway, since coloring everything ``c`` makes every edge happy.
    """
    if not spec.precolor:
        raise ValueError("source instance must have at least one precolored vertex")
    if len(set(spec.precolor.values())) < 2 and not allow_monochrome:
        raise ValueError("source precoloring must use at least two distinct colors")
    n, k = graph.n, spec.k
    pre = dict(spec.precolor)
    edges = []
    for i in range(1, k + 1):
        pre[n + i] = i
        edges += [(n + i, v) for v in range(1, n + 1)]
    nxt = n + k + 1
    for u, v, _ in graph.edges:
        edges += [(u, nxt), (nxt, v)]
        nxt += 1
    g2 = Graph(nxt - 1, edges)
    return ReductionOutput("mhe->mhv", (graph, spec), g2, ColorSpec(k, pre), STRICT, "MHV",
                           AffineMap(1, 0), {"k": k})


def mhe_to_hardmhv(graph: Graph, spec: ColorSpec) -> ReductionOutput:
    """Subdivide each edge by ``x_uv`` carrying ``Delta - 1`` pendant satellites;
    threshold ``q = Delta + 1``.  Only ``x_uv`` can be happy, exactly when its
    endpoints agree, so optima coincide."""
    if spec.k < 3:
        raise ValueError("source must use at least 3 colors")
    delta = graph.max_degree
    q = delta + 1
    edges = []
    nxt = graph.n + 1
    for u, v, _ in graph.edges:
        x = nxt
        nxt += 1
        edges += [(u, x), (x, v)]
        for _ in range(delta - 1):
            edges.append((x, nxt))
            nxt += 1
    g2 = Graph(nxt - 1, edges)
    return ReductionOutput("mhe->hard", (graph, spec), g2, ColorSpec(spec.k, spec.precolor),
                           Hard(q), "MHV", AffineMap(1, 0), {"Delta": delta, "q": q})


def soft_params(rho) -> tuple[int, int]:
    """Smallest gadget size ``(k, h)`` for soft threshold ``rho`` in ``(0, 1)``.

    ``k = ceil(max(4/rho - 3, 2/rho, 3))`` and ``h`` is the smallest integer
    in ``[(rho*k + 2*rho - 3) / (1 - rho), (rho*k + 2*rho - 2) / (1 - rho))``,
    which makes ``h + 3 >= rho*(h + k + 2) > h + 2``.
    """
    rho = Fraction(rho)
    if not 0 < rho < 1:
        raise ValueError(f"rho must lie in (0, 1), got {rho}")
    k = math.ceil(max(4 / rho - 3, 2 / rho, Fraction(3)))
    lo = (rho * k + 2 * rho - 3) / (1 - rho)
    hi = (rho * k + 2 * rho - 2) / (1 - rho)
    h = math.ceil(lo)
    if not (lo <= h < hi):
        raise AssertionError(f"no integer h in [{lo}, {hi})")
    if not (h + 3 >= rho * (h + k + 2) and h + 2 < rho * (h + k + 2)):
        raise AssertionError(f"(k, h) = ({k}, {h}) violates the gadget inequalities")
    return k, h


def mhe_to_softmhv(graph: Graph, spec: ColorSpec, rho) -> ReductionOutput:
    """Soft-threshold gadget for a 3-color MHE instance.

    Each edge ``uv`` becomes ``u - x_uv - v`` with ``h`` pendant ``y``-vertices
    and ``k`` pendant ``z``-vertices (``z_i`` precolored ``i``) on ``x_uv``; each
    original vertex gets ``D * k`` pendant ``w``-vertices (``D`` of each color),
    where ``D = max(Delta, 1)``.  Then ``n* = D*n + (h+1)*m + m*``.

    Ids: originals, then per edge ``x, y_1..y_h, z_1..z_k``, then per original
    vertex its ``w``-vertices.
    """
    if spec.k != 3:
        raise ValueError("source must be a 3-color instance")
    rho = Fraction(rho)
    k, h = soft_params(rho)
    n = graph.n
    # an edgeless source would leave isolated originals vacuously happy
    d = max(graph.max_degree, 1)
    pre = dict(spec.precolor)
    edges = []
    nxt = n + 1
    for u, v, _ in graph.edges:
        x = nxt
        nxt += 1
        edges += [(u, x), (x, v)]
        for _ in range(h):
            edges.append((x, nxt))
            nxt += 1
        for i in range(1, k + 1):
            edges.append((x, nxt))
            pre[nxt] = i
            nxt += 1
    for v in range(1, n + 1):
        for i in range(1, k + 1):
            for _ in range(d):
                edges.append((v, nxt))
                pre[nxt] = i
                nxt += 1
    g2 = Graph(nxt - 1, edges)
    return ReductionOutput("mhe3->soft", (graph, spec), g2, ColorSpec(k, pre), Soft(rho), "MHV",
                           IffRelation(d, n, graph.m, h),
                           {"rho": rho, "k": k, "h": h, "Delta": d})


# -- verification ------------------------------------------------------------

def multiway_cut_value(mc: MultiwayCutInstance, method: str = "labels",
                       budget: int = DEFAULT_BUDGET) -> int:
    """Minimum number of edges whose removal separates all terminals pairwise.

    ``"labels"`` enumerates assignments of non-terminals to terminals;
    ``"edges"`` tries edge subsets in increasing size and tests separation
    with a union-find.
    """
    g, ts = mc.graph, mc.terminals
    if method == "labels":
        free = [v for v in range(1, g.n + 1) if v not in ts]
        need = len(ts) ** len(free)
        if need > budget:
            raise BudgetExceeded(need, budget)
        label = [0] * (g.n + 1)
        for i, t in enumerate(ts):
            label[t] = i
        best = g.m
        for combo in itertools.product(range(len(ts)), repeat=len(free)):
            for v, c in zip(free, combo):
                label[v] = c
            best = min(best, sum(1 for u, v, _ in g.edges if label[u] != label[v]))
        return best
    if method == "edges":
        need = 2 ** g.m
        if need > budget:
            raise BudgetExceeded(need, budget)
        pairs = [(u, v) for u, v, _ in g.edges]
        for size in range(g.m + 1):
            for removed in itertools.combinations(range(g.m), size):
                if _separates(g.n, pairs, set(removed), ts):
                    return size
        raise AssertionError("removing every edge must separate the terminals")
    raise ValueError(f"unknown method {method!r}")


def _separates(n, pairs, removed, terminals) -> bool:
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j, (u, v) in enumerate(pairs):
        if j not in removed:
            parent[find(u)] = find(v)
    roots = [find(t) for t in terminals]
    return len(set(roots)) == len(roots)


@dataclass
class Verdict:
    """Outcome of checking a reduction: ``holds`` is None when skipped."""

    holds: bool | None
    source_opt: object = None
    target_opt: object = None
    expected_target: object = None
    note: str = ""

    def __str__(self):
        if self.holds is None:
            return f"skipped ({self.note})"
        word = "holds" if self.holds else "FAILS"
        return (f"{word}: source OPT {self.source_opt}, target OPT {self.target_opt}, "
                f"relation predicts {self.expected_target}")


def source_optimum(out: ReductionOutput, budget: int = DEFAULT_BUDGET):
    if isinstance(out.source, MultiwayCutInstance):
        return multiway_cut_value(out.source, budget=budget)
    g, spec = out.source
    return brute_force_mhe(g, spec, budget=budget).objective


def target_optimum(out: ReductionOutput, budget: int = DEFAULT_BUDGET):
    if out.target_problem == "MHE":
        return brute_force_mhe(out.graph, out.spec, budget=budget).objective
    return brute_force_mhv(out.graph, out.spec, out.mode, budget=budget).objective


def verify_reduction(out: ReductionOutput, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Solve source and target exhaustively and test the value relation exactly."""
    try:
        src = source_optimum(out, budget)
        tgt = target_optimum(out, budget)
    except BudgetExceeded as e:
        warnings.warn(f"{out.kind}: verification skipped, {e}", stacklevel=2)
        return Verdict(None, note=str(e))
    expected = out.value_map.apply(src)
    return Verdict(tgt == expected, src, tgt, expected)
