"""Graphs, partial colorings and happiness semantics.

Vertices are dense ids ``1..n`` and colors dense ids ``1..k``.  Colorings
are plain sequences indexed by vertex id with slot 0 unused and ``0``
meaning "uncolored"; any mapping that answers ``coloring[v]`` for
``v in 1..n`` is accepted wherever a total coloring is expected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Weight = Union[int, Fraction]
Coloring = Union[Sequence[int], Mapping[int, int]]


def as_weight(value) -> Weight:
    """Normalize a weight to an ``int`` when integral, else a ``Fraction``."""
    w = Fraction(value)
    if w < 0:
        raise ValueError(f"negative edge weight {value!r}")
    return int(w) if w.denominator == 1 else w


class Graph:
    """Undirected simple graph on vertices ``1..n`` with nonnegative edge weights.

    Treated as immutable after construction.  ``adj[v]`` is the sorted
    neighbor list of ``v`` (``adj[0]`` is empty), ``edges`` holds
    ``(u, v, w)`` triples with ``u < v`` in lexicographic order.
    """

    __slots__ = ("n", "adj", "edges", "max_degree", "_weights")

    def __init__(self, n: int, edges: Iterable[tuple] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        norm: dict[tuple[int, int], Weight] = {}
        for e in edges:
            if len(e) == 2:
                u, v = e
                w: Weight = 1
            else:
                u, v, w = e
                w = as_weight(w)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u}, {v}) out of range 1..{n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in norm:
                raise ValueError(f"parallel edge {key}")
            norm[key] = w
        adj: list[list[int]] = [[] for _ in range(n + 1)]
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        for lst in adj:
            lst.sort()
        self.n = n
        self.adj = adj
        self.edges = [(u, v, norm[u, v]) for u, v in sorted(norm)]
        self.max_degree = max((len(a) for a in adj), default=0)
        self._weights = norm

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def weight(self, u: int, v: int) -> Weight:
        return self._weights[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._weights

    @property
    def unit_weights(self) -> bool:
        return all(w == 1 for _, _, w in self.edges)

    def total_weight(self) -> Weight:
        return sum((w for _, _, w in self.edges), 0)

    def second_neighborhood(self, v: int) -> set[int]:
        """Vertices at distance exactly 1 or 2 from ``v``, excluding ``v``."""
        out: set[int] = set()
        for u in self.adj[v]:
            out.add(u)
            out.update(self.adj[u])
        out.discard(v)
        return out

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by smallest id."""
        seen = [False] * (self.n + 1)
        comps = []
        for s in range(1, self.n + 1):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comp.sort()
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]`` (``perm[0]`` ignored)."""
        return Graph(self.n, ((perm[u], perm[v], w) for u, v, w in self.edges))

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, tuple(self.edges)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, max_degree={self.max_degree})"


@dataclass(frozen=True)
class ColorSpec:
    """Number of colors ``k`` and the partial precoloring ``vertex -> color``."""

    k: int
    precolor: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        for v, c in self.precolor.items():
            if not 1 <= c <= self.k:
                raise ValueError(f"precolor of vertex {v} is {c}, outside 1..{self.k}")
        object.__setattr__(self, "precolor", dict(sorted(self.precolor.items())))

    def check(self, graph: Graph) -> None:
        for v in self.precolor:
            if not 1 <= v <= graph.n:
                raise ValueError(f"precolored vertex {v} outside 1..{graph.n}")

    def initial(self, n: int) -> list[int]:
        """The precoloring as a length ``n + 1`` color array (0 = uncolored)."""
        col = [0] * (n + 1)
        for v, c in self.precolor.items():
            col[v] = c
        return col

    def uncolored(self, n: int) -> list[int]:
        return [v for v in range(1, n + 1) if v not in self.precolor]

    def relabel(self, perm: Sequence[int]) -> "ColorSpec":
        return ColorSpec(self.k, {perm[v]: c for v, c in self.precolor.items()})

    def __hash__(self):
        return hash((self.k, tuple(self.precolor.items())))


# -- happiness modes ---------------------------------------------------------

def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@dataclass(frozen=True)
class Strict:
    """A vertex is happy when every neighbor shares its color."""

    name = "strict"

    def need(self, deg: int) -> int:
        return deg

    def __str__(self):
        return "strict"


@dataclass(frozen=True)
class Soft:
    """A vertex is happy when at least ``rho * deg`` neighbors share its color."""

    rho: Fraction
    name = "soft"

    def __post_init__(self):
        rho = Fraction(self.rho)
        if not 0 < rho < 1:
            raise ValueError(f"soft threshold must lie in (0, 1), got {rho}")
        object.__setattr__(self, "rho", rho)

    def need(self, deg: int) -> int:
        # exact: |N^s| >= rho*deg  <=>  |N^s| >= ceil(rho*deg)
        return _ceil_frac(self.rho * deg)

    def __str__(self):
        return f"soft {self.rho.numerator}/{self.rho.denominator}"


@dataclass(frozen=True)
class Hard:
    """A vertex is happy when at least ``q`` neighbors share its color."""

    q: int
    name = "hard"

    def __post_init__(self):
        if int(self.q) != self.q or self.q < 1:
            raise ValueError(f"hard threshold must be a positive integer, got {self.q}")

    def need(self, deg: int) -> int:
        return self.q

    def __str__(self):
        return f"hard {self.q}"


HappinessMode = Union[Strict, Soft, Hard]
STRICT = Strict()


def soft_mode(rho) -> HappinessMode:
    """``Soft(rho)``, except that ``rho == 1`` collapses to strict happiness."""
    rho = Fraction(rho)
    return STRICT if rho == 1 else Soft(rho)


def parse_mode(tokens: Sequence[str]) -> HappinessMode:
    """Mode from tokens such as ``["strict"]``, ``["soft", "1/2"]``, ``["hard", "2"]``."""
    if not tokens:
        raise ValueError("empty mode")
    kind = tokens[0].lower()
    if kind == "strict" and len(tokens) == 1:
        return STRICT
    if kind == "soft" and len(tokens) == 2:
        return soft_mode(Fraction(tokens[1]))
    if kind == "hard" and len(tokens) == 2:
        return Hard(int(tokens[1]))
    raise ValueError(f"bad mode {' '.join(tokens)!r}")


# -- evaluation --------------------------------------------------------------

def happy_vertices(graph: Graph, coloring: Coloring, mode: HappinessMode = STRICT) -> list[int]:
    """Sorted list of happy vertices under a total coloring."""
    out = []
    adj = graph.adj
    for v in range(1, graph.n + 1):
        c = coloring[v]
        if not c:
            raise ValueError(f"vertex {v} is uncolored")
        nbrs = adj[v]
        same = sum(1 for u in nbrs if coloring[u] == c)
        if same >= mode.need(len(nbrs)):
            out.append(v)
    return out


def count_happy_vertices(graph: Graph, coloring: Coloring, mode: HappinessMode = STRICT) -> int:
    return len(happy_vertices(graph, coloring, mode))


def happy_edge_weight(graph: Graph, coloring: Coloring) -> Weight:
    """Total weight of edges whose endpoints share a color."""
    total: Weight = 0
    for u, v, w in graph.edges:
        cu, cv = coloring[u], coloring[v]
        if not cu or not cv:
            raise ValueError(f"edge ({u}, {v}) has an uncolored endpoint")
        if cu == cv:
            total += w
    return total


def extends(coloring: Coloring, spec: ColorSpec, n: int) -> bool:
    """True when ``coloring`` is total on ``1..n``, uses colors in ``1..k``
    and agrees with the precoloring."""
    for v in range(1, n + 1):
        c = coloring[v]
        if not 1 <= c <= spec.k:
            return False
    return all(coloring[v] == c for v, c in spec.precolor.items())


def fmt_number(x) -> str:
    """Render an int or Fraction as ``"7"`` or ``"7/2"``."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class Solution:
    """A total coloring with its objective and provenance.

    ``problem`` is one of ``"MHV"`` or ``"MHE"``; ``mode`` is the happiness
    mode the vertex objective was measured under.  ``counters`` holds the
    algorithm's bookkeeping (growth lemma ledgers, division weights).
    """

    coloring: list[int]
    objective: Weight
    problem: str
    algorithm: str
    mode: HappinessMode = STRICT
    counters: dict = field(default_factory=dict)

    def color_map(self) -> dict[int, int]:
        return {v: self.coloring[v] for v in range(1, len(self.coloring))}

    def reevaluate(self, graph: Graph) -> Weight:
        if self.problem == "MHE":
            return happy_edge_weight(graph, self.coloring)
        return count_happy_vertices(graph, self.coloring, self.mode)

    def validate(self, graph: Graph, spec: ColorSpec) -> None:
        """Raise ``AssertionError`` unless the solution is total, extends the
        precoloring and reports its true objective."""
        if len(self.coloring) != graph.n + 1:
            raise AssertionError("coloring has the wrong length")
        if not extends(self.coloring, spec, graph.n):
            raise AssertionError(f"{self.algorithm}: coloring does not extend the precoloring")
        value = self.reevaluate(graph)
        if value != self.objective:
            raise AssertionError(
                f"{self.algorithm}: reported objective {self.objective} but coloring scores {value}")


def make_solution(graph: Graph, coloring: list[int], problem: str, algorithm: str,
                  mode: HappinessMode = STRICT, counters: dict | None = None) -> Solution:
    sol = Solution(coloring, 0, problem, algorithm, mode, counters or {})
    sol.objective = sol.reevaluate(graph)
    return sol
