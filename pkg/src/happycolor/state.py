"""Vertex-type classification and the incremental coloring engine.

Colored vertices are H (happy), U (can never become happy) or P (not yet
happy but still completable).  Uncolored vertices are split by their
neighborhood into L_p (next to a P-vertex), L_h (can become happy), L_u
(can never become happy) and L_f (no colored neighbor yet).

``classify_vertex`` recomputes a tag from scratch, following the
per-mode definitions literally.  ``ColoringState`` keeps neighbor
counters and tags up to date as vertices get colored, using a single
threshold rule that coincides with all three definitions.
"""

from __future__ import annotations

import heapq
from enum import IntEnum

from .graph import STRICT, ColorSpec, Graph, HappinessMode, Soft, Strict


class VType(IntEnum):
    H = 0
    U = 1
    P = 2
    L_P = 3
    L_H = 4
    L_U = 5
    L_F = 6

    def __str__(self):
        return _LABELS[self]


_LABELS = {VType.H: "H", VType.U: "U", VType.P: "P",
           VType.L_P: "L_p", VType.L_H: "L_h", VType.L_U: "L_u", VType.L_F: "L_f"}
H, U, P, L_P, L_H, L_U, L_F = (int(t) for t in VType)


def _colored_type(graph: Graph, color, mode: HappinessMode, v: int) -> VType:
    c = color[v]
    deg = graph.degree(v)
    same = diff = unc = 0
    for u in graph.adj[v]:
        cu = color[u]
        if not cu:
            unc += 1
        elif cu == c:
            same += 1
        else:
            diff += 1
    if isinstance(mode, Strict):
        if same == deg:
            return VType.H
        if diff > 0:
            return VType.U
        return VType.P
    if isinstance(mode, Soft):
        rho = mode.rho
        if same >= rho * deg:
            return VType.H
        if deg - diff < rho * deg:
            return VType.U
        return VType.P
    q = mode.q
    if same >= q:
        return VType.H
    if deg - diff < q:
        return VType.U
    return VType.P


def classify_vertex(graph: Graph, color, mode: HappinessMode, v: int) -> VType:
    """Type tag of ``v`` under the (partial) coloring ``color``, from scratch."""
    if color[v]:
        return _colored_type(graph, color, mode, v)
    nbrs = graph.adj[v]
    deg = len(nbrs)
    colored = [u for u in nbrs if color[u]]
    if any(_colored_type(graph, color, mode, u) == VType.P for u in colored):
        return VType.L_P
    if isinstance(mode, Strict):
        if not colored:
            return VType.L_F
        if len({color[u] for u in colored}) == 1:
            return VType.L_H
        return VType.L_U
    per_color: dict[int, int] = {}
    for u in colored:
        per_color[color[u]] = per_color.get(color[u], 0) + 1
    reach = (deg - len(colored)) + max(per_color.values(), default=0)
    if isinstance(mode, Soft):
        if not colored:
            return VType.L_F
        return VType.L_H if reach >= mode.rho * deg else VType.L_U
    # hard mode: L_u does not require a colored neighbor
    if reach < mode.q:
        return VType.L_U
    return VType.L_H if colored else VType.L_F


class ColoringState:
    """Mutable partial coloring with per-vertex neighbor counters and live tags.

    Vertices are only ever colored, never recolored.  ``pop_min(tag)``
    returns the smallest-id vertex currently carrying ``tag`` (for P, L_h
    and L_u), using lazily cleaned heaps.
    """

    def __init__(self, graph: Graph, spec: ColorSpec, mode: HappinessMode = STRICT):
        spec.check(graph)
        n, k = graph.n, spec.k
        self.graph = graph
        self.k = k
        self.mode = mode
        self.color = spec.initial(n)
        adj = graph.adj
        self.need = [mode.need(len(adj[v])) for v in range(n + 1)]
        self.n_unc = [0] * (n + 1)
        # per_color[v * (k + 1) + i] = |N_i(v)|
        self.per_color = [0] * ((n + 1) * (k + 1))
        self.max_pc = [0] * (n + 1)
        self.n_p_nbrs = [0] * (n + 1)
        self.tag = [L_F] * (n + 1)
        self._heaps: dict[int, list[int]] = {P: [], L_H: [], L_U: []}
        col = self.color
        pc, stride = self.per_color, k + 1
        for v in range(1, n + 1):
            base = v * stride
            unc = 0
            for u in adj[v]:
                cu = col[u]
                if cu:
                    pc[base + cu] += 1
                else:
                    unc += 1
            self.n_unc[v] = unc
            self.max_pc[v] = max(pc[base + 1: base + stride], default=0)
        for v in range(1, n + 1):
            if col[v]:
                self.tag[v] = self._colored_tag(v)
        for v in range(1, n + 1):
            if self.tag[v] == P and col[v]:
                for u in adj[v]:
                    self.n_p_nbrs[u] += 1
        for v in range(1, n + 1):
            if not col[v]:
                self.tag[v] = self._uncolored_tag(v)
        for v in range(1, n + 1):
            t = self.tag[v]
            if t in self._heaps:
                self._heaps[t].append(v)
        for h in self._heaps.values():
            heapq.heapify(h)

    # -- counters -----------------------------------------------------------

    def n_uncolored(self, v: int) -> int:
        return self.n_unc[v]

    def n_color(self, v: int, i: int) -> int:
        return self.per_color[v * (self.k + 1) + i]

    def n_same(self, v: int) -> int:
        c = self.color[v]
        return self.n_color(v, c) if c else 0

    def n_diff(self, v: int) -> int:
        c = self.color[v]
        if not c:
            return 0
        return self.graph.degree(v) - self.n_unc[v] - self.n_same(v)

    def colors_seen(self, v: int) -> list[int]:
        """Colors present among the colored neighbors of ``v``, ascending."""
        base = v * (self.k + 1)
        pc = self.per_color
        return [i for i in range(1, self.k + 1) if pc[base + i]]

    # -- classification -----------------------------------------------------

    def _colored_tag(self, v: int) -> int:
        same = self.per_color[v * (self.k + 1) + self.color[v]]
        need = self.need[v]
        if same >= need:
            return H
        if same + self.n_unc[v] < need:
            return U
        return P

    def _uncolored_tag(self, v: int) -> int:
        if self.n_p_nbrs[v]:
            return L_P
        if self.n_unc[v] + self.max_pc[v] < self.need[v]:
            return L_U
        if self.n_unc[v] < len(self.graph.adj[v]):
            return L_H
        return L_F

    def type_of(self, v: int) -> VType:
        return VType(self.tag[v])

    def _set_tag(self, v: int, t: int, changed: dict) -> None:
        old = self.tag[v]
        if old == t:
            return
        if v not in changed:
            changed[v] = VType(old)
        self.tag[v] = t
        heap = self._heaps.get(t)
        if heap is not None:
            heapq.heappush(heap, v)

    def apply_color(self, v: int, i: int) -> dict[int, VType]:
        """Color ``v`` with ``i`` and refresh every affected tag.

        Returns ``{vertex: previous tag}`` for the vertices whose tag changed
        (its keys are the changed set).
        """
        col = self.color
        if col[v]:
            raise ValueError(f"vertex {v} is already colored {col[v]}")
        if not 1 <= i <= self.k:
            raise ValueError(f"color {i} outside 1..{self.k}")
        adj = self.graph.adj
        stride = self.k + 1
        pc, n_unc, max_pc = self.per_color, self.n_unc, self.max_pc
        tag = self.tag
        col[v] = i
        for u in adj[v]:
            n_unc[u] -= 1
            idx = u * stride + i
            pc[idx] += 1
            if pc[idx] > max_pc[u]:
                max_pc[u] = pc[idx]
        changed: dict[int, VType] = {}
        recheck: set[int] = set()
        # colored tags depend only on own counters
        for x in (v, *adj[v]):
            if not col[x]:
                recheck.add(x)
                continue
            new = self._colored_tag(x)
            was_p, is_p = tag[x] == P, new == P
            self._set_tag(x, new, changed)
            if was_p != is_p:
                d = 1 if is_p else -1
                for y in adj[x]:
                    self.n_p_nbrs[y] += d
                    if not col[y]:
                        recheck.add(y)
        for x in recheck:
            self._set_tag(x, self._uncolored_tag(x), changed)
        return changed

    def pop_min(self, t: int) -> int | None:
        """Smallest-id vertex currently tagged ``t`` (P, L_h or L_u), or None.

        The vertex stays in place; only stale heap entries are discarded.
        """
        heap = self._heaps[t]
        tag = self.tag
        while heap and tag[heap[0]] != t:
            heapq.heappop(heap)
        return heap[0] if heap else None

    def counts(self) -> dict[VType, int]:
        out = {t: 0 for t in VType}
        for v in range(1, self.graph.n + 1):
            out[VType(self.tag[v])] += 1
        return out

    def check(self) -> None:
        """Audit every counter and tag against recomputation from scratch."""
        g, col, k = self.graph, self.color, self.k
        for v in range(1, g.n + 1):
            nb = g.adj[v]
            unc = sum(1 for u in nb if not col[u])
            assert self.n_unc[v] == unc, f"n_uncolored mismatch at {v}"
            for i in range(1, k + 1):
                assert self.n_color(v, i) == sum(1 for u in nb if col[u] == i), f"N_{i} mismatch at {v}"
            if col[v]:
                assert self.n_same(v) + self.n_diff(v) + unc == len(nb)
            expect = classify_vertex(g, col, self.mode, v)
            assert self.tag[v] == expect, f"tag of {v} is {VType(self.tag[v])}, recomputed {expect}"
