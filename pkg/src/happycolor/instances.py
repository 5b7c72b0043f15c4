"""Text instance formats and seeded random instance generators.

Happy-coloring instances::

    p happy <n> <m> <k>
    mode strict | mode soft <num>/<den> | mode hard <q>
    v <id> <color>
    e <u> <v> [weight]

Multiway Cut instances::

    p mwc <n> <m> <t>
    t <id>
    e <u> <v>

``#`` starts a comment line; blank lines are ignored.  Writers emit the
canonical form: header, mode line, vertices ascending, edges in
lexicographic order, weights only when different from 1, LF endings.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .graph import STRICT, ColorSpec, Graph, HappinessMode, fmt_number, parse_mode
from .reductions import MultiwayCutInstance


class ParseError(ValueError):
    """Malformed instance text; the message names the offending line."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"{message} at line {line}" if line is not None else message)
        self.line = line


def _records(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if s and not s.startswith("#"):
            yield lineno, s.split()


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"bad {what} {tok!r}", lineno) from None


def _header(records, kind: str, arity: int):
    try:
        lineno, tok = next(records)
    except StopIteration:
        raise ParseError("empty instance") from None
    if tok[:2] != ["p", kind] or len(tok) != 2 + arity:
        raise ParseError(f"expected 'p {kind}' header with {arity} fields", lineno)
    vals = [_int(t, lineno, "header field") for t in tok[2:]]
    if any(x < 0 for x in vals):
        raise ParseError("negative header field", lineno)
    return lineno, vals


def _edge(tok, lineno, n, seen, weighted):
    if len(tok) not in ((3, 4) if weighted else (3,)):
        raise ParseError("bad edge record", lineno)
    u, v = _int(tok[1], lineno, "vertex id"), _int(tok[2], lineno, "vertex id")
    for x in (u, v):
        if not 1 <= x <= n:
            raise ParseError(f"vertex {x} out of range 1..{n}", lineno)
    if u == v:
        raise ParseError("self-loop", lineno)
    key = (min(u, v), max(u, v))
    if key in seen:
        raise ParseError(f"duplicate edge {key[0]}-{key[1]}", lineno)
    seen.add(key)
    if len(tok) == 4:
        try:
            w = Fraction(tok[3])
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad weight {tok[3]!r}", lineno) from None
        if w < 0:
            raise ParseError("negative weight", lineno)
        return (u, v, w)
    return (u, v)


def parse_instance(text: str) -> tuple[Graph, ColorSpec, HappinessMode]:
    """Parse a happy-coloring instance into ``(graph, spec, mode)``."""
    records = _records(text)
    _, (n, m, k) = _header(records, "happy", 3)
    if k < 1:
        raise ParseError("k must be at least 1", 1)
    mode: HappinessMode = STRICT
    mode_seen = False
    precolor: dict[int, int] = {}
    edges: list[tuple] = []
    seen: set = set()
    last = 1
    for lineno, tok in records:
        last = lineno
        rec = tok[0]
        if rec == "mode":
            if mode_seen:
                raise ParseError("second mode line", lineno)
            if edges or precolor:
                raise ParseError("mode line must precede vertex and edge lines", lineno)
            try:
                mode = parse_mode(tok[1:])
            except (ValueError, ZeroDivisionError) as e:
                raise ParseError(str(e), lineno) from None
            mode_seen = True
        elif rec == "v":
            if len(tok) != 3:
                raise ParseError("bad vertex record", lineno)
            v, c = _int(tok[1], lineno, "vertex id"), _int(tok[2], lineno, "color")
            if not 1 <= v <= n:
                raise ParseError(f"vertex {v} out of range 1..{n}", lineno)
            if not 1 <= c <= k:
                raise ParseError(f"color {c} out of range 1..{k}", lineno)
            if v in precolor:
                raise ParseError(f"vertex {v} precolored twice", lineno)
            precolor[v] = c
        elif rec == "e":
            edges.append(_edge(tok, lineno, n, seen, weighted=True))
        else:
            raise ParseError(f"unknown record {rec!r}", lineno)
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}", last)
    return Graph(n, edges), ColorSpec(k, precolor), mode


def write_instance(graph: Graph, spec: ColorSpec, mode: HappinessMode = STRICT) -> str:
    """Canonical text of a happy-coloring instance."""
    lines = [f"p happy {graph.n} {graph.m} {spec.k}", f"mode {mode}"]
    lines += [f"v {v} {c}" for v, c in spec.precolor.items()]
    for u, v, w in graph.edges:
        lines.append(f"e {u} {v}" if w == 1 else f"e {u} {v} {fmt_number(w)}")
    return "\n".join(lines) + "\n"


def parse_multiway_cut(text: str) -> MultiwayCutInstance:
    """Parse a Multiway Cut instance; terminal order is preserved."""
    records = _records(text)
    _, (n, m, t) = _header(records, "mwc", 3)
    terminals: list[int] = []
    edges: list[tuple] = []
    seen: set = set()
    last = 1
    for lineno, tok in records:
        last = lineno
        if tok[0] == "t":
            if len(tok) != 2:
                raise ParseError("bad terminal record", lineno)
            v = _int(tok[1], lineno, "terminal")
            if not 1 <= v <= n:
                raise ParseError(f"terminal {v} out of range 1..{n}", lineno)
            if v in terminals:
                raise ParseError(f"duplicate terminal {v}", lineno)
            terminals.append(v)
        elif tok[0] == "e":
            edges.append(_edge(tok, lineno, n, seen, weighted=False))
        else:
            raise ParseError(f"unknown record {tok[0]!r}", lineno)
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}", last)
    if len(terminals) != t:
        raise ParseError(f"header declares {t} terminals, found {len(terminals)}", last)
    try:
        return MultiwayCutInstance(Graph(n, edges), tuple(terminals))
    except ValueError as e:
        raise ParseError(str(e)) from None


def write_multiway_cut(mc: MultiwayCutInstance) -> str:
    g = mc.graph
    lines = [f"p mwc {g.n} {g.m} {len(mc.terminals)}"]
    lines += [f"t {t}" for t in mc.terminals]
    lines += [f"e {u} {v}" for u, v, _ in g.edges]
    return "\n".join(lines) + "\n"


# -- generators --------------------------------------------------------------

def _gnp_pairs(n: int, p: float, rng: random.Random):
    """Erdos-Renyi pairs ``(u, v)``, ``u < v``, by geometric skipping."""
    if p <= 0 or n < 2:
        return
    if p >= 1:
        for v in range(2, n + 1):
            for u in range(1, v):
                yield u, v
        return
    lp = math.log1p(-p)
    v, w = 1, -1
    while v < n:
        w += 1 + int(math.log1p(-rng.random()) / lp)
        while w >= v and v < n:
            w -= v
            v += 1
        if v < n:
            yield w + 1, v + 1


def _reveal(n, k, reveal, rng, truth=None) -> dict[int, int]:
    pre = {}
    for v in range(1, n + 1):
        if rng.random() < reveal:
            pre[v] = truth[v] if truth else rng.randint(1, k)
    return pre


def _check(n, k, reveal, *probs):
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    for p in (reveal, *probs):
        if not 0 <= p <= 1:
            raise ValueError(f"probability {p} outside [0, 1]")


def gen_random(n: int, edge_probability: float, k: int, reveal_fraction: float,
               seed: int, max_weight: int = 1) -> tuple[Graph, ColorSpec]:
    """G(n, p) graph, each vertex precolored uniformly with probability
    ``reveal_fraction``.  Weights are uniform in ``1..max_weight``."""
    _check(n, k, reveal_fraction, edge_probability)
    rng = random.Random(seed)
    edges = [(u, v, rng.randint(1, max_weight) if max_weight > 1 else 1)
             for u, v in _gnp_pairs(n, edge_probability, rng)]
    return Graph(n, edges), ColorSpec(k, _reveal(n, k, reveal_fraction, rng))


def gen_gnm(n: int, m: int, k: int, reveal_fraction: float, seed: int) -> tuple[Graph, ColorSpec]:
    """Uniform graph with exactly ``m`` edges (rejection sampling of pairs)."""
    _check(n, k, reveal_fraction)
    if m > n * (n - 1) // 2:
        raise ValueError(f"{m} edges do not fit on {n} vertices")
    rng = random.Random(seed)
    if 2 * m > n * (n - 1) // 2:
        pairs = [(u, v) for v in range(2, n + 1) for u in range(1, v)]
        edges = rng.sample(pairs, m)
    else:
        chosen: set[tuple[int, int]] = set()
        while len(chosen) < m:
            u, v = rng.randint(1, n), rng.randint(1, n)
            if u != v:
                chosen.add((u, v) if u < v else (v, u))
        edges = sorted(chosen)
    return Graph(n, edges), ColorSpec(k, _reveal(n, k, reveal_fraction, rng))


def gen_connected(n: int, edge_probability: float, k: int, reveal_fraction: float,
                  seed: int, max_weight: int = 1) -> tuple[Graph, ColorSpec]:
    """Random recursive tree plus G(n, p) edges: always connected."""
    _check(n, k, reveal_fraction, edge_probability)
    rng = random.Random(seed)
    weight = (lambda: rng.randint(1, max_weight)) if max_weight > 1 else (lambda: 1)
    edges = {}
    for v in range(2, n + 1):
        edges[(rng.randint(1, v - 1), v)] = weight()
    for u, v in _gnp_pairs(n, edge_probability, rng):
        if (u, v) not in edges:
            edges[(u, v)] = weight()
    graph = Graph(n, [(u, v, w) for (u, v), w in edges.items()])
    return graph, ColorSpec(k, _reveal(n, k, reveal_fraction, rng))


def planted_groups(n: int, k: int) -> list[int]:
    """Ground-truth group of each vertex: round-robin, so sizes differ by at most 1."""
    return [0] + [(v - 1) % k + 1 for v in range(1, n + 1)]


def gen_planted(n: int, k: int, p_in: float, p_out: float, reveal_fraction: float,
                seed: int) -> tuple[Graph, ColorSpec]:
    """Planted partition into ``k`` balanced groups; revealed precolors are
    the true groups."""
    _check(n, k, reveal_fraction, p_in, p_out)
    if p_in < p_out:
        raise ValueError("p_in must be at least p_out")
    rng = random.Random(seed)
    truth = planted_groups(n, k)
    edges = []
    for v in range(2, n + 1):
        for u in range(1, v):
            if rng.random() < (p_in if truth[u] == truth[v] else p_out):
                edges.append((u, v))
    return Graph(n, edges), ColorSpec(k, _reveal(n, k, reveal_fraction, rng, truth))


def gen_multiway_cut(n: int, edge_probability: float, terminals: int, seed: int) -> MultiwayCutInstance:
    """Connected random graph with terminals drawn uniformly without replacement."""
    g, _ = gen_connected(n, edge_probability, 1, 0.0, seed)
    rng = random.Random(seed ^ 0x5EED)
    return MultiwayCutInstance(g, tuple(rng.sample(range(1, n + 1), terminals)))

