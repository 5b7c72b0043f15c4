"""Property suites: approximation ratios, growth ledgers, exact solvers, reductions.

Each suite draws seeded random instances small enough for the exhaustive
oracle, checks a set of named properties and returns a ``SuiteReport``
with per-property pass/fail/skip counts, the worst observed ratio and the
first counterexample.  All comparisons are exact (ints and Fractions).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .brute import brute_force_mhe, brute_force_mhv
from .graph import STRICT, ColorSpec, Graph, Hard, HappinessMode, Soft
from .instances import (gen_connected, gen_multiway_cut, gen_random, write_instance,
                        write_multiway_cut)
from .mhe import division_mhe, exact_2mhe
from .mhv import exact_2mhv, greedy_mhv, growth_mhv
from . import reductions as red

# oracle enumerations allowed per sampled instance
ORACLE_CAP = 60_000


@dataclass
class Counterexample:
    prop: str
    detail: str
    instance: str  # instance-file text

    def __str__(self):
        return f"{self.prop}: {self.detail}\n{self.instance}"


@dataclass
class SuiteReport:
    suite: str
    counts: dict[str, list[int]] = field(default_factory=dict)  # prop -> [pass, fail, skip]
    worst: dict[str, Fraction] = field(default_factory=dict)
    counterexamples: list[Counterexample] = field(default_factory=list)
    instances: int = 0

    def record(self, prop: str, ok: bool | None, detail: str = "", instance: str = "") -> None:
        c = self.counts.setdefault(prop, [0, 0, 0])
        c[0 if ok else (2 if ok is None else 1)] += 1
        if ok is False and len(self.counterexamples) < 5:
            self.counterexamples.append(Counterexample(prop, detail, instance))

    def ratio(self, prop: str, value) -> None:
        value = Fraction(value)
        if prop not in self.worst or value < self.worst[prop]:
            self.worst[prop] = value

    @property
    def ok(self) -> bool:
        return all(c[1] == 0 for c in self.counts.values())

    def lines(self) -> list[str]:
        out = [f"suite {self.suite}: {self.instances} instances"]
        for prop, (p, f, s) in self.counts.items():
            out.append(f"  {prop}: pass {p}, fail {f}, vacuous-skip {s}")
        for prop, w in self.worst.items():
            out.append(f"  worst {prop}: {float(w):.4f} ({w})")
        return out


# -- instance samplers ---------------------------------------------------------

def _cap_free(graph: Graph, spec: ColorSpec, rng: random.Random, cap: int = ORACLE_CAP) -> ColorSpec:
    """Reveal extra random colors until the oracle fits in ``cap`` enumerations."""
    pre = dict(spec.precolor)
    free = [v for v in range(1, graph.n + 1) if v not in pre]
    rng.shuffle(free)
    while spec.k ** len(free) > cap:
        pre[free.pop()] = rng.randint(1, spec.k)
    return ColorSpec(spec.k, pre)


def _reveal_choice(rng: random.Random) -> float:
    return rng.choice([0.0, 1.0, 0.2, 0.4, 0.6])


def sample_two_color(rng: random.Random, n_max: int = 12, m_max: int = 30,
                     weighted: bool = False) -> tuple[Graph, ColorSpec]:
    n = rng.randint(1, n_max)
    p = rng.uniform(0.1, 0.7)
    g, spec = gen_random(n, p, 2, _reveal_choice(rng), rng.randrange(2**31),
                         max_weight=5 if weighted else 1)
    if g.m > m_max:
        g = Graph(n, rng.sample(g.edges, m_max))
    return g, spec


def sample_mode(rng: random.Random, graph: Graph) -> HappinessMode:
    kind = rng.choice(["strict", "soft", "hard"])
    if kind == "soft":
        den = rng.randint(2, 6)
        return Soft(Fraction(rng.randint(1, den - 1), den))
    if kind == "hard":
        return Hard(rng.randint(1, graph.max_degree + 1))
    return STRICT


def sample_multicolor(rng: random.Random, n_max: int = 10, weighted: bool = False,
                      ks=(2, 3, 4)) -> tuple[Graph, ColorSpec]:
    n = rng.randint(1, n_max)
    k = rng.choice(ks)
    g, spec = gen_random(n, rng.uniform(0.1, 0.7), k, _reveal_choice(rng),
                         rng.randrange(2**31), max_weight=5 if weighted else 1)
    return g, _cap_free(g, spec, rng)


def sample_growth(rng: random.Random, n_max: int = 10) -> tuple[Graph, ColorSpec]:
    """Connected, ``k = 3``, ``Delta >= 2`` (resampled until it holds)."""
    while True:
        n = rng.randint(3, n_max)
        g, spec = gen_connected(n, rng.uniform(0.0, 0.5), 3, rng.uniform(0.1, 0.6),
                                rng.randrange(2**31))
        if g.max_degree >= 2:
            return g, spec


def sample_connected(rng: random.Random, n_max: int = 10, k: int = 3) -> tuple[Graph, ColorSpec]:
    n = rng.randint(1, max(n_max, 1))
    return gen_connected(n, rng.uniform(0.0, 0.5), k, rng.uniform(0.1, 0.6), rng.randrange(2**31))


def sample_tiny_mhe3(rng: random.Random, n_max: int = 6, m_max: int | None = None,
                     free_max: int | None = None) -> tuple[Graph, ColorSpec]:
    """3-MHE source with at least one vertex precolored 1."""
    n = rng.randint(1, n_max)
    g, spec = gen_random(n, rng.uniform(0.2, 0.8), 3, rng.uniform(0.3, 1.0), rng.randrange(2**31))
    if m_max is not None and g.m > m_max:
        g = Graph(n, rng.sample(g.edges, m_max))
    pre = dict(spec.precolor)
    if 1 not in pre.values():
        pre[rng.randint(1, n)] = 1
    if free_max is not None:
        free = [v for v in range(1, n + 1) if v not in pre]
        rng.shuffle(free)
        while len(free) > free_max:
            pre[free.pop()] = rng.randint(1, 3)
    return g, ColorSpec(3, pre)


# -- property checks ----------------------------------------------------------

def growth_bound_denominator(delta: int) -> int:
    return delta * (delta - 1) * (delta + 1)


def check_growth_ledgers(report: SuiteReport, graph: Graph, spec: ColorSpec, opt: int | None,
                         text: str) -> None:
    """Ledger checks on one growth run (vacuous-skip when ``Delta < 2``)."""
    sol = growth_mhv(graph, spec)
    c = sol.counters
    d = c["Delta"]
    if d < 2:
        for prop in ("L1-global", "L1-step-P", "L1-step-Lh", "L1-step-Lu", "L3", "L2"):
            report.record(prop, None)
        return
    h_new, l_gap = c["H_new"], c["L_org"] - c["Lu_org"]
    cap_p, cap_h = d * (d - 2), (d - 1) * (d - 2)
    checks = [
        ("L1-global", c["Lu_new"] <= cap_p * h_new, f"Lu_new={c['Lu_new']} > {cap_p}*H_new={h_new}"),
        ("L1-step-P", c["max_Lu_P"] <= cap_p, f"P-step made {c['max_Lu_P']} new L_u > {cap_p}"),
        ("L1-step-Lh", c["max_Lu_Lh"] <= cap_h, f"L_h-step made {c['max_Lu_Lh']} new L_u > {cap_h}"),
        ("L1-step-Lu", c["max_Lu_Lu"] == 0, f"L_u-step made {c['max_Lu_Lu']} new L_u"),
        ("L3", h_new * d * (d - 1) >= l_gap, f"H_new={h_new} < (L_org-Lu_org)/{d * (d - 1)}={l_gap}/{d * (d - 1)}"),
    ]
    if opt is not None:
        bound = c["H_org"] + (d + 1) * l_gap
        checks.append(("L2", opt <= bound, f"OPT={opt} > H_org+(Delta+1)(L_org-Lu_org)={bound}"))
    for prop, ok, detail in checks:
        report.record(prop, ok, detail, text)


def suite_ratios(trials: int = 200, n_max: int = 10, seed: int = 0) -> SuiteReport:
    """Greedy ``>= OPT/k`` (all modes), growth ``>= OPT/(D(D-1)(D+1))`` and
    division ``>= bound/2`` and ``>= OPT/2``."""
    rng = random.Random(seed)
    rep = SuiteReport("ratios")
    for _ in range(trials):
        rep.instances += 1
        g, spec = sample_multicolor(rng, n_max)
        mode = sample_mode(rng, g)
        text = write_instance(g, spec, mode)
        opt = brute_force_mhv(g, spec, mode).objective
        got = greedy_mhv(g, spec, mode).objective
        rep.record("greedy>=OPT/k", got * spec.k >= opt, f"greedy {got}, OPT {opt}, k {spec.k}", text)
        if opt:
            rep.ratio("greedy/OPT", Fraction(got, opt))

        g, spec = sample_growth(rng, n_max)
        text = write_instance(g, spec)
        opt = brute_force_mhv(g, spec).objective
        got = growth_mhv(g, spec).objective
        den = growth_bound_denominator(g.max_degree)
        rep.record("growth>=OPT/(D(D-1)(D+1))", got * den >= opt, f"growth {got}, OPT {opt}, D {g.max_degree}", text)
        if opt:
            rep.ratio("growth/OPT", Fraction(got, opt))

        g, spec = sample_multicolor(rng, n_max, weighted=True)
        text = write_instance(g, spec)
        sol = division_mhe(g, spec)
        bound = sol.counters["bound"]
        rep.record("division>=bound/2", 2 * sol.objective >= bound, f"division {sol.objective}, bound {bound}", text)
        opt = brute_force_mhe(g, spec).objective
        rep.record("division>=OPT/2", 2 * sol.objective >= opt, f"division {sol.objective}, OPT {opt}", text)
        rep.record("OPT<=bound", opt <= bound, f"OPT {opt} > bound {bound}", text)
        if opt:
            rep.ratio("division/OPT", Fraction(sol.objective) / Fraction(opt))
    return rep


def suite_lemmas(trials: int = 200, n_max: int = 10, seed: int = 0,
                 sampler: Callable | None = None) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("lemmas")
    sampler = sampler or sample_connected
    for _ in range(trials):
        rep.instances += 1
        g, spec = sampler(rng, n_max)
        opt = brute_force_mhv(g, spec).objective if g.max_degree >= 2 else None
        check_growth_ledgers(rep, g, spec, opt, write_instance(g, spec))
    return rep


def suite_exact(trials: int = 200, n_max: int = 12, seed: int = 0, m_max: int = 30) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("exact")
    for _ in range(trials):
        rep.instances += 1
        g, spec = sample_two_color(rng, n_max, m_max)
        text = write_instance(g, spec)
        a, b = exact_2mhv(g, spec).objective, brute_force_mhv(g, spec).objective
        rep.record("exact2-MHV==brute", a == b, f"exact2 {a}, brute {b}", text)
        g, spec = sample_two_color(rng, n_max, m_max, weighted=True)
        text = write_instance(g, spec)
        a, b = exact_2mhe(g, spec).objective, brute_force_mhe(g, spec).objective
        rep.record("exact2-MHE==brute", a == b, f"exact2 {a}, brute {b}", text)
    return rep


REDUCTION_KINDS = ("mwc3->mhe3", "mhe3->mhek", "mhe->mhv", "mhe->hard", "mhe3->soft")


def sample_reduction(kind: str, rng: random.Random, n_max: int = 6) -> red.ReductionOutput:
    """A tiny reduction output whose both sides fit the default oracle budget."""
    if kind == "mwc3->mhe3":
        n = rng.randint(3, n_max)
        mc = gen_multiway_cut(n, rng.uniform(0.1, 0.7), 3, rng.randrange(2**31))
        return red.multiway_cut_to_3mhe(mc)
    if kind == "mhe3->mhek":
        g, spec = sample_tiny_mhe3(rng, n_max, free_max=4)
        return red.pad_3mhe_to_kmhe(g, spec, rng.randint(3, 5))
    if kind == "mhe->mhv":
        while True:
            g, spec = sample_tiny_mhe3(rng, n_max, m_max=6, free_max=4)
            if len(set(spec.precolor.values())) >= 2:
                return red.mhe_to_mhv(g, spec)
    if kind == "mhe->hard":
        # target free vertices: uncolored originals + m * Delta
        while True:
            g, spec = sample_tiny_mhe3(rng, n_max, m_max=4, free_max=3)
            if len(spec.uncolored(g.n)) + g.m * g.max_degree <= 12:
                return red.mhe_to_hardmhv(g, spec)
    if kind == "mhe3->soft":
        rho = rng.choice([Fraction(1, 2), Fraction(2, 3), Fraction(3, 4), Fraction(3, 5)])
        k, h = red.soft_params(rho)
        limit = int(math.log(ORACLE_CAP * 20) / math.log(k))
        while True:
            g, spec = sample_tiny_mhe3(rng, min(n_max, 4), m_max=3, free_max=2)
            if len(spec.uncolored(g.n)) + g.m * (1 + h) <= limit:
                return red.mhe_to_softmhv(g, spec, rho)
    raise ValueError(f"unknown reduction {kind!r}")


def suite_reductions(trials: int = 100, n_max: int = 6, seed: int = 0,
                     kinds=REDUCTION_KINDS) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("reductions")
    for kind in kinds:
        for _ in range(trials):
            rep.instances += 1
            out = sample_reduction(kind, rng, n_max)
            verdict = red.verify_reduction(out)
            if isinstance(out.source, red.MultiwayCutInstance):
                text = write_multiway_cut(out.source)
            else:
                text = write_instance(*out.source)
            rep.record(kind, verdict.holds, str(verdict), text)
    return rep


SUITES = {"ratios": suite_ratios, "lemmas": suite_lemmas, "exact": suite_exact,
          "reductions": suite_reductions}
