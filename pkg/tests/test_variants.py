from fractions import Fraction

import pytest
from hypothesis import example, given

from happycolor.brute import brute_force_mhv
from happycolor.graph import STRICT, ColorSpec, Graph, Hard, Soft
from happycolor.mhv import grow, growth_mhv
from happycolor.variants import (ThresholdRefusal, best_variant, greedy_variant, growth_hard_mhv,
                                 growth_soft_mhv)

from conftest import instances, modes

HALF = Fraction(1, 2)


def test_soft_star(star_112):
    sol = growth_soft_mhv(*star_112, HALF, trace=True)
    assert sol.objective == 3 == brute_force_mhv(*star_112, Soft(HALF)).objective
    assert sol.counters["trace"][0]["colored"] == [4]


def test_soft_triangle(triangle_uu):
    sol = growth_soft_mhv(*triangle_uu, Fraction(3, 5), trace=True)
    assert sol.coloring[3] == 1 and sol.objective == 0
    assert sol.counters["trace"][0]["kind"] == "Lu"


def test_rho_one_is_strict(star_112):
    assert growth_soft_mhv(*star_112, 1).coloring == growth_mhv(*star_112).coloring


def test_hard_path(path_abc):
    sol = growth_hard_mhv(*path_abc, 1)
    assert sol.objective == 2 == brute_force_mhv(*path_abc, Hard(1)).objective
    assert sol.coloring[2] == 1


@pytest.mark.parametrize("inner, expect", [(3, 5), (2, 4)])
def test_hard_path_between_colors(inner, expect):
    n = inner + 2
    g = Graph(n, [(i, i + 1) for i in range(1, n)])
    spec = ColorSpec(2, {1: 1, n: 2})
    sol = growth_hard_mhv(g, spec, 1)
    assert sol.objective == brute_force_mhv(g, spec, Hard(1)).objective == expect


def test_hard_refuses_q_above_max_degree(path_abc):
    with pytest.raises(ThresholdRefusal, match="exceeds the maximum degree"):
        growth_hard_mhv(*path_abc, 3)
    assert growth_hard_mhv(*path_abc, 3, force=True).objective == 0


def test_regular_hard_matches_strict():
    g = Graph(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
    spec = ColorSpec(3, {1: 1, 3: 2})
    assert growth_hard_mhv(g, spec, 2).coloring == growth_mhv(g, spec).coloring


def test_greedy_variant_examples(star_112, path_abc):
    assert greedy_variant(*star_112, Soft(HALF)).objective == 3
    assert greedy_variant(*path_abc, Hard(1)).objective == 2
    g = Graph(2, [(1, 2)])
    assert greedy_variant(g, ColorSpec(2, {1: 1, 2: 2}), Hard(1)).objective == 0


@given(instances(max_n=7, max_free=6), modes())
def test_growth_and_best_valid_and_bounded(inst, mode):
    g, spec = inst
    opt = brute_force_mhv(g, spec, mode).objective
    sol = grow(g, spec, mode)
    sol.validate(g, spec)
    assert sol.objective <= opt
    if not (isinstance(mode, Hard) and mode.q > g.max_degree):
        best = best_variant(g, spec, mode)
        best.validate(g, spec)
        assert best.objective * spec.k >= opt


@given(instances(max_n=7, max_free=6))
@example((Graph(3, [(1, 2), (1, 3), (2, 3)]), ColorSpec(2, {2: 2, 3: 1})))
def test_soft_threshold_collapse(inst):
    # rho close enough to 1 that ceil(rho * deg) == deg for every degree <= 6
    g, spec = inst
    rho = Fraction(6, 7)
    if all(Soft(rho).need(d) == d for d in range(g.max_degree + 1)):
        assert grow(g, spec, Soft(rho)).coloring == grow(g, spec, STRICT).coloring
