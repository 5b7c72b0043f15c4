import itertools

import pytest
from hypothesis import given

from happycolor.brute import BudgetExceeded, brute_force_mhv
from happycolor.graph import ColorSpec, Graph, count_happy_vertices
from happycolor.mhv import exact_2mhv, greedy_mhv, growth_mhv

from conftest import instances, modes


def naive_opt(graph, spec, mode=None):
    """Optimum by plain itertools enumeration (independent of the numpy oracle)."""
    free = spec.uncolored(graph.n)
    best = -1
    for combo in itertools.product(range(1, spec.k + 1), repeat=len(free)):
        col = spec.initial(graph.n)
        for v, c in zip(free, combo):
            col[v] = c
        args = (graph, col) if mode is None else (graph, col, mode)
        best = max(best, count_happy_vertices(*args))
    return best


class TestGreedy:
    def test_path(self, path_abc):
        sol = greedy_mhv(*path_abc)
        assert sol.objective == 1
        assert sol.coloring == [0, 1, 1, 2]  # tie goes to color 1
        assert sol.counters["candidates"] == {1: 1, 2: 1}

    def test_empty_precoloring_is_monochrome(self):
        g = Graph(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
        assert greedy_mhv(g, ColorSpec(3)).objective == 5

    def test_star(self, star_112):
        assert greedy_mhv(*star_112).objective == 2

    @given(instances(max_n=7, max_free=6), modes())
    def test_one_over_k(self, inst, mode):
        g, spec = inst
        sol = greedy_mhv(g, spec, mode)
        sol.validate(g, spec)
        assert sol.objective * spec.k >= brute_force_mhv(g, spec, mode).objective


class TestGrowth:
    def test_star(self, star_112):
        sol = growth_mhv(*star_112, trace=True)
        assert sol.objective == 2
        assert sol.coloring == [0, 1, 1, 2, 1]
        first = sol.counters["trace"][0]
        assert (first["kind"], first["vertex"], first["colored"]) == ("P", 1, [4])

    def test_pendant_lh(self):
        g = Graph(3, [(1, 2), (2, 3)])
        sol = growth_mhv(g, ColorSpec(2, {1: 1, 2: 2}), trace=True)
        assert sol.objective == 1 and sol.coloring[3] == 2
        assert sol.counters["trace"][0]["kind"] == "Lh"

    def test_triangle_lu(self, triangle_uu):
        sol = growth_mhv(*triangle_uu, trace=True)
        assert sol.objective == 0 and sol.coloring[3] == 1
        assert sol.counters["trace"][0]["kind"] == "Lu"

    def test_uncolored_component_filled(self):
        g = Graph(4, [(1, 2), (3, 4)])
        sol = growth_mhv(g, ColorSpec(2, {1: 2}))
        assert sol.coloring == [0, 2, 2, 1, 1]
        assert sol.counters["fill"] == 2

    def test_seed_relabels_but_stays_valid(self, star_112):
        g, spec = star_112
        for seed in range(5):
            sol = growth_mhv(g, spec, seed=seed)
            sol.validate(g, spec)
            assert sol.counters["seed"] == seed

    @given(instances(max_n=8, k=3, max_free=7))
    def test_valid_and_within_ratio(self, inst):
        g, spec = inst
        sol = growth_mhv(g, spec)
        sol.validate(g, spec)
        d = g.max_degree
        if d >= 2 and g.is_connected():
            assert sol.objective * d * (d - 1) * (d + 1) >= brute_force_mhv(g, spec).objective


class TestLedgerCounterexamples:
    """P-steps can create more new L_u-vertices than the per-step cap.

    Coloring a neighbor of a P-vertex can turn *another* P-vertex into U,
    which moves its L_p neighbors to L_u.  The growth ratio still holds
    on these instances.
    """

    def test_path_p_step_exceeds_cap(self):
        g = Graph(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6)])
        spec = ColorSpec(3, {1: 1, 3: 2, 5: 3, 6: 1})
        sol = growth_mhv(g, spec, trace=True)
        c = sol.counters
        d = c["Delta"]
        assert d == 2
        step = c["trace"][0]
        assert (step["kind"], step["colored"], step["new_Lu"]) == ("P", [2], 1)
        assert c["max_Lu_P"] > d * (d - 2)
        assert c["Lu_new"] > d * (d - 2) * c["H_new"]
        assert sol.objective == brute_force_mhv(g, spec).objective == 1

    def test_six_cycle_breaks_h_new_bound(self):
        g = Graph(6, [(1, 2), (1, 3), (2, 4), (3, 5), (4, 6), (5, 6)])
        spec = ColorSpec(3, {2: 2, 3: 1, 6: 3})
        c = growth_mhv(g, spec).counters
        d = c["Delta"]
        assert c["max_Lu_P"] == 1 > d * (d - 2)
        assert c["H_new"] * d * (d - 1) < c["L_org"] - c["Lu_org"]
        assert growth_mhv(g, spec).objective == brute_force_mhv(g, spec).objective


class TestExact2:
    def test_path(self, path_abc):
        sol = exact_2mhv(*path_abc)
        assert sol.objective == 1 and sol.counters["min_cut"] == 5

    def test_monochrome(self):
        g = Graph(4, [(1, 2), (2, 3), (3, 4)])
        assert exact_2mhv(g, ColorSpec(2, {v: 1 for v in range(1, 5)})).objective == 4

    def test_four_cycle_opposite_colors(self):
        # coloring both free vertices 1 leaves vertex 1 with two same-colored neighbors
        g = Graph(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
        spec = ColorSpec(2, {1: 1, 3: 2})
        assert exact_2mhv(g, spec).objective == naive_opt(g, spec) == 1

    def test_requires_two_colors(self, path_abc):
        with pytest.raises(ValueError, match="exact2 requires k=2, got k=3"):
            exact_2mhv(path_abc[0], ColorSpec(3))

    @given(instances(max_n=9, k=2, max_free=9))
    def test_matches_oracle(self, inst):
        g, spec = inst
        sol = exact_2mhv(g, spec)
        sol.validate(g, spec)
        assert sol.objective == naive_opt(g, spec)

    def test_scipy_route_agrees(self):
        from happycolor.instances import gen_random
        g, spec = gen_random(1500, 0.004, 2, 0.2, seed=11)
        assert exact_2mhv(g, spec, "scipy").objective == exact_2mhv(g, spec, "python").objective


class TestBrute:
    def test_examples(self, path_abc, triangle_uu):
        assert brute_force_mhv(*path_abc).objective == 1
        assert brute_force_mhv(*triangle_uu).objective == 0

    def test_fully_precolored(self):
        g = Graph(3, [(1, 2), (2, 3)])
        sol = brute_force_mhv(g, ColorSpec(2, {1: 1, 2: 1, 3: 2}))
        assert sol.coloring == [0, 1, 1, 2] and sol.objective == 1

    def test_lexicographically_first_optimum(self):
        g = Graph(2, [(1, 2)])
        assert brute_force_mhv(g, ColorSpec(3)).coloring == [0, 1, 1]

    def test_budget(self):
        g = Graph(20)
        with pytest.raises(BudgetExceeded, match=str(3**20)):
            brute_force_mhv(g, ColorSpec(3), budget=1000)

    @given(instances(max_n=6, max_free=5), modes())
    def test_matches_naive(self, inst, mode):
        g, spec = inst
        assert brute_force_mhv(g, spec, mode).objective == naive_opt(g, spec, mode)
