"""Happy vertex and happy edge coloring: solvers, oracles, reductions and tooling."""

from .brute import BudgetExceeded, Refusal, brute_force_mhe, brute_force_mhv
from .graph import (STRICT, ColorSpec, Graph, Hard, Soft, Solution, Strict, count_happy_vertices,
                    happy_edge_weight, happy_vertices, soft_mode)
from .instances import (ParseError, gen_connected, gen_planted, gen_random, parse_instance,
                        parse_multiway_cut, write_instance, write_multiway_cut)
from .mhe import division_mhe, exact_2mhe
from .mhv import exact_2mhv, greedy_mhv, grow, growth_mhv
from .reductions import (MultiwayCutInstance, mhe_to_hardmhv, mhe_to_mhv, mhe_to_softmhv,
                         multiway_cut_to_3mhe, pad_3mhe_to_kmhe, soft_params, verify_reduction)
from .state import ColoringState, VType, classify_vertex
from .variants import ThresholdRefusal, best_variant, growth_hard_mhv, growth_soft_mhv

__all__ = [
    "BudgetExceeded", "Refusal", "brute_force_mhe", "brute_force_mhv",
    "STRICT", "ColorSpec", "Graph", "Hard", "Soft", "Solution", "Strict", "count_happy_vertices",
    "happy_edge_weight", "happy_vertices", "soft_mode",
    "ParseError", "gen_connected", "gen_planted", "gen_random", "parse_instance",
    "parse_multiway_cut", "write_instance", "write_multiway_cut",
    "division_mhe", "exact_2mhe", "exact_2mhv", "greedy_mhv", "grow", "growth_mhv",
    "MultiwayCutInstance", "mhe_to_hardmhv", "mhe_to_mhv", "mhe_to_softmhv",
    "multiway_cut_to_3mhe", "pad_3mhe_to_kmhe", "soft_params", "verify_reduction",
    "ColoringState", "VType", "classify_vertex",
    "ThresholdRefusal", "best_variant", "growth_hard_mhv", "growth_soft_mhv",
]
