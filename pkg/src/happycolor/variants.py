"""Threshold variants: soft (fraction ``rho`` of neighbors) and hard (``q`` neighbors).

``rho = 1`` is accepted and means strict happiness.
"""

from __future__ import annotations

from fractions import Fraction

from .brute import Refusal
from .graph import ColorSpec, Graph, Hard, Soft, Solution, soft_mode
from .mhv import greedy_mhv, grow


class ThresholdRefusal(Refusal):
    """``q`` exceeds the maximum degree, so no vertex can ever be happy."""


def growth_soft_mhv(graph: Graph, spec: ColorSpec, rho, *, seed: int | None = None,
                    trace: bool = False) -> Solution:
    """Subset growth for soft happiness: each P/L_h step colors exactly the
    ``ceil(rho * deg) - |same|`` uncolored neighbors (smallest ids) it needs."""
    return grow(graph, spec, soft_mode(Fraction(rho)), seed=seed, trace=trace)


def growth_hard_mhv(graph: Graph, spec: ColorSpec, q: int, *, seed: int | None = None,
                    trace: bool = False, force: bool = False) -> Solution:
    """Subset growth for hard happiness (``q`` same-colored neighbors).

    Refuses when ``q`` exceeds the maximum degree unless ``force`` is set.
    """
    if q > graph.max_degree and not force:
        raise ThresholdRefusal(
            f"q={q} exceeds the maximum degree {graph.max_degree}: no vertex can be happy")
    return grow(graph, spec, Hard(q), seed=seed, trace=trace)


def greedy_variant(graph: Graph, spec: ColorSpec, mode) -> Solution:
    """The one-color-for-all sweep evaluated under a soft or hard mode."""
    return greedy_mhv(graph, spec, mode)


def best_variant(graph: Graph, spec: ColorSpec, mode, **kw) -> Solution:
    """Better of the greedy sweep and subset growth; inherits the ``1/k`` bound."""
    if isinstance(mode, Hard):
        grown = growth_hard_mhv(graph, spec, mode.q, **kw)
    elif isinstance(mode, Soft):
        grown = growth_soft_mhv(graph, spec, mode.rho, **kw)
    else:
        grown = grow(graph, spec, mode, **kw)
    greedy = greedy_variant(graph, spec, mode)
    return grown if grown.objective >= greedy.objective else greedy
