"""Time the polynomial solvers on large random instances.

    python scripts/scalability_smoke.py --n 100000 --m 500000
"""

from __future__ import annotations

import argparse
import resource
import time
from dataclasses import dataclass

from happycolor.instances import gen_gnm
from happycolor.mhe import division_mhe, exact_2mhe
from happycolor.mhv import exact_2mhv, greedy_mhv, growth_mhv


@dataclass
class SmokeConfig:
    n: int = 100_000
    m: int = 500_000
    k: int = 10
    reveal: float = 0.1
    seed: int = 1


def timed(label, fn, *args):
    t0 = time.perf_counter()
    sol = fn(*args)
    print(f"{label:<14} objective {sol.objective!s:>10}  {time.perf_counter() - t0:7.2f}s")
    return sol


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description="scalability smoke test")
    for f, default in vars(SmokeConfig()).items():
        ap.add_argument(f"--{f}", type=type(default), default=default)
    cfg = SmokeConfig(**vars(ap.parse_args(argv)))
    g2, s2 = gen_gnm(cfg.n, cfg.m, 2, cfg.reveal, cfg.seed)
    timed("exact_2mhe", exact_2mhe, g2, s2)
    timed("exact_2mhv", exact_2mhv, g2, s2)
    g, s = gen_gnm(cfg.n, cfg.m, cfg.k, cfg.reveal, cfg.seed + 1)
    timed("growth_mhv", growth_mhv, g, s)
    timed("greedy_mhv", greedy_mhv, g, s)
    timed("division_mhe", division_mhe, g, s)
    print(f"peak RSS {resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024:.0f} MB")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
