"""Search random instances for violations of the growth-algorithm ledgers.

Prints how often each ledger check fails and the smallest failing
instance per check, in the instance-file format.

    python scripts/lemma_audit.py --trials 20000 --n 10
    python scripts/lemma_audit.py --trials 50000 --p-max 0.05 --reveal 0.4 0.9
"""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass

from happycolor import audit
from happycolor.brute import brute_force_mhv
from happycolor.instances import gen_connected


@dataclass
class AuditConfig:
    trials: int = 5000
    n_max: int = 10
    seed: int = 5
    oracle: bool = True  # also check the OPT upper bound (slower)
    p_max: float = 0.5  # extra-edge probability drawn from [0, p_max]
    reveal: tuple[float, float] = (0.1, 0.6)


def sample(rng: random.Random, cfg: AuditConfig):
    """Connected, k = 3, maximum degree at least 2."""
    while True:
        n = rng.randint(3, cfg.n_max)
        g, spec = gen_connected(n, rng.uniform(0, cfg.p_max), 3, rng.uniform(*cfg.reveal),
                                rng.randrange(2**31))
        if g.max_degree >= 2:
            return g, spec


def run(cfg: AuditConfig) -> audit.SuiteReport:
    rng = random.Random(cfg.seed)
    rep = audit.SuiteReport("lemma-audit")
    smallest: dict[str, tuple[int, str]] = {}
    for _ in range(cfg.trials):
        g, spec = sample(rng, cfg)
        opt = brute_force_mhv(g, spec).objective if cfg.oracle else None
        probe = audit.SuiteReport("probe")
        text = audit.write_instance(g, spec)
        audit.check_growth_ledgers(probe, g, spec, opt, text)
        rep.instances += 1
        for prop, (p, f, s) in probe.counts.items():
            rep.record(prop, None if s else f == 0)
            if f and (prop not in smallest or g.n < smallest[prop][0]):
                smallest[prop] = (g.n, text)
    for line in rep.lines():
        print(line)
    for prop, (_, text) in sorted(smallest.items()):
        print(f"\nsmallest violation of {prop}:\n{text}", end="")
    return rep


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description="growth ledger audit")
    ap.add_argument("--trials", type=int, default=AuditConfig.trials)
    ap.add_argument("--n", type=int, default=AuditConfig.n_max)
    ap.add_argument("--seed", type=int, default=AuditConfig.seed)
    ap.add_argument("--no-oracle", action="store_true")
    ap.add_argument("--p-max", type=float, default=AuditConfig.p_max)
    ap.add_argument("--reveal", type=float, nargs=2, default=AuditConfig.reveal)
    a = ap.parse_args(argv)
    run(AuditConfig(a.trials, a.n, a.seed, not a.no_oracle, a.p_max, tuple(a.reveal)))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
