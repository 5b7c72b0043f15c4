"""Command-line front end: solve, verify, reduce, generate, bench.

Exit codes: 0 success, 1 parse or contract error, 2 refusal (oracle
budget exceeded, hard threshold above the maximum degree), 3 a verified
property failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import audit
from . import reductions as red
from .brute import DEFAULT_BUDGET, Refusal, brute_force_mhe, brute_force_mhv, enumeration_count
from .graph import STRICT, ColorSpec, Graph, Hard, HappinessMode, Solution, Soft, Strict, fmt_number, parse_mode
from .instances import (ParseError, gen_connected, gen_multiway_cut, gen_planted, gen_random,
                        parse_instance, parse_multiway_cut, write_instance, write_multiway_cut)
from .mhe import division_mhe, exact_2mhe
from .mhv import exact_2mhv, greedy_mhv, growth_mhv
from .variants import growth_hard_mhv, growth_soft_mhv

EXIT_OK, EXIT_ERROR, EXIT_REFUSAL, EXIT_FAILED = 0, 1, 2, 3

MHV_ALGOS = ("greedy", "growth", "exact2", "brute")
MHE_ALGOS = ("division", "exact2", "brute")


class ContractError(ValueError):
    """Request incompatible with the instance (exit code 1)."""


# -- solving ---------------------------------------------------------------

def run_algo(problem: str, algo: str, graph: Graph, spec: ColorSpec, mode: HappinessMode = STRICT,
             *, seed: int | None = None, budget: int = DEFAULT_BUDGET) -> Solution:
    """Dispatch one algorithm; the result is re-validated before returning."""
    if problem == "mhe":
        if algo == "division":
            sol = division_mhe(graph, spec)
        elif algo == "exact2":
            sol = exact_2mhe(graph, spec)
        elif algo == "brute":
            sol = brute_force_mhe(graph, spec, budget=budget)
        elif algo == "best":
            sol = _best(problem, MHE_ALGOS, graph, spec, mode, seed, budget)
        else:
            raise ContractError(f"algorithm {algo!r} does not apply to MHE")
    elif problem == "mhv":
        if algo == "greedy":
            sol = greedy_mhv(graph, spec, mode)
        elif algo == "growth":
            if isinstance(mode, Hard):
                sol = growth_hard_mhv(graph, spec, mode.q, seed=seed)
            elif isinstance(mode, Soft):
                sol = growth_soft_mhv(graph, spec, mode.rho, seed=seed)
            else:
                sol = growth_mhv(graph, spec, seed=seed)
        elif algo == "exact2":
            if not isinstance(mode, Strict):
                raise ContractError("exact2 solves strict happiness only")
            sol = exact_2mhv(graph, spec)
        elif algo == "brute":
            sol = brute_force_mhv(graph, spec, mode, budget=budget)
        elif algo == "best":
            sol = _best(problem, MHV_ALGOS, graph, spec, mode, seed, budget)
        else:
            raise ContractError(f"algorithm {algo!r} does not apply to MHV")
    else:
        raise ContractError(f"unknown problem {problem!r}")
    sol.validate(graph, spec)
    return sol


def _best(problem, algos, graph, spec, mode, seed, budget) -> Solution:
    best = None
    ran = []
    for algo in algos:
        try:
            sol = run_algo(problem, algo, graph, spec, mode, seed=seed, budget=budget)
        except (Refusal, ValueError):
            continue  # not applicable to this instance
        ran.append(algo)
        if best is None or sol.objective > best.objective:
            best = sol
    if best is None:
        raise Refusal("no algorithm applies to this instance")
    best.counters = dict(best.counters, ran=ran)
    best.algorithm = f"best({best.algorithm})"
    return best


def _counter_lines(sol: Solution) -> list[str]:
    out = []
    for key, val in sol.counters.items():
        if key == "trace":
            continue
        if isinstance(val, dict):
            val = " ".join(f"{k}={fmt_number(v)}" for k, v in val.items())
        elif isinstance(val, list):
            val = ",".join(map(str, val))
        elif isinstance(val, (int, Fraction)):
            val = fmt_number(val)
        out.append(f"counter {key} {val}")
    return out


def _split_mode(tokens: list[str] | None, positional: list[str]) -> tuple[list[str] | None, list[str]]:
    """``--mode`` takes one token for strict and two for soft/hard; surplus
    tokens greedily swallowed by argparse are positional arguments."""
    if not tokens:
        return tokens, positional
    width = 1 if tokens[0].lower() == "strict" else 2
    return tokens[:width], tokens[width:] + positional


def cmd_solve(args) -> int:
    mode_tokens, files = _split_mode(args.mode, [args.file] if args.file else [])
    if len(files) != 1:
        raise ContractError("expected exactly one instance file")
    graph, spec, mode = parse_instance(Path(files[0]).read_text())
    if mode_tokens:
        mode = parse_mode(mode_tokens)
    sol = run_algo(args.problem, args.algo, graph, spec, mode, seed=args.seed, budget=args.budget)
    print(f"problem {sol.problem}")
    print(f"algorithm {sol.algorithm}")
    print(f"mode {sol.mode}")
    print(f"objective {fmt_number(sol.objective)}")
    for line in _counter_lines(sol):
        print(line)
    if args.emit_coloring:
        print("coloring " + " ".join(str(c) for c in sol.coloring[1:]))
    return EXIT_OK


# -- verify ------------------------------------------------------------------

def cmd_verify(args) -> int:
    kwargs = {"trials": args.trials, "seed": args.seed}
    if args.n is not None:
        kwargs["n_max"] = args.n
    report = audit.SUITES[args.suite](**kwargs)
    for line in report.lines():
        print(line)
    if report.ok:
        print("all properties hold")
        return EXIT_OK
    cex = report.counterexamples[0]
    print(f"counterexample for {cex.prop}: {cex.detail}")
    print(cex.instance, end="")
    if args.counterexample:
        Path(args.counterexample).write_text(cex.instance)
    return EXIT_FAILED


# -- reduce ------------------------------------------------------------------

def cmd_reduce(args) -> int:
    text = Path(args.file).read_text()
    if args.source == "mwc3":
        if args.target != "mhe3":
            raise ContractError("a Multiway Cut source reduces to mhe3 only")
        out = red.multiway_cut_to_3mhe(parse_multiway_cut(text))
    else:
        graph, spec, _ = parse_instance(text)
        if args.target == "mhek":
            if args.k is None:
                raise ContractError("--to mhek needs --k")
            out = red.pad_3mhe_to_kmhe(graph, spec, args.k)
        elif args.target == "mhv":
            out = red.mhe_to_mhv(graph, spec)
        elif args.target == "hard":
            out = red.mhe_to_hardmhv(graph, spec)
        elif args.target == "soft":
            if args.rho is None:
                raise ContractError("--to soft needs --rho")
            out = red.mhe_to_softmhv(graph, spec, Fraction(args.rho))
        else:
            raise ContractError(f"cannot reduce mhe3 to {args.target}")
    target_text = write_instance(out.graph, out.spec, out.mode)
    record = out.record()
    if args.verify:
        verdict = red.verify_reduction(out, args.budget)
        record["verdict"] = {"holds": verdict.holds, "source_opt": _jsonable(verdict.source_opt),
                             "target_opt": _jsonable(verdict.target_opt), "note": verdict.note}
        print(f"verdict {verdict}")
    if args.out:
        Path(args.out).write_text(target_text)
        Path(str(args.out) + ".json").write_text(json.dumps(record, indent=2) + "\n")
    else:
        sys.stdout.write(target_text)
    print(json.dumps(record), file=sys.stderr if not args.out else sys.stdout)
    if args.verify and record["verdict"]["holds"] is False:
        return EXIT_FAILED
    return EXIT_OK


def _jsonable(x):
    return fmt_number(x) if isinstance(x, Fraction) else x


# -- generate ----------------------------------------------------------------

def cmd_generate(args) -> int:
    if args.gen == "mwc":
        text = write_multiway_cut(gen_multiway_cut(args.n, args.p, args.terminals, args.seed))
    else:
        if args.gen == "random":
            g, spec = gen_random(args.n, args.p, args.k, args.reveal, args.seed, args.max_weight)
        elif args.gen == "connected":
            g, spec = gen_connected(args.n, args.p, args.k, args.reveal, args.seed, args.max_weight)
        else:
            g, spec = gen_planted(args.n, args.k, args.p, args.p_out, args.reveal, args.seed)
        mode = parse_mode(args.mode) if args.mode else STRICT
        text = write_instance(g, spec, mode)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- bench -------------------------------------------------------------------

@dataclass
class BenchConfig:
    problem: str = "mhv"
    algos: tuple[str, ...] = ("greedy", "growth")
    gen: str = "random"
    n: int = 30
    p: float = 0.1
    p_out: float = 0.02
    k: int = 3
    reveal: float = 0.2
    max_weight: int = 1
    trials: int = 10
    seed: int = 0
    budget: int = 200_000
    mode: HappinessMode = STRICT


BENCH_COLUMNS = ["instance_id", "n", "m", "k", "Delta", "algo", "objective", "upper_bound",
                 "bound_kind", "ratio", "wall_millis"]


def _bench_instance(cfg: BenchConfig, seed: int) -> tuple[Graph, ColorSpec]:
    if cfg.gen == "planted":
        return gen_planted(cfg.n, cfg.k, cfg.p, cfg.p_out, cfg.reveal, seed)
    if cfg.gen == "connected":
        return gen_connected(cfg.n, cfg.p, cfg.k, cfg.reveal, seed, cfg.max_weight)
    return gen_random(cfg.n, cfg.p, cfg.k, cfg.reveal, seed, cfg.max_weight)


def upper_bound(cfg: BenchConfig, graph: Graph, spec: ColorSpec) -> tuple[object, str]:
    """Oracle optimum when affordable, else the best available proven bound."""
    strict = isinstance(cfg.mode, Strict)
    if enumeration_count(graph, spec) <= cfg.budget:
        if cfg.problem == "mhe":
            return brute_force_mhe(graph, spec, budget=cfg.budget).objective, "oracle"
        return brute_force_mhv(graph, spec, cfg.mode, budget=cfg.budget).objective, "oracle"
    if spec.k == 2 and (cfg.problem == "mhe" or strict):
        solver = exact_2mhe if cfg.problem == "mhe" else exact_2mhv
        return solver(graph, spec).objective, "exact2"
    if cfg.problem == "mhe":
        return division_mhe(graph, spec).counters["bound"], "division-bound"
    if strict and graph.max_degree >= 2:
        c = growth_mhv(graph, spec).counters
        return c["H_org"] + (c["Delta"] + 1) * (c["L_org"] - c["Lu_org"]), "growth-bound"
    return graph.n, "trivial"


def bench_rows(cfg: BenchConfig):
    """Yield one CSV row dict per (instance, algorithm)."""
    rng = random.Random(cfg.seed)
    for trial in range(cfg.trials):
        seed = rng.randrange(2**31)
        graph, spec = _bench_instance(cfg, seed)
        ub, kind = upper_bound(cfg, graph, spec)
        iid = f"{cfg.gen}-{cfg.seed}-{trial}"
        for algo in cfg.algos:
            t0 = time.perf_counter()
            try:
                sol = run_algo(cfg.problem, algo, graph, spec, cfg.mode, budget=cfg.budget)
                obj = sol.objective
            except (Refusal, ValueError):
                obj = None
            ms = (time.perf_counter() - t0) * 1000
            ratio = "" if obj is None else (1.0 if ub == 0 else float(Fraction(obj) / Fraction(ub)))
            yield {"instance_id": iid, "n": graph.n, "m": graph.m, "k": spec.k,
                   "Delta": graph.max_degree, "algo": algo,
                   "objective": "" if obj is None else fmt_number(obj),
                   "upper_bound": fmt_number(ub), "bound_kind": kind,
                   "ratio": ratio if ratio == "" else f"{ratio:.6f}", "wall_millis": f"{ms:.3f}"}


def _parse_params(text: str | None) -> dict:
    out = {}
    if not text:
        return out
    for item in text.split(","):
        key, _, val = item.partition("=")
        out[key.strip().replace("-", "_")] = val.strip()
    return out


def bench_config(args) -> BenchConfig:
    cfg = BenchConfig(problem=args.problem, algos=tuple(a.strip() for a in args.algos.split(",")),
                      gen=args.gen, trials=args.trials, seed=args.seed, budget=args.budget)
    casts = {"n": int, "k": int, "max_weight": int, "p": float, "p_out": float, "reveal": float}
    for key, val in _parse_params(args.params).items():
        if key not in casts:
            raise ContractError(f"unknown bench parameter {key!r}")
        setattr(cfg, key, casts[key](val))
    if args.mode:
        cfg.mode = parse_mode(args.mode)
    return cfg


def cmd_bench(args) -> int:
    cfg = bench_config(args)
    writer = csv.DictWriter(sys.stdout, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in bench_rows(cfg):
        writer.writerow(row)
    return EXIT_OK


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="happycolor", description="Happy vertex and edge coloring toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve an instance file")
    s.add_argument("--problem", choices=("mhv", "mhe"), required=True)
    s.add_argument("--algo", choices=("greedy", "growth", "division", "exact2", "brute", "best"),
                   required=True)
    s.add_argument("--mode", nargs="+", metavar="TOKEN",
                   help="override the file's mode: 'soft 1/2', 'hard 2' or 'strict'")
    s.add_argument("--seed", type=int, help="relabel vertices randomly before growth")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="brute-force enumeration cap")
    s.add_argument("--emit-coloring", action="store_true")
    s.add_argument("file", nargs="?")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="run a property suite on random small instances")
    v.add_argument("--suite", choices=tuple(audit.SUITES), required=True)
    v.add_argument("--n", type=int, help="maximum vertex count")
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--counterexample", help="also write the first counterexample here")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("reduce", help="apply a hardness reduction to an instance file")
    r.add_argument("--from", dest="source", choices=("mwc3", "mhe3"), required=True)
    r.add_argument("--to", dest="target", choices=("mhe3", "mhek", "mhv", "hard", "soft"), required=True)
    r.add_argument("--k", type=int)
    r.add_argument("--rho")
    r.add_argument("--verify", action="store_true")
    r.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    r.add_argument("--out", help="target instance path; the value map goes to OUT.json")
    r.add_argument("file")
    r.set_defaults(func=cmd_reduce)

    g = sub.add_parser("generate", help="write a random instance")
    g.add_argument("--gen", choices=("random", "connected", "planted", "mwc"), default="random")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=float, default=0.1, help="edge probability (p_in when planted)")
    g.add_argument("--p-out", type=float, default=0.0)
    g.add_argument("--k", type=int, default=3)
    g.add_argument("--reveal", type=float, default=0.2)
    g.add_argument("--max-weight", type=int, default=1)
    g.add_argument("--terminals", type=int, default=3)
    g.add_argument("--mode", nargs="+", metavar="TOKEN")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    b = sub.add_parser("bench", help="compare algorithms; CSV on stdout")
    b.add_argument("--problem", choices=("mhv", "mhe"), default="mhv")
    b.add_argument("--algos", default="greedy,growth")
    b.add_argument("--gen", choices=("random", "connected", "planted"), default="random")
    b.add_argument("--params", help="comma list, e.g. n=40,p=0.1,k=3,reveal=0.2,p_out=0.01")
    b.add_argument("--mode", nargs="+", metavar="TOKEN")
    b.add_argument("--trials", type=int, default=10)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--budget", type=int, default=200_000)
    b.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Refusal as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_REFUSAL
    except (ParseError, ContractError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
