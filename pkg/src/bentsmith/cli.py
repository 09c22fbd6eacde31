"""Command-line front end: evolution campaigns, enumeration, and analysis.

Campaign subcommands write one CSV row per run, a JSON summary with the
five-number statistics of the final fitness and nonlinearity distributions,
and box-plot figures of the same data (suppressed with --no-figures).  The
process exits 0 whenever the campaign completed; whether an optimum was found
is reported in the data, not the exit status.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from random import Random

from . import construction, report
from .bitstring import BitstringOps
from .core import TruthTable, classify, dual, wht_fast
from .engine import DirectEvaluator, EngineConfig, run_campaign
from .fitness import Objective, ObjectiveKind, fit1, fit2
from .oracle import census, census_with_witnesses
from .tree import DepthPolicy, TreeOps, default_max_depth

OBJECTIVE_CHOICES = tuple(kind.value for kind in ObjectiveKind)

_SEED_PROPERTY_BY_KIND = {
    ObjectiveKind.SELF_DUAL_FIT1: "self-dual",
    ObjectiveKind.SELF_DUAL_FIT2: "self-dual",
    ObjectiveKind.ANTI_SELF_DUAL_FIT1: "anti-self-dual",
    ObjectiveKind.ANTI_SELF_DUAL_FIT2: "anti-self-dual",
    ObjectiveKind.NONLINEARITY_ONLY: "bent",
}


def _add_engine_flags(sub):
    sub.add_argument("--pop", type=int, default=500, help="population size")
    sub.add_argument("--evals", type=int, default=1_000_000, help="evaluation budget per run")
    sub.add_argument("--pmut", type=float, default=0.5, help="child mutation probability")
    sub.add_argument("--reps", type=int, default=30, help="independent repetitions")
    sub.add_argument("--seed", type=int, default=None,
                     help="campaign RNG seed (falls back to $BENTSMITH_SEED)")
    sub.add_argument("--jobs", type=int, default=1, help="parallel runs")
    sub.add_argument("--out", type=Path, default=None, help="output directory")
    sub.add_argument("--no-figures", action="store_true",
                     help="skip the box-plot figures")


def _add_depth_flags(sub):
    sub.add_argument("--max-depth", type=int, default=None,
                     help="tree depth cap (default from --depth-rule)")
    sub.add_argument("--depth-rule", choices=("max", "min"), default="max",
                     help="depth cap rule: max(5, n-5) or min(5, n-5)")


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("BENTSMITH_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"BENTSMITH_SEED must be an integer, got {env!r}") from None
    return int.from_bytes(os.urandom(8), "little")


def _depth_policy(args, n: int) -> DepthPolicy:
    if args.max_depth is not None:
        return DepthPolicy(args.max_depth)
    return DepthPolicy(default_max_depth(n, args.depth_rule))


def _finish_campaign(args, config: dict, records, optimum, out_dir: Path) -> int:
    csv_path = report.write_csv(records, out_dir / "runs.csv")
    json_path = report.write_summary_json(config, records, optimum, out_dir / "summary.json")
    written = [csv_path, json_path]
    if not args.no_figures:
        title = f"{config['command']} n={config['n']} {config['objective']}"
        written += report.render_figures(records, out_dir, title)
    summary = report.summarize(records, optimum)
    best = summary["best_fitness"]["max"]
    print(f"campaign complete: {len(records)} runs, best fitness {best} "
          f"(optimum {optimum}), optimum reached in {summary['optimum_hits']} runs")
    for path in written:
        print(f"  wrote {path}")
    return 0


def cmd_evolve(args) -> int:
    kind = ObjectiveKind.from_cli_name(args.objective)
    objective = Objective(kind, args.n)
    seed = _resolve_seed(args)
    cfg = EngineConfig(population_size=args.pop, max_evaluations=args.evals,
                       p_mut=args.pmut, repetitions=args.reps, rng_seed=seed)
    config = {
        "command": "evolve",
        "n": args.n,
        "encoding": args.encoding,
        "objective": args.objective,
        "population_size": args.pop,
        "max_evaluations": args.evals,
        "tournament_size": cfg.tournament_size,
        "p_mut": args.pmut,
        "repetitions": args.reps,
        "rng_seed": seed,
    }
    if args.encoding == "gp":
        policy = _depth_policy(args, args.n)
        ops = TreeOps.direct(args.n, policy)
        config["max_depth"] = policy.max_depth
    else:
        ops = BitstringOps(args.n)
    evaluator = DirectEvaluator(ops, objective)
    records = run_campaign(cfg, ops, evaluator, jobs=args.jobs)
    out_dir = args.out or Path("runs") / f"evolve-{args.encoding}-{args.objective}-n{args.n}"
    return _finish_campaign(args, config, records, objective.optimum, out_dir)


def cmd_evolve_construction(args) -> int:
    kind = ObjectiveKind.from_cli_name(args.objective)
    seed = _resolve_seed(args)
    seed_property = args.seed_property or _SEED_PROPERTY_BY_KIND[kind]
    pool = construction.load_seed_pool(args.seeds, seed_property)
    seed_n = pool[0].n
    if any(tt.n != seed_n for tt in pool):
        raise ValueError(f"{args.seeds}: all seeds must have the same variable count")
    target_n = seed_n + 2
    objective = Objective(kind, target_n)
    per_set = min(4, len(pool))
    set_rng = Random(f"{seed}:seed-sets")
    seed_sets = construction.sample_seed_sets(pool, set_rng, sets=args.sets, per_set=per_set)
    task = construction.ConstructionTask(seed_sets, construction.Scheme(args.scheme), objective)
    policy = _depth_policy(args, target_n)
    ops = construction.construction_ops(seed_n, policy, per_set)
    evaluator = construction.ConstructionEvaluator(task, reject_trivial=args.reject_trivial)
    cfg = EngineConfig(population_size=args.pop, max_evaluations=args.evals,
                       p_mut=args.pmut, repetitions=args.reps, rng_seed=seed)
    config = {
        "command": "evolve-construction",
        "n": target_n,
        "seed_n": seed_n,
        "encoding": "gp",
        "objective": args.objective,
        "scheme": args.scheme,
        "sets": args.sets,
        "seeds_per_set": per_set,
        "seed_file": str(args.seeds),
        "seed_property": seed_property,
        "seed_sets": [[tt.to_record() for tt in ss.seeds] for ss in seed_sets],
        "reject_trivial": args.reject_trivial,
        "population_size": args.pop,
        "max_evaluations": args.evals,
        "tournament_size": cfg.tournament_size,
        "p_mut": args.pmut,
        "repetitions": args.reps,
        "rng_seed": seed,
        "max_depth": policy.max_depth,
    }
    records = run_campaign(cfg, ops, evaluator, jobs=args.jobs)
    out_dir = args.out or Path("runs") / (
        f"construction-{args.scheme}-{args.objective}-n{seed_n}to{target_n}"
    )
    return _finish_campaign(args, config, records, task.optimum, out_dir)


def cmd_enumerate(args) -> int:
    if args.emit_witnesses is not None:
        rep, witnesses = census_with_witnesses(args.n)
        path = Path(args.emit_witnesses)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            for tt in witnesses:
                fh.write(tt.to_record() + "\n")
        print(f"wrote {len(witnesses)} self-dual witnesses to {path}")
    else:
        rep = census(args.n, samples=args.samples)
    mode = "exhaustive" if rep.exhaustive else f"sampled ({rep.functions_examined} draws)"
    print(f"n={rep.n} [{mode}]: bent={rep.count_bent} "
          f"self-dual={rep.count_self_dual} anti-self-dual={rep.count_anti_self_dual}")
    return 0


def _analyze_one(tt: TruthTable):
    rep = classify(tt)
    print(tt.to_record())
    print(f"  nonlinearity: {rep.nonlinearity}   max |W|: {rep.max_abs_coeff}")
    print(f"  bent: {_yn(rep.is_bent)}   self-dual: {_yn(rep.is_self_dual)}   "
          f"anti-self-dual: {_yn(rep.is_anti_self_dual)}")
    if tt.n % 2 == 0:
        ws = wht_fast(tt)
        print(f"  fit1: {fit1(tt, ws).value:g}   fit1(anti): {fit1(tt, ws, anti=True).value:g}")
        print(f"  fit2: {fit2(tt, ws).value:g}   fit2(anti): {fit2(tt, ws, anti=True).value:g}")
    else:
        print("  duality objectives undefined for odd n")
    if rep.is_bent:
        print(f"  dual: {dual(tt).to_record()}")


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_analyze(args) -> int:
    with open(args.file, "r", encoding="utf-8") as fh:
        lines = fh.readlines()
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            tt = TruthTable.from_record(line)
        except ValueError as exc:
            raise ValueError(f"{args.file}: line {lineno}: {exc}") from exc
        _analyze_one(tt)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bentsmith",
        description="Evolve and analyze (anti-)self-dual bent Boolean functions.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    evolve = subs.add_parser("evolve", help="directly evolve functions of n variables")
    evolve.add_argument("--n", type=int, required=True, help="variable count (even, <= 16)")
    evolve.add_argument("--encoding", choices=("tt", "gp"), default="gp",
                        help="tt = bitstring truth table, gp = expression tree")
    evolve.add_argument("--objective", choices=OBJECTIVE_CHOICES, default="sd2")
    _add_depth_flags(evolve)
    _add_engine_flags(evolve)
    evolve.set_defaults(func=cmd_evolve)

    cons = subs.add_parser("evolve-construction",
                           help="evolve a combining rule over seed-function sets")
    cons.add_argument("--seeds", type=Path, required=True,
                      help="seed pool file, one truth-table record per line")
    cons.add_argument("--scheme", choices=("incremental", "concurrent"), default="concurrent")
    cons.add_argument("--sets", type=int, default=4, help="number of independent seed sets")
    cons.add_argument("--objective", choices=OBJECTIVE_CHOICES, default="sd1")
    cons.add_argument("--reject-trivial", action="store_true",
                      help="score trivial rules as 0 during the search")
    cons.add_argument("--seed-property", choices=("self-dual", "anti-self-dual", "bent"),
                      default=None, help="property each seed must satisfy "
                      "(default follows the objective)")
    _add_depth_flags(cons)
    _add_engine_flags(cons)
    cons.set_defaults(func=cmd_evolve_construction)

    enum = subs.add_parser("enumerate", help="census of bent and self-dual functions")
    enum.add_argument("--n", type=int, required=True, help="2 or 4 exhaustive; 6 sampled")
    enum.add_argument("--samples", type=int, default=None,
                      help="sample count for the n=6 sampled census")
    enum.add_argument("--emit-witnesses", type=Path, default=None,
                      help="write all self-dual tables found (seed pool format)")
    enum.set_defaults(func=cmd_enumerate)

    analyze = subs.add_parser("analyze", help="spectral report for truth-table records")
    analyze.add_argument("file", type=Path, help="file of n:<int>;tt:<hex> lines")
    analyze.set_defaults(func=cmd_analyze)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
