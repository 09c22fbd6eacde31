"""Steady-state evolutionary engine and multi-run campaigns.

One iteration draws three distinct individuals, eliminates the worst, crosses
the two survivors into a single child, mutates it with probability p_mut,
evaluates it, and writes it over the eliminated slot.  The population size
therefore never changes.  Initial-population evaluations count against the
evaluation budget, and a run stops early only when the evaluator reports its
documented optimum.

Campaigns repeat the run with per-run random streams derived from the
campaign seed and the run index, so results are identical whether runs
execute serially or in parallel.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from random import Random

from .core import SpectralReport, classify
from .fitness import FitnessValue, Objective


class ConfigError(ValueError):
    """The engine configuration violates a structural requirement."""


TOURNAMENT_SIZE = 3


@dataclass(frozen=True)
class EngineConfig:
    population_size: int = 500
    max_evaluations: int = 1_000_000
    tournament_size: int = TOURNAMENT_SIZE
    p_mut: float = 0.5
    repetitions: int = 30
    rng_seed: int = 0

    def validate(self):
        if self.tournament_size != TOURNAMENT_SIZE:
            raise ConfigError("the elimination tournament is fixed at 3 entrants")
        if self.population_size < self.tournament_size:
            raise ConfigError("population must be at least the tournament size")
        if not 0.0 <= self.p_mut <= 1.0:
            raise ConfigError(f"p_mut must lie in [0, 1], got {self.p_mut}")
        if self.max_evaluations < 1:
            raise ConfigError("the evaluation budget must be positive")
        if self.repetitions < 1:
            raise ConfigError("a campaign needs at least one repetition")


@dataclass(frozen=True)
class DirectEvaluator:
    """Scores a genome by decoding it to a truth table and applying an objective."""

    ops: object
    objective: Objective

    def evaluate(self, genome) -> FitnessValue:
        return self.objective.evaluate(self.ops.to_table(genome))

    @property
    def optimum(self) -> int:
        return self.objective.optimum

    def is_optimal(self, fv: FitnessValue) -> bool:
        return self.objective.is_optimal(fv)

    def finalize(self, genome):
        return classify(self.ops.to_table(genome)), None


@dataclass(frozen=True)
class RunRecord:
    """Outcome of a single run."""

    run_index: int
    rng_seed: str
    best_fitness: FitnessValue
    best_genome: str
    evaluations_to_best: int
    evaluations: int
    best_report: SpectralReport
    wall_time_ms: float
    trace: tuple = field(default_factory=tuple)
    is_trivial: bool | None = None

    def same_outcome(self, other: "RunRecord") -> bool:
        """Equality up to wall-clock time, for determinism checks."""
        return (
            self.run_index == other.run_index
            and self.rng_seed == other.rng_seed
            and self.best_fitness == other.best_fitness
            and self.best_genome == other.best_genome
            and self.evaluations_to_best == other.evaluations_to_best
            and self.evaluations == other.evaluations
            and self.best_report == other.best_report
            and self.trace == other.trace
            and self.is_trivial == other.is_trivial
        )


def seed_label(rng_seed: int, run_index: int) -> str:
    return f"{rng_seed}:{run_index}"


def run_steady_state(cfg: EngineConfig, ops, evaluator, run_index: int = 0) -> RunRecord:
    """Execute one run; deterministic given (cfg.rng_seed, run_index)."""
    cfg.validate()
    label = seed_label(cfg.rng_seed, run_index)
    rng = Random(label)
    started = time.perf_counter()

    population = []
    scores = []
    evals = 0
    best_genome = None
    best_fv = None
    best_at = 0
    trace = []
    done = False

    def consider(genome, fv):
        # genomes are immutable, so the best-so-far survives its elimination
        nonlocal best_genome, best_fv, best_at, done
        if best_fv is None or fv > best_fv:
            best_genome, best_fv, best_at = genome, fv, evals
            trace.append((evals, fv.value))
        if evaluator.is_optimal(fv):
            done = True

    while len(population) < cfg.population_size and evals < cfg.max_evaluations and not done:
        genome = ops.random(rng)
        fv = evaluator.evaluate(genome)
        evals += 1
        population.append(genome)
        scores.append(fv)
        consider(genome, fv)

    while not done and evals < cfg.max_evaluations:
        entrants = rng.sample(range(len(population)), cfg.tournament_size)
        lowest = min(scores[i] for i in entrants)
        losers = [i for i in entrants if scores[i] == lowest]
        out = losers[rng.randrange(len(losers))]
        parents = [i for i in entrants if i != out]
        if rng.random() < 0.5:
            parents.reverse()
        child = ops.crossover(population[parents[0]], population[parents[1]], rng)
        if rng.random() < cfg.p_mut:
            child = ops.mutate(child, rng)
        fv = evaluator.evaluate(child)
        evals += 1
        population[out] = child
        scores[out] = fv
        consider(child, fv)
    report, trivial = evaluator.finalize(best_genome)
    wall_ms = (time.perf_counter() - started) * 1000.0
    return RunRecord(
        run_index=run_index,
        rng_seed=label,
        best_fitness=best_fv,
        best_genome=ops.serialize(best_genome),
        evaluations_to_best=best_at,
        evaluations=evals,
        best_report=report,
        wall_time_ms=wall_ms,
        trace=tuple(trace),
        is_trivial=trivial,
    )


def _campaign_worker(args):
    cfg, ops, evaluator, run_index = args
    return run_steady_state(cfg, ops, evaluator, run_index)


def run_campaign(cfg: EngineConfig, ops, evaluator, jobs: int = 1) -> list:
    """Independent repetitions with derived per-run streams, ordered by run index."""
    cfg.validate()
    tasks = [(cfg, ops, evaluator, i) for i in range(cfg.repetitions)]
    if jobs <= 1 or cfg.repetitions == 1:
        return [_campaign_worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(jobs, cfg.repetitions)) as pool:
        return list(pool.map(_campaign_worker, tasks))
