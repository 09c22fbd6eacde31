"""Evolving combining rules that lift seed functions to two more variables.

A candidate rule is an expression tree whose terminals are two fresh input
variables x0, x1 and up to four seed functions f0..f3 of n variables each.
Expanding the tree over a seed set yields an (n+2)-variable truth table: x0
is the most significant input bit, x1 the next, and the seeds read the low n
bits.  A rule is scored by expanding it over several independent seed sets so
that set-specific coincidences do not pass as general constructions.

Rules whose output differs from a single seed only by a function of (x0, x1),
such as placing one seed and its complement in the four quadrants, are
detected as trivial.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from random import Random

import numpy as np

from .core import MAX_VARIABLES, TruthTable, classify
from .fitness import FitnessValue, Objective
from .tree import (
    DepthPolicy,
    TreeOps,
    UnboundVariableError,
    evaluate_packed,
    iter_leaves,
    variable_pattern,
)


class MissingSeedError(ValueError):
    """The tree references a seed terminal absent from the seed set."""


class Scheme(enum.Enum):
    INCREMENTAL = "incremental"
    CONCURRENT = "concurrent"


@dataclass(frozen=True)
class SeedSet:
    """Ordered group of seed tables bound to the terminals f0..f3."""

    n: int
    seeds: tuple

    def __post_init__(self):
        if not 1 <= len(self.seeds) <= 4:
            raise ValueError(f"a seed set holds 1..4 functions, got {len(self.seeds)}")
        for tt in self.seeds:
            if tt.n != self.n:
                raise ValueError(f"seed of n={tt.n} in a set declared for n={self.n}")


def construction_terminals(seed_count: int = 4) -> tuple:
    """Terminal set for rule evolution: x0, x1 and the available seeds."""
    return (("x", 0), ("x", 1)) + tuple(("f", i) for i in range(seed_count))


def construction_ops(seed_n: int, policy: DepthPolicy, seed_count: int = 4) -> TreeOps:
    return TreeOps(seed_n + 2, policy, construction_terminals(seed_count))


def expand(t, ss: SeedSet) -> TruthTable:
    """Truth table of the rule applied to one seed set, over n+2 variables."""
    m = ss.n + 2
    if m > MAX_VARIABLES:
        raise ValueError(f"expansion to {m} variables exceeds the {MAX_VARIABLES} cap")
    for leaf in iter_leaves(t):
        tag, idx = leaf
        if tag == "x" and idx not in (0, 1):
            raise UnboundVariableError(f"construction trees only bind x0 and x1, found x{idx}")
        if tag == "f" and idx >= len(ss.seeds):
            raise MissingSeedError(f"tree references f{idx} but the set has "
                                   f"{len(ss.seeds)} seeds")
    block = 1 << ss.n
    bindings = {("x", 0): variable_pattern(m, ss.n + 1), ("x", 1): variable_pattern(m, ss.n)}
    for i, seed in enumerate(ss.seeds):
        packed = seed.packed()
        bindings[("f", i)] = packed | packed << block | packed << 2 * block | packed << 3 * block
    value = evaluate_packed(t, bindings, (1 << (1 << m)) - 1)
    return TruthTable.from_packed(m, value)


def is_trivial(t, ss: SeedSet) -> bool:
    """True when the expansion is some seed xored with a function of (x0, x1) only.

    Checked by brute force: for each seed, the difference must be constant on
    each of the four (x0, x1) quadrants.
    """
    table = expand(t, ss).bits
    quadrants = table.reshape(4, -1)
    for seed in ss.seeds:
        residue = quadrants ^ seed.bits[None, :]
        if all(res.min() == res.max() for res in residue):
            return True
    return False


@dataclass(frozen=True)
class ConstructionTask:
    """A rule-evolution problem: seed sets, evaluation scheme, and objective."""

    seed_sets: tuple
    scheme: Scheme
    objective: Objective

    def __post_init__(self):
        if not self.seed_sets:
            raise ValueError("at least one seed set is required")
        seed_n = self.seed_sets[0].n
        for ss in self.seed_sets:
            if ss.n != seed_n:
                raise ValueError("all seed sets must share the same variable count")
        if self.objective.n != seed_n + 2:
            raise ValueError(
                f"objective is for n={self.objective.n}, expansions have n={seed_n + 2}"
            )

    @property
    def optimum(self) -> int:
        return len(self.seed_sets) * self.objective.optimum


def score_construction(t, task: ConstructionTask) -> FitnessValue:
    """Total score of a rule across the task's seed sets.

    Concurrent scheme: plain sum over all sets.  Incremental scheme: the
    remaining sets are scored only once the first set reaches the objective's
    exact optimum, so partial credit never leaks past an imperfect first set.
    """
    first = task.objective.evaluate(expand(t, task.seed_sets[0]))
    if task.scheme is Scheme.INCREMENTAL and not task.objective.is_optimal(first):
        return first
    total_value = first.value
    total_int = first.integer_part
    for ss in task.seed_sets[1:]:
        fv = task.objective.evaluate(expand(t, ss))
        total_value += fv.value
        total_int += fv.integer_part
    return FitnessValue(total_value, total_int)


@dataclass(frozen=True)
class ConstructionEvaluator:
    """Engine-facing scorer; optionally zeroes out trivial rules during search."""

    task: ConstructionTask
    reject_trivial: bool = False

    def evaluate(self, t) -> FitnessValue:
        if self.reject_trivial and is_trivial(t, self.task.seed_sets[0]):
            return FitnessValue(0.0, 0)
        return score_construction(t, self.task)

    @property
    def optimum(self) -> int:
        return self.task.optimum

    def is_optimal(self, fv: FitnessValue) -> bool:
        return fv.integer_part >= self.task.optimum

    def finalize(self, t):
        """Spectral report of the first-set expansion plus the triviality flag."""
        return classify(expand(t, self.task.seed_sets[0])), is_trivial(t, self.task.seed_sets[0])


# --- seed pools -------------------------------------------------------------

_PROPERTY_CHECKS = {
    "self-dual": lambda r: r.is_self_dual,
    "anti-self-dual": lambda r: r.is_anti_self_dual,
    "bent": lambda r: r.is_bent,
}


def load_seed_pool(path, required_property: str = "self-dual") -> list:
    """Read one truth-table record per line and verify each seed's property.

    Raises ValueError naming the offending line on parse or property failures.
    """
    check = _PROPERTY_CHECKS[required_property]
    pool = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                tt = TruthTable.from_record(line)
            except ValueError as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}") from exc
            if not check(classify(tt)):
                raise ValueError(
                    f"{path}: line {lineno}: seed is not {required_property}"
                )
            pool.append(tt)
    if not pool:
        raise ValueError(f"{path}: no seed functions found")
    return pool


def sample_seed_sets(pool, rng: Random, sets: int = 4, per_set: int = 4) -> tuple:
    """Draw seed sets from a pool.

    With enough material the sets are disjoint (sampling without replacement);
    smaller pools reuse seeds across sets but never within one set.
    """
    per_set = min(per_set, len(pool))
    n = pool[0].n
    if len(pool) >= sets * per_set:
        chosen = rng.sample(range(len(pool)), sets * per_set)
        groups = [chosen[i * per_set:(i + 1) * per_set] for i in range(sets)]
    else:
        groups = [rng.sample(range(len(pool)), per_set) for _ in range(sets)]
    return tuple(SeedSet(n, tuple(pool[i] for i in group)) for group in groups)
