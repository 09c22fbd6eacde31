"""Objective functions scoring candidates toward (anti-)self-duality.

A function is self-dual bent exactly when every spectrum entry equals
2^(n/2) * (-1)**f(a); for the anti-self-dual target the sign is inverted.
Two scores drive the search:

* the match count: how many of the 2^n entries already sit at their target;
* the match count plus a deviation bonus in [0, 1): one minus the summed
  absolute distance of all entries from their targets, normalized by
  2^n * 2^(n/2).  The bonus is dropped entirely at the optimum so both scores
  top out at exactly 2^n, and the deviation is clamped at the normalizer so
  the bonus never goes negative on wildly unbalanced spectra.

A plain nonlinearity objective is also provided for evolving bent functions
with no duality constraint.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import TruthTable, WalshSpectrum, bent_nonlinearity, nonlinearity, wht_fast


class OddVariableCountError(ValueError):
    """Duality objectives need 2^(n/2) to be an integer, so n must be even."""


class ObjectiveKind(enum.Enum):
    SELF_DUAL_FIT1 = "sd1"
    SELF_DUAL_FIT2 = "sd2"
    ANTI_SELF_DUAL_FIT1 = "asd1"
    ANTI_SELF_DUAL_FIT2 = "asd2"
    NONLINEARITY_ONLY = "nl"

    @classmethod
    def from_cli_name(cls, name: str) -> "ObjectiveKind":
        for kind in cls:
            if kind.value == name:
                return kind
        raise ValueError(f"unknown objective {name!r}; expected one of "
                         f"{[k.value for k in cls]}")

    @property
    def anti(self) -> bool:
        return self in (self.ANTI_SELF_DUAL_FIT1, self.ANTI_SELF_DUAL_FIT2)

    @property
    def graded(self) -> bool:
        """True for the variants that add the deviation bonus."""
        return self in (self.SELF_DUAL_FIT2, self.ANTI_SELF_DUAL_FIT2)


@dataclass(frozen=True, order=True)
class FitnessValue:
    """Score of one candidate.

    ``integer_part`` is the exact match count (or the nonlinearity, for the
    nonlinearity-only objective); ``value`` adds the fractional deviation
    bonus where the objective defines one.  Ordering follows ``value``.
    """

    value: float
    integer_part: int


def _require_even(n: int):
    if n % 2:
        raise OddVariableCountError(f"duality objectives are undefined for odd n={n}")


def _targets(tt: TruthTable, anti: bool) -> np.ndarray:
    amp = 1 << (tt.n // 2)
    signs = 1 - (tt.bits.astype(np.int32) << 1)
    return -amp * signs if anti else amp * signs


def fit1(tt: TruthTable, ws: WalshSpectrum, anti: bool = False) -> FitnessValue:
    """Count of spectrum entries equal to their signed duality target."""
    _require_even(tt.n)
    matches = int(np.count_nonzero(ws.coeffs == _targets(tt, anti)))
    return FitnessValue(float(matches), matches)


def fit2(tt: TruthTable, ws: WalshSpectrum, anti: bool = False) -> FitnessValue:
    """Match count plus the normalized deviation bonus.

    The deviation sum is exact integer arithmetic; the single division happens
    at the end.  Optimality is detected by a zero integer numerator, never by
    floating-point equality, and in that case the bonus is omitted so the
    optimum is exactly 2^n.
    """
    _require_even(tt.n)
    targets = _targets(tt, anti)
    matches = int(np.count_nonzero(ws.coeffs == targets))
    deviation = int(np.abs(targets.astype(np.int64) - ws.coeffs).sum())
    if deviation == 0:
        return FitnessValue(float(matches), matches)
    denom = (1 << tt.n) * (1 << (tt.n // 2))
    bonus = (denom - min(deviation, denom)) / denom
    return FitnessValue(matches + bonus, matches)


def fitness_nl(ws: WalshSpectrum) -> FitnessValue:
    """Nonlinearity as the score; the optimum certifies a bent function."""
    _require_even(ws.n)
    nl = nonlinearity(ws)
    return FitnessValue(float(nl), nl)


@dataclass(frozen=True)
class Objective:
    """A scoring rule bound to a variable count, ready for the search engine."""

    kind: ObjectiveKind
    n: int

    def __post_init__(self):
        _require_even(self.n)

    @property
    def optimum(self) -> int:
        if self.kind is ObjectiveKind.NONLINEARITY_ONLY:
            return bent_nonlinearity(self.n)
        return 1 << self.n

    def evaluate(self, tt: TruthTable) -> FitnessValue:
        if tt.n != self.n:
            raise ValueError(f"objective expects n={self.n}, got table of n={tt.n}")
        ws = wht_fast(tt)
        if self.kind is ObjectiveKind.NONLINEARITY_ONLY:
            return fitness_nl(ws)
        if self.kind.graded:
            return fit2(tt, ws, self.kind.anti)
        return fit1(tt, ws, self.kind.anti)

    def is_optimal(self, fv: FitnessValue) -> bool:
        return fv.integer_part >= self.optimum
