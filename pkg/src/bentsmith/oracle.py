"""Brute-force reference transforms and exhaustive small-n censuses.

Everything here recomputes spectral quantities from first principles so the
fast paths in :mod:`bentsmith.core` can be checked against an independent
implementation.  The direct transform evaluates the defining correlation sum
coefficient by coefficient instead of running the butterfly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from random import Random

import numpy as np

from .core import TruthTable, WalshSpectrum, classify

DIRECT_LIMIT = 12
EXHAUSTIVE_SIZES = (2, 4)
SAMPLED_SIZE = 6


class TooLargeError(ValueError):
    """The requested brute-force computation is beyond the supported size."""


@lru_cache(maxsize=None)
def _popcount_parity_table() -> np.ndarray:
    bits = np.arange(1 << 16, dtype=np.uint16)
    parity = np.zeros(1 << 16, dtype=np.uint8)
    while bits.any():
        parity ^= (bits & 1).astype(np.uint8)
        bits >>= 1
    return parity


@lru_cache(maxsize=None)
def _mask_sign_matrix(n: int) -> np.ndarray:
    """Matrix M[a, x] = (-1)**(a.x) with the inner product taken bitwise."""
    idx = np.arange(1 << n, dtype=np.uint32)
    masks = idx[:, None] & idx[None, :]
    if hasattr(np, "bitwise_count"):
        parity = (np.bitwise_count(masks) & 1).astype(np.int16)
    else:  # indices stay below 2^12, one 16-bit lookup suffices
        parity = _popcount_parity_table()[masks.astype(np.uint16)].astype(np.int16)
    return 1 - 2 * parity


def wht_direct(tt: TruthTable) -> WalshSpectrum:
    """Literal evaluation of the correlation sum, one coefficient per mask.

    Costs O(4^n); guarded at n <= 12.  Entirely independent of the butterfly
    in :func:`bentsmith.core.wht_fast`.
    """
    if tt.n > DIRECT_LIMIT:
        raise TooLargeError(f"direct transform supports n <= {DIRECT_LIMIT}, got {tt.n}")
    signs = 1 - 2 * tt.bits.astype(np.int32)
    coeffs = _mask_sign_matrix(tt.n) @ signs
    return WalshSpectrum(tt.n, coeffs.astype(np.int32))


@dataclass(frozen=True)
class CensusReport:
    """Counts of bent and (anti-)self-dual functions for one variable count."""

    n: int
    count_bent: int
    count_self_dual: int
    count_anti_self_dual: int
    functions_examined: int
    exhaustive: bool


def _classify_all(bits: np.ndarray, n: int):
    """Vectorized spectra and duality masks for a batch of value vectors."""
    coeffs = 1 - 2 * bits.astype(np.int32)
    size = 1 << n
    h = 1
    while h < size:
        pairs = coeffs.reshape(bits.shape[0], -1, 2, h)
        top = pairs[:, :, 0, :]
        bot = pairs[:, :, 1, :]
        diff = top - bot
        np.add(top, bot, out=top)
        bot[...] = diff
        h <<= 1
    target = 1 << (n // 2)
    bent = np.all(np.abs(coeffs) == target, axis=1)
    dual_bits = (coeffs < 0).astype(np.uint8)
    self_dual = bent & np.all(dual_bits == bits, axis=1)
    anti_self_dual = bent & np.all(dual_bits == (bits ^ 1), axis=1)
    return bent, self_dual, anti_self_dual


def census(n: int, samples: int | None = None, rng_seed: int = 0) -> CensusReport:
    """Count bent / self-dual / anti-self-dual functions of n variables.

    Exhaustive for n in {2, 4}.  For n = 6 the full space of 2^64 functions is
    far out of reach, so only a sampled census is offered: ``samples`` random
    value vectors are classified and the counts refer to that sample.
    """
    if n in EXHAUSTIVE_SIZES and samples is None:
        report, _ = census_with_witnesses(n)
        return report
    if n in EXHAUSTIVE_SIZES or n == SAMPLED_SIZE:
        if samples is None or samples <= 0:
            raise TooLargeError(
                f"n={n} requires sampled mode: pass a positive sample count"
            )
        return _sampled_census(n, samples, rng_seed)
    raise TooLargeError(f"census supports n in {{2, 4}} exhaustively and n=6 sampled, got n={n}")


def census_with_witnesses(n: int):
    """Exhaustive census plus the self-dual value vectors it found.

    Witnesses come back ordered by packed value, so the output is stable and
    suitable as a seed pool file.
    """
    if n not in EXHAUSTIVE_SIZES:
        raise TooLargeError(f"exhaustive census supports n in {{2, 4}}, got n={n}")
    size = 1 << n
    count = 1 << size
    funcs = np.arange(count, dtype=np.uint32)
    bits = ((funcs[:, None] >> np.arange(size, dtype=np.uint32)[None, :]) & 1).astype(np.uint8)
    bent, self_dual, anti_self_dual = _classify_all(bits, n)
    witnesses = [TruthTable(n, bits[i].copy()) for i in np.flatnonzero(self_dual)]
    report = CensusReport(
        n=n,
        count_bent=int(np.count_nonzero(bent)),
        count_self_dual=int(np.count_nonzero(self_dual)),
        count_anti_self_dual=int(np.count_nonzero(anti_self_dual)),
        functions_examined=count,
        exhaustive=True,
    )
    return report, witnesses


def _sampled_census(n: int, samples: int, rng_seed: int) -> CensusReport:
    rng = Random(f"census:{n}:{rng_seed}")
    size = 1 << n
    n_bent = n_sd = n_asd = 0
    for _ in range(samples):
        tt = TruthTable.from_packed(n, rng.getrandbits(size))
        report = classify(tt)
        n_bent += report.is_bent
        n_sd += report.is_self_dual
        n_asd += report.is_anti_self_dual
    return CensusReport(
        n=n,
        count_bent=n_bent,
        count_self_dual=n_sd,
        count_anti_self_dual=n_asd,
        functions_examined=samples,
        exhaustive=False,
    )
