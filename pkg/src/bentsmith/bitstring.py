"""Bitstring genome: the value vector itself, with its variation operators.

The genome of an n-variable candidate is just a :class:`TruthTable`, so no
decoding step exists.  Mutation either flips one bit or reshuffles a random
contiguous range; crossover is one-point or positionwise uniform.  Every
engine-invoked variation event picks uniformly among the registered operators
of that arity.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

import numpy as np

from .core import TruthTable


class SizeMismatchError(ValueError):
    """Parents of a crossover must encode functions of the same variable count."""


def random_genome(n: int, rng: Random) -> TruthTable:
    # each bit independent uniform
    return TruthTable.from_packed(n, rng.getrandbits(1 << n))


def flip_bit(g: TruthTable, position: int) -> TruthTable:
    bits = g.bits.copy()
    bits[position] ^= 1
    return TruthTable(g.n, bits)


def mut_bitflip(g: TruthTable, rng: Random) -> TruthTable:
    """Invert one uniformly chosen bit."""
    return flip_bit(g, rng.randrange(g.bits.size))


def shuffle_range(g: TruthTable, start: int, stop: int, rng: Random) -> TruthTable:
    """Fisher-Yates permutation of bits[start:stop], the rest untouched."""
    bits = g.bits.copy()
    segment = list(bits[start:stop])
    rng.shuffle(segment)
    bits[start:stop] = segment
    return TruthTable(g.n, bits)


def mut_mix(g: TruthTable, rng: Random) -> TruthTable:
    """Shuffle a random substring; the bit multiset is preserved.

    The endpoints are a uniform pair 0 <= i < j <= 2^n, so single-bit
    (identity) ranges can occur.
    """
    i, j = sorted(rng.sample(range(g.bits.size + 1), 2))
    return shuffle_range(g, i, j, rng)


def _check_sizes(a: TruthTable, b: TruthTable):
    if a.n != b.n:
        raise SizeMismatchError(f"parents have n={a.n} and n={b.n}")


def cx_one_point(a: TruthTable, b: TruthTable, rng: Random) -> TruthTable:
    """Child takes a[:k] then b[k:], with breakpoint k uniform in 1..2^n-1."""
    _check_sizes(a, b)
    k = rng.randint(1, a.bits.size - 1)
    return TruthTable(a.n, np.concatenate([a.bits[:k], b.bits[k:]]))


def cx_uniform(a: TruthTable, b: TruthTable, rng: Random) -> TruthTable:
    """Each child bit comes from either parent with probability 1/2."""
    _check_sizes(a, b)
    size = a.bits.size
    raw = np.frombuffer(rng.getrandbits(size).to_bytes(max(1, size // 8), "little"),
                        dtype=np.uint8)
    take_a = np.unpackbits(raw, bitorder="little", count=size)
    return TruthTable(a.n, np.where(take_a, a.bits, b.bits))


_MUTATIONS = (mut_bitflip, mut_mix)
_CROSSOVERS = (cx_one_point, cx_uniform)


@dataclass(frozen=True)
class BitstringOps:
    """Operator bundle plugged into the steady-state engine."""

    n: int

    def random(self, rng: Random) -> TruthTable:
        return random_genome(self.n, rng)

    def mutate(self, g: TruthTable, rng: Random) -> TruthTable:
        return _MUTATIONS[rng.randrange(len(_MUTATIONS))](g, rng)

    def crossover(self, a: TruthTable, b: TruthTable, rng: Random) -> TruthTable:
        return _CROSSOVERS[rng.randrange(len(_CROSSOVERS))](a, b, rng)

    def to_table(self, g: TruthTable) -> TruthTable:
        return g

    def serialize(self, g: TruthTable) -> str:
        return g.to_record()

    def deserialize(self, text: str) -> TruthTable:
        return TruthTable.from_record(text)
