"""Truth tables, Walsh spectra, and spectral classification of Boolean functions.

A Boolean function f of n variables is stored as its value vector of length
2**n.  Index i encodes the input assignment through the big-endian expansion
of i: variable x1 is the most significant bit, xn the least significant one,
so i = sum(x_k * 2**(n-k) for k in 1..n).  This order is fixed everywhere,
including the text serialization format.

All types are immutable after construction and every operation is a pure
function, so everything in this module is safe to call concurrently.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

MAX_VARIABLES = 16

_RECORD_RE = re.compile(r"^n:(\d+);tt:([0-9a-fA-F]+)$")


class NotBentError(ValueError):
    """The requested operation is only defined for bent functions."""


@dataclass(frozen=True, eq=False)
class TruthTable:
    """Value vector of a Boolean function f: F2^n -> F2.

    ``bits`` is a read-only uint8 array of length 2**n with entries in {0, 1}.
    """

    n: int
    bits: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VARIABLES:
            raise ValueError(f"variable count must be in 1..{MAX_VARIABLES}, got {self.n}")
        if not isinstance(self.bits, np.ndarray) or self.bits.dtype != np.uint8:
            raise TypeError("bits must be a numpy uint8 array")
        if self.bits.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} bits for n={self.n}, got {self.bits.shape}")
        self.bits.setflags(write=False)

    @classmethod
    def from_bits(cls, n: int, values) -> "TruthTable":
        """Build a table from any iterable of 0/1 values, with full validation."""
        arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values)
        arr = arr.astype(np.uint8)
        if arr.size and arr.max(initial=0) > 1:
            raise ValueError("truth-table entries must be 0 or 1")
        return cls(n, arr)

    @classmethod
    def from_packed(cls, n: int, value: int) -> "TruthTable":
        """Build a table from an integer whose bit i is f(i)."""
        size = 1 << n
        if not 0 <= value < (1 << size):
            raise ValueError(f"packed value out of range for n={n}")
        nbytes = max(1, size // 8)
        raw = np.frombuffer(value.to_bytes(nbytes, "little"), dtype=np.uint8)
        return cls(n, np.unpackbits(raw, bitorder="little", count=size))

    def packed(self) -> int:
        """Integer whose bit i is f(i)."""
        return int.from_bytes(np.packbits(self.bits, bitorder="little").tobytes(), "little")

    def weight(self) -> int:
        """Hamming weight of the value vector."""
        return int(np.count_nonzero(self.bits))

    def complement(self) -> "TruthTable":
        return TruthTable(self.n, (self.bits ^ 1).astype(np.uint8))

    def __xor__(self, other: "TruthTable") -> "TruthTable":
        if self.n != other.n:
            raise ValueError("cannot xor tables of different variable counts")
        return TruthTable(self.n, (self.bits ^ other.bits).astype(np.uint8))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.bits, other.bits)

    def __repr__(self) -> str:
        return f"TruthTable({self.to_record()!r})"

    def to_record(self) -> str:
        """Serialize as ``n:<int>;tt:<hex>``.

        Hex nibbles run from index 0 upward; the most significant bit of the
        first nibble is f(0).  For n=1 the unused low half of the single
        nibble is zero.
        """
        padded = np.zeros(-(-self.bits.size // 4) * 4, dtype=np.uint8)
        padded[: self.bits.size] = self.bits
        nibbles = padded.reshape(-1, 4)
        values = nibbles[:, 0] * 8 + nibbles[:, 1] * 4 + nibbles[:, 2] * 2 + nibbles[:, 3]
        return f"n:{self.n};tt:" + "".join(f"{v:x}" for v in values)

    @classmethod
    def from_record(cls, text: str) -> "TruthTable":
        """Parse the ``n:<int>;tt:<hex>`` format produced by :meth:`to_record`."""
        m = _RECORD_RE.match(text.strip())
        if m is None:
            raise ValueError(f"malformed truth-table record: {text!r}")
        n = int(m.group(1))
        if not 1 <= n <= MAX_VARIABLES:
            raise ValueError(f"variable count must be in 1..{MAX_VARIABLES}, got {n}")
        hexpart = m.group(2)
        size = 1 << n
        expected = -(-size // 4)
        if len(hexpart) != expected:
            raise ValueError(
                f"expected {expected} hex digits for n={n}, got {len(hexpart)}"
            )
        bits = np.zeros(expected * 4, dtype=np.uint8)
        for j, ch in enumerate(hexpart):
            v = int(ch, 16)
            bits[4 * j] = v >> 3 & 1
            bits[4 * j + 1] = v >> 2 & 1
            bits[4 * j + 2] = v >> 1 & 1
            bits[4 * j + 3] = v & 1
        if bits[size:].any():
            raise ValueError("padding bits beyond 2^n must be zero")
        return cls(n, bits[:size])


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    """Signed correlation of a function with every linear mask.

    ``coeffs[a]`` is sum over x of (-1)**(f(x) xor a.x), under the same index
    convention as :class:`TruthTable`.  Values are exact signed integers.
    """

    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.coeffs.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} coefficients for n={self.n}")
        self.coeffs.setflags(write=False)

    def max_abs(self) -> int:
        return int(np.max(np.abs(self.coeffs)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, WalshSpectrum):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.coeffs, other.coeffs)


@dataclass(frozen=True)
class SpectralReport:
    """Classification summary of one function."""

    nonlinearity: int
    is_bent: bool
    is_self_dual: bool
    is_anti_self_dual: bool
    max_abs_coeff: int


def wht_fast(tt: TruthTable) -> WalshSpectrum:
    """Walsh spectrum via the in-place butterfly, O(n * 2^n) exact integer ops.

    Starts from the sign vector (-1)**f(x); at pass h the pair (j, j+h) is
    replaced by (sum, difference).
    """
    coeffs = 1 - (tt.bits.astype(np.int32) << 1)
    size = coeffs.size
    h = 1
    while h < size:
        pairs = coeffs.reshape(-1, 2, h)
        top = pairs[:, 0, :]
        bot = pairs[:, 1, :]
        diff = top - bot
        np.add(top, bot, out=top)
        bot[...] = diff
        h <<= 1
    return WalshSpectrum(tt.n, coeffs)


def nonlinearity(ws: WalshSpectrum) -> int:
    """Distance to the nearest affine function: 2^(n-1) - max|W|/2."""
    return (1 << (ws.n - 1)) - (ws.max_abs() >> 1)


def is_bent(ws: WalshSpectrum) -> bool:
    """True iff n is even and the spectrum is flat at magnitude 2^(n/2)."""
    if ws.n % 2:
        return False
    target = 1 << (ws.n // 2)
    return bool(np.all(np.abs(ws.coeffs) == target))


def dual(tt: TruthTable) -> TruthTable:
    """Dual of a bent function, read off the spectrum signs.

    The dual maps x to 0 where W(x) = +2^(n/2) and to 1 where W(x) = -2^(n/2);
    it is itself bent.  Raises :class:`NotBentError` when the spectrum is not
    flat, in which case no dual exists.
    """
    ws = wht_fast(tt)
    if not is_bent(ws):
        raise NotBentError(f"function of {tt.n} variables is not bent; dual undefined")
    return TruthTable(tt.n, (ws.coeffs < 0).astype(np.uint8))


def classify(tt: TruthTable) -> SpectralReport:
    """Full spectral report; non-bent inputs simply get both duality flags false."""
    ws = wht_fast(tt)
    bent = is_bent(ws)
    self_dual = anti_self_dual = False
    if bent:
        dual_bits = (ws.coeffs < 0).astype(np.uint8)
        self_dual = bool(np.array_equal(dual_bits, tt.bits))
        anti_self_dual = bool(np.array_equal(dual_bits, tt.bits ^ 1))
    return SpectralReport(
        nonlinearity=nonlinearity(ws),
        is_bent=bent,
        is_self_dual=self_dual,
        is_anti_self_dual=anti_self_dual,
        max_abs_coeff=ws.max_abs(),
    )


def bent_nonlinearity(n: int) -> int:
    """Covering-radius bound 2^(n-1) - 2^(n/2-1), attained exactly by bent functions."""
    if n % 2:
        raise ValueError("bent functions exist only for even n")
    return (1 << (n - 1)) - (1 << (n // 2 - 1))
