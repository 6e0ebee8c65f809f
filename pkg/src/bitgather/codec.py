"""Least-significant-bits transmission and nearest-codeword reconstruction.

A node with a b-bit budget sends the low b bits of its n-bit reading. The
receiver reconstructs by picking, among all n-bit values sharing those low
bits, the one closest to a reference reading (bins of size 2**b). Splicing
the reference's high bits onto the payload would fail on carry boundaries
(e.g. reference 15, true value 16), so nearest-codeword decoding is used;
it is exact whenever |true - reference| <= 2**(b-1) - 1.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Reading:
    """Unsigned n-bit sensor value."""

    value: int
    width: int

    def __post_init__(self) -> None:
        if self.width < 1:
            raise ValueError("width must be >= 1")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value} out of range for {self.width} bits")


@dataclass(frozen=True)
class Codeword:
    """The low `bits` bits of a reading; bits may be 0 (nothing sent)."""

    payload: int
    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0:
            raise ValueError("bits must be >= 0")
        if not 0 <= self.payload < (1 << self.bits):
            raise ValueError(f"payload {self.payload} out of range for {self.bits} bits")


def encode(reading: Reading, budget: int) -> Codeword:
    if budget > reading.width:
        raise ValueError(f"budget {budget} exceeds reading width {reading.width}")
    if budget < 0:
        raise ValueError("budget must be >= 0")
    return Codeword(payload=reading.value & ((1 << budget) - 1), bits=budget)


def decode(reference: Reading, codeword: Codeword) -> Reading:
    """Nearest value to the reference matching the codeword's low bits.

    Ties break toward the smaller candidate.
    """
    n = reference.width
    b = codeword.bits
    if b > n:
        raise ValueError(f"codeword bits {b} exceed reference width {n}")
    if b == 0:
        return reference
    if b == n:
        return Reading(value=codeword.payload, width=n)
    step = 1 << b
    k_max = (1 << (n - b)) - 1
    k = (reference.value - codeword.payload) // step  # floor
    best = None
    for cand_k in (k, k + 1):
        cand_k = max(0, min(cand_k, k_max))
        cand = codeword.payload + cand_k * step
        dist = abs(cand - reference.value)
        if best is None or dist < best[0] or (dist == best[0] and cand < best[1]):
            best = (dist, cand)
    return Reading(value=best[1], width=n)


def correctness_radius(bits: int) -> int:
    """Largest |true - reference| for which decode is guaranteed exact."""
    if bits < 0:
        raise ValueError("bits must be >= 0")
    if bits == 0:
        return 0
    return (1 << (bits - 1)) - 1
