"""Exact entropy bookkeeping.

All entropies of stabilizer states are integer multiples of ln 2, and the
derived quantities we care about (entropy combinations, log quantum
dimensions) are integer multiples of (ln 2)/2.  ``EntropyValue`` therefore
stores twice the number of bits as an int, so every equality in the engine is
decided exactly, never by tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

LN2 = math.log(2.0)


@dataclass(frozen=True, order=True)
class EntropyValue:
    """An exact value S = (twice_bits / 2) * ln 2."""

    twice_bits: int

    @classmethod
    def from_bits(cls, bits: int) -> "EntropyValue":
        return cls(2 * bits)

    @classmethod
    def zero(cls) -> "EntropyValue":
        return cls(0)

    @property
    def bits(self) -> float:
        return self.twice_bits / 2.0

    @property
    def nats(self) -> float:
        return self.twice_bits * LN2 / 2.0

    def __add__(self, other: "EntropyValue") -> "EntropyValue":
        return EntropyValue(self.twice_bits + other.twice_bits)

    def __sub__(self, other: "EntropyValue") -> "EntropyValue":
        return EntropyValue(self.twice_bits - other.twice_bits)

    def __neg__(self) -> "EntropyValue":
        return EntropyValue(-self.twice_bits)

    def __mul__(self, k: int) -> "EntropyValue":
        return EntropyValue(self.twice_bits * k)

    __rmul__ = __mul__

    def exact_div(self, k: int) -> "EntropyValue":
        """Divide by an integer, raising if the result is not representable."""
        q, r = divmod(self.twice_bits, k)
        if r:
            raise ValueError(f"{self} is not divisible by {k} in half-bit units")
        return EntropyValue(q)

    def is_zero(self) -> bool:
        return self.twice_bits == 0

    def exp(self) -> float:
        """e**S, e.g. a quantum dimension when S = ln d."""
        return math.exp(self.nats)

    def __repr__(self) -> str:
        return f"EntropyValue({self.twice_bits}/2 bits)"

    def to_dict(self) -> dict:
        return {"twice_bits": self.twice_bits, "nats": self.nats}
