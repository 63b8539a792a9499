"""Multi-qubit Pauli operators as symplectic bit vectors with a phase mod 4.

An element is ``i^phase * X^x * Z^z`` where x, z are bit masks over the qubit
indices 0..n-1.  Multiplication tracks the phase exactly; commutation is the
parity of the symplectic form.  Instances are immutable.
"""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Tuple

_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LETTER = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}


class Pauli:
    __slots__ = ("n", "x", "z", "phase")

    def __init__(self, n: int, x: int = 0, z: int = 0, phase: int = 0) -> None:
        self.n = n
        self.x = x
        self.z = z
        self.phase = phase & 3

    @classmethod
    def identity(cls, n: int) -> "Pauli":
        return cls(n, 0, 0, 0)

    @classmethod
    def from_letters(cls, n: int, letters: Mapping[int, str], sign: int = 1) -> "Pauli":
        """Hermitian Pauli from {qubit: 'X'|'Y'|'Z'} with sign +1 or -1."""
        x = z = 0
        for q, letter in letters.items():
            if not 0 <= q < n:
                raise ValueError(f"qubit {q} outside range 0..{n - 1}")
            bx, bz = _LETTER_BITS[letter]
            x |= bx << q
            z |= bz << q
        ph = (x & z).bit_count() & 3  # i^{#Y} makes the operator Hermitian
        if sign == -1:
            ph = (ph + 2) & 3
        elif sign != 1:
            raise ValueError("sign must be +1 or -1")
        return cls(n, x, z, ph)

    # -- algebra ---------------------------------------------------------

    def __mul__(self, other: "Pauli") -> "Pauli":
        if self.n != other.n:
            raise ValueError("qubit counts differ")
        extra = 2 * ((self.z & other.x).bit_count() & 1)
        return Pauli(
            self.n,
            self.x ^ other.x,
            self.z ^ other.z,
            (self.phase + other.phase + extra) & 3,
        )

    def commutes(self, other: "Pauli") -> bool:
        a = (self.x & other.z).bit_count() & 1
        b = (self.z & other.x).bit_count() & 1
        return a == b

    def sym_product(self, other: "Pauli") -> int:
        """Symplectic form parity: 0 = commute, 1 = anticommute."""
        return ((self.x & other.z).bit_count() + (self.z & other.x).bit_count()) & 1

    # -- structure -------------------------------------------------------

    @property
    def y_count(self) -> int:
        return (self.x & self.z).bit_count()

    def is_hermitian(self) -> bool:
        return ((self.phase - self.y_count) & 1) == 0

    def sign(self) -> int:
        """+1 or -1 for a Hermitian element."""
        d = (self.phase - self.y_count) & 3
        if d == 0:
            return 1
        if d == 2:
            return -1
        raise ValueError("non-Hermitian Pauli has no sign")

    def negate(self) -> "Pauli":
        return Pauli(self.n, self.x, self.z, (self.phase + 2) & 3)

    @property
    def support(self) -> int:
        return self.x | self.z

    def support_qubits(self) -> Tuple[int, ...]:
        s = self.support
        out = []
        q = 0
        while s:
            if s & 1:
                out.append(q)
            s >>= 1
            q += 1
        return tuple(out)

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0 and self.phase == 0

    def vector(self, n_cols: int | None = None) -> int:
        """Single-int symplectic vector (x bits shifted above z bits)."""
        n = self.n if n_cols is None else n_cols
        return (self.x << n) | self.z

    def letter(self, q: int) -> str:
        return _BITS_LETTER[((self.x >> q) & 1, (self.z >> q) & 1)]

    def restrict(self, qubits: Iterable[int]) -> "Pauli":
        """Same operator re-indexed onto the listed qubits (support must fit)."""
        qubits = list(qubits)
        pos = {q: i for i, q in enumerate(qubits)}
        keep = 0
        for q in qubits:
            keep |= 1 << q
        if self.support & ~keep:
            raise ValueError("support leaves the restriction set")
        x = z = 0
        for q, i in pos.items():
            x |= ((self.x >> q) & 1) << i
            z |= ((self.z >> q) & 1) << i
        return Pauli(len(qubits), x, z, self.phase)

    def embed(self, n: int, positions: Mapping[int, int]) -> "Pauli":
        """Map qubit i of self to positions[i] in an n-qubit register."""
        x = z = 0
        for i in range(self.n):
            bx, bz = (self.x >> i) & 1, (self.z >> i) & 1
            if bx or bz:
                q = positions[i]
                x |= bx << q
                z |= bz << q
        return Pauli(n, x, z, self.phase)

    # -- misc ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Pauli)
            and self.n == other.n
            and self.x == other.x
            and self.z == other.z
            and self.phase == other.phase
        )

    def __hash__(self) -> int:
        return hash((self.n, self.x, self.z, self.phase))

    def __repr__(self) -> str:
        body = "".join(self.letter(q) for q in range(min(self.n, 24)))
        if self.n > 24:
            body += "..."
        pre = {0: "+", 1: "+i", 2: "-", 3: "-i"}[self.phase_rel()]
        return f"Pauli({pre}{body})"

    def phase_rel(self) -> int:
        """Phase exponent relative to the Hermitian canonical form."""
        return (self.phase - self.y_count) & 3

    def to_dict(self) -> Dict[str, object]:
        return {"n": self.n, "x": f"{self.x:x}", "z": f"{self.z:x}", "phase": self.phase}

    @classmethod
    def from_dict(cls, d: Mapping[str, object]) -> "Pauli":
        return cls(int(d["n"]), int(str(d["x"]), 16), int(str(d["z"]), 16), int(d["phase"]))
