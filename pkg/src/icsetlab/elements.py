"""Stabilizer elements: signed Pauli groups on a named qubit universe.

An element represents the density matrix rho = 2^-n * sum_{g in G} g over a
group G of commuting signed Paulis (not necessarily maximal, so states may be
mixed).  Entropies of subsets are integer bit counts obtained from GF(2)
ranks; no floating point enters.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .pauli import Pauli
from .values import EntropyValue


class InconsistentGroupError(ValueError):
    """The proposed generating set multiplies to -identity somewhere."""


class StabilizerElement:
    """Immutable group-with-signs state on an ordered qubit universe.

    ``qubit_ids`` are semantic labels (lattice edge ids or immersed-region
    qubit keys); generator Paulis are indexed by position in that tuple.
    """

    def __init__(self, qubit_ids: Sequence, gens: Iterable[Pauli], check: bool = True) -> None:
        self.qubit_ids: Tuple = tuple(qubit_ids)
        self.index: Dict = {q: i for i, q in enumerate(self.qubit_ids)}
        if len(self.index) != len(self.qubit_ids):
            raise ValueError("duplicate qubit ids")
        n = len(self.qubit_ids)
        self.n = n
        canonical: List[Pauli] = []
        echelon: Dict[int, Tuple[int, Pauli]] = {}
        for p in gens:
            if p.n != n:
                raise ValueError("generator width does not match universe")
            if check and not p.is_hermitian():
                raise ValueError("generators must be Hermitian")
            vec = p.vector()
            cur = p
            while vec:
                lead = vec.bit_length() - 1
                hit = echelon.get(lead)
                if hit is None:
                    echelon[lead] = (vec, cur)
                    canonical.append(cur)
                    break
                vec ^= hit[0]
                cur = cur * hit[1]
            else:
                # dependent row: product must be exactly +identity
                if cur.phase != 0:
                    raise InconsistentGroupError("generating set contains -identity")
        if check:
            for i, a in enumerate(canonical):
                for b in canonical[i + 1 :]:
                    if a.sym_product(b):
                        raise ValueError("generators do not commute")
        self.gens: Tuple[Pauli, ...] = tuple(canonical)
        self._echelon = echelon
        self._entropy_cache: Dict[FrozenSet, int] = {}

    # -- basic structure ---------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.gens)

    def qubit_set(self) -> FrozenSet:
        return frozenset(self.qubit_ids)

    def is_pure(self) -> bool:
        return self.rank == self.n

    def _mask(self, region: Iterable) -> Tuple[int, int]:
        """(bit mask over qubit positions, size) for a set of qubit ids."""
        m = 0
        count = 0
        for q in region:
            m |= 1 << self.index[q]
            count += 1
        return m, count

    def _vec_mask(self, posmask: int) -> int:
        """Expand a position mask to the (x<<n)|z vector layout."""
        return (posmask << self.n) | posmask

    # -- expectations --------------------------------------------------------

    def expectation(self, p: Pauli) -> int:
        """Exact expectation of a Hermitian Pauli: +1, -1 or 0."""
        vec = p.vector()
        cur = Pauli.identity(self.n)
        while vec:
            lead = vec.bit_length() - 1
            hit = self._echelon.get(lead)
            if hit is None:
                return 0
            vec ^= hit[0]
            cur = cur * hit[1]
        # cur has the same symplectic vector as p; compare phases
        diff = (p.phase - cur.phase) & 3
        if diff == 0:
            return 1
        if diff == 2:
            return -1
        raise ValueError("non-Hermitian comparison")

    def contains_vector(self, p: Pauli) -> bool:
        vec = p.vector()
        while vec:
            lead = vec.bit_length() - 1
            hit = self._echelon.get(lead)
            if hit is None:
                return False
            vec ^= hit[0]
        return True

    # -- entropies -----------------------------------------------------------

    def entropy_bits(self, region: Iterable) -> int:
        posmask, size = self._mask(region)
        key = posmask
        cached = self._entropy_cache.get(key)
        if cached is not None:
            return cached
        comp = self._vec_mask(~posmask & ((1 << self.n) - 1))
        # rank of generators restricted to the complement columns
        echelon: Dict[int, int] = {}
        r = 0
        for g in self.gens:
            vec = g.vector() & comp
            while vec:
                lead = vec.bit_length() - 1
                hit = echelon.get(lead)
                if hit is None:
                    echelon[lead] = vec
                    r += 1
                    break
                vec ^= hit
        k_region = self.rank - r
        bits = size - k_region
        self._entropy_cache[key] = bits
        return bits

    def entropy(self, region: Iterable) -> EntropyValue:
        return EntropyValue.from_bits(self.entropy_bits(region))

    # -- restriction (partial trace) ------------------------------------------

    def restrict(self, keep: Iterable) -> "StabilizerElement":
        """Reduced state on ``keep``: the subgroup supported inside it."""
        keep_ids = [q for q in self.qubit_ids if q in set(keep)]
        posmask, _ = self._mask(keep_ids)
        comp = self._vec_mask(~posmask & ((1 << self.n) - 1))
        echelon: Dict[int, Tuple[int, Pauli]] = {}
        kernel: List[Pauli] = []
        for g in self.gens:
            vec = g.vector() & comp
            cur = g
            while vec:
                lead = vec.bit_length() - 1
                hit = echelon.get(lead)
                if hit is None:
                    echelon[lead] = (vec, cur)
                    break
                vec ^= hit[0]
                cur = cur * hit[1]
            else:
                kernel.append(cur)
        pos = {self.index[q]: i for i, q in enumerate(keep_ids)}
        reduced = [p.restrict([self.index[q] for q in keep_ids]) for p in kernel]
        return StabilizerElement(keep_ids, reduced, check=False)

    # -- comparisons -----------------------------------------------------------

    def same_state(self, other: "StabilizerElement") -> bool:
        if self.qubit_set() != other.qubit_set():
            return False
        if self.rank != other.rank:
            return False
        for g in self.gens:
            h = _translate(g, self, other)
            if other.expectation(h) != 1:
                return False
        return True

    def orthogonal(self, other: "StabilizerElement") -> bool:
        """Fidelity exactly zero: some common group vector with opposite sign."""
        if self.qubit_set() != other.qubit_set():
            raise ValueError("states live on different universes")
        for g in self.gens:
            h = _translate(g, self, other)
            if other.expectation(h) == -1:
                return True
        for g in other.gens:
            h = _translate(g, other, self)
            if self.expectation(h) == -1:
                return True
        return False

    def to_dict(self) -> dict:
        return {
            "qubits": list(self.qubit_ids),
            "generators": [g.to_dict() for g in self.gens],
        }


def _translate(p: Pauli, src: StabilizerElement, dst: StabilizerElement) -> Pauli:
    """Re-index a Pauli from one universe to another with the same qubit ids."""
    if src.qubit_ids == dst.qubit_ids:
        return p
    positions = {i: dst.index[q] for i, q in enumerate(src.qubit_ids)}
    return p.embed(dst.n, positions)


def delta_value(state, blocks: Dict[str, Iterable]) -> EntropyValue:
    """Delta(B,C,D) = S_BC + S_CD - S_B - S_D (D may be empty: Delta(B,C))."""
    B = frozenset(blocks["B"])
    C = frozenset(blocks["C"])
    D = frozenset(blocks.get("D", ()))
    if not B or not C:
        raise ValueError("blocks B and C must be nonempty and named")
    if (B & C) or (B & D) or (C & D):
        raise ValueError("blocks must be disjoint")
    s_bc = state.entropy(B | C)
    s_b = state.entropy(B)
    if D:
        return s_bc + state.entropy(C | D) - s_b - state.entropy(D)
    return s_bc + state.entropy(C) - s_b


def cmi_value(state, A: Iterable, B: Iterable, C: Iterable) -> EntropyValue:
    """I(A:C|B) = S_AB + S_BC - S_B - S_ABC, asserted nonnegative."""
    A, B, C = frozenset(A), frozenset(B), frozenset(C)
    if (A & B) or (A & C) or (B & C):
        raise ValueError("blocks must be disjoint")
    val = (
        state.entropy(A | B)
        + state.entropy(B | C)
        - state.entropy(B)
        - state.entropy(A | B | C)
    )
    if val.twice_bits < 0:
        raise AssertionError(f"strong subadditivity violated: {val}")
    return val
