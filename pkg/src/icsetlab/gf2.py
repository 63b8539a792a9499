"""Bit-packed linear algebra over GF(2).

Vectors are Python ints used as bit sets (bit i = coordinate i), so rows of
arbitrary width xor in a single operation.  Everything here is pure and
deterministic.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence


class Basis:
    """Incremental echelon basis keyed by leading (highest) bit.

    With ``track=True`` every stored row also remembers which combination of
    the inserted vectors produced it, so members of the span can be expressed
    in terms of the insertion order (bit k of a combination mask = k-th
    inserted vector).
    """

    __slots__ = ("_rows", "_combos", "_n_inserted")

    def __init__(self, track: bool = False) -> None:
        self._rows: Dict[int, int] = {}
        self._combos: Optional[Dict[int, int]] = {} if track else None
        self._n_inserted = 0

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def n_inserted(self) -> int:
        return self._n_inserted

    def reduce(self, vec: int) -> int:
        """Reduce ``vec`` by the basis until its leading bit is not a pivot."""
        rows = self._rows
        while vec:
            lead = vec.bit_length() - 1
            row = rows.get(lead)
            if row is None:
                break
            vec ^= row
        return vec

    def add(self, vec: int) -> bool:
        """Insert ``vec``; return True iff it enlarged the span."""
        combo = (1 << self._n_inserted) if self._combos is not None else 0
        self._n_inserted += 1
        rows = self._rows
        combos = self._combos
        while vec:
            lead = vec.bit_length() - 1
            row = rows.get(lead)
            if row is None:
                rows[lead] = vec
                if combos is not None:
                    combos[lead] = combo
                return True
            vec ^= row
            if combos is not None:
                combo ^= combos[lead]
        return False

    def contains(self, vec: int) -> bool:
        return self.reduce(vec) == 0

    def solve(self, vec: int) -> Optional[int]:
        """Combination mask over inserted vectors reproducing ``vec``, or None.

        Requires ``track=True``.
        """
        if self._combos is None:
            raise ValueError("basis was built without combination tracking")
        combo = 0
        rows, combos = self._rows, self._combos
        while vec:
            lead = vec.bit_length() - 1
            row = rows.get(lead)
            if row is None:
                return None
            vec ^= row
            combo ^= combos[lead]
        return combo


def rank(rows: Iterable[int]) -> int:
    basis = Basis()
    for row in rows:
        basis.add(row)
    return len(basis)


def span_basis(rows: Iterable[int]) -> List[int]:
    """Independent subset spanning the same space (echelon rows)."""
    basis = Basis()
    out = []
    for row in rows:
        if basis.add(row):
            out.append(row)
    return out


def in_span(vec: int, rows: Iterable[int]) -> bool:
    basis = Basis()
    for row in rows:
        basis.add(row)
    return basis.contains(vec)


def nullspace(rows: Sequence[int], n_cols: int) -> List[int]:
    """Basis of {x : parity(row & x) = 0 for every row}, width ``n_cols``."""
    pivots: Dict[int, int] = {}  # pivot column -> fully reduced row
    for row in rows:
        for c, r in pivots.items():
            if (row >> c) & 1:
                row ^= r
        if row == 0:
            continue
        c = (row & -row).bit_length() - 1  # lowest set bit as pivot
        for c2 in list(pivots):
            if (pivots[c2] >> c) & 1:
                pivots[c2] ^= row
        pivots[c] = row
    out: List[int] = []
    for f in range(n_cols):
        if f in pivots:
            continue
        v = 1 << f
        for c, r in pivots.items():
            if (r >> f) & 1:
                v |= 1 << c
        out.append(v)
    return out


def parity(x: int) -> int:
    return x.bit_count() & 1
