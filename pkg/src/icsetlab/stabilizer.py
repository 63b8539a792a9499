"""Reference states: toric code on torus/planar patch, dislocation defects,
exact entropy evaluation and the ball axioms.

Local generators are geometrically small commuting Paulis (stars, plaquettes,
defect cells, pinned qubits).  On the torus the global state is purified by
adjoining wrapping loops; those completions are never used for pullbacks,
only for entropies of the reference state itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import gf2
from .elements import InconsistentGroupError, StabilizerElement, cmi_value, delta_value
from .lattice import CellComplex, Coord, LatticeError, Region
from .pauli import Pauli
from .values import EntropyValue


class DefectError(LatticeError):
    pass


@dataclass(frozen=True)
class LocalGenerator:
    pauli: Pauli
    kind: str  # star | plaquette | defect_cell | pin
    center: Coord  # doubled coordinates


@dataclass(frozen=True)
class DefectPair:
    """A dislocation line: twist marker qubits and the re-glued diagonal."""

    twist1: Coord  # doubled coordinates of the two pentagon Y qubits
    twist2: Coord
    removed: Tuple[Coord, ...]  # pinned qubit positions strictly between

    def marker_edges(self, cpx: CellComplex) -> Tuple[int, int]:
        return cpx.edge_at(self.twist1), cpx.edge_at(self.twist2)


class StabilizerContext:
    """A reference state: commuting local generators plus purifying completion."""

    def __init__(
        self,
        complex: CellComplex,
        local_gens: Sequence[LocalGenerator],
        defects: Sequence[DefectPair] = (),
        check: bool = True,
    ) -> None:
        self.complex = complex
        self.local_gens: Tuple[LocalGenerator, ...] = tuple(local_gens)
        self.defects: Tuple[DefectPair, ...] = tuple(defects)
        self.n = complex.n_edges
        if check:
            self._check_commutation()
        vecs = [g.pauli.vector() for g in self.local_gens]
        self.local_rank = gf2.rank(vecs)
        self.ground_log2_dim = self.n - self.local_rank
        self.completion: Tuple[Pauli, ...] = tuple(self._complete(vecs))
        self._state: Optional[StabilizerElement] = None

    def _check_commutation(self) -> None:
        gens = [g.pauli for g in self.local_gens]
        for i, a in enumerate(gens):
            for b in gens[i + 1 :]:
                if a.sym_product(b):
                    raise DefectError(
                        f"local generators anticommute: "
                        f"{self.local_gens[i].kind}@{self.local_gens[i].center}"
                    )

    # -- purification ------------------------------------------------------

    def _loop_candidates(self) -> Iterable[Pauli]:
        cpx = self.complex
        if cpx.geometry != "torus":
            return
        for j in range(cpx.Ly):
            yield Pauli.from_letters(self.n, {cpx.h_edge_id(i, j): "Z" for i in range(cpx.Lx)})
            yield Pauli.from_letters(self.n, {cpx.v_edge_id(i, j): "X" for i in range(cpx.Lx)})
        for i in range(cpx.Lx):
            yield Pauli.from_letters(self.n, {cpx.v_edge_id(i, j): "Z" for j in range(cpx.Ly)})
            yield Pauli.from_letters(self.n, {cpx.h_edge_id(i, j): "X" for j in range(cpx.Ly)})

    def _complete(self, vecs: List[int]) -> List[Pauli]:
        """Extend the local group to a pure state (geometric loops first)."""
        need = self.n - self.local_rank
        if need == 0:
            return []
        basis = gf2.Basis()
        for v in vecs:
            basis.add(v)
        chosen: List[Pauli] = []
        gens = [g.pauli for g in self.local_gens]

        def commutes_all(p: Pauli) -> bool:
            return all(p.sym_product(g) == 0 for g in gens) and all(
                p.sym_product(c) == 0 for c in chosen
            )

        for cand in self._loop_candidates():
            if len(chosen) == need:
                return chosen
            if commutes_all(cand) and basis.add(cand.vector()):
                chosen.append(cand)
        # algebraic fallback: centralizer vectors, canonical +1 signs
        constraint_rows = [((g.z << self.n) | g.x) for g in gens] + [
            ((c.z << self.n) | c.x) for c in chosen
        ]
        for v in gf2.nullspace(constraint_rows, 2 * self.n):
            if len(chosen) == need:
                break
            x, z = v >> self.n, v & ((1 << self.n) - 1)
            cand = Pauli(self.n, x, z, (x & z).bit_count() & 3)
            if commutes_all(cand) and basis.add(cand.vector()):
                chosen.append(cand)
                constraint_rows.append((cand.z << self.n) | cand.x)
        if len(chosen) != need:
            raise DefectError("could not purify the reference state")
        return chosen

    # -- state access --------------------------------------------------------

    @property
    def state(self) -> StabilizerElement:
        if self._state is None:
            self._state = StabilizerElement(
                range(self.n),
                [g.pauli for g in self.local_gens] + list(self.completion),
                check=False,
            )
            assert self._state.is_pure(), "reference state must be pure"
        return self._state

    def entropy(self, region: Iterable[int]) -> EntropyValue:
        return self.state.entropy(region)

    def entropy_bits(self, region: Iterable[int]) -> int:
        return self.state.entropy_bits(region)

    def local_generators_touching(self, qubits: FrozenSet[int]) -> List[LocalGenerator]:
        out = []
        for g in self.local_gens:
            if any((q in qubits) for q in g.pauli.support_qubits()):
                out.append(g)
        return out

    def to_dict(self) -> dict:
        return {
            "geometry": self.complex.geometry,
            "Lx": self.complex.Lx,
            "Ly": self.complex.Ly,
            "local_generators": [
                {"kind": g.kind, "center": list(g.center), **g.pauli.to_dict()}
                for g in self.local_gens
            ],
            "completion": [p.to_dict() for p in self.completion],
            "defects": [
                {
                    "twist1": list(d.twist1),
                    "twist2": list(d.twist2),
                    "removed": [list(r) for r in d.removed],
                }
                for d in self.defects
            ],
        }


# ---------------------------------------------------------------------------
# model builders


def toric_code(complex: CellComplex) -> StabilizerContext:
    """Stars (X) on vertices, plaquettes (Z) on faces.

    On the torus two generators are dependent and the context records a
    4-dimensional ground space before purification; the planar patch carries
    truncated boundary stars and is pure outright.
    """
    cpx = complex
    n = cpx.n_edges
    gens: List[LocalGenerator] = []
    for vid in range(cpx.n_vertices):
        edges = cpx.vertex_edges(vid)
        i, j = cpx.vertex_coord(vid)
        gens.append(
            LocalGenerator(
                Pauli.from_letters(n, {e: "X" for e in edges}), "star", (2 * i, 2 * j)
            )
        )
    for fi, fj in cpx.all_faces():
        edges = cpx.face_edges(fi, fj)
        gens.append(
            LocalGenerator(
                Pauli.from_letters(n, {e: "Z" for e in edges}),
                "plaquette",
                (2 * fi + 1, 2 * fj + 1),
            )
        )
    return StabilizerContext(cpx, gens, check=False)


def _is_qubit_coord(p: Coord) -> bool:
    return (p[0] + p[1]) % 2 == 1


def _flavor_of_center(p: Coord) -> str:
    if p[0] % 2 == 0 and p[1] % 2 == 0:
        return "X"
    if p[0] % 2 == 1 and p[1] % 2 == 1:
        return "Z"
    raise DefectError(f"{p} is not a stabilizer center")


def insert_dislocation_pair(ctx: StabilizerContext, site1: Coord, site2: Coord) -> StabilizerContext:
    """Re-glue the lattice along a diagonal, creating two e<->m twists.

    ``site1`` and ``site2`` are doubled coordinates of the two twist qubits;
    they must lie on a common (1,1) diagonal with separation >= 4.  The
    qubits strictly between them are pinned out of the code, the flanking
    stars and plaquettes are merged pairwise across the cut into mixed
    4-body cells, and the两 end cells become 5-body cells with a Y on the
    twist qubit.
    """
    cpx = ctx.complex
    t1, t2 = tuple(site1), tuple(site2)
    if not (_is_qubit_coord(t1) and _is_qubit_coord(t2)):
        raise DefectError("twist sites must be qubit (edge midpoint) positions")
    gap = t2[0] - t1[0]
    if gap < 0:
        t1, t2 = t2, t1
        gap = -gap
    if t2[1] - t1[1] != gap:
        raise DefectError("twist sites must lie on a common (1,1) diagonal")
    if gap < 4:
        raise DefectError("twist sites too close: need separation >= 4 cells")
    m = gap - 1  # number of pinned qubits strictly between
    removed = [(t1[0] + k, t1[1] + k) for k in range(1, gap)]
    if cpx.geometry == "planar":
        for p in [t1, t2] + removed:
            x, y = p
            if not (4 <= x <= 2 * cpx.Lx - 4 and 4 <= y <= 2 * cpx.Ly - 4):
                raise DefectError("defect line touches the region boundary")

    d = (1, 1)
    upper = [(t1[0] + j, t1[1] + j + 1) for j in range(0, m + 2)]   # u_j
    lower = [(t1[0] + j + 1, t1[1] + j) for j in range(0, m + 2)]   # w_j
    dead_centers = set(upper) | set(lower)

    def wrapped_center(p: Coord) -> Coord:
        if cpx.geometry == "torus":
            return (p[0] % (2 * cpx.Lx), p[1] % (2 * cpx.Ly))
        return p

    kept: List[LocalGenerator] = []
    for g in ctx.local_gens:
        if g.kind in ("star", "plaquette") and wrapped_center(g.center) in {
            wrapped_center(c) for c in dead_centers
        }:
            continue
        if g.kind in ("defect_cell", "pin"):
            raise DefectError("context already carries a defect; compose manually")
        kept.append(g)

    n = ctx.n
    removed_set = {wrapped_center(p) for p in removed}

    def remnant_letters(center: Coord) -> Dict[int, str]:
        flavor = _flavor_of_center(wrapped_center(center))
        out: Dict[int, str] = {}
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            q = (center[0] + dx, center[1] + dy)
            if wrapped_center(q) in removed_set:
                continue
            out[cpx.edge_at(q)] = flavor
        return out

    new_cells: List[LocalGenerator] = []
    for j in range(0, m + 2):
        a = remnant_letters(upper[j])
        b = remnant_letters(lower[j])
        letters: Dict[int, str] = dict(a)
        for e, fl in b.items():
            if e in letters:
                # shared twist qubit: X and Z overlap -> Y
                letters[e] = "Y"
            else:
                letters[e] = fl
        new_cells.append(
            LocalGenerator(Pauli.from_letters(n, letters), "defect_cell", wrapped_center(upper[j]))
        )
    pins = [
        LocalGenerator(Pauli.from_letters(n, {cpx.edge_at(p): "Z"}), "pin", wrapped_center(p))
        for p in removed
    ]
    pair = DefectPair(wrapped_center(t1), wrapped_center(t2), tuple(wrapped_center(p) for p in removed))

    # The merged cells inherit one global dependency from the star/plaquette
    # products; with all-(+1) signs it can multiply to -identity, in which
    # case the other fusion channel of the twist pair is the consistent one.
    def consistent(cells: List[LocalGenerator]) -> bool:
        try:
            StabilizerElement(range(n), [g.pauli for g in kept + cells + pins], check=False)
            return True
        except InconsistentGroupError:
            return False

    if not consistent(new_cells):
        flipped = LocalGenerator(new_cells[0].pauli.negate(), "defect_cell", new_cells[0].center)
        new_cells = [flipped] + new_cells[1:]
        if not consistent(new_cells):
            raise DefectError("could not fix defect-cell signs")
    return StabilizerContext(cpx, kept + new_cells + pins, ctx.defects + (pair,), check=True)


# ---------------------------------------------------------------------------
# entropy combinations on anything with .entropy()


def entropy(state, region: Iterable[int]) -> EntropyValue:
    return state.entropy(frozenset(region))


def delta(state, partition: Dict[str, Iterable[int]]) -> EntropyValue:
    return delta_value(state, partition)


def cmi(state, A: Iterable[int], B: Iterable[int], C: Iterable[int]) -> EntropyValue:
    return cmi_value(state, A, B, C)


# ---------------------------------------------------------------------------
# axioms


@dataclass(frozen=True)
class BallCheck:
    vertex: int
    axiom: str
    value: EntropyValue
    contains_defect: bool


@dataclass
class AxiomReport:
    radius: int
    checks: List[BallCheck] = field(default_factory=list)

    @property
    def violations(self) -> List[BallCheck]:
        return [c for c in self.checks if not c.value.is_zero()]

    @property
    def ok(self) -> bool:
        return not self.violations

    def violations_only_at_defects(self) -> bool:
        return all(c.contains_defect for c in self.violations)

    def to_dict(self) -> dict:
        return {
            "radius": self.radius,
            "n_checks": len(self.checks),
            "violations": [
                {
                    "vertex": c.vertex,
                    "axiom": c.axiom,
                    "twice_bits": c.value.twice_bits,
                    "contains_defect": c.contains_defect,
                }
                for c in self.violations
            ],
        }


def verify_axioms(ctx: StabilizerContext, radius: int = 2) -> AxiomReport:
    """Check A0 and A1 on every ball of the given radius.

    A0: Delta(B,C) = 0 with C the radius-(r-1) ball and B the surrounding
    shell out to radius r.  A1: Delta(B,C,D) = 0 with concentric shells
    B = ball(r-1), C = shell to r, D = shell to r+1.  Violations are data:
    the report lists them with locations.
    """
    if radius < 2:
        raise LatticeError("radius below coarse-graining scale (need >= 2)")
    cpx = ctx.complex
    state = ctx.state
    marker_edges = set()
    for pair in ctx.defects:
        marker_edges.update(pair.marker_edges(cpx))
        marker_edges.update(cpx.edge_at(p) for p in pair.removed)
    report = AxiomReport(radius)
    for vid in range(cpx.n_vertices):
        if cpx.geometry == "planar":
            i, j = cpx.vertex_coord(vid)
            r = radius + 1
            if not (r <= i <= cpx.Lx - r and r <= j <= cpx.Ly - r):
                continue
        inner = cpx.ball_edges(vid, radius - 1)
        mid = cpx.ball_edges(vid, radius)
        outer = cpx.ball_edges(vid, radius + 1)
        shell1 = mid - inner
        shell2 = outer - mid
        has_defect = bool(outer & marker_edges)
        a0 = delta_value(state, {"B": shell1, "C": inner})
        a1 = delta_value(state, {"B": inner, "C": shell1, "D": shell2})
        report.checks.append(BallCheck(vid, "A0", a0, has_defect))
        report.checks.append(BallCheck(vid, "A1", a1, has_defect))
    return report
