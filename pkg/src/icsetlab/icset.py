"""Information convex sets of embedded and immersed regions.

For a stabilizer reference state the elements of Sigma(Omega) are classified
by characters of the center of the logical quotient: take the group G of
pulled-back generators fully supported in the region, the centralizer K of
every pulled-back generator that touches the region, and L = K/G.  Central
directions of L carry locked +-1 expectations (sector labels); the
symplectic pairs of L stay maximally mixed, which is what makes non-Abelian
sector dimensions emerge from entropy counting rather than by fiat.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iter_product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import gf2
from .elements import StabilizerElement, cmi_value, delta_value
from .pauli import Pauli
from .values import EntropyValue


class ConvexSetError(ValueError):
    pass


@dataclass(frozen=True)
class SectorLabel:
    name: str
    characters: Tuple[int, ...]  # +-1 per central generator

    def to_dict(self) -> dict:
        return {"name": self.name, "characters": list(self.characters)}


@dataclass
class ConvexSetDescription:
    """Enumerated information convex set of one region."""

    qubit_ids: Tuple
    local_group: List[Pauli]              # pulled-back generators inside
    central_reps: List[Pauli]             # representatives of the center of K/G
    mixed_pairs: int                      # symplectic (non-central) pair count of K/G
    extreme_points: List[StabilizerElement]
    labels: List[SectorLabel]
    detector_names: List[str]
    region_meta: Dict[str, object] = field(default_factory=dict)

    @property
    def n_sectors(self) -> int:
        return len(self.extreme_points)

    def label_of(self, element: StabilizerElement) -> SectorLabel:
        chars = tuple(element.expectation(u) for u in self.central_reps)
        for lab, pt in zip(self.labels, self.extreme_points):
            if lab.characters == chars:
                return lab
        raise ConvexSetError(f"characters {chars} not realized")

    def extreme_point(self, name: str) -> StabilizerElement:
        for lab, pt in zip(self.labels, self.extreme_points):
            if lab.name == name:
                return pt
        raise ConvexSetError(f"no sector named {name!r}")

    def max_entropy_element(self) -> StabilizerElement:
        """Uniform mixture over all extreme points: characters unfixed."""
        return StabilizerElement(self.qubit_ids, self.local_group, check=False)

    def entropies(self) -> List[EntropyValue]:
        full = frozenset(self.qubit_ids)
        return [pt.entropy(full) for pt in self.extreme_points]

    def to_dict(self) -> dict:
        full = frozenset(self.qubit_ids)
        return {
            "n_sectors": self.n_sectors,
            "mixed_pairs": self.mixed_pairs,
            "sectors": [
                {
                    **lab.to_dict(),
                    "entropy_twice_bits": pt.entropy(full).twice_bits,
                }
                for lab, pt in zip(self.labels, self.extreme_points)
            ],
            "detectors": self.detector_names,
        }


def _center_of_quotient(
    k_vectors: List[int], g_vectors: List[int], n: int
) -> Tuple[List[int], int]:
    """Vectors of K spanning the center of K/G, plus the symplectic pair count.

    Center = radical of the commutation form on K/G.  Returned vectors are
    independent modulo G; the second value counts the symplectic pairs left.
    """
    g_basis = gf2.Basis()
    for v in g_vectors:
        g_basis.add(v)
    # quotient basis: K vectors independent modulo G
    quot: List[int] = []
    span = gf2.Basis()
    for v in g_vectors:
        span.add(v)
    for v in k_vectors:
        if span.add(v):
            quot.append(v)
    if not quot:
        return [], 0
    # Gram matrix of the symplectic form on the quotient basis
    def sym(u: int, v: int) -> int:
        ux, uz = u >> n, u & ((1 << n) - 1)
        vx, vz = v >> n, v & ((1 << n) - 1)
        return ((ux & vz).bit_count() + (uz & vx).bit_count()) & 1

    m = len(quot)
    gram_rows = []
    for i in range(m):
        row = 0
        for j in range(m):
            if sym(quot[i], quot[j]):
                row |= 1 << j
        gram_rows.append(row)
    # radical: combinations x with Gram . x = 0
    kernel = gf2.nullspace(gram_rows, m)
    center = []
    for mask in kernel:
        v = 0
        for j in range(m):
            if (mask >> j) & 1:
                v ^= quot[j]
        center.append(v)
    rad_dim = len(kernel)
    pairs = (m - rad_dim) // 2
    return center, pairs


def build_convex_set(
    qubit_ids: Sequence,
    inside_generators: Iterable[Pauli],
    touching_generators: Iterable[Pauli],
    detector_hints: Optional[List[Tuple[str, Pauli]]] = None,
    region_meta: Optional[Dict[str, object]] = None,
) -> ConvexSetDescription:
    """Enumerate the information convex set on an explicit qubit universe.

    ``inside_generators`` are reference generators (or lifts) fully supported
    on the listed qubits, re-indexed to them.  ``touching_generators`` are
    all generators whose support intersects the region, kept on a wider
    universe that embeds the region as a prefix (see callers); only their
    commutation pattern on the region matters, so they are supplied already
    restricted: each as a Pauli on the same width as ``qubit_ids`` with the
    off-region action forgotten but parity bookkeeping preserved by the
    caller guaranteeing supports match.
    """
    qubit_ids = tuple(qubit_ids)
    n = len(qubit_ids)
    inside = list(inside_generators)
    touching = list(touching_generators)
    # K = Paulis on region commuting with every touching generator (on the
    # overlap).  Constraint rows act on (x<<n)|z vectors.
    rows = []
    for g in touching:
        rows.append((g.z << n) | g.x)
    k_vectors = gf2.nullspace(rows, 2 * n)
    g_vectors = [p.vector() for p in inside]
    center_vecs, mixed_pairs = _center_of_quotient(k_vectors, g_vectors, n)

    # deterministic ordering, and Hermitian +1-phase representatives
    center_vecs.sort()
    reps = []
    for v in center_vecs:
        x, z = v >> n, v & ((1 << n) - 1)
        reps.append(Pauli(n, x, z, (x & z).bit_count() & 3))

    named: List[Tuple[str, Pauli]] = []
    if detector_hints:
        # re-express hint operators in terms of the found center
        named = list(detector_hints)

    # extreme points: one per character of the center
    points: List[StabilizerElement] = []
    labels: List[SectorLabel] = []
    z_dim = len(reps)
    if z_dim > 12:
        raise ConvexSetError(f"center dimension {z_dim} too large to enumerate")
    for chars in iter_product((1, -1), repeat=z_dim):
        gens = list(inside)
        for c, rep in zip(chars, reps):
            gens.append(rep if c == 1 else rep.negate())
        points.append(StabilizerElement(qubit_ids, gens, check=False))
        labels.append(SectorLabel("", tuple(chars)))
    desc = ConvexSetDescription(
        qubit_ids=qubit_ids,
        local_group=inside,
        central_reps=reps,
        mixed_pairs=mixed_pairs,
        extreme_points=points,
        labels=labels,
        detector_names=[],
        region_meta=dict(region_meta or {}),
    )
    _attach_names(desc, named)
    _check_simplex(desc)
    return desc


def _attach_names(desc: ConvexSetDescription, hints: List[Tuple[str, Pauli]]) -> None:
    """Name sectors from detector operators when supplied.

    Hints are (name, operator) with operator in K; each extreme point gets
    the name pattern of its detector expectations, e.g. the toric-code
    convention {1, e, m, f} from (star-loop, plaquette-loop) detectors.
    """
    if not hints:
        if len(desc.labels) == 1:
            desc.labels[0] = SectorLabel("1", desc.labels[0].characters)
        else:
            for i, lab in enumerate(desc.labels):
                desc.labels[i] = SectorLabel(f"s{i}", lab.characters)
        return
    desc.detector_names = [name for name, _ in hints]
    for i, (lab, pt) in enumerate(zip(desc.labels, desc.extreme_points)):
        sig = tuple(pt.expectation(op) for _, op in hints)
        if any(s == 0 for s in sig):
            raise ConvexSetError("detector hint not fixed on an extreme point")
        name = _sector_name_from_signature(desc.detector_names, sig)
        desc.labels[i] = SectorLabel(name, lab.characters)


def _sector_name_from_signature(names: List[str], sig: Tuple[int, ...]) -> str:
    if names == ["e_detector", "m_detector"]:
        return {(1, 1): "1", (-1, 1): "e", (1, -1): "m", (-1, -1): "f"}[sig]
    if names == ["f_detector"]:
        return {(1,): "sigma+", (-1,): "sigma-"}[sig]
    bits = "".join("0" if s == 1 else "1" for s in sig)
    return f"mu{int(bits, 2) if bits else 0}"


def _check_simplex(desc: ConvexSetDescription) -> None:
    """Extreme points must be pairwise orthogonal (some sign differs)."""
    pts = desc.extreme_points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if not pts[i].orthogonal(pts[j]):
                raise ConvexSetError("extreme points not mutually orthogonal")
