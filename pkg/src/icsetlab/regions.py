"""Enumeration of convex sets for embedded regions of a stabilizer context,
plus canonical detector loops, quantum dimensions and the Abelian criterion.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import gf2
from .elements import StabilizerElement, cmi_value, delta_value
from .icset import ConvexSetDescription, ConvexSetError, build_convex_set
from .lattice import CellComplex, Region, annulus_partition
from .pauli import Pauli
from .stabilizer import StabilizerContext
from .values import EntropyValue


def diamond_loop_edges(cpx: CellComplex, center: int, k: int) -> List[int]:
    """Closed staircase cycle at graph radius k around a center vertex."""
    ci, cj = cpx.vertex_coord(center)
    verts: List[Tuple[int, int]] = []
    x, y = ci + k, cj
    quads = (((-1, 0), (0, 1)), ((0, -1), (-1, 0)), ((1, 0), (0, -1)), ((0, 1), (1, 0)))
    for d1, d2 in quads:
        for _ in range(k):
            verts.append((x, y))
            x, y = x + d1[0], y + d1[1]
            verts.append((x, y))
            x, y = x + d2[0], y + d2[1]
    edges = []
    for i in range(len(verts)):
        a = verts[i]
        b = verts[(i + 1) % len(verts)]
        mid = (a[0] + b[0], a[1] + b[1])  # doubled coords of midpoint
        edges.append(cpx.edge_at(mid))
    return edges


def annulus_detectors(ctx: StabilizerContext, region: Region) -> List[Tuple[str, Pauli]]:
    """Canonical wrapping detectors of a diamond annulus.

    The e detector is the product of stars over the hole (X on all edges at
    the innermost level); the m detector is a Z staircase loop one level out.
    Both wind the annulus once and commute with every local generator away
    from defects.  Near a defect wall they may fail to commute, in which
    case no geometric hints are returned and sectors get generic names.
    """
    cpx = ctx.complex
    center = region.meta["center"]
    r_in = region.meta["r_in"]
    level = r_in + 1
    e_edges = [e for e in region.qubits if cpx.edge_level(center, e) == level]
    e_det = Pauli.from_letters(ctx.n, {e: "X" for e in e_edges})
    m_edges = diamond_loop_edges(cpx, center, min(level + 1, region.meta["r_out"]))
    if not set(m_edges) <= region.qubits:
        m_edges = diamond_loop_edges(cpx, center, level)
    m_det = Pauli.from_letters(ctx.n, {e: "Z" for e in m_edges})
    hints = []
    for name, det in (("e_detector", e_det), ("m_detector", m_det)):
        if all(det.sym_product(g.pauli) == 0 for g in ctx.local_gens):
            hints.append((name, det))
    if len(hints) < 2:
        return []
    return hints


def _restricted(p: Pauli, qubit_ids: Sequence[int], index: Dict[int, int]) -> Pauli:
    """Forget the off-region action of a Pauli, reindexed to the region."""
    x = z = 0
    for q in p.support_qubits():
        i = index.get(q)
        if i is None:
            continue
        x |= ((p.x >> q) & 1) << i
        z |= ((p.z >> q) & 1) << i
    return Pauli(len(qubit_ids), x, z, (x & z).bit_count() & 3)


def enumerate_embedded(
    ctx: StabilizerContext, region: Region, hints: str = "auto"
) -> ConvexSetDescription:
    """Information convex set of an embedded region.

    The local group is every reference generator supported inside the
    region; the constraint group is every generator touching it (extension
    stability: a state must stay consistent when the region grows by a
    collar, which is what kills boundary-ending string operators).
    """
    qubit_ids = tuple(sorted(region.qubits))
    index = {q: i for i, q in enumerate(qubit_ids)}
    qset = region.qubits
    inside: List[Pauli] = []
    touching: List[Pauli] = []
    for g in ctx.local_gens:
        supp = g.pauli.support_qubits()
        inter = sum(1 for q in supp if q in qset)
        if inter == 0:
            continue
        touching.append(_restricted(g.pauli, qubit_ids, index))
        if inter == len(supp):
            inside.append(g.pauli.restrict(qubit_ids))
    detector_hints: List[Tuple[str, Pauli]] = []
    if hints == "auto" and region.meta.get("kind") == "annulus":
        for name, det in annulus_detectors(ctx, region):
            detector_hints.append((name, det.restrict(qubit_ids)))
    elif hints == "defect_annulus":
        pass  # center reps get sigma+/- names below
    desc = build_convex_set(
        qubit_ids,
        inside,
        touching,
        detector_hints=detector_hints or None,
        region_meta=dict(region.meta) | {"kind": region.meta.get("kind", "region")},
    )
    if not detector_hints and desc.n_sectors == 2 and len(desc.central_reps) == 1:
        # defect-surrounding annulus: name by the single mixed-flavor detector
        from .icset import SectorLabel

        rep = desc.central_reps[0]
        for i, (lab, pt) in enumerate(zip(desc.labels, desc.extreme_points)):
            sig = pt.expectation(rep)
            desc.labels[i] = SectorLabel("sigma+" if sig == 1 else "sigma-", lab.characters)
        desc.detector_names = ["f_detector"]
    return desc


# ---------------------------------------------------------------------------
# quantum dimensions and the Abelian criterion

SCHEME_NORMALIZATION = {
    "inner": ("delta", 2),
    "outer": ("delta", 2),
    "boundary_split": ("delta", 4),
    "separated": ("cmi", 2),
}


def scheme_value(point: StabilizerElement, parts: Dict[str, FrozenSet[int]], scheme: str) -> EntropyValue:
    kind, _ = SCHEME_NORMALIZATION[scheme]
    if kind == "delta":
        return delta_value(point, parts)
    return cmi_value(point, parts["A"], parts["B"], parts["C"])


def quantum_dimension(
    point: StabilizerElement, region: Region, scheme: str = "boundary_split"
) -> EntropyValue:
    """ln d of an extreme point from one partition scheme of its annulus."""
    if scheme not in SCHEME_NORMALIZATION:
        raise ConvexSetError(f"unknown scheme {scheme!r}")
    parts = annulus_partition(region, scheme)
    val = scheme_value(point, parts, scheme)
    _, denom = SCHEME_NORMALIZATION[scheme]
    return val.exact_div(denom)


def quantum_dimension_report(
    point: StabilizerElement, region: Region
) -> Dict[str, EntropyValue]:
    """ln d from all four schemes; they must agree for extreme points."""
    return {s: quantum_dimension(point, region, s) for s in SCHEME_NORMALIZATION}


def is_abelian(point: StabilizerElement, region: Region) -> Tuple[bool, Dict[str, EntropyValue]]:
    """All-four-conditions Abelian test for an element of an annulus set.

    Returns the verdict plus the raw (unnormalized) value of each condition;
    the four conditions must agree all-or-none.
    """
    raw = {}
    for scheme in SCHEME_NORMALIZATION:
        parts = annulus_partition(region, scheme)
        raw[scheme] = scheme_value(point, parts, scheme)
    zeros = [v.is_zero() for v in raw.values()]
    if any(zeros) != all(zeros):
        raise ConvexSetError(f"Abelian criteria disagree: {raw}")
    return all(zeros), raw


def embedded_qdim_via_vacuum(
    desc: ConvexSetDescription,
    point: StabilizerElement,
    reference_entropy: EntropyValue,
) -> EntropyValue:
    """ln d = (S(rho^a) - S(sigma))/2 on an embedded region with a vacuum."""
    if desc.region_meta.get("contractible") is False:
        raise ConvexSetError("no canonical vacuum on a non-contractible region")
    if desc.region_meta.get("defect"):
        raise ConvexSetError("no canonical vacuum on a defect-surrounding annulus")
    full = frozenset(desc.qubit_ids)
    diff = point.entropy(full) - reference_entropy
    val = diff.exact_div(2)
    if val.twice_bits < 0:
        raise AssertionError("vacuum is not the minimum-entropy extreme point")
    return val


def max_entropy_element(desc: ConvexSetDescription) -> StabilizerElement:
    return desc.max_entropy_element()


def fusion_dim(
    desc: ConvexSetDescription,
    constraints: List[Tuple[Pauli, int]],
) -> int:
    """Dimension of the fusion space selected by detector sign constraints.

    Each constraint is (detector operator on the region universe, required
    sign).  The result counts character extensions of the center consistent
    with all constraints: 0 when inconsistent, else 2**(free directions).
    """
    n = len(desc.qubit_ids)
    reps = desc.central_reps
    full = gf2.Basis(track=True)
    paulis: List[Pauli] = []  # aligned with insertion order for solve() masks
    for p in desc.local_group + reps:
        full.add(p.vector())
        paulis.append(p)
    # linear system over character exponents x_i of the center reps
    rows: List[int] = []
    rhs: List[int] = []
    for det, sign in constraints:
        combo = full.solve(det.vector())
        if combo is None:
            return 0  # detector not fixed by any element: expectation 0
        prod = Pauli.identity(n)
        row = 0
        for k in range(combo.bit_length()):
            if (combo >> k) & 1:
                p = paulis[k]
                prod = prod * p
                if p in reps:
                    row ^= 1 << reps.index(p)
        base_sign = 1 if prod.phase == det.phase else -1
        want = 0 if sign == base_sign else 1
        rows.append(row)
        rhs.append(want)
    # solve rows . x = rhs over GF(2)
    m = len(reps)
    aug = []
    for row, b in zip(rows, rhs):
        aug.append(row | (b << m))
    basis = gf2.Basis()
    rank_a = 0
    for row in rows:
        if basis.add(row):
            rank_a += 1
    basis_aug = gf2.Basis()
    rank_aug = 0
    for row in aug:
        if basis_aug.add(row):
            rank_aug += 1
    if rank_aug > rank_a:
        return 0
    return 2 ** (m - rank_a)
