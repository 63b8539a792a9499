"""Square-lattice cell complexes, regions, partitions and lattice curves.

Qubits live on edges (toric-code convention).  A "doubled coordinate" system
is used throughout: vertex (i, j) sits at (2i, 2j), the horizontal edge east
of it at (2i+1, 2j), the vertical edge north of it at (2i, 2j+1) and the face
northeast of it at (2i+1, 2j+1).  Stabilizer centers (vertices and faces) are
then exactly the points with even coordinate sum, qubits the points with odd
coordinate sum, which makes defect-line geometry uniform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

Coord = Tuple[int, int]


class LatticeError(ValueError):
    pass


class CellComplex:
    """Square lattice on a torus or a bounded planar patch.

    ``Lx`` and ``Ly`` count faces in each direction.  On the torus both
    directions wrap; the planar patch keeps a full boundary row/column of
    vertices and edges.
    """

    def __init__(self, geometry: str, Lx: int, Ly: int) -> None:
        if geometry not in ("torus", "planar"):
            raise LatticeError(f"unknown geometry {geometry!r}")
        if Lx < 4 or Ly < 4:
            raise LatticeError("lattice too small to host radius-2 balls (need Lx, Ly >= 4)")
        self.geometry = geometry
        self.Lx = Lx
        self.Ly = Ly
        if geometry == "torus":
            self.n_vertices = Lx * Ly
            self.n_faces = Lx * Ly
            self.n_h = Lx * Ly
            self.n_v = Lx * Ly
        else:
            self.n_vertices = (Lx + 1) * (Ly + 1)
            self.n_faces = Lx * Ly
            self.n_h = Lx * (Ly + 1)
            self.n_v = (Lx + 1) * Ly
        self.n_edges = self.n_h + self.n_v

    # -- id <-> coordinate maps -------------------------------------------

    def wrap_vertex(self, i: int, j: int) -> Coord:
        if self.geometry == "torus":
            return (i % self.Lx, j % self.Ly)
        if not (0 <= i <= self.Lx and 0 <= j <= self.Ly):
            raise LatticeError(f"vertex {(i, j)} outside planar patch")
        return (i, j)

    def vertex_id(self, i: int, j: int) -> int:
        i, j = self.wrap_vertex(i, j)
        if self.geometry == "torus":
            return j * self.Lx + i
        return j * (self.Lx + 1) + i

    def vertex_coord(self, vid: int) -> Coord:
        w = self.Lx if self.geometry == "torus" else self.Lx + 1
        return (vid % w, vid // w)

    def h_edge_id(self, i: int, j: int) -> int:
        """Edge from vertex (i,j) to (i+1,j)."""
        if self.geometry == "torus":
            return (j % self.Ly) * self.Lx + (i % self.Lx)
        if not (0 <= i < self.Lx and 0 <= j <= self.Ly):
            raise LatticeError(f"h-edge {(i, j)} outside planar patch")
        return j * self.Lx + i

    def v_edge_id(self, i: int, j: int) -> int:
        """Edge from vertex (i,j) to (i,j+1)."""
        if self.geometry == "torus":
            return self.n_h + (j % self.Ly) * self.Lx + (i % self.Lx)
        if not (0 <= i <= self.Lx and 0 <= j < self.Ly):
            raise LatticeError(f"v-edge {(i, j)} outside planar patch")
        return self.n_h + j * (self.Lx + 1) + i

    def edge_center(self, eid: int) -> Coord:
        """Doubled coordinates of the edge midpoint."""
        if eid < self.n_h:
            w = self.Lx
            i, j = eid % w, eid // w
            return (2 * i + 1, 2 * j)
        eid -= self.n_h
        w = self.Lx if self.geometry == "torus" else self.Lx + 1
        i, j = eid % w, eid // w
        return (2 * i, 2 * j + 1)

    def edge_at(self, doubled: Coord) -> int:
        """Edge id from doubled midpoint coordinates (wrapped on the torus)."""
        x, y = doubled
        if self.geometry == "torus":
            x %= 2 * self.Lx
            y %= 2 * self.Ly
        if x % 2 == 1 and y % 2 == 0:
            return self.h_edge_id(x // 2, y // 2)
        if x % 2 == 0 and y % 2 == 1:
            return self.v_edge_id(x // 2, y // 2)
        raise LatticeError(f"{doubled} is not an edge midpoint")

    def has_edge_at(self, doubled: Coord) -> bool:
        try:
            self.edge_at(doubled)
            return True
        except LatticeError:
            return False

    # -- adjacency ---------------------------------------------------------

    def edge_endpoints(self, eid: int) -> Tuple[int, int]:
        x, y = self.edge_center(eid)
        if x % 2 == 1:
            return (self.vertex_id(x // 2, y // 2), self.vertex_id(x // 2 + 1, y // 2))
        return (self.vertex_id(x // 2, y // 2), self.vertex_id(x // 2, y // 2 + 1))

    def vertex_edges(self, vid: int) -> List[int]:
        """Edges incident to the vertex (the star support)."""
        i, j = self.vertex_coord(vid)
        out = []
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            p = (2 * i + dx, 2 * j + dy)
            if self.geometry == "torus" or self._edge_in_patch(p):
                out.append(self.edge_at(p))
        return out

    def face_edges(self, fi: int, fj: int) -> List[int]:
        """Edges around face (fi, fj); face center doubled = (2fi+1, 2fj+1)."""
        cx, cy = 2 * fi + 1, 2 * fj + 1
        out = []
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            out.append(self.edge_at((cx + dx, cy + dy)))
        return out

    def _edge_in_patch(self, p: Coord) -> bool:
        x, y = p
        if x < 0 or y < 0:
            return False
        if x % 2 == 1 and y % 2 == 0:
            return x // 2 < self.Lx and y // 2 <= self.Ly
        if x % 2 == 0 and y % 2 == 1:
            return x // 2 <= self.Lx and y // 2 < self.Ly
        return False

    def all_faces(self) -> Iterable[Coord]:
        for j in range(self.Ly):
            for i in range(self.Lx):
                yield (i, j)

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    # -- metric ------------------------------------------------------------

    def wrap_delta(self, d: int, period: int) -> int:
        """Signed displacement folded into (-period/2, period/2]."""
        d %= period
        if d > period // 2:
            d -= period
        return d

    def vertex_distance(self, v1: int, v2: int) -> int:
        x1, y1 = self.vertex_coord(v1)
        x2, y2 = self.vertex_coord(v2)
        dx, dy = x2 - x1, y2 - y1
        if self.geometry == "torus":
            dx = min(abs(dx) % self.Lx, self.Lx - abs(dx) % self.Lx)
            dy = min(abs(dy) % self.Ly, self.Ly - abs(dy) % self.Ly)
            return dx + dy
        return abs(dx) + abs(dy)

    def edge_level(self, center_vid: int, eid: int) -> int:
        """max of endpoint distances from the center vertex."""
        a, b = self.edge_endpoints(eid)
        return max(self.vertex_distance(center_vid, a), self.vertex_distance(center_vid, b))

    def ball_edges(self, center_vid: int, radius: int) -> FrozenSet[int]:
        """Edges with both endpoints within graph distance ``radius``."""
        out = set()
        ci, cj = self.vertex_coord(center_vid)
        for eid in self._edges_near(ci, cj, radius + 1):
            if self.edge_level(center_vid, eid) <= radius:
                out.add(eid)
        return frozenset(out)

    def _edges_near(self, ci: int, cj: int, span: int) -> Iterable[int]:
        for dj in range(-span, span + 1):
            for di in range(-span, span + 1):
                for kind in ("h", "v"):
                    i, j = ci + di, cj + dj
                    try:
                        yield self.h_edge_id(i, j) if kind == "h" else self.v_edge_id(i, j)
                    except LatticeError:
                        continue

    def edge_displacement(self, center_vid: int, eid: int) -> Tuple[int, int]:
        """Doubled-coordinate displacement of the edge midpoint from the center."""
        ci, cj = self.vertex_coord(center_vid)
        ex, ey = self.edge_center(eid)
        dx, dy = ex - 2 * ci, ey - 2 * cj
        if self.geometry == "torus":
            dx = self.wrap_delta(dx, 2 * self.Lx)
            dy = self.wrap_delta(dy, 2 * self.Ly)
        return dx, dy


def build_lattice(geometry: str, Lx: int, Ly: int) -> CellComplex:
    return CellComplex(geometry, Lx, Ly)


# ---------------------------------------------------------------------------
# regions


@dataclass(frozen=True)
class Region:
    """A set of qubits (edge ids) with optional named sub-blocks."""

    complex: CellComplex
    qubits: FrozenSet[int]
    blocks: Dict[str, FrozenSet[int]] = field(default_factory=dict)
    meta: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        union = set()
        for name, block in self.blocks.items():
            if union & block:
                raise LatticeError(f"block {name!r} overlaps another block")
            if not block <= self.qubits:
                raise LatticeError(f"block {name!r} leaves the region")
            union |= block
        if self.blocks and union != set(self.qubits):
            raise LatticeError("blocks do not cover the region")

    def block(self, name: str) -> FrozenSet[int]:
        try:
            return self.blocks[name]
        except KeyError:
            raise LatticeError(f"region has no block named {name!r}") from None

    def union_blocks(self, names: str) -> FrozenSet[int]:
        out: set = set()
        for ch in names:
            out |= self.block(ch)
        return frozenset(out)

    def with_blocks(self, blocks: Dict[str, FrozenSet[int]]) -> "Region":
        return Region(self.complex, self.qubits, dict(blocks), dict(self.meta))

    def to_dict(self) -> dict:
        return {
            "qubits": sorted(self.qubits),
            "blocks": {k: sorted(v) for k, v in sorted(self.blocks.items())},
            "meta": {k: v for k, v in sorted(self.meta.items()) if isinstance(v, (int, str, bool))},
        }


def make_annulus(
    complex: CellComplex,
    center: int,
    r_in: int,
    r_out: int,
    expect_contractible: bool = True,
) -> Region:
    """Diamond annulus of edges at levels r_in+1..r_out around a center vertex.

    The two boundary sub-blocks are recorded.  On the torus an annulus whose
    outer radius wraps a non-contractible cycle is flagged in ``meta`` rather
    than rejected.
    """
    if not (1 <= r_in < r_out):
        raise LatticeError("need 1 <= r_in < r_out")
    cpx = complex
    big = cpx.ball_edges(center, r_out)
    hole = cpx.ball_edges(center, r_in)
    qubits = big - hole
    if not qubits:
        raise LatticeError("empty annulus")
    wraps = False
    if cpx.geometry == "torus" and 2 * r_out >= min(cpx.Lx, cpx.Ly):
        wraps = True
    if wraps and expect_contractible:
        # flagged, not fatal: callers may want wrapping annuli on the torus
        pass
    inner = frozenset(e for e in qubits if cpx.edge_level(center, e) == r_in + 1)
    outer = frozenset(e for e in qubits if cpx.edge_level(center, e) == r_out)
    return Region(
        cpx,
        qubits,
        {},
        {
            "kind": "annulus",
            "center": center,
            "r_in": r_in,
            "r_out": r_out,
            "contractible": not wraps,
            "inner_boundary": inner,
            "outer_boundary": outer,
        },
    )


def annulus_levels(region: Region) -> List[FrozenSet[int]]:
    """Edge levels of a diamond annulus from the inner boundary outward."""
    cpx = region.complex
    center = region.meta["center"]
    r_in, r_out = region.meta["r_in"], region.meta["r_out"]
    levels = []
    for lv in range(r_in + 1, r_out + 1):
        levels.append(frozenset(e for e in region.qubits if cpx.edge_level(center, e) == lv))
    return levels


def _angular_half(region: Region, edges: Iterable[int]) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """Split a set of edges into north/south arcs around the annulus center."""
    cpx = region.complex
    center = region.meta["center"]
    north, south = set(), set()
    for e in edges:
        dx, dy = cpx.edge_displacement(center, e)
        if dy > 0 or (dy == 0 and dx > 0):
            north.add(e)
        else:
            south.add(e)
    return frozenset(north), frozenset(south)


def annulus_partition(region: Region, scheme: str) -> Dict[str, FrozenSet[int]]:
    """Named partitions of a diamond annulus.

    Schemes:
      ``inner``           B,C = two innermost levels, D = rest.
      ``outer``           B,C = two outermost levels, D = rest.
      ``boundary_split``  B,D = north/south arcs of both boundary levels,
                          C = everything between (B and D are each two disks).
      ``separated``       A = inner level, C = outer level, B = middle.
      ``levin_wen``       A,C = north/south arcs, B = east+west arcs.
    """
    levels = annulus_levels(region)
    if len(levels) < 3:
        raise LatticeError(f"annulus too thin for scheme {scheme!r}")
    if scheme == "inner":
        return {"B": levels[0], "C": levels[1], "D": frozenset().union(*levels[2:])}
    if scheme == "outer":
        return {"B": levels[-1], "C": levels[-2], "D": frozenset().union(*levels[:-2])}
    if scheme == "boundary_split":
        n_in, s_in = _angular_half(region, levels[0])
        n_out, s_out = _angular_half(region, levels[-1])
        mid = frozenset().union(*levels[1:-1])
        return {"B": n_in | n_out, "C": mid, "D": s_in | s_out}
    if scheme == "separated":
        return {"A": levels[0], "B": frozenset().union(*levels[1:-1]), "C": levels[-1]}
    if scheme == "levin_wen":
        cpx = region.complex
        center = region.meta["center"]
        a, b, c = set(), set(), set()
        for e in region.qubits:
            dx, dy = cpx.edge_displacement(center, e)
            if dy > 0 and dy >= abs(dx):
                a.add(e)
            elif dy < 0 and -dy >= abs(dx):
                c.add(e)
            else:
                b.add(e)
        return {"A": frozenset(a), "B": frozenset(b), "C": frozenset(c)}
    raise LatticeError(f"unknown partition scheme {scheme!r}")


# ---------------------------------------------------------------------------
# lattice curves

DIRS = {"E": (1, 0), "N": (0, 1), "W": (-1, 0), "S": (0, -1)}


def _cross(d1: Coord, d2: Coord) -> int:
    return d1[0] * d2[1] - d1[1] * d2[0]


class CurveError(LatticeError):
    pass


@dataclass(frozen=True)
class LatticeCurve:
    """Closed vertex path on the lattice, encoded by its start and unit steps."""

    complex: CellComplex
    start: Coord
    steps: Tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.steps) < 4:
            raise CurveError("curve too short")
        dx = sum(DIRS[s][0] for s in self.steps)
        dy = sum(DIRS[s][1] for s in self.steps)
        cpx = self.complex
        if cpx.geometry == "torus":
            if dx % cpx.Lx or dy % cpx.Ly:
                raise CurveError("open curve: steps do not close up")
        elif dx or dy:
            raise CurveError("open curve: steps do not close up")

    @property
    def winding(self) -> Coord:
        """Net winding (wx, wy) around the torus; (0, 0) when contractible."""
        dx = sum(DIRS[s][0] for s in self.steps)
        dy = sum(DIRS[s][1] for s in self.steps)
        cpx = self.complex
        if cpx.geometry == "torus":
            return (dx // cpx.Lx, dy // cpx.Ly)
        return (0, 0)

    def vertices(self) -> List[Coord]:
        """Visited vertices (unwrapped), one per step, starting at ``start``."""
        out = [self.start]
        x, y = self.start
        for s in self.steps[:-1]:
            dx, dy = DIRS[s]
            x, y = x + dx, y + dy
            out.append((x, y))
        return out

    def directions(self) -> List[Coord]:
        return [DIRS[s] for s in self.steps]

    def validate_smooth(self) -> None:
        """No reversals and no two consecutive turns (sharp corners)."""
        dirs = self.directions()
        n = len(dirs)
        turns = []
        for k in range(n):
            d1, d2 = dirs[k - 1], dirs[k]
            if d1[0] == -d2[0] and d1[1] == -d2[1]:
                raise CurveError(f"reversal at step {k}")
            turns.append(_cross(d1, d2))
        for k in range(n):
            if turns[k] and turns[(k + 1) % n]:
                raise CurveError(f"sharp corner: consecutive turns at steps {k},{k + 1}")

    def self_crossings(self) -> List[Coord]:
        """Vertices visited twice with transverse directions."""
        seen: Dict[Coord, List[Coord]] = {}
        cpx = self.complex
        verts = self.vertices()
        dirs = self.directions()
        n = len(verts)
        for k in range(n):
            v = verts[k]
            if cpx.geometry == "torus":
                v = (v[0] % cpx.Lx, v[1] % cpx.Ly)
            # direction through vertex k: incoming dirs[k-1], outgoing dirs[k]
            seen.setdefault(v, []).append(dirs[k])
        out = []
        for v, ds in seen.items():
            if len(ds) == 2 and _cross(ds[0], ds[1]) != 0:
                out.append(v)
            elif len(ds) > 2:
                raise CurveError(f"vertex {v} visited more than twice")
        return sorted(out)

    def turning_number(self) -> int:
        """Signed total tangent rotation divided by 2*pi (counterclockwise > 0)."""
        dirs = self.directions()
        total = 0
        for k in range(len(dirs)):
            c = _cross(dirs[k - 1], dirs[k])
            if abs(c) > 1:
                raise CurveError("reversal has no defined turning")
            total += c
        if total % 4:
            raise CurveError("turning sum not a multiple of 4")
        return total // 4


def turning_number(curve: LatticeCurve) -> int:
    return curve.turning_number()


def rectangle_curve(complex: CellComplex, corner: Coord, width: int, height: int) -> LatticeCurve:
    """Counterclockwise rectangle; turning number +1."""
    if width < 2 or height < 2:
        raise CurveError("rectangle sides must be >= 2")
    steps = ("E",) * width + ("N",) * height + ("W",) * width + ("S",) * height
    return LatticeCurve(complex, corner, steps)


def figure8_curve(complex: CellComplex, crossing: Coord, lobe: int = 3) -> LatticeCurve:
    """Standard figure-8: two square lobes of side ``lobe`` crossing at a vertex.

    The first lobe is traversed counterclockwise, the second clockwise, so the
    total turning number is 0 and there is exactly one transverse crossing.
    """
    if lobe < 3:
        raise CurveError("lobe side must be >= 3 to keep corners isolated")
    steps = (
        ("E",) * lobe + ("N",) * lobe + ("W",) * lobe + ("S",) * lobe
        + ("S",) * lobe + ("W",) * lobe + ("N",) * lobe + ("E",) * lobe
    )
    return LatticeCurve(complex, crossing, steps)


def doubled_loop_angle_walk(curve: LatticeCurve) -> float:
    """Independent turning computation: accumulate tangent angle differences."""
    dirs = curve.directions()
    total = 0.0
    for k in range(len(dirs)):
        a1 = math.atan2(dirs[k - 1][1], dirs[k - 1][0])
        a2 = math.atan2(dirs[k][1], dirs[k][0])
        d = a2 - a1
        while d > math.pi:
            d -= 2 * math.pi
        while d < -math.pi:
            d += 2 * math.pi
        total += d
    return total / (2 * math.pi)


# ---------------------------------------------------------------------------
# elementary deformations of embedded annuli


@dataclass(frozen=True)
class DeformStep:
    move: str  # extend_outer | restrict_outer | extend_inner | restrict_inner

    def inverse(self) -> "DeformStep":
        pairs = {
            "extend_outer": "restrict_outer",
            "restrict_outer": "extend_outer",
            "extend_inner": "restrict_inner",
            "restrict_inner": "extend_inner",
        }
        return DeformStep(pairs[self.move])


@dataclass
class DeformationLog:
    steps: List[DeformStep] = field(default_factory=list)

    def append(self, step: DeformStep) -> None:
        self.steps.append(step)

    def reversed(self) -> "DeformationLog":
        return DeformationLog([s.inverse() for s in reversed(self.steps)])

    def __len__(self) -> int:
        return len(self.steps)


def elementary_deform(
    region: Region, move: str, log: Optional[DeformationLog] = None
) -> Region:
    """Apply a one-level extend/restrict move to a diamond annulus."""
    if region.meta.get("kind") != "annulus":
        raise LatticeError("elementary_deform currently supports diamond annuli")
    center = region.meta["center"]
    r_in, r_out = region.meta["r_in"], region.meta["r_out"]
    cpx = region.complex
    if move == "extend_outer":
        r_out += 1
    elif move == "restrict_outer":
        r_out -= 1
    elif move == "extend_inner":
        r_in -= 1
    elif move == "restrict_inner":
        r_in += 1
    else:
        raise LatticeError(f"unknown move {move!r}")
    if r_in < 1:
        raise LatticeError("inner radius below coarse-graining scale")
    if r_out - r_in < 2:
        raise LatticeError("move pinches the annulus (homeomorphism type would change)")
    if cpx.geometry == "torus" and 2 * (r_out + 1) > min(cpx.Lx, cpx.Ly):
        raise LatticeError("annulus would self-touch around the torus")
    new = make_annulus(cpx, center, r_in, r_out)
    if log is not None:
        log.append(DeformStep(move))
    return new
