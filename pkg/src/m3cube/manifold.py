"""Block graphs for compact aspherical 3-manifolds.

A manifold is described by its geometric decomposition: Seifert fibered and
hyperbolic blocks glued along torus ends. Curves on a torus are recorded as
slopes (primitive integer pairs) in the basis of one side; the gluing matrix
of an edge converts coordinates from the ``end_a`` side to the ``end_b`` side.

Value types here are immutable. Constructors stay permissive so that broken
graphs can be represented and reported; ``validate`` is the gatekeeper and
lists every violation it finds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import (
    EmptyCurveSystemError,
    IndexOutOfRangeError,
    ZeroVectorError,
)

GEOMETRY_LABELS = (
    "H3",
    "E3",
    "H2xR",
    "S2xR",
    "S3",
    "Sol",
    "Nil",
    "SL2R",
    "SFS-with-boundary",
)


@dataclass(frozen=True, order=True)
class Slope:
    """A primitive curve class on a torus: coprime (p, q), p > 0 or (0, 1)."""

    p: int
    q: int

    def __post_init__(self):
        if self.p == 0 and self.q == 0:
            raise ZeroVectorError("slope (0, 0) is not a curve")
        if math.gcd(self.p, self.q) != 1:
            raise ZeroVectorError(f"slope ({self.p}, {self.q}) is not primitive")
        if self.p < 0 or (self.p == 0 and self.q != 1):
            raise ZeroVectorError(f"slope ({self.p}, {self.q}) is not in normal form")

    def __str__(self):
        return f"({self.p},{self.q})"


def slope_normalize(p: int, q: int) -> Slope:
    """Reduce an integer pair to the unique normal form of its ray.

    Divides out the gcd and fixes the sign so that p > 0, or (p, q) = (0, 1).
    Raises ZeroVectorError on (0, 0).
    """
    if p == 0 and q == 0:
        raise ZeroVectorError("cannot normalize (0, 0)")
    g = math.gcd(p, q)
    p, q = p // g, q // g
    if p < 0 or (p == 0 and q < 0):
        p, q = -p, -q
    return Slope(p, q)


@dataclass(frozen=True)
class GluingMatrix:
    """Integer 2x2 change of basis between the two sides of a torus.

    Rows are [[a, b], [c, d]]; a valid gluing has determinant +1 or -1.
    The determinant is not enforced here so that invalid graphs can be
    loaded and reported by ``validate``.
    """

    a: int
    b: int
    c: int
    d: int

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def apply(self, p: int, q: int) -> tuple[int, int]:
        return (self.a * p + self.b * q, self.c * p + self.d * q)

    def inverse(self) -> "GluingMatrix":
        det = self.det
        if det not in (1, -1):
            raise ZeroVectorError(f"gluing with det {det} is not invertible over Z")
        # det is its own reciprocal when it is +-1
        return GluingMatrix(det * self.d, -det * self.b, -det * self.c, det * self.a)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


IDENTITY_GLUING = GluingMatrix(1, 0, 0, 1)


def transport_slope(s: Slope, g: GluingMatrix) -> Slope:
    """Express a slope in the basis on the far side of a gluing."""
    p, q = g.apply(s.p, s.q)
    return slope_normalize(p, q)


@dataclass(frozen=True)
class SeifertBlockData:
    """Seifert invariants of one block.

    genus is the genus of the (orientable) base surface, exceptional fibers
    are (a_j, b_j) pairs with a_j >= 2, and section_obstruction is the integer
    Euler term, meaningful only when the block is closed. Thin blocks are
    copies of T^2 x I: genus 0, two boundary tori, no exceptional fibers.
    """

    genus: int
    num_boundary: int
    exceptional: tuple[tuple[int, int], ...] = ()
    section_obstruction: int = 0
    is_thin: bool = False

    @property
    def kind(self) -> str:
        return "seifert"


@dataclass(frozen=True)
class HyperbolicBlockData:
    """A finite-volume hyperbolic block with num_boundary cusp tori.

    An optional framing lists, per boundary torus, two distinct slopes
    (a chosen pair of non-homotopic curves used downstream for walls).
    """

    num_boundary: int
    framings: tuple[tuple[Slope, Slope] | None, ...] = ()

    @property
    def kind(self) -> str:
        return "hyperbolic"


BlockData = SeifertBlockData | HyperbolicBlockData


@dataclass(frozen=True, order=True)
class TorusEnd:
    """One boundary torus of one block: (block id, boundary index)."""

    block_id: str
    boundary_index: int

    def __str__(self):
        return f"{self.block_id}.{self.boundary_index}"


@dataclass(frozen=True)
class TorusEdge:
    """A JSJ torus: two ends identified through a gluing matrix.

    ``glue`` maps curve coordinates in the ``end_a`` basis to the ``end_b``
    basis.
    """

    torus_id: str
    end_a: TorusEnd
    end_b: TorusEnd
    glue: GluingMatrix


@dataclass(frozen=True)
class ManifoldGraph:
    """Blocks plus the tori that join them.

    ``boundary_tori`` lists the ends that stay on the manifold boundary.
    ``geometry_label`` is trusted input for manifolds with no JSJ tori.
    """

    blocks: dict[str, BlockData]
    jsj_tori: tuple[TorusEdge, ...] = ()
    boundary_tori: tuple[TorusEnd, ...] = ()
    geometry_label: str | None = None

    def block_ids(self) -> list[str]:
        return sorted(self.blocks)

    def torus(self, torus_id: str) -> TorusEdge:
        for t in self.jsj_tori:
            if t.torus_id == torus_id:
                return t
        raise KeyError(torus_id)

    def ends_of(self, block_id: str) -> list[tuple[TorusEdge, str]]:
        """All JSJ ends on a block, as (edge, 'a'|'b') pairs, sorted."""
        out = []
        for t in self.jsj_tori:
            if t.end_a.block_id == block_id:
                out.append((t, "a"))
            if t.end_b.block_id == block_id:
                out.append((t, "b"))
        out.sort(key=lambda ts: (ts[0].torus_id, ts[1]))
        return out

    def neighbors(self, block_id: str) -> list[str]:
        out = set()
        for t, side in self.ends_of(block_id):
            other = t.end_b if side == "a" else t.end_a
            out.add(other.block_id)
        return sorted(out)


def fiber_slope(b: SeifertBlockData, boundary_index: int) -> Slope:
    """The regular fiber on a boundary torus, in the (section, fiber) basis."""
    if not 0 <= boundary_index < b.num_boundary:
        raise IndexOutOfRangeError(
            f"boundary index {boundary_index} out of range (block has {b.num_boundary})"
        )
    return Slope(0, 1)


@dataclass(frozen=True)
class ValidationReport:
    problems: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.problems

    def __str__(self):
        if self.ok:
            return "ok"
        return "\n".join(self.problems)


def _block_problems(block_id: str, data: BlockData) -> list[str]:
    out = []
    if isinstance(data, SeifertBlockData):
        if data.genus < 0:
            out.append(f"block {block_id}: negative genus {data.genus}")
        if data.num_boundary < 0:
            out.append(f"block {block_id}: negative boundary count")
        for a, b in data.exceptional:
            if a < 2:
                out.append(f"block {block_id}: exceptional fiber ({a},{b}) needs a >= 2")
        if data.is_thin and (
            data.genus != 0 or data.num_boundary != 2 or data.exceptional
        ):
            out.append(
                f"block {block_id}: thin block must have genus 0, two boundary tori,"
                " no exceptional fibers"
            )
    elif isinstance(data, HyperbolicBlockData):
        if data.num_boundary < 1:
            out.append(f"block {block_id}: hyperbolic block needs at least one torus end")
        if data.framings:
            if len(data.framings) != data.num_boundary:
                out.append(
                    f"block {block_id}: framing list length {len(data.framings)}"
                    f" != boundary count {data.num_boundary}"
                )
            for i, pair in enumerate(data.framings):
                if pair is not None and pair[0] == pair[1]:
                    out.append(
                        f"block {block_id}: framing {i} repeats the slope {pair[0]}"
                    )
    else:
        out.append(f"block {block_id}: unknown block data {type(data).__name__}")
    return out


def validate(m: ManifoldGraph) -> ValidationReport:
    """Check every structural invariant; the report lists all violations."""
    problems: list[str] = []

    for block_id in sorted(m.blocks):
        problems.extend(_block_problems(block_id, m.blocks[block_id]))

    seen_tori: set[str] = set()
    end_uses: dict[TorusEnd, int] = {}

    def check_end(end: TorusEnd, owner: str) -> None:
        if end.block_id not in m.blocks:
            problems.append(f"{owner}: unknown block {end.block_id}")
            return
        n = m.blocks[end.block_id].num_boundary
        if not 0 <= end.boundary_index < n:
            problems.append(
                f"{owner}: boundary index {end.boundary_index} out of range for"
                f" block {end.block_id} (has {n})"
            )
            return
        end_uses[end] = end_uses.get(end, 0) + 1

    for t in m.jsj_tori:
        if t.torus_id in seen_tori:
            problems.append(f"torus {t.torus_id}: duplicate torus id")
        seen_tori.add(t.torus_id)
        check_end(t.end_a, f"torus {t.torus_id}")
        check_end(t.end_b, f"torus {t.torus_id}")
        if t.glue.det not in (1, -1):
            problems.append(f"torus {t.torus_id}: gluing determinant {t.glue.det} is not +-1")

    for end in m.boundary_tori:
        check_end(end, f"boundary {end}")

    for end, count in sorted(end_uses.items()):
        if count > 1:
            problems.append(f"end {end}: used {count} times")
    for block_id in sorted(m.blocks):
        for i in range(m.blocks[block_id].num_boundary):
            end = TorusEnd(block_id, i)
            if end not in end_uses:
                problems.append(f"end {end}: not glued and not declared as boundary")

    if m.geometry_label is not None:
        if m.geometry_label not in GEOMETRY_LABELS:
            problems.append(f"geometry label {m.geometry_label!r} unknown")
        if m.jsj_tori:
            problems.append("geometry label given although JSJ tori are present")
        if len(m.blocks) != 1:
            problems.append("geometry label requires a single block")

    if len(m.blocks) > 1:
        reached = set()
        ids = m.block_ids()
        stack = [ids[0]]
        while stack:
            v = stack.pop()
            if v in reached:
                continue
            reached.add(v)
            stack.extend(m.neighbors(v))
        missing = [b for b in ids if b not in reached]
        if missing:
            problems.append(f"graph not connected: unreachable blocks {', '.join(missing)}")

    return ValidationReport(tuple(problems))


@dataclass(frozen=True)
class SlopeAudit:
    """Distinct slope count on one torus after transport to the end_a basis."""

    torus_id: str
    slopes: tuple[Slope, ...]
    count: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "count", len(self.slopes))

    @property
    def ok(self) -> bool:
        # two distinct slopes per torus is what the cubulation construction needs
        return self.count == 2


def audit_torus_slopes(
    m: ManifoldGraph,
    curves: dict[str, tuple[list[Slope], list[Slope]]],
) -> dict[str, SlopeAudit]:
    """Count distinct curve slopes per torus, side B transported to side A.

    ``curves[torus_id]`` holds the slopes contributed by the end_a side and
    the end_b side in their own bases. Raises EmptyCurveSystemError when a
    torus is listed with no curves at all.
    """
    out: dict[str, SlopeAudit] = {}
    for torus_id in sorted(curves):
        edge = m.torus(torus_id)
        side_a, side_b = curves[torus_id]
        if not side_a and not side_b:
            raise EmptyCurveSystemError(f"torus {torus_id} has no curves")
        back = edge.glue.inverse()
        seen = set(side_a)
        for s in side_b:
            seen.add(transport_slope(s, back))
        out[torus_id] = SlopeAudit(torus_id, tuple(sorted(seen)))
    return out
