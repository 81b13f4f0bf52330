"""Finite wallspaces and their dual cube complexes.

A wallspace is a finite chamber set with walls; each wall is an ordered
pair of half-spaces (U, V) covering the chambers. The halves may overlap,
but neither may contain the other: such a wall separates nothing.

The dual complex has one vertex per consistent orientation (a choice of
half per wall, all pairwise intersecting), an edge when two orientations
differ on exactly one wall, and a d-cube filled in whenever all 2^d
orientations obtained by flipping d walls from a common base are present.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cubecomplex import Cube, CubeComplex
from .errors import BudgetExceededError, InputError, NoSlopesError
from .manifold import Slope


@dataclass(frozen=True)
class Wall:
    wall_id: str
    half_u: frozenset
    half_v: frozenset

    def sides(self) -> tuple[frozenset, frozenset]:
        return (self.half_u, self.half_v)


@dataclass(frozen=True)
class Wallspace:
    chambers: tuple
    walls: tuple[Wall, ...]


def validate_wallspace(ws: Wallspace) -> list[str]:
    problems = []
    chambers = set(ws.chambers)
    if len(chambers) != len(ws.chambers):
        problems.append("repeated chamber ids")
    if not chambers:
        problems.append("no chambers")
    ids = [w.wall_id for w in ws.walls]
    if len(set(ids)) != len(ids):
        problems.append("repeated wall ids")
    for w in ws.walls:
        extra = (w.half_u | w.half_v) - chambers
        if extra:
            problems.append(f"wall {w.wall_id}: unknown chambers {sorted(map(str, extra))}")
        if w.half_u | w.half_v != chambers:
            problems.append(f"wall {w.wall_id}: halves do not cover the chambers")
        if not w.half_u or not w.half_v:
            problems.append(f"wall {w.wall_id}: empty half")
        elif w.half_u <= w.half_v or w.half_v <= w.half_u:
            problems.append(f"wall {w.wall_id}: one half contains the other")
    return problems


def walls_cross(w1: Wall, w2: Wall) -> bool:
    """Four-corner test. A wall never crosses itself (object identity)."""
    if w1 is w2:
        return False
    for a in w1.sides():
        for b in w2.sides():
            if not (a & b):
                return False
    return True


@dataclass(frozen=True)
class DualComplex:
    complex: CubeComplex
    wall_ids: tuple[str, ...]
    orientations: tuple[tuple[int, ...], ...]  # per vertex, side index per wall


def dual_cube_complex(ws: Wallspace, budget: int = 10 ** 6) -> DualComplex:
    problems = validate_wallspace(ws)
    if problems:
        raise InputError("invalid wallspace: " + "; ".join(problems))

    walls = ws.walls
    n = len(walls)
    sides = [w.sides() for w in walls]
    # compat[i][si][j][sj]: do the chosen halves intersect?
    compat = [
        [
            [
                [bool(sides[i][si] & sides[j][sj]) for sj in (0, 1)]
                for j in range(n)
            ]
            for si in (0, 1)
        ]
        for i in range(n)
    ]

    found: list[tuple[int, ...]] = []

    def extend(assigned: list[int]) -> None:
        i = len(assigned)
        if i == n:
            found.append(tuple(assigned))
            if len(found) > budget:
                raise BudgetExceededError(budget)
            return
        for si in (0, 1):
            row = compat[i][si]
            if all(row[j][assigned[j]] for j in range(i)):
                assigned.append(si)
                extend(assigned)
                assigned.pop()

    extend([])
    orientations = tuple(sorted(found))
    index = {o: k for k, o in enumerate(orientations)}

    cross = [[i != j and walls_cross(walls[i], walls[j]) for j in range(n)] for i in range(n)]

    cubes: list[Cube] = []

    def corners_for(base: tuple[int, ...], coords: tuple[int, ...]) -> list[int] | None:
        out = []
        for mask in range(2 ** len(coords)):
            o = list(base)
            for bit, wall in enumerate(coords):
                if mask & (1 << bit):
                    o[wall] = 1
            k = index.get(tuple(o))
            if k is None:
                return None
            out.append(k)
        return out

    def grow(base: tuple[int, ...], coords: tuple[int, ...], corners: list[int]) -> None:
        if coords:
            cubes.append(Cube(len(coords), tuple(corners)))
        start = coords[-1] + 1 if coords else 0
        for w in range(start, n):
            if base[w] != 0:
                continue
            if not all(cross[w][u] for u in coords):
                continue
            nxt = corners_for(base, coords + (w,))
            if nxt is not None:
                grow(base, coords + (w,), nxt)

    for o in orientations:
        grow(o, (), [index[o]])

    cx = CubeComplex(tuple(range(len(orientations))), tuple(cubes))
    return DualComplex(cx, tuple(w.wall_id for w in walls), orientations)


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def torus_line_wallspace(slopes: Sequence[Slope], window: int) -> Wallspace:
    """Chambers and walls cut out of the plane by the lines q*x - p*y = c.

    One line per slope (p, q) and each integer c with |c| <= window;
    chambers are the complementary regions, computed exactly.
    """
    if not slopes:
        raise NoSlopesError("need at least one slope")
    if len(set(slopes)) != len(slopes):
        raise InputError("repeated slopes")
    if window < 0:
        raise InputError("window must be >= 0")

    # line (a, b, c): a*x + b*y = c with (a, b) = (q, -p)
    lines = []
    for s in slopes:
        for c in range(-window, window + 1):
            lines.append((Fraction(s.q), Fraction(-s.p), Fraction(c), s, c))

    pts: list[tuple[Fraction, Fraction]] = []
    for i in range(len(lines)):
        a1, b1, c1 = lines[i][:3]
        for j in range(i + 1, len(lines)):
            a2, b2, c2 = lines[j][:3]
            det = a1 * b2 - a2 * b1
            if det:
                pts.append(((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det))
    for a, b, c, _s, _c in lines:
        if a:
            pts.append((c / a, Fraction(0)))
        if b:
            pts.append((Fraction(0), c / b))

    bound = Fraction(1)
    for x, y in pts:
        bound = max(bound, abs(x) + 1, abs(y) + 1)

    xs = {-bound, bound}
    for x, _y in pts:
        xs.add(x)
    for a, b, c, _s, _c in lines:
        if not b:  # vertical line x = c / a
            xs.add(c / a)
    cuts = sorted(x for x in xs if -bound <= x <= bound)

    chambers_by_sign: dict[tuple[int, ...], int] = {}
    for x0, x1 in zip(cuts, cuts[1:]):
        if x0 == x1:
            continue
        xm = (x0 + x1) / 2
        ys = sorted(
            {(c - a * xm) / b for a, b, c, _s, _c in lines if b}
            | {-bound, bound}
        )
        ys = [y for y in ys if -bound <= y <= bound]
        for y0, y1 in zip(ys, ys[1:]):
            ym = (y0 + y1) / 2
            sv = tuple(_sign(a * xm + b * ym - c) for a, b, c, _s, _c in lines)
            assert 0 not in sv
            chambers_by_sign.setdefault(sv, len(chambers_by_sign))

    ordered = sorted(chambers_by_sign)
    walls = []
    for k, (_a, _b, _c, s, c) in enumerate(lines):
        neg = frozenset(i for i, sv in enumerate(ordered) if sv[k] < 0)
        pos = frozenset(i for i, sv in enumerate(ordered) if sv[k] > 0)
        walls.append(Wall(f"{s.p}/{s.q}@{c}", neg, pos))
    return Wallspace(tuple(range(len(ordered))), tuple(walls))


def max_crossing_family(ws: Wallspace) -> tuple[int, tuple[str, ...]]:
    """Exact maximum set of pairwise-crossing walls (branch and bound)."""
    problems = validate_wallspace(ws)
    if problems:
        raise InputError("invalid wallspace: " + "; ".join(problems))
    walls = ws.walls
    n = len(walls)
    adj = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and walls_cross(walls[i], walls[j]):
                adj[i] |= 1 << j

    best: tuple[int, tuple[int, ...]] = (0, ())

    def expand(current: tuple[int, ...], cand: int) -> None:
        nonlocal best
        if len(current) > best[0]:
            best = (len(current), current)
        while cand:
            if len(current) + cand.bit_count() <= best[0]:
                return
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            expand(current + (v,), cand & adj[v])

    expand((), (1 << n) - 1)
    size, members = best
    return size, tuple(walls[i].wall_id for i in members)
