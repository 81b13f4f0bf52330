"""Text formats for manifolds (.m3), wallspaces (.ws), cube complexes (.cc).

All three are line oriented UTF-8 with `#` comments. Parsing is exact:
unknown keys, missing fields and non-integer tokens raise ParseError with
a 1-based line and column. The manifold parser also performs semantic
checks (determinants, index ranges, repeated ends) so that the first
offending line is reported; whole-file problems (an unused boundary
index, a disconnected graph) are reported against the last line.

Serialization is deterministic: records sorted by id, one per line.
serialize(parse(text)) reparses to an equal value.
"""

from __future__ import annotations

import re

from .cubecomplex import Cube, CubeComplex, validate_complex
from .errors import ParseError
from .manifold import (
    GEOMETRY_LABELS,
    GluingMatrix,
    HyperbolicBlockData,
    ManifoldGraph,
    SeifertBlockData,
    Slope,
    TorusEdge,
    TorusEnd,
    slope_normalize,
    validate,
)
from .wallspace import Wall, Wallspace, validate_wallspace


def _lines(text: str):
    """Yield (lineno, line, tokens) with comments stripped.

    Tokens are (column, string) pairs, columns 1-based.
    """
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]
        if tokens:
            yield lineno, raw, tokens


def _fail(msg: str, line: int, col: int = 1):
    raise ParseError(msg, line, col)


def _int(tok: str, line: int, col: int) -> int:
    try:
        return int(tok, 10)
    except ValueError:
        _fail(f"expected an integer, got {tok!r}", line, col)


_PAIR_RE = re.compile(r"\((-?\d+),(-?\d+)\)")


def _pairs(value: str, line: int, col: int) -> list[tuple[int, int]]:
    """Parse a run of (a,b)(c,d)... with no separators."""
    out = []
    pos = 0
    while pos < len(value):
        m = _PAIR_RE.match(value, pos)
        if not m:
            _fail(f"expected (p,q) pairs, got {value[pos:]!r}", line, col + pos)
        out.append((int(m.group(1)), int(m.group(2))))
        pos = m.end()
    return out


def _end(tok: str, line: int, col: int) -> TorusEnd:
    block, dot, idx = tok.rpartition(".")
    if not dot or not block:
        _fail(f"expected <block>.<index>, got {tok!r}", line, col)
    return TorusEnd(block, _int(idx, line, col + len(block) + 1))


def parse_manifold(text: str) -> ManifoldGraph:
    blocks: dict = {}
    tori: list[TorusEdge] = []
    boundary: list[TorusEnd] = []
    geometry = None
    torus_ids: set[str] = set()
    used_ends: set[TorusEnd] = set()
    last_line = 1

    def claim(end: TorusEnd, line: int, col: int) -> None:
        if end.block_id not in blocks:
            _fail(f"unknown block {end.block_id!r}", line, col)
        n = blocks[end.block_id].num_boundary
        if not 0 <= end.boundary_index < n:
            _fail(
                f"boundary index {end.boundary_index} out of range"
                f" (block {end.block_id} has {n})",
                line, col,
            )
        if end in used_ends:
            _fail(f"end {end} already used", line, col)
        used_ends.add(end)

    for lineno, _raw, tokens in _lines(text):
        last_line = lineno
        (col0, kind) = tokens[0]
        rest = tokens[1:]

        if kind == "block":
            if len(rest) < 2:
                _fail("block needs an id and a kind", lineno, col0)
            (_, block_id), (kcol, bkind) = rest[0], rest[1]
            if block_id in blocks:
                _fail(f"block {block_id!r} redeclared", lineno, rest[0][0])
            if bkind == "seifert":
                blocks[block_id] = _parse_seifert(rest[2:], lineno)
            elif bkind == "hyperbolic":
                blocks[block_id] = _parse_hyperbolic(rest[2:], lineno)
            else:
                _fail(f"unknown block kind {bkind!r}", lineno, kcol)

        elif kind == "torus":
            if len(rest) != 4:
                _fail("torus needs: <id> <endA> <endB> glue=...", lineno, col0)
            (_, tid), (acol, atok), (bcol, btok), (gcol, gtok) = rest
            if tid in torus_ids:
                _fail(f"torus {tid!r} redeclared", lineno, rest[0][0])
            torus_ids.add(tid)
            end_a = _end(atok, lineno, acol)
            end_b = _end(btok, lineno, bcol)
            if not gtok.startswith("glue="):
                _fail("expected glue=<m00>,<m01>,<m10>,<m11>", lineno, gcol)
            parts = gtok[5:].split(",")
            if len(parts) != 4:
                _fail("glue needs four entries", lineno, gcol)
            a, b, c, d = (_int(p, lineno, gcol) for p in parts)
            if a * d - b * c not in (1, -1):
                _fail(f"glue determinant {a * d - b * c}, need +1 or -1", lineno, gcol)
            claim(end_a, lineno, acol)
            claim(end_b, lineno, bcol)
            tori.append(TorusEdge(tid, end_a, end_b, GluingMatrix(a, b, c, d)))

        elif kind == "boundary":
            if len(rest) != 1:
                _fail("boundary needs one <block>.<index>", lineno, col0)
            (ecol, etok) = rest[0]
            end = _end(etok, lineno, ecol)
            claim(end, lineno, ecol)
            boundary.append(end)

        elif kind == "geometry":
            if len(rest) != 1:
                _fail("geometry needs one label", lineno, col0)
            (gcol, glabel) = rest[0]
            if glabel not in GEOMETRY_LABELS:
                _fail(f"unknown geometry label {glabel!r}", lineno, gcol)
            if geometry is not None:
                _fail("geometry redeclared", lineno, gcol)
            geometry = glabel

        else:
            _fail(f"unknown record {kind!r}", lineno, col0)

    m = ManifoldGraph(blocks, tuple(tori), tuple(boundary), geometry)
    report = validate(m)
    if not report.ok:
        _fail("; ".join(report.problems), last_line)
    return m


def _parse_seifert(tokens, lineno) -> SeifertBlockData:
    genus = boundaries = None
    exceptional: tuple = ()
    obstruction = 0
    thin = False
    for col, tok in tokens:
        if tok == "thin":
            thin = True
        elif tok.startswith("genus="):
            genus = _int(tok[6:], lineno, col + 6)
        elif tok.startswith("boundaries="):
            boundaries = _int(tok[11:], lineno, col + 11)
        elif tok.startswith("exceptional="):
            exceptional = tuple(_pairs(tok[12:], lineno, col + 12))
        elif tok.startswith("b="):
            obstruction = _int(tok[2:], lineno, col + 2)
        else:
            _fail(f"unknown seifert field {tok!r}", lineno, col)
    if genus is None or boundaries is None:
        _fail("seifert block needs genus= and boundaries=", lineno)
    for a, b in exceptional:
        if a < 2:
            _fail(f"exceptional fiber ({a},{b}) needs a >= 2", lineno)
    if thin and (genus != 0 or boundaries != 2 or exceptional):
        _fail(
            "thin block must have genus 0, two boundary tori, no exceptional fibers",
            lineno,
        )
    return SeifertBlockData(genus, boundaries, exceptional, obstruction, thin)


_FRAME_RE = re.compile(r"frame(\d+)=")


def _parse_hyperbolic(tokens, lineno) -> HyperbolicBlockData:
    boundaries = None
    frames: dict[int, tuple[Slope, Slope]] = {}
    for col, tok in tokens:
        if tok.startswith("boundaries="):
            boundaries = _int(tok[11:], lineno, col + 11)
        elif m := _FRAME_RE.match(tok):
            idx = int(m.group(1))
            halves = tok[m.end():].split("|")
            if len(halves) != 2:
                _fail("frame needs (p,q)|(p,q)", lineno, col)
            slopes = []
            for h in halves:
                pq = _pairs(h, lineno, col)
                if len(pq) != 1:
                    _fail("frame needs (p,q)|(p,q)", lineno, col)
                p, q = pq[0]
                if (p, q) == (0, 0):
                    _fail("slope (0,0) is not a curve", lineno, col)
                slopes.append(slope_normalize(p, q))
            if idx in frames:
                _fail(f"frame{idx} redeclared", lineno, col)
            frames[idx] = (slopes[0], slopes[1])
        else:
            _fail(f"unknown hyperbolic field {tok!r}", lineno, col)
    if boundaries is None:
        _fail("hyperbolic block needs boundaries=", lineno)
    for idx in frames:
        if not 0 <= idx < boundaries:
            _fail(f"frame{idx} out of range", lineno)
    framings: tuple = ()
    if frames:
        framings = tuple(frames.get(i) for i in range(boundaries))
    return HyperbolicBlockData(boundaries, framings)


def serialize_manifold(m: ManifoldGraph) -> str:
    out = []
    for block_id in m.block_ids():
        data = m.blocks[block_id]
        if isinstance(data, SeifertBlockData):
            line = (
                f"block {block_id} seifert genus={data.genus}"
                f" boundaries={data.num_boundary}"
            )
            if data.exceptional:
                line += " exceptional=" + "".join(
                    f"({a},{b})" for a, b in data.exceptional
                )
            line += f" b={data.section_obstruction}"
            if data.is_thin:
                line += " thin"
        else:
            line = f"block {block_id} hyperbolic boundaries={data.num_boundary}"
            for i, pair in enumerate(data.framings):
                if pair is not None:
                    s, t = pair
                    line += f" frame{i}=({s.p},{s.q})|({t.p},{t.q})"
        out.append(line)
    for t in sorted(m.jsj_tori, key=lambda t: t.torus_id):
        g = t.glue
        out.append(
            f"torus {t.torus_id} {t.end_a} {t.end_b} glue={g.a},{g.b},{g.c},{g.d}"
        )
    for end in sorted(m.boundary_tori):
        out.append(f"boundary {end}")
    if m.geometry_label is not None:
        out.append(f"geometry {m.geometry_label}")
    return "\n".join(out) + "\n"


def parse_wallspace(text: str) -> Wallspace:
    n = None
    walls: list[Wall] = []
    ids: set[str] = set()
    last_line = 1

    def idx_list(value: str, line: int, col: int) -> frozenset:
        if value == "":
            return frozenset()
        out = set()
        for part in value.split(","):
            i = _int(part, line, col)
            if not 0 <= i < n:
                _fail(f"chamber {i} out of range 0..{n - 1}", line, col)
            out.add(i)
        return frozenset(out)

    for lineno, _raw, tokens in _lines(text):
        last_line = lineno
        (col0, kind) = tokens[0]
        rest = tokens[1:]
        if kind == "chambers":
            if n is not None:
                _fail("chambers redeclared", lineno, col0)
            if len(rest) != 1:
                _fail("chambers needs a count", lineno, col0)
            n = _int(rest[0][1], lineno, rest[0][0])
            if n < 1:
                _fail("need at least one chamber", lineno, rest[0][0])
        elif kind == "wall":
            if n is None:
                _fail("chambers must come before walls", lineno, col0)
            if len(rest) != 3:
                _fail("wall needs: <id> U=<list> V=<list>", lineno, col0)
            (_, wid), (ucol, utok), (vcol, vtok) = rest
            if wid in ids:
                _fail(f"wall {wid!r} redeclared", lineno, rest[0][0])
            ids.add(wid)
            if not utok.startswith("U="):
                _fail("expected U=<idx list>", lineno, ucol)
            if not vtok.startswith("V="):
                _fail("expected V=<idx list>", lineno, vcol)
            walls.append(
                Wall(wid, idx_list(utok[2:], lineno, ucol), idx_list(vtok[2:], lineno, vcol))
            )
        else:
            _fail(f"unknown record {kind!r}", lineno, col0)

    if n is None:
        _fail("missing chambers record", last_line)
    ws = Wallspace(tuple(range(n)), tuple(walls))
    problems = validate_wallspace(ws)
    if problems:
        _fail("; ".join(problems), last_line)
    return ws


def serialize_wallspace(ws: Wallspace) -> str:
    try:
        ordered = sorted(ws.chambers)
    except TypeError:
        ordered = sorted(ws.chambers, key=str)
    order = {c: i for i, c in enumerate(ordered)}
    out = [f"chambers {len(ws.chambers)}"]
    for w in ws.walls:
        u = ",".join(str(i) for i in sorted(order[c] for c in w.half_u))
        v = ",".join(str(i) for i in sorted(order[c] for c in w.half_v))
        out.append(f"wall {w.wall_id} U={u} V={v}")
    return "\n".join(out) + "\n"


def parse_complex(text: str) -> CubeComplex:
    vertices: list[str] = []
    seen: set[str] = set()
    cubes: list[Cube] = []
    last_line = 1
    for lineno, _raw, tokens in _lines(text):
        last_line = lineno
        (col0, kind) = tokens[0]
        rest = tokens[1:]
        if kind == "vertex":
            if len(rest) != 1:
                _fail("vertex needs one id", lineno, col0)
            vid = rest[0][1]
            if vid in seen:
                _fail(f"vertex {vid!r} redeclared", lineno, rest[0][0])
            seen.add(vid)
            vertices.append(vid)
        elif kind == "cube":
            if len(rest) < 1:
                _fail("cube needs a dimension", lineno, col0)
            d = _int(rest[0][1], lineno, rest[0][0])
            if d < 1:
                _fail("cube dimension must be >= 1", lineno, rest[0][0])
            corners = [tok for _c, tok in rest[1:]]
            if len(corners) != 2 ** d:
                _fail(
                    f"{d}-cube needs {2 ** d} corners, got {len(corners)}",
                    lineno, col0,
                )
            cubes.append(Cube(d, tuple(corners)))
        else:
            _fail(f"unknown record {kind!r}", lineno, col0)
    c = CubeComplex(tuple(sorted(vertices)), tuple(cubes))
    problems = validate_complex(c)
    if problems:
        _fail("; ".join(problems), last_line)
    return c


def serialize_complex(c: CubeComplex) -> str:
    out = [f"vertex {v}" for v in sorted(c.vertices, key=str)]
    for cube in sorted(c.cubes, key=lambda k: (k.dim, tuple(map(str, k.corners)))):
        out.append(f"cube {cube.dim} " + " ".join(map(str, cube.corners)))
    return "\n".join(out) + "\n"
