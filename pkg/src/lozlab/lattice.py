"""Triangular-lattice cells and the hexagonal region families built on them.

The lattice is drawn with one family of lattice lines vertical.  Lattice
points are integer pairs (X, Y) with X + Y even; point (X, Y) sits at
(X*sqrt(3)/2, Y/2) in the Euclidean plane, so X counts vertical lattice
lines and Y counts half-units of height.  Every unit triangle has a
vertical side spanning two Y-steps plus an apex one column to the east
or to the west.

TriCell(u, v, "U") is the east-pointing triangle with corners (u, v-1),
(u, v+1), (u+1, v); TriCell(u, v, "D") is the west-pointing one with
corners (u+1, v-1), (u+1, v+1), (u, v).  Hence u + v is odd exactly for
"U" cells; the orientation tag is redundant given (u, v) but keeps code
and serialized data readable.  Neighbors (cells sharing a lattice edge):

    U(u, v) ~ D(u, v-1), D(u, v+1), D(u-1, v)
    D(u, v) ~ U(u, v-1), U(u, v+1), U(u+1, v)

so the adjacency structure is bipartite with parts "U" and "D" and every
cell has at most three neighbors.

Region families:

* hexagon(a, b, c): sides a, b, c, a, b, c clockwise from the northwest
  side, east and west sides vertical.  Northwest corner at (0, 0).
* holed_hexagon(a, b, ks): hexagon(a, a, 2b) with, for each k in ks, a
  west-pointing side-2 triangle removed from the horizontal symmetry
  axis (its vertical side 2k columns east of the west side) together
  with its mirror image across the vertical axis.
* cored_hexagon(a, b, ks, x): holed hexagon of odd side 2a-1 with the
  central horizontal rhombus of side 2x-1 also removed.
* d_region(a, b, eps, is_): quarter of a holed hexagon of side 2a (eps
  = -1) or 2a+1 (eps = 0) cut along both symmetry axes, keeping cells
  strictly above the horizontal axis and west of the vertical one; the
  cut line along the vertical axis is a free boundary, recorded as free
  edges on the east sides of the easternmost west-pointing cells.
* rbar_region(l, q, base): bottom half of a holed hexagon, keeping the
  on-axis cells of the western half; the strictly increasing lists l
  and q say which "bumps" of the lower and upper zig-zag boundary are
  present, and base is the height parameter of the hexagon.

All coordinates and parameters are plain integers; construction never
uses floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import FormatError, HoleCollisionError, ParameterError

UP = "U"
DOWN = "D"

Point = tuple[int, int]
Edge = tuple[Point, Point]


class TriCell(NamedTuple):
    """One unit triangle: strip index, doubled row of its center, tag."""

    u: int
    v: int
    orient: str


def cell_ok(cell: TriCell) -> bool:
    """Well-formedness: known tag and tag consistent with parity."""
    if cell.orient not in (UP, DOWN):
        return False
    return ((cell.u + cell.v) & 1 == 1) == (cell.orient == UP)


def cell_at(u: int, v: int) -> TriCell:
    """The unique cell occupying strip u at doubled row v."""
    return TriCell(u, v, UP if (u + v) & 1 else DOWN)


def cell_corners(cell: TriCell) -> tuple[Point, Point, Point]:
    u, v = cell.u, cell.v
    if cell.orient == UP:
        return ((u, v - 1), (u, v + 1), (u + 1, v))
    return ((u + 1, v - 1), (u + 1, v + 1), (u, v))


def cell_from_corners(corners: Iterable[Point]) -> TriCell:
    """Reconstruct the cell from its three corner points.

    Raises ValueError when the points do not form a unit triangle.
    """
    pts = sorted(corners)
    if len(pts) != 3:
        raise ValueError("need exactly three corners")
    xs = [p[0] for p in pts]
    lo, hi = min(xs), max(xs)
    if hi != lo + 1:
        raise ValueError("corners do not span adjacent columns: %r" % (pts,))
    side = [p for p in pts if p[0] == lo]
    if len(side) == 2:
        apex = next(p for p in pts if p[0] == hi)
        cell = TriCell(lo, apex[1], UP)
    else:
        apex = side[0]
        cell = TriCell(lo, apex[1], DOWN)
    if set(cell_corners(cell)) != set(pts):
        raise ValueError("corners do not form a unit triangle: %r" % (pts,))
    return cell


def cell_neighbors(cell: TriCell) -> tuple[TriCell, TriCell, TriCell]:
    """The three potential neighbors (some may fall outside any region)."""
    u, v = cell.u, cell.v
    if cell.orient == UP:
        return (TriCell(u, v - 1, DOWN), TriCell(u, v + 1, DOWN),
                TriCell(u - 1, v, DOWN))
    return (TriCell(u, v - 1, UP), TriCell(u, v + 1, UP),
            TriCell(u + 1, v, UP))


def cells_adjacent(c: TriCell, d: TriCell) -> bool:
    return d in cell_neighbors(c)


def cell_edges(cell: TriCell) -> tuple[Edge, Edge, Edge]:
    a, b, c = cell_corners(cell)
    return (_edge(a, b), _edge(a, c), _edge(b, c))


def shared_edge(c: TriCell, d: TriCell) -> Edge | None:
    """The lattice edge common to two adjacent cells, None otherwise."""
    common = set(cell_corners(c)) & set(cell_corners(d))
    if len(common) != 2:
        return None
    a, b = sorted(common)
    return (a, b)


def _edge(a: Point, b: Point) -> Edge:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class Region:
    """A finite set of cells plus optional free boundary edges.

    cells are sorted lexicographically; params is an ordered tuple of
    (name, value) pairs echoing the construction call.
    """

    family: str
    params: tuple[tuple[str, object], ...]
    cells: tuple[TriCell, ...]
    free_edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        assert list(self.cells) == sorted(set(self.cells)), "cells not sorted/unique"
        assert all(cell_ok(c) for c in self.cells), "malformed cell"
        if self.free_edges:
            incidence = self._edge_incidence()
            for e in self.free_edges:
                assert len(incidence.get(e, ())) == 1, \
                    "free edge %r not on the boundary" % (e,)

    def _edge_incidence(self) -> dict[Edge, list[TriCell]]:
        out: dict[Edge, list[TriCell]] = {}
        for c in self.cells:
            for e in cell_edges(c):
                out.setdefault(e, []).append(c)
        return out

    @property
    def cell_set(self) -> frozenset[TriCell]:
        return frozenset(self.cells)

    def param(self, name: str):
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)

    def up_cells(self) -> tuple[TriCell, ...]:
        return tuple(c for c in self.cells if c.orient == UP)

    def down_cells(self) -> tuple[TriCell, ...]:
        return tuple(c for c in self.cells if c.orient == DOWN)

    def is_connected(self) -> bool:
        if not self.cells:
            return True
        have = self.cell_set
        seen = {self.cells[0]}
        stack = [self.cells[0]]
        while stack:
            for n in cell_neighbors(stack.pop()):
                if n in have and n not in seen:
                    seen.add(n)
                    stack.append(n)
        return len(seen) == len(self.cells)

    def free_cell_map(self) -> dict[Edge, TriCell]:
        """Each free edge with the unique region cell it borders."""
        incidence = self._edge_incidence()
        return {e: incidence[e][0] for e in self.free_edges}


def region_corner_bounds(r: Region) -> tuple[int, int, int, int]:
    """(min X, max X, min Y, max Y) over all cell corners."""
    xs = []
    ys = []
    for c in r.cells:
        for (x, y) in cell_corners(c):
            xs.append(x)
            ys.append(y)
    return (min(xs), max(xs), min(ys), max(ys))


# ---------------------------------------------------------------------
# region families


def _require_positive(name: str, value) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ParameterError("%s must be a positive integer, got %r" % (name, value))
    return value


def _require_increasing(name: str, values) -> tuple[int, ...]:
    out = tuple(values)
    for x in out:
        if not isinstance(x, int) or isinstance(x, bool):
            raise ParameterError("%s must contain integers, got %r" % (name, x))
    if any(x < 1 for x in out):
        raise ParameterError("%s entries must be >= 1, got %r" % (name, list(out)))
    if any(x >= y for x, y in zip(out, out[1:])):
        raise ParameterError("%s must be strictly increasing, got %r" % (name, list(out)))
    return out


def _in_hexagon(pt: Point, a: int, b: int, c: int) -> bool:
    x, y = pt
    return (x >= 0 and x <= a + b and x - y >= 0 and 2 * a - x - y >= 0
            and y - x + 2 * b + 2 * c >= 0 and x + y + 2 * c >= 0)


def _hexagon_cells(a: int, b: int, c: int) -> set[TriCell]:
    cells = set()
    for u in range(a + b):
        for v in range(-b - 2 * c - 1, a + 2):
            cell = cell_at(u, v)
            if all(_in_hexagon(p, a, b, c) for p in cell_corners(cell)):
                cells.add(cell)
    return cells


def hexagon(a: int, b: int, c: int) -> Region:
    """Hexagonal region with sides a, b, c, a, b, c clockwise from NW."""
    _require_positive("a", a)
    _require_positive("b", b)
    _require_positive("c", c)
    cells = _hexagon_cells(a, b, c)
    assert len(cells) == 2 * (a * b + b * c + c * a)
    return Region("Hexagon", (("a", a), ("b", b), ("c", c)),
                  tuple(sorted(cells)))


def _west_triangle(apex_x: int, apex_y: int, size: int) -> set[TriCell]:
    """Triangle of the given side with west-pointing apex at a lattice point."""
    cells = set()
    for j in range(size):
        u = apex_x + j
        for t in range(j + 1):
            cells.add(TriCell(u, apex_y - j + 2 * t, DOWN))
        for t in range(j):
            cells.add(TriCell(u, apex_y - j + 1 + 2 * t, UP))
    return cells


def _east_triangle(apex_x: int, apex_y: int, size: int) -> set[TriCell]:
    """Mirror image of _west_triangle: apex points east."""
    cells = set()
    for j in range(size):
        u = apex_x - 1 - j
        for t in range(j + 1):
            cells.add(TriCell(u, apex_y - j + 2 * t, UP))
        for t in range(j):
            cells.add(TriCell(u, apex_y - j + 1 + 2 * t, DOWN))
    return cells


def _validate_ks(ks, side: int) -> tuple[int, ...]:
    out = _require_increasing("ks", ks)
    if out and 2 * out[-1] > side:
        raise ParameterError(
            "hole index %d too large for side %d (need 2k <= side)"
            % (out[-1], side))
    return out


def _holed_cells(side: int, b: int, ks: tuple[int, ...]) -> set[TriCell]:
    cells = _hexagon_cells(side, side, 2 * b)
    holes: set[TriCell] = set()
    for k in ks:
        holes |= _west_triangle(2 * k - 2, -2 * b, 2)
        holes |= _east_triangle(2 * side - 2 * k + 2, -2 * b, 2)
    assert len(holes) == 8 * len(ks) and holes <= cells
    return cells - holes


def holed_hexagon(a: int, b: int, ks) -> Region:
    """hexagon(a, a, 2b) minus paired side-2 boundary triangles on the axis.

    Hole k removes the west-pointing triangle whose vertical side lies
    2k columns east of the west side, plus its mirror image.  Indices
    must satisfy 0 < k_1 < ... < k_s <= a/2.  When k_1 = 1 the holes
    touch the west and east sides and force two rows of tiles; such
    regions may fall apart into independent pieces, which is fine for
    counting (matchings multiply over pieces).
    """
    _require_positive("a", a)
    _require_positive("b", b)
    ks = _validate_ks(ks, a)
    cells = _holed_cells(a, b, ks)
    assert len(cells) == 2 * (a * a + 4 * a * b) - 8 * len(ks)
    return Region("HoledHexagon", (("a", a), ("b", b), ("ks", ks)),
                  tuple(sorted(cells)))


def cored_hexagon(a: int, b: int, ks, x: int) -> Region:
    """Holed hexagon of odd side 2a-1 minus the central rhombus of side 2x-1.

    The core sits on the horizontal axis, centered on the vertical one.
    Raises HoleCollisionError when a hole would overlap the core, which
    happens exactly for k > a - x.
    """
    _require_positive("a", a)
    _require_positive("b", b)
    _require_positive("x", x)
    if x > a:
        raise ParameterError("core parameter x=%d exceeds a=%d" % (x, a))
    ks = _require_increasing("ks", ks)
    colliding = [k for k in ks if k > a - x]
    if colliding:
        raise HoleCollisionError(
            "holes %r overlap the side-%d core (need k <= a - x = %d)"
            % (colliding, 2 * x - 1, a - x), colliding)
    side = 2 * a - 1
    m = 2 * x - 1
    core = (_west_triangle(side - m, -2 * b, m)
            | _east_triangle(side + m, -2 * b, m))
    assert len(core) == 2 * m * m
    base = _holed_cells(side, b, ks)
    assert core <= base
    cells = base - core
    return Region("CoredHexagon",
                  (("a", a), ("b", b), ("ks", ks), ("x", x)),
                  tuple(sorted(cells)))


def d_region(a: int, b: int, eps: int, is_) -> Region:
    """Quarter region with a free vertical cut, from a holed hexagon.

    The ambient holed hexagon has side 2a (eps = -1) or 2a+1 (eps = 0),
    height parameter b, and holes at {a-i+1 : i in [1..a] not in is_};
    the listed indices is_ mark the surviving westernmost cells of the
    quarter's bottom row.  Kept cells lie strictly above the horizontal
    axis and in strips west of the vertical axis; each west-pointing
    cell whose east side lies on the vertical axis gets a free edge
    there, across which a tile may protrude.
    """
    _require_positive("a", a)
    _require_positive("b", b)
    if eps not in (-1, 0):
        raise ParameterError("eps must be -1 or 0, got %r" % (eps,))
    is_ = _require_increasing("is", is_)
    if is_ and is_[-1] > a:
        raise ParameterError("index %d out of range 1..%d" % (is_[-1], a))
    n = 2 * a + (1 if eps == 0 else 0)
    ks = tuple(sorted(a - i + 1 for i in set(range(1, a + 1)) - set(is_)))
    base = _holed_cells(n, b, ks)
    keep = {c for c in base if c.u <= n - 1 and c.v >= -2 * b + 1}
    free_edges = sorted(((n, c.v - 1), (n, c.v + 1))
                        for c in keep if c.orient == DOWN and c.u == n - 1)
    return Region("DRegion",
                  (("a", a), ("b", b), ("eps", eps), ("is", is_)),
                  tuple(sorted(keep)), tuple(free_edges))


def rbar_region(l, q, base: int) -> Region:
    """Bottom half of a holed hexagon, keeping western on-axis cells.

    q lists the upper zig-zag bumps that are present and determines the
    hexagon: its largest entry is half the side (rounded down) and the
    absent indices of [1..max(q)] are the hole positions, via
    k = max(q) - index + 1.  l lists the lower bumps and must be
    consistent with q: equal to q for the odd-side shape, or equal to
    the hole-free part of [1..max(q)-1] shifted down by one for the
    even-side shape.  For the odd-side shape the easternmost on-axis
    cell (the one fixed by the fold) is removed as well.
    """
    _require_positive("base", base)
    q = _require_increasing("q", q)
    l = _require_increasing("l", l)
    if not q:
        raise ParameterError("q must be nonempty")
    a = q[-1]
    missing = sorted(set(range(1, a + 1)) - set(q))
    ks = tuple(sorted(a - d + 1 for d in missing))
    bb = base
    if list(l) == list(q):
        n = 2 * a + 1
        cells = _holed_cells(n, bb, ks)
        keep = {c for c in cells
                if c.v <= -2 * bb - 1 or (c.v == -2 * bb and c.u <= n - 1)}
        keep.discard(TriCell(n - 1, -2 * bb, DOWN))
    else:
        removed = {d - 1 for d in missing} - {0}
        expected_l = sorted(set(range(1, a)) - removed)
        if list(l) != expected_l:
            raise ParameterError(
                "lower bump list %r inconsistent with upper %r (expected %r)"
                % (list(l), list(q), expected_l))
        n = 2 * a
        cells = _holed_cells(n, bb, ks)
        keep = {c for c in cells
                if c.v <= -2 * bb - 1 or (c.v == -2 * bb and c.u <= n - 1)}
    return Region("RBarRegion", (("l", l), ("q", q), ("base", base)),
                  tuple(sorted(keep)))


# ---------------------------------------------------------------------
# serialization (schema version 1)

_FAMILY_PARAMS = {
    "Hexagon": ("a", "b", "c"),
    "HoledHexagon": ("a", "b", "ks"),
    "CoredHexagon": ("a", "b", "ks", "x"),
    "DRegion": ("a", "b", "eps", "is"),
    "RBarRegion": ("l", "q", "base"),
}

_LIST_PARAMS = {"ks", "is", "l", "q"}


def serialize_region(r: Region) -> bytes:
    params = {}
    for key, value in r.params:
        params[key] = list(value) if isinstance(value, tuple) else value
    doc = {
        "v": 1,
        "family": r.family,
        "params": params,
        "cells": [[c.u, c.v, c.orient] for c in r.cells],
        "free_edges": [[[e[0][0], e[0][1]], [e[1][0], e[1][1]]]
                       for e in r.free_edges],
    }
    return json.dumps(doc, separators=(",", ":")).encode("ascii")


def _fail(data: bytes, needle: str, message: str):
    pos = data.find(needle.encode("utf-8")) if needle else -1
    raise FormatError(message, offset=pos if pos >= 0 else 0)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def deserialize_region(data: bytes) -> Region:
    if isinstance(data, str):
        data = data.encode("utf-8")
    try:
        doc = json.loads(data.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise FormatError("not valid UTF-8: %s" % exc, offset=exc.start)
    except json.JSONDecodeError as exc:
        raise FormatError("not valid JSON: %s" % exc.msg, offset=exc.pos)
    if not isinstance(doc, dict):
        _fail(data, "", "top level must be an object")
    for key in ("v", "family", "params", "cells", "free_edges"):
        if key not in doc:
            _fail(data, "", "missing field %r" % key)
    if doc["v"] != 1:
        _fail(data, '"v"', "unsupported schema version %r" % (doc["v"],))
    family = doc["family"]
    if family not in _FAMILY_PARAMS:
        _fail(data, '"family"', "unknown family %r" % (family,))
    raw_params = doc["params"]
    if not isinstance(raw_params, dict):
        _fail(data, '"params"', "params must be an object")
    params = []
    for key in _FAMILY_PARAMS[family]:
        if key not in raw_params:
            _fail(data, '"params"', "missing parameter %r for %s" % (key, family))
        value = raw_params[key]
        if key in _LIST_PARAMS:
            if not isinstance(value, list) or not all(_is_int(x) for x in value):
                _fail(data, '"%s"' % key, "parameter %r must be an integer list" % key)
            params.append((key, tuple(value)))
        else:
            if not _is_int(value):
                _fail(data, '"%s"' % key, "parameter %r must be an integer" % key)
            params.append((key, value))
    if not isinstance(doc["cells"], list):
        _fail(data, '"cells"', "cells must be a list")
    cells = []
    for item in doc["cells"]:
        if (not isinstance(item, list) or len(item) != 3
                or not _is_int(item[0]) or not _is_int(item[1])
                or item[2] not in (UP, DOWN)):
            _fail(data, json.dumps(item, separators=(",", ":")),
                  "bad cell entry %r" % (item,))
        cell = TriCell(item[0], item[1], item[2])
        if not cell_ok(cell):
            _fail(data, json.dumps(item, separators=(",", ":")),
                  "orientation tag inconsistent with coordinates in %r" % (item,))
        cells.append(cell)
    if sorted(set(cells)) != cells:
        _fail(data, '"cells"', "cells must be sorted and unique")
    if not isinstance(doc["free_edges"], list):
        _fail(data, '"free_edges"', "free_edges must be a list")
    free_edges = []
    for item in doc["free_edges"]:
        ok = (isinstance(item, list) and len(item) == 2
              and all(isinstance(p, list) and len(p) == 2
                      and all(_is_int(x) for x in p) for p in item))
        if not ok:
            _fail(data, json.dumps(item, separators=(",", ":")),
                  "bad free edge entry %r" % (item,))
        e = ((item[0][0], item[0][1]), (item[1][0], item[1][1]))
        if e[0] > e[1]:
            _fail(data, json.dumps(item, separators=(",", ":")),
                  "free edge endpoints out of order in %r" % (item,))
        free_edges.append(e)
    try:
        return Region(family, tuple(params), tuple(cells), tuple(free_edges))
    except AssertionError as exc:
        raise FormatError("inconsistent region document: %s" % exc, offset=0)
