"""Billiard tables bounded by segments and circular arcs, corner classification
and the reduced table traced by the centre of a ball of radius ``r``.

Conventions: every loop is traversed with the table interior on its left.
Component ids are global, counting through the loops in order; corner ``k`` of
a loop is the junction between its components ``k`` and ``k + 1``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import ClassVar, Iterable, Sequence, Union

import numpy as np

from . import kernels
from .errors import ReductionError, TableFormatError, TableVanishesError

Point = tuple[float, float]

TWO_PI = 2.0 * math.pi
SNAP_TOL = 1e-9  # loop closure / junction merge
CORNER_ANGLE_TOL = 1e-7  # |interior angle - pi| below this is a regular point
SPLIT_EPS = 1e-9  # parametric margin when splitting offset pieces
KEEP_TOL = 1e-9  # distance slack for keeping an offset piece
CHAIN_TOL = 1e-8  # endpoint matching while assembling reduced loops
MIN_PIECE = 1e-12


def _as_point(p, what: str = "point") -> Point:
    try:
        x, y = (float(v) for v in p)
    except (TypeError, ValueError) as exc:
        raise TableFormatError(f"{what}: expected two numbers, got {p!r}") from exc
    if not (math.isfinite(x) and math.isfinite(y)):
        raise TableFormatError(f"{what}: non-finite coordinates {p!r}")
    return (x, y)


def _cross(a, b) -> float:
    return a[0] * b[1] - a[1] * b[0]


def _dot(a, b) -> float:
    return a[0] * b[0] + a[1] * b[1]


def _sub(a, b) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def _dist(a, b) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


@dataclass(frozen=True)
class Segment:
    start: Point
    end: Point
    kind: ClassVar[str] = "segment"

    def __post_init__(self):
        object.__setattr__(self, "start", _as_point(self.start, "segment start"))
        object.__setattr__(self, "end", _as_point(self.end, "segment end"))
        if _dist(self.start, self.end) <= MIN_PIECE:
            raise TableFormatError(f"degenerate segment: endpoints coincide at {self.start}")

    @property
    def length(self) -> float:
        return _dist(self.start, self.end)

    @property
    def start_point(self) -> Point:
        return self.start

    @property
    def end_point(self) -> Point:
        return self.end

    def point(self, t: float) -> Point:
        return (self.start[0] + t * (self.end[0] - self.start[0]),
                self.start[1] + t * (self.end[1] - self.start[1]))

    def tangent(self, t: float = 0.0) -> Point:
        d = self.length
        return ((self.end[0] - self.start[0]) / d, (self.end[1] - self.start[1]) / d)

    def inward_normal(self, t: float = 0.0) -> Point:
        tx, ty = self.tangent()
        return (-ty, tx)

    def param(self, p) -> float:
        e = _sub(self.end, self.start)
        return _dot(_sub(p, self.start), e) / _dot(e, e)

    def closest_point(self, p) -> Point:
        return self.point(min(1.0, max(0.0, self.param(p))))

    def offset(self, r: float) -> Segment:
        nx, ny = self.inward_normal()
        return Segment((self.start[0] + r * nx, self.start[1] + r * ny),
                       (self.end[0] + r * nx, self.end[1] + r * ny))

    def sub(self, t0: float, t1: float) -> Segment:
        return Segment(self.point(t0), self.point(t1))

    def sample(self, n: int) -> np.ndarray:
        t = np.linspace(0.0, 1.0, n)[:, None]
        return np.asarray(self.start) + t * (np.asarray(self.end) - np.asarray(self.start))

    def pack(self) -> list[float]:
        nx, ny = self.inward_normal()
        return [self.start[0], self.start[1], self.end[0], self.end[1], nx, ny]

    def to_dict(self) -> dict:
        return {"kind": "segment", "from": list(self.start), "to": list(self.end)}


@dataclass(frozen=True)
class Arc:
    """Circular arc from ``start_angle`` through the signed angle ``sweep``.

    ``sweep > 0`` is counter-clockwise: the interior is inside the circle
    (a focusing wall). ``sweep < 0`` is clockwise: the interior is outside
    (a dispersing wall, e.g. a scatterer or an inserted corner arc).
    """

    center: Point
    radius: float
    start_angle: float
    sweep: float
    kind: ClassVar[str] = "arc"

    def __post_init__(self):
        object.__setattr__(self, "center", _as_point(self.center, "arc center"))
        for name in ("radius", "start_angle", "sweep"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise TableFormatError(f"arc {name} is not finite")
            object.__setattr__(self, name, v)
        if self.radius <= 0.0:
            raise TableFormatError(f"arc radius must be positive, got {self.radius}")
        if not (0.0 < abs(self.sweep) <= TWO_PI + 1e-12):
            raise TableFormatError(f"arc angular extent must lie in (0, 2pi], got {abs(self.sweep)}")
        if self.length <= MIN_PIECE:
            raise TableFormatError(f"degenerate arc at {self.center}: zero length")

    @classmethod
    def from_angles(cls, center, radius, start_angle, end_angle, ccw: bool) -> Arc:
        if ccw:
            sweep = (end_angle - start_angle) % TWO_PI
        else:
            sweep = (start_angle - end_angle) % TWO_PI
        if sweep < 1e-12 or TWO_PI - sweep < 1e-12:
            sweep = TWO_PI
        return cls(center, radius, start_angle, sweep if ccw else -sweep)

    @property
    def ccw(self) -> bool:
        return self.sweep > 0.0

    @property
    def side(self) -> float:
        return -1.0 if self.sweep > 0.0 else 1.0

    @property
    def end_angle(self) -> float:
        return self.start_angle + self.sweep

    @property
    def is_full_circle(self) -> bool:
        return abs(self.sweep) >= TWO_PI - 1e-12

    @property
    def length(self) -> float:
        return self.radius * abs(self.sweep)

    def point(self, t: float) -> Point:
        a = self.start_angle + t * self.sweep
        return (self.center[0] + self.radius * math.cos(a), self.center[1] + self.radius * math.sin(a))

    @property
    def start_point(self) -> Point:
        return self.point(0.0)

    @property
    def end_point(self) -> Point:
        return self.point(1.0)

    def tangent(self, t: float) -> Point:
        a = self.start_angle + t * self.sweep
        s = 1.0 if self.sweep > 0.0 else -1.0
        return (-s * math.sin(a), s * math.cos(a))

    def inward_normal(self, t: float) -> Point:
        tx, ty = self.tangent(t)
        return (-ty, tx)

    def param(self, p) -> float:
        phi = math.atan2(p[1] - self.center[1], p[0] - self.center[0])
        u = (phi - self.start_angle if self.ccw else self.start_angle - phi) % TWO_PI
        extent = abs(self.sweep)
        if u > extent and u > 0.5 * (extent + TWO_PI):
            u -= TWO_PI
        return u / extent

    def closest_point(self, p) -> Point:
        t = self.param(p)
        if 0.0 <= t <= 1.0:
            d = _dist(p, self.center)
            if d == 0.0:
                return self.start_point
            return (self.center[0] + self.radius * (p[0] - self.center[0]) / d,
                    self.center[1] + self.radius * (p[1] - self.center[1]) / d)
        a, b = self.start_point, self.end_point
        return a if _dist(p, a) <= _dist(p, b) else b

    def offset(self, r: float) -> Arc | None:
        radius = self.radius - r if self.ccw else self.radius + r
        if radius <= MIN_PIECE or radius * abs(self.sweep) <= MIN_PIECE:
            return None
        return Arc(self.center, radius, self.start_angle, self.sweep)

    def sub(self, t0: float, t1: float) -> Arc:
        return Arc(self.center, self.radius, self.start_angle + t0 * self.sweep, (t1 - t0) * self.sweep)

    def sample(self, n: int) -> np.ndarray:
        a = self.start_angle + np.linspace(0.0, 1.0, n) * self.sweep
        return np.column_stack([self.center[0] + self.radius * np.cos(a),
                                self.center[1] + self.radius * np.sin(a)])

    def pack(self) -> list[float]:
        return [self.center[0], self.center[1], self.radius, self.start_angle, self.sweep, self.side]

    def to_dict(self) -> dict:
        return {"kind": "arc", "center": list(self.center), "radius": self.radius,
                "start_angle": self.start_angle, "end_angle": self.end_angle, "ccw": self.ccw}


Component = Union[Segment, Arc]


def pack_components(components: Sequence[Component]) -> tuple[np.ndarray, np.ndarray]:
    kinds = np.array([kernels.SEGMENT if c.kind == "segment" else kernels.ARC for c in components],
                     dtype=np.int64)
    geom = np.array([c.pack() for c in components], dtype=np.float64).reshape(-1, 6)
    return kinds, geom


def winding_numbers(components: Iterable[Component], points) -> np.ndarray:
    """Winding number of the boundary around each point (points on it are undefined)."""
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    total = np.zeros(len(pts))
    for c in components:
        a = np.asarray(c.start_point) - pts
        b = np.asarray(c.end_point) - pts
        theta = np.arctan2(a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0], np.einsum("ij,ij->i", a, b))
        if c.kind == "arc":
            inside = np.hypot(*(pts - np.asarray(c.center)).T) < c.radius
            if c.is_full_circle:
                turned = np.full(len(pts), math.copysign(TWO_PI, c.sweep))
            elif c.ccw:
                turned = np.mod(theta, TWO_PI)
            else:
                turned = -np.mod(-theta, TWO_PI)
            theta = np.where(inside, turned, theta)
        total += theta
    return np.rint(total / TWO_PI).astype(int)


def _signed_area(components: Sequence[Component]) -> float:
    area = 0.0
    for c in components:
        if c.kind == "segment":
            area += 0.5 * _cross(c.start, c.end)
        else:
            (cx, cy), r, a0, s = c.center, c.radius, c.start_angle, c.sweep
            area += 0.5 * (r * r * s + r * cx * (math.sin(a0 + s) - math.sin(a0))
                           - r * cy * (math.cos(a0 + s) - math.cos(a0)))
    return area


class CornerKind(str, enum.Enum):
    REGULAR = "Regular"
    VISIBLE = "VisibleSingular"
    INVISIBLE = "InvisibleSingular"


@dataclass(frozen=True)
class CornerInfo:
    index: int
    location: Point
    components: tuple[int, int]
    interior_angle: float
    kind: CornerKind
    loop_id: int
    normal_in: Point = field(repr=False)  # inward normal of the incoming component at the junction
    normal_out: Point = field(repr=False)  # inward normal of the outgoing component

    @property
    def is_singular(self) -> bool:
        return self.kind is not CornerKind.REGULAR


@dataclass(frozen=True, eq=False)
class Table:
    """A billiard table: closed loops of segments and arcs, interior on the left."""

    loops: tuple[tuple[Component, ...], ...]

    def __post_init__(self):
        loops = tuple(tuple(loop) for loop in self.loops)
        if not loops or any(len(loop) == 0 for loop in loops):
            raise TableFormatError("a table needs at least one non-empty loop")
        snapped = []
        for li, loop in enumerate(loops):
            comps = list(loop)
            for k in range(len(comps)):
                prev, nxt = comps[k - 1], comps[k]
                gap = _dist(prev.end_point, nxt.start_point)
                if gap > SNAP_TOL:
                    raise TableFormatError(
                        f"loop {li} is not closed: component {(k - 1) % len(comps)} ends at "
                        f"{prev.end_point} but component {k} starts at {nxt.start_point}")
                if gap > 0.0 and nxt.kind == "segment":
                    comps[k] = Segment(prev.end_point, nxt.end)
            snapped.append(tuple(comps))
        object.__setattr__(self, "loops", tuple(snapped))
        if self.area <= 0.0:
            raise TableFormatError(
                f"table interior is empty (signed area {self.area:.17g}); "
                "loops must keep the interior on their left")

    @cached_property
    def components(self) -> tuple[Component, ...]:
        return tuple(c for loop in self.loops for c in loop)

    @cached_property
    def loop_offsets(self) -> tuple[int, ...]:
        offsets, n = [], 0
        for loop in self.loops:
            offsets.append(n)
            n += len(loop)
        return tuple(offsets)

    def loop_of(self, component_id: int) -> int:
        for li in range(len(self.loops) - 1, -1, -1):
            if component_id >= self.loop_offsets[li]:
                return li
        raise IndexError(component_id)

    @cached_property
    def area(self) -> float:
        return sum(_signed_area(loop) for loop in self.loops)

    @cached_property
    def packed(self) -> tuple[np.ndarray, np.ndarray]:
        return pack_components(self.components)

    @cached_property
    def corners(self) -> tuple[CornerInfo, ...]:
        return tuple(classify_corners(self))

    def contains(self, points) -> np.ndarray:
        return winding_numbers(self.components, points) != 0

    def sample_boundary(self, n_per_component: int = 64) -> np.ndarray:
        return np.vstack([c.sample(n_per_component) for c in self.components])

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        pts = self.sample_boundary(65)
        return (float(pts[:, 0].min()), float(pts[:, 1].min()),
                float(pts[:, 0].max()), float(pts[:, 1].max()))


def classify_corners(table: Table) -> list[CornerInfo]:
    """One entry per junction, classified by the interior angle there.

    With the interior on the left, a right turn opens an angle larger than pi
    inside the table: any small enough ball can touch such a corner. A left
    turn leaves an angle below pi, which no ball of positive radius reaches.
    """
    out = []
    for li, loop in enumerate(table.loops):
        base = table.loop_offsets[li]
        m = len(loop)
        for k in range(m):
            incoming, outgoing = loop[k], loop[(k + 1) % m]
            t_in, t_out = incoming.tangent(1.0), outgoing.tangent(0.0)
            turn = math.atan2(_cross(t_in, t_out), _dot(t_in, t_out))
            angle = math.pi - turn
            if abs(angle - math.pi) <= CORNER_ANGLE_TOL:
                kind = CornerKind.REGULAR
            elif angle > math.pi:
                kind = CornerKind.VISIBLE
            else:
                kind = CornerKind.INVISIBLE
            out.append(CornerInfo(
                index=base + k, location=incoming.end_point,
                components=(base + k, base + (k + 1) % m),
                interior_angle=angle, kind=kind, loop_id=li,
                normal_in=incoming.inward_normal(1.0), normal_out=outgoing.inward_normal(0.0)))
    return out


def distance_to_boundary(table: Table, p) -> tuple[float, int]:
    """Euclidean distance from ``p`` to the boundary and the nearest component id."""
    p = _as_point(p)
    d, idx = kernels.boundary_distances(np.array([p]), *table.packed)
    return float(d[0]), int(idx[0])


# ---------------------------------------------------------------------------
# reduced table


@dataclass(frozen=True)
class ReducedPiece:
    curve: Component
    source_kind: str  # "component" or "corner"
    source_id: int
    loop_id: int = 0

    @property
    def tag(self) -> str:
        return f"{self.source_kind}:{self.source_id}"

    @property
    def is_corner_arc(self) -> bool:
        return self.source_kind == "corner"


@dataclass(frozen=True, eq=False)
class ReducedTable:
    """Region available to the ball centre, as closed loops of offset pieces."""

    radius: float
    loops: tuple[tuple[ReducedPiece, ...], ...]
    source: Table | None = None

    @classmethod
    def from_pieces(cls, pieces: Iterable[ReducedPiece | Component], radius: float = 0.0) -> ReducedTable:
        """Wrap bare pieces (no source table) for direct use by the event finder."""
        wrapped = tuple(p if isinstance(p, ReducedPiece) else ReducedPiece(p, "component", i)
                        for i, p in enumerate(pieces))
        return cls(radius, (wrapped,), None)

    @cached_property
    def pieces(self) -> tuple[ReducedPiece, ...]:
        return tuple(p for loop in self.loops for p in loop)

    @property
    def offset_components(self) -> list[ReducedPiece]:
        return [p for p in self.pieces if not p.is_corner_arc]

    @property
    def corner_arcs(self) -> list[ReducedPiece]:
        return [p for p in self.pieces if p.is_corner_arc]

    @cached_property
    def packed(self) -> tuple[np.ndarray, np.ndarray]:
        return pack_components([p.curve for p in self.pieces])

    def back_map(self, piece_index: int, p) -> Point:
        """Boundary point of the source table that a reduced point is offset from."""
        piece = self.pieces[piece_index]
        if self.source is None:
            raise ValueError("reduced table has no source table")
        if piece.is_corner_arc:
            return self.source.corners[piece.source_id].location
        return self.source.components[piece.source_id].closest_point(p)

    def offset_point(self, piece_index: int, p) -> Point:
        """Re-offset the back-mapped boundary point by the radius."""
        piece = self.pieces[piece_index]
        foot = self.back_map(piece_index, p)
        if piece.is_corner_arc:
            d = _dist(p, foot)
            return (foot[0] + self.radius * (p[0] - foot[0]) / d, foot[1] + self.radius * (p[1] - foot[1]) / d)
        comp = self.source.components[piece.source_id]
        n = comp.inward_normal(comp.param(foot)) if comp.kind == "arc" else comp.inward_normal()
        return (foot[0] + self.radius * n[0], foot[1] + self.radius * n[1])

    def contains(self, points, tol: float = KEEP_TOL) -> np.ndarray:
        """Membership of ball centres; boundary points count as inside."""
        pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
        if self.source is None:
            return winding_numbers([p.curve for p in self.pieces], pts) != 0
        d, _ = kernels.boundary_distances(pts, *self.source.packed)
        return self.source.contains(pts) & (d >= self.radius - tol)

    def to_dict(self) -> dict:
        return {"radius": self.radius,
                "loops": [[dict(p.curve.to_dict(), source=p.tag) for p in loop] for loop in self.loops]}

    def to_table(self) -> Table:
        return Table(tuple(tuple(p.curve for p in loop) for loop in self.loops))


def _corner_arc(corner: CornerInfo, r: float) -> Arc:
    start = math.atan2(corner.normal_in[1], corner.normal_in[0])
    return Arc(corner.location, r, start, -(corner.interior_angle - math.pi))


def _line_circle(a, d, c, radius) -> list[Point]:
    fx, fy = a[0] - c[0], a[1] - c[1]
    qa = _dot(d, d)
    qb = fx * d[0] + fy * d[1]
    qc = fx * fx + fy * fy - radius * radius
    disc = qb * qb - qa * qc
    if disc < 0.0:
        return []
    sq = math.sqrt(disc)
    roots = [(-qb - sq) / qa] if sq == 0.0 else [(-qb - sq) / qa, (-qb + sq) / qa]
    return [(a[0] + s * d[0], a[1] + s * d[1]) for s in roots]


def _circle_circle(c1, r1, c2, r2) -> list[Point]:
    d = _dist(c1, c2)
    if d == 0.0 or d > r1 + r2 or d < abs(r1 - r2):
        return []
    a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d)
    h = math.sqrt(max(r1 * r1 - a * a, 0.0))
    ux, uy = (c2[0] - c1[0]) / d, (c2[1] - c1[1]) / d
    mx, my = c1[0] + a * ux, c1[1] + a * uy
    if h == 0.0:
        return [(mx, my)]
    return [(mx - h * uy, my + h * ux), (mx + h * uy, my - h * ux)]


def _curve_intersections(c1: Component, c2: Component) -> list[tuple[float, float]]:
    if c1.kind == "segment" and c2.kind == "segment":
        d1, d2 = _sub(c1.end, c1.start), _sub(c2.end, c2.start)
        den = _cross(d1, d2)
        if abs(den) <= 1e-14 * c1.length * c2.length:
            return []
        w = _sub(c2.start, c1.start)
        s = _cross(w, d2) / den
        points = [c1.point(s)]
    elif c1.kind == "segment":
        points = _line_circle(c1.start, _sub(c1.end, c1.start), c2.center, c2.radius)
    elif c2.kind == "segment":
        points = _line_circle(c2.start, _sub(c2.end, c2.start), c1.center, c1.radius)
    else:
        points = _circle_circle(c1.center, c1.radius, c2.center, c2.radius)
    out = []
    for p in points:
        t1, t2 = c1.param(p), c2.param(p)
        if -SPLIT_EPS <= t1 <= 1.0 + SPLIT_EPS and -SPLIT_EPS <= t2 <= 1.0 + SPLIT_EPS:
            out.append((t1, t2))
    return out


def _split(curve: Component, params: list[float]) -> list[Component]:
    cuts = sorted(t for t in params if SPLIT_EPS < t < 1.0 - SPLIT_EPS)
    knots = [0.0]
    for t in cuts:
        if t - knots[-1] > SPLIT_EPS:
            knots.append(t)
    if 1.0 - knots[-1] <= SPLIT_EPS and len(knots) > 1:
        knots.pop()
    knots.append(1.0)
    if len(knots) == 2:
        return [curve]
    out = []
    for t0, t1 in zip(knots, knots[1:]):
        if (t1 - t0) * curve.length > MIN_PIECE:
            out.append(curve.sub(t0, t1))
    return out


def reduce_table(table: Table, r: float) -> ReducedTable:
    """Boundary of the set of centres of a radius-``r`` ball inside ``table``.

    Every component is offset inward by ``r`` and every visible corner gets an
    arc of radius ``r`` centred on it, spanning between the inward normals of
    its two components. The candidate pieces are cut at their mutual
    intersections; a sub-piece survives when it stays at distance at least
    ``r`` from the whole boundary. Survivors are chained into closed loops.
    """
    r = float(r)
    if not (math.isfinite(r) and r > 0.0):
        raise ValueError(f"radius must be positive and finite, got {r}")

    candidates: list[ReducedPiece] = []
    for cid, comp in enumerate(table.components):
        off = comp.offset(r)
        if off is not None:
            candidates.append(ReducedPiece(off, "component", cid, table.loop_of(cid)))
    for corner in table.corners:
        if corner.kind is CornerKind.VISIBLE:
            candidates.append(ReducedPiece(_corner_arc(corner, r), "corner", corner.index, corner.loop_id))

    cuts: list[list[float]] = [[] for _ in candidates]
    for i in range(len(candidates)):
        for j in range(i + 1, len(candidates)):
            for ti, tj in _curve_intersections(candidates[i].curve, candidates[j].curve):
                cuts[i].append(ti)
                cuts[j].append(tj)

    pieces: list[ReducedPiece] = []
    probes = (0.25, 0.5, 0.75)
    for cand, params in zip(candidates, cuts):
        for sub in _split(cand.curve, params):
            pts = np.array([sub.point(t) for t in probes])
            d, _ = kernels.boundary_distances(pts, *table.packed)
            if np.all(d >= r - KEEP_TOL) and np.all(table.contains(pts)):
                pieces.append(ReducedPiece(sub, cand.source_kind, cand.source_id, cand.loop_id))

    if not pieces:
        raise TableVanishesError("table vanishes at this radius", loop_id=0)
    surviving = {p.loop_id for p in pieces}
    if 0 not in surviving:
        raise TableVanishesError("table vanishes at this radius", loop_id=0)

    loops = _chain(pieces)
    return ReducedTable(r, loops, table)


def _turn(a: Point, b: Point) -> float:
    return math.atan2(_cross(a, b), _dot(a, b))


def _chain(pieces: list[ReducedPiece]) -> tuple[tuple[ReducedPiece, ...], ...]:
    unused = list(range(len(pieces)))
    loops = []
    while unused:
        first = unused.pop(0)
        chain = [first]
        start = pieces[first].curve.start_point
        while True:
            cur = pieces[chain[-1]].curve
            end = cur.end_point
            if _dist(end, start) <= CHAIN_TOL:
                break
            nxt = [j for j in unused if _dist(pieces[j].curve.start_point, end) <= CHAIN_TOL]
            if not nxt:
                raise ReductionError(
                    f"offset boundary does not close at {end}; the radius is too large for this table",
                    loop_id=pieces[chain[-1]].loop_id)
            # at a pinch point keep the tightest (rightmost) continuation
            t_in = cur.tangent(1.0)
            j = min(nxt, key=lambda k: (_turn(t_in, pieces[k].curve.tangent(0.0)), k))
            unused.remove(j)
            chain.append(j)
        loops.append(tuple(pieces[k] for k in chain))
    return tuple(loops)


def is_visible_for_radius(table: Table, corner: CornerInfo | int, r: float) -> bool:
    """Whether a ball of radius ``r`` can touch ``corner``.

    True when the corner's arc keeps a positive extent in ``reduce_table``.
    Non-visible corners are never touched and give False.
    """
    if isinstance(corner, int):
        corner = table.corners[corner]
    if corner.kind is not CornerKind.VISIBLE:
        return False
    rt = reduce_table(table, r)
    return any(p.is_corner_arc and p.source_id == corner.index and p.curve.length > MIN_PIECE
               for p in rt.pieces)
