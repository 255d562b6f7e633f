"""Numeric inner loops shared by geometry and dynamics.

Boundaries are packed into two arrays: ``kinds`` (``SEGMENT`` or ``ARC``) and
``geom`` with six float columns per component::

    segment: x0, y0, x1, y1, nx, ny      (nx, ny = unit inward normal)
    arc:     cx, cy, R, start, sweep, side

``sweep`` is signed (positive = counter-clockwise traversal) and ``side`` is
``+1`` when the interior lies outside the circle, ``-1`` when inside, so the
inward normal at a point ``p`` on the arc is ``side * (p - c) / R``.

Every kernel exists twice: a loop version compiled with numba and a
vectorised numpy version. The public names dispatch to numba unless
``CORNER_BILLIARDS_NO_JIT`` is set to a truthy value (or numba is missing).
"""

from __future__ import annotations

import math
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

SEGMENT = 0
ARC = 1
TWO_PI = 2.0 * math.pi

# angular slack when testing whether a point lies inside an arc's sweep
ANGLE_TOL = 1e-12
# parametric slack at segment endpoints
ENDPOINT_TOL = 1e-12


def _jit_disabled() -> bool:
    return os.environ.get("CORNER_BILLIARDS_NO_JIT", "").strip().lower() in {"1", "true", "yes", "on"}


USING_NUMBA = numba is not None and not _jit_disabled()


def _njit(fn):
    if numba is None:  # pragma: no cover
        return fn
    return numba.njit(cache=True)(fn)


# ---------------------------------------------------------------------------
# scalar helpers (compiled when numba is present)


@_njit
def _arc_offset_angle(px, py, cx, cy, start, sweep):
    """Angle travelled from the arc start to the ray through ``p``, in [0, 2pi)."""
    phi = math.atan2(py - cy, px - cx)
    if sweep >= 0.0:
        u = (phi - start) % TWO_PI
    else:
        u = (start - phi) % TWO_PI
    return u


@_njit
def _in_sweep(u, sweep):
    extent = abs(sweep)
    return u <= extent + ANGLE_TOL or u >= TWO_PI - ANGLE_TOL


@_njit
def _point_distance(px, py, kind, g):
    if kind == SEGMENT:
        ex = g[2] - g[0]
        ey = g[3] - g[1]
        t = ((px - g[0]) * ex + (py - g[1]) * ey) / (ex * ex + ey * ey)
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
        return math.hypot(px - (g[0] + t * ex), py - (g[1] + t * ey))
    cx, cy, radius, start, sweep = g[0], g[1], g[2], g[3], g[4]
    u = _arc_offset_angle(px, py, cx, cy, start, sweep)
    if _in_sweep(u, sweep):
        return abs(math.hypot(px - cx, py - cy) - radius)
    end = start + sweep
    d0 = math.hypot(px - (cx + radius * math.cos(start)), py - (cy + radius * math.sin(start)))
    d1 = math.hypot(px - (cx + radius * math.cos(end)), py - (cy + radius * math.sin(end)))
    return min(d0, d1)


@_njit
def _hit_segment(px, py, vx, vy, g, t_floor):
    nx, ny = g[4], g[5]
    vn = vx * nx + vy * ny
    if vn >= 0.0:
        return np.inf
    t = ((g[0] - px) * nx + (g[1] - py) * ny) / vn
    if t < t_floor:
        return np.inf
    ex = g[2] - g[0]
    ey = g[3] - g[1]
    hx = px + t * vx - g[0]
    hy = py + t * vy - g[1]
    s = (hx * ex + hy * ey) / (ex * ex + ey * ey)
    if s < -ENDPOINT_TOL or s > 1.0 + ENDPOINT_TOL:
        return np.inf
    return max(t, 0.0)


@_njit
def _hit_arc(px, py, vx, vy, g, t_floor):
    cx, cy, radius, start, sweep, side = g[0], g[1], g[2], g[3], g[4], g[5]
    dx = px - cx
    dy = py - cy
    a = vx * vx + vy * vy
    b = dx * vx + dy * vy
    c = dx * dx + dy * dy - radius * radius
    disc = b * b - a * c
    if disc < 0.0:
        return np.inf
    sq = math.sqrt(disc)
    q = -(b + math.copysign(sq, b))
    if q == 0.0:
        return np.inf
    r0 = q / a
    r1 = c / q
    if r1 < r0:
        r0, r1 = r1, r0
    for t in (r0, r1):
        if t < t_floor:
            continue
        hx = px + t * vx
        hy = py + t * vy
        u = _arc_offset_angle(hx, hy, cx, cy, start, sweep)
        if not _in_sweep(u, sweep):
            continue
        # approach: moving against the inward normal
        if side * ((hx - cx) * vx + (hy - cy) * vy) < 0.0:
            return max(t, 0.0)
    return np.inf


# ---------------------------------------------------------------------------
# first hit of a ray against a packed boundary


@_njit
def _first_hit_numba(px, py, vx, vy, kinds, geom, t_floor, tie_tol):
    n = kinds.shape[0]
    times = np.empty(n)
    for i in range(n):
        if kinds[i] == SEGMENT:
            times[i] = _hit_segment(px, py, vx, vy, geom[i], t_floor)
        else:
            times[i] = _hit_arc(px, py, vx, vy, geom[i], t_floor)
    best = -1
    t_best = np.inf
    for i in range(n):
        if times[i] < t_best:
            t_best = times[i]
            best = i
    if best < 0:
        return -1, np.inf
    window = t_best + tie_tol * max(1.0, t_best)
    for i in range(n):
        if kinds[i] == ARC and times[i] <= window:
            return i, times[i]
    for i in range(n):
        if times[i] <= window:
            return i, times[i]
    return best, t_best


def _first_hit_numpy(px, py, vx, vy, kinds, geom, t_floor, tie_tol):
    n = kinds.shape[0]
    times = np.full(n, np.inf)
    seg = kinds == SEGMENT
    arc = ~seg

    if seg.any():
        g = geom[seg]
        vn = vx * g[:, 4] + vy * g[:, 5]
        with np.errstate(divide="ignore", invalid="ignore"):
            t = ((g[:, 0] - px) * g[:, 4] + (g[:, 1] - py) * g[:, 5]) / vn
            ex = g[:, 2] - g[:, 0]
            ey = g[:, 3] - g[:, 1]
            s = ((px + t * vx - g[:, 0]) * ex + (py + t * vy - g[:, 1]) * ey) / (ex * ex + ey * ey)
        ok = (vn < 0.0) & (t >= t_floor) & (s >= -ENDPOINT_TOL) & (s <= 1.0 + ENDPOINT_TOL)
        times[seg] = np.where(ok, np.maximum(t, 0.0), np.inf)

    if arc.any():
        g = geom[arc]
        cx, cy, radius, start, sweep, side = g.T
        dx = px - cx
        dy = py - cy
        a = vx * vx + vy * vy
        b = dx * vx + dy * vy
        c = dx * dx + dy * dy - radius * radius
        disc = b * b - a * c
        sq = np.sqrt(np.maximum(disc, 0.0))
        q = -(b + np.copysign(sq, b))
        with np.errstate(divide="ignore", invalid="ignore"):
            roots = np.sort(np.stack([q / a, c / q], axis=1), axis=1)
        usable = (disc >= 0.0) & (q != 0.0)
        best = np.full(g.shape[0], np.inf)
        # the smaller root wins when valid, so walk the larger one first
        for k in (1, 0):
            t = roots[:, k]
            hx = px + t * vx
            hy = py + t * vy
            phi = np.arctan2(hy - cy, hx - cx)
            u = np.where(sweep >= 0.0, (phi - start) % TWO_PI, (start - phi) % TWO_PI)
            in_sweep = (u <= np.abs(sweep) + ANGLE_TOL) | (u >= TWO_PI - ANGLE_TOL)
            approach = side * ((hx - cx) * vx + (hy - cy) * vy) < 0.0
            ok = usable & (t >= t_floor) & in_sweep & approach
            best = np.where(ok, np.maximum(t, 0.0), best)
        times[arc] = best

    if not np.isfinite(times).any():
        return -1, np.inf
    t_best = times.min()
    window = t_best + tie_tol * max(1.0, t_best)
    tied = times <= window
    arcs_tied = np.flatnonzero(tied & arc)
    i = int(arcs_tied[0]) if arcs_tied.size else int(np.flatnonzero(tied)[0])
    return i, float(times[i])


# ---------------------------------------------------------------------------
# point-to-boundary distances


@_njit
def _distances_numba(points, kinds, geom):
    m = points.shape[0]
    n = kinds.shape[0]
    dist = np.empty(m)
    nearest = np.empty(m, dtype=np.int64)
    for j in range(m):
        best = np.inf
        bi = -1
        for i in range(n):
            d = _point_distance(points[j, 0], points[j, 1], kinds[i], geom[i])
            if d < best:
                best = d
                bi = i
        dist[j] = best
        nearest[j] = bi
    return dist, nearest


def _distances_numpy(points, kinds, geom):
    px = points[:, 0:1]
    py = points[:, 1:2]
    out = np.empty((points.shape[0], kinds.shape[0]))

    seg = np.flatnonzero(kinds == SEGMENT)
    if seg.size:
        g = geom[seg]
        ex = g[:, 2] - g[:, 0]
        ey = g[:, 3] - g[:, 1]
        t = np.clip(((px - g[:, 0]) * ex + (py - g[:, 1]) * ey) / (ex * ex + ey * ey), 0.0, 1.0)
        out[:, seg] = np.hypot(px - (g[:, 0] + t * ex), py - (g[:, 1] + t * ey))

    arc = np.flatnonzero(kinds == ARC)
    if arc.size:
        g = geom[arc]
        cx, cy, radius, start, sweep = g[:, 0], g[:, 1], g[:, 2], g[:, 3], g[:, 4]
        phi = np.arctan2(py - cy, px - cx)
        u = np.where(sweep >= 0.0, (phi - start) % TWO_PI, (start - phi) % TWO_PI)
        inside = (u <= np.abs(sweep) + ANGLE_TOL) | (u >= TWO_PI - ANGLE_TOL)
        radial = np.abs(np.hypot(px - cx, py - cy) - radius)
        end = start + sweep
        d0 = np.hypot(px - (cx + radius * np.cos(start)), py - (cy + radius * np.sin(start)))
        d1 = np.hypot(px - (cx + radius * np.cos(end)), py - (cy + radius * np.sin(end)))
        out[:, arc] = np.where(inside, radial, np.minimum(d0, d1))

    nearest = np.argmin(out, axis=1)
    return out[np.arange(points.shape[0]), nearest], nearest.astype(np.int64)


# ---------------------------------------------------------------------------
# batched collision maps


@_njit
def _reflect_batch_numba(velocity, omega, normal, radius, inertia, rough):
    m = velocity.shape[0]
    v_out = np.empty_like(velocity)
    w_out = np.empty_like(omega)
    for i in range(m):
        nx, ny, nz = normal[i, 0], normal[i, 1], normal[i, 2]
        vx, vy, vz = velocity[i, 0], velocity[i, 1], velocity[i, 2]
        vn = vx * nx + vy * ny + vz * nz
        tx = vx - vn * nx
        ty = vy - vn * ny
        tz = vz - vn * nz
        wx, wy, wz = omega[i, 0], omega[i, 1], omega[i, 2]
        if rough:
            r = radius[i]
            inert = inertia[i]
            ax, ay, az = r * nx, r * ny, r * nz
            # slip = V_T + AO x omega
            sx = tx + ay * wz - az * wy
            sy = ty + az * wx - ax * wz
            sz = tz + ax * wy - ay * wx
            k = -2.0 * inert / (r * r + inert)
            px, py, pz = k * sx, k * sy, k * sz
            v_out[i, 0] = tx + px - vn * nx
            v_out[i, 1] = ty + py - vn * ny
            v_out[i, 2] = tz + pz - vn * nz
            # omega += (dP_T x AO) / I
            w_out[i, 0] = wx + (py * az - pz * ay) / inert
            w_out[i, 1] = wy + (pz * ax - px * az) / inert
            w_out[i, 2] = wz + (px * ay - py * ax) / inert
        else:
            v_out[i, 0] = tx - vn * nx
            v_out[i, 1] = ty - vn * ny
            v_out[i, 2] = tz - vn * nz
            w_out[i, 0] = wx
            w_out[i, 1] = wy
            w_out[i, 2] = wz
    return v_out, w_out


def _reflect_batch_numpy(velocity, omega, normal, radius, inertia, rough):
    vn = np.einsum("ij,ij->i", velocity, normal)[:, None]
    v_normal = vn * normal
    v_tangent = velocity - v_normal
    if not rough:
        return v_tangent - v_normal, omega.copy()
    ao = radius[:, None] * normal
    slip = v_tangent + np.cross(ao, omega)
    impulse = (-2.0 * inertia / (radius * radius + inertia))[:, None] * slip
    return v_tangent + impulse - v_normal, omega + np.cross(impulse, ao) / inertia[:, None]


# ---------------------------------------------------------------------------
# public dispatch

if USING_NUMBA:
    _first_hit_impl = _first_hit_numba
    _distances_impl = _distances_numba
    _reflect_impl = _reflect_batch_numba
else:
    _first_hit_impl = _first_hit_numpy
    _distances_impl = _distances_numpy
    _reflect_impl = _reflect_batch_numpy


def first_hit(position, velocity, kinds, geom, t_floor=-1e-9, tie_tol=1e-12):
    """Earliest approaching intersection of a ray with a packed boundary.

    Returns ``(index, time)``; ``index`` is -1 when the ray hits nothing.
    Near-simultaneous hits (within ``tie_tol`` relative) go to arcs first,
    then to the lowest index.
    """
    i, t = _first_hit_impl(float(position[0]), float(position[1]), float(velocity[0]),
                           float(velocity[1]), kinds, geom, float(t_floor), float(tie_tol))
    return int(i), float(t)


def boundary_distances(points, kinds, geom):
    """Distance from each row of ``points`` to the boundary, and the nearest component."""
    points = np.ascontiguousarray(points, dtype=np.float64).reshape(-1, 2)
    return _distances_impl(points, kinds, geom)


def reflect_batch(velocity, omega, normal, radius, inertia, rough):
    """Apply the smooth or rough collision map to ``m`` states at once.

    All vector arguments are ``(m, 3)``; ``radius`` and ``inertia`` are ``(m,)``.
    """
    velocity = np.ascontiguousarray(velocity, dtype=np.float64)
    omega = np.ascontiguousarray(omega, dtype=np.float64)
    normal = np.ascontiguousarray(normal, dtype=np.float64)
    m = velocity.shape[0]
    radius = np.ascontiguousarray(np.broadcast_to(radius, (m,)), dtype=np.float64)
    inertia = np.ascontiguousarray(np.broadcast_to(inertia, (m,)), dtype=np.float64)
    return _reflect_impl(velocity, omega, normal, radius, inertia, bool(rough))
