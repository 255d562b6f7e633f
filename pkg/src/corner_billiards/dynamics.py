"""Event-driven motion of the ball centre in the reduced table.

Between collisions the centre moves on a straight line at constant velocity
and the spin is carried along unchanged. At a collision the contact point on
the original boundary is recovered (the corner itself for corner-arc hits)
and the smooth or rough collision map is applied there.
"""

from __future__ import annotations

import csv
import enum
import io
import logging
import math
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np

from . import kernels
from .collision import (BallSpec, BallState, CollisionContext, ConservationReport, Impulse,
                        audit_conservation, is_grazing, kinetic_energy, reflect)
from .errors import InitialStateError, SimulationError
from .geometry import ReducedTable, Table, reduce_table

log = logging.getLogger(__name__)

MIN_FLIGHT = 1e-12
# a ray entering a wedge of angle a bounces about pi / a times in quick succession
MAX_BURST = 16
CSV_HEADER = ("event_index", "t", "x", "y", "vx", "vy", "omega", "source_kind", "source_id", "dK")


class SourceKind(str, enum.Enum):
    REGULAR = "RegularComponent"
    CORNER = "CornerArc"


@dataclass(frozen=True)
class CollisionEvent:
    time: float  # time of flight from the query position
    point: tuple[float, float]
    source_kind: SourceKind
    source_id: int
    normal: tuple[float, float]  # unit, into the reduced table
    piece_index: int


class Termination(str, enum.Enum):
    COLLISIONS = "collisions"
    HORIZON = "horizon"
    ERROR = "error"


@dataclass(frozen=True)
class TrajectoryRecord:
    time: float  # cumulative
    event: CollisionEvent
    before: BallState
    after: BallState
    impulse: Impulse
    audit: ConservationReport
    grazing: bool = False

    @property
    def energy_change(self) -> float:
        return self.audit.energy_change


@dataclass
class Trajectory:
    initial: BallState
    spec: BallSpec
    records: list[TrajectoryRecord] = field(default_factory=list)
    final: BallState | None = None
    final_time: float = 0.0
    termination: Termination = Termination.COLLISIONS
    message: str | None = None

    def __len__(self):
        return len(self.records)

    @property
    def energies(self) -> np.ndarray:
        return np.array([kinetic_energy(rec.after, self.spec) for rec in self.records])

    @property
    def energy_drift(self) -> float:
        """Largest deviation of the kinetic energy from its initial value."""
        if not self.records:
            return 0.0
        return float(np.max(np.abs(self.energies - kinetic_energy(self.initial, self.spec))))

    def positions(self) -> np.ndarray:
        """Initial, event and final centre positions as an ``(k, 2)`` polyline."""
        pts = [self.initial.position[:2]]
        pts += [rec.after.position[:2] for rec in self.records]
        if self.final is not None:
            pts.append(self.final.position[:2])
        return np.array(pts)


def next_event(rt: ReducedTable, position, velocity) -> CollisionEvent | None:
    """First boundary piece the centre reaches; ``None`` if the ray escapes."""
    kinds, geom = rt.packed
    i, t = kernels.first_hit(position, velocity, kinds, geom)
    if i < 0:
        return None
    piece = rt.pieces[i]
    px, py = position[0] + t * velocity[0], position[1] + t * velocity[1]
    curve = piece.curve
    if curve.kind == "segment":
        n = curve.inward_normal()
    else:
        d = math.hypot(px - curve.center[0], py - curve.center[1])
        n = (curve.side * (px - curve.center[0]) / d, curve.side * (py - curve.center[1]) / d)
    kind = SourceKind.CORNER if piece.is_corner_arc else SourceKind.REGULAR
    return CollisionEvent(t, (px, py), kind, piece.source_id, n, i)


def _contact_context(rt: ReducedTable, event: CollisionEvent, spec: BallSpec) -> CollisionContext:
    center = np.array([event.point[0], event.point[1], 0.0])
    if rt.source is None:
        n = np.array([event.normal[0], event.normal[1], 0.0])
        return CollisionContext(center - spec.radius * n, n, spec.radius)
    foot = rt.back_map(event.piece_index, event.point)
    return CollisionContext.from_points((foot[0], foot[1], 0.0), center, spec.radius)


def step(rt: ReducedTable, state: BallState, spec: BallSpec) -> tuple[BallState, CollisionEvent]:
    """Fly to the next collision and apply the collision map there."""
    after, event, *_ = _step(rt, state, spec)
    return after, event


def _step(rt, state, spec):
    event = next_event(rt, state.position, state.velocity)
    if event is None:
        raise SimulationError(f"no boundary ahead of {state.position[:2].tolist()} "
                              f"moving along {state.velocity[:2].tolist()}; is the table closed?")
    arrived = state.with_position((event.point[0], event.point[1], 0.0))
    ctx = _contact_context(rt, event, spec)
    grazing = is_grazing(arrived.velocity, ctx)
    if grazing:
        log.warning("grazing collision with %s %d at %s", event.source_kind.value, event.source_id,
                    event.point)
    after, impulse = reflect(arrived, ctx, spec)
    return after, event, arrived, impulse, ctx, grazing


def time_reverse(state: BallState) -> BallState:
    return BallState(state.position, -state.velocity, -state.omega)


def simulate(table: Table, spec: BallSpec, initial: BallState, *, collisions: int | None = None,
             horizon: float | None = None, reduced: ReducedTable | None = None) -> Trajectory:
    """Run until ``collisions`` events have happened or time ``horizon`` is reached.

    Errors met mid-flight (no event ahead, a pinned ball) end the run with
    ``Termination.ERROR`` and keep the events recorded so far.
    """
    if (collisions is None) == (horizon is None):
        raise ValueError("give exactly one of collisions / horizon")
    if collisions is not None and collisions <= 0:
        raise ValueError("collision count must be positive")
    if horizon is not None and not horizon > 0.0:
        raise ValueError("time horizon must be positive")
    if not initial.is_planar:
        raise InitialStateError("initial state must lie in the table plane (spin about z only)")

    rt = reduced if reduced is not None else reduce_table(table, spec.radius)
    if not rt.contains(initial.position[:2])[0]:
        raise InitialStateError(f"initial centre {initial.position[:2].tolist()} is outside the "
                                f"reduced table for radius {spec.radius}")
    if not np.any(initial.velocity):
        raise InitialStateError("initial velocity is zero")

    traj = Trajectory(initial=initial, spec=spec)
    state, now = initial, 0.0
    burst = 0
    while True:
        if collisions is not None and len(traj.records) >= collisions:
            traj.termination = Termination.COLLISIONS
            break
        try:
            after, event, arrived, impulse, ctx, grazing = _step(rt, state, spec)
            # the first event may sit at t = 0 (a time-reversed run starts on the boundary)
            if event.time < MIN_FLIGHT and traj.records:
                burst += 1
                if event.piece_index == traj.records[-1].event.piece_index or burst > MAX_BURST:
                    raise SimulationError(f"pinned in corner near {event.point}: "
                                          f"flight time {event.time:.3g}")
            else:
                burst = 0
        except SimulationError as exc:
            log.error("simulation stopped: %s", exc)
            traj.termination, traj.message = Termination.ERROR, str(exc)
            break
        if horizon is not None and now + event.time > horizon:
            state = state.moved(horizon - now)
            now = horizon
            traj.termination = Termination.HORIZON
            break
        now += event.time
        audit = audit_conservation(arrived, after, impulse, ctx, spec)
        traj.records.append(TrajectoryRecord(now, event, arrived, after, impulse, audit, grazing))
        state = after
    traj.final, traj.final_time = state, now
    return traj


def _fmt(x: float) -> str:
    return format(x, ".17g")


def write_csv(traj: Trajectory, out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for i, rec in enumerate(traj.records):
        s = rec.after
        w.writerow([i, _fmt(rec.time), _fmt(s.position[0]), _fmt(s.position[1]),
                    _fmt(s.velocity[0]), _fmt(s.velocity[1]), _fmt(s.omega[2]),
                    rec.event.source_kind.value, rec.event.source_id, _fmt(rec.energy_change)])


def trajectory_csv(traj: Trajectory) -> str:
    buf = io.StringIO()
    write_csv(traj, buf)
    return buf.getvalue()
