"""Collision map of a hard ball (unit mass) at a single contact point.

The state acted on is ``(V_N, V_T, omega)``: normal and tangential parts of
the centre velocity plus the angular velocity about the centre. A smooth
ball reverses ``V_N`` and keeps the rest. A rough (no-slip) ball also
exchanges tangential momentum with spin through the tangential impulse

    dP_T = -2 I / (r^2 + I) * (V_T + AO x omega)

which is the non-zero energy-conserving root of the impulse balance. Both
maps are involutions and preserve kinetic energy.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation

log = logging.getLogger(__name__)

GRAZING_TOL = 1e-12
EIGEN_TOL = 1e-9


def _vec3(v, what: str) -> np.ndarray:
    a = np.array(v, dtype=np.float64).reshape(-1)
    if a.size == 2:
        a = np.append(a, 0.0)
    if a.size != 3:
        raise ValueError(f"{what}: expected a 2- or 3-vector, got shape {np.shape(v)}")
    if not np.isfinite(a).all():
        raise ValueError(f"{what}: non-finite components {a}")
    a.setflags(write=False)
    return a


def _cross(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # np.cross carries heavy per-call overhead for single 3-vectors
    return np.array([a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]])


class Surface(str, enum.Enum):
    SMOOTH = "smooth"
    ROUGH = "rough"


@dataclass(frozen=True)
class BallSpec:
    radius: float
    inertia: float | None = None  # defaults to a uniform disk, r^2 / 2
    surface: Surface = Surface.SMOOTH
    mass: float = 1.0

    def __post_init__(self):
        r = float(self.radius)
        if not (math.isfinite(r) and r > 0.0):
            raise ValueError(f"ball radius must be positive, got {self.radius}")
        inertia = 0.5 * r * r if self.inertia is None else float(self.inertia)
        if not (math.isfinite(inertia) and inertia > 0.0):
            raise ValueError(f"moment of inertia must be positive, got {self.inertia}")
        if self.mass != 1.0:
            raise ValueError("mass is normalised to 1; rescale velocities instead")
        object.__setattr__(self, "radius", r)
        object.__setattr__(self, "inertia", inertia)
        object.__setattr__(self, "surface", Surface(self.surface))

    @classmethod
    def disk(cls, radius: float, surface: Surface | str = Surface.SMOOTH) -> BallSpec:
        return cls(radius, 0.5 * radius * radius, Surface(surface))

    @classmethod
    def sphere(cls, radius: float, surface: Surface | str = Surface.SMOOTH) -> BallSpec:
        return cls(radius, 0.4 * radius * radius, Surface(surface))

    @property
    def rough(self) -> bool:
        return self.surface is Surface.ROUGH


@dataclass(frozen=True, eq=False)
class BallState:
    position: np.ndarray
    velocity: np.ndarray
    omega: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "position", _vec3(self.position, "position"))
        object.__setattr__(self, "velocity", _vec3(self.velocity, "velocity"))
        object.__setattr__(self, "omega", _vec3(self.omega, "omega"))

    @classmethod
    def planar(cls, position, velocity, omega: float = 0.0) -> BallState:
        return cls(position, velocity, (0.0, 0.0, omega))

    @property
    def is_planar(self) -> bool:
        return (self.position[2] == 0.0 and self.velocity[2] == 0.0
                and self.omega[0] == 0.0 and self.omega[1] == 0.0)

    def moved(self, dt: float) -> BallState:
        return BallState(self.position + dt * self.velocity, self.velocity, self.omega)

    def with_position(self, position) -> BallState:
        return BallState(position, self.velocity, self.omega)

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.position, self.velocity, self.omega])

    def __repr__(self):
        return (f"BallState(position={self.position.tolist()}, velocity={self.velocity.tolist()}, "
                f"omega={self.omega.tolist()})")


@dataclass(frozen=True, eq=False)
class CollisionContext:
    """Contact point ``A`` and the unit normal ``n`` pointing from ``A`` to the centre."""

    contact: np.ndarray
    normal: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "contact", _vec3(self.contact, "contact"))
        object.__setattr__(self, "normal", _vec3(self.normal, "normal"))
        if abs(np.linalg.norm(self.normal) - 1.0) > 1e-12:
            raise ValueError(f"contact normal must be a unit vector, got {self.normal}")
        if not self.radius > 0.0:
            raise ValueError("contact radius must be positive")

    @classmethod
    def from_points(cls, contact, center, radius: float) -> CollisionContext:
        """Build from the contact point and the ball centre; checks ``|AO| = r``."""
        contact, center = _vec3(contact, "contact"), _vec3(center, "center")
        ao = center - contact
        d = float(np.linalg.norm(ao))
        if abs(d - radius) > 1e-9:
            raise ContractViolation(f"|AO| = {d!r} differs from the ball radius {radius!r}")
        return cls(contact, ao / d, radius)

    @property
    def ao(self) -> np.ndarray:
        return self.radius * self.normal

    @property
    def center(self) -> np.ndarray:
        return self.contact + self.ao


@dataclass(frozen=True, eq=False)
class VelocitySplit:
    normal: np.ndarray
    tangential: np.ndarray


@dataclass(frozen=True, eq=False)
class Impulse:
    normal: np.ndarray
    tangential: np.ndarray

    @property
    def total(self) -> np.ndarray:
        return self.normal + self.tangential


@dataclass(frozen=True)
class ConservedQuantities:
    energy: float
    momentum: np.ndarray
    angular_momentum: np.ndarray


@dataclass(frozen=True)
class ConservationReport:
    energy_change: float
    momentum_residual: np.ndarray
    angular_momentum_residual: np.ndarray

    @property
    def max_residual(self) -> float:
        return max(abs(self.energy_change), float(np.abs(self.momentum_residual).max()),
                   float(np.abs(self.angular_momentum_residual).max()))


def decompose_velocity(velocity, ctx: CollisionContext) -> VelocitySplit:
    v = _vec3(velocity, "velocity")
    vn = float(v @ ctx.normal) * ctx.normal
    return VelocitySplit(vn, v - vn)


def kinetic_energy(state: BallState, spec: BallSpec) -> float:
    return 0.5 * (float(state.velocity @ state.velocity) + spec.inertia * float(state.omega @ state.omega))


def conserved_quantities(state: BallState, spec: BallSpec) -> ConservedQuantities:
    return ConservedQuantities(kinetic_energy(state, spec), state.velocity.copy(), spec.inertia * state.omega)


def is_grazing(velocity, ctx: CollisionContext) -> bool:
    v = np.asarray(velocity, dtype=np.float64)
    return abs(float(v @ ctx.normal)) < GRAZING_TOL * float(np.linalg.norm(v))


def rough_impulse(state: BallState, ctx: CollisionContext, spec: BallSpec) -> np.ndarray:
    """Tangential impulse of a no-slip collision."""
    split = decompose_velocity(state.velocity, ctx)
    slip = split.tangential + _cross(ctx.ao, state.omega)
    return -(2.0 * spec.inertia / (spec.radius ** 2 + spec.inertia)) * slip


def reflect_smooth(state: BallState, ctx: CollisionContext, spec: BallSpec) -> tuple[BallState, Impulse]:
    split = decompose_velocity(state.velocity, ctx)
    if is_grazing(state.velocity, ctx):
        log.info("grazing contact at %s", ctx.contact.tolist())
    after = BallState(state.position, split.tangential - split.normal, state.omega)
    return after, Impulse(-2.0 * split.normal, np.zeros(3))


def reflect_rough(state: BallState, ctx: CollisionContext, spec: BallSpec) -> tuple[BallState, Impulse]:
    split = decompose_velocity(state.velocity, ctx)
    if is_grazing(state.velocity, ctx):
        log.info("grazing contact at %s", ctx.contact.tolist())
    dpt = rough_impulse(state, ctx, spec)
    velocity = split.tangential + dpt - split.normal
    omega = state.omega + _cross(dpt, ctx.ao) / spec.inertia
    return BallState(state.position, velocity, omega), Impulse(-2.0 * split.normal, dpt)


def reflect(state: BallState, ctx: CollisionContext, spec: BallSpec) -> tuple[BallState, Impulse]:
    """Dispatch on the ball's surface type."""
    if spec.rough:
        return reflect_rough(state, ctx, spec)
    return reflect_smooth(state, ctx, spec)


def impulse_residual(dpt, state: BallState, ctx: CollisionContext, spec: BallSpec) -> float:
    """Energy balance for a tangential impulse; zero exactly when it conserves energy.

    Evaluates <dP_T, (r^2 + I)/I dP_T + 2 V_T + 2 AO x omega>.
    """
    dpt = _vec3(dpt, "dP_T")
    split = decompose_velocity(state.velocity, ctx)
    r2, inertia = spec.radius ** 2, spec.inertia
    return float(dpt @ ((r2 + inertia) / inertia * dpt + 2.0 * split.tangential
                        + 2.0 * _cross(ctx.ao, state.omega)))


def audit_conservation(before: BallState, after: BallState, impulse: Impulse,
                       ctx: CollisionContext, spec: BallSpec) -> ConservationReport:
    return ConservationReport(
        energy_change=kinetic_energy(after, spec) - kinetic_energy(before, spec),
        momentum_residual=after.velocity - before.velocity - impulse.normal - impulse.tangential,
        angular_momentum_residual=spec.inertia * (after.omega - before.omega)
        - _cross(impulse.tangential, ctx.ao),
    )


# ---------------------------------------------------------------------------
# matrix form


def contact_frame(normal) -> np.ndarray:
    """Rows ``n, t1, t2``: a right-handed orthonormal frame with ``n`` first."""
    n = _vec3(normal, "normal")
    axis = np.eye(3)[int(np.argmin(np.abs(n)))]
    t1 = np.cross(n, axis)
    t1 /= np.linalg.norm(t1)
    t2 = np.cross(n, t1)
    return np.vstack([n, t1, t2])


def to_frame(state: BallState, ctx: CollisionContext, spec: BallSpec) -> np.ndarray:
    """Coordinates ``(V.n, V.t1, V.t2, sqrt(I) omega_xyz)`` used by :func:`collision_matrix`.

    The spin is scaled by ``sqrt(I)`` so the Euclidean norm of the coordinate
    vector is twice the kinetic energy; in these coordinates the collision
    map is orthogonal.
    """
    frame = contact_frame(ctx.normal)
    return np.concatenate([frame @ state.velocity, math.sqrt(spec.inertia) * state.omega])


def from_frame(x, position, ctx: CollisionContext, spec: BallSpec) -> BallState:
    frame = contact_frame(ctx.normal)
    x = np.asarray(x, dtype=np.float64)
    return BallState(position, frame.T @ x[:3], x[3:] / math.sqrt(spec.inertia))


def collision_matrix(ctx: CollisionContext, spec: BallSpec, surface: Surface | str | None = None) -> np.ndarray:
    """6x6 matrix of the collision map in the coordinates of :func:`to_frame` (row-major)."""
    surface = spec.surface if surface is None else Surface(surface)
    n = ctx.normal
    frame = contact_frame(n)
    proj_t = np.eye(3) - np.outer(n, n)
    velocity_block = proj_t - np.outer(n, n)
    if surface is Surface.SMOOTH:
        world = np.block([[velocity_block, np.zeros((3, 3))], [np.zeros((3, 3)), np.eye(3)]])
    else:
        r, inertia = spec.radius, spec.inertia
        k = 2.0 * inertia / (r * r + inertia)
        skew = np.array([[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]])
        world = np.block([
            [velocity_block - k * proj_t, -k * r * skew],
            [(k * r / inertia) * skew, np.eye(3) - (k * r * r / inertia) * proj_t],
        ])
    s = math.sqrt(spec.inertia)
    to_coords = np.block([[frame, np.zeros((3, 3))], [np.zeros((3, 3)), s * np.eye(3)]])
    from_coords = np.block([[frame.T, np.zeros((3, 3))], [np.zeros((3, 3)), np.eye(3) / s]])
    return to_coords @ world @ from_coords


def eigenstructure(matrix, tol: float = EIGEN_TOL) -> list[tuple[float, int]]:
    """Eigenvalues clustered at +1 and -1, as ``[(value, multiplicity), ...]``.

    Raises ContractViolation when an eigenvalue is not within ``tol`` of +-1.
    """
    m = np.asarray(matrix, dtype=np.float64)
    values = np.linalg.eigvals(m)
    plus = minus = 0
    for lam in values:
        if abs(lam - 1.0) <= tol:
            plus += 1
        elif abs(lam + 1.0) <= tol:
            minus += 1
        else:
            raise ContractViolation(f"eigenvalue {lam} is not +-1 within {tol}")
    out = []
    if plus:
        out.append((1.0, plus))
    if minus:
        out.append((-1.0, minus))
    return out
