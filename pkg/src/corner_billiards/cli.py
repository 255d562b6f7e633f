"""Command-line front end: ``classify``, ``reduce``, ``simulate`` and ``spectrum``.

Exit codes: 0 success, 2 bad input, 3 infeasible geometry, 4 internal
contract violation. ``CORNER_BILLIARDS_LOG`` sets the log level.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import svg
from .collision import BallSpec, BallState, CollisionContext, Surface, collision_matrix, eigenstructure
from .dynamics import Termination, simulate, trajectory_csv
from .errors import BilliardError, ContractViolation, GeometryError, InitialStateError
from .geometry import ReducedTable, reduce_table
from .tableio import dumps, load_table

log = logging.getLogger("corner_billiards")

EXIT_OK, EXIT_INPUT, EXIT_GEOMETRY, EXIT_CONTRACT = 0, 2, 3, 4


def _g(x: float) -> str:
    return format(float(x), ".17g")


def _pair(text: str) -> tuple[float, float]:
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'x,y', got {text!r}") from None
    if not (math.isfinite(x) and math.isfinite(y)):
        raise argparse.ArgumentTypeError(f"non-finite value in {text!r}")
    return (x, y)


def _positive(text: str) -> float:
    v = float(text)
    if not (math.isfinite(v) and v > 0.0):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def _count(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


@dataclass(frozen=True)
class RunConfig:
    table: Path
    radius: float
    inertia: float | None
    surface: Surface
    position: tuple[float, float] | None
    velocity: tuple[float, float] | None
    omega: float
    collisions: int | None
    horizon: float | None
    out: Path | None
    svg: Path | None
    seed: int | None
    runs: int = 1

    @property
    def needs_sampling(self) -> bool:
        return self.position is None or self.velocity is None or self.runs > 1

    @classmethod
    def from_args(cls, args) -> RunConfig:
        cfg = cls(Path(args.table), args.radius, args.inertia, Surface(args.surface), args.pos, args.vel,
                  args.omega, args.collisions, args.horizon,
                  Path(args.out) if args.out else None, Path(args.svg) if args.svg else None,
                  args.seed, args.runs)
        if cfg.needs_sampling and cfg.seed is None:
            raise InitialStateError("--seed is required when --pos/--vel are omitted or --runs > 1")
        if cfg.runs > 1 and cfg.out is None:
            raise InitialStateError("--runs > 1 needs --out to name the per-run files")
        return cfg


def sample_initial(rt: ReducedTable, rng: np.random.Generator, position=None, velocity=None,
                   omega: float = 0.0) -> BallState:
    """Uniform centre in the reduced table and/or a uniform unit direction."""
    if position is None:
        xmin, ymin, xmax, ymax = rt.source.bounds
        for _ in range(100_000):
            p = rng.uniform((xmin, ymin), (xmax, ymax))
            if rt.contains(p, tol=0.0)[0]:
                position = (float(p[0]), float(p[1]))
                break
        else:
            raise GeometryError("could not sample a position inside the reduced table")
    if velocity is None:
        a = rng.uniform(0.0, 2.0 * math.pi)
        velocity = (math.cos(a), math.sin(a))
    return BallState.planar(position, velocity, omega)


def _per_run_path(path: Path, k: int, runs: int) -> Path:
    return path if runs == 1 else path.with_name(f"{path.stem}_{k}{path.suffix}")


def cmd_classify(args) -> int:
    table = load_table(args.table)
    for c in table.corners:
        print(f"corner {c.index} loop {c.loop_id} at ({_g(c.location[0])}, {_g(c.location[1])}) "
              f"angle {_g(c.interior_angle)} {c.kind.value}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    table = load_table(args.table)
    rt = reduce_table(table, args.radius)
    text = dumps(rt.to_dict())
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.svg:
        Path(args.svg).write_text(svg.render(table, rt))
    return EXIT_OK


def _run_one(table, rt, spec, cfg: RunConfig, initial: BallState, k: int):
    traj = simulate(table, spec, initial, collisions=cfg.collisions, horizon=cfg.horizon, reduced=rt)
    text = trajectory_csv(traj)
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        _per_run_path(cfg.out, k, cfg.runs).write_text(text)
    if cfg.svg is not None:
        _per_run_path(cfg.svg, k, cfg.runs).write_text(svg.render(table, rt, traj.positions()))
    return traj


def cmd_simulate(args) -> int:
    cfg = RunConfig.from_args(args)
    table = load_table(cfg.table)
    spec = BallSpec(cfg.radius, cfg.inertia, cfg.surface)
    rt = reduce_table(table, spec.radius)
    rng = np.random.default_rng(cfg.seed)
    initials = [sample_initial(rt, rng, cfg.position, cfg.velocity, cfg.omega) for _ in range(cfg.runs)]
    if cfg.runs == 1:
        trajs = [_run_one(table, rt, spec, cfg, initials[0], 0)]
    else:
        with ThreadPoolExecutor() as pool:
            trajs = list(pool.map(lambda ka: _run_one(table, rt, spec, cfg, ka[1], ka[0]),
                                  enumerate(initials)))
    status = EXIT_OK
    for k, traj in enumerate(trajs):
        log.info("run %d: %d events, energy drift %.3g", k, len(traj), traj.energy_drift)
        if traj.termination is Termination.ERROR:
            print(f"error: run {k} stopped after {len(traj)} events: {traj.message}", file=sys.stderr)
            status = EXIT_GEOMETRY
    return status


def cmd_spectrum(args) -> int:
    spec = BallSpec(args.radius, args.inertia, args.surface)
    ctx = CollisionContext((0.0, 0.0, 0.0), (0.0, 1.0, 0.0), spec.radius)
    m = collision_matrix(ctx, spec)
    values = np.sort(np.linalg.eigvals(m).real)[::-1]
    clusters = eigenstructure(m)
    print(f"surface {spec.surface.value} radius {_g(spec.radius)} inertia {_g(spec.inertia)}")
    print("eigenvalues " + " ".join(_g(v) for v in values))
    print(f"orthogonality defect {_g(np.abs(m.T @ m - np.eye(6)).max())}")
    print(", ".join(f"{'+1' if v > 0 else '−1'} ×{k}" for v, k in clusters))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="corner-billiards",
                                     description="Physical billiards with corner collisions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify the junctions of a table")
    p.add_argument("--table", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("reduce", help="reduced table for a ball radius, as JSON")
    p.add_argument("--table", required=True)
    p.add_argument("--radius", type=_positive, required=True)
    p.add_argument("--out")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("simulate", help="event-driven trajectory, written as CSV")
    p.add_argument("--table", required=True)
    p.add_argument("--radius", type=_positive, required=True)
    p.add_argument("--inertia", type=_positive)
    p.add_argument("--surface", choices=[s.value for s in Surface], default="smooth")
    p.add_argument("--pos", type=_pair, help="x,y (use --pos=-1,2 for negative x)")
    p.add_argument("--vel", type=_pair)
    p.add_argument("--omega", type=float, default=0.0)
    stop = p.add_mutually_exclusive_group(required=True)
    stop.add_argument("--collisions", type=_count)
    stop.add_argument("--horizon", type=_positive)
    p.add_argument("--out")
    p.add_argument("--svg")
    p.add_argument("--seed", type=int)
    p.add_argument("--runs", type=_count, default=1, help="sampled initial conditions, one file each")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("spectrum", help="eigenvalues of the collision map")
    p.add_argument("--surface", choices=[s.value for s in Surface], default="smooth")
    p.add_argument("--radius", type=_positive, default=1.0)
    p.add_argument("--inertia", type=_positive)
    p.set_defaults(func=cmd_spectrum)
    return parser


def main(argv=None) -> int:
    level = os.environ.get("CORNER_BILLIARDS_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ContractViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except (BilliardError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
