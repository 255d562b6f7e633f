"""Acceptance criteria, one test per criterion.

The terminal summary prints a ``[PASS]``/``[FAIL]`` line for each (see
conftest.py). Run just these with ``pytest tests/test_acceptance.py``.
"""

import math
import os
import subprocess
import sys
import time
from itertools import combinations

import numpy as np
import pytest

from corner_billiards import (BallSpec, BallState, CollisionContext, Surface, collision_matrix, eigenstructure,
                              impulse_residual, kinetic_energy, reduce_table, reflect, simulate,
                              time_reverse)
from corner_billiards.collision import rough_impulse
from corner_billiards.dynamics import SourceKind, step
from corner_billiards.kernels import reflect_batch

from . import oracles
from .conftest import random_triple, random_unit

N_RANDOM = 10_000


def triples(seed, surface, n=N_RANDOM):
    rng = np.random.default_rng(seed)
    return [random_triple(rng, surface) for _ in range(n)]


@pytest.mark.acceptance(1)
def test_involution(capsys):
    start = time.perf_counter()
    worst = 0.0
    for seed, surface in ((1, Surface.SMOOTH), (2, Surface.ROUGH)):
        for state, ctx, spec in triples(seed, surface):
            once, _ = reflect(state, ctx, spec)
            twice, _ = reflect(once, ctx, spec)
            worst = max(worst, float(np.abs(twice.as_array() - state.as_array()).max()))
    elapsed = time.perf_counter() - start
    with capsys.disabled():
        print(f"\ninvolution: max deviation {worst:.3g} over {2 * N_RANDOM} triples in {elapsed:.2f}s")
    assert worst <= 1e-10
    assert elapsed < 5.0

    # the batched kernel obeys the same law
    rng = np.random.default_rng(3)
    v, w = rng.uniform(-10, 10, (2, N_RANDOM, 3))
    n = random_unit(rng, N_RANDOM)
    r = rng.uniform(0.05, 5.0, N_RANDOM)
    inertia = rng.uniform(0.05, 2.0, N_RANDOM) * r * r
    for rough in (False, True):
        v1, w1 = reflect_batch(v, w, n, r, inertia, rough)
        v2, w2 = reflect_batch(v1, w1, n, r, inertia, rough)
        assert np.abs(v2 - v).max() <= 1e-10 and np.abs(w2 - w).max() <= 1e-10


@pytest.mark.acceptance(2)
def test_orthogonality_and_energy():
    worst_orth = worst_energy = 0.0
    for seed, surface in ((1, Surface.SMOOTH), (2, Surface.ROUGH)):
        for state, ctx, spec in triples(seed, surface):
            m = collision_matrix(ctx, spec)
            worst_orth = max(worst_orth, float(np.linalg.norm(m.T @ m - np.eye(6), 2)))
            after, _ = reflect(state, ctx, spec)
            kb, ka = kinetic_energy(state, spec), kinetic_energy(after, spec)
            worst_energy = max(worst_energy, abs(ka - kb) / max(1.0, kb))
    assert worst_orth <= 1e-10
    assert worst_energy <= 1e-10


@pytest.mark.acceptance(3)
def test_eigenstructure():
    rng = np.random.default_rng(4)
    expected = {Surface.SMOOTH: [(1.0, 5), (-1.0, 1)], Surface.ROUGH: [(1.0, 3), (-1.0, 3)]}
    for _ in range(100):
        r = 10.0 ** rng.uniform(-2, 1)
        inertia = 10.0 ** rng.uniform(-2, 1) * r * r
        ctx = CollisionContext(rng.uniform(-5, 5, 3), random_unit(rng), r)
        for surface, spectrum in expected.items():
            m = collision_matrix(ctx, BallSpec(r, inertia, surface))
            assert eigenstructure(m, tol=1e-9) == spectrum
            values = np.linalg.eigvals(m)
            assert np.abs(np.abs(values) - 1.0).max() <= 1e-9


@pytest.mark.acceptance(4)
def test_impulse_balance():
    worst = 0.0
    for state, ctx, spec in triples(5, Surface.ROUGH):
        assert impulse_residual(np.zeros(3), state, ctx, spec) == 0.0
        worst = max(worst, abs(impulse_residual(rough_impulse(state, ctx, spec), state, ctx, spec)))
    assert worst <= 1e-10

    # no slip at the contact point: only the normal velocity changes
    for state, ctx, spec in triples(7, Surface.ROUGH, n=1000):
        vn = float(state.velocity @ ctx.normal) * ctx.normal
        v = vn + np.cross(state.omega, ctx.ao)  # V_T = omega x AO, so V_T + AO x omega = 0
        pinned = BallState(state.position, v, state.omega)
        after, imp = reflect(pinned, ctx, spec)
        assert np.abs(imp.tangential).max() <= 1e-10
        np.testing.assert_allclose(after.omega, pinned.omega, atol=1e-10, rtol=0)
        np.testing.assert_allclose(after.velocity, v - 2 * vn, atol=1e-10, rtol=0)


@pytest.mark.acceptance(5)
def test_reduced_table_oracle(square, lshape):
    for table, verts, r in ((square, oracles.SQUARE, 0.1), (lshape, oracles.LSHAPE, 0.2)):
        rt = reduce_table(table, r)
        pts = np.vstack([p.curve.sample(400) for p in rt.pieces])
        assert oracles.polygon_contains(verts, pts).all()
        assert np.abs(oracles.polygon_distance(verts, pts) - r).max() <= 1e-9
    arcs = [p.curve for p in reduce_table(lshape, 0.2).pieces if p.curve.kind == "arc"]
    assert len(arcs) == 1
    assert arcs[0].radius == 0.2 and arcs[0].center == (0.0, 0.0)


@pytest.mark.acceptance(6)
def test_square_equivalence(square):
    start, vel = (0.37, 0.21), (math.cos(0.7), math.sin(0.7))
    traj = simulate(square, BallSpec.disk(0.1), BallState.planar(start, vel), collisions=100)
    ref = oracles.box_billiard(0.1, 0.9, start, vel, 100)
    got = np.array([(rec.time, *rec.after.position[:2], *rec.after.velocity[:2]) for rec in traj.records])
    assert got.shape == ref.shape
    assert np.abs(got - ref).max() <= 1e-9


@pytest.mark.acceptance(7)
def test_corner_arc_disperses(lshape):
    r = 0.2
    rt = reduce_table(lshape, r)
    spec = BallSpec.disk(r)
    d = np.array([1.0, 1.0]) / math.sqrt(2)
    perp = np.array([-d[1], d[0]])
    offsets = np.linspace(-0.1, 0.1, 50)
    outgoing, phis = [], []
    for h in offsets:
        after, ev = step(rt, BallState.planar(-0.6 * d + h * perp, d), spec)
        assert ev.source_kind is SourceKind.CORNER
        outgoing.append(after.velocity[:2])
        phis.append(math.atan2(after.position[1], after.position[0]))
    heading = np.unwrap([math.atan2(v[1], v[0]) for v in outgoing])
    for i, j in combinations(range(len(offsets)), 2):
        spread = abs(heading[i] - heading[j])
        assert spread > 0.0  # parallel before, so any spread is an increase
        # a circular mirror turns a normal-angle difference into twice the heading difference
        assert spread == pytest.approx(2 * abs(phis[i] - phis[j]), abs=1e-9)
    # neighbouring rays also move apart after the hit
    assert np.all(np.diff(heading) * np.sign(heading[-1] - heading[0]) > 0)


@pytest.mark.acceptance(8)
def test_reversibility(square, lshape, notched):
    cases = [(lshape, (-0.5, -0.4), (0.8, 0.6)), (lshape, (0.5, -0.5), (-0.28, 0.96)),
             (lshape, (-0.6, 0.3), (0.6, -0.8)), (square, (0.3, 0.4), (0.6, 0.8)),
             (notched, (1.0, 0.5), (0.6, 0.8))]
    corner_hits = 0
    for table, pos, vel in cases:
        for surface in Surface:
            spec = BallSpec.disk(0.1, surface=surface)
            initial = BallState.planar(pos, vel, 0.3)
            fwd = simulate(table, spec, initial, collisions=50)
            # the reversed run starts on the boundary; its first event undoes the last forward collision
            back = simulate(table, spec, time_reverse(fwd.final), horizon=fwd.final_time)
            assert len(fwd) == len(back) == 50
            ret = time_reverse(back.final)
            assert np.abs(ret.as_array() - initial.as_array()).max() <= 1e-6
            corner_hits += sum(rec.event.source_kind is SourceKind.CORNER for rec in fwd.records)
    assert corner_hits > 0


@pytest.mark.acceptance(9)
def test_cli_determinism(fixtures_dir, tmp_path):
    argv = ["simulate", "--table", str(fixtures_dir / "notched.json"), "--radius", "0.1", "--surface", "rough",
            "--collisions", "200", "--seed", "11"]
    outs = []
    for _ in range(2):
        res = subprocess.run([sys.executable, "-m", "corner_billiards", *argv], env=dict(os.environ),
                             capture_output=True, check=True)
        outs.append(res.stdout)
    assert outs[0] == outs[1]
    assert outs[0].count(b"\n") == 201
