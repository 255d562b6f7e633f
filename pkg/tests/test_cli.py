import csv
import io
import json
import os
import subprocess
import sys

import numpy as np
import pytest

from corner_billiards.cli import main
from corner_billiards.tableio import table_from_dict

GOLDEN_ARGS = ["simulate", "--table", "{fx}/lshape.json", "--radius", "0.2", "--surface", "rough",
               "--pos=-0.5,-0.4", "--vel", "0.8,0.6", "--omega", "0.7", "--collisions", "50"]


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestClassify:
    def test_notched(self, capsys, fixtures_dir):
        code, out, _ = run(capsys, "classify", "--table", fixtures_dir / "notched.json")
        assert code == 0
        kinds = {line.split(" at ")[1].split(" angle")[0]: line.split()[-1] for line in out.splitlines()}
        assert kinds["(1.5, 1.5)"] == "VisibleSingular"
        assert kinds["(0, 0)"] == kinds["(3, 0)"] == kinds["(3, 2)"] == "InvisibleSingular"
        assert kinds["(2, 2)"] == "Regular"

    def test_lshape(self, capsys, fixtures_dir):
        _, out, _ = run(capsys, "classify", "--table", fixtures_dir / "lshape.json")
        kinds = [line.split()[-1] for line in out.splitlines()]
        assert kinds.count("InvisibleSingular") == 5 and kinds.count("VisibleSingular") == 1
        assert out.splitlines()[2] == "corner 2 loop 0 at (0, 0) angle 4.7123889803846897 VisibleSingular"


class TestReduce:
    def test_square(self, capsys, fixtures_dir):
        code, out, _ = run(capsys, "reduce", "--table", fixtures_dir / "square.json", "--radius", "0.1")
        assert code == 0
        doc = json.loads(out)
        comps = [c for loop in doc["loops"] for c in loop]
        assert [c["kind"] for c in comps] == ["segment"] * 4
        assert table_from_dict(doc).area == pytest.approx(0.64)

    def test_lshape_has_one_corner_arc(self, capsys, fixtures_dir):
        _, out, _ = run(capsys, "reduce", "--table", fixtures_dir / "lshape.json", "--radius", "0.2")
        doc = json.loads(out)
        arcs = [c for loop in doc["loops"] for c in loop if c["kind"] == "arc"]
        assert len(arcs) == 1
        assert arcs[0]["radius"] == 0.2 and arcs[0]["center"] == [0.0, 0.0]
        assert arcs[0]["source"] == "corner:2"
        assert doc["radius"] == 0.2

    def test_radius_too_large(self, capsys, fixtures_dir):
        code, _, err = run(capsys, "reduce", "--table", fixtures_dir / "square.json", "--radius", "0.6")
        assert code == 3
        assert "table vanishes at this radius" in err

    def test_svg(self, capsys, fixtures_dir, tmp_path):
        out = tmp_path / "r.svg"
        run(capsys, "reduce", "--table", fixtures_dir / "notched.json", "--radius", "0.2", "--svg", out)
        text = out.read_text()
        assert text.startswith("<svg") and "stroke-dasharray" in text


class TestSimulate:
    def test_square_hundred_events(self, capsys, fixtures_dir):
        code, out, _ = run(capsys, "simulate", "--table", fixtures_dir / "square.json", "--radius", "0.1",
                           "--pos", "0.5,0.5", "--vel", "0.6,0.8", "--collisions", "100")
        assert code == 0
        data = rows(out)
        assert len(data) == 100
        assert max(abs(float(r["dK"])) for r in data) <= 1e-10

    def test_corner_hit_reported(self, capsys, fixtures_dir):
        _, out, _ = run(capsys, "simulate", "--table", fixtures_dir / "lshape.json", "--radius", "0.2",
                        "--pos=-0.5,-0.5", "--vel", "1,1", "--collisions", "1")
        [row] = rows(out)
        assert row["source_kind"] == "CornerArc" and row["source_id"] == "2"

    def test_matches_golden(self, capsys, fixtures_dir):
        _, out, _ = run(capsys, *[a.format(fx=fixtures_dir) for a in GOLDEN_ARGS])
        golden = (fixtures_dir / "lshape_rough_golden.csv").read_text()
        got, ref = rows(out), rows(golden)
        assert len(got) == len(ref) == 50
        for g, r in zip(got, ref):
            assert (g["event_index"], g["source_kind"], g["source_id"]) == \
                   (r["event_index"], r["source_kind"], r["source_id"])
            for key in ("t", "x", "y", "vx", "vy", "omega"):
                assert float(g[key]) == pytest.approx(float(r[key]), rel=1e-9, abs=1e-9)

    def test_numpy_fallback_is_byte_identical(self, fixtures_dir, tmp_path):
        argv = [a.format(fx=fixtures_dir) for a in GOLDEN_ARGS]
        outs = []
        for flag in ("0", "1"):
            env = dict(os.environ, CORNER_BILLIARDS_NO_JIT=flag)
            res = subprocess.run([sys.executable, "-m", "corner_billiards", *argv], env=env,
                                 capture_output=True, text=True, check=True)
            outs.append(res.stdout)
        assert outs[0] == outs[1]

    def test_seed_required_for_sampling(self, capsys, fixtures_dir):
        code, _, err = run(capsys, "simulate", "--table", fixtures_dir / "square.json", "--radius", "0.1",
                           "--collisions", "5")
        assert code == 2 and "--seed" in err

    def test_seeded_runs(self, capsys, fixtures_dir, tmp_path):
        out = tmp_path / "traj.csv"
        args = ["simulate", "--table", fixtures_dir / "notched.json", "--radius", "0.1", "--collisions", "20",
                "--seed", "7", "--runs", "3", "--out", out, "--svg", tmp_path / "traj.svg"]
        assert run(capsys, *args)[0] == 0
        first = [(tmp_path / f"traj_{k}.csv").read_text() for k in range(3)]
        assert len(set(first)) == 3
        assert (tmp_path / "traj_2.svg").read_text().startswith("<svg")
        run(capsys, *args)
        assert first == [(tmp_path / f"traj_{k}.csv").read_text() for k in range(3)]

    def test_outside_start_is_input_error(self, capsys, fixtures_dir):
        code, _, err = run(capsys, "simulate", "--table", fixtures_dir / "square.json", "--radius", "0.1",
                           "--pos", "0.05,0.5", "--vel", "1,0", "--collisions", "5")
        assert code == 2 and "outside" in err

    def test_bad_table_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"loops": [[{"kind": "segment", "from": [0, 0]}]]}')
        code, _, err = run(capsys, "classify", "--table", bad)
        assert code == 2 and "loops[0][0]" in err
        code, _, err = run(capsys, "classify", "--table", tmp_path / "missing.json")
        assert code == 2


class TestSpectrum:
    def test_smooth(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--surface", "smooth", "--radius", "0.5")
        assert code == 0
        assert out.splitlines()[-1] == "+1 ×5, −1 ×1"

    @pytest.mark.parametrize("inertia", ["0.01", "1", "1e6"])
    def test_rough(self, capsys, inertia):
        _, out, _ = run(capsys, "spectrum", "--surface", "rough", "--radius", "1", "--inertia", inertia)
        lines = out.splitlines()
        assert lines[-1] == "+1 ×3, −1 ×3"
        values = np.array(lines[1].split()[1:], dtype=float)
        np.testing.assert_allclose(np.abs(values), 1.0, atol=1e-9)
        assert float(lines[2].split()[-1]) <= 1e-10

    def test_bad_argument_exits_2(self):
        with pytest.raises(SystemExit) as info:
            main(["spectrum", "--radius", "-1"])
        assert info.value.code == 2
