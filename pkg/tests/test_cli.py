"""Golden-file tests for the command line."""
import filecmp
import subprocess
import sys
from pathlib import Path

import pytest

from fuzzy_ershov.cli import main
from fuzzy_ershov.gallery import random_bounded_trace
from fuzzy_ershov.trace import dumps, read_trace

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestValidate:
    def test_ok(self, capsys):
        code, out, _ = run(capsys, "validate", "--in", GOLDEN / "left.trace")
        assert code == 0 and out == "OK shape=Sigma1 X=1 S=3\n"

    def test_violation(self, capsys):
        code, _, err = run(capsys, "validate", "--in", GOLDEN / "nonmonotone.trace")
        assert code == 2
        assert "x=0 s=2 invariant=monotonicity" in err

    def test_shape_flag_overrides_header(self, capsys):
        code, _, err = run(capsys, "validate", "--in", GOLDEN / "worked.trace", "--shape", "Sigma1")
        assert code == 2 and "s=2" in err
        code, out, _ = run(capsys, "validate", "--in", GOLDEN / "nonmonotone.trace", "--shape", "Delta2")
        assert code == 0 and out.startswith("OK shape=Delta2")

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, "validate", "--in", tmp_path / "missing.trace")
        assert code == 3

    def test_unparseable(self, capsys, tmp_path):
        p = tmp_path / "bad.trace"
        p.write_text("trace X=1 S=2 shape=Delta2\n0 5/4\n")
        code, _, err = run(capsys, "validate", "--in", p)
        assert code == 2 and "outside" in err

    def test_color_only_wraps_status(self, capsys, monkeypatch):
        monkeypatch.setenv("FUZZY_ERSHOV_COLOR", "1")
        code, out, _ = run(capsys, "validate", "--in", GOLDEN / "left.trace")
        assert code == 0 and out == "\033[32mOK shape=Sigma1 X=1 S=3\033[0m\n"


class TestClassify:
    def test_oscillator(self, capsys):
        code, out, _ = run(capsys, "classify", "--in", GOLDEN / "oscillator_m2.trace")
        assert code == 0
        assert out.splitlines()[-1].startswith("summary,anchors=zero,observed_n=4,")

    def test_sigma1(self, capsys):
        _, out, _ = run(capsys, "classify", "--in", GOLDEN / "left.trace")
        assert "observed_n=1," in out and "update_level=2" in out

    def test_crisp(self, capsys):
        _, out, _ = run(capsys, "classify", "--in", GOLDEN / "crisp.trace")
        assert out == (
            "x,anchor,sigma_changes,pi_changes,updates\n"
            "0,0,2,3,3\n"
            "summary,anchors=zero,observed_n=3,observed_co_n=4,update_level=NA\n"
        )

    def test_horizon_truncates(self, capsys):
        _, out, _ = run(capsys, "classify", "--in", GOLDEN / "crisp.trace", "--horizon", "2")
        assert "observed_n=1," in out


class TestBoolean:
    def test_decompose_golden(self, capsys, tmp_path):
        code, out, _ = run(capsys, "decompose", "--in", GOLDEN / "worked.trace",
                           "--level", 3, "--lookahead", "--out", tmp_path / "b")
        assert code == 0 and out == "decomp n=3 k=1 pairs=2\n"
        cmp = filecmp.dircmp(tmp_path / "b", GOLDEN / "worked_n3_lookahead")
        assert not cmp.left_only and not cmp.right_only
        _, mismatch, errors = filecmp.cmpfiles(
            tmp_path / "b", GOLDEN / "worked_n3_lookahead", cmp.common_files, shallow=False
        )
        assert mismatch == [] and errors == []

    def test_recompose_golden(self, capsys):
        code, out, _ = run(capsys, "recompose", "--in", GOLDEN / "worked_n3_lookahead")
        assert code == 0
        assert out == (GOLDEN / "worked_n3_lookahead_recomposed.trace").read_text()

    def test_verify_random_outputs(self, capsys, tmp_path):
        for seed in range(20):
            n = seed % 6 + 1
            p = tmp_path / f"r{seed}.trace"
            p.write_text(dumps(random_bounded_trace(seed, 3, 12, n)))
            code, out, _ = run(capsys, "verify", "--in", p, "--level", n)
            assert code == 0 and out.endswith("OK\n")

    def test_verify_understated_level(self, capsys):
        code, _, err = run(capsys, "verify", "--in", GOLDEN / "oscillator_m2.trace", "--level", 2)
        assert code == 1 and "x=0" in err

    def test_verify_lookahead_failure_exit(self, capsys, tmp_path):
        p = tmp_path / "t.trace"
        p.write_text("trace X=1 S=4 shape=Delta2\n0 1/2 1/4 1/4\n")
        code, out, err = run(capsys, "verify", "--in", p, "--level", 2, "--lookahead")
        assert code == 1 and "FAIL limit x=0" in out and "limit" in err

    def test_pipeline_reproduces_verify(self, capsys, tmp_path):
        src = tmp_path / "f.trace"
        f = random_bounded_trace(11, 4, 16, 5)
        src.write_text(dumps(f))
        assert run(capsys, "decompose", "--in", src, "--level", 5, "--out", tmp_path / "b")[0] == 0
        run(capsys, "recompose", "--in", tmp_path / "b", "--out", tmp_path / "h.trace")
        _, csv_out, _ = run(capsys, "classify", "--in", tmp_path / "h.trace")
        observed = int(csv_out.split("observed_n=")[1].split(",")[0])
        assert observed <= 5
        h = read_trace(tmp_path / "h.trace")
        assert [row[-1] for row in h.rows] == [row[-1] for row in f.rows]


class TestOpsCutGallery:
    def test_union(self, capsys, tmp_path):
        a, b = tmp_path / "a.trace", tmp_path / "b.trace"
        a.write_text("trace X=1 S=2 shape=Sigma1\n0 1/2\n")
        b.write_text("trace X=1 S=2 shape=Sigma1\n0 1/4\n")
        _, out, _ = run(capsys, "ops", "union", "--in", a, "--in2", b)
        assert out == "trace X=1 S=2 shape=Sigma1\n0 1/2\n"
        _, out, _ = run(capsys, "ops", "intersection", "--in", a, "--in2", b)
        assert out == "trace X=1 S=2 shape=Sigma1\n0 1/4\n"
        _, out, _ = run(capsys, "ops", "complement", "--in", a)
        assert out == "trace X=1 S=2 shape=Pi1\n1 1/2\n"

    def test_union_dimension_mismatch(self, capsys):
        code, _, _ = run(capsys, "ops", "union", "--in", GOLDEN / "left.trace",
                         "--in2", GOLDEN / "worked.trace")
        assert code == 2

    def test_cut(self, capsys):
        _, out, _ = run(capsys, "cut", "--in", GOLDEN / "left.trace", "--denominator-bound", 4)
        assert out == "0 1/4 1/3\n"

    def test_cut_needs_monotone_shape(self, capsys):
        code, _, _ = run(capsys, "cut", "--in", GOLDEN / "worked.trace", "--denominator-bound", 4)
        assert code == 2

    def test_harkleroad(self, capsys):
        _, out, _ = run(capsys, "gallery", "harkleroad", "--in", GOLDEN / "halting.table",
                        "--horizon", 6)
        assert out == (GOLDEN / "harkleroad_S6.trace").read_text()

    def test_oscillator(self, capsys):
        _, out, _ = run(capsys, "gallery", "oscillator", "--count", 2, "--horizon", 5)
        assert out == (GOLDEN / "oscillator_m2.trace").read_text()

    def test_random_is_deterministic(self, capsys, tmp_path):
        args = ("gallery", "random", "--seed", 9, "--elements", 3, "--horizon", 10, "--level", 4)
        first = run(capsys, *args)[1]
        assert run(capsys, *args)[1] == first

    def test_dyadic(self, capsys):
        _, out, _ = run(capsys, "gallery", "leftce", "--digits", "101", "--horizon", 4)
        assert out == "trace X=1 S=4 shape=Sigma1\n0 1/2 1/2 5/8\n"
        _, out, _ = run(capsys, "gallery", "rightce", "--digits", "", "--horizon", 2)
        assert out == "trace X=1 S=2 shape=Pi1\n1 1\n"

    def test_profile(self, capsys):
        _, out, _ = run(capsys, "profile", "--in", GOLDEN / "worked.trace")
        assert "x=0 signs=++-+ changes=1,2 count=2 updates=3" in out

    def test_missing_required_flag(self, capsys):
        code, _, err = run(capsys, "verify", "--in", GOLDEN / "worked.trace")
        assert code == 2 and "--level" in err


def test_module_entry_point(tmp_path):
    out = tmp_path / "o.trace"
    proc = subprocess.run(
        [sys.executable, "-m", "fuzzy_ershov", "gallery", "oscillator",
         "--count", "2", "--horizon", "5", "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert out.read_text() == (GOLDEN / "oscillator_m2.trace").read_text()
    bad = subprocess.run([sys.executable, "-m", "fuzzy_ershov", "nosuchcommand"],
                         capture_output=True, text=True)
    assert bad.returncode == 2
