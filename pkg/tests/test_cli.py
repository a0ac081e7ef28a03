"""CLI contract: JSON schemas, CSV output, exit codes, global flags."""

import json
import math

import numpy as np
import pytest

from cycle4.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCheck:
    def test_interior(self, capsys):
        code, out, _ = run(capsys, "check", "0.2", "0.4")
        doc = json.loads(out)
        assert code == 0
        assert doc["kind"] == "Interior"
        assert doc["g"] == pytest.approx(0.08, abs=1e-15)
        assert list(doc) == ["kind", "g", "right_slack", "a", "b_plus", "violated"]

    def test_right_edge(self, capsys):
        code, out, _ = run(capsys, "check", "0.5", "0.5")
        assert code == 0
        assert json.loads(out)["kind"] == "RightEdge"

    def test_exterior_exits_2(self, capsys):
        code, out, _ = run(capsys, "check", "0", "0.5")
        doc = json.loads(out)
        assert code == 2
        assert doc["kind"] == "Exterior"
        assert doc["violated"] == ["GSign"]

    def test_real_axis_exits_2(self, capsys):
        code, out, _ = run(capsys, "check", "0.5", "0")
        assert code == 2
        assert json.loads(out)["kind"] == "RealAxis"

    def test_parse_failure_exits_1(self, capsys):
        code, _, err = run(capsys, "check", "zero", "0.5")
        assert code == 1
        assert "error" in err

    def test_eps_band_flag(self, capsys):
        code, out, _ = run(capsys, "check", "0.5", "0.5005")
        assert json.loads(out)["kind"] == "Exterior"
        code, out, _ = run(capsys, "check", "0.5", "0.5005", "--eps-band", "1e-2")
        assert json.loads(out)["kind"] == "RightEdge"
        code, out, _ = run(capsys, "--eps-band", "1e-2", "check", "0.5", "0.5005")
        assert json.loads(out)["kind"] == "RightEdge"

    def test_floats_roundtrip_17_digits(self, capsys):
        _, out, _ = run(capsys, "check", "0.2", "0.4")
        assert "0.080000000000000016" in out
        assert json.loads(out)["g"] == 0.08000000000000002


class TestRealize:
    def test_corner(self, capsys):
        code, out, _ = run(capsys, "realize", "1e-12", "1")
        doc = json.loads(out)
        assert code == 0
        assert doc["method"] == "RightEdge"
        assert doc["params"] == [0, 0, 0, 0]
        assert doc["psi_residual"] is None

    def test_interior(self, capsys):
        code, out, _ = run(capsys, "realize", "0.2", "0.4")
        doc = json.loads(out)
        assert code == 0
        assert doc["method"] == "InteriorIVT"
        assert doc["eig_residual"] <= 1e-8
        assert doc["psi_residual"] <= 1e-10
        assert len(doc["params"]) == len(doc["gaps"]) == len(doc["angles"]) == 4

    def test_outside_exits_2(self, capsys):
        code, out, _ = run(capsys, "realize", "0.9", "0.5")
        assert code == 2
        assert json.loads(out)["error"] == "OutsideRegion"

    def test_json_indent(self, capsys):
        _, out, _ = run(capsys, "realize", "0.2", "0.4", "--json-indent", "2")
        assert out.startswith("{\n  ")


class TestSpectrum:
    def test_fourth_roots_sorted(self, capsys):
        code, out, _ = run(capsys, "spectrum", "0", "0", "0", "0")
        doc = json.loads(out)
        assert code == 0
        assert doc["roots"] == [[1, 0], [0, 1], [0, -1], [-1, 0]]
        assert max(doc["residuals"]) <= 1e-10

    def test_all_half_contains_pair(self, capsys):
        _, out, _ = run(capsys, "spectrum", "0.5", "0.5", "0.5", "0.5")
        roots = json.loads(out)["roots"]
        assert any(abs(r - 0.5) < 1e-12 and abs(i - 0.5) < 1e-12 for r, i in roots)

    def test_domain_violation_exits_1(self, capsys):
        code, _, err = run(capsys, "spectrum", "1", "0", "0", "0")
        assert code == 1
        assert "error" in err


class TestBoundary:
    def test_left_curve(self, tmp_path, capsys):
        out_path = tmp_path / "left.csv"
        code, _, _ = run(capsys, "boundary", "left", "--steps", "50", "--out", str(out_path))
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert lines[0] == "param,a,b,g"
        rows = [[float(v) for v in ln.split(",")] for ln in lines[1:]]
        assert len(rows) == 50
        assert rows[0][0] == 0.0 and abs(rows[0][1]) < 1e-9 and abs(rows[0][2] - 1) < 1e-9
        assert all(abs(r[3]) <= 1e-9 for r in rows)
        assert all(r2[0] > r1[0] for r1, r2 in zip(rows, rows[1:]))
        assert all(r[2] > 0 for r in rows)

    def test_right_edge(self, tmp_path, capsys):
        out_path = tmp_path / "right.csv"
        code, _, _ = run(capsys, "boundary", "right", "--steps", "40", "--out", str(out_path))
        assert code == 0
        rows = [[float(v) for v in ln.split(",")] for ln in out_path.read_text().splitlines()[1:]]
        assert len(rows) == 40
        assert all(abs(r[1] + r[2] - 1) <= 1e-12 for r in rows)
        assert rows[-1][0] == 1.0

    def test_unwritable_path_exits_1(self, capsys):
        code, _, err = run(capsys, "boundary", "left", "--steps", "5", "--out", "/nonexistent/dir/x.csv")
        assert code == 1
        assert "cannot write" in err

    def test_too_few_steps(self, capsys):
        code, _, _ = run(capsys, "boundary", "left", "--steps", "1", "--out", "/tmp/x.csv")
        assert code == 1


class TestAudit:
    def test_identities_small(self, capsys):
        code, out, _ = run(capsys, "audit", "identities", "--trials", "2000", "--seed", "1")
        doc = json.loads(out)
        assert code == 0
        assert doc["suite"] == "identities"
        assert doc["failures"] == []

    def test_bogus_suite_exits_1(self, capsys):
        code, _, err = run(capsys, "audit", "bogus")
        assert code == 1
        assert "invalid choice" in err

    def test_failures_exit_4(self, capsys, monkeypatch):
        import cycle4.cli as cli_mod

        class FakeReport:
            passed = False

            def to_dict(self):
                return {"suite": "necessity", "failures": [{"trial": 0, "violation": 1.0}]}

        monkeypatch.setattr(cli_mod.audit, "run_suite", lambda *a, **k: FakeReport())
        code, out, _ = run(capsys, "audit", "necessity", "--trials", "10")
        assert code == 4
        assert json.loads(out)["failures"]

    def test_seed_env_default(self, capsys, monkeypatch):
        monkeypatch.setenv("CYCLE4_SEED", "12345")
        from cycle4.cli import build_parser

        args = build_parser().parse_args(["audit", "identities"])
        assert args.seed == 12345

    def test_workers_flag_same_report(self, capsys):
        code1, out1, _ = run(capsys, "audit", "regime", "--trials", "2000", "--seed", "4", "--workers", "1")
        code2, out2, _ = run(capsys, "audit", "regime", "--trials", "2000", "--seed", "4", "--workers", "8")
        d1, d2 = json.loads(out1), json.loads(out2)
        d1.pop("elapsed"), d2.pop("elapsed")
        assert code1 == code2 == 0
        assert d1 == d2

    def test_all_runs_every_suite(self, capsys):
        code, out, _ = run(capsys, "audit", "all", "--trials", "5", "--seed", "2")
        docs = json.loads(out)
        assert code == 0
        assert [d["suite"] for d in docs] == [
            "necessity",
            "karamata",
            "convexity",
            "identities",
            "regime",
            "roundtrip",
        ]


def test_csv_is_locale_independent(tmp_path, capsys):
    out_path = tmp_path / "r.csv"
    run(capsys, "boundary", "right", "--steps", "3", "--out", str(out_path))
    text = out_path.read_bytes().decode("ascii")
    assert "\r" not in text
    assert ";" not in text
    for token in text.splitlines()[1].split(","):
        float(token)  # parses with '.' decimals
