import json

import pytest

from frontlab.cli import build_parser, main

ALL_COMMANDS = [
    "classify", "boundaries", "ess-spectrum", "abs-spectrum", "double-roots",
    "triple-point", "sh-abs", "sabs", "gamma-v", "check-pi", "greens",
    "simulate", "delay-scan", "sweep", "repro-figure",
]


def run_cli(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestParser:
    def test_all_commands_registered(self):
        parser = build_parser()
        sub = next(a for a in parser._actions
                   if hasattr(a, "choices") and a.choices)
        assert sorted(sub.choices) == sorted(ALL_COMMANDS)


class TestExitCodes:
    def test_success(self, capsys):
        code, out, err = run_cli(
            ["classify", "--d", "1", "--alpha", "1", "--mu", "-1"], capsys)
        assert code == 0
        assert json.loads(out)["label"] == "Rabs"
        assert err == ""

    def test_domain_error(self, capsys):
        code, out, err = run_cli(["classify", "--mu", "0.5"], capsys)
        assert code == 2
        assert err.startswith("error: domain:")

    def test_numerical_error(self, capsys):
        # leading edge reaches the boundary buffer in the lab frame
        code, out, err = run_cli(
            ["simulate", "--L", "30", "--dx", "0.2", "--T", "30",
             "--s-frame", "0"], capsys)
        assert code == 3
        assert err.startswith("error: numerical:")


class TestFormats:
    def test_boundaries_csv(self, capsys):
        code, out, _ = run_cli(
            ["boundaries", "--alpha", "1", "--d", "1", "--format", "csv"],
            capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "alpha,d,mu_rem,mu_abs0,mu_pw"
        cells = lines[1].split(",")
        assert float(cells[2]) == -10.0
        assert float(cells[3]) == -7.75
        assert cells[4] == "nan"

    def test_boundaries_json(self, capsys):
        code, out, _ = run_cli(
            ["boundaries", "--alpha", "2", "--d", "0.5"], capsys)
        obj = json.loads(out)
        assert obj["mu_pw"] == pytest.approx(-1.8193970, abs=1e-6)

    def test_ess_spectrum_csv_schema(self, capsys):
        code, out, _ = run_cli(
            ["ess-spectrum", "--mu", "-1", "--n", "11", "--format", "csv"],
            capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "k,re_lambda,im_lambda,component,eta"
        assert len(lines) == 12

    def test_sh_abs_values(self, capsys):
        code, out, _ = run_cli(["sh-abs", "--s", "2", "--mu", "-0.5"], capsys)
        obj = json.loads(out)
        assert obj["eta_tr"] == pytest.approx(-0.3262967, abs=1e-6)
        assert obj["eta_dr"] == pytest.approx(-0.2119269, abs=1e-6)

    def test_triple_point(self, capsys):
        code, out, _ = run_cli(["triple-point", "--mu", "-0.5"], capsys)
        obj = json.loads(out)
        assert obj["lam"]["re"] == pytest.approx(0.2063847872, abs=1e-9)


class TestIdempotence:
    def test_byte_identical_repeats(self, tmp_path, capsys):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        for path in (a, b):
            code = main(["classify", "--mu", "-1", "--out", str(path)])
            assert code == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()

    def test_csv_idempotent(self, tmp_path, capsys):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        for path in (a, b):
            main(["double-roots", "--mu", "-0.5", "--format", "csv",
                  "--out", str(path)])
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()

    def test_floats_fixed_precision(self, capsys):
        _, out, _ = run_cli(
            ["boundaries", "--alpha", "1", "--d", "1", "--format", "csv"],
            capsys)
        assert "-1.000000000000e+01" in out


class TestFiles:
    def test_simulate_writes_trace_and_summary(self, tmp_path, capsys):
        trace = tmp_path / "trace.csv"
        code, out, _ = run_cli(
            ["simulate", "--mu", "-9", "--L", "50", "--dx", "0.2",
             "--T", "5", "--out", str(trace)], capsys)
        assert code == 0
        summary = json.loads(out)
        assert summary["final_time"] == 5.0
        header = trace.read_text().splitlines()[0]
        assert header == "t,core_pos,edge_pos,weighted_norm,v_sup"

    def test_snapshot_out(self, tmp_path, capsys):
        snap = tmp_path / "snap.csv"
        code, _, _ = run_cli(
            ["simulate", "--mu", "-9", "--L", "50", "--dx", "0.2",
             "--T", "2", "--snapshot-out", str(snap)], capsys)
        assert code == 0
        assert snap.read_text().splitlines()[0] == "x,u,v"

    def test_greens_profile(self, capsys):
        code, out, _ = run_cli(
            ["greens", "--mu", "-1", "--lam-re", "1", "--lam-im", "0.5",
             "--y", "1", "--n", "7"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,re_g22,im_g22,re_g12,im_g12"
        assert len(lines) == 8

    def test_repro_figure_regions(self, tmp_path, capsys):
        out_dir = tmp_path / "fig"
        code, out, _ = run_cli(
            ["repro-figure", "--id", "regions", "--res", "5",
             "--out", str(out_dir)], capsys)
        assert code == 0
        manifest = json.loads((out_dir / "manifest.json").read_text())
        assert manifest["figure"] == "regions"
        for name in manifest["files"]:
            assert (out_dir / name).exists()
        assert (out_dir / "regions.png").stat().st_size > 0

    def test_repro_figure_unknown_id(self, capsys):
        with pytest.raises(SystemExit):
            main(["repro-figure", "--id", "nope"])
        capsys.readouterr()


class TestSweepCommand:
    def test_sweep_csv(self, capsys):
        code, out, _ = run_cli(
            ["sweep", "--plane", "alpha_d", "--x-range", "0.5,3",
             "--y-range", "0.5,2", "--res", "3", "--fixed", "-0.3333",
             "--format", "csv", "--jobs", "1"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,y,label,mu_rem,mu_abs0,mu_pw"
        assert len(lines) == 10
