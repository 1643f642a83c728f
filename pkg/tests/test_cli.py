"""Command-line interface, driven in-process through main()."""

import json

import numpy as np
import pytest

from fastimd.cli import main


@pytest.fixture()
def sine_csv(tmp_path):
    t = np.linspace(0.0, 4 * np.pi, 81)
    lines = [f"{float(ti)!r},{float(np.sin(ti))!r}" for ti in t]
    path = tmp_path / "wave.csv"
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture()
def small_pgm(tmp_path):
    y, x = np.mgrid[0:16, 0:16].astype(float)
    r2 = (x - 8.0) ** 2 + (y - 8.0) ** 2
    pixels = np.clip(np.rint(90.0 + 120.0 * np.exp(-r2 / 40.0)), 0, 255).astype(int)
    body = "\n".join(" ".join(str(v) for v in row) for row in pixels)
    path = tmp_path / "blob.pgm"
    path.write_text(f"P2\n16 16\n255\n{body}\n")
    return path


class TestDecompose:
    def test_writes_modes_and_plots(self, tmp_path, sine_csv, capsys):
        out = tmp_path / "got"
        code = main(["decompose", str(sine_csv), "--out", str(out), "--plot"])
        assert code == 0
        line = capsys.readouterr().out.strip()
        n_modes = int(line.split()[0])
        assert "(extrema_count)" in line
        header = (out / "wave_modes.csv").read_text().splitlines()[0]
        assert len(header.split(",")) == 2 + 3 * n_modes
        svgs = sorted(p.name for p in out.glob("*.svg"))
        assert svgs == [f"wave_mode{k:02d}.svg" for k in range(1, n_modes + 1)]

    def test_golden_two_sines(self, tmp_path, sample_path, golden_path, capsys):
        frozen = json.loads(golden_path("two_sines.json").read_text())
        out = tmp_path / "got"
        code = main(["decompose", str(sample_path("two_sines.csv")),
                     "--degree", "3", "--out", str(out)])
        assert code == 0
        line = capsys.readouterr().out.strip()
        assert line == f"{frozen['mode_count']} modes ({frozen['terminated_reason']})"

    def test_max_modes_flag(self, tmp_path, sample_path, capsys):
        # the first trend of this sample still oscillates, so the cap
        # is what stops the run
        code = main(["decompose", str(sample_path("two_sines.csv")),
                     "--max-modes", "1", "--out", str(tmp_path / "got")])
        assert code == 0
        assert capsys.readouterr().out.strip() == "1 modes (max_modes)"


class TestEef:
    def test_default_keeps_every_sample(self, tmp_path, sine_csv, capsys):
        out = tmp_path / "got"
        assert main(["eef", str(sine_csv), "--out", str(out)]) == 0
        assert capsys.readouterr().out.strip() == "81 control points"
        rows = (out / "wave_eef.csv").read_text().splitlines()
        assert rows[0] == "Time,Original,Eef,Difference"
        assert len(rows) == 82

    def test_indices_flag(self, tmp_path, sine_csv, capsys):
        out = tmp_path / "got"
        code = main(["eef", str(sine_csv), "--indices", "0,20,40,60,80",
                     "--out", str(out)])
        assert code == 0
        assert capsys.readouterr().out.strip() == "5 control points"

    def test_interior_indices_gain_endpoints(self, tmp_path, sine_csv, capsys):
        code = main(["eef", str(sine_csv), "--indices", "40,999",
                     "--out", str(tmp_path / "got")])
        assert code == 1

    def test_plot_written(self, tmp_path, sine_csv):
        out = tmp_path / "got"
        main(["eef", str(sine_csv), "--stride", "10", "--plot", "--out", str(out)])
        assert (out / "wave_eef.svg").exists()

    def test_stride_and_indices_conflict(self, sine_csv):
        with pytest.raises(SystemExit) as info:
            main(["eef", str(sine_csv), "--stride", "5", "--indices", "0,80"])
        assert info.value.code == 2


class TestFit:
    def test_report_contents(self, tmp_path, sine_csv, capsys):
        out = tmp_path / "got"
        assert main(["fit", str(sine_csv), "--out", str(out)]) == 0
        report = json.loads((out / "wave_fit_report.json").read_text())
        assert list(report) == sorted(report)
        assert report["samples"] == 81
        assert report["control_points"] == 9
        assert report["degree"] == 5
        assert report["rms_error"] < 0.08
        assert report["compression_ratio"] == pytest.approx(9 / 81)
        stdout = capsys.readouterr().out
        assert stdout.startswith("rms ")
        rows = (out / "wave_fit.csv").read_text().splitlines()
        assert rows[0] == "Time,Original,Fitted,Residual"

    def test_even_degree_is_usage_error(self, sine_csv):
        with pytest.raises(SystemExit) as info:
            main(["fit", str(sine_csv), "--degree", "4"])
        assert info.value.code == 2


class TestSample:
    def test_stride_output(self, tmp_path, sine_csv, capsys):
        out = tmp_path / "got"
        assert main(["sample", str(sine_csv), "--stride", "10", "--out", str(out)]) == 0
        assert capsys.readouterr().out.strip() == "9 control points"
        rows = (out / "wave_sampled.csv").read_text().splitlines()
        assert rows[0] == "Time,Original,Sampled,Difference"

    def test_selector_required(self, sine_csv):
        with pytest.raises(SystemExit) as info:
            main(["sample", str(sine_csv)])
        assert info.value.code == 2

    def test_oversized_stride_fails_cleanly(self, tmp_path, sine_csv, capsys):
        code = main(["sample", str(sine_csv), "--stride", "3000",
                     "--out", str(tmp_path / "got")])
        assert code == 1
        err = capsys.readouterr().err
        assert err.startswith("fastimd: sample:")
        assert "degree 5 needs 3" in err


class TestImage:
    def test_writes_trend_and_fluctuation_maps(self, tmp_path, small_pgm, capsys):
        out = tmp_path / "got"
        code = main(["image", str(small_pgm), "--max-modes", "2", "--out", str(out)])
        assert code == 0
        assert capsys.readouterr().out.strip() == "2 modes"
        names = sorted(p.name for p in out.glob("*.pgm"))
        assert names == [
            "blob_mode01_fluctuation.pgm",
            "blob_mode01_trend.pgm",
            "blob_mode02_fluctuation.pgm",
            "blob_mode02_trend.pgm",
        ]

    def test_golden_bumps(self, tmp_path, sample_path, golden_path):
        out = tmp_path / "got"
        code = main(["image", str(sample_path("bumps.pgm")), "--max-modes", "1",
                     "--out", str(out)])
        assert code == 0
        for name in ("bumps_mode01_trend.pgm", "bumps_mode01_fluctuation.pgm"):
            got = (out / name).read_bytes()
            assert got == golden_path(name).read_bytes(), name

    def test_scan_choices(self, small_pgm):
        with pytest.raises(SystemExit) as info:
            main(["image", str(small_pgm), "--scan", "diagonal"])
        assert info.value.code == 2


class TestFailureModes:
    def test_missing_file(self, capsys):
        assert main(["decompose", "no_such_file.csv"]) == 1
        assert capsys.readouterr().err.startswith("fastimd: read:")

    def test_unparseable_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("0,1\n1,2,3\n")
        assert main(["decompose", str(bad)]) == 1
        assert "fastimd: read:" in capsys.readouterr().err

    def test_no_subcommand(self):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 2

    def test_bad_indices_text(self, sine_csv):
        with pytest.raises(SystemExit) as info:
            main(["eef", str(sine_csv), "--indices", "1,two,3"])
        assert info.value.code == 2

    def test_uniform_index_flag(self, tmp_path, capsys):
        csv_path = tmp_path / "gaps.csv"
        csv_path.write_text("0,5\n10,6\n11,5\n12,7\n13,6\n20,8\n")
        out = tmp_path / "got"
        assert main(["eef", str(csv_path), "--uniform-index", "--out", str(out)]) == 0
        capsys.readouterr()
        first_row = (out / "gaps_eef.csv").read_text().splitlines()[1]
        assert first_row.split(",")[0] == "0.0"
        last_row = (out / "gaps_eef.csv").read_text().splitlines()[-1]
        assert last_row.split(",")[0] == "5.0"
