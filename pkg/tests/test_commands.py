import json

import pandas as pd
import pytest

import app_cli
from io_tool.commands import scaling_step
from utilities.config import RunConfig
from series_tool.errors import ConfigError


def run(*argv):
    return app_cli.main(list(argv))


@pytest.fixture
def sine_csv(tmp_path):
    path = tmp_path / "sine.csv"
    assert run("generate", "--kind", "sine", "--n", "500", "--out", str(path)) == 0
    return path


def test_decompose_writes_modes_and_summary(sine_csv, tmp_path):
    out = tmp_path / "out"
    assert run("decompose", "--input", str(sine_csv), "--out", str(out)) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["mode_count"] >= 1
    assert summary["samples"] == 500
    assert summary["reconstruction_error"] <= 1e-9
    mode = pd.read_csv(out / "mode1.csv")
    assert list(mode.columns) == ["t", "imf", "residue", "upper", "lower"]
    assert len(mode) == 500
    assert (out / "residue.csv").exists()


def test_monotone_input_is_its_own_residue(tmp_path):
    path = tmp_path / "ramp.csv"
    path.write_text("t,x\n0,0\n1,1\n2,2\n")
    out = tmp_path / "out"
    assert run("decompose", "--input", str(path), "--out", str(out)) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["mode_count"] == 0
    residue = pd.read_csv(out / "residue.csv")
    assert residue["residue"].tolist() == [0.0, 1.0, 2.0]
    assert not (out / "mode1.csv").exists()


def test_expansion_meets_epsilon(tmp_path):
    out = tmp_path / "out"
    assert run("decompose", "--generate", "sine", "--n", "400", "--method", "expansion",
               "--epsilon", "1e-4", "--out", str(out)) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["converged"]
    assert summary["achieved_error"] < 1e-4


def test_emd_method(tmp_path):
    out = tmp_path / "out"
    assert run("decompose", "--generate", "two-tone", "--n", "1000", "--method", "emd",
               "--max-modes", "2", "--out", str(out)) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["method"] == "emd"
    assert 1 <= summary["mode_count"] <= 2


def test_svg_charts(tmp_path):
    out = tmp_path / "out"
    assert run("decompose", "--generate", "two-tone", "--n", "1000", "--max-modes", "1",
               "--svg", "--out", str(out)) == 0
    for name in ("mode1.svg", "mean1.svg", "overview.svg"):
        text = (out / name).read_text()
        assert text.rstrip().endswith("</svg>")
        assert "<polyline" in text


def test_generate_is_deterministic(tmp_path, capsys):
    assert run("generate", "--kind", "randomwalk", "--n", "50", "--seed", "4") == 0
    first = capsys.readouterr().out
    assert run("generate", "--kind", "randomwalk", "--n", "50", "--seed", "4") == 0
    assert capsys.readouterr().out == first
    assert first.splitlines()[0] == "t,x"
    assert len(first.splitlines()) == 51


def test_bench_writes_report(tmp_path):
    out = tmp_path / "out"
    assert run("bench", "--sizes", "500", "1000", "--emd-limit", "500", "--max-modes", "4",
               "--out", str(out)) == 0
    bench = json.loads((out / "bench.json").read_text())
    assert [r["size"] for r in bench["reports"]] == [500, 1000]
    assert bench["reports"][0]["emd_seconds"] is not None
    assert bench["reports"][1]["emd_seconds"] is None
    assert bench["sawtooth_scaling"][0]["size_ratio"] == 2.0
    assert isinstance(bench["sawtooth_linear"], bool)
    assert bench["sawtooth_linear"] == bench["sawtooth_scaling"][0]["linear"]


def test_scaling_step_flags_superlinear_growth():
    small = {"size": 1000, "sawtooth_seconds": 0.01}
    assert scaling_step(small, {"size": 10000, "sawtooth_seconds": 0.12})["linear"]
    step = scaling_step(small, {"size": 10000, "sawtooth_seconds": 0.5})
    assert step["time_ratio"] == pytest.approx(50.0)
    assert not step["linear"]
    assert scaling_step({"size": 10, "sawtooth_seconds": 0.0}, small)["time_ratio"] is None


def test_missing_input_fails(tmp_path):
    assert run("decompose", "--input", str(tmp_path / "nope.csv"), "--out", str(tmp_path)) == 1


def test_bad_csv_fails(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("0,1\n0,2\n")
    assert run("decompose", "--input", str(path), "--out", str(tmp_path / "out")) == 1


def test_expansion_needs_epsilon():
    with pytest.raises(ConfigError):
        RunConfig(method="expansion", generate="sine").validate()
    with pytest.raises(ConfigError):
        RunConfig(method="sawtooth", epsilon=0.1, generate="sine").validate()
