import math
import os

import numpy as np
import pytest
from numpy.testing import assert_allclose

from knlab.cli import main
from knlab.deckgroup import enumerate_group
from knlab.experiments import (ConfigError, ExperimentConfig, fit_scaling,
                               load_config, parse_config, run_experiment)


def read(path):
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def csv_rows(path):
    lines = read(path).strip().splitlines()
    assert lines[0].startswith("# seed = ")
    header = lines[1].split(",")
    return header, [line.split(",") for line in lines[2:]]


def test_fit_scaling_power_law():
    lams = (16.0, 64.0, 256.0, 1024.0)
    fit = fit_scaling([(lam, lam ** -0.5) for lam in lams], "log")
    assert_allclose(fit.slope, -0.5, atol=1e-12)
    assert_allclose(fit.r_squared, 1.0, atol=1e-12)
    fit = fit_scaling([(lam, math.log(lam) ** -0.5) for lam in lams], "loglog")
    assert_allclose(fit.slope, -0.5, atol=1e-12)
    assert_allclose(fit.r_squared, 1.0, atol=1e-12)
    fit = fit_scaling([(lam, 3.25) for lam in lams], "log")
    assert_allclose(fit.slope, 0.0, atol=1e-12)
    assert fit.r_squared == 1.0


def test_fit_scaling_rejects_bad_input():
    with pytest.raises(ValueError):
        fit_scaling([(1.0, 1.0), (2.0, 2.0)], "log")
    with pytest.raises(ValueError):
        fit_scaling([(2.0, 1.0), (4.0, -1.0), (8.0, 1.0)], "log")
    with pytest.raises(ValueError):
        fit_scaling([(2.0, 1.0), (4.0, 1.0), (8.0, 1.0)], "sqrt")


def test_parse_config_and_overrides(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(
        "# sample configuration\n"
        "experiment = gram-window\n"
        "lambda-grid = 16, 32\n"
        "seed = 9\n"
        "\n"
        "jobs = 2\n")
    raw = parse_config(path.read_text())
    assert raw == {"experiment": "gram-window", "lambda_grid": "16, 32",
                   "seed": "9", "jobs": "2"}
    config = load_config(str(path))
    assert config.experiment == "gram-window"
    assert config.lam_grid == (16.0, 32.0)
    assert config.seed == 9
    assert config.jobs == 2
    override = load_config(str(path), {"lam_grid": "64,128", "seed": 4})
    assert override.lam_grid == (64.0, 128.0)
    assert override.seed == 4


def test_config_validation_errors(tmp_path):
    with pytest.raises(ConfigError):
        ExperimentConfig("unknown-study")
    with pytest.raises(ConfigError):
        ExperimentConfig("gram-window", lam_grid=())
    with pytest.raises(ConfigError):
        ExperimentConfig("gram-window", lam_grid=(64.0, 32.0))
    with pytest.raises(ConfigError):
        ExperimentConfig("gram-window", lam_grid=(64.0, 8192.0))
    with pytest.raises(ConfigError):
        ExperimentConfig("deck-counts", word_length=17)
    with pytest.raises(ConfigError):
        ExperimentConfig("gram-window", lam_grid=(16.0,), jobs=0)
    with pytest.raises(ConfigError):
        ExperimentConfig("gram-window", lam_grid=(16.0,), seed=-1)
    with pytest.raises(ConfigError):
        load_config(None, {"out_dir": str(tmp_path)})
    with pytest.raises(ConfigError):
        load_config(None, {"experiment": "gram-window", "color": "red"})
    with pytest.raises(ConfigError):
        load_config(None, {"experiment": "gram-window", "seed": "many"})


def test_unwritable_output_directory(tmp_path):
    blocker = tmp_path / "occupied"
    blocker.write_text("not a directory")
    config = ExperimentConfig("gram-window", lam_grid=(16.0,),
                              out_dir=str(blocker))
    with pytest.raises(ConfigError):
        run_experiment(config)


def test_gram_window_outputs_and_reproducibility(tmp_path):
    first = ExperimentConfig("gram-window", lam_grid=(16.0, 32.0),
                             out_dir=str(tmp_path / "a"), seed=7)
    second = ExperimentConfig("gram-window", lam_grid=(16.0, 32.0),
                              out_dir=str(tmp_path / "b"), seed=7)
    paths_a = run_experiment(first)
    paths_b = run_experiment(second)
    assert [os.path.basename(p) for p in paths_a] == [
        "gram_window.csv", "gram_window.svg", "gram_window_summary.txt"]
    for a, b in zip(paths_a, paths_b):
        assert read(a) == read(b)
    header, rows = csv_rows(paths_a[0])
    assert header == ["lambda", "window_width", "modes", "tube", "norm",
                      "reference", "version", "config_hash"]
    assert len(rows) == 2
    assert read(paths_a[0]).startswith("# seed = 7\n")
    norm = float(rows[0][header.index("norm")])
    assert 0.0 < norm < 1.0
    # 17 significant digits survive a parse round trip
    assert "%.17g" % norm == rows[0][header.index("norm")]
    hashes = {row[-1] for row in rows}
    assert len(hashes) == 1
    summary = read(paths_a[2])
    assert "norms non-increasing: pass" in summary
    assert "seed = 7" in summary


def test_seed_changes_random_experiment_rows(tmp_path):
    base = {"experiment": "kn-scaling", "lam_grid": "64",
            "coefficient_count": 8, "base_count": 2, "direction_count": 2}
    a = run_experiment(load_config(None, dict(base, out_dir=str(tmp_path / "a"),
                                              seed=1)))
    b = run_experiment(load_config(None, dict(base, out_dir=str(tmp_path / "b"),
                                              seed=2)))
    header, rows_a = csv_rows(a[0])
    _, rows_b = csv_rows(b[0])
    kn = header.index("kn_squared")
    assert rows_a[0][kn] != rows_b[0][kn]
    assert float(rows_a[0][kn]) <= 1.0 + 1e-6
    assert float(rows_b[0][kn]) <= 1.0 + 1e-6


def test_escape_times_rows_and_invariant(tmp_path):
    config = load_config(None, {"experiment": "escape-times",
                                "lam_grid": "100,400",
                                "out_dir": str(tmp_path)})
    paths = run_experiment(config)
    header, rows = csv_rows(paths[0])
    assert len(rows) == 8
    times = {}
    for row in rows:
        key = (row[header.index("lambda")], row[header.index("delta0")])
        times.setdefault(key, {})[row[0]] = float(row[header.index("time")])
    for pair in times.values():
        assert pair["hyperbolic_plane"] <= pair["flat_torus"]
        assert math.isfinite(pair["flat_torus"])
    assert "hyperbolic escape at most flat escape: pass" in read(paths[2])


def test_deck_counts_match_enumeration(tmp_path):
    config = load_config(None, {"experiment": "deck-counts",
                                "word_length": 6,
                                "out_dir": str(tmp_path)})
    paths = run_experiment(config)
    header, rows = csv_rows(paths[0])
    enum = enumerate_group(6, target_radius=4.0)
    word_rows = [r for r in rows if r[0] == "words"]
    assert [int(r[2]) for r in word_rows] == list(enum.counts_per_length)
    annulus_rows = [r for r in rows if r[0] == "annulus_tube"]
    assert annulus_rows, "annulus section missing"
    summary = read(paths[2])
    assert "exponential growth R^2 > 0.9: pass" in summary
    assert "annulus counts certified: pass" in summary


def test_toponogov_cone_summary(tmp_path):
    config = load_config(None, {"experiment": "toponogov-cone",
                                "t_grid": "2,4", "r_grid": "0.5,1",
                                "out_dir": str(tmp_path)})
    paths = run_experiment(config)
    header, rows = csv_rows(paths[0])
    assert len(rows) == 8
    violations = header.index("violations")
    assert all(int(r[violations]) == 0 for r in rows)
    summary = read(paths[2])
    assert "zero containment violations: pass" in summary
    assert "1.5 theta cone is violated: pass" in summary


def test_nodal_suite_rows(tmp_path):
    config = load_config(None, {"experiment": "nodal-suite", "k_grid": "5,10",
                                "out_dir": str(tmp_path)})
    paths = run_experiment(config)
    header, rows = csv_rows(paths[0])
    sine5 = next(r for r in rows if r[0] == "flat_torus" and r[1] == "sine-5")
    assert_allclose(float(sine5[header.index("length")]), 20.0 * math.pi,
                    rtol=1e-10)
    assert "torus nodal length = 4 pi lambda within 1%: pass" in read(paths[2])


def test_svg_structure(tmp_path):
    config = ExperimentConfig("gram-window", lam_grid=(16.0, 32.0),
                              out_dir=str(tmp_path), seed=3)
    paths = run_experiment(config)
    svg = read(paths[1])
    assert svg.startswith("<svg")
    assert 'width="800" height="600"' in svg
    assert svg.count("<polyline") == 2
    assert "seed = 3" in svg
    assert svg.rstrip().endswith("</svg>")


def test_main_exit_codes(tmp_path, capsys):
    assert main(["no-such-study", "--out", str(tmp_path)]) == 2
    err = capsys.readouterr().err
    assert "unknown experiment" in err
    code = main(["gram-window", "--lambda-grid", "16,32",
                 "--out", str(tmp_path), "--seed", "5"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.count(str(tmp_path)) == 3
    assert os.path.exists(os.path.join(str(tmp_path), "gram_window.csv"))


def test_main_reads_config_file(tmp_path, capsys):
    cfg = tmp_path / "study.cfg"
    cfg.write_text("experiment = gram-window\nlambda-grid = 16\n"
                   "out_dir = %s\n" % (tmp_path / "out"))
    assert main(["--config", str(cfg)]) == 0
    capsys.readouterr()
    assert os.path.exists(str(tmp_path / "out" / "gram_window.csv"))
