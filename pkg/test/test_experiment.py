#!/usr/bin/env python3
"""
实验工具测试: 配置解析、尾部实验、强大数定律实验、图形与命令行入口
"""

import os
import sys
from pathlib import Path

PROJECT_ROOT = os.path.join(os.path.dirname(__file__), '..')
sys.path.insert(0, PROJECT_ROOT)
sys.path.insert(0, os.path.join(PROJECT_ROOT, 'tools', 'experiment'))

import numpy as np
import pytest
import yaml

from config_parser import ConfigError, ConfigParser, RegimeError, check_slln_regime
from figure import radial_edge_profile, render_figure
from main import main
from replicates import run_replicates
from slln import run_slln
from tails import TailReport, run_tails, tail_rows
from utils import format_value, read_csv, resolve_threads, tail_r_grid, write_csv

from geograph import ConnectionSet, build
from motif import template_from_preset
from ppp import Density, PointSet, Window

CONFIG_DIR = Path(PROJECT_ROOT) / "tools" / "experiment" / "configs"


def _write_config(tmp_path, **sections):
    """单位正方形上的小型配置, 各节可覆盖"""
    config = {
        "experiment": {"name": "small", "master_seed": 5, "replicates": 200,
                       "output_dir": str(tmp_path / "out")},
        "density": {"family": "uniform_box", "lo": [0.0, 0.0], "hi": [1.0, 1.0]},
        "connection": {"kind": "lp_ball", "p": 2, "rho": 0.1},
        "template": {"preset": "edge"},
        "schedule": {"t_grid": [50]},
        "tails": {"r_points": 5, "r_max_sd": 3.0, "n_samples": 5000, "inner_samples": 8},
        "moments": {"n_samples": 2000, "inner_samples": 8},
    }
    config.update(sections)
    path = tmp_path / "small.yaml"
    path.write_text(yaml.safe_dump(config), encoding="utf-8")
    return path


def test_parse_uniform_edge_config():
    cfg = ConfigParser(str(CONFIG_DIR / "uniform_edge" / "uniform_edge.yaml")).get_experiment_config()
    assert cfg.name == "uniform_edge"
    assert cfg.d == 2 and cfg.template.k == 2
    assert cfg.t_grid == [100.0]
    assert cfg.rho(100.0) == pytest.approx(0.1)
    assert cfg.connection(100.0).rho == pytest.approx(0.1)
    window = cfg.window(100.0)
    assert window.volume == pytest.approx(1.0)
    assert cfg.covers_support(window)


def test_parse_figure_config_and_overrides(tmp_path):
    parser = ConfigParser(str(CONFIG_DIR / "ball_triangle" / "ball_triangle.yaml"),
                          overrides={"master_seed": 99, "output_dir": str(tmp_path), "replicates": 7})
    cfg = parser.get_experiment_config()
    assert cfg.master_seed == 99 and cfg.replicates == 7
    assert cfg.output_dir == tmp_path
    assert cfg.window(1.0).radius == pytest.approx(10.0)
    assert not cfg.covers_support(cfg.window(1.0))

    path = parser.write_resolved(tmp_path, cfg)
    resolved = yaml.safe_load(path.read_text(encoding="utf-8"))
    assert resolved["experiment"]["master_seed"] == 99


def test_divergent_configuration_is_refused():
    """k·γ = d 时 ∫ m^k 发散, 退出码 2"""
    with pytest.raises(ConfigError):
        ConfigParser(str(CONFIG_DIR / "divergent_edge" / "divergent_edge.yaml"))
    assert main(["count", "--config", str(CONFIG_DIR / "divergent_edge" / "divergent_edge.yaml")]) == 2


def test_invalid_configurations(tmp_path):
    assert main(["count", "--config", str(tmp_path / "missing.yaml")]) == 2
    with pytest.raises(ConfigError):
        ConfigParser(str(_write_config(tmp_path, schedule={"t_grid": []})))
    with pytest.raises(ConfigError):
        ConfigParser(str(_write_config(tmp_path, density={"family": "gaussian", "d": 2})))
    with pytest.raises(ConfigError):
        ConfigParser(str(_write_config(tmp_path, density={"family": "power_law", "A": 1.0,
                                                           "gamma": 2.0, "d": 2})))


def test_slln_regime_check():
    assert check_slln_regime(3, 2, 0.5, 1.0) == 1.0
    assert check_slln_regime(3, 2, 0.5) == pytest.approx(1.0)
    with pytest.raises(RegimeError):
        check_slln_regime(3, 2, 1.0)
    with pytest.raises(RegimeError):
        check_slln_regime(3, 2, 0.5, 1.5)
    with pytest.raises(RegimeError):
        check_slln_regime(2, 2, 0.5, 0.0)


def test_tail_rows_at_zero_are_trivial():
    counts = np.array([3, 5, 8, 9, 12])
    rows = tail_rows(counts, 7.4, 12.0, 8.0, [0.0], 2, 1250.0)
    row = rows[0]
    assert (row.mean_upper, row.mean_lower, row.median_upper, row.median_lower) == (1.0, 1.0, 1.0, 1.0)
    assert row.emp_upper == pytest.approx(0.6)
    assert row.emp_lower == pytest.approx(0.4)
    assert row.emp_median_upper == pytest.approx(0.4)
    assert row.emp_median_lower == pytest.approx(0.4)
    assert row.violations() == []


def test_tail_rows_detect_violation():
    rows = tail_rows(np.full(50, 100), 0.0, 1e-6, 0.0, [50.0], 2, 1.0)
    report = TailReport(t=1.0, rho=1.0, replicates=50, c_d=1.0, anchors={}, rows=rows)
    assert rows[0].emp_upper == 1.0 and rows[0].ci_upper == 0.0
    assert rows[0].mean_upper < 1.0
    assert not report.dominated
    assert any("mean_upper" in message for message in report.violations())


def test_run_tails_small(tmp_path):
    cfg = ConfigParser(str(_write_config(tmp_path))).get_experiment_config()
    report = run_tails(cfg, threads=1)
    assert report.dominated
    assert report.replicates == 200
    assert len(report.rows) == 5
    assert report.r_grid[0] == 0.0
    assert report.anchors["variance"] > report.anchors["expectation"] > 0

    rows = read_csv(cfg.output_dir / "tails.csv")
    assert len(rows) == 5
    assert "median_lower" in rows[0]
    assert len(read_csv(cfg.output_dir / "counts.csv")) == 200


def test_run_slln_small(tmp_path):
    path = _write_config(
        tmp_path,
        template={"preset": "triangle"},
        connection={"kind": "lp_ball", "p": 2},
        schedule={"t_grid": [50, 100], "rho_rule": {"power": 0.5}},
        slln={"seeds": 5, "gamma": 1.0, "eps": 0.1, "n_samples": 2000},
    )
    cfg = ConfigParser(str(path)).get_experiment_config()
    report = run_slln(cfg, threads=1)
    assert report.target_a > 0
    assert len(report.ratios) == 2 and len(report.p90_deviations) == 2
    assert all(d >= 0 for d in report.rel_deviations)

    deviation = read_csv(cfg.output_dir / "slln_deviation.csv")
    assert [float(row["t"]) for row in deviation] == [50.0, 100.0]
    assert all(0.0 <= float(row["deviation_bound"]) <= 1.0 for row in deviation)
    assert len(read_csv(cfg.output_dir / "slln.csv")) == 2

    cfg.t_grid = [100.0, 50.0]
    with pytest.raises(ConfigError):
        run_slln(cfg, threads=1)


def test_slln_regime_refused_at_parse(tmp_path):
    path = _write_config(
        tmp_path,
        template={"preset": "triangle"},
        schedule={"t_grid": [50, 100], "rho_rule": {"power": 1.0}},
        slln={"seeds": 5},
    )
    with pytest.raises(RegimeError):
        ConfigParser(str(path))


def test_limit_window(tmp_path):
    uniform = ConfigParser(str(_write_config(tmp_path))).get_experiment_config()
    assert uniform.limit_window() is None

    ball = _write_config(tmp_path, density={"family": "power_law", "A": 1.0, "gamma": 3.0, "d": 2},
                         window={"kind": "ball", "radius": 1.0})
    window = ConfigParser(str(ball)).get_experiment_config().limit_window()
    assert window is not None and window.radius == pytest.approx(1.0)

    truncated = _write_config(tmp_path, density={"family": "power_law", "A": 1.0, "gamma": 3.0, "d": 2},
                              window={"kind": "truncation", "eps": 0.01})
    assert ConfigParser(str(truncated)).get_experiment_config().limit_window() is None


def test_slln_target_on_fixed_window(tmp_path):
    """固定球窗口: 目标常数取窗口内的 a_W = (1/2)·π·∫_W m²"""
    path = _write_config(
        tmp_path,
        density={"family": "power_law", "A": 1.0, "gamma": 3.0, "d": 2},
        window={"kind": "ball", "radius": 1.0},
        connection={"kind": "lp_ball", "p": 2},
        schedule={"t_grid": [50, 100], "rho_rule": {"power": 0.25}},
        slln={"seeds": 3, "gamma": 1.0, "eps": 0.1, "n_samples": 2000},
    )
    cfg = ConfigParser(str(path)).get_experiment_config()
    report = run_slln(cfg, threads=1)

    density = cfg.density
    inside = 0.5 * np.pi * density.window_integral_power(2, Window.ball([0.0, 0.0], 1.0))
    assert report.target_a == pytest.approx(inside, rel=1e-9)
    assert report.target_a < 0.5 * np.pi * density.integral_power(2)


def test_slln_p90_deviation_decreases(tmp_path):
    """单位正方形上的边计数: 多种子偏差的 p90 随 t 增大而减小"""
    path = _write_config(
        tmp_path,
        connection={"kind": "lp_ball", "p": 2},
        schedule={"t_grid": [100, 1600], "rho_rule": {"power": 0.25}},
        slln={"seeds": 20, "gamma": 1.0, "eps": 0.1, "n_samples": 2000},
    )
    cfg = ConfigParser(str(path)).get_experiment_config()
    report = run_slln(cfg, threads=1)
    assert report.target_a == pytest.approx(np.pi / 2.0)
    print(f"p90: {report.p90_deviations}")
    assert report.p90_deviations[1] < report.p90_deviations[0]


def test_figure_svg(tmp_path):
    S = ConnectionSet.lp_ball(2, 1.0, 2)
    triangle = PointSet(d=2, points=[[0.0, 0.0], [0.5, 0.0], [0.25, 0.4]],
                        window=Window.box([0.0, 0.0], [1.0, 1.0]))
    svg = render_figure(triangle, build(triangle, S), tmp_path / "triangle.svg").read_text(encoding="utf-8")
    assert svg.count("<circle") == 3
    assert svg.count("<line") == 3

    empty = PointSet(d=2, points=np.empty((0, 2)))
    svg = render_figure(empty, build(empty, S), tmp_path / "empty.svg").read_text(encoding="utf-8")
    assert "<circle" not in svg and "<line" not in svg

    cube = PointSet(d=3, points=[[0.0, 0.0, 0.0]])
    with pytest.raises(ValueError):
        render_figure(cube, build(cube, ConnectionSet.lp_ball(2, 1.0, 3)), tmp_path / "cube.svg")


def test_radial_edge_profile():
    points = PointSet(d=2, points=[[0.5, 0.0], [0.6, 0.0], [-0.5, -0.5], [-0.6, -0.5]])
    graph = build(points, ConnectionSet.lp_ball(2, 0.2, 2))
    profile = radial_edge_profile(graph, [0.0, 1.0, 2.0])
    assert len(profile) == 2
    inner = profile[0]
    assert inner["edges"] == 2
    assert (inner["q1"], inner["q2"], inner["q3"], inner["q4"]) == (1, 0, 1, 0)
    assert inner["density"] == pytest.approx(2.0 / np.pi)
    assert profile[1]["edges"] == 0


def test_csv_helpers(tmp_path):
    assert format_value(0.1) == "0.10000000000000001"
    assert format_value(np.float64(2.5)) == "2.5"
    assert format_value(True) == "true"
    assert format_value(3) == "3"

    path = write_csv(tmp_path / "x.csv", ["a", "b"], [[1, 0.5], [2, 1.0 / 3.0]])
    rows = read_csv(path)
    assert rows[1]["b"] == "0.33333333333333331"
    assert float(rows[1]["b"]) == 1.0 / 3.0

    assert tail_r_grid(2.0, 5.0, 6) == pytest.approx([0.0, 2.0, 4.0, 6.0, 8.0, 10.0])
    assert tail_r_grid(0.0, 5.0, 6) == [0.0]


def test_resolve_threads(monkeypatch):
    monkeypatch.setenv("GEOCONC_THREADS", "3")
    assert resolve_threads() == 3
    monkeypatch.setenv("GEOCONC_THREADS", "0")
    with pytest.raises(ValueError):
        resolve_threads()
    monkeypatch.setenv("GEOCONC_THREADS", "many")
    with pytest.raises(ValueError):
        resolve_threads()


def test_replicates_are_reproducible():
    """结果只依赖主种子, 与进程数无关"""
    density = Density.uniform_box([0.0, 0.0], [1.0, 1.0])
    window = Window.box([0.0, 0.0], [1.0, 1.0])
    S = ConnectionSet.lp_ball(2, 0.1, 2)
    H = template_from_preset("triangle")
    serial = run_replicates(density, window, 80.0, S, H, 123, 20, threads=1)
    again = run_replicates(density, window, 80.0, S, H, 123, 20, threads=1)
    pooled = run_replicates(density, window, 80.0, S, H, 123, 20, threads=2)
    assert np.array_equal(serial, again)
    assert np.array_equal(serial, pooled)
    assert not np.array_equal(serial, run_replicates(density, window, 80.0, S, H, 124, 20, threads=1))


def test_main_count_bounds_and_figure(tmp_path):
    path = str(_write_config(tmp_path))
    out = tmp_path / "out"

    assert main(["count", "--config", path, "--dot"]) == 0
    for name in ("points.csv", "census.csv", "edges.csv", "graph.dot", "config.resolved.yaml", "run.log"):
        assert (out / name).exists(), name

    assert main(["bounds", "--config", path, "--mean", "60", "--variance", "90", "--median", "59"]) == 0
    rows = read_csv(out / "bounds.csv")
    assert len(rows) == 5
    assert float(rows[0]["mean_upper"]) == 1.0

    assert main(["figure", "--config", path, "--seed", "6"]) == 0
    assert (out / "figure.svg").exists()
    assert len(read_csv(out / "figure_profile.csv")) == 5
    resolved = yaml.safe_load((out / "config.resolved.yaml").read_text(encoding="utf-8"))
    assert resolved["experiment"]["master_seed"] == 6


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
