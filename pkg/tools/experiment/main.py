#!/usr/bin/env python3
"""
Subgraph-count concentration experiments

Usage:
    python main.py sample  --config configs/uniform_edge/uniform_edge.yaml
    python main.py count   --config configs/ball_triangle/ball_triangle.yaml --dot
    python main.py bounds  --config configs/uniform_edge/uniform_edge.yaml --mean 144 --variance 350 --median 144
    python main.py moments --config configs/uniform_edge/uniform_edge.yaml
    python main.py tails   --config configs/uniform_edge/uniform_edge.yaml --replicates 10000
    python main.py slln    --config configs/slln_triangle/slln_triangle.yaml
    python main.py figure  --config configs/ball_triangle/ball_triangle.yaml

Exit codes: 0 success, 1 unexpected failure, 2 configuration refused, 3 bound violated
"""

import argparse
import sys
import time
from pathlib import Path
from typing import List, Optional

import numpy as np

project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from bounds.tails import TailKind, tail_curves
from bounds.constants import c_d_subgraph
from geograph.export import visualize_geograph, write_edge_csv
from geograph.graph import build
from moments.expectation import expectation_numeric
from moments.variance import asymptotic_constants, variance_numeric
from motif.condition import check_condition
from motif.counter import count
from ppp.sampler import sample

from config_parser import ConfigError, ConfigParser, ExperimentConfig
from figure import radial_edge_profile, render_figure
from log import attach_run_log, detach_run_log, log_error, log_info, log_success, log_warning
from slln import run_slln
from tails import DominationError, run_tails
from utils import print_summary, tail_r_grid, write_csv

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_DOMINATION = 3

BOUNDS_COLUMNS = ["r", "mean_upper", "mean_lower", "median_upper", "median_lower"]
MOMENTS_COLUMNS = ["quantity", "value", "std_error", "source", "params"]


def _params_text(params: dict) -> str:
    return ";".join(f"{key}={value}" for key, value in params.items())


def _sample_first(cfg: ExperimentConfig):
    t = cfg.t_grid[0]
    window = cfg.window(t)
    points = sample(cfg.density, window, t, cfg.master_seed)
    log_info(f"Sampled {len(points)} points (t={t:g}, window={window.describe()})")
    return t, points


def command_sample(cfg: ExperimentConfig, args) -> int:
    _, points = _sample_first(cfg)
    path = points.to_csv(cfg.output_dir / "points.csv")
    log_success(f"Points written to {path}")
    return EXIT_OK


def command_count(cfg: ExperimentConfig, args) -> int:
    t, points = _sample_first(cfg)
    connection = cfg.connection(t)
    graph = build(points, connection)
    census = count(graph, cfg.template)
    check = check_condition(census, cfg.template, cfg.d, connection.theta)

    points.to_csv(cfg.output_dir / "points.csv")
    census.to_csv(cfg.output_dir / "census.csv")
    write_edge_csv(graph, cfg.output_dir / "edges.csv")
    if args.dot:
        visualize_geograph(graph, cfg.output_dir / "graph.dot")

    print_summary(f"{cfg.template.name} copies", {
        "vertices": graph.n,
        "edges": graph.edge_count,
        "copies": census.total,
        "local-square sum": float(check.lhs),
        "c_d * N^((2k-1)/k)": check.rhs,
        "inequality holds": check.holds,
    })
    if not check.holds:
        log_error("Local-count inequality violated")
        return EXIT_DOMINATION
    return EXIT_OK


def command_bounds(cfg: ExperimentConfig, args) -> int:
    t = cfg.t_grid[0]
    rho = cfg.rho(t)
    connection = cfg.connection(t)
    H = cfg.template
    expectation, variance, median = args.mean, args.variance, args.median

    if expectation is None or variance is None:
        window = cfg.window(t)
        density = cfg.density if cfg.covers_support(window) else cfg.density.restricted(window)
        n_samples = cfg.moments['n_samples']
        if expectation is None:
            expectation = expectation_numeric(density, H, connection, t, rho, n_samples,
                                              seed=cfg.master_seed).expectation
        if variance is None:
            variance = variance_numeric(density, H, connection, t, rho, n_samples,
                                        inner_samples=cfg.moments['inner_samples'],
                                        seed=cfg.master_seed).variance
    if median is None:
        log_warning("No --median given; anchoring the median bounds at the expectation")
        median = expectation

    c = c_d_subgraph(H, cfg.d, connection.theta)
    settings = cfg.tails
    r_grid = settings['r_grid'] or tail_r_grid(variance ** 0.5, settings['r_max_sd'],
                                               settings['r_points'])
    curves = tail_curves(expectation, variance, median, r_grid, H.k, c)
    rows = []
    for index, r in enumerate(r_grid):
        rows.append([r] + [curves[kind].samples[index][1] for kind in
                           (TailKind.MEAN_UPPER, TailKind.MEAN_LOWER,
                            TailKind.MEDIAN_UPPER, TailKind.MEDIAN_LOWER)])
    path = write_csv(cfg.output_dir / "bounds.csv", BOUNDS_COLUMNS, rows)
    log_success(f"Bounds written to {path} (c_d = {c:.6g})")
    return EXIT_OK


def command_moments(cfg: ExperimentConfig, args) -> int:
    H = cfg.template
    settings = cfg.moments
    rows = []
    for t in cfg.t_grid:
        rho = cfg.rho(t)
        connection = cfg.connection(t)
        window = cfg.window(t)
        density = cfg.density if cfg.covers_support(window) else cfg.density.restricted(window)
        estimates = [
            expectation_numeric(density, H, connection, t, rho, settings['n_samples'],
                                seed=cfg.master_seed),
            variance_numeric(density, H, connection, t, rho, settings['n_samples'],
                             inner_samples=settings['inner_samples'], seed=cfg.master_seed),
        ]
        for estimate in estimates:
            for quantity, value, error in estimate.rows():
                rows.append([quantity, value, error, estimate.source.value,
                             _params_text(estimate.params)])

    constants = asymptotic_constants(cfg.density, H, cfg.connection_shape, settings['n_samples'],
                                     inner_samples=settings['inner_samples'], seed=cfg.master_seed,
                                     window=cfg.limit_window())
    params = _params_text({"template": H.name, "density": cfg.density.family.value})
    rows.append(["a", constants.a, constants.std_errors["a"], "analytic_integral", params])
    for n in sorted(constants.A):
        rows.append([f"A{n}", constants.A[n], constants.std_errors[f"A{n}"], "analytic_integral", params])
        rows.append([f"K{n}", constants.K[n], constants.std_errors[f"K{n}"], "analytic_integral", params])

    path = write_csv(cfg.output_dir / "moments.csv", MOMENTS_COLUMNS, rows)
    log_success(f"Moments written to {path}")
    return EXIT_OK


def command_tails(cfg: ExperimentConfig, args) -> int:
    report = run_tails(cfg, threads=args.threads)
    print_summary("Tail experiment", {
        "t": report.t,
        "rho": report.rho,
        "replicates": report.replicates,
        "c_d": report.c_d,
        **report.anchors,
    })
    return EXIT_OK


def command_slln(cfg: ExperimentConfig, args) -> int:
    report = run_slln(cfg, threads=args.threads)
    print_summary("Strong-law experiment", {
        "a": report.target_a,
        "largest t": report.t_grid[-1],
        "final ratio": report.ratios[-1],
        "final relative deviation": report.final_deviation,
        "final p90 deviation": report.p90_deviations[-1],
    })
    return EXIT_OK


def command_figure(cfg: ExperimentConfig, args) -> int:
    t, points = _sample_first(cfg)
    graph = build(points, cfg.connection(t))
    path = render_figure(points, graph, cfg.output_dir / "figure.svg")
    if args.dot:
        visualize_geograph(graph, cfg.output_dir / "figure.dot")

    window = points.window
    outer = float(np.max(np.abs(np.concatenate(window.bounding_box())))) if window is not None else 1.0
    rings = [outer * i / 5.0 for i in range(6)]
    profile = radial_edge_profile(graph, rings)
    write_csv(cfg.output_dir / "figure_profile.csv",
              ["r_in", "r_out", "edges", "density", "q1", "q2", "q3", "q4"],
              ([ring[key] for key in ("r_in", "r_out", "edges", "density", "q1", "q2", "q3", "q4")]
               for ring in profile))
    log_success(f"Figure written to {path} ({graph.n} vertices, {graph.edge_count} edges)")
    return EXIT_OK


COMMANDS = {
    "sample": command_sample,
    "count": command_count,
    "bounds": command_bounds,
    "moments": command_moments,
    "tails": command_tails,
    "slln": command_slln,
    "figure": command_figure,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Subgraph-count concentration experiments")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub = subparsers.add_parser(name)
        sub.add_argument("--config", required=True, help="YAML experiment configuration")
        sub.add_argument("--seed", type=int, help="Override experiment.master_seed")
        sub.add_argument("--out", help="Override experiment.output_dir")
        sub.add_argument("--replicates", type=int, help="Override experiment.replicates")
        sub.add_argument("--threads", type=int, help="Worker count (default: GEOCONC_THREADS)")
        if name in ("count", "figure"):
            sub.add_argument("--dot", action="store_true", help="Also write a Graphviz DOT file")
        if name == "bounds":
            sub.add_argument("--mean", type=float, help="Expectation anchor")
            sub.add_argument("--variance", type=float, help="Variance anchor")
            sub.add_argument("--median", type=float, help="Median anchor")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    start_time = time.time()

    try:
        config_parser = ConfigParser(args.config, overrides={
            "master_seed": args.seed,
            "output_dir": args.out,
            "replicates": args.replicates,
        })
        cfg = config_parser.get_experiment_config()
    except (ConfigError, FileNotFoundError) as e:
        log_error(f"Configuration refused: {e}")
        return EXIT_CONFIG

    attach_run_log(cfg.output_dir)
    try:
        log_success(f"Configuration parsed: {args.config}")
        status = COMMANDS[args.command](cfg, args)
        config_parser.write_resolved(cfg.output_dir, cfg)
        log_info(f"Finished {args.command} in {time.time() - start_time:.1f}s")
        return status
    except ConfigError as e:
        log_error(f"Configuration refused: {e}")
        return EXIT_CONFIG
    except DominationError as e:
        log_error(f"Bound violated: {e}")
        return EXIT_DOMINATION
    except Exception as e:
        log_error(f"{args.command} failed: {e}")
        return EXIT_FAILURE
    finally:
        detach_run_log()


if __name__ == "__main__":
    sys.exit(main())
