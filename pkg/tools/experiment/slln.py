#!/usr/bin/env python3
"""
Strong-law experiment: N_t / (t^k rho_t^{d(k-1)}) along an increasing t-grid

A finite experiment cannot verify almost-sure convergence. Two views are reported:
a single seeded trajectory (slln.csv) and the distribution of relative deviations
over many seeds per grid point (slln_deviation.csv).
"""

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

import numpy as np

project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from bounds.constants import c_d_subgraph
from bounds.tails import slln_deviation_bound
from moments.variance import asymptotic_constants
from ppp.seeds import child_seed

from config_parser import ConfigError, ExperimentConfig, check_slln_regime
from log import log_info, log_success, log_warning
from replicates import ReplicateTask, run_replicates, simulate_count
from utils import write_csv

TRAJECTORY_COLUMNS = ["t", "rho", "count", "ratio", "target_a", "rel_deviation"]
DEVIATION_COLUMNS = ["t", "rho", "seeds", "p50_rel_deviation", "p90_rel_deviation",
                     "frac_exceeding_eps", "deviation_bound"]

# offset separating the per-seed streams from the trajectory stream
DISTRIBUTION_STREAM = 1_000_000


@dataclass
class SllnReport:
    target_a: float
    target_a_se: float
    t_grid: List[float]
    ratios: List[float] = field(default_factory=list)
    rel_deviations: List[float] = field(default_factory=list)
    p90_deviations: List[float] = field(default_factory=list)

    @property
    def final_deviation(self) -> float:
        return self.rel_deviations[-1]


def rescaling(t: float, rho: float, d: int, k: int) -> float:
    """t^k rho^{d(k-1)}"""
    return t ** k * rho ** (d * (k - 1))


def run_slln(cfg: ExperimentConfig, threads: Optional[int] = None,
             output_dir: Optional[Path] = None) -> SllnReport:
    """
    Run the trajectory and the deviation table

    Raises:
        RegimeError: the schedule violates the SLLN regime condition
        ConfigError: t_grid is not strictly increasing
    """
    output_dir = Path(output_dir or cfg.output_dir)
    H, d, k = cfg.template, cfg.d, cfg.template.k
    check_slln_regime(k, d, cfg.rho_rule.beta, cfg.slln.get('gamma'))
    if any(b <= a for a, b in zip(cfg.t_grid, cfg.t_grid[1:])):
        raise ConfigError(f"slln requires a strictly increasing t_grid: {cfg.t_grid}")

    settings = cfg.slln
    limit_window = cfg.limit_window()
    constants = asymptotic_constants(cfg.density, H, cfg.connection_shape, settings['n_samples'],
                                     inner_samples=cfg.moments['inner_samples'],
                                     seed=cfg.master_seed, window=limit_window)
    a = constants.a
    if limit_window is not None:
        log_info(f"Fixed window {limit_window.describe()}: limits integrate over the window")
    log_info(f"Asymptotic constant a = {a:.6g} ± {constants.std_errors['a']:.3g}")
    log_warning("Almost-sure convergence cannot be verified by a finite experiment; "
                "reporting one trajectory and a deviation distribution")

    report = SllnReport(target_a=a, target_a_se=constants.std_errors['a'], t_grid=list(cfg.t_grid))
    trajectory, deviation_rows = [], []
    c = c_d_subgraph(H, d, cfg.connection_shape.theta)

    for index, t in enumerate(cfg.t_grid):
        rho = cfg.rho(t)
        connection = cfg.connection(t)
        window = cfg.window(t)
        scale = rescaling(t, rho, d, k)

        count = simulate_count(ReplicateTask(cfg.density, window, t, connection, H,
                                             child_seed(cfg.master_seed, index)))
        ratio = count / scale
        deviation = abs(ratio - a) / a
        report.ratios.append(ratio)
        report.rel_deviations.append(deviation)
        trajectory.append([t, rho, count, ratio, a, deviation])
        log_info(f"t={t:g}: N={count}, ratio={ratio:.6g}, deviation={deviation:.4f}")

        counts = run_replicates(cfg.density, window, t, connection, H,
                                child_seed(cfg.master_seed, DISTRIBUTION_STREAM + index),
                                settings['seeds'], threads=threads)
        deviations = np.abs(counts / scale - a) / a
        p50, p90 = (float(q) for q in np.percentile(deviations, [50, 90]))
        report.p90_deviations.append(p90)
        bound = slln_deviation_bound(a * scale, constants.variance_scale(t, rho, d, k),
                                     t, rho, d, k, c, settings['eps'] * a)
        deviation_rows.append([t, rho, settings['seeds'], p50, p90,
                               float(np.mean(deviations >= settings['eps'])), bound])

    write_csv(output_dir / "slln.csv", TRAJECTORY_COLUMNS, trajectory)
    write_csv(output_dir / "slln_deviation.csv", DEVIATION_COLUMNS, deviation_rows)
    log_success(f"Final relative deviation {report.final_deviation:.4f} at t={cfg.t_grid[-1]:g}")
    return report
