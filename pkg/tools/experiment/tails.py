#!/usr/bin/env python3
"""
Tail experiment: empirical tail frequencies of N against the four concentration bounds
"""

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from bounds.constants import c_d_subgraph
from bounds.tails import TailKind, tail_curves
from moments.expectation import expectation_numeric
from moments.median import median_smallest
from moments.variance import variance_numeric

from config_parser import ExperimentConfig
from log import log_info, log_success, log_warning
from replicates import run_replicates
from utils import binomial_half_width, tail_r_grid, write_csv

TAIL_COLUMNS = [
    "r", "emp_upper", "emp_lower", "ci", "mean_upper", "mean_lower", "median_upper",
    "median_lower", "ci_lower", "emp_median_upper", "emp_median_lower", "ci_median_upper",
    "ci_median_lower",
]

MIN_TAIL_REPLICATES = 1000


class DominationError(AssertionError):
    """An empirical tail frequency exceeded its bound plus the CI half-width (exit code 3)"""


@dataclass
class TailRow:
    r: float
    emp_upper: float
    emp_lower: float
    ci_upper: float
    ci_lower: float
    emp_median_upper: float
    emp_median_lower: float
    ci_median_upper: float
    ci_median_lower: float
    mean_upper: float
    mean_lower: float
    median_upper: float
    median_lower: float

    def as_csv_row(self) -> List[float]:
        return [self.r, self.emp_upper, self.emp_lower, self.ci_upper, self.mean_upper,
                self.mean_lower, self.median_upper, self.median_lower, self.ci_lower,
                self.emp_median_upper, self.emp_median_lower, self.ci_median_upper,
                self.ci_median_lower]

    def violations(self) -> List[str]:
        checks = [
            ("mean_upper", self.emp_upper, self.mean_upper, self.ci_upper),
            ("mean_lower", self.emp_lower, self.mean_lower, self.ci_lower),
            ("median_upper", self.emp_median_upper, self.median_upper, self.ci_median_upper),
            ("median_lower", self.emp_median_lower, self.median_lower, self.ci_median_lower),
        ]
        return [f"r={self.r:.6g} {name}: empirical {emp:.6g} > bound {bound:.6g} + ci {ci:.3g}"
                for name, emp, bound, ci in checks if emp > bound + ci]


@dataclass
class TailReport:
    """Empirical tails, bound curves and the anchors they were evaluated at"""
    t: float
    rho: float
    replicates: int
    c_d: float
    anchors: Dict[str, float]
    rows: List[TailRow] = field(default_factory=list)

    @property
    def r_grid(self) -> List[float]:
        return [row.r for row in self.rows]

    def violations(self) -> List[str]:
        return [message for row in self.rows for message in row.violations()]

    @property
    def dominated(self) -> bool:
        return not self.violations()


def tail_rows(counts: np.ndarray, expectation: float, variance: float, median: float,
              r_grid: List[float], k: int, c: float) -> List[TailRow]:
    """Empirical frequencies (>= for mean displays, > and < for median displays) and bounds"""
    counts = np.asarray(counts, dtype=float)
    R = counts.size
    curves = tail_curves(expectation, variance, median, r_grid, k, c)
    rows = []
    for index, r in enumerate(r_grid):
        emp_upper = float(np.mean(counts >= expectation + r))
        emp_lower = float(np.mean(counts <= expectation - r))
        emp_median_upper = float(np.mean(counts > median + r))
        emp_median_lower = float(np.mean(counts < median - r))
        rows.append(TailRow(
            r=float(r),
            emp_upper=emp_upper,
            emp_lower=emp_lower,
            ci_upper=binomial_half_width(emp_upper, R),
            ci_lower=binomial_half_width(emp_lower, R),
            emp_median_upper=emp_median_upper,
            emp_median_lower=emp_median_lower,
            ci_median_upper=binomial_half_width(emp_median_upper, R),
            ci_median_lower=binomial_half_width(emp_median_lower, R),
            mean_upper=curves[TailKind.MEAN_UPPER].samples[index][1],
            mean_lower=curves[TailKind.MEAN_LOWER].samples[index][1],
            median_upper=curves[TailKind.MEDIAN_UPPER].samples[index][1],
            median_lower=curves[TailKind.MEDIAN_LOWER].samples[index][1],
        ))
    return rows


def run_tails(cfg: ExperimentConfig, threads: Optional[int] = None,
              output_dir: Optional[Path] = None) -> TailReport:
    """
    Simulate R replicates of N at a single t and compare with the tail bounds

    Raises:
        DominationError: after writing tails.csv, if any row violates a bound
    """
    output_dir = Path(output_dir or cfg.output_dir)
    t = cfg.t_grid[0]
    if len(cfg.t_grid) > 1:
        log_warning(f"tails uses a single intensity; taking t={t:g} from t_grid")
    if cfg.replicates < MIN_TAIL_REPLICATES:
        log_warning(f"{cfg.replicates} replicates (< {MIN_TAIL_REPLICATES}): CI half-widths are wide")

    rho = cfg.rho(t)
    connection = cfg.connection(t)
    window = cfg.window(t)
    H = cfg.template
    c = c_d_subgraph(H, cfg.d, connection.theta)

    log_info(f"Simulating {cfg.replicates} replicates of {H.name} counts (t={t:g}, rho={rho:g})")
    counts = run_replicates(cfg.density, window, t, connection, H, cfg.master_seed,
                            cfg.replicates, threads=threads)

    # anchors of the simulated process: the density restricted to the window
    moment_density = cfg.density if cfg.covers_support(window) else cfg.density.restricted(window)
    settings = cfg.tails
    expectation = expectation_numeric(moment_density, H, connection, t, rho,
                                      settings['n_samples'], seed=cfg.master_seed)
    variance = variance_numeric(moment_density, H, connection, t, rho, settings['n_samples'],
                                inner_samples=settings['inner_samples'], seed=cfg.master_seed)
    median = median_smallest(counts)
    anchors = {
        "expectation": expectation.expectation,
        "expectation_se": expectation.std_error("expectation"),
        "variance": variance.variance,
        "variance_se": variance.std_error("variance"),
        "median": median,
        "empirical_mean": float(counts.mean()),
        "empirical_variance": float(counts.var(ddof=1)) if counts.size > 1 else 0.0,
    }
    log_info(f"Anchors: E={anchors['expectation']:.6g}, V={anchors['variance']:.6g}, M={median:g}")

    r_grid = settings['r_grid'] or tail_r_grid(np.sqrt(anchors['variance']),
                                               settings['r_max_sd'], settings['r_points'])
    report = TailReport(t=t, rho=rho, replicates=int(counts.size), c_d=c, anchors=anchors,
                        rows=tail_rows(counts, anchors['expectation'], anchors['variance'],
                                       median, r_grid, H.k, c))

    write_csv(output_dir / "tails.csv", TAIL_COLUMNS, (row.as_csv_row() for row in report.rows))
    write_csv(output_dir / "anchors.csv", ["quantity", "value"], sorted(anchors.items()))
    write_csv(output_dir / "counts.csv", ["replicate", "count"], enumerate(counts.tolist()))

    violations = report.violations()
    if violations:
        raise DominationError("; ".join(violations))
    log_success(f"Domination holds on all {len(report.rows)} r values")
    return report
