#!/usr/bin/env python3
"""
bounds包 - 显式常数、尾部界与最优性诊断
"""

from .constants import KernelBounds, c_d_general, c_d_subgraph, ceil_tolerant
from .tails import (TailCurve, TailKind, log_upper_tail_mean, lower_tail_mean,
                    mean_upper_curve, median_tails, slln_deviation_bound, subgraph_alpha,
                    tail_curves, upper_tail_mean)
from .optimality import decay_exponent_fit, poisson_ball_mean, poisson_tail_lower_bound


__all__ = [
    'KernelBounds',
    'c_d_general',
    'c_d_subgraph',
    'ceil_tolerant',
    'TailCurve',
    'TailKind',
    'upper_tail_mean',
    'log_upper_tail_mean',
    'lower_tail_mean',
    'median_tails',
    'tail_curves',
    'mean_upper_curve',
    'subgraph_alpha',
    'slln_deviation_bound',
    'poisson_tail_lower_bound',
    'poisson_ball_mean',
    'decay_exponent_fit',
]
