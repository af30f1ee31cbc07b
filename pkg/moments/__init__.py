#!/usr/bin/env python3
"""
moments包 - 子图计数的期望、方差、渐近常数与经验中位数
"""

from .estimates import AsymptoticConstants, MomentEstimates, MomentSource, VarianceTerm
from .integrals import AnchorSampler, MCResult, run_batches
from .expectation import asymptotic_a, asymptotic_a_estimate, expectation_numeric
from .variance import (asymptotic_A_n, asymptotic_constants, variance_coefficient,
                       variance_numeric, variance_terms)
from .median import GapCheck, mean_median_gap, median_smallest, monte_carlo_moments


__all__ = [
    'MomentEstimates',
    'MomentSource',
    'AsymptoticConstants',
    'VarianceTerm',
    'AnchorSampler',
    'MCResult',
    'run_batches',
    'expectation_numeric',
    'asymptotic_a',
    'asymptotic_a_estimate',
    'variance_numeric',
    'variance_terms',
    'variance_coefficient',
    'asymptotic_A_n',
    'asymptotic_constants',
    'median_smallest',
    'mean_median_gap',
    'monte_carlo_moments',
    'GapCheck',
]
