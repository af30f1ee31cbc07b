#!/usr/bin/env python3
"""
经验中位数与样本矩
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence

import numpy as np
from scipy import stats

from .estimates import MomentEstimates, MomentSource

logger = logging.getLogger(__name__)

GAP_SLACK = 0.1
MIN_GAP_SAMPLES = 1000


def median_smallest(samples: Sequence[float]) -> float:
    """最小中位数的经验估计: 排序后第 ⌈n/2⌉ 个 (从1计数) 次序统计量"""
    values = np.sort(np.asarray(samples, dtype=float))
    if values.size == 0:
        raise ValueError("样本为空, 无法计算中位数")
    return float(values[math.ceil(values.size / 2) - 1])


@dataclass(frozen=True)
class GapCheck:
    """|中位数 − 均值| 与 √(2·方差) 的比较"""
    gap: float
    bound: float
    holds: bool


def mean_median_gap(samples: Sequence[float], slack: float = GAP_SLACK) -> GapCheck:
    """gap = |𝕄 − 𝔼|, bound = √(2𝕍); holds = gap ≤ bound·(1 + slack)"""
    values = np.asarray(samples, dtype=float)
    if values.size < 2:
        raise ValueError(f"至少需要2个样本: {values.size}")
    if values.size < MIN_GAP_SAMPLES:
        logger.warning(f"样本数 {values.size} 少于 {MIN_GAP_SAMPLES}, 抽样噪声可能较大")
    gap = abs(median_smallest(values) - float(values.mean()))
    bound = math.sqrt(2.0 * float(values.var(ddof=1)))
    return GapCheck(gap=gap, bound=bound, holds=gap <= bound * (1.0 + slack))


def monte_carlo_moments(samples: Sequence[float],
                        params: Optional[Dict[str, Any]] = None) -> MomentEstimates:
    """
    模拟样本的均值、方差、最小中位数及其标准误

    均值: σ/√R; 方差: √((m4 − σ⁴)/R); 中位数: 二项次序统计量95%区间半宽/1.96
    """
    values = np.asarray(samples, dtype=float)
    R = values.size
    if R < 2:
        raise ValueError(f"至少需要2个样本: {R}")
    mean = float(values.mean())
    variance = float(values.var(ddof=1))
    m4 = float(np.mean((values - mean) ** 4))
    median = median_smallest(values)

    ordered = np.sort(values)
    lo_index = int(stats.binom.ppf(0.025, R, 0.5))
    hi_index = min(R - 1, int(stats.binom.ppf(0.975, R, 0.5)))
    median_se = float(ordered[hi_index] - ordered[lo_index]) / (2.0 * 1.96)

    return MomentEstimates(
        source=MomentSource.MONTE_CARLO,
        expectation=mean,
        variance=variance,
        median=median,
        std_errors={
            "expectation": math.sqrt(variance / R),
            "variance": math.sqrt(max(m4 - variance ** 2, 0.0) / R),
            "median": median_se,
        },
        params=dict(params or {}, replicates=R),
    )
