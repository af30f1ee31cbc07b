#!/usr/bin/env python3
"""
最优性诊断

- poisson_tail_lower_bound: 由 Poisson 球计数给出 P(F ≥ M + r) 的可证下界
- decay_exponent_fit: 拟合尾部界 exp(−I(r)) 中 I(r) ~ r^a 的指数 a
"""

import logging
import math

import numpy as np
from scipy import stats

from ppp.density import Density
from ppp.window import Window

from .tails import TailCurve

logger = logging.getLogger(__name__)

MIN_FIT_SAMPLES = 10
MIN_FIT_DECADES = 3.0


def poisson_tail_lower_bound(q: float, M: float, r: float, m_F: float, k: int) -> float:
    """
    P(Z ≥ z₀), Z ~ Poisson(q), z₀ = k − 1 + ⌈((M + r)/m_F)^{1/k}⌉

    直径不超过 ρ_F 的球内有 Z 个点时 F ≥ m_F·k!·C(Z,k) ≥ m_F (Z−k+1)^k
    """
    if not q > 0:
        raise ValueError(f"Poisson均值必须为正: {q}")
    if not m_F > 0:
        raise ValueError(f"m_F 必须为正: {m_F}")
    z0 = k - 1 + math.ceil((max(M + r, 0.0) / m_F) ** (1.0 / k))
    if z0 <= 0:
        return 1.0
    return float(min(1.0, stats.poisson.sf(z0 - 1, q)))


def poisson_ball_mean(density: Density, center, rho_F: float, t: float) -> float:
    """q = t·μ(B(center, ρ_F/2))"""
    return t * density.mass(Window.ball(center, rho_F / 2.0))


def decay_exponent_fit(curve: TailCurve) -> float:
    """
    在 r 的最高一个数量级上, 对 log(−log bound) 关于 log r 做最小二乘斜率

    Raises:
        ValueError: 界 < 1 的样本少于10个或跨度不足3个数量级
    """
    r = curve.r_values
    logs = np.asarray(curve.log_bounds if curve.log_bounds else np.log(curve.bounds), dtype=float)
    usable = (r > 0) & (logs < 0) & np.isfinite(logs)
    r, logs = r[usable], logs[usable]
    if r.size < MIN_FIT_SAMPLES:
        raise ValueError(f"可用样本不足: {r.size} < {MIN_FIT_SAMPLES}")
    span = math.log10(r.max() / r.min())
    if span < MIN_FIT_DECADES:
        raise ValueError(f"r 的跨度不足: {span:.2f} 个数量级 < {MIN_FIT_DECADES}")

    top = r >= r.max() / 10.0
    if int(top.sum()) < 2:
        raise ValueError("最高数量级内的样本不足以拟合斜率")
    slope, _ = np.polyfit(np.log(r[top]), np.log(-logs[top]), 1)
    logger.debug(f"衰减指数拟合: {slope:.6f} ({int(top.sum())} 个点)")
    return float(slope)
