#!/usr/bin/env python3
"""
尾部概率界

围绕期望与最小中位数的上/下尾界, 均在对数空间计算后截断到 [0, 1]。
子图计数的特化取 α = (2k−1)/k = 2 − 1/k。
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Tuple

import numpy as np

logger = logging.getLogger(__name__)


class TailKind(Enum):
    """尾部界类型"""
    MEAN_UPPER = "mean_upper"
    MEAN_LOWER = "mean_lower"
    MEDIAN_UPPER = "median_upper"
    MEDIAN_LOWER = "median_lower"


def subgraph_alpha(k: int) -> float:
    return (2 * k - 1) / k


def _check_alpha(alpha: float) -> None:
    if not 0 <= alpha < 2:
        raise ValueError(f"α 必须在 [0, 2) 内: {alpha}")


def _clamp_exp(log_value: float) -> float:
    return math.exp(min(0.0, log_value))


def log_upper_tail_mean(EF: float, r: float, k: int, c: float, alpha: float) -> float:
    """上尾界的对数 (截断前)"""
    _check_alpha(alpha)
    if EF < 0 or r < 0:
        raise ValueError(f"需要 EF ≥ 0 且 r ≥ 0: EF={EF}, r={r}")
    if r == 0:
        return 0.0
    beta = 1.0 - alpha / 2.0
    gap = (EF + r) ** beta - EF ** beta
    return -(gap ** 2) / (2.0 * k ** 2 * c)


def upper_tail_mean(EF: float, r: float, k: int, c: float, alpha: float) -> float:
    """P(F ≥ 𝔼F + r) ≤ exp(−((𝔼F+r)^{1−α/2} − (𝔼F)^{1−α/2})² / (2k²c))"""
    return _clamp_exp(log_upper_tail_mean(EF, r, k, c, alpha))


def log_lower_tail_mean(VF: float, r: float, k: int) -> float:
    if not VF > 0:
        raise ValueError(f"方差必须为正: {VF}")
    if r < 0:
        raise ValueError(f"r 必须非负: {r}")
    return -(r ** 2) / (2.0 * k * VF)


def lower_tail_mean(VF: float, r: float, k: int) -> float:
    """P(F ≤ 𝔼F − r) ≤ exp(−r² / (2k𝕍F))"""
    return _clamp_exp(log_lower_tail_mean(VF, r, k))


def log_median_tails(MF: float, r: float, k: int, c: float,
                     alpha: float) -> Tuple[float, float]:
    """中位数上/下尾界的对数; 下尾在 MF = 0 且 r > 0 时为 −inf"""
    if r <= 0:
        return 0.0, 0.0
    log_two = math.log(2.0)
    upper = log_two - r ** 2 / (4.0 * k ** 2 * c * (r + MF) ** alpha)
    if MF <= 0:
        # F ≥ 0, 故 P(F < −r) = 0
        return upper, -math.inf
    lower = log_two - r ** 2 / (4.0 * k ** 2 * c * MF ** alpha)
    return upper, lower


def median_tails(MF: float, r: float, k: int, c: float, alpha: float) -> Tuple[float, float]:
    """
    最小中位数附近的尾部界

    Returns:
        (upper, lower): P(F > 𝕄F + r) 与 P(F < 𝕄F − r) 的上界
    """
    upper, lower = log_median_tails(MF, r, k, c, alpha)
    return _clamp_exp(upper), (0.0 if lower == -math.inf else _clamp_exp(lower))


@dataclass(frozen=True)
class TailCurve:
    """
    一条尾部界曲线

    Attributes:
        center: 锚点 (期望或中位数)
        kind: 曲线类型
        samples: (r, bound) 序列
        log_bounds: 截断前的对数界 (下溢时用于拟合)
    """
    center: float
    kind: TailKind
    samples: Tuple[Tuple[float, float], ...]
    log_bounds: Tuple[float, ...] = field(default=())

    @property
    def r_values(self) -> np.ndarray:
        return np.asarray([r for r, _ in self.samples], dtype=float)

    @property
    def bounds(self) -> np.ndarray:
        return np.asarray([b for _, b in self.samples], dtype=float)

    def is_valid(self) -> bool:
        """界值在 [0,1] 内且关于 r 不增"""
        values = self.bounds
        order = np.argsort(self.r_values, kind="stable")
        ordered = values[order]
        in_range = bool(np.all((values >= 0.0) & (values <= 1.0)))
        return in_range and bool(np.all(np.diff(ordered) <= 0.0))


def _curve(center: float, kind: TailKind, r_grid: Iterable[float], log_fn) -> TailCurve:
    samples, logs = [], []
    for r in r_grid:
        r = float(r)
        log_value = log_fn(r)
        logs.append(log_value)
        bound = 0.0 if log_value == -math.inf else _clamp_exp(log_value)
        samples.append((r, bound))
    return TailCurve(center=center, kind=kind, samples=tuple(samples), log_bounds=tuple(logs))


def tail_curves(EF: float, VF: float, MF: float, r_grid: Iterable[float], k: int,
                c: float) -> Dict[TailKind, TailCurve]:
    """子图计数的四条尾部界曲线 (α = 2 − 1/k)"""
    r_grid = list(r_grid)
    alpha = subgraph_alpha(k)
    return {
        TailKind.MEAN_UPPER: _curve(EF, TailKind.MEAN_UPPER, r_grid,
                                    lambda r: log_upper_tail_mean(EF, r, k, c, alpha)),
        TailKind.MEAN_LOWER: _curve(EF, TailKind.MEAN_LOWER, r_grid,
                                    lambda r: log_lower_tail_mean(VF, r, k)),
        TailKind.MEDIAN_UPPER: _curve(MF, TailKind.MEDIAN_UPPER, r_grid,
                                      lambda r: log_median_tails(MF, r, k, c, alpha)[0]),
        TailKind.MEDIAN_LOWER: _curve(MF, TailKind.MEDIAN_LOWER, r_grid,
                                      lambda r: log_median_tails(MF, r, k, c, alpha)[1]),
    }


def mean_upper_curve(EF: float, r_grid: Iterable[float], k: int, c: float) -> TailCurve:
    alpha = subgraph_alpha(k)
    return _curve(EF, TailKind.MEAN_UPPER, r_grid,
                  lambda r: log_upper_tail_mean(EF, r, k, c, alpha))


def slln_deviation_bound(EN: float, VN: float, t: float, rho: float, d: int, k: int,
                         c: float, eps: float) -> float:
    """
    P(|N/s − 𝔼N/s| ≥ ε) 的上界, s = t^k ρ^{d(k−1)}

    由期望附近的上尾界与下尾界在 r = ε·s 处相加得到
    """
    if not eps > 0:
        raise ValueError(f"偏差阈值必须为正: {eps}")
    scale = t ** k * rho ** (d * (k - 1))
    r = eps * scale
    p_upper = upper_tail_mean(EN, r, k, c, subgraph_alpha(k))
    p_lower = lower_tail_mean(VN, r, k)
    return min(1.0, p_upper + p_lower)
