#!/usr/bin/env python3
"""
集中不等式中的显式常数

核函数的局部性参数 (ρ_F, Θ_F, m_F, M_F) 与由它们给出的常数 c_d,
c_d 同时控制 Σ_x F(x,ξ)^2 ≤ c_d F(ξ)^{(2k-1)/k} 以及全部尾部界。
"""

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from motif.template import MotifTemplate

# 视为整数的相对容差, 防止 θ√d 这类乘积的舍入误差跨过整数
_CEIL_TOLERANCE = 1e-9


def ceil_tolerant(x: float) -> int:
    """上取整; 与整数的相对差小于容差时取该整数"""
    nearest = round(x)
    if abs(x - nearest) <= _CEIL_TOLERANCE * max(1.0, abs(x)):
        return int(nearest)
    return int(math.ceil(x))


@dataclass(frozen=True)
class KernelBounds:
    """
    核函数的局部性参数

    Attributes:
        k: U统计量的阶
        rho_F: 直径不超过 rho_F 时核为正
        Theta_F: 直径超过 Theta_F·rho_F 时核为零
        m_F: 核在支撑上的下界
        M_F: 核的上界
    """
    k: int
    rho_F: float
    Theta_F: float
    m_F: float
    M_F: float

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"阶数必须为正: {self.k}")
        if not self.rho_F > 0:
            raise ValueError(f"rho_F 必须为正: {self.rho_F}")
        if not self.Theta_F >= 1:
            raise ValueError(f"Theta_F 必须 ≥ 1: {self.Theta_F}")
        if not (self.M_F >= self.m_F > 0):
            raise ValueError(f"需要 M_F ≥ m_F > 0: m_F={self.m_F}, M_F={self.M_F}")

    @classmethod
    def for_subgraph(cls, H: "MotifTemplate", rho: float, theta: float) -> "KernelBounds":
        """子图计数的核参数: Θ = diam(H)·θ, m = 1/k!, M = a_H/k!"""
        k_factorial = math.factorial(H.k)
        return cls(k=H.k, rho_F=rho, Theta_F=H.diam * theta,
                   m_F=1.0 / k_factorial, M_F=H.a_H / k_factorial)


def c_d_general(kb: KernelBounds, d: int) -> float:
    """c_d = (2⌈Θ_F√d⌉+1)^{2d(k−1)} · M_F² · (k^k/(m_F k!))^{(2k−1)/k}"""
    if d < 1:
        raise ValueError(f"维度必须为正: {d}")
    k = kb.k
    cells = 2 * ceil_tolerant(kb.Theta_F * math.sqrt(d)) + 1
    ratio = (k ** k) / (kb.m_F * math.factorial(k))
    return float(cells ** (2 * d * (k - 1))) * kb.M_F ** 2 * ratio ** ((2 * k - 1) / k)


def c_d_subgraph(H: "MotifTemplate", d: int, theta: float) -> float:
    """c_d = (2⌈diam(H)θ√d⌉+1)^{2d(k−1)} · (a_H/k!)² · k^{2k−1}"""
    if d < 1:
        raise ValueError(f"维度必须为正: {d}")
    k = H.k
    cells = 2 * ceil_tolerant(H.diam * theta * math.sqrt(d)) + 1
    return float(cells ** (2 * d * (k - 1))) * (H.a_H / math.factorial(k)) ** 2 * float(k ** (2 * k - 1))
