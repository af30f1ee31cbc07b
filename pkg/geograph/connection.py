#!/usr/bin/env python3
"""
连接集合模块

连接集合 S 是包含 B(0, ρ) 、包含于 B(0, θρ) 的对称集合;
x 与 y 相连当且仅当 x - y ∈ S (闭集约定)。
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

logger = logging.getLogger(__name__)

# 自定义指示函数的抽查方向数
CHECK_DIRECTIONS = 10_000
CHECK_SEED = 20160101


class ConnectionKind(Enum):
    """连接集合类型"""
    LP_BALL = "lp_ball"
    CUSTOM = "custom"


class ConnectionSetError(ValueError):
    """连接集合不满足对称性或球夹逼条件"""


class DimensionMismatchError(ValueError):
    """点的维度与连接集合维度不一致"""


@dataclass(frozen=True)
class ConnectionSet:
    """
    连接集合

    Attributes:
        d: 维度
        rho: 内切欧氏球半径 ρ
        theta: 夹逼常数 θ ≥ 1, S ⊆ B(0, θρ)
        kind: lp球或自定义
        p: lp球的指数 (可以为 inf)
        radius: lp球在lp范数下的半径
        indicator: 自定义集合的指示函数, 在尺度 indicator_rho 下定义
        indicator_rho: 指示函数对应的 ρ
    """
    d: int
    rho: float
    theta: float
    kind: ConnectionKind
    p: float = 2.0
    radius: float = 0.0
    indicator: Optional[Callable[[np.ndarray], np.ndarray]] = None
    indicator_rho: float = 1.0

    @classmethod
    def lp_ball(cls, p: float, rho: float, d: int) -> "ConnectionSet":
        """
        lp球连接集合, 按包含 B(0, ρ) 的最小lp球校准

        lp半径 = ρ·d^max(0, 1/p - 1/2), θ = d^|1/p - 1/2|
        """
        if not p >= 1:
            raise ConnectionSetError(f"lp指数必须 ≥ 1: {p}")
        if not rho > 0 or not math.isfinite(rho):
            raise ConnectionSetError(f"连接尺度必须为正且有限: {rho}")
        if d < 1:
            raise ConnectionSetError(f"维度必须为正: {d}")
        inv_p = 0.0 if math.isinf(p) else 1.0 / p
        radius = rho * d ** max(0.0, inv_p - 0.5)
        theta = d ** abs(inv_p - 0.5)
        return cls(d=d, rho=float(rho), theta=float(theta), kind=ConnectionKind.LP_BALL,
                   p=float(p), radius=float(radius))

    @classmethod
    def custom(cls, indicator: Callable[[np.ndarray], np.ndarray], rho: float, theta: float,
               d: int, verify: bool = True) -> "ConnectionSet":
        """
        自定义连接集合

        Args:
            indicator: 向量化指示函数, 输入 (..., d) 差向量, 输出布尔数组
            rho, theta: 夹逼参数
            verify: 是否抽查对称性与夹逼条件
        """
        if not rho > 0 or not theta >= 1:
            raise ConnectionSetError(f"需要 ρ > 0 且 θ ≥ 1: rho={rho}, theta={theta}")
        conn = cls(d=d, rho=float(rho), theta=float(theta), kind=ConnectionKind.CUSTOM,
                   indicator=indicator, indicator_rho=float(rho))
        if verify:
            conn.verify()
        return conn

    def contains(self, v) -> np.ndarray:
        """差向量 (..., d) 是否属于 S"""
        v = np.asarray(v, dtype=float)
        if v.shape[-1] != self.d:
            raise DimensionMismatchError(f"向量维度 {v.shape[-1]} 与连接集合维度 {self.d} 不一致")
        if self.kind == ConnectionKind.LP_BALL:
            return np.linalg.norm(v, ord=self.p, axis=-1) <= self.radius
        scaled = v * (self.indicator_rho / self.rho)
        return np.asarray(self.indicator(scaled), dtype=bool)

    def rescaled(self, rho: float) -> "ConnectionSet":
        """同一形状在新尺度 ρ 下的连接集合"""
        if not rho > 0:
            raise ConnectionSetError(f"连接尺度必须为正: {rho}")
        factor = rho / self.rho
        return ConnectionSet(d=self.d, rho=float(rho), theta=self.theta, kind=self.kind,
                             p=self.p, radius=self.radius * factor, indicator=self.indicator,
                             indicator_rho=self.indicator_rho)

    @property
    def reach(self) -> float:
        """欧氏可达半径 θρ"""
        return self.theta * self.rho

    def verify(self) -> None:
        """在确定性方向集合上抽查 B(0,ρ) ⊆ S ⊆ B(0,θρ) 与 S = -S"""
        directions = _check_directions(self.d)
        eps = 1e-9 * self.rho
        inner = self.contains(directions * (self.rho - eps))
        if not np.all(inner):
            raise ConnectionSetError(f"连接集合不包含 B(0, ρ): {int((~inner).sum())} 个方向失败")
        outer = self.contains(directions * (self.reach + eps))
        if np.any(outer):
            raise ConnectionSetError(f"连接集合超出 B(0, θρ): {int(outer.sum())} 个方向失败")

        radii = np.linspace(self.rho, self.reach, 7)
        probes = directions[None, :, :] * radii[:, None, None]
        if not np.array_equal(self.contains(probes), self.contains(-probes)):
            raise ConnectionSetError("连接集合不对称")

    def describe(self) -> dict:
        info = {"kind": self.kind.value, "d": self.d, "rho": self.rho, "theta": self.theta}
        if self.kind == ConnectionKind.LP_BALL:
            info["p"] = self.p
        return info


def _check_directions(d: int) -> np.ndarray:
    if d == 1:
        return np.array([[1.0], [-1.0]])
    if d == 2:
        angles = np.linspace(0.0, 2.0 * np.pi, CHECK_DIRECTIONS, endpoint=False)
        return np.stack([np.cos(angles), np.sin(angles)], axis=1)
    rng = np.random.default_rng(CHECK_SEED)
    g = rng.standard_normal((CHECK_DIRECTIONS, d))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def connects(S: ConnectionSet, x, y) -> bool:
    """x 与 y 是否在 G_S 中相连 (x - y ∈ S)"""
    x = np.asarray(x, dtype=float).reshape(-1)
    y = np.asarray(y, dtype=float).reshape(-1)
    if x.size != S.d or y.size != S.d:
        raise DimensionMismatchError(f"点维度 ({x.size}, {y.size}) 与连接集合维度 {S.d} 不一致")
    return bool(S.contains(x - y))
