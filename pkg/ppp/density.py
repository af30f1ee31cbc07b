#!/usr/bin/env python3
"""
强度密度模块

提供Poisson点过程强度测度的Lebesgue密度 m:
- 幂律族 m(x) = A (1 + |x|)^(-γ)
- 均匀盒子 m(x) = level * 1{x ∈ box}
- 自定义密度 (用户给出的可调用对象 + 上界)
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Optional

import numpy as np
from scipy import integrate, special

logger = logging.getLogger(__name__)


class FamilyTag(Enum):
    """密度族枚举"""
    POWER_LAW = "power_law"
    UNIFORM_BOX = "uniform_box"
    CUSTOM = "custom"


class InvalidDensityError(ValueError):
    """密度参数无效 (上界非有限、维度错误等)"""


class UnsupportedFamilyError(ValueError):
    """当前操作不支持该密度族"""


def unit_ball_volume(d: int) -> float:
    """d维欧氏单位球体积 κ_d"""
    return math.pi ** (d / 2.0) / special.gamma(d / 2.0 + 1.0)


def unit_sphere_area(d: int) -> float:
    """d维单位球面面积 d·κ_d"""
    return d * unit_ball_volume(d)


@dataclass(frozen=True)
class Density:
    """
    Poisson点过程的强度密度

    Attributes:
        d: 空间维度
        family: 密度族
        sup_bound: 密度的上界 (用于thinning采样)
        params: 族参数 (幂律: A, gamma; 均匀盒子: lo, hi, level)
        fn: 自定义密度的可调用对象, 接受 (..., d) 数组返回 (...) 数组
        support: 自定义密度支撑所在的窗口 (可选, 数值积分使用)
    """
    d: int
    family: FamilyTag
    sup_bound: float
    params: Dict[str, Any] = field(default_factory=dict)
    fn: Optional[Callable[[np.ndarray], np.ndarray]] = None
    support: Optional[Any] = None

    def __post_init__(self):
        if not isinstance(self.d, (int, np.integer)) or self.d < 1:
            raise InvalidDensityError(f"维度必须为正整数: {self.d}")
        if math.isnan(self.sup_bound) or self.sup_bound <= 0:
            raise InvalidDensityError(f"密度上界必须为正: {self.sup_bound}")
        if self.family == FamilyTag.CUSTOM and self.fn is None:
            raise InvalidDensityError("自定义密度缺少可调用对象")

    @classmethod
    def power_law(cls, A: float, gamma: float, d: int) -> "Density":
        """幂律密度 A (1 + |x|)^(-γ), 上界为 A (在原点取到)"""
        if not A > 0 or not math.isfinite(A):
            raise InvalidDensityError(f"幂律振幅必须为正且有限: {A}")
        if not gamma > 0:
            raise InvalidDensityError(f"幂律指数必须为正: {gamma}")
        return cls(d=d, family=FamilyTag.POWER_LAW, sup_bound=float(A),
                   params={"A": float(A), "gamma": float(gamma)})

    @classmethod
    def uniform_box(cls, lo, hi, level: float = 1.0) -> "Density":
        """盒子 [lo, hi] 上取常数 level 的密度"""
        lo = np.asarray(lo, dtype=float).reshape(-1)
        hi = np.asarray(hi, dtype=float).reshape(-1)
        if lo.shape != hi.shape:
            raise InvalidDensityError(f"盒子端点维度不一致: {lo.shape} vs {hi.shape}")
        if np.any(hi < lo):
            raise InvalidDensityError(f"盒子端点顺序错误: lo={lo}, hi={hi}")
        if not level > 0:
            raise InvalidDensityError(f"密度水平必须为正: {level}")
        return cls(d=int(lo.size), family=FamilyTag.UNIFORM_BOX, sup_bound=float(level),
                   params={"lo": tuple(lo.tolist()), "hi": tuple(hi.tolist()),
                           "level": float(level)})

    @classmethod
    def custom(cls, d: int, fn: Callable[[np.ndarray], np.ndarray], sup_bound: float,
               support=None, name: str = "custom") -> "Density":
        """
        自定义密度

        Args:
            d: 维度
            fn: 向量化的密度函数, 输入 (..., d) 输出 (...)
            sup_bound: 密度的上界; 非有限值会在采样时被拒绝
            support: 支撑窗口 (Window), 数值矩估计需要
            name: 描述名称
        """
        return cls(d=d, family=FamilyTag.CUSTOM, sup_bound=float(sup_bound),
                   params={"name": name}, fn=fn, support=support)

    def restricted(self, window) -> "Density":
        """返回限制在窗口上的密度 m·1_W, 其本身也是一个合法强度"""
        if window.d != self.d:
            raise InvalidDensityError(f"窗口维度 {window.d} 与密度维度 {self.d} 不一致")
        return Density.custom(self.d, WindowRestriction(self, window), self.sup_bound,
                              support=window, name=f"{self.family.value}|{window.kind.value}")

    def evaluate(self, x) -> np.ndarray:
        """在点 (..., d) 处计算密度值"""
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.d:
            raise InvalidDensityError(f"点维度 {x.shape[-1]} 与密度维度 {self.d} 不一致")

        if self.family == FamilyTag.POWER_LAW:
            r = np.linalg.norm(x, axis=-1)
            return self.params["A"] * (1.0 + r) ** (-self.params["gamma"])

        if self.family == FamilyTag.UNIFORM_BOX:
            lo = np.asarray(self.params["lo"])
            hi = np.asarray(self.params["hi"])
            inside = np.all((x >= lo) & (x <= hi), axis=-1)
            return np.where(inside, self.params["level"], 0.0)

        return np.asarray(self.fn(x), dtype=float)

    __call__ = evaluate

    def integral_power(self, k: int) -> float:
        """
        计算 ∫ m(x)^k dx

        幂律族使用Beta函数闭式: A^k · d·κ_d · B(d, kγ - d), 要求 kγ > d
        """
        if self.family == FamilyTag.POWER_LAW:
            A, gamma = self.params["A"], self.params["gamma"]
            if k * gamma <= self.d:
                return math.inf
            return (A ** k) * unit_sphere_area(self.d) * special.beta(self.d, k * gamma - self.d)

        if self.family == FamilyTag.UNIFORM_BOX:
            return (self.params["level"] ** k) * self.box_volume()

        raise UnsupportedFamilyError(f"自定义密度没有闭式积分: {self.params.get('name')}")

    def tail_integral_power(self, k: int, s: float) -> float:
        """
        计算 ∫_{|x| > s} m(x)^k dx

        幂律族: 代换 w = r/(1+r) 后为正则化不完全Beta函数
        """
        s = max(float(s), 0.0)
        if self.family == FamilyTag.POWER_LAW:
            A, gamma = self.params["A"], self.params["gamma"]
            a = k * gamma
            if a <= self.d:
                return math.inf
            full = (A ** k) * unit_sphere_area(self.d) * special.beta(self.d, a - self.d)
            return full * special.betainc(a - self.d, self.d, 1.0 / (1.0 + s))

        if self.family == FamilyTag.UNIFORM_BOX:
            # 盒子完全落在半径 s 的球内时尾部为零, 否则用整块作为上界
            if s >= self.box_corner_norm():
                return 0.0
            return (self.params["level"] ** k) * self.box_volume()

        raise UnsupportedFamilyError(f"自定义密度没有闭式尾积分: {self.params.get('name')}")

    def mass(self, window, mc_samples: int = 400_000, seed: int = 0) -> float:
        """μ(W) = ∫_W m"""
        return self.window_integral_power(1, window, mc_samples, seed)

    def window_integral_power(self, k: int, window, mc_samples: int = 400_000,
                              seed: int = 0) -> float:
        """
        ∫_W m(x)^k dx

        幂律族在原点球上用一维径向求积; 均匀盒子在盒子窗口上取交集体积;
        其余情形用固定种子的蒙特卡罗估计
        """
        if window.d != self.d:
            raise InvalidDensityError(f"窗口维度 {window.d} 与密度维度 {self.d} 不一致")

        at_origin = window.kind.value == "ball" and not np.any(window.center)
        if self.family == FamilyTag.POWER_LAW and at_origin:
            A, gamma = self.params["A"], self.params["gamma"]
            radial, _ = integrate.quad(lambda r: r ** (self.d - 1) * (1.0 + r) ** (-k * gamma),
                                       0.0, window.radius, limit=200)
            return (A ** k) * unit_sphere_area(self.d) * radial

        if self.family == FamilyTag.UNIFORM_BOX and window.kind.value == "box":
            lo = np.maximum(np.asarray(self.params["lo"]), np.asarray(window.lo))
            hi = np.minimum(np.asarray(self.params["hi"]), np.asarray(window.hi))
            return (self.params["level"] ** k) * float(np.prod(np.clip(hi - lo, 0.0, None)))

        if window.volume <= 0:
            return 0.0
        logger.debug(f"∫_W m^{k} 使用蒙特卡罗估计 ({mc_samples} 个样本)")
        rng = np.random.default_rng(seed)
        values = self.evaluate(window.sample_uniform(rng, mc_samples)) ** k
        return window.volume * float(np.mean(values))

    def box_volume(self) -> float:
        if self.family != FamilyTag.UNIFORM_BOX:
            raise UnsupportedFamilyError("只有均匀盒子密度有盒子体积")
        return float(np.prod(np.asarray(self.params["hi"]) - np.asarray(self.params["lo"])))

    def box_corner_norm(self) -> float:
        """盒子中离原点最远的角点的范数"""
        lo = np.abs(np.asarray(self.params["lo"]))
        hi = np.abs(np.asarray(self.params["hi"]))
        return float(np.linalg.norm(np.maximum(lo, hi)))

    def describe(self) -> Dict[str, Any]:
        """可序列化的描述 (写入JSON旁注文件)"""
        info = {"family": self.family.value, "d": int(self.d), "sup_bound": self.sup_bound}
        info.update({k: v for k, v in self.params.items()})
        return info


class WindowRestriction:
    """m·1_W 的可调用对象 (模块级类, 以便在进程池间pickle)"""

    def __init__(self, base: Density, window):
        self.base = base
        self.window = window

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return np.where(self.window.contains(x), self.base.evaluate(x), 0.0)
