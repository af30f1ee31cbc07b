#!/usr/bin/env python3
"""
可积性与截断

- integrability_check: ∫ m^k < ∞ 是否成立
- ratio_constant: 局部比值常数 c, 满足 |x-y| ≤ R 时 m(x) ≤ c·m(y)
- truncation_radius: 将无限质量过程截断到 B(0, R) 时, 窗口外副本期望数不超过 eps 的半径
"""

import logging
import math
from typing import Optional

import numpy as np
from scipy import optimize

from .density import Density, FamilyTag, UnsupportedFamilyError, unit_ball_volume
from .window import Window

logger = logging.getLogger(__name__)


class NoFiniteRatioError(ValueError):
    """密度在窗口内取零, 不存在有限的比值常数"""


class InvalidToleranceError(ValueError):
    """截断容差必须为正"""


class IntegrabilityError(ValueError):
    """∫ m^k 发散, 子图计数的期望为无穷"""


def integrability_check(density: Density, k: int) -> bool:
    """
    判断 ∫ m^k 是否有限

    幂律族当且仅当 kγ > d; 均匀盒子恒为真; 自定义密度无法判断
    """
    if k < 1:
        raise ValueError(f"阶数必须为正: {k}")
    if density.family == FamilyTag.POWER_LAW:
        return k * density.params["gamma"] > density.d
    if density.family == FamilyTag.UNIFORM_BOX:
        return True
    raise UnsupportedFamilyError("自定义密度不支持可积性判断")


def require_integrable(density: Density, k: int) -> None:
    """可积性门禁: 不可积时抛出 IntegrabilityError, 自定义密度只给出警告"""
    try:
        ok = integrability_check(density, k)
    except UnsupportedFamilyError:
        logger.warning("自定义密度的可积性无法验证, 按调用方保证处理")
        return
    if not ok:
        gamma = density.params.get("gamma")
        raise IntegrabilityError(
            f"∫ m^{k} 发散 (γ={gamma}, d={density.d}, k={k}): 需要 kγ > d")


def ratio_constant(density: Density, R: float, window: Optional[Window] = None) -> float:
    """
    局部比值常数

    Args:
        density: 密度
        R: 距离阈值
        window: 均匀盒子族时限制的窗口; 窗口必须落在盒子内

    Returns:
        c ≥ 1
    """
    if R < 0:
        raise ValueError(f"距离阈值必须非负: {R}")
    if R == 0:
        return 1.0

    if density.family == FamilyTag.POWER_LAW:
        return (1.0 + R) ** density.params["gamma"]

    if density.family == FamilyTag.UNIFORM_BOX:
        if window is None:
            return 1.0
        lo, hi = window.bounding_box()
        box_lo = np.asarray(density.params["lo"])
        box_hi = np.asarray(density.params["hi"])
        if np.all(lo >= box_lo) and np.all(hi <= box_hi):
            return 1.0
        raise NoFiniteRatioError(f"窗口 {window.describe()} 超出密度盒子, 密度在窗口内取零")

    raise UnsupportedFamilyError("自定义密度不支持比值常数")


def _outside_copies_bound(density: Density, k: int, theta_rho: float, t: float, rho: float,
                          j_max: float, s: float) -> float:
    """顶点落在 B(0, s + Θρ) 之外的副本期望数的上界"""
    d = density.d
    theta = theta_rho / rho
    c = ratio_constant(density, theta_rho)
    prefactor = (t ** k) * rho ** (d * (k - 1)) / math.factorial(k)
    prefactor *= (c ** k) * j_max * (unit_ball_volume(d) * theta ** d) ** (k - 1)
    return prefactor * density.tail_integral_power(k, s)


def truncation_radius(density: Density, k: int, theta_rho: float, t: float, rho: float,
                      eps: float, j_max: Optional[float] = None) -> float:
    """
    截断半径

    对锚点位于 B(0, R - Θρ) 之外的副本, 用 I_t(x) ≤ c^k m(x_1)^k 控制期望数,
    求使上界等于 eps 的最小 R (R ≥ Θρ)。

    Args:
        density: 密度
        k: 模式的顶点数
        theta_rho: 副本直径上界 Θρ
        t: 强度参数
        rho: 连接尺度
        eps: 容差; 无穷大时返回 Θρ
        j_max: 单个k元组上的最大副本数, 默认 k!
    """
    if math.isnan(eps) or eps <= 0:
        raise InvalidToleranceError(f"容差必须为正: {eps}")
    require_integrable(density, k)
    if density.family == FamilyTag.CUSTOM:
        raise UnsupportedFamilyError("自定义密度不支持截断半径")
    if math.isinf(eps):
        return theta_rho
    if j_max is None:
        j_max = math.factorial(k)

    def bound(s):
        return _outside_copies_bound(density, k, theta_rho, t, rho, j_max, s)

    if bound(0.0) <= eps:
        return theta_rho

    if density.family == FamilyTag.UNIFORM_BOX:
        return density.box_corner_norm() + theta_rho

    hi = 1.0
    while bound(hi) > eps:
        hi *= 2.0
        if hi > 1e300:
            raise IntegrabilityError(f"尾积分下降过慢, 找不到满足 eps={eps} 的截断半径")
    lo = hi / 2.0 if hi > 1.0 else 0.0
    s = optimize.brentq(lambda x: math.log(bound(x)) - math.log(eps), lo, hi,
                        xtol=1e-12 * hi, rtol=1e-12)
    logger.debug(f"截断半径: R={s + theta_rho:.6g} (eps={eps})")
    return s + theta_rho
