#!/usr/bin/env python3
"""
子图计数的期望

𝔼N_t = (t^k ρ^{d(k−1)} / k!) · ∫_{ℝ^d × B(0,Θ)^{k−1}} I_t(x) J(x) dx
以及渐近常数 a = (1/k!)·∫ m^k · ∫_{B(0,Θ)^{k−1}} J;
固定的有界窗口 W 上的过程以 ∫_W m^k 代替 ∫ m^k
"""

import logging
import math
from typing import Optional

from geograph.connection import ConnectionSet
from motif.template import MotifTemplate
from ppp.density import Density
from ppp.integrability import require_integrable
from ppp.window import Window

from .estimates import MomentEstimates, MomentSource
from .integrals import AnchorSampler, ball_copy_integral, expectation_integrand, run_batches

logger = logging.getLogger(__name__)

RECOMMENDED_SAMPLES = 1000


def _check_samples(n_samples: int) -> None:
    if n_samples < RECOMMENDED_SAMPLES:
        logger.warning(f"样本数 {n_samples} 少于 {RECOMMENDED_SAMPLES}, 标准误可能不可靠")


def limit_mass(density: Density, power: int, k: int, window: Optional[Window] = None) -> float:
    """∫ m^power, 给定窗口时为 ∫_W m^power (有界窗口上总是有限)"""
    if window is None:
        require_integrable(density, k)
        return density.integral_power(power)
    return density.window_integral_power(power, window)


def expectation_prefactor(k: int, d: int, t: float, rho: float) -> float:
    return t ** k * rho ** (d * (k - 1)) / math.factorial(k)


def expectation_numeric(density: Density, H: MotifTemplate, S: ConnectionSet, t: float,
                        rho: float, n_samples: int, seed: int = 0) -> MomentEstimates:
    """
    蒙特卡罗估计 𝔼N_t

    Args:
        density: 强度密度 m (过程强度为 t·m)
        H: 模式图
        S: 连接集合 (只使用其形状, 尺度由 rho 给出)
        t: 强度参数
        rho: 连接尺度
        n_samples: 样本数
        seed: 主种子

    Raises:
        IntegrabilityError: ∫ m^k 发散
    """
    require_integrable(density, H.k)
    _check_samples(n_samples)
    sampler = AnchorSampler(density, H.k)
    integrand = expectation_integrand(density, H, S, rho, sampler)
    result = run_batches(integrand, n_samples, seed).scaled(
        expectation_prefactor(H.k, density.d, t, rho))

    logger.info(f"期望估计: {result.mean:.6g} ± {result.std_error:.3g} (t={t}, ρ={rho}, H={H.name})")
    return MomentEstimates(
        source=MomentSource.ANALYTIC_INTEGRAL,
        expectation=result.mean,
        std_errors={"expectation": result.std_error},
        params={"t": t, "rho": rho, "template": H.name, "density": density.family.value,
                "n_samples": n_samples},
    )


def asymptotic_a_estimate(density: Density, H: MotifTemplate, S: ConnectionSet,
                          n_samples: int, seed: int = 0, window: Optional[Window] = None):
    """返回 (a, 标准误); 给定窗口时返回窗口内过程的极限 a_W"""
    mass = limit_mass(density, H.k, H.k, window)
    ball = ball_copy_integral(H, S, density.d, n_samples, seed)
    factor = mass / math.factorial(H.k)
    return factor * ball.mean, factor * ball.std_error


def asymptotic_a(density: Density, H: MotifTemplate, S: ConnectionSet, n_samples: int,
                 seed: int = 0, window: Optional[Window] = None) -> float:
    """a = (1/k!)·∫ m^k dx · ∫_{B(0,Θ)^{k−1}} J dx"""
    value, _ = asymptotic_a_estimate(density, H, S, n_samples, seed, window)
    return value
