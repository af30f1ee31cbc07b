#!/usr/bin/env python3
"""
蒙特卡罗积分工具

期望与方差公式中的积分都具有 "锚点 x_1 ∈ ℝ^d, 其余点在 B(0, Θ) 内" 的结构。
本模块提供:
- 锚点提议分布: 幂律族按 m^q 精确抽样 (径向量 r/(1+r) 服从 Beta(d, qγ−d)),
  其他密度在支撑窗口内均匀抽样
- 按批次派生种子、固定顺序归约的批量估计
- 期望被积函数与方差各阶项的被积函数
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from geograph.connection import ConnectionSet
from motif.brute_force import points_copy_counts
from motif.template import MotifTemplate
from ppp.density import Density, FamilyTag, UnsupportedFamilyError, unit_ball_volume
from ppp.integrability import IntegrabilityError
from ppp.seeds import child_seed
from ppp.window import Window, uniform_directions, uniform_in_ball

logger = logging.getLogger(__name__)

DEFAULT_BATCH_SIZE = 20_000


@dataclass(frozen=True)
class MCResult:
    """蒙特卡罗估计: 均值与标准误"""
    mean: float
    std_error: float
    n: int

    def scaled(self, factor: float) -> "MCResult":
        return MCResult(self.mean * factor, self.std_error * abs(factor), self.n)


def log_density(density: Density, x: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(density.evaluate(x))


class AnchorSampler:
    """
    锚点提议分布

    Args:
        density: 密度
        power: 幂律族按 m^power 抽样; 其他族忽略
        window: 自定义密度的支撑窗口 (缺省使用 density.support)
    """

    def __init__(self, density: Density, power: int, window: Optional[Window] = None):
        self.density = density
        self.power = power
        self.d = density.d

        if density.family == FamilyTag.POWER_LAW:
            shape = power * density.params["gamma"] - self.d
            if shape <= 0:
                raise IntegrabilityError(
                    f"∫ m^{power} 发散 (γ={density.params['gamma']}, d={self.d}): 需要 {power}γ > d")
            self.beta_shape = shape
            self.log_norm = math.log(density.integral_power(power))
            self.window = None
            return

        if density.family == FamilyTag.UNIFORM_BOX:
            window = Window.box(density.params["lo"], density.params["hi"])
        else:
            window = window if window is not None else density.support
            if window is None:
                raise UnsupportedFamilyError("自定义密度的数值积分需要支撑窗口")
        if window.volume <= 0:
            raise UnsupportedFamilyError(f"支撑窗口体积为零: {window.describe()}")
        self.window = window
        self.log_volume = math.log(window.volume)

    def draw(self, rng: np.random.Generator, n: int) -> Tuple[np.ndarray, np.ndarray]:
        """
        抽取 n 个锚点

        Returns:
            (x, log_inv_q): 锚点 (n, d) 与提议密度倒数的对数
        """
        if self.window is not None:
            x = self.window.sample_uniform(rng, n)
            return x, np.full(n, self.log_volume)

        w = rng.beta(self.d, self.beta_shape, size=n)
        w = np.minimum(w, np.nextafter(1.0, 0.0))
        radii = w / (1.0 - w)
        x = uniform_directions(rng, n, self.d) * radii[:, None]
        log_inv_q = self.log_norm - self.power * log_density(self.density, x)
        return x, log_inv_q


def run_batches(sample_fn: Callable[[np.random.Generator, int], np.ndarray], n_samples: int,
                seed: int, batch_size: int = DEFAULT_BATCH_SIZE) -> MCResult:
    """
    分批估计 E[sample_fn]

    第 b 批使用种子 child_seed(seed, b), 结果按批次顺序拼接后归约
    """
    if n_samples < 2:
        raise ValueError(f"样本数至少为2: {n_samples}")
    values = []
    done, batch = 0, 0
    while done < n_samples:
        size = min(batch_size, n_samples - done)
        rng = np.random.default_rng(child_seed(seed, batch))
        values.append(np.asarray(sample_fn(rng, size), dtype=float))
        done += size
        batch += 1
    values = np.concatenate(values)
    mean = float(values.mean())
    std_error = float(values.std(ddof=1) / math.sqrt(values.size))
    return MCResult(mean=mean, std_error=std_error, n=int(values.size))


def unit_shape(S: ConnectionSet) -> ConnectionSet:
    """尺度为 1 的同形连接集合 S/ρ"""
    return S.rescaled(1.0)


def copy_reach(H: MotifTemplate, S: ConnectionSet) -> float:
    """Θ = diam(H)·θ"""
    return H.diam * S.theta


def ball_volume(d: int, radius: float) -> float:
    return unit_ball_volume(d) * radius ** d


def _with_origin(rel: np.ndarray) -> np.ndarray:
    """在相对坐标 (..., m, d) 前补上原点, 得到 (..., m+1, d)"""
    origin = np.zeros(rel.shape[:-2] + (1, rel.shape[-1]))
    return np.concatenate([origin, rel], axis=-2)


def expectation_integrand(density: Density, H: MotifTemplate, S: ConnectionSet, rho: float,
                          sampler: AnchorSampler) -> Callable[[np.random.Generator, int], np.ndarray]:
    """
    ∫_{ℝ^d × B(0,Θ)^{k−1}} I_t(x) J(x) dx 的单样本估计量

    I_t(x) = m(x_1)·Π_{i≥2} m(x_1 + ρ x_i), J 为 G_S(0, x_2, ..., x_k) 中 H 的副本数
    """
    unit = unit_shape(S)
    k, d = H.k, density.d
    theta = copy_reach(H, S)
    log_ball = (k - 1) * math.log(ball_volume(d, theta))

    def sample(rng: np.random.Generator, size: int) -> np.ndarray:
        x1, log_inv_q = sampler.draw(rng, size)
        rel = uniform_in_ball(rng, (size, k - 1), d, theta)
        J = points_copy_counts(_with_origin(rel), unit, H)
        out = np.zeros(size)
        hit = J > 0
        if np.any(hit):
            anchors = x1[hit]
            others = anchors[:, None, :] + rho * rel[hit]
            log_I = log_density(density, anchors) + log_density(density, others).sum(axis=1)
            out[hit] = J[hit] * np.exp(log_inv_q[hit] + log_I + log_ball)
        return out

    return sample


def variance_term_integrand(density: Density, H: MotifTemplate, S: ConnectionSet, rho: float,
                            n: int, inner_samples: int,
                            sampler: AnchorSampler) -> Callable[[np.random.Generator, int], np.ndarray]:
    """
    ∫ I^y(y) (∫_{B(0,Θ)^{k−n}} I^x(x) J(y, x) dx)² dy 的单样本估计量

    内层平方用两个独立内层估计的乘积代替, 保持无偏; n = k 时内层就是 J(y)
    """
    unit = unit_shape(S)
    k, d = H.k, density.d
    theta = copy_reach(H, S)
    vol = ball_volume(d, theta)
    log_outer_ball = (n - 1) * math.log(vol)
    inner_ball = vol ** (k - n)

    def inner_estimate(rng, y1, y_rel):
        size = y1.shape[0]
        x_rel = uniform_in_ball(rng, (size, inner_samples, k - n), d, theta)
        y_part = np.broadcast_to(y_rel[:, None, :, :], (size, inner_samples) + y_rel.shape[1:])
        config = np.concatenate([_with_origin(y_part), x_rel], axis=-2)
        J = points_copy_counts(config, unit, H)
        log_I = log_density(density, y1[:, None, None, :] + rho * x_rel).sum(axis=-1)
        values = np.where(J > 0, J * np.exp(np.where(J > 0, log_I, 0.0)), 0.0)
        return inner_ball * values.mean(axis=1)

    def sample(rng: np.random.Generator, size: int) -> np.ndarray:
        y1, log_inv_q = sampler.draw(rng, size)
        y_rel = uniform_in_ball(rng, (size, n - 1), d, theta)
        log_Iy = log_density(density, y1) + log_density(density, y1[:, None, :] + rho * y_rel).sum(axis=1)
        outer = np.exp(log_inv_q + log_Iy + log_outer_ball)

        if n == k:
            J = points_copy_counts(_with_origin(y_rel), unit, H)
            return outer * J.astype(float) ** 2

        first = inner_estimate(rng, y1, y_rel)
        second = inner_estimate(rng, y1, y_rel)
        return outer * first * second

    return sample


def ball_copy_integral(H: MotifTemplate, S: ConnectionSet, d: int, n_samples: int,
                       seed: int) -> MCResult:
    """∫_{B(0,Θ)^{k−1}} J(0, x_2, ..., x_k) dx"""
    unit = unit_shape(S)
    theta = copy_reach(H, S)
    volume = ball_volume(d, theta) ** (H.k - 1)

    def sample(rng, size):
        rel = uniform_in_ball(rng, (size, H.k - 1), d, theta)
        return volume * points_copy_counts(_with_origin(rel), unit, H)

    return run_batches(sample, n_samples, seed)


def ball_squared_copy_integral(H: MotifTemplate, S: ConnectionSet, d: int, n: int,
                               n_samples: int, inner_samples: int, seed: int) -> MCResult:
    """∫_{B(0,Θ)^{n−1}} (∫_{B(0,Θ)^{k−n}} J(y, x) dx)² dy, 内层平方同样用两个独立估计的乘积"""
    unit = unit_shape(S)
    k = H.k
    theta = copy_reach(H, S)
    vol = ball_volume(d, theta)

    def inner(rng, y_rel):
        size = y_rel.shape[0]
        x_rel = uniform_in_ball(rng, (size, inner_samples, k - n), d, theta)
        y_part = np.broadcast_to(y_rel[:, None, :, :], (size, inner_samples) + y_rel.shape[1:])
        J = points_copy_counts(np.concatenate([_with_origin(y_part), x_rel], axis=-2), unit, H)
        return vol ** (k - n) * J.mean(axis=1)

    def sample(rng, size):
        y_rel = uniform_in_ball(rng, (size, n - 1), d, theta)
        outer = vol ** (n - 1)
        if n == k:
            return outer * points_copy_counts(_with_origin(y_rel), unit, H).astype(float) ** 2
        return outer * inner(rng, y_rel) * inner(rng, y_rel)

    batch = max(1, DEFAULT_BATCH_SIZE // max(1, inner_samples))
    return run_batches(sample, n_samples, seed, batch_size=batch)
