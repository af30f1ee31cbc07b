#!/usr/bin/env python3
"""
Poisson点过程采样器

在窗口内以 thinning 方式采样强度为 t·m 的Poisson过程:
先以 t·sup(m)·|W| 为均值抽取候选点数, 再以概率 m(x)/sup(m) 保留每个候选点。
"""

import logging
import math

import numpy as np

from .density import Density, InvalidDensityError
from .point_set import PointSet
from .window import Window

logger = logging.getLogger(__name__)


def sample(density: Density, window: Window, t: float, seed: int) -> PointSet:
    """
    采样一个Poisson过程实现

    Args:
        density: 强度密度
        window: 采样窗口
        t: 强度参数 (> 0)
        seed: 随机种子; 相同输入给出逐位相同的输出

    Returns:
        PointSet: 窗口内两两不同的点
    """
    if window.d != density.d:
        raise InvalidDensityError(f"窗口维度 {window.d} 与密度维度 {density.d} 不一致")
    if not t > 0 or not math.isfinite(t):
        raise ValueError(f"强度参数必须为正且有限: {t}")
    if not math.isfinite(density.sup_bound):
        raise InvalidDensityError(f"密度上界非有限: {density.sup_bound}")

    meta = {"density": density.describe()}
    if window.volume <= 0:
        return PointSet(d=density.d, points=np.empty((0, density.d)), seed=seed,
                        window=window, t=t, meta=meta)

    rng = np.random.default_rng(seed)
    n_candidates = int(rng.poisson(t * density.sup_bound * window.volume))
    candidates = window.sample_uniform(rng, n_candidates)
    candidates = _redraw_duplicates(candidates, window, rng)

    keep = rng.random(n_candidates) * density.sup_bound < density.evaluate(candidates)
    points = candidates[keep]

    logger.debug(f"采样完成: 候选 {n_candidates} 个, 保留 {points.shape[0]} 个 (seed={seed})")
    return PointSet(d=density.d, points=points, seed=seed, window=window, t=t, meta=meta)


def _redraw_duplicates(candidates: np.ndarray, window: Window,
                       rng: np.random.Generator) -> np.ndarray:
    """重复坐标的概率为零; 出现时对重复的行重新抽取"""
    while candidates.shape[0] > 1:
        _, first = np.unique(candidates, axis=0, return_index=True)
        if first.size == candidates.shape[0]:
            break
        duplicate = np.ones(candidates.shape[0], dtype=bool)
        duplicate[first] = False
        candidates[duplicate] = window.sample_uniform(rng, int(duplicate.sum()))
    return candidates
