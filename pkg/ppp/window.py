#!/usr/bin/env python3
"""
采样窗口模块

窗口是有界的Borel集合 (盒子或欧氏球), 点过程只在窗口内采样
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Tuple

import numpy as np

from .density import unit_ball_volume


class WindowKind(Enum):
    """窗口类型"""
    BOX = "box"
    BALL = "ball"


@dataclass(frozen=True)
class Window:
    """
    有界采样窗口

    Attributes:
        kind: 盒子或球
        lo, hi: 盒子的两个角点
        center, radius: 球心与半径
    """
    kind: WindowKind
    lo: Optional[Tuple[float, ...]] = None
    hi: Optional[Tuple[float, ...]] = None
    center: Optional[Tuple[float, ...]] = None
    radius: float = 0.0

    @classmethod
    def box(cls, lo, hi) -> "Window":
        lo = tuple(float(v) for v in np.asarray(lo, dtype=float).reshape(-1))
        hi = tuple(float(v) for v in np.asarray(hi, dtype=float).reshape(-1))
        if len(lo) != len(hi) or len(lo) == 0:
            raise ValueError(f"盒子端点维度不一致: {lo} vs {hi}")
        if any(h < l for l, h in zip(lo, hi)):
            raise ValueError(f"盒子端点顺序错误: lo={lo}, hi={hi}")
        return cls(kind=WindowKind.BOX, lo=lo, hi=hi)

    @classmethod
    def ball(cls, center, radius: float) -> "Window":
        center = tuple(float(v) for v in np.asarray(center, dtype=float).reshape(-1))
        if len(center) == 0:
            raise ValueError("球心不能为空")
        if radius < 0 or not np.isfinite(radius):
            raise ValueError(f"球半径必须为非负有限值: {radius}")
        return cls(kind=WindowKind.BALL, center=center, radius=float(radius))

    @property
    def d(self) -> int:
        return len(self.lo) if self.kind == WindowKind.BOX else len(self.center)

    @property
    def volume(self) -> float:
        if self.kind == WindowKind.BOX:
            return float(np.prod(np.subtract(self.hi, self.lo)))
        return unit_ball_volume(self.d) * self.radius ** self.d

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        if self.kind == WindowKind.BOX:
            return np.asarray(self.lo), np.asarray(self.hi)
        c = np.asarray(self.center)
        return c - self.radius, c + self.radius

    def contains(self, x) -> np.ndarray:
        """判断点 (..., d) 是否在窗口内 (闭集)"""
        x = np.asarray(x, dtype=float)
        if self.kind == WindowKind.BOX:
            return np.all((x >= np.asarray(self.lo)) & (x <= np.asarray(self.hi)), axis=-1)
        return np.linalg.norm(x - np.asarray(self.center), axis=-1) <= self.radius

    def sample_uniform(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """在窗口内均匀抽取 n 个点, 返回 (n, d) 数组"""
        d = self.d
        if self.kind == WindowKind.BOX:
            lo, hi = np.asarray(self.lo), np.asarray(self.hi)
            return lo + (hi - lo) * rng.random((n, d))
        directions = uniform_directions(rng, n, d)
        radii = self.radius * rng.random(n) ** (1.0 / d)
        return np.asarray(self.center) + directions * radii[:, None]

    def describe(self) -> Dict[str, Any]:
        if self.kind == WindowKind.BOX:
            return {"kind": "box", "lo": list(self.lo), "hi": list(self.hi)}
        return {"kind": "ball", "center": list(self.center), "radius": self.radius}

    @classmethod
    def from_description(cls, info: Dict[str, Any]) -> "Window":
        if info["kind"] == "box":
            return cls.box(info["lo"], info["hi"])
        return cls.ball(info["center"], info["radius"])


def uniform_directions(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    """单位球面上的均匀方向 (高斯向量归一化)"""
    if d == 1:
        return rng.choice(np.array([-1.0, 1.0]), size=n)[:, None]
    g = rng.standard_normal((n, d))
    norms = np.linalg.norm(g, axis=1)
    # 范数为零的概率为零, 出现时重新抽取
    while np.any(norms == 0):
        bad = norms == 0
        g[bad] = rng.standard_normal((int(bad.sum()), d))
        norms = np.linalg.norm(g, axis=1)
    return g / norms[:, None]


def uniform_in_ball(rng: np.random.Generator, shape: Tuple[int, ...], d: int,
                    radius: float) -> np.ndarray:
    """在 B(0, radius) 中均匀抽样, 返回 shape + (d,) 数组"""
    count = int(np.prod(shape)) if shape else 1
    directions = uniform_directions(rng, count, d)
    radii = radius * rng.random(count) ** (1.0 / d)
    return (directions * radii[:, None]).reshape(tuple(shape) + (d,))
