#!/usr/bin/env python3
"""
点集模块

PointSet 是一次Poisson过程实现: 有限的、两两不同的点, 以及生成它的种子与窗口。
支持CSV读写, 参数写入同名的JSON旁注文件。
"""

import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from .window import Window

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PointSet:
    """
    Poisson点过程的一个实现

    Attributes:
        d: 维度
        points: (n, d) 只读坐标数组
        seed: 生成该实现的种子
        window: 采样窗口
        t: 强度参数
        meta: 额外的参数描述 (密度等)
    """
    d: int
    points: np.ndarray
    seed: Optional[int] = None
    window: Optional[Window] = None
    t: Optional[float] = None
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        pts = np.array(self.points, dtype=float, copy=True).reshape(-1, self.d)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return int(self.points.shape[0])

    def __iter__(self):
        return iter(self.points)

    def to_csv(self, path) -> Path:
        """写出CSV (列 x1..xd, 17位有效数字), 并写出JSON旁注"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow([f"x{i + 1}" for i in range(self.d)])
            for row in self.points:
                writer.writerow([format(float(v), ".17g") for v in row])

        sidecar = {
            "d": int(self.d),
            "count": len(self),
            "seed": self.seed,
            "t": self.t,
            "window": self.window.describe() if self.window is not None else None,
        }
        sidecar.update(self.meta)
        with open(path.with_suffix(".json"), "w", encoding="utf-8") as f:
            json.dump(sidecar, f, indent=2, ensure_ascii=False)

        logger.debug(f"点集已写出: {path} ({len(self)} 个点)")
        return path

    @classmethod
    def from_csv(cls, path) -> "PointSet":
        """从CSV读回点集; 旁注文件存在时恢复种子、窗口与强度"""
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"点集文件不存在: {path}")

        with open(path, newline="", encoding="utf-8") as f:
            reader = csv.reader(f)
            header = next(reader)
            rows = [[float(v) for v in row] for row in reader if row]
        d = len(header)
        points = np.asarray(rows, dtype=float).reshape(-1, d)

        seed, window, t, meta = None, None, None, {}
        sidecar = path.with_suffix(".json")
        if sidecar.exists():
            with open(sidecar, encoding="utf-8") as f:
                info = json.load(f)
            seed = info.pop("seed", None)
            t = info.pop("t", None)
            window_info = info.pop("window", None)
            window = Window.from_description(window_info) if window_info else None
            info.pop("d", None)
            info.pop("count", None)
            meta = info

        return cls(d=d, points=points, seed=seed, window=window, t=t, meta=meta)
