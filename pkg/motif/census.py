#!/usr/bin/env python3
"""
副本统计

CopyCensus 记录副本总数 N 以及每个顶点所在的副本数;
局部计数 F(x, ξ) = per_vertex(x) / k 只在边界处以有理数形式给出。
"""

import csv
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List

import numpy as np

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CopyCensus:
    """
    副本统计结果

    Attributes:
        k: 模式图顶点数
        total: 副本总数
        per_vertex: 长度为顶点数的整数数组, 第 x 项为包含 x 的副本数
    """
    k: int
    total: int
    per_vertex: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.per_vertex, dtype=np.int64).copy()
        counts.setflags(write=False)
        object.__setattr__(self, "per_vertex", counts)
        object.__setattr__(self, "total", int(self.total))

    @property
    def n(self) -> int:
        return int(self.per_vertex.size)

    def is_consistent(self) -> bool:
        """Σ per_vertex = k·total"""
        return int(self.per_vertex.sum()) == self.k * self.total

    def local_count(self, x: int) -> Fraction:
        return Fraction(int(self.per_vertex[x]), self.k)

    def local_counts(self) -> List[Fraction]:
        """全部顶点的 F(x, ξ)"""
        return [Fraction(int(c), self.k) for c in self.per_vertex]

    def local_sum(self) -> Fraction:
        return Fraction(int(self.per_vertex.sum()), self.k)

    def as_dict(self) -> Dict[int, int]:
        return {int(x): int(c) for x, c in enumerate(self.per_vertex)}

    def to_csv(self, path) -> Path:
        """写出 vertex,copies 列"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(["vertex", "copies"])
            for x, copies in enumerate(self.per_vertex):
                writer.writerow([x, int(copies)])
        return path

    @classmethod
    def empty(cls, k: int, n: int) -> "CopyCensus":
        return cls(k=k, total=0, per_vertex=np.zeros(n, dtype=np.int64))
