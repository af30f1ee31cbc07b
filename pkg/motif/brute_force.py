#!/usr/bin/env python3
"""
直接枚举

- tuple_copy_counts: 一批 k 元组上的 H 副本数 J (由 K_k 中的 a_H 个副本边集逐一检查)
- brute_force_count: 枚举全部 k 子集的计数 (测试用参照)
- ordered_kernel_sum: 按有序元组求和 f_H 的定义式 (小规模参照)
"""

import itertools
import logging
import math
from fractions import Fraction

import numpy as np

from geograph.connection import ConnectionSet
from ppp.point_set import PointSet

from .census import CopyCensus
from .template import MotifTemplate

logger = logging.getLogger(__name__)

MAX_ORACLE_POINTS = 60


class OracleSizeError(ValueError):
    """直接枚举的点数超出上限"""


def tuple_copy_counts(adjacency: np.ndarray, H: MotifTemplate) -> np.ndarray:
    """
    每个 k 元组上的副本数

    Args:
        adjacency: (..., k, k) 布尔邻接矩阵
        H: 模式图

    Returns:
        (...) 整数数组
    """
    adjacency = np.asarray(adjacency, dtype=bool)
    result = np.zeros(adjacency.shape[:-2], dtype=np.int64)
    for copy_edges in H.clique_copies:
        present = np.ones(adjacency.shape[:-2], dtype=bool)
        for i, j in copy_edges:
            present &= adjacency[..., i, j]
        result += present
    return result


def configuration_adjacency(points: np.ndarray, S: ConnectionSet) -> np.ndarray:
    """点组 (..., k, d) 的邻接矩阵 (..., k, k), 对角线为假"""
    points = np.asarray(points, dtype=float)
    diffs = points[..., :, None, :] - points[..., None, :, :]
    adjacency = S.contains(diffs)
    k = points.shape[-2]
    adjacency &= ~np.eye(k, dtype=bool)
    return adjacency


def points_copy_counts(points: np.ndarray, S: ConnectionSet, H: MotifTemplate) -> np.ndarray:
    """点组 (..., k, d) 上的 J 值"""
    return tuple_copy_counts(configuration_adjacency(points, S), H)


def kernel_value(points: np.ndarray, S: ConnectionSet, H: MotifTemplate) -> Fraction:
    """核 f_H(x_1..x_k) = J(x)/k!"""
    return Fraction(int(points_copy_counts(points, S, H)), math.factorial(H.k))


def brute_force_count(points: PointSet, S: ConnectionSet, H: MotifTemplate) -> CopyCensus:
    """
    枚举全部 k 子集统计副本

    Raises:
        OracleSizeError: 点数超过 60
    """
    n = len(points)
    if n > MAX_ORACLE_POINTS:
        raise OracleSizeError(f"直接枚举最多支持 {MAX_ORACLE_POINTS} 个点, 实际 {n} 个")
    if n < H.k:
        return CopyCensus.empty(H.k, n)

    coords = points.points
    full = S.contains(coords[:, None, :] - coords[None, :, :])
    np.fill_diagonal(full, False)

    per_vertex = np.zeros(n, dtype=np.int64)
    total = 0
    subsets = itertools.combinations(range(n), H.k)
    while True:
        chunk = np.fromiter(itertools.chain.from_iterable(itertools.islice(subsets, 50_000)),
                            dtype=np.int64)
        if chunk.size == 0:
            break
        chunk = chunk.reshape(-1, H.k)
        local = full[chunk[:, :, None], chunk[:, None, :]]
        copies = tuple_copy_counts(local, H)
        total += int(copies.sum())
        for column in range(H.k):
            np.add.at(per_vertex, chunk[:, column], copies)

    return CopyCensus(k=H.k, total=total, per_vertex=per_vertex)


def ordered_kernel_sum(points: PointSet, S: ConnectionSet, H: MotifTemplate) -> Fraction:
    """Σ_{x ∈ ξ^k_≠} f_H(x), 遍历全部有序元组"""
    coords = points.points
    total = Fraction(0)
    for tup in itertools.permutations(range(len(points)), H.k):
        total += kernel_value(coords[list(tup)], S, H)
    return total
