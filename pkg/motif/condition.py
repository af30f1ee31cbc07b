#!/usr/bin/env python3
"""
结构不等式检查

check_condition 精确验证 Σ_x F(x,ξ)² ≤ c_d·F(ξ)^{(2k−1)/k}, 左侧用有理数计算。
另外提供三个组合不等式的判定函数, 供性质测试使用。
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from bounds.constants import c_d_subgraph

from .census import CopyCensus
from .template import MotifTemplate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConditionCheck:
    """不等式检查结果 (lhs 为精确有理数)"""
    lhs: Fraction
    rhs: float
    holds: bool


def check_condition(census: CopyCensus, H: MotifTemplate, d: int, theta: float) -> ConditionCheck:
    """
    检查 Σ_x (per_vertex(x)/k)² ≤ c_d(H, d, θ)·total^{(2k−1)/k}
    """
    k = H.k
    lhs = Fraction(sum(int(c) ** 2 for c in census.per_vertex), k * k)
    if census.total == 0:
        rhs = 0.0
    else:
        rhs = c_d_subgraph(H, d, theta) * float(census.total) ** ((2 * k - 1) / k)
    holds = lhs <= rhs
    if not holds:
        logger.warning(f"结构不等式不成立: lhs={float(lhs):.6g}, rhs={rhs:.6g}")
    return ConditionCheck(lhs=lhs, rhs=rhs, holds=holds)


def product_max_min_holds(x: Sequence[int], y: Sequence[int]) -> bool:
    """Π x_i + Π y_i ≤ Π max(x_i, y_i) + Π min(x_i, y_i) (非负整数, 精确)"""
    if len(x) != len(y):
        raise ValueError(f"向量长度不一致: {len(x)} vs {len(y)}")
    prod_x = prod_y = prod_max = prod_min = 1
    for a, b in zip(x, y):
        a, b = int(a), int(b)
        prod_x *= a
        prod_y *= b
        prod_max *= max(a, b)
        prod_min *= min(a, b)
    return prod_x + prod_y <= prod_max + prod_min


def permutation_products_holds(values: Sequence[int], permutations: Sequence[Sequence[int]]) -> bool:
    """
    Σ_i Π_j n_{π_j(i)} ≤ Σ_i n_i^k

    Args:
        values: 非负整数 n_1..n_N
        permutations: k 个 {0..N−1} 上的置换
    """
    values = [int(v) for v in values]
    k = len(permutations)
    for perm in permutations:
        if sorted(perm) != list(range(len(values))):
            raise ValueError(f"不是 0..{len(values) - 1} 上的置换: {list(perm)}")
    lhs = 0
    for i in range(len(values)):
        term = 1
        for perm in permutations:
            term *= values[perm[i]]
        lhs += term
    return lhs <= sum(v ** k for v in values)


def deletion_inequality_holds(full: CopyCensus, reduced: CopyCensus,
                              removed: Sequence[int]) -> bool:
    """
    total(ξ) ≤ Σ_{x ∈ ξ∖δ} per_vertex_ξ(x) + total(δ)

    Args:
        full: ξ 上的统计
        reduced: 删除部分点后的 δ 上的统计
        removed: 被删除的点在 ξ 中的编号
    """
    removed = np.asarray(list(removed), dtype=np.int64)
    removed_copies = int(full.per_vertex[removed].sum()) if removed.size else 0
    return full.total <= removed_copies + reduced.total
