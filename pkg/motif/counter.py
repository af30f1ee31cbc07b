#!/usr/bin/env python3
"""
副本计数

对几何图中的非导出副本回溯计数: 枚举保持边的单射 V(H) → V(g), 再除以自同构数。
每个嵌入由其根槽位的像唯一确定, 以根的像为锚点, 候选顶点限制在
锚点的 diam(H)·θρ 邻域内。
"""

import logging
from typing import List

import numpy as np

from geograph.graph import GeoGraph

from .census import CopyCensus
from .template import MotifTemplate

logger = logging.getLogger(__name__)


def count(g: GeoGraph, H: MotifTemplate) -> CopyCensus:
    """
    统计 g 中 H 的副本

    Returns:
        CopyCensus: total 为副本总数, per_vertex 为每个顶点所在的副本数
    """
    n = g.n
    if n < H.k:
        return CopyCensus.empty(H.k, n)

    neighbor_sets = g.neighbor_sets
    plan = H.plan
    k = H.k
    radius = H.diam * g.connection.reach
    embeddings = 0
    hits = np.zeros(n, dtype=np.int64)
    image: List[int] = [0] * k

    def extend(slot: int, used: set, region: set) -> int:
        if slot == k:
            for v in image:
                hits[v] += 1
            return 1
        spec = plan[slot]
        found = 0
        for candidate in neighbor_sets[image[spec.parent]] & region:
            if candidate in used:
                continue
            if any(image[b] not in neighbor_sets[candidate] for b in spec.back):
                continue
            image[slot] = candidate
            used.add(candidate)
            found += extend(slot + 1, used, region)
            used.discard(candidate)
        return found

    root_degree = int(H.adjacency[plan[0].vertex].sum())
    for anchor in range(n):
        if len(neighbor_sets[anchor]) < root_degree:
            continue
        region = set(g.neighbors_within(anchor, radius)) if k > 2 else neighbor_sets[anchor]
        image[0] = anchor
        embeddings += extend(1, {anchor}, region)

    total, remainder = divmod(embeddings, H.aut)
    if remainder:
        raise RuntimeError(f"嵌入数 {embeddings} 不能被自同构数 {H.aut} 整除")
    per_vertex, leftover = np.divmod(hits, H.aut)
    if np.any(leftover):
        raise RuntimeError("顶点嵌入数不能被自同构数整除")

    logger.debug(f"计数完成: {H.name} 副本 {total} 个 ({n} 个顶点)")
    return CopyCensus(k=k, total=total, per_vertex=per_vertex)
