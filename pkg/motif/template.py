#!/usr/bin/env python3
"""
模式图模块

MotifTemplate 描述要计数的连通模式图 H (k 个顶点), 以及计数所需的派生量:
直径、自同构数、K_k 中 H 的副本数 a_H、回溯搜索的槽位顺序。
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import networkx as nx
import numpy as np

logger = logging.getLogger(__name__)

MAX_TEMPLATE_VERTICES = 8

Edge = Tuple[int, int]

PRESETS: Dict[str, Tuple[int, Tuple[Edge, ...]]] = {
    "edge": (2, ((0, 1),)),
    "path3": (3, ((0, 1), (1, 2))),
    "triangle": (3, ((0, 1), (1, 2), (0, 2))),
    "path4": (4, ((0, 1), (1, 2), (2, 3))),
    "cycle4": (4, ((0, 1), (1, 2), (2, 3), (0, 3))),
    "clique4": (4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))),
    "star3": (4, ((0, 1), (0, 2), (0, 3))),
}

# 别名
PRESET_ALIASES: Dict[str, str] = {"clique3": "triangle", "clique2": "edge"}


class TemplateError(ValueError):
    """模式图无效: 不连通、越界、自环或超出大小上限"""


@dataclass(frozen=True)
class SearchSlot:
    """回溯搜索中的一个槽位: 模式顶点、BFS父槽位、需要额外检查相邻的更早槽位"""
    vertex: int
    parent: int
    back: Tuple[int, ...]


@dataclass(frozen=True)
class MotifTemplate:
    """
    连通模式图 H

    Attributes:
        k: 顶点数
        edges: 规范化的边 (i < j, 升序)
        adjacency: k×k 布尔邻接矩阵
        diam: 图直径
        aut: 自同构数
        a_H: K_k 中与 H 同构的子图个数 (= k!/aut)
        clique_copies: K_k 中每个H副本的边集 (共 a_H 个)
        plan: 回溯槽位顺序 (从最大度顶点出发的BFS)
        name: 名称
    """
    k: int
    edges: Tuple[Edge, ...]
    adjacency: np.ndarray
    diam: int
    aut: int
    a_H: int
    clique_copies: Tuple[Tuple[Edge, ...], ...]
    plan: Tuple[SearchSlot, ...]
    name: str = "custom"

    @property
    def is_clique(self) -> bool:
        return len(self.edges) == self.k * (self.k - 1) // 2

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.k))
        graph.add_edges_from(self.edges)
        return graph


def _normalize_edges(k: int, edges: Iterable[Sequence[int]]) -> Tuple[Edge, ...]:
    normalized = set()
    for edge in edges:
        if len(edge) != 2:
            raise TemplateError(f"边必须是顶点对: {edge}")
        i, j = int(edge[0]), int(edge[1])
        if not (0 <= i < k and 0 <= j < k):
            raise TemplateError(f"边 ({i}, {j}) 超出顶点范围 0..{k - 1}")
        if i == j:
            raise TemplateError(f"模式图不允许自环: ({i}, {j})")
        normalized.add((min(i, j), max(i, j)))
    return tuple(sorted(normalized))


def _edge_images(edges: Tuple[Edge, ...], perm: Sequence[int]) -> FrozenSet[Edge]:
    return frozenset((min(perm[i], perm[j]), max(perm[i], perm[j])) for i, j in edges)


def _search_plan(graph: nx.Graph) -> Tuple[SearchSlot, ...]:
    degrees = dict(graph.degree())
    root = min(graph.nodes, key=lambda v: (-degrees[v], v))
    order = [root] + [v for _, v in nx.bfs_edges(graph, root, sort_neighbors=sorted)]
    parent_of = {v: u for u, v in nx.bfs_edges(graph, root, sort_neighbors=sorted)}
    position = {v: i for i, v in enumerate(order)}

    slots = [SearchSlot(vertex=root, parent=-1, back=())]
    for i, v in enumerate(order[1:], start=1):
        parent = position[parent_of[v]]
        back = tuple(sorted(position[u] for u in graph.neighbors(v)
                            if position[u] < i and position[u] != parent))
        slots.append(SearchSlot(vertex=v, parent=parent, back=back))
    return tuple(slots)


def template_from_edges(k: int, edges: Iterable[Sequence[int]],
                        name: str = "custom") -> MotifTemplate:
    """
    由边列表构造模式图

    自同构数通过对全部 k! 个置换的暴力检查得到, 直径由BFS得到。

    Raises:
        TemplateError: k 超出 [2, 8]、边越界或图不连通
    """
    if k > MAX_TEMPLATE_VERTICES:
        raise TemplateError(f"模式图顶点数 {k} 超出上限 {MAX_TEMPLATE_VERTICES}")
    if k < 2:
        raise TemplateError(f"模式图至少需要2个顶点: {k}")

    edge_tuple = _normalize_edges(k, edges)
    graph = nx.Graph()
    graph.add_nodes_from(range(k))
    graph.add_edges_from(edge_tuple)
    if not nx.is_connected(graph):
        raise TemplateError(f"模式图不连通: k={k}, edges={list(edge_tuple)}")

    edge_set = frozenset(edge_tuple)
    images = set()
    aut = 0
    for perm in itertools.permutations(range(k)):
        image = _edge_images(edge_tuple, perm)
        images.add(image)
        if image == edge_set:
            aut += 1

    a_H = math.factorial(k) // aut
    if a_H * aut != math.factorial(k) or a_H != len(images):
        raise TemplateError(f"自同构计数不一致: aut={aut}, 副本数={len(images)}")

    adjacency = np.zeros((k, k), dtype=bool)
    for i, j in edge_tuple:
        adjacency[i, j] = adjacency[j, i] = True
    adjacency.setflags(write=False)

    template = MotifTemplate(
        k=k,
        edges=edge_tuple,
        adjacency=adjacency,
        diam=int(nx.diameter(graph)),
        aut=aut,
        a_H=a_H,
        clique_copies=tuple(tuple(sorted(image)) for image in sorted(images, key=sorted)),
        plan=_search_plan(graph),
        name=name,
    )
    logger.debug(f"模式图 {name}: k={k}, diam={template.diam}, aut={aut}, a_H={a_H}")
    return template


def template_from_preset(name: str) -> MotifTemplate:
    """按名称获取预置模式图"""
    name = PRESET_ALIASES.get(name, name)
    if name not in PRESETS:
        choices = ', '.join(sorted(list(PRESETS) + list(PRESET_ALIASES)))
        raise TemplateError(f"未知的预置模式图: {name} (可选: {choices})")
    k, edges = PRESETS[name]
    return template_from_edges(k, edges, name=name)


def preset_names() -> List[str]:
    return list(PRESETS)
