#!/usr/bin/env python3
"""
几何图模块

由点集与连接集合构造 G_S(ξ): 顶点为点集中的点, 差向量落在 S 内的点对之间连边。
使用边长为 θρ 的均匀网格索引, 只比较相邻 3^d 个网格中的点对。
"""

import itertools
import logging
import math
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

import networkx as nx
import numpy as np

from ppp.point_set import PointSet

from .connection import ConnectionSet, DimensionMismatchError

logger = logging.getLogger(__name__)

Cell = Tuple[int, ...]


class VertexIndexError(IndexError):
    """顶点编号越界"""


class GeoGraph:
    """
    几何图 (构造后不可变)

    顶点编号为点在 PointSet 中的行号; 邻接表按编号升序存储。
    """

    def __init__(self, points: PointSet, connection: ConnectionSet,
                 origin: Optional[np.ndarray] = None):
        if points.d != connection.d:
            raise DimensionMismatchError(
                f"点集维度 {points.d} 与连接集合维度 {connection.d} 不一致")
        self._points = points
        self._connection = connection
        self._cell_side = connection.reach
        coords = points.points
        if origin is None:
            origin = coords.min(axis=0) if len(points) else np.zeros(points.d)
        self._origin = np.asarray(origin, dtype=float)
        self._cells = self._index_cells(coords)
        self._edges = self._find_edges(coords)
        self._adjacency = self._build_adjacency()
        self._neighbor_sets: Optional[List[FrozenSet[int]]] = None

    # ------------------------------------------------------------------
    # 构造
    # ------------------------------------------------------------------

    def _cell_of(self, coords: np.ndarray) -> np.ndarray:
        return np.floor((coords - self._origin) / self._cell_side).astype(np.int64)

    def _index_cells(self, coords: np.ndarray) -> Dict[Cell, np.ndarray]:
        cells: Dict[Cell, List[int]] = {}
        for index, cell in enumerate(map(tuple, self._cell_of(coords))):
            cells.setdefault(cell, []).append(index)
        return {cell: np.asarray(members, dtype=np.int64) for cell, members in cells.items()}

    def _find_edges(self, coords: np.ndarray) -> np.ndarray:
        """扫描每个网格与其 3^d 个相邻网格, 每个无序点对恰好保留一次"""
        offsets = list(itertools.product((-1, 0, 1), repeat=self.d))
        found = []
        for cell, members in self._cells.items():
            for offset in offsets:
                other = self._cells.get(tuple(c + o for c, o in zip(cell, offset)))
                if other is None:
                    continue
                diffs = coords[members][:, None, :] - coords[other][None, :, :]
                mask = self._connection.contains(diffs) & (members[:, None] < other[None, :])
                rows, cols = np.nonzero(mask)
                if rows.size:
                    found.append(np.stack([members[rows], other[cols]], axis=1))
        if not found:
            return np.empty((0, 2), dtype=np.int64)
        edges = np.concatenate(found)
        order = np.lexsort((edges[:, 1], edges[:, 0]))
        return edges[order]

    def _build_adjacency(self) -> List[np.ndarray]:
        n = len(self._points)
        if self._edges.size == 0:
            return [np.empty(0, dtype=np.int64) for _ in range(n)]
        heads = np.concatenate([self._edges[:, 0], self._edges[:, 1]])
        tails = np.concatenate([self._edges[:, 1], self._edges[:, 0]])
        order = np.lexsort((tails, heads))
        heads, tails = heads[order], tails[order]
        bounds = np.searchsorted(heads, np.arange(n + 1))
        return [tails[bounds[i]:bounds[i + 1]] for i in range(n)]

    # ------------------------------------------------------------------
    # 查询
    # ------------------------------------------------------------------

    @property
    def points(self) -> PointSet:
        return self._points

    @property
    def connection(self) -> ConnectionSet:
        return self._connection

    @property
    def d(self) -> int:
        return self._points.d

    @property
    def n(self) -> int:
        return len(self._points)

    @property
    def cell_side(self) -> float:
        return self._cell_side

    def __len__(self) -> int:
        return self.n

    def _check_vertex(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise VertexIndexError(f"顶点编号 {i} 越界 (共 {self.n} 个顶点)")

    def neighbors(self, i: int) -> List[int]:
        """顶点 i 的邻居, 升序"""
        self._check_vertex(i)
        return self._adjacency[i].tolist()

    def neighbor_array(self, i: int) -> np.ndarray:
        self._check_vertex(i)
        return self._adjacency[i]

    @property
    def neighbor_sets(self) -> List[FrozenSet[int]]:
        """邻接集合 (计数时按需构造并缓存)"""
        if self._neighbor_sets is None:
            self._neighbor_sets = [frozenset(adj.tolist()) for adj in self._adjacency]
        return self._neighbor_sets

    def degree(self, i: int) -> int:
        self._check_vertex(i)
        return int(self._adjacency[i].size)

    def has_edge(self, i: int, j: int) -> bool:
        self._check_vertex(i)
        self._check_vertex(j)
        adj = self._adjacency[i]
        pos = np.searchsorted(adj, j)
        return bool(pos < adj.size and adj[pos] == j)

    def edges(self) -> Iterator[Tuple[int, int]]:
        """无序边 (i, j), i < j, 按字典序"""
        for i, j in self._edges:
            yield int(i), int(j)

    def edge_array(self) -> np.ndarray:
        return self._edges

    @property
    def edge_count(self) -> int:
        return int(self._edges.shape[0])

    def neighbors_within(self, i: int, radius: float) -> List[int]:
        """
        与顶点 i 的欧氏距离不超过 radius 的所有顶点 (包含 i 本身), 升序

        扫描 ⌈radius/θρ⌉ 圈网格
        """
        self._check_vertex(i)
        if radius < 0:
            raise ValueError(f"半径必须非负: {radius}")
        coords = self._points.points
        ring = int(math.ceil(radius / self._cell_side))
        center = tuple(self._cell_of(coords[i]).tolist())
        candidates = []
        for offset in itertools.product(range(-ring, ring + 1), repeat=self.d):
            members = self._cells.get(tuple(c + o for c, o in zip(center, offset)))
            if members is not None:
                candidates.append(members)
        candidates = np.concatenate(candidates)
        dist = np.linalg.norm(coords[candidates] - coords[i], axis=1)
        return sorted(candidates[dist <= radius].tolist())

    def to_networkx(self) -> nx.Graph:
        """转换为 networkx 无向图, 节点属性 pos 为坐标"""
        graph = nx.Graph()
        for index, point in enumerate(self._points.points):
            graph.add_node(index, pos=tuple(point.tolist()))
        graph.add_edges_from(self.edges())
        return graph


def build(points: PointSet, S: ConnectionSet, origin=None) -> GeoGraph:
    """构造几何图 G_S(points)"""
    graph = GeoGraph(points, S, origin=origin)
    logger.debug(f"几何图构造完成: {graph.n} 个顶点, {graph.edge_count} 条边")
    return graph
