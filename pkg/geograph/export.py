#!/usr/bin/env python3
"""
几何图导出

- 边列表CSV
- Graphviz DOT (neato布局, 节点固定在坐标位置)
"""

import csv
import logging
from pathlib import Path

from graphviz import Graph

from .graph import GeoGraph

logger = logging.getLogger(__name__)


def write_edge_csv(graph: GeoGraph, path) -> Path:
    """写出边列表 (列 i, j)"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["i", "j"])
        writer.writerows(graph.edges())
    logger.debug(f"边列表已写出: {path} ({graph.edge_count} 条边)")
    return path


def build_dot(graph: GeoGraph, scale: float = 1.0, title: str = "geometric graph") -> Graph:
    """
    构造Graphviz无向图对象

    Args:
        graph: 几何图 (仅二维有坐标布局, 其他维度不设置 pos)
        scale: 坐标缩放系数 (Graphviz单位为英寸)
        title: 图标题
    """
    dot = Graph(comment=title, engine="neato")
    dot.attr(overlap="true", splines="false", label=title)
    dot.attr("node", shape="point", width="0.05")
    dot.attr("edge", penwidth="0.4")

    coords = graph.points.points
    for index in range(graph.n):
        attrs = {}
        if graph.d == 2:
            x, y = coords[index] * scale
            attrs["pos"] = f"{x:.6g},{y:.6g}!"
        dot.node(str(index), **attrs)
    for i, j in graph.edges():
        dot.edge(str(i), str(j))
    return dot


def visualize_geograph(graph: GeoGraph, filename, scale: float = 1.0,
                       render_format: str = None, view: bool = False) -> Path:
    """
    写出DOT源文件, 需要时调用Graphviz渲染

    Args:
        graph: 几何图
        filename: 输出的 .dot 文件路径
        scale: 坐标缩放
        render_format: 渲染格式 (svg/pdf/png); None 表示只写DOT
        view: 渲染后是否打开
    """
    filename = Path(filename)
    filename.parent.mkdir(parents=True, exist_ok=True)
    dot = build_dot(graph, scale=scale, title=filename.stem)
    filename.write_text(dot.source, encoding="utf-8")
    logger.info(f"DOT文件已生成: {filename}")

    if render_format:
        try:
            dot.render(filename.with_suffix(""), format=render_format, view=view, cleanup=True)
        except Exception as e:
            logger.warning(f"Graphviz渲染失败 ({render_format}): {e}")
    return filename
