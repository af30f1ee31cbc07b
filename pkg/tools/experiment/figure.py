#!/usr/bin/env python3
"""
Figure rendering for planar geometric graphs (SVG, optional DOT)
"""

import math
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from geograph.graph import GeoGraph
from ppp.point_set import PointSet
from ppp.window import Window


class FigureGenerator:
    """SVG generator: vertices as dots, edges as line segments, viewport = window"""

    def __init__(self, points: PointSet, graph: GeoGraph, window: Optional[Window] = None,
                 size: int = 800, dot_radius: float = 1.5, stroke_width: float = 0.4):
        if points.d != 2 or graph.d != 2:
            raise ValueError(f"Figures can only be rendered for d = 2, got d = {points.d}")
        self.points = points
        self.graph = graph
        self.window = window or points.window
        self.size = size
        self.dot_radius = dot_radius
        self.stroke_width = stroke_width
        self._lo, self._hi = self._viewport()

    def _viewport(self) -> Tuple[np.ndarray, np.ndarray]:
        if self.window is not None:
            lo, hi = self.window.bounding_box()
        elif len(self.points):
            lo, hi = self.points.points.min(axis=0), self.points.points.max(axis=0)
        else:
            lo, hi = np.zeros(2), np.ones(2)
        span = np.where(hi - lo > 0, hi - lo, 1.0)
        return np.asarray(lo, dtype=float), np.asarray(lo, dtype=float) + span

    def _to_pixels(self, xy: np.ndarray) -> Tuple[float, float]:
        scale = self.size / float(np.max(self._hi - self._lo))
        x = (xy[0] - self._lo[0]) * scale
        y = (self._hi[1] - xy[1]) * scale
        return x, y

    def _generate_svg_content(self) -> str:
        width = self.size * (self._hi[0] - self._lo[0]) / float(np.max(self._hi - self._lo))
        height = self.size * (self._hi[1] - self._lo[1]) / float(np.max(self._hi - self._lo))
        lines = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.2f}" height="{height:.2f}" '
            f'viewBox="0 0 {width:.2f} {height:.2f}">',
        ]
        coords = self.points.points
        for i, j in self.graph.edges():
            x1, y1 = self._to_pixels(coords[i])
            x2, y2 = self._to_pixels(coords[j])
            lines.append(f'  <line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" '
                         f'stroke="black" stroke-width="{self.stroke_width}"/>')
        for point in coords:
            x, y = self._to_pixels(point)
            lines.append(f'  <circle cx="{x:.3f}" cy="{y:.3f}" r="{self.dot_radius}" fill="black"/>')
        lines.append('</svg>')
        return "\n".join(lines) + "\n"

    def render_svg(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self._generate_svg_content(), encoding="utf-8")
        return path


def render_figure(points: PointSet, graph: GeoGraph, path, window: Optional[Window] = None) -> Path:
    """Write an SVG of the graph; raises ValueError unless d = 2"""
    return FigureGenerator(points, graph, window=window).render_svg(path)


def radial_edge_profile(graph: GeoGraph, ring_edges: Sequence[float]) -> List[Dict[str, float]]:
    """
    Edge counts per annulus around the origin, split by quadrant

    Each edge is assigned to the annulus and quadrant of its midpoint; `density`
    is the count divided by the annulus area.
    """
    if graph.d != 2:
        raise ValueError(f"Radial profiles are defined for d = 2, got d = {graph.d}")
    edges = graph.edge_array()
    coords = graph.points.points
    midpoints = (coords[edges[:, 0]] + coords[edges[:, 1]]) / 2.0 if edges.size else np.empty((0, 2))
    radii = np.linalg.norm(midpoints, axis=1)
    quadrants = (midpoints[:, 0] < 0).astype(int) + 2 * (midpoints[:, 1] < 0).astype(int)

    profile = []
    for r_in, r_out in zip(ring_edges[:-1], ring_edges[1:]):
        inside = (radii >= r_in) & (radii < r_out)
        area = math.pi * (r_out ** 2 - r_in ** 2)
        by_quadrant = [int(np.sum(inside & (quadrants == q))) for q in range(4)]
        profile.append({
            "r_in": float(r_in),
            "r_out": float(r_out),
            "edges": int(inside.sum()),
            "density": float(inside.sum()) / area,
            "q1": by_quadrant[0], "q2": by_quadrant[1], "q3": by_quadrant[3], "q4": by_quadrant[2],
        })
    return profile
