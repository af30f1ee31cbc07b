#!/usr/bin/env python3
"""
motif 包测试: 模式图、回溯计数与直接枚举参照
"""

import math
import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

import networkx as nx
import numpy as np
import pytest
from networkx.algorithms import isomorphism

from geograph import ConnectionSet, build
from motif import (MAX_ORACLE_POINTS, OracleSizeError, TemplateError, brute_force_count, count,
                   kernel_value, ordered_kernel_sum, preset_names, template_from_edges,
                   template_from_preset, tuple_copy_counts)
from ppp import PointSet

UNIT_DISK = ConnectionSet.lp_ball(2, 1.0, 2)


def _clique_points(n):
    """n 个两两相距 < 1 的点"""
    angles = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    return PointSet(d=2, points=0.3 * np.stack([np.cos(angles), np.sin(angles)], axis=1))


def _monomorphism_copies(graph, H):
    """networkx 子图单态射个数 / 自同构数"""
    matcher = isomorphism.GraphMatcher(graph, H.to_networkx())
    embeddings = sum(1 for _ in matcher.subgraph_monomorphisms_iter())
    return embeddings // H.aut


def test_template_invariants():
    """自同构数、a_H 与直径"""
    expected = {
        "edge": (2, 1, 1),
        "path3": (2, 3, 2),
        "triangle": (6, 1, 1),
        "path4": (2, 12, 3),
        "cycle4": (8, 3, 2),
        "clique4": (24, 1, 1),
        "star3": (6, 4, 2),
    }
    for name in preset_names():
        H = template_from_preset(name)
        aut, a_H, diam = expected[name]
        assert (H.aut, H.a_H, H.diam) == (aut, a_H, diam), name
        assert H.a_H * H.aut == math.factorial(H.k)
        assert len(H.clique_copies) == H.a_H
        assert np.array_equal(H.adjacency, H.adjacency.T)
        assert not H.adjacency.diagonal().any()
        assert H.diam == nx.diameter(H.to_networkx())

    assert template_from_preset("clique3").edges == template_from_preset("triangle").edges
    assert template_from_preset("clique4").is_clique
    assert not template_from_preset("cycle4").is_clique


def test_search_plan_starts_at_max_degree():
    star = template_from_preset("star3")
    assert star.plan[0].vertex == 0
    assert all(slot.parent == 0 for slot in star.plan[1:])
    triangle = template_from_preset("triangle")
    assert triangle.plan[2].back == (1,)


def test_template_errors():
    with pytest.raises(TemplateError):
        template_from_edges(3, [(0, 1)])
    with pytest.raises(TemplateError):
        template_from_edges(9, [(i, i + 1) for i in range(8)])
    with pytest.raises(TemplateError):
        template_from_edges(1, [])
    with pytest.raises(TemplateError):
        template_from_edges(2, [(0, 2)])
    with pytest.raises(TemplateError):
        template_from_edges(2, [(0, 0), (0, 1)])
    with pytest.raises(TemplateError):
        template_from_preset("dodecahedron")


def test_count_on_cliques():
    """K3 中三角形 1 个; K4 中三角形 4 个, P3 12 个"""
    triangle = template_from_preset("triangle")
    k3 = build(_clique_points(3), UNIT_DISK)
    census = count(k3, triangle)
    assert census.total == 1
    assert census.per_vertex.tolist() == [1, 1, 1]

    k4 = build(_clique_points(4), UNIT_DISK)
    assert count(k4, triangle).total == 4
    assert count(k4, template_from_preset("path3")).total == 12
    assert count(k4, template_from_preset("cycle4")).total == 3
    assert count(k4, template_from_preset("clique4")).total == 1
    assert count(k4, template_from_preset("path4")).total == 12


def test_count_small_graphs():
    empty = build(PointSet(d=2, points=np.empty((0, 2))), UNIT_DISK)
    assert count(empty, template_from_preset("edge")).total == 0
    pair = build(PointSet(d=2, points=[[0.0, 0.0], [0.5, 0.0]]), UNIT_DISK)
    assert count(pair, template_from_preset("triangle")).total == 0
    assert count(pair, template_from_preset("edge")).total == 1


def test_count_matches_brute_force_oracle():
    """200 个随机实例: count 与直接枚举的 total 和 per_vertex 完全一致"""
    rng = np.random.default_rng(1234)
    names = ["edge", "path3", "triangle", "path4", "cycle4", "clique4"]
    for trial in range(200):
        d = 1 + trial % 2
        H = template_from_preset(names[trial % len(names)])
        n = int(rng.integers(0, 41))
        points = PointSet(d=d, points=rng.random((n, d)))
        S = ConnectionSet.lp_ball([1, 2, math.inf][trial % 3], float(rng.uniform(0.1, 0.35)), d)
        fast = count(build(points, S), H)
        oracle = brute_force_count(points, S, H)
        assert fast.total == oracle.total, f"实例 {trial}: {fast.total} != {oracle.total}"
        assert np.array_equal(fast.per_vertex, oracle.per_vertex), f"实例 {trial}"
        assert fast.is_consistent()
        assert fast.local_sum() == fast.total


def test_count_matches_networkx():
    """GraphMatcher 单态射计数与 nx.triangles"""
    rng = np.random.default_rng(77)
    points = PointSet(d=2, points=rng.random((120, 2)))
    graph = build(points, ConnectionSet.lp_ball(2, 0.12, 2))
    nx_graph = graph.to_networkx()

    triangle = template_from_preset("triangle")
    census = count(graph, triangle)
    per_node = nx.triangles(nx_graph)
    assert census.total == sum(per_node.values()) // 3
    assert census.per_vertex.tolist() == [per_node[i] for i in range(graph.n)]

    for name in ("path3", "star3", "cycle4"):
        H = template_from_preset(name)
        assert count(graph, H).total == _monomorphism_copies(nx_graph, H), name


def test_brute_force_guard_and_trivial_cases():
    H = template_from_preset("edge")
    assert brute_force_count(PointSet(d=2, points=np.empty((0, 2))), UNIT_DISK, H).total == 0
    assert brute_force_count(PointSet(d=2, points=[[0.0, 0.0], [0.9, 0.0]]), UNIT_DISK, H).total == 1
    too_many = PointSet(d=2, points=np.random.default_rng(0).random((MAX_ORACLE_POINTS + 1, 2)))
    with pytest.raises(OracleSizeError):
        brute_force_count(too_many, UNIT_DISK, H)


def test_tuple_copy_counts_on_complete_graph():
    """K_k 上的副本数等于 a_H"""
    for name in preset_names():
        H = template_from_preset(name)
        complete = ~np.eye(H.k, dtype=bool)
        assert int(tuple_copy_counts(complete, H)) == H.a_H
        assert int(tuple_copy_counts(np.zeros((H.k, H.k), dtype=bool), H)) == 0


def test_copy_count_equals_ordered_kernel_sum():
    """Σ_{有序元组} f_H = 副本数 (f_H = J/k!)"""
    rng = np.random.default_rng(9)
    for name in ("edge", "path3", "triangle"):
        H = template_from_preset(name)
        for _ in range(5):
            points = PointSet(d=2, points=rng.random((7, 2)))
            S = ConnectionSet.lp_ball(2, 0.4, 2)
            assert ordered_kernel_sum(points, S, H) == brute_force_count(points, S, H).total

    triangle = template_from_preset("triangle")
    assert kernel_value(_clique_points(3).points, UNIT_DISK, triangle) == Fraction(1, 6)


def test_adding_points_never_decreases_total():
    rng = np.random.default_rng(31)
    coords = rng.random((80, 2))
    S = ConnectionSet.lp_ball(2, 0.15, 2)
    H = template_from_preset("path3")
    previous = 0
    for n in range(0, 81, 10):
        total = count(build(PointSet(d=2, points=coords[:n]), S), H).total
        assert total >= previous
        previous = total


def test_census_csv(tmp_path):
    census = count(build(_clique_points(4), UNIT_DISK), template_from_preset("triangle"))
    path = census.to_csv(tmp_path / "census.csv")
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines == ["vertex,copies", "0,3", "1,3", "2,3", "3,3"]
    assert census.local_counts() == [Fraction(1)] * 4
    assert census.as_dict() == {0: 3, 1: 3, 2: 3, 3: 3}


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
