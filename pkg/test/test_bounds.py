#!/usr/bin/env python3
"""
bounds 包测试: 显式常数、尾部界与最优性诊断
"""

import math
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

import numpy as np
import pytest
from scipy import stats

from bounds import (KernelBounds, TailCurve, TailKind, c_d_general, c_d_subgraph, ceil_tolerant,
                    decay_exponent_fit, lower_tail_mean, mean_upper_curve, median_tails,
                    poisson_ball_mean, poisson_tail_lower_bound, slln_deviation_bound,
                    tail_curves, upper_tail_mean)
from bounds.tails import log_upper_tail_mean
from motif import preset_names, template_from_preset
from ppp import Density


def test_ceil_tolerant():
    assert ceil_tolerant(2.0000000000001) == 2
    assert ceil_tolerant(2.1) == 3
    assert ceil_tolerant(math.sqrt(2.0) * math.sqrt(2.0)) == 2


def test_c_d_general_examples():
    assert c_d_general(KernelBounds(2, 1.0, 1.0, 0.5, 0.5), 2) == pytest.approx(1250.0)
    assert c_d_general(KernelBounds(3, 1.0, 1.0, 1 / 6, 1 / 6), 2) == pytest.approx(2_636_718.75)
    values = [c_d_general(KernelBounds(2, 1.0, theta, 0.5, 0.5), 2) for theta in (1.0, 1.5, 2.0, 3.7)]
    assert all(b >= a for a, b in zip(values, values[1:]))
    with pytest.raises(ValueError):
        KernelBounds(2, 1.0, 0.5, 0.5, 0.5)
    with pytest.raises(ValueError):
        KernelBounds(2, 1.0, 1.0, 0.5, 0.25)


def test_c_d_subgraph_examples():
    assert c_d_subgraph(template_from_preset("edge"), 2, 1.0) == pytest.approx(1250.0)
    assert c_d_subgraph(template_from_preset("triangle"), 2, 1.0) == pytest.approx(2_636_718.75)


def test_c_d_subgraph_equals_general():
    for name in preset_names():
        H = template_from_preset(name)
        for d, theta in ((1, 1.0), (2, 1.0), (2, math.sqrt(2.0)), (3, 1.0)):
            general = c_d_general(KernelBounds.for_subgraph(H, 0.3, theta), d)
            assert c_d_subgraph(H, d, theta) == pytest.approx(general, rel=1e-12), name


def test_upper_tail_mean():
    assert upper_tail_mean(16.0, 0.0, 2, 1.0, 1.5) == 1.0
    assert upper_tail_mean(16.0, 65520.0, 2, 1.0, 1.5) == pytest.approx(math.exp(-24.5))
    grid = np.linspace(0.0, 1e5, 50)
    values = [upper_tail_mean(100.0, r, 2, 1250.0, 1.5) for r in grid]
    assert all(b <= a for a, b in zip(values, values[1:]))
    assert upper_tail_mean(100.0, 1e4, 2, 10.0, 1.5) <= upper_tail_mean(100.0, 1e4, 2, 20.0, 1.5)
    with pytest.raises(ValueError):
        upper_tail_mean(1.0, 1.0, 2, 1.0, 2.0)


def test_lower_tail_mean():
    assert lower_tail_mean(1.0, 0.0, 2) == 1.0
    assert lower_tail_mean(1.0, 2.0, 2) == pytest.approx(math.exp(-1.0))
    assert lower_tail_mean(0.5, 2.0, 2) < lower_tail_mean(1.0, 2.0, 2)
    with pytest.raises(ValueError):
        lower_tail_mean(0.0, 1.0, 2)


def test_median_tails():
    assert median_tails(5.0, 0.0, 2, 1.0, 1.5) == (1.0, 1.0)
    upper, lower = median_tails(1e4, 1e4, 2, 1.0, 1.5)
    assert lower == pytest.approx(2 * math.exp(-6.25))
    assert upper >= lower
    assert median_tails(0.0, 3.0, 2, 1.0, 1.5)[1] == 0.0
    for r in np.linspace(0.0, 1e5, 40):
        up, low = median_tails(300.0, r, 3, 50.0, 5 / 3)
        assert up >= low


def test_tail_curves_valid():
    r_grid = np.linspace(0.0, 500.0, 41)
    curves = tail_curves(150.0, 350.0, 149.0, r_grid, 2, 1250.0)
    assert set(curves) == set(TailKind)
    for curve in curves.values():
        assert curve.is_valid()
        assert len(curve.log_bounds) == len(r_grid)
    assert curves[TailKind.MEAN_UPPER].center == 150.0
    assert curves[TailKind.MEDIAN_LOWER].center == 149.0

    degenerate = tail_curves(150.0, 350.0, 149.0, [0.0], 2, 1250.0)
    assert all(curve.bounds.tolist() == [1.0] for curve in degenerate.values())


def test_poisson_tail_lower_bound():
    assert poisson_tail_lower_bound(5.0, 0.0, 0.0, 0.5, 2) == pytest.approx(1 - math.exp(-5.0))
    assert poisson_tail_lower_bound(5.0, 0.0, 0.0, 1.0, 1) == 1.0
    values = [poisson_tail_lower_bound(5.0, 10.0, r, 0.5, 2) for r in (0.0, 10.0, 100.0, 1000.0)]
    assert all(b <= a for a, b in zip(values, values[1:]))
    with pytest.raises(ValueError):
        poisson_tail_lower_bound(0.0, 0.0, 0.0, 0.5, 2)


def test_poisson_tail_threshold_rounds_up():
    """阈值略高于整数时 z₀ 必须向上取整, 否则不再是下界"""
    above = poisson_tail_lower_bound(5.0, 2.0000000000001, 0.0, 1.0, 1)
    assert above == pytest.approx(stats.poisson.sf(2, 5.0))
    exact = poisson_tail_lower_bound(5.0, 2.0, 0.0, 1.0, 1)
    assert exact == pytest.approx(stats.poisson.sf(1, 5.0))
    assert above < exact
    assert poisson_tail_lower_bound(5.0, -3.0, 0.0, 1.0, 2) == pytest.approx(1 - math.exp(-5.0))


def test_poisson_ball_mean():
    density = Density.power_law(1.0, 1.0, 1)
    # t·μ([-1, 1]) = 3·2·log 2
    assert poisson_ball_mean(density, [0.0], 2.0, 3.0) == pytest.approx(6.0 * math.log(2.0))


def test_decay_fit_synthetic():
    r = np.logspace(0, 6, 40)
    curve = TailCurve(center=0.0, kind=TailKind.MEAN_UPPER,
                      samples=tuple((float(x), math.exp(-math.sqrt(x))) for x in r),
                      log_bounds=tuple(-math.sqrt(x) for x in r))
    assert decay_exponent_fit(curve) == pytest.approx(0.5, abs=0.01)


def test_decay_fit_mean_upper_curves():
    """mean_upper 曲线的衰减指数 → 1/k (k = 2, 3, 4)"""
    r_grid = np.logspace(0, 30, 121)
    for k in (2, 3, 4):
        H = template_from_preset({2: "edge", 3: "triangle", 4: "clique4"}[k])
        c = c_d_subgraph(H, 2, 1.0)
        slope = decay_exponent_fit(mean_upper_curve(100.0, r_grid, k, c))
        print(f"k={k}: 拟合指数 {slope:.4f}")
        assert slope == pytest.approx(1.0 / k, rel=0.05)

    slope = decay_exponent_fit(mean_upper_curve(100.0, np.logspace(3, 9, 61), 2, 1250.0))
    assert slope == pytest.approx(0.5, rel=0.05)


def test_decay_fit_insufficient_span():
    curve = mean_upper_curve(100.0, np.linspace(1.0, 50.0, 20), 2, 1250.0)
    with pytest.raises(ValueError):
        decay_exponent_fit(curve)
    with pytest.raises(ValueError):
        decay_exponent_fit(mean_upper_curve(100.0, np.logspace(0, 5, 5), 2, 1250.0))


def test_log_space_avoids_underflow():
    value = log_upper_tail_mean(100.0, 1e30, 2, 1250.0, 1.5)
    assert math.isfinite(value) and value < -700
    assert upper_tail_mean(100.0, 1e30, 2, 1250.0, 1.5) == 0.0


def test_slln_deviation_bound():
    low = slln_deviation_bound(1000.0, 2000.0, 100.0, 0.1, 2, 2, 1250.0, 0.5)
    assert 0.0 <= low <= 1.0
    high_eps = slln_deviation_bound(1000.0, 2000.0, 100.0, 0.1, 2, 2, 1250.0, 5.0)
    assert high_eps <= low
    with pytest.raises(ValueError):
        slln_deviation_bound(1000.0, 2000.0, 100.0, 0.1, 2, 2, 1250.0, 0.0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
