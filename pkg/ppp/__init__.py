#!/usr/bin/env python3
"""
ppp包 - Poisson点过程的密度、窗口与采样
"""

import logging
import sys

from .density import (Density, FamilyTag, InvalidDensityError, UnsupportedFamilyError,
                      unit_ball_volume, unit_sphere_area)
from .window import Window, WindowKind, uniform_directions, uniform_in_ball
from .point_set import PointSet
from .sampler import sample
from .seeds import child_seed, replicate_seeds
from .integrability import (IntegrabilityError, InvalidToleranceError, NoFiniteRatioError,
                            integrability_check, ratio_constant, require_integrable,
                            truncation_radius)


__version__ = "1.0.0"

__all__ = [
    'Density',
    'FamilyTag',
    'Window',
    'WindowKind',
    'PointSet',
    'sample',
    'child_seed',
    'replicate_seeds',
    'integrability_check',
    'require_integrable',
    'ratio_constant',
    'truncation_radius',
    'unit_ball_volume',
    'unit_sphere_area',
    'uniform_directions',
    'uniform_in_ball',
    'InvalidDensityError',
    'UnsupportedFamilyError',
    'NoFiniteRatioError',
    'InvalidToleranceError',
    'IntegrabilityError',
    'setup_logging',
]

__doc__ = """
ppp包提供Poisson点过程的基本构件：

主要功能：
- 强度密度：幂律族 A(1+|x|)^(-γ)、均匀盒子、自定义密度
- 采样窗口：盒子与欧氏球
- thinning采样：相同种子逐位复现
- 可积性判断、局部比值常数与截断半径

使用示例：

   density = Density.power_law(A=1.0, gamma=1.0, d=2)
   window = Window.ball([0.0, 0.0], 10.0)
   points = sample(density, window, t=100.0, seed=7)
   points.to_csv("points.csv")
"""


def setup_logging(level=logging.INFO, format_string=None):
    """
    配置日志记录

    Args:
        level: 日志级别
        format_string: 自定义日志格式字符串
    """
    if format_string is None:
        format_string = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    logging.basicConfig(level=level, format=format_string,
                        handlers=[logging.StreamHandler(sys.stdout)])

    for name in ("ppp", "geograph", "motif", "bounds", "moments"):
        logging.getLogger(name).setLevel(level)
