#!/usr/bin/env python3
"""
随机种子派生

每个重复实验的种子由主种子与重复编号确定性派生, 与调度顺序无关
"""

from typing import List

import numpy as np


def child_seed(master_seed: int, index: int) -> int:
    """由 (主种子, 编号) 派生子种子"""
    if master_seed < 0 or index < 0:
        raise ValueError(f"种子与编号必须非负: master={master_seed}, index={index}")
    seq = np.random.SeedSequence(int(master_seed), spawn_key=(int(index),))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def replicate_seeds(master_seed: int, count: int) -> List[int]:
    return [child_seed(master_seed, r) for r in range(count)]
