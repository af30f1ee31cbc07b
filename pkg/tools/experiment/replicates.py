#!/usr/bin/env python3
"""
Replicate scheduling: independent realisations of the subgraph count N
"""

import multiprocessing
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import numpy as np

project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from geograph.connection import ConnectionSet
from geograph.graph import build
from motif.counter import count
from motif.template import MotifTemplate
from ppp.density import Density
from ppp.sampler import sample
from ppp.seeds import child_seed
from ppp.window import Window

from utils import resolve_threads


@dataclass(frozen=True)
class ReplicateTask:
    density: Density
    window: Window
    t: float
    connection: ConnectionSet
    template: MotifTemplate
    seed: int


def simulate_count(task: ReplicateTask) -> int:
    """Sample one process, build the geometric graph and count copies of the template"""
    points = sample(task.density, task.window, task.t, task.seed)
    graph = build(points, task.connection)
    return count(graph, task.template).total


def _pool_context():
    if "fork" in multiprocessing.get_all_start_methods():
        return multiprocessing.get_context("fork")
    return multiprocessing.get_context("spawn")


def run_replicates(density: Density, window: Window, t: float, connection: ConnectionSet,
                   template: MotifTemplate, master_seed: int, replicates: int,
                   threads: Optional[int] = None) -> np.ndarray:
    """
    Simulate `replicates` independent counts

    Replicate r uses child_seed(master_seed, r); results are returned in replicate
    order regardless of scheduling, so runs are reproducible for any worker count.
    """
    tasks: List[ReplicateTask] = [
        ReplicateTask(density, window, t, connection, template, child_seed(master_seed, r))
        for r in range(replicates)
    ]
    threads = resolve_threads() if threads is None else threads

    if threads <= 1 or replicates <= 1:
        return np.asarray([simulate_count(task) for task in tasks], dtype=np.int64)

    chunksize = max(1, replicates // (threads * 8))
    with ProcessPoolExecutor(max_workers=threads, mp_context=_pool_context()) as pool:
        counts = list(pool.map(simulate_count, tasks, chunksize=chunksize))
    return np.asarray(counts, dtype=np.int64)
