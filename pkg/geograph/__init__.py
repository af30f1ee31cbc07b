#!/usr/bin/env python3
"""
geograph包 - 连接集合与几何图
"""

from .connection import (ConnectionKind, ConnectionSet, ConnectionSetError,
                         DimensionMismatchError, connects)
from .graph import GeoGraph, VertexIndexError, build
from .export import build_dot, visualize_geograph, write_edge_csv


__all__ = [
    'ConnectionSet',
    'ConnectionKind',
    'connects',
    'GeoGraph',
    'build',
    'write_edge_csv',
    'build_dot',
    'visualize_geograph',
    'ConnectionSetError',
    'DimensionMismatchError',
    'VertexIndexError',
]
