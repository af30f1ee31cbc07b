#!/usr/bin/env python3
"""
motif包 - 模式图、副本计数与结构不等式
"""

from .template import (MAX_TEMPLATE_VERTICES, PRESETS, MotifTemplate, SearchSlot, TemplateError,
                       preset_names, template_from_edges, template_from_preset)
from .census import CopyCensus
from .counter import count
from .brute_force import (MAX_ORACLE_POINTS, OracleSizeError, brute_force_count,
                          configuration_adjacency, kernel_value, ordered_kernel_sum,
                          points_copy_counts, tuple_copy_counts)
from .condition import (ConditionCheck, check_condition, deletion_inequality_holds,
                        permutation_products_holds, product_max_min_holds)


__all__ = [
    'MotifTemplate',
    'SearchSlot',
    'template_from_edges',
    'template_from_preset',
    'preset_names',
    'PRESETS',
    'MAX_TEMPLATE_VERTICES',
    'CopyCensus',
    'count',
    'brute_force_count',
    'tuple_copy_counts',
    'points_copy_counts',
    'configuration_adjacency',
    'kernel_value',
    'ordered_kernel_sum',
    'MAX_ORACLE_POINTS',
    'ConditionCheck',
    'check_condition',
    'product_max_min_holds',
    'permutation_products_holds',
    'deletion_inequality_holds',
    'TemplateError',
    'OracleSizeError',
]
