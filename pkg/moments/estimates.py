#!/usr/bin/env python3
"""
矩估计结果的数据结构
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple


class MomentSource(Enum):
    """估计来源"""
    ANALYTIC_INTEGRAL = "analytic_integral"
    MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True)
class VarianceTerm:
    """方差分解中的一项 n!·‖f_n‖²"""
    n: int
    value: float
    std_error: float


@dataclass(frozen=True)
class MomentEstimates:
    """
    期望、方差、中位数估计

    未计算的量为 None; std_errors 按字段名给出标准误
    """
    source: MomentSource
    expectation: Optional[float] = None
    variance: Optional[float] = None
    median: Optional[float] = None
    std_errors: Dict[str, float] = field(default_factory=dict)
    params: Dict[str, Any] = field(default_factory=dict)
    terms: Tuple[VarianceTerm, ...] = ()

    def __post_init__(self):
        if self.variance is not None and self.variance < 0:
            raise ValueError(f"方差估计为负: {self.variance}")

    def std_error(self, name: str) -> float:
        return self.std_errors.get(name, 0.0)

    def rows(self) -> List[Tuple[str, float, float]]:
        """(quantity, value, std_error) 行, 用于CSV输出"""
        rows = []
        for name in ("expectation", "variance", "median"):
            value = getattr(self, name)
            if value is not None:
                rows.append((name, value, self.std_error(name)))
        for term in self.terms:
            rows.append((f"variance_term_{term.n}", term.value, term.std_error))
        return rows


@dataclass(frozen=True)
class AsymptoticConstants:
    """
    渐近常数

    Attributes:
        a: 𝔼N_t/(t^k ρ_t^{d(k−1)}) 的极限
        A: n → A^{(n)}, 方差第 n 项的极限常数
        K: n → K^{(n)}, A^{(n)} = n!/(k!)²·C(k,n)²·K^{(n)}
        std_errors: 各常数的标准误 (键 'a', 'A1', ..., 'K1', ...)
    """
    a: float
    A: Dict[int, float]
    K: Dict[int, float]
    std_errors: Dict[str, float] = field(default_factory=dict)

    def variance_scale(self, t: float, rho: float, d: int, k: int) -> float:
        """t^k ρ^{d(k−1)} Σ_n (tρ^d)^{k−n} A^{(n)}"""
        base = t ** k * rho ** (d * (k - 1))
        return base * sum((t * rho ** d) ** (k - n) * A_n for n, A_n in self.A.items())
