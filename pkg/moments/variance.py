#!/usr/bin/env python3
"""
子图计数的方差

𝕍N_t = Σ_{n=1}^{k} n!·‖f_n‖², 其中
‖f_n‖² = c_n(t)·∫ I^y (∫ I^x J dx)² dy,
c_n(t) = t^{2k−n} ρ^{d(2k−n−1)} / (k!)² · C(k,n)²。
"""

import logging
import math
from typing import List, Optional

from geograph.connection import ConnectionSet
from motif.template import MotifTemplate
from ppp.density import Density
from ppp.integrability import require_integrable
from ppp.window import Window

from .estimates import AsymptoticConstants, MomentEstimates, MomentSource, VarianceTerm
from .expectation import _check_samples, asymptotic_a_estimate, limit_mass
from .integrals import (DEFAULT_BATCH_SIZE, AnchorSampler, ball_squared_copy_integral,
                        run_batches, variance_term_integrand)

logger = logging.getLogger(__name__)

DEFAULT_INNER_SAMPLES = 32


def variance_coefficient(n: int, k: int, d: int, t: float, rho: float) -> float:
    """c_n(t)"""
    return (t ** (2 * k - n) * rho ** (d * (2 * k - n - 1))
            / math.factorial(k) ** 2 * math.comb(k, n) ** 2)


def variance_terms(density: Density, H: MotifTemplate, S: ConnectionSet, t: float, rho: float,
                   n_samples: int, inner_samples: int = DEFAULT_INNER_SAMPLES,
                   seed: int = 0) -> List[VarianceTerm]:
    """逐项估计 n!·‖f_n‖², n = 1..k"""
    require_integrable(density, H.k)
    _check_samples(n_samples)
    k = H.k
    terms = []
    for n in range(1, k + 1):
        sampler = AnchorSampler(density, 2 * k - n)
        integrand = variance_term_integrand(density, H, S, rho, n, inner_samples, sampler)
        batch = DEFAULT_BATCH_SIZE if n == k else max(1, DEFAULT_BATCH_SIZE // inner_samples)
        result = run_batches(integrand, n_samples, seed * 64 + n, batch_size=batch)
        factor = math.factorial(n) * variance_coefficient(n, k, density.d, t, rho)
        terms.append(VarianceTerm(n=n, value=factor * result.mean,
                                  std_error=factor * result.std_error))
        logger.debug(f"方差第 {n} 项: {terms[-1].value:.6g} ± {terms[-1].std_error:.3g}")
    return terms


def variance_numeric(density: Density, H: MotifTemplate, S: ConnectionSet, t: float, rho: float,
                     n_samples: int, inner_samples: int = DEFAULT_INNER_SAMPLES,
                     seed: int = 0) -> MomentEstimates:
    """
    蒙特卡罗估计 𝕍N_t

    Returns:
        MomentEstimates: variance 与各项 terms, 标准误按独立项合成
    """
    terms = variance_terms(density, H, S, t, rho, n_samples, inner_samples, seed)
    variance = sum(term.value for term in terms)
    std_error = math.sqrt(sum(term.std_error ** 2 for term in terms))
    logger.info(f"方差估计: {variance:.6g} ± {std_error:.3g} (t={t}, ρ={rho}, H={H.name})")
    return MomentEstimates(
        source=MomentSource.ANALYTIC_INTEGRAL,
        variance=variance,
        std_errors={"variance": std_error},
        params={"t": t, "rho": rho, "template": H.name, "density": density.family.value,
                "n_samples": n_samples, "inner_samples": inner_samples},
        terms=tuple(terms),
    )


def asymptotic_K_n_estimate(density: Density, H: MotifTemplate, S: ConnectionSet, n: int,
                            n_samples: int, inner_samples: int = DEFAULT_INNER_SAMPLES,
                            seed: int = 0, window: Optional[Window] = None):
    """K^{(n)} = ∫ m^{2k−n} · ∫_{B^{n−1}} (∫_{B^{k−n}} J)², 返回 (值, 标准误); 窗口含义同 a"""
    k = H.k
    if not 1 <= n <= k:
        raise ValueError(f"n 必须在 1..{k} 内: {n}")
    mass = limit_mass(density, 2 * k - n, k, window)
    ball = ball_squared_copy_integral(H, S, density.d, n, n_samples, inner_samples, seed)
    return mass * ball.mean, mass * ball.std_error


def _A_factor(n: int, k: int) -> float:
    return math.factorial(n) / math.factorial(k) ** 2 * math.comb(k, n) ** 2


def asymptotic_A_n(density: Density, H: MotifTemplate, S: ConnectionSet, n: int,
                   n_samples: int = 20_000, inner_samples: int = DEFAULT_INNER_SAMPLES,
                   seed: int = 0, window: Optional[Window] = None) -> float:
    """A^{(n)} = n!/(k!)²·C(k,n)²·K^{(n)}"""
    K, _ = asymptotic_K_n_estimate(density, H, S, n, n_samples, inner_samples, seed, window)
    return _A_factor(n, H.k) * K


def asymptotic_constants(density: Density, H: MotifTemplate, S: ConnectionSet, n_samples: int,
                         inner_samples: int = DEFAULT_INNER_SAMPLES,
                         seed: int = 0, window: Optional[Window] = None) -> AsymptoticConstants:
    """
    一次计算 a, A^{(n)}, K^{(n)} 及其标准误

    window 给定时计算固定窗口 W 内过程的极限常数 (∫ m^q 换成 ∫_W m^q)
    """
    a, a_se = asymptotic_a_estimate(density, H, S, n_samples, seed, window)
    A, K, errors = {}, {}, {"a": a_se}
    for n in range(1, H.k + 1):
        K_n, K_se = asymptotic_K_n_estimate(density, H, S, n, n_samples, inner_samples,
                                            seed * 64 + n, window)
        K[n] = K_n
        A[n] = _A_factor(n, H.k) * K_n
        errors[f"K{n}"] = K_se
        errors[f"A{n}"] = _A_factor(n, H.k) * K_se
    return AsymptoticConstants(a=a, A=A, K=K, std_errors=errors)
