"""Erasure density evolution for a GLDPC ensemble with t-error-correcting
component codes of length n.

Variable-node map: f(y; eps) = eps * y.
Check-node map:    g(x) = P[Bin(n-1, x) >= e], the chance that a component
decoder sees too many erased neighbours to fix a bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .. import _kernels
from ..errors import DomainError
from ..model import SystemModel


@dataclass(frozen=True)
class GldpcParams:
    n: int = 15
    e: int = 3

    def __post_init__(self):
        if self.n < 3:
            raise DomainError("component code length n must be >= 3")
        if not 1 <= self.e <= self.n - 1:
            raise DomainError("decoding radius e must lie in [1, n-1]")


@lru_cache(maxsize=None)
def _comb_row(m: int) -> np.ndarray:
    row = np.array([math.comb(m, i) for i in range(m + 1)], dtype=np.float64)
    row.setflags(write=False)
    return row


def gldpc_g(x, params: GldpcParams):
    """Binomial tail P[Bin(n-1, x) >= e]. Scalar in, scalar out; array in, array out."""
    row = _comb_row(params.n - 1)
    if isinstance(x, np.ndarray):
        arr = np.ascontiguousarray(x, dtype=np.float64)
        return _kernels.binomial_tail(arr, row, params.e)
    arr = np.array([float(x)], dtype=np.float64)
    return float(_kernels.binomial_tail(arr, row, params.e)[0])


def gldpc_g_prime(x, params: GldpcParams):
    """Closed-form derivative (n-1) C(n-2, e-1) x^(e-1) (1-x)^(n-1-e)."""
    n, e = params.n, params.e
    coef = float((n - 1) * math.comb(n - 2, e - 1))
    if isinstance(x, np.ndarray):
        xv = np.asarray(x, dtype=np.float64)
        return coef * xv ** (e - 1) * (1.0 - xv) ** (n - 1 - e)
    xv = float(x)
    return coef * xv ** (e - 1) * (1.0 - xv) ** (n - 1 - e)


def gldpc_potential(x, params: GldpcParams, eps: float):
    """Closed-form single potential (e/n) g - x(1-x)/n g' - (eps/2) g^2."""
    g = gldpc_g(x, params)
    gp = gldpc_g_prime(x, params)
    n = params.n
    return (params.e / n) * g - x * (1.0 - x) / n * gp - 0.5 * eps * g * g


def gldpc_system(params: Optional[GldpcParams] = None) -> SystemModel:
    """SystemModel for the ensemble; eps is the channel erasure rate in [0, 1]."""
    p = params if params is not None else GldpcParams()

    def f(y, eps):
        return eps * y

    def F_anti(y, eps):
        return 0.5 * eps * y * y

    def g(x, eps):
        return gldpc_g(x, p)

    def g_prime(x, eps):
        return gldpc_g_prime(x, p)

    return SystemModel(
        name=f"gldpc(n={p.n},e={p.e})",
        f=f,
        g=g,
        g_prime=g_prime,
        F_anti=F_anti,
        G_anti=None,  # integrated numerically; the closed-form potential cross-checks it
        eps_max=1.0,
        x_max=lambda eps: 1.0,
    )
