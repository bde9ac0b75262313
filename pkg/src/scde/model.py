"""Core domain types for scalar density-evolution systems.

A system is the pair of maps (f, g) driving the one-dimensional recursion
x <- f(g(x; eps); eps) on the state interval [0, x_max(eps)], together with
optional closed-form antiderivatives used by the potential machinery.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class QuadratureConfig:
    """Settings for the adaptive composite Simpson integrator.

    panels:    number of equal base panels the interval is split into
    abs_tol:   absolute tolerance for the whole integral
    max_depth: refinement depth allowed inside each panel
    """

    panels: int = 16
    abs_tol: float = 1e-10
    max_depth: int = 30

    def __post_init__(self):
        if self.panels < 1:
            raise DomainError("panels must be a positive integer")
        if self.abs_tol <= 0.0:
            raise DomainError("abs_tol must be positive")
        if self.max_depth < 1:
            raise DomainError("max_depth must be a positive integer")


@dataclass(frozen=True)
class SystemModel:
    """Scalar DE system in a generic severity parameter eps.

    f and g accept (value, eps) where value is a float or a float64 array and
    must return the matching kind. Both maps are nondecreasing in both
    arguments on their domains. F_anti / G_anti, when given, are closed-form
    antiderivatives of f / g in the first argument, vanishing at 0; when
    absent the potential code falls back to quadrature.
    """

    name: str
    f: Callable
    g: Callable
    eps_max: float
    x_max: Callable[[float], float]
    g_prime: Optional[Callable] = None
    F_anti: Optional[Callable] = None
    G_anti: Optional[Callable] = None

    def y_max(self, eps: float) -> float:
        """Largest value g can reach at this eps; the domain edge for f."""
        return float(self.g(self.x_max(eps), eps))

    def gprime(self, x, eps: float):
        """dg/dx, closed form when available, else a scale-aware central difference."""
        if self.g_prime is not None:
            return self.g_prime(x, eps)
        xm = self.x_max(eps)
        h = np.maximum(1e-6, 1e-6 * np.abs(x))
        lo = np.clip(x - h, 0.0, xm)
        hi = np.clip(x + h, 0.0, xm)
        return (self.g(hi, eps) - self.g(lo, eps)) / (hi - lo)

    def check_eps(self, eps: float) -> None:
        if not 0.0 <= eps <= self.eps_max:
            raise DomainError(
                f"eps={eps!r} outside [0, {self.eps_max}] for system {self.name}")


@dataclass(frozen=True)
class FixedPointSet:
    """Stable and unstable fixed points of the uncoupled recursion at one eps.

    x_good is the limit from x0 = 0. When the limit from x0 = x_max is
    distinct it is x_bad, and x_unst is the unstable point between them;
    otherwise both are None.
    """

    x_good: float
    x_unst: Optional[float]
    x_bad: Optional[float]
    eps: float

    @property
    def bistable(self) -> bool:
        return self.x_bad is not None


@dataclass(frozen=True)
class ThresholdPair:
    """Algorithmic and potential thresholds with achieved bisection widths."""

    eps_s: float
    eps_c: float
    bracket_s: float
    bracket_c: float

    def __post_init__(self):
        if self.eps_s > self.eps_c + self.bracket_s + self.bracket_c:
            raise DomainError("eps_s must not exceed eps_c")
