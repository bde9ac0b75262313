"""Adaptive composite Simpson integration.

Used for the potential antiderivatives F and G whenever a system does not
carry a closed form. The interval is cut into equal base panels and each
panel is refined recursively with the usual 15x Richardson acceptance rule.
"""
from __future__ import annotations

from typing import Callable

from .errors import QuadratureError
from .model import QuadratureConfig

_DEFAULT = QuadratureConfig()


def adaptive_simpson(func: Callable[[float], float], a: float, b: float,
                     cfg: QuadratureConfig = _DEFAULT) -> float:
    """Integral of func over [a, b] to cfg.abs_tol, or QuadratureError."""
    a = float(a)
    b = float(b)
    if a == b:
        return 0.0
    if b < a:
        return -adaptive_simpson(func, b, a, cfg)
    total = 0.0
    tol = cfg.abs_tol / cfg.panels
    width = (b - a) / cfg.panels
    for k in range(cfg.panels):
        pa = a + k * width
        pb = a + (k + 1) * width if k < cfg.panels - 1 else b
        fa = float(func(pa))
        fb = float(func(pb))
        pm = 0.5 * (pa + pb)
        fm = float(func(pm))
        whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb)
        total += _refine(func, pa, fa, pb, fb, pm, fm, whole, tol, cfg.max_depth)
    return total


def _refine(func, a, fa, b, fb, m, fm, whole, tol, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = float(func(lm))
    frm = float(func(rm))
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    if depth <= 0:
        raise QuadratureError(
            "adaptive Simpson ran out of refinement depth",
            estimate=left + right + delta / 15.0,
            error_bound=abs(delta) / 15.0,
        )
    return (_refine(func, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
            + _refine(func, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1))
