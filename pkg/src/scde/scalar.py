"""Uncoupled (single-system) density evolution: iteration, fixed points,
potential function, energy gap, and the two thresholds.

The potential of a system is
    U(x; eps) = x g(x; eps) - G(x; eps) - F(g(x; eps); eps)
with F, G the antiderivatives of f, g vanishing at 0. Its derivative is
g'(x) (x - f(g(x))), so stable fixed points of the recursion are minima and
the unstable one is the local maximum in between.
"""
from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .errors import (
    ConvergenceError,
    DomainError,
    NoThresholdError,
    StructureError,
)
from .model import FixedPointSet, QuadratureConfig, SystemModel, ThresholdPair
from .quadrature import adaptive_simpson

_DEFAULT_QUAD = QuadratureConfig()

# Iteration limits; the stuck rule aborts runs whose per-step decrement has
# collapsed while the iterate is still far from its target.
DEFAULT_FP_TOL = 1e-12
DEFAULT_MAX_ITER = 1_000_000
_STUCK_DELTA = 1e-14


def de_step(system: SystemModel, x: float, eps: float) -> float:
    """One update x -> f(g(x; eps); eps), with domain checks on both ends."""
    system.check_eps(eps)
    xm = system.x_max(eps)
    if not -1e-12 <= x <= xm + 1e-12:
        raise DomainError(f"state x={x!r} outside [0, {xm}] for {system.name}")
    x = min(max(float(x), 0.0), xm)
    v = float(system.f(system.g(x, eps), eps))
    if v < 0.0:
        if v < -1e-12:
            raise DomainError(f"update produced {v!r} < 0; system maps are inconsistent")
        v = 0.0
    elif v > xm:
        if v > xm + 1e-12:
            raise DomainError(f"update produced {v!r} > x_max={xm}")
        v = xm
    return v


def _iterate(system, eps, x0, tol, max_iter, stuck_target=None):
    """Iterate to |step| < tol. Returns (x, iterations, status).

    status is 'converged', 'maxiter', or 'stuck'. The stuck verdict needs a
    target: it fires when the decrement drops below _STUCK_DELTA while the
    iterate is still more than 10*tol away from it.
    """
    x = float(x0)
    it = 0
    for it in range(1, max_iter + 1):
        xn = de_step(system, x, eps)
        d = abs(xn - x)
        x = xn
        if (stuck_target is not None and d < _STUCK_DELTA
                and abs(x - stuck_target) > 10.0 * tol):
            return x, it, "stuck"
        if d < tol:
            return x, it, "converged"
    return x, it, "maxiter"


def run_uncoupled(system: SystemModel, eps: float, x0: float,
                  tol: float = DEFAULT_FP_TOL, max_iter: int = DEFAULT_MAX_ITER):
    """Run the recursion from x0 until the step size drops below tol.

    Returns (limit, iterations, trajectory) where trajectory includes x0 and
    the final iterate. Raises ConvergenceError with the last state attached
    when max_iter is exhausted.
    """
    x = float(x0)
    traj = [x]
    for it in range(1, max_iter + 1):
        xn = de_step(system, x, eps)
        traj.append(xn)
        d = abs(xn - x)
        x = xn
        if d < tol:
            return x, it, np.asarray(traj)
    raise ConvergenceError(
        f"no convergence within {max_iter} iterations at eps={eps}",
        last_value=x, residual=abs(traj[-1] - traj[-2]), iterations=max_iter)


def find_fixed_points(system: SystemModel, eps: float,
                      tol: float = DEFAULT_FP_TOL,
                      max_iter: int = DEFAULT_MAX_ITER) -> FixedPointSet:
    """Stable fixed points from both ends of the state interval, plus the
    unstable point between them when they differ."""
    x_good, _, st = _iterate(system, eps, 0.0, tol, max_iter)
    if st == "maxiter":
        raise ConvergenceError(f"run from 0 did not settle at eps={eps}",
                               last_value=x_good, iterations=max_iter)
    xm = system.x_max(eps)
    x_top, _, st = _iterate(system, eps, xm, tol, max_iter)
    if st == "maxiter":
        raise ConvergenceError(f"run from x_max did not settle at eps={eps}",
                               last_value=x_top, iterations=max_iter)
    if abs(x_top - x_good) <= 10.0 * tol:
        return FixedPointSet(x_good=x_good, x_unst=None, x_bad=None, eps=eps)

    def h(x):
        return de_step(system, x, eps) - x

    span = x_top - x_good
    a = x_good + 1e-3 * span
    b = x_top - 1e-3 * span
    ha, hb = h(a), h(b)
    if not (ha < 0.0 < hb):
        a, b = _scan_bracket(h, x_good, x_top)
    x_unst = _bisect_root(h, a, b, tol)
    return FixedPointSet(x_good=x_good, x_unst=x_unst, x_bad=x_top, eps=eps)


def _scan_bracket(h, lo, hi, points=256):
    """Find the single -..+ sign change of h strictly inside (lo, hi)."""
    xs = np.linspace(lo, hi, points + 2)[1:-1]
    vals = np.array([h(x) for x in xs])
    sign = np.sign(vals)
    flips = np.nonzero((sign[:-1] < 0) & (sign[1:] > 0))[0]
    if len(flips) != 1:
        raise StructureError(
            f"expected exactly one unstable crossing, found {len(flips)}")
    k = flips[0]
    return xs[k], xs[k + 1]


def _bisect_root(h, a, b, tol, max_iter=200):
    ha = h(a)
    for _ in range(max_iter):
        if b - a < tol:
            break
        m = 0.5 * (a + b)
        hm = h(m)
        if (ha < 0.0) == (hm < 0.0):
            a, ha = m, hm
        else:
            b = m
    return 0.5 * (a + b)


def single_potential(system: SystemModel, x: float, eps: float,
                     cfg: QuadratureConfig = _DEFAULT_QUAD) -> float:
    """U(x; eps), using closed-form antiderivatives when the system has them."""
    system.check_eps(eps)
    x = float(x)
    gx = float(system.g(x, eps))
    if system.G_anti is not None:
        G = float(system.G_anti(x, eps))
    else:
        G = adaptive_simpson(lambda t: float(system.g(t, eps)), 0.0, x, cfg)
    if system.F_anti is not None:
        F = float(system.F_anti(gx, eps))
    else:
        F = adaptive_simpson(lambda t: float(system.f(t, eps)), 0.0, gx, cfg)
    return x * gx - G - F


def energy_gap(system: SystemModel, eps: float, *,
               tol: float = DEFAULT_FP_TOL, max_iter: int = DEFAULT_MAX_ITER,
               cfg: QuadratureConfig = _DEFAULT_QUAD,
               fixed_points: Optional[FixedPointSet] = None) -> float:
    """U(x_bad) - U(x_good); positive between the two thresholds."""
    fps = fixed_points if fixed_points is not None else find_fixed_points(
        system, eps, tol, max_iter)
    if fps.x_bad is None:
        raise StructureError(f"energy gap undefined at eps={eps}: single fixed point")
    return (single_potential(system, fps.x_bad, eps, cfg)
            - single_potential(system, fps.x_good, eps, cfg))


def _good_phase_predicate(system, eps, fp_tol, max_iter):
    """True when the run from x_max lands on the low fixed point.

    Two refinements over the naive 'reaches the from-0 limit' test: the run
    from x_max aborts as stuck when its decrement collapses far from the
    target, and the from-0 limit itself must sit in the lower half of the
    state interval. The second clause matters for systems where the low
    branch disappears at large eps, which would otherwise make the
    predicate non-monotone.
    """
    x_lo, _, _ = _iterate(system, eps, 0.0, fp_tol, max_iter)
    xm = system.x_max(eps)
    x_hi, _, st = _iterate(system, eps, xm, fp_tol, max_iter, stuck_target=x_lo)
    if st == "stuck":
        return False
    return abs(x_hi - x_lo) <= 10.0 * fp_tol and x_lo <= 0.5 * xm


def algorithmic_threshold(system: SystemModel, tol: float = 1e-4, *,
                          fp_tol: float = DEFAULT_FP_TOL,
                          max_iter: int = DEFAULT_MAX_ITER) -> float:
    """Largest eps below which plain iteration from x_max still reaches the
    good fixed point; bisection to bracket width tol."""
    lo, hi = 0.0, system.eps_max
    if not _good_phase_predicate(system, lo, fp_tol, max_iter):
        raise NoThresholdError("iteration fails even at eps=0")
    if _good_phase_predicate(system, hi, fp_tol, max_iter):
        raise NoThresholdError("iteration succeeds across the whole eps range")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _good_phase_predicate(system, mid, fp_tol, max_iter):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _positive_gap_side(system, eps, fp_tol, max_iter, cfg):
    """Sign classification for the potential-threshold bisection.

    Below the algorithmic threshold the gap is undefined (single low fixed
    point) and counts as positive side; past the disappearance of the low
    branch the single fixed point is high and counts as negative side.
    """
    fps = find_fixed_points(system, eps, fp_tol, max_iter)
    if fps.x_bad is None:
        return fps.x_good <= 0.5 * system.x_max(eps)
    return energy_gap(system, eps, cfg=cfg, fixed_points=fps) > 0.0


def potential_threshold(system: SystemModel, tol: float = 1e-4, *,
                        eps_s: Optional[float] = None,
                        fp_tol: float = DEFAULT_FP_TOL,
                        max_iter: int = DEFAULT_MAX_ITER,
                        cfg: QuadratureConfig = _DEFAULT_QUAD) -> float:
    """eps at which the energy gap changes sign; bisection starting at eps_s."""
    lo = eps_s if eps_s is not None else algorithmic_threshold(
        system, tol, fp_tol=fp_tol, max_iter=max_iter)
    hi = system.eps_max
    if _positive_gap_side(system, hi, fp_tol, max_iter, cfg):
        raise NoThresholdError("energy gap never turns negative below eps_max")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _positive_gap_side(system, mid, fp_tol, max_iter, cfg):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def solve_thresholds(system: SystemModel, tol: float = 1e-4, *,
                     fp_tol: float = DEFAULT_FP_TOL,
                     max_iter: int = DEFAULT_MAX_ITER,
                     cfg: QuadratureConfig = _DEFAULT_QUAD) -> ThresholdPair:
    """Both thresholds with the achieved bracket widths."""
    eps_s = algorithmic_threshold(system, tol, fp_tol=fp_tol, max_iter=max_iter)
    eps_c = potential_threshold(system, tol, eps_s=eps_s, fp_tol=fp_tol,
                                max_iter=max_iter, cfg=cfg)
    return ThresholdPair(eps_s=eps_s, eps_c=eps_c, bracket_s=tol, bracket_c=tol)


# Labels emitted by classify_potential_shape.
SHAPE_UNIQUE_MINIMUM = "unique_minimum"
SHAPE_NO_SECOND_MINIMUM = "no_second_minimum"
SHAPE_TWO_MINIMA_POSITIVE_GAP = "two_minima_positive_gap"
SHAPE_TWO_MINIMA_NEGATIVE_GAP = "two_minima_negative_gap"
SHAPE_ZERO_GAP = "zero_gap"
SHAPE_INFLECTION_ONSET = "inflection_onset"


def classify_potential_shape(system: SystemModel, eps: float, *,
                             grid_points: int = 4096,
                             zero_gap_rtol: float = 0.08,
                             inflection_rtol: float = 0.02,
                             cfg: QuadratureConfig = _DEFAULT_QUAD) -> str:
    """Coarse phase label of U(.; eps) from its critical-point structure.

    Critical points of U are the roots of h(x) = f(g(x)) - x. Three roots
    mean two minima; the gap decides between the positive, zero (within
    zero_gap_rtol of the barrier height), and negative labels. One root is a
    unique minimum, labelled no_second_minimum when it sits in the upper
    half of the state interval (the low branch has vanished), and
    inflection_onset when h comes within inflection_rtol of grazing zero
    away from the root.
    """
    system.check_eps(eps)
    xm = system.x_max(eps)
    xs = np.linspace(0.0, xm, grid_points)
    hv = np.asarray(system.f(system.g(xs, eps), eps), dtype=float) - xs

    roots = []
    if abs(hv[0]) <= 1e-9 * max(xm, 1e-300):
        roots.append(0.0)
    sign = np.sign(hv)
    flips = np.nonzero(sign[:-1] * sign[1:] < 0)[0]

    def h(x):
        return float(system.f(system.g(float(x), eps), eps)) - float(x)

    for k in flips:
        roots.append(_bisect_root(h, xs[k], xs[k + 1], 1e-13 * max(xm, 1.0)))

    if len(roots) >= 3:
        u_lo = single_potential(system, roots[0], eps, cfg)
        u_mid = single_potential(system, roots[len(roots) // 2], eps, cfg)
        u_hi = single_potential(system, roots[-1], eps, cfg)
        gap = u_hi - u_lo
        barrier = max(abs(u_mid - u_lo), abs(u_mid - u_hi), 1e-300)
        if abs(gap) <= zero_gap_rtol * barrier:
            return SHAPE_ZERO_GAP
        return (SHAPE_TWO_MINIMA_POSITIVE_GAP if gap > 0.0
                else SHAPE_TWO_MINIMA_NEGATIVE_GAP)
    if len(roots) == 2:
        return SHAPE_INFLECTION_ONSET

    # Single minimum: test whether h grazes zero away from it.
    root = roots[0] if roots else float(xs[np.argmin(np.abs(hv))])
    margin = 0.05 * xm
    if root <= 0.5 * xm:
        region = xs > root + margin
        graze = hv[region].max() if region.any() else -np.inf
    else:
        region = xs < root - margin
        graze = -hv[region].min() if region.any() else -np.inf
    scale = np.abs(hv).max()
    if graze > -inflection_rtol * scale:
        return SHAPE_INFLECTION_ONSET
    return SHAPE_NO_SECOND_MINIMUM if root > 0.5 * xm else SHAPE_UNIQUE_MINIMUM
