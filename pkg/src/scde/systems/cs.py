"""State evolution for AMP compressive sensing with a Bernoulli-Gaussian prior.

Scalar channel: Y = sqrt(s) S + Z with Z ~ N(0,1) and
S ~ (1 - rho) delta_0 + rho N(0, gaussian_var). mmse(s) and the mutual
information I(S; Y) are computed by composite Gauss-Legendre quadrature with
panels laid out on both length scales of the mixture density of Y.

The prior is used exactly as written above, so E[S^2] = rho * gaussian_var.
With gaussian_var = 1 (the default) the signal power is rho; passing
normalize_signal_power=True to cs_system rescales the Gaussian component to
variance 1/rho so that E[S^2] = 1. Both conventions are exposed because
published threshold figures do not always state which one was used.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.interpolate import PchipInterpolator

from .. import _kernels
from ..errors import DomainError, QuadratureError
from ..model import SystemModel

_LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class CsParams:
    snr: float = 1e5
    rho: float = 0.1
    delta: float = 0.18

    def __post_init__(self):
        if self.snr <= 0.0:
            raise DomainError("snr must be positive")
        if not 0.0 < self.rho < 1.0:
            raise DomainError("rho must lie in (0, 1)")
        if not 0.0 < self.delta <= 1.0:
            raise DomainError("measurement rate delta must lie in (0, 1]")

    @property
    def eps(self) -> float:
        """Generic severity parameter: the inverse measurement rate."""
        return 1.0 / self.delta


def delta_to_eps(delta: float) -> float:
    return 1.0 / delta


def eps_to_delta(eps: float) -> float:
    return 1.0 / eps


class ScalarChannelOracle:
    """Gauss-Legendre quadrature tables for mmse(s) and I(S; sqrt(s) S + Z).

    Every integral is evaluated at panel_order and 2*panel_order nodes per
    panel; the difference is the reported error estimate and must stay below
    atol. Panel edges are placed on integer multiples of both standard
    deviations of the observation mixture, so neither scale is undersampled.
    """

    def __init__(self, rho: float, gaussian_var: float = 1.0,
                 panel_order: int = 24, atol: float = 1e-10):
        if not 0.0 < rho < 1.0:
            raise DomainError("rho must lie in (0, 1)")
        if gaussian_var <= 0.0:
            raise DomainError("gaussian_var must be positive")
        if panel_order * 12 < 127:
            raise DomainError("panel_order too small for the node-count floor")
        self.rho = float(rho)
        self.var = float(gaussian_var)
        self.panel_order = int(panel_order)
        self.atol = float(atol)
        self._tables = {}
        for order in (panel_order, 2 * panel_order):
            xg, wg = np.polynomial.legendre.leggauss(order)
            self._tables[order] = (xg, wg)

    @property
    def prior_var(self) -> float:
        return self.rho * self.var

    def _edges(self, s: float) -> np.ndarray:
        sig = math.sqrt(1.0 + s * self.var)
        edges = [float(k) for k in range(13)]                 # noise scale
        edges += [k * sig for k in range(1, 13)]              # signal scale
        edges = sorted(e for e in edges if e <= 12.0 * sig + 1e-12)
        dedup = [edges[0]]
        for e in edges[1:]:
            if e - dedup[-1] > 1e-9 * max(1.0, e):
                dedup.append(e)
        return np.asarray(dedup)

    def _points(self, s: float, order: int):
        edges = self._edges(s)
        xg, wg = self._tables[order]
        a = edges[:-1]
        half = 0.5 * (edges[1:] - a)
        mid = a + half
        pts = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
        wts = (half[:, None] * wg[None, :]).ravel()
        return pts, wts

    def _log_mixture(self, y: np.ndarray, s: float) -> np.ndarray:
        v1 = 1.0 + s * self.var
        la = math.log1p(-self.rho) - 0.5 * _LOG_2PI - 0.5 * y * y
        lb = (math.log(self.rho) - 0.5 * (_LOG_2PI + math.log(v1))
              - 0.5 * y * y / v1)
        return np.logaddexp(la, lb)

    def _log_signal_branch(self, y: np.ndarray, s: float) -> np.ndarray:
        v1 = 1.0 + s * self.var
        return (math.log(self.rho) - 0.5 * (_LOG_2PI + math.log(v1))
                - 0.5 * y * y / v1)

    def mmse(self, s: float) -> float:
        """E[(S - E[S|Y])^2] for Y = sqrt(s) S + Z."""
        s = float(s)
        if s < 0.0:
            raise DomainError("channel strength s must be nonnegative")
        if s == 0.0:
            return self.prior_var
        v1 = 1.0 + s * self.var
        slope = math.sqrt(s) * self.var / v1  # conditional-mean gain on the signal branch

        def second_moment(order):
            pts, wts = self._points(s, order)
            lp = self._log_mixture(pts, s)
            lb = self._log_signal_branch(pts, s)
            integrand = np.exp(2.0 * lb - lp) * pts * pts
            return 2.0 * float(np.dot(wts, integrand))

        lo = second_moment(self.panel_order)
        hi = second_moment(2 * self.panel_order)
        err = slope * slope * abs(hi - lo)
        if err > self.atol:
            raise QuadratureError("mmse quadrature above tolerance",
                                  estimate=self.prior_var - slope * slope * hi,
                                  error_bound=err)
        val = self.prior_var - slope * slope * hi
        return min(max(val, 0.0), self.prior_var)

    def mutual_info(self, s: float) -> float:
        """I(S; sqrt(s) S + Z) in nats: h(Y) - h(Z)."""
        s = float(s)
        if s < 0.0:
            raise DomainError("channel strength s must be nonnegative")
        if s == 0.0:
            return 0.0

        def neg_entropy_part(order):
            pts, wts = self._points(s, order)
            lp = self._log_mixture(pts, s)
            integrand = np.exp(lp) * lp
            return 2.0 * float(np.dot(wts, integrand))

        lo = neg_entropy_part(self.panel_order)
        hi = neg_entropy_part(2 * self.panel_order)
        if abs(hi - lo) > self.atol:
            raise QuadratureError("mutual-information quadrature above tolerance",
                                  estimate=-hi - 0.5 * (_LOG_2PI + 1.0),
                                  error_bound=abs(hi - lo))
        val = -hi - 0.5 * (_LOG_2PI + 1.0)  # h(Y) minus h(Z) for unit-variance Z
        if val < 0.0:
            if val < -10.0 * self.atol:
                raise QuadratureError("negative mutual information", estimate=val)
            val = 0.0
        return val


class MmseCurve:
    """mmse(s) cached as a monotone PCHIP interpolant on a uniform log-s grid.

    Inside the grid the cubic Hermite kernel is used; outside, values come
    from the oracle directly. The interpolation error budget against the
    direct quadrature is about 1e-9 absolute for the default point count.
    """

    def __init__(self, oracle: ScalarChannelOracle, s_lo: float, s_hi: float,
                 points: int = 12289):
        if not 0.0 < s_lo < s_hi:
            raise DomainError("need 0 < s_lo < s_hi")
        self.oracle = oracle
        self.u0 = math.log(s_lo)
        self.u1 = math.log(s_hi)
        grid = np.linspace(self.u0, self.u1, points)
        self.h = grid[1] - grid[0]
        vals = np.array([oracle.mmse(math.exp(u)) for u in grid])
        interp = PchipInterpolator(grid, vals)
        self.yk = np.ascontiguousarray(vals)
        self.dk = np.ascontiguousarray(interp.derivative()(grid))

    def _eval_scalar(self, s: float) -> float:
        if s <= 0.0 or not (self.u0 <= math.log(s) <= self.u1):
            return self.oracle.mmse(s)
        u = np.array([math.log(s)], dtype=np.float64)
        return float(_kernels.pchip_eval_uniform(self.u0, self.h, self.yk, self.dk, u)[0])

    def __call__(self, s):
        if not isinstance(s, np.ndarray):
            return self._eval_scalar(float(s))
        s = np.asarray(s, dtype=np.float64)
        out = np.empty_like(s)
        pos = s > 0.0
        u = np.full_like(s, self.u0)
        u[pos] = np.log(s[pos])
        inside = pos & (u >= self.u0) & (u <= self.u1)
        if inside.any():
            out[inside] = _kernels.pchip_eval_uniform(
                self.u0, self.h, self.yk, self.dk, np.ascontiguousarray(u[inside]))
        misses = ~inside
        if misses.any():
            out[misses] = [self.oracle.mmse(v) for v in s[misses]]
        return out


@lru_cache(maxsize=None)
def _shared_oracle(rho: float, gaussian_var: float) -> ScalarChannelOracle:
    return ScalarChannelOracle(rho, gaussian_var)


@lru_cache(maxsize=8)
def _shared_curve(rho: float, gaussian_var: float, snr: float, eps_max: float,
                  points: int) -> MmseCurve:
    oracle = _shared_oracle(rho, gaussian_var)
    s_floor = 1.0 / (1.0 / snr + eps_max * rho * gaussian_var)
    return MmseCurve(oracle, 0.5 * s_floor, snr, points=points)


def mmse_bg(s: float, rho: float, gaussian_var: float = 1.0) -> float:
    """Direct-quadrature mmse of the Bernoulli-Gaussian scalar channel."""
    return _shared_oracle(float(rho), float(gaussian_var)).mmse(s)


def mutual_info_bg(s: float, rho: float, gaussian_var: float = 1.0) -> float:
    """Direct-quadrature mutual information of the same channel, in nats."""
    return _shared_oracle(float(rho), float(gaussian_var)).mutual_info(s)


def cs_system(params: CsParams = CsParams(), *, normalize_signal_power: bool = False,
              eps_max: float = 20.0, cache_points: int = 12289) -> SystemModel:
    """State-evolution SystemModel in the generic parameter eps = 1/delta.

    The maps are
        g(x; eps) = snr - 1 / (1/snr + eps * x)
        f(y)      = mmse(snr - y)
    so f(g(x)) = mmse(1 / (1/snr + eps * x)). f is served from the cached
    log-grid interpolant; the curve is shared across calls with equal
    (rho, power convention, snr, eps_max, cache_points).
    """
    snr = params.snr
    rho = params.rho
    var = (1.0 / rho) if normalize_signal_power else 1.0
    curve = _shared_curve(rho, var, snr, float(eps_max), int(cache_points))
    xmax = rho * var

    def f(y, eps):
        return curve(snr - y)

    def g(x, eps):
        return snr - 1.0 / (1.0 / snr + eps * x)

    def g_prime(x, eps):
        b = 1.0 / snr + eps * x
        return eps / (b * b)

    def G_anti(x, eps):
        if eps == 0.0:
            return 0.0 * x
        return snr * x - np.log1p(snr * eps * x) / eps

    tag = "normalized" if normalize_signal_power else "verbatim"
    return SystemModel(
        name=f"cs(snr={snr:g},rho={rho:g},{tag})",
        f=f,
        g=g,
        g_prime=g_prime,
        F_anti=None,  # integrated numerically; the mutual-information form cross-checks it
        G_anti=G_anti,
        eps_max=float(eps_max),
        x_max=lambda eps: xmax,
    )


def cs_potential(x: float, params: CsParams, *,
                 normalize_signal_power: bool = False) -> float:
    """Closed-form single potential at measurement rate params.delta.

    Uses the identity that the antiderivative of mmse is twice the mutual
    information, so no numerical integration of f is involved.
    """
    snr = params.snr
    delta = params.delta
    var = (1.0 / params.rho) if normalize_signal_power else 1.0
    oracle = _shared_oracle(params.rho, var)
    x = float(x)
    if x == 0.0:
        return 0.0
    b = 1.0 / snr + x / delta   # posterior noise variance; effective channel is 1/b
    return (-x / b + delta * math.log1p(x * snr / delta)
            - 2.0 * oracle.mutual_info(snr) + 2.0 * oracle.mutual_info(1.0 / b))
