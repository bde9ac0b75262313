"""Pure-numpy kernels mirroring the accumulation order of the compiled ones.

Each function keeps the same elementwise operation sequence as its compiled
twin so the two backends agree to a few ulp.
"""
import numpy as np


def correlate_window(values, weights, right_fill):
    """out[j] = sum_d weights[d] * values[j + d]; reads past the end use right_fill."""
    values = np.asarray(values, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    n = values.shape[0]
    w = weights.shape[0]
    if w > 1:
        padded = np.concatenate([values, np.full(w - 1, float(right_fill))])
    else:
        padded = values
    out = weights[0] * padded[:n]
    for d in range(1, w):
        out = out + weights[d] * padded[d:d + n]
    return out


def correlate_window_back(values, weights, left_fill):
    """out[i] = sum_d weights[d] * values[i - d]; reads before the start use left_fill."""
    values = np.asarray(values, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    n = values.shape[0]
    w = weights.shape[0]
    if w > 1:
        padded = np.concatenate([np.full(w - 1, float(left_fill)), values])
    else:
        padded = values
    base = w - 1
    out = weights[0] * padded[base:base + n]
    for d in range(1, w):
        out = out + weights[d] * padded[base - d:base - d + n]
    return out


def binomial_tail(x, comb, e):
    """P[Bin(m, x) >= e] with m = len(comb) - 1 and comb[i] = C(m, i).

    The sum is taken over whichever side of the distribution carries less
    mass, smallest terms first, with Kahan compensation.
    """
    x = np.asarray(x, dtype=np.float64)
    comb = np.asarray(comb, dtype=np.float64)
    m = comb.shape[0] - 1
    if e <= 0:
        return np.ones_like(x)
    out = np.empty_like(x)
    lower = x * m < e
    out[lower] = _kahan_terms(x[lower], comb, m, range(m, e - 1, -1))
    upper = ~lower
    out[upper] = 1.0 - _kahan_terms(x[upper], comb, m, range(0, e))
    return out


def _kahan_terms(x, comb, m, order):
    acc = np.zeros_like(x)
    c = np.zeros_like(x)
    for i in order:
        term = comb[i] * x ** float(i) * (1.0 - x) ** float(m - i)
        y = term - c
        t = acc + y
        c = (t - acc) - y
        acc = t
    return acc


def pchip_eval_uniform(u0, h, yk, dk, u):
    """Cubic Hermite interpolant with knots u0 + k*h, values yk, slopes dk."""
    yk = np.asarray(yk, dtype=np.float64)
    dk = np.asarray(dk, dtype=np.float64)
    u = np.asarray(u, dtype=np.float64)
    n = yk.shape[0]
    idx = np.floor((u - u0) / h).astype(np.int64)
    np.clip(idx, 0, n - 2, out=idx)
    t = (u - (u0 + idx * h)) / h
    t2 = t * t
    t3 = t2 * t
    y0 = yk[idx]
    y1 = yk[idx + 1]
    d0 = dk[idx]
    d1 = dk[idx + 1]
    return (y0 * (2.0 * t3 - 3.0 * t2 + 1.0)
            + h * d0 * (t3 - 2.0 * t2 + t)
            + y1 * (-2.0 * t3 + 3.0 * t2)
            + h * d1 * (t3 - t2))
