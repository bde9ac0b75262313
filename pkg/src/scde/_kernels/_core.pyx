# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels for the coupled-recursion inner loops."""

import numpy as np

from libc.math cimport floor, pow


def correlate_window(double[::1] values, double[::1] weights, double right_fill):
    """out[j] = sum_d weights[d] * values[j + d]; reads past the end use right_fill."""
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t w = weights.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t j, d, k
    cdef double acc
    with nogil:
        for j in range(n):
            acc = 0.0
            for d in range(w):
                k = j + d
                if k < n:
                    acc = acc + weights[d] * values[k]
                else:
                    acc = acc + weights[d] * right_fill
            out[j] = acc
    return out_arr


def correlate_window_back(double[::1] values, double[::1] weights, double left_fill):
    """out[i] = sum_d weights[d] * values[i - d]; reads before the start use left_fill."""
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t w = weights.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, d, k
    cdef double acc
    with nogil:
        for i in range(n):
            acc = 0.0
            for d in range(w):
                k = i - d
                if k >= 0:
                    acc = acc + weights[d] * values[k]
                else:
                    acc = acc + weights[d] * left_fill
            out[i] = acc
    return out_arr


def binomial_tail(double[::1] x, double[::1] comb, Py_ssize_t e):
    """P[Bin(m, x) >= e] with m = len(comb) - 1 and comb[i] = C(m, i).

    Kahan-compensated sum over the lighter side of the distribution,
    smallest terms first.
    """
    cdef Py_ssize_t m = comb.shape[0] - 1
    cdef Py_ssize_t npts = x.shape[0]
    out_arr = np.empty(npts, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t p, i
    cdef double xv, acc, c, term, yv, tv
    if e <= 0:
        out_arr[:] = 1.0
        return out_arr
    with nogil:
        for p in range(npts):
            xv = x[p]
            acc = 0.0
            c = 0.0
            if xv * m < e:
                for i in range(m, e - 1, -1):
                    term = comb[i] * pow(xv, <double> i) * pow(1.0 - xv, <double> (m - i))
                    yv = term - c
                    tv = acc + yv
                    c = (tv - acc) - yv
                    acc = tv
                out[p] = acc
            else:
                for i in range(e):
                    term = comb[i] * pow(xv, <double> i) * pow(1.0 - xv, <double> (m - i))
                    yv = term - c
                    tv = acc + yv
                    c = (tv - acc) - yv
                    acc = tv
                out[p] = 1.0 - acc
    return out_arr


def pchip_eval_uniform(double u0, double h, double[::1] yk, double[::1] dk,
                       double[::1] u):
    """Cubic Hermite interpolant with knots u0 + k*h, values yk, slopes dk."""
    cdef Py_ssize_t n = yk.shape[0]
    cdef Py_ssize_t npts = u.shape[0]
    out_arr = np.empty(npts, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t p, idx
    cdef double t, t2, t3, ui
    with nogil:
        for p in range(npts):
            ui = u[p]
            idx = <Py_ssize_t> floor((ui - u0) / h)
            if idx < 0:
                idx = 0
            elif idx > n - 2:
                idx = n - 2
            t = (ui - (u0 + idx * h)) / h
            t2 = t * t
            t3 = t2 * t
            out[p] = (yk[idx] * (2.0 * t3 - 3.0 * t2 + 1.0)
                      + h * dk[idx] * (t3 - 2.0 * t2 + t)
                      + yk[idx + 1] * (-2.0 * t3 + 3.0 * t2)
                      + h * dk[idx + 1] * (t3 - t2))
    return out_arr
