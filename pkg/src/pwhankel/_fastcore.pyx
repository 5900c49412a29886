# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementation of the hot kernels.

Function-for-function twin of ``pwhankel._kernels_py``; see that module
for the reference semantics.  Selected automatically by
``pwhankel._backend`` when the extension has been built.
"""

import numpy as np

from libc.math cimport ceil, cos, exp, sin, sqrt

cdef double PI = 3.141592653589793238462643383279502884

BACKEND_NAME = "compiled"


cdef inline double _psi(double t, double lo, double hi) nogil:
    cdef double a, b
    if t <= lo:
        return 1.0
    if t >= hi:
        return 0.0
    a = exp(-1.0 / (hi - t))
    b = exp(-1.0 / (t - lo))
    return a / (a + b)


def psi_eval(t, double lo, double hi):
    t = np.ascontiguousarray(t, dtype=np.float64)
    out = np.empty(t.shape[0], dtype=np.float64)
    cdef double[::1] tv = t
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(tv.shape[0]):
            ov[i] = _psi(tv[i], lo, hi)
    return out


def phi_hat_sum(px, py, centers, double r, double lo, double hi):
    px = np.ascontiguousarray(px, dtype=np.float64)
    py = np.ascontiguousarray(py, dtype=np.float64)
    centers = np.ascontiguousarray(centers, dtype=np.float64)
    out = np.zeros(px.shape[0], dtype=np.float64)
    cdef double[::1] xv = px
    cdef double[::1] yv = py
    cdef double[:, ::1] cv = centers
    cdef double[::1] ov = out
    cdef Py_ssize_t i, j, nc = cv.shape[0]
    cdef double dx, dy, d2, acc, sup2 = (r * hi) * (r * hi)
    with nogil:
        for i in range(xv.shape[0]):
            acc = 0.0
            for j in range(nc):
                dx = xv[i] - cv[j, 0]
                dy = yv[i] - cv[j, 1]
                d2 = dx * dx + dy * dy
                if d2 < sup2:
                    acc += _psi(sqrt(d2) / r, lo, hi)
            ov[i] = acc
    return out


def hankel_matrix(row_x, row_y, row_sqw, col_x, col_y, col_sqw,
                  centers, double r, double lo, double hi):
    row_x = np.ascontiguousarray(row_x, dtype=np.float64)
    row_y = np.ascontiguousarray(row_y, dtype=np.float64)
    row_sqw = np.ascontiguousarray(row_sqw, dtype=np.float64)
    col_x = np.ascontiguousarray(col_x, dtype=np.float64)
    col_y = np.ascontiguousarray(col_y, dtype=np.float64)
    col_sqw = np.ascontiguousarray(col_sqw, dtype=np.float64)
    centers = np.ascontiguousarray(centers, dtype=np.float64)
    cdef Py_ssize_t nr = row_x.shape[0], nc = col_x.shape[0]
    m = np.empty((nr, nc), dtype=np.float64)
    cdef double[::1] rx = row_x, ry = row_y, rw = row_sqw
    cdef double[::1] cx = col_x, cy = col_y, cw = col_sqw
    cdef double[:, ::1] cen = centers
    cdef double[:, ::1] mv = m
    cdef Py_ssize_t i, k, j, ncen = cen.shape[0]
    cdef double sx, sy, dx, dy, d2, acc, rwi, rxi, ryi
    cdef double sup2 = (r * hi) * (r * hi)
    with nogil:
        for i in range(nr):
            rxi = rx[i]
            ryi = ry[i]
            rwi = rw[i]
            for k in range(nc):
                sx = cx[k] + rxi
                sy = cy[k] + ryi
                acc = 0.0
                for j in range(ncen):
                    dx = sx - cen[j, 0]
                    dy = sy - cen[j, 1]
                    d2 = dx * dx + dy * dy
                    if d2 < sup2:
                        acc += _psi(sqrt(d2) / r, lo, hi)
                mv[i, k] = rwi * acc * cw[k]
    return m


def phase_sector_lp(s, long n, double rho, int power,
                    long min_nodes, double pts_per_osc):
    s = np.ascontiguousarray(s, dtype=np.float64)
    out = np.empty(s.shape[0], dtype=np.float64)
    theta = 2.0 * np.pi * np.arange(n) / n
    ct_arr = np.cos(theta)
    st_arr = np.sin(theta)
    cdef double[::1] sv = s
    cdef double[::1] ov = out
    cdef double[::1] ct = ct_arr
    cdef double[::1] st = st_arr
    cdef double half = PI / n
    cdef bint even = (n % 2 == 0)
    cdef Py_ssize_t midx, i, j, m, nhalf = n // 2
    cdef double sm, z, dalpha, alpha, ca, sa, ph, re, im, v, acc, w
    with nogil:
        for midx in range(sv.shape[0]):
            sm = sv[midx]
            m = <Py_ssize_t>ceil(pts_per_osc * rho * sm * half)
            if m < min_nodes:
                m = min_nodes
            dalpha = half / m
            z = 2.0 * PI * rho * sm
            acc = 0.0
            for i in range(m + 1):
                alpha = i * dalpha
                ca = cos(alpha)
                sa = sin(alpha)
                if even:
                    re = 0.0
                    for j in range(nhalf):
                        ph = z * (ca * ct[j] + sa * st[j])
                        re += cos(ph)
                    re *= 2.0
                    im = 0.0
                else:
                    re = 0.0
                    im = 0.0
                    for j in range(n):
                        ph = z * (ca * ct[j] + sa * st[j])
                        re += cos(ph)
                        im += sin(ph)
                if power == 2:
                    v = re * re + im * im
                else:
                    v = sqrt(re * re + im * im)
                w = 0.5 if (i == 0 or i == m) else 1.0
                acc += w * v
            ov[midx] = 2.0 * n * acc * dalpha
    return out
