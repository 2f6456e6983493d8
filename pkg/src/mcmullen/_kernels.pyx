# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled escape-time kernels.

Semantics are kept in lockstep with ``_kernels_py``: same operation order per
point, same branch conventions, same status codes, so the two backends produce
bit-identical output arrays.  All hot loops run without the GIL; the renderer
parallelizes over disjoint row bands at the Python level.

Status codes: 0 bounded, 1 escaped past the radius, 2 pole hit (z**n == 0),
3 component overflow.
"""

from libc.math cimport fabs, pow as c_pow, sqrt

import numpy as np

cdef double OVERFLOW_GUARD = 1e150


cdef inline void zpow_int(double zr, double zi, int n, double* outr, double* outi) nogil:
    # square-and-multiply, MSB first; n >= 1
    cdef double rr = zr, ri = zi, tr, ti
    cdef int h = 1
    while (h << 1) <= n:
        h <<= 1
    h >>= 1
    while h:
        tr = rr * rr - ri * ri
        ti = 2.0 * rr * ri
        rr = tr
        ri = ti
        if n & h:
            tr = rr * zr - ri * zi
            ti = rr * zi + ri * zr
            rr = tr
            ri = ti
        h >>= 1
    outr[0] = rr
    outi[0] = ri


cdef inline double clamp_component(double x) nogil:
    if x != x:
        return 0.0
    if x > OVERFLOW_GUARD:
        return OVERFLOW_GUARD
    if x < -OVERFLOW_GUARD:
        return -OVERFLOW_GUARD
    return x


cdef inline int orbit_point(int n, double ar, double ai, double cr, double ci,
                            double z0r, double z0i, double radius, int max_iter,
                            int* out_step, double* out_mod,
                            double* out_fr, double* out_fi) nogil:
    cdef double zr = z0r, zi = z0i
    cdef double wr, wi, d, qr, qi, nzr, nzi, m2
    cdef double r2 = radius * radius
    cdef int k
    for k in range(1, max_iter + 1):
        zpow_int(zr, zi, n, &wr, &wi)
        d = wr * wr + wi * wi
        if d == 0.0:
            out_step[0] = k
            out_mod[0] = radius * 10.0
            out_fr[0] = zr
            out_fi[0] = zi
            return 2
        qr = (ar * wr + ai * wi) / d
        qi = (ai * wr - ar * wi) / d
        nzr = wr + qr + cr
        nzi = wi + qi + ci
        if not (fabs(nzr) <= OVERFLOW_GUARD and fabs(nzi) <= OVERFLOW_GUARD):
            out_step[0] = k
            out_mod[0] = OVERFLOW_GUARD
            out_fr[0] = clamp_component(nzr)
            out_fi[0] = clamp_component(nzi)
            return 3
        m2 = nzr * nzr + nzi * nzi
        if m2 > r2:
            out_step[0] = k
            out_mod[0] = sqrt(m2)
            out_fr[0] = nzr
            out_fi[0] = nzi
            return 1
        zr = nzr
        zi = nzi
    out_step[0] = max_iter
    out_mod[0] = sqrt(zr * zr + zi * zi)
    out_fr[0] = zr
    out_fi[0] = zi
    return 0


cdef inline void csqrt_p(double re, double im, double* outr, double* outi) nogil:
    # principal branch: Re >= 0, Im >= 0 on the negative real axis
    cdef double m, t
    if im == 0.0:
        if re >= 0.0:
            outr[0] = sqrt(re)
            outi[0] = 0.0
        else:
            outr[0] = 0.0
            outi[0] = sqrt(-re)
        return
    m = sqrt(re * re + im * im)
    if re >= 0.0:
        t = sqrt(0.5 * (m + re))
        outr[0] = t
        outi[0] = 0.5 * im / t
    else:
        t = sqrt(0.5 * (m - re))
        outr[0] = 0.5 * fabs(im) / t
        outi[0] = t if im > 0.0 else -t


cdef inline double auto_radius(int n, double amod, double cmod,
                               double p125, double p2, double inv_n) nogil:
    cdef double t = 1.0
    if amod > t:
        t = amod
    if cmod > t:
        t = cmod
    t = 3.0 * t
    if p125 > t:
        return 1.25
    if p2 > t:
        return 2.0
    return c_pow(t, inv_n) * 1.05


def orbit_batch(int n, double[::1] ar, double[::1] ai, double[::1] cr, double[::1] ci,
                double[::1] z0r, double[::1] z0i, double[::1] radius, int max_iter):
    """Iterate z -> z**n + a/z**n + c from each seed until escape or max_iter."""
    cdef Py_ssize_t size = z0r.shape[0]
    status = np.zeros(size, np.uint8)
    steps = np.empty(size, np.int32)
    mod = np.empty(size, np.float64)
    finr = np.empty(size, np.float64)
    fini = np.empty(size, np.float64)
    cdef unsigned char[::1] stv = status
    cdef int[::1] kv = steps
    cdef double[::1] mv = mod
    cdef double[::1] frv = finr
    cdef double[::1] fiv = fini
    cdef Py_ssize_t i
    cdef int st, step
    cdef double m, fr, fi
    with nogil:
        for i in range(size):
            st = orbit_point(n, ar[i], ai[i], cr[i], ci[i], z0r[i], z0i[i],
                             radius[i], max_iter, &step, &m, &fr, &fi)
            stv[i] = <unsigned char> st
            kv[i] = step
            mv[i] = m
            frv[i] = fr
            fiv[i] = fi
    return status, steps, mod, finr, fini


cdef inline bint sector_inside(double xr, double xi, double rin2, double rout2,
                               double coslo, double sinlo, double coshi, double sinhi) nogil:
    cdef double m2 = xr * xr + xi * xi
    if not (m2 > rin2 and m2 < rout2):
        return 0
    if not (coslo * xi - sinlo * xr > 0.0):
        return 0
    if not (coshi * xi - sinhi * xr < 0.0):
        return 0
    return 1


def sector_stay_batch(int n, double[::1] ar, double[::1] ai, double[::1] cr, double[::1] ci,
                      double[::1] z0r, double[::1] z0i,
                      double[::1] rin2, double[::1] rout2,
                      double[::1] coslo, double[::1] sinlo,
                      double[::1] coshi, double[::1] sinhi, int max_iter):
    """Iterate and test strict membership in a sector annulus at every step."""
    cdef Py_ssize_t size = z0r.shape[0]
    stayed = np.zeros(size, np.uint8)
    steps = np.zeros(size, np.int32)
    cdef unsigned char[::1] sv = stayed
    cdef int[::1] kv = steps
    cdef Py_ssize_t i
    cdef int k
    cdef double zr, zi, wr, wi, d, qr, qi, nzr, nzi
    cdef bint left
    with nogil:
        for i in range(size):
            zr = z0r[i]
            zi = z0i[i]
            if not sector_inside(zr, zi, rin2[i], rout2[i], coslo[i], sinlo[i],
                                 coshi[i], sinhi[i]):
                kv[i] = 0
                continue
            left = 0
            for k in range(1, max_iter + 1):
                zpow_int(zr, zi, n, &wr, &wi)
                d = wr * wr + wi * wi
                if d == 0.0:
                    left = 1
                else:
                    qr = (ar[i] * wr + ai[i] * wi) / d
                    qi = (ai[i] * wr - ar[i] * wi) / d
                    nzr = wr + qr + cr[i]
                    nzi = wi + qi + ci[i]
                    if not (fabs(nzr) <= OVERFLOW_GUARD and fabs(nzi) <= OVERFLOW_GUARD):
                        left = 1
                    elif not sector_inside(nzr, nzi, rin2[i], rout2[i], coslo[i],
                                           sinlo[i], coshi[i], sinhi[i]):
                        left = 1
                if left:
                    kv[i] = k
                    break
                zr = nzr
                zi = nzi
            if not left:
                sv[i] = 1
                kv[i] = max_iter
    return stayed, steps


def mandelbrot_batch(double[::1] cr, double[::1] ci, double radius, int max_iter):
    """Escape-time classification of the orbit of 0 under z -> z**2 + c."""
    cdef Py_ssize_t size = cr.shape[0]
    status = np.zeros(size, np.uint8)
    steps = np.full(size, max_iter, np.int32)
    mod = np.empty(size, np.float64)
    finr = np.empty(size, np.float64)
    fini = np.empty(size, np.float64)
    cdef unsigned char[::1] stv = status
    cdef int[::1] kv = steps
    cdef double[::1] mv = mod
    cdef double[::1] frv = finr
    cdef double[::1] fiv = fini
    cdef double r2 = radius * radius
    cdef Py_ssize_t i
    cdef int k
    cdef double zr, zi, tr, ti, nzr, nzi, m2
    with nogil:
        for i in range(size):
            zr = 0.0
            zi = 0.0
            for k in range(1, max_iter + 1):
                tr = zr * zr - zi * zi
                ti = 2.0 * zr * zi
                nzr = tr + cr[i]
                nzi = ti + ci[i]
                m2 = nzr * nzr + nzi * nzi
                if m2 > r2:
                    stv[i] = 1
                    kv[i] = k
                    mv[i] = sqrt(m2)
                    frv[i] = nzr
                    fiv[i] = nzi
                    break
                zr = nzr
                zi = nzi
            else:
                mv[i] = sqrt(zr * zr + zi * zi)
                frv[i] = zr
                fiv[i] = zi
    return status, steps, mod, finr, fini


def render_dynamical(int n, double ar, double ai, double cr, double ci,
                     double re0, double re1, double im0, double im1,
                     int width, int height, double radius, int max_iter,
                     int row0, int row1,
                     unsigned char[:, ::1] status, int[:, ::1] steps):
    cdef double dx = (re1 - re0) / width
    cdef double dy = (im1 - im0) / height
    cdef int i, j, st, step
    cdef double x, y, m, fr, fi
    with nogil:
        for i in range(row0, row1):
            y = im1 - (i + 0.5) * dy
            for j in range(width):
                x = re0 + (j + 0.5) * dx
                st = orbit_point(n, ar, ai, cr, ci, x, y, radius, max_iter,
                                 &step, &m, &fr, &fi)
                status[i, j] = <unsigned char> st
                steps[i, j] = step


def render_cplane(int n, double ar, double ai, double tvr, double tvi, double amod,
                  double re0, double re1, double im0, double im1,
                  int width, int height, double radius, double p125, double p2,
                  int max_iter, int row0, int row1,
                  unsigned char[:, ::1] status_p, int[:, ::1] steps_p,
                  unsigned char[:, ::1] status_m, int[:, ::1] steps_m):
    # p125/p2 are ipow(1.25, n)/ipow(2, n) precomputed by the caller so both
    # backends branch on identical thresholds
    cdef double dx = (re1 - re0) / width
    cdef double dy = (im1 - im0) / height
    cdef double inv_n = 1.0 / n
    cdef int i, j, st, step
    cdef double x, y, rho, cmod, m, fr, fi
    with nogil:
        for i in range(row0, row1):
            y = im1 - (i + 0.5) * dy
            for j in range(width):
                x = re0 + (j + 0.5) * dx
                if radius > 0.0:
                    rho = radius
                else:
                    cmod = sqrt(x * x + y * y)
                    rho = auto_radius(n, amod, cmod, p125, p2, inv_n)
                st = orbit_point(n, ar, ai, x, y, x + tvr, y + tvi, rho, max_iter,
                                 &step, &m, &fr, &fi)
                status_p[i, j] = <unsigned char> st
                steps_p[i, j] = step
                st = orbit_point(n, ar, ai, x, y, x - tvr, y - tvi, rho, max_iter,
                                 &step, &m, &fr, &fi)
                status_m[i, j] = <unsigned char> st
                steps_m[i, j] = step


def render_aplane(int n, double cr, double ci, double cmod,
                  double re0, double re1, double im0, double im1,
                  int width, int height, double radius, double p125, double p2,
                  int max_iter, int row0, int row1,
                  unsigned char[:, ::1] status_p, int[:, ::1] steps_p,
                  unsigned char[:, ::1] status_m, int[:, ::1] steps_m):
    cdef double dx = (re1 - re0) / width
    cdef double dy = (im1 - im0) / height
    cdef double inv_n = 1.0 / n
    cdef int i, j, st, step
    cdef double x, y, rho, amod, sr, si, tvr, tvi, m, fr, fi
    with nogil:
        for i in range(row0, row1):
            y = im1 - (i + 0.5) * dy
            for j in range(width):
                x = re0 + (j + 0.5) * dx
                if x == 0.0 and y == 0.0:
                    # a = 0 is the degenerate member: escaped at step 1
                    status_p[i, j] = 1
                    steps_p[i, j] = 1
                    status_m[i, j] = 1
                    steps_m[i, j] = 1
                    continue
                amod = sqrt(x * x + y * y)
                if radius > 0.0:
                    rho = radius
                else:
                    rho = auto_radius(n, amod, cmod, p125, p2, inv_n)
                csqrt_p(x, y, &sr, &si)
                tvr = 2.0 * sr
                tvi = 2.0 * si
                st = orbit_point(n, x, y, cr, ci, cr + tvr, ci + tvi, rho, max_iter,
                                 &step, &m, &fr, &fi)
                status_p[i, j] = <unsigned char> st
                steps_p[i, j] = step
                st = orbit_point(n, x, y, cr, ci, cr - tvr, ci - tvi, rho, max_iter,
                                 &step, &m, &fr, &fi)
                status_m[i, j] = <unsigned char> st
                steps_m[i, j] = step
