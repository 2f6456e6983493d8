"""Pure-NumPy escape-time kernels: the fallback backend.

Arithmetic here is kept in lockstep with the compiled backend in
``_kernels.pyx``: same operation order per point, same branch conventions,
same status codes, so both backends produce bit-identical output arrays.
Live orbits are index-compacted every sweep, so cost tracks the number of
still-undecided points rather than the full batch.

Status codes: 0 bounded, 1 escaped past the radius, 2 pole hit (z**n == 0),
3 component overflow.
"""

from __future__ import annotations

import math

import numpy as np

from ._cmath import OVERFLOW_GUARD, cpow_vec, csqrt_vec

BACKEND_NAME = "python"


def _auto_radius_arr(n, amod, cmod, p125, p2):
    # same branch structure as the compiled auto_radius; the general branch
    # calls libm pow per element, matching the compiled kernel exactly
    t = 3.0 * np.maximum(1.0, np.maximum(amod, cmod))
    out = np.where(p125 > t, 1.25, np.where(p2 > t, 2.0, 0.0))
    rest = np.nonzero(out == 0.0)[0]
    if rest.size:
        inv_n = 1.0 / n
        for i in rest:
            out[i] = math.pow(t[i], inv_n) * 1.05
    return out


def _clamp_components(v: np.ndarray) -> np.ndarray:
    v = np.where(np.isnan(v), 0.0, v)
    return np.clip(v, -OVERFLOW_GUARD, OVERFLOW_GUARD)


def orbit_batch(n, ar, ai, cr, ci, z0r, z0i, radius, max_iter):
    """Iterate z -> z**n + a/z**n + c from each seed until escape or max_iter.

    All array arguments are 1-d float64 of equal length (parameters are
    pre-broadcast by the caller).  Returns (status, steps, modulus, final_re,
    final_im).
    """
    ar = np.ascontiguousarray(ar, np.float64)
    ai = np.ascontiguousarray(ai, np.float64)
    cr = np.ascontiguousarray(cr, np.float64)
    ci = np.ascontiguousarray(ci, np.float64)
    z0r = np.ascontiguousarray(z0r, np.float64)
    z0i = np.ascontiguousarray(z0i, np.float64)
    rad = np.ascontiguousarray(radius, np.float64)

    size = z0r.shape[0]
    status = np.zeros(size, np.uint8)
    steps = np.full(size, max_iter, np.int32)
    mod = np.empty(size, np.float64)
    finr = z0r.copy()
    fini = z0i.copy()

    idx = np.arange(size)
    zr = z0r.copy()
    zi = z0i.copy()
    lar, lai, lcr, lci, lrad = ar.copy(), ai.copy(), cr.copy(), ci.copy(), rad.copy()
    lr2 = lrad * lrad

    with np.errstate(all="ignore"):
        for k in range(1, max_iter + 1):
            if idx.size == 0:
                break
            wr, wi = cpow_vec(zr, zi, n)
            d = wr * wr + wi * wi
            pole = d == 0.0
            dd = np.where(pole, 1.0, d)
            qr = (lar * wr + lai * wi) / dd
            qi = (lai * wr - lar * wi) / dd
            nzr = wr + qr + lcr
            nzi = wi + qi + lci
            over = ~((np.abs(nzr) <= OVERFLOW_GUARD) & (np.abs(nzi) <= OVERFLOW_GUARD))
            over &= ~pole
            m2 = nzr * nzr + nzi * nzi
            esc = (m2 > lr2) & ~pole & ~over
            done = pole | over | esc
            if done.any():
                g = idx
                if pole.any():
                    sel = g[pole]
                    status[sel] = 2
                    steps[sel] = k
                    mod[sel] = lrad[pole] * 10.0
                    finr[sel] = zr[pole]
                    fini[sel] = zi[pole]
                if over.any():
                    sel = g[over]
                    status[sel] = 3
                    steps[sel] = k
                    mod[sel] = OVERFLOW_GUARD
                    finr[sel] = _clamp_components(nzr[over])
                    fini[sel] = _clamp_components(nzi[over])
                if esc.any():
                    sel = g[esc]
                    status[sel] = 1
                    steps[sel] = k
                    mod[sel] = np.sqrt(m2[esc])
                    finr[sel] = nzr[esc]
                    fini[sel] = nzi[esc]
                keep = ~done
                idx = idx[keep]
                zr = nzr[keep]
                zi = nzi[keep]
                lar = lar[keep]
                lai = lai[keep]
                lcr = lcr[keep]
                lci = lci[keep]
                lrad = lrad[keep]
                lr2 = lr2[keep]
            else:
                zr = nzr
                zi = nzi

    if idx.size:
        mod[idx] = np.sqrt(zr * zr + zi * zi)
        finr[idx] = zr
        fini[idx] = zi
    return status, steps, mod, finr, fini


def sector_stay_batch(n, ar, ai, cr, ci, z0r, z0i,
                      rin2, rout2, coslo, sinlo, coshi, sinhi, max_iter):
    """Iterate and test strict membership in a sector annulus at every step.

    The angular test uses precomputed boundary-ray direction cosines (sector
    width < pi), avoiding per-step trig.  steps = number of applications after
    which the orbit first left (0 if the seed is already outside), or max_iter
    with stayed=1 if it never left.
    """
    z0r = np.ascontiguousarray(z0r, np.float64)
    z0i = np.ascontiguousarray(z0i, np.float64)
    size = z0r.shape[0]
    stayed = np.zeros(size, np.uint8)
    steps = np.zeros(size, np.int32)

    idx = np.arange(size)
    zr = z0r.copy()
    zi = z0i.copy()
    live = [np.ascontiguousarray(v, np.float64).copy()
            for v in (ar, ai, cr, ci, rin2, rout2, coslo, sinlo, coshi, sinhi)]

    def _inside(xr, xi, l):
        m2 = xr * xr + xi * xi
        ok = (m2 > l[4]) & (m2 < l[5])
        ok &= (l[6] * xi - l[7] * xr) > 0.0
        ok &= (l[8] * xi - l[9] * xr) < 0.0
        return ok

    with np.errstate(all="ignore"):
        out0 = ~_inside(zr, zi, live)
        if out0.any():
            steps[idx[out0]] = 0
            keep = ~out0
            idx = idx[keep]
            zr = zr[keep]
            zi = zi[keep]
            live = [v[keep] for v in live]

        for k in range(1, max_iter + 1):
            if idx.size == 0:
                break
            wr, wi = cpow_vec(zr, zi, n)
            d = wr * wr + wi * wi
            pole = d == 0.0
            dd = np.where(pole, 1.0, d)
            qr = (live[0] * wr + live[1] * wi) / dd
            qi = (live[1] * wr - live[0] * wi) / dd
            nzr = wr + qr + live[2]
            nzi = wi + qi + live[3]
            bad = pole | ~((np.abs(nzr) <= OVERFLOW_GUARD) & (np.abs(nzi) <= OVERFLOW_GUARD))
            left = bad | ~_inside(nzr, nzi, live)
            if left.any():
                steps[idx[left]] = k
                keep = ~left
                idx = idx[keep]
                zr = nzr[keep]
                zi = nzi[keep]
                live = [v[keep] for v in live]
            else:
                zr = nzr
                zi = nzi

    if idx.size:
        stayed[idx] = 1
        steps[idx] = max_iter
    return stayed, steps


def mandelbrot_batch(cr, ci, radius, max_iter):
    """Escape-time classification of the orbit of 0 under z -> z**2 + c."""
    cr = np.ascontiguousarray(cr, np.float64)
    ci = np.ascontiguousarray(ci, np.float64)
    size = cr.shape[0]
    status = np.zeros(size, np.uint8)
    steps = np.full(size, max_iter, np.int32)
    mod = np.empty(size, np.float64)
    finr = np.zeros(size, np.float64)
    fini = np.zeros(size, np.float64)

    idx = np.arange(size)
    zr = np.zeros(size, np.float64)
    zi = np.zeros(size, np.float64)
    lcr = cr.copy()
    lci = ci.copy()
    r2 = radius * radius

    for k in range(1, max_iter + 1):
        if idx.size == 0:
            break
        tr = zr * zr - zi * zi
        ti = 2.0 * zr * zi
        nzr = tr + lcr
        nzi = ti + lci
        m2 = nzr * nzr + nzi * nzi
        esc = m2 > r2
        if esc.any():
            sel = idx[esc]
            status[sel] = 1
            steps[sel] = k
            mod[sel] = np.sqrt(m2[esc])
            finr[sel] = nzr[esc]
            fini[sel] = nzi[esc]
            keep = ~esc
            idx = idx[keep]
            zr = nzr[keep]
            zi = nzi[keep]
            lcr = lcr[keep]
            lci = lci[keep]
        else:
            zr = nzr
            zi = nzi

    if idx.size:
        mod[idx] = np.sqrt(zr * zr + zi * zi)
        finr[idx] = zr
        fini[idx] = zi
    return status, steps, mod, finr, fini


def _pixel_grid(re0, re1, im0, im1, width, height, row0, row1):
    dx = (re1 - re0) / width
    dy = (im1 - im0) / height
    cols = np.arange(width, dtype=np.float64)
    rows = np.arange(row0, row1, dtype=np.float64)
    x = re0 + (cols + 0.5) * dx
    y = im1 - (rows + 0.5) * dy
    xr = np.broadcast_to(x, (rows.size, width)).ravel()
    yi = np.repeat(y, width)
    return xr.copy(), yi


def render_dynamical(n, ar, ai, cr, ci, re0, re1, im0, im1, width, height,
                     radius, max_iter, row0, row1, status, steps):
    xr, yi = _pixel_grid(re0, re1, im0, im1, width, height, row0, row1)
    size = xr.shape[0]
    full = np.full
    st, ks, _, _, _ = orbit_batch(
        n, full(size, ar), full(size, ai), full(size, cr), full(size, ci),
        xr, yi, full(size, radius), max_iter)
    shape = (row1 - row0, width)
    status[row0:row1] = st.reshape(shape)
    steps[row0:row1] = ks.reshape(shape)


def render_cplane(n, ar, ai, tvr, tvi, amod, re0, re1, im0, im1, width, height,
                  radius, p125, p2, max_iter, row0, row1,
                  status_p, steps_p, status_m, steps_m):
    xr, yi = _pixel_grid(re0, re1, im0, im1, width, height, row0, row1)
    size = xr.shape[0]
    if radius > 0.0:
        rad = np.full(size, radius)
    else:
        cmod = np.sqrt(xr * xr + yi * yi)
        rad = _auto_radius_arr(n, np.full(size, amod), cmod, p125, p2)
    aar = np.full(size, ar)
    aai = np.full(size, ai)
    shape = (row1 - row0, width)
    st, ks, _, _, _ = orbit_batch(n, aar, aai, xr, yi, xr + tvr, yi + tvi, rad, max_iter)
    status_p[row0:row1] = st.reshape(shape)
    steps_p[row0:row1] = ks.reshape(shape)
    st, ks, _, _, _ = orbit_batch(n, aar, aai, xr, yi, xr - tvr, yi - tvi, rad, max_iter)
    status_m[row0:row1] = st.reshape(shape)
    steps_m[row0:row1] = ks.reshape(shape)


def render_aplane(n, cr, ci, cmod, re0, re1, im0, im1, width, height,
                  radius, p125, p2, max_iter, row0, row1,
                  status_p, steps_p, status_m, steps_m):
    xr, yi = _pixel_grid(re0, re1, im0, im1, width, height, row0, row1)
    size = xr.shape[0]
    amod = np.sqrt(xr * xr + yi * yi)
    if radius > 0.0:
        rad = np.full(size, radius)
    else:
        rad = _auto_radius_arr(n, amod, np.full(size, cmod), p125, p2)
    sr, si = csqrt_vec(xr, yi)
    tvr = 2.0 * sr
    tvi = 2.0 * si
    ccr = np.full(size, cr)
    cci = np.full(size, ci)
    degenerate = (xr == 0.0) & (yi == 0.0)
    shape = (row1 - row0, width)
    for sign, st_out, k_out in ((1.0, status_p, steps_p), (-1.0, status_m, steps_m)):
        st, ks, _, _, _ = orbit_batch(
            n, xr, yi, ccr, cci, ccr + sign * tvr, cci + sign * tvi, rad, max_iter)
        # a = 0 is the degenerate member: render as escaped at step 1
        st[degenerate] = 1
        ks[degenerate] = 1
        st_out[row0:row1] = st.reshape(shape)
        k_out[row0:row1] = ks.reshape(shape)
