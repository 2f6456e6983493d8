"""Pinned-branch complex helpers shared by the map code and both kernel backends.

Principal roots only; integer powers by square-and-multiply. The compiled
backend in ``_kernels.pyx`` reimplements these formulas with the exact same
operation order; any change here must be mirrored there or the bit-for-bit
render parity between backends breaks.
"""

from __future__ import annotations

import math

import numpy as np

# Components beyond this are treated as an escape event, never stored.
OVERFLOW_GUARD = 1e150


def ipow(base: float, n: int) -> float:
    """base**n for integer n >= 1 by square-and-multiply, MSB first."""
    h = 1
    while (h << 1) <= n:
        h <<= 1
    h >>= 1
    r = base
    while h:
        r = r * r
        if n & h:
            r = r * base
        h >>= 1
    return r


def cpow(zr: float, zi: float, n: int) -> tuple[float, float]:
    """(zr + i*zi)**n by square-and-multiply, same order as the kernels."""
    rr, ri = zr, zi
    h = 1
    while (h << 1) <= n:
        h <<= 1
    h >>= 1
    while h:
        tr = rr * rr - ri * ri
        ti = 2.0 * rr * ri
        rr, ri = tr, ti
        if n & h:
            tr = rr * zr - ri * zi
            ti = rr * zi + ri * zr
            rr, ri = tr, ti
        h >>= 1
    return rr, ri


def cpow_vec(zr: np.ndarray, zi: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized cpow; elementwise identical to the scalar version."""
    rr = zr.copy()
    ri = zi.copy()
    h = 1
    while (h << 1) <= n:
        h <<= 1
    h >>= 1
    while h:
        tr = rr * rr - ri * ri
        ti = 2.0 * rr * ri
        rr, ri = tr, ti
        if n & h:
            tr = rr * zr - ri * zi
            ti = rr * zi + ri * zr
            rr, ri = tr, ti
        h >>= 1
    return rr, ri


def modulus(zr: float, zi: float) -> float:
    """sqrt(re^2 + im^2); used instead of abs() wherever a kernel twin exists."""
    return math.sqrt(zr * zr + zi * zi)


def csqrt(re: float, im: float) -> tuple[float, float]:
    """Principal square root: Re >= 0, and Im >= 0 on the negative real axis."""
    if im == 0.0:
        if re >= 0.0:
            return math.sqrt(re), 0.0
        return 0.0, math.sqrt(-re)
    m = math.sqrt(re * re + im * im)
    if re >= 0.0:
        t = math.sqrt(0.5 * (m + re))
        return t, 0.5 * im / t
    t = math.sqrt(0.5 * (m - re))
    return 0.5 * abs(im) / t, (t if im > 0.0 else -t)


def csqrt_vec(re: np.ndarray, im: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized csqrt with the same branches as the scalar version."""
    re = np.asarray(re, dtype=np.float64)
    im = np.asarray(im, dtype=np.float64)
    outr = np.empty(re.shape, dtype=np.float64)
    outi = np.empty(re.shape, dtype=np.float64)

    real_axis = im == 0.0
    pos = real_axis & (re >= 0.0)
    neg = real_axis & ~pos
    outr[pos] = np.sqrt(re[pos])
    outi[pos] = 0.0
    outr[neg] = 0.0
    outi[neg] = np.sqrt(-re[neg])

    gen = ~real_axis
    if gen.any():
        gr = re[gen]
        gi = im[gen]
        m = np.sqrt(gr * gr + gi * gi)
        right = gr >= 0.0
        t = np.where(right, np.sqrt(0.5 * (m + gr)), np.sqrt(0.5 * (m - gr)))
        outr[gen] = np.where(right, t, 0.5 * np.abs(gi) / t)
        outi[gen] = np.where(right, 0.5 * gi / t, np.where(gi > 0.0, t, -t))
    return outr, outi


def principal_root(z: complex, k: int) -> complex:
    """Principal k-th root |z|**(1/k) * exp(i*Arg(z)/k); exact-real for z > 0."""
    zr, zi = z.real, z.imag
    if zi == 0.0 and zr > 0.0:
        return complex(math.pow(zr, 1.0 / k), 0.0)
    r = math.pow(modulus(zr, zi), 1.0 / k)
    th = math.atan2(zi, zr) / k
    return complex(r * math.cos(th), r * math.sin(th))


def escape_radius_for(n: int, amod: float, cmod: float) -> float:
    """Smallest certified escape radius for given degree and parameter moduli.

    Picks the smallest rho in {1.25, 2} with rho**n > 3*max(1, |a|, |c|); if
    neither qualifies, returns (3*max(1,|a|,|c|))**(1/n) * 1.05.  The in-kernel
    per-pixel radius resolution follows this function exactly.
    """
    t = 1.0
    if amod > t:
        t = amod
    if cmod > t:
        t = cmod
    t = 3.0 * t
    if ipow(1.25, n) > t:
        return 1.25
    if ipow(2.0, n) > t:
        return 2.0
    return math.pow(t, 1.0 / n) * 1.05


def escape_radius_vec(n: int, amod: np.ndarray, cmod: np.ndarray) -> np.ndarray:
    """Vectorized escape_radius_for.

    The rare general branch calls math.pow per element so the result is
    bit-identical with the scalar function (and with the compiled kernels,
    which call the same libm pow).
    """
    t = np.asarray(3.0 * np.maximum(1.0, np.maximum(amod, cmod)), dtype=np.float64)
    p125 = ipow(1.25, n)
    p2 = ipow(2.0, n)
    out = np.where(p125 > t, 1.25, np.where(p2 > t, 2.0, 0.0))
    flat = out.ravel()
    tflat = t.ravel()
    rest = np.nonzero(flat == 0.0)[0]
    if rest.size:
        inv_n = 1.0 / n
        for i in rest:
            flat[i] = math.pow(tflat[i], inv_n) * 1.05
    return out
