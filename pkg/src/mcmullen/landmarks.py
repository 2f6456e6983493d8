"""Closed-form landmarks and boundedness-locus scans.

The superattracting centers c_plus = a^(1/2n) - 2*sqrt(a) and its mirror
c_minus = -c_plus, the parameter where the two mirrored components share the
origin as center, the real-axis intervals the components occupy in the
small-a regime, and grid scans of critical-orbit boundedness over parameter
windows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from ._cmath import csqrt_vec, escape_radius_vec, modulus
from .core import (CERTIFY_MAX_ITER, EscapeSettings, MapParams, eval_map)
from .regions import (A_DIRECT, STANDARD, TIGHT, ParamWindow, make_uprime)

I2_LEFT_OF_I1 = "I2_left_of_I1"
OVERLAPPING = "overlapping"
I1_LEFT_OF_I2 = "I1_left_of_I2"


@dataclass(frozen=True)
class CenterPair:
    """Superattracting centers of the two mirrored components; c_minus is the
    exact negation of c_plus."""

    n: int
    a: float
    c_plus: complex
    c_minus: complex


def baby_center(n: int, a: float, which: str = "plus") -> complex:
    """Center parameter at which the tracked critical point is a fixed point.

    which="plus": c = a^(1/2n) - 2*sqrt(a), fixing the critical point
    a^(1/2n). which="minus": the mirror -c; for odd n this fixes -a^(1/2n).
    The fixed-point identity is verified to 1e-12 before returning.
    """
    if not (isinstance(a, (int, float)) and a > 0):
        raise ValueError("centers are defined for real a > 0")
    if which not in ("plus", "minus"):
        raise ValueError('which must be "plus" or "minus"')
    a = float(a)
    p = math.pow(a, 1.0 / (2 * n))
    c_plus = p - 2.0 * math.sqrt(a)
    c = c_plus if which == "plus" else -c_plus
    crit = p if which == "plus" else -p
    if which == "plus" or n % 2 == 1:
        err = abs(eval_map(MapParams(n, a, c), crit) - crit)
        if err > 1e-12:
            raise AssertionError(f"fixed-point check failed: residual {err}")
    return complex(c)


def center_pair(n: int, a: float) -> CenterPair:
    cp = baby_center(n, a, "plus")
    return CenterPair(n, float(a), cp, -cp)


def overlap_parameter(n: int) -> float:
    """The a-value (1/4)^(n/(n-1)) at which the two mirrored components share
    the same center, namely the origin."""
    if n < 2:
        raise ValueError("need n >= 2")
    return math.pow(0.25, n / (n - 1.0))


@dataclass(frozen=True)
class IntervalPair:
    """Real-axis intervals occupied by the two components in the small-a
    regime: I1 = [omega1, omega2], I2 = its reflection [-omega2, -omega1]."""

    n: int
    a: float
    omega1: float
    omega2: float

    @property
    def i1(self) -> tuple[float, float]:
        return (self.omega1, self.omega2)

    @property
    def i2(self) -> tuple[float, float]:
        return (-self.omega2, -self.omega1)

    @property
    def verdict(self) -> str:
        if self.omega1 > 0.0:
            return I2_LEFT_OF_I1
        if self.omega2 < 0.0:
            return I1_LEFT_OF_I2
        return OVERLAPPING


def interval_positions(n: int, a: float) -> IntervalPair:
    """omega1 = (4/5) a^(1/n) - 2 sqrt(a), omega2 = 5/4 - 2 sqrt(a); both
    decrease strictly as a grows, so the intervals slide through each other."""
    a = float(a)
    if not 0.0 < a < math.pow(25.0 / 16.0, n):
        raise ValueError("need 0 < a < (25/16)**n for a nondegenerate interval")
    root = 2.0 * math.sqrt(a)
    omega1 = 0.8 * math.pow(a, 1.0 / n) - root
    omega2 = 1.25 - root
    if not omega1 < omega2:
        raise ValueError("degenerate interval: omega1 >= omega2")
    return IntervalPair(n, a, omega1, omega2)


@dataclass
class ScanResult:
    """Boundedness-locus scan over a parameter window's natural grid."""

    window: ParamWindow
    params: np.ndarray            # complex parameter per grid node
    member: np.ndarray            # closed window membership (all True on the natural grid)
    bounded_global: np.ndarray    # tracked critical orbit stays within the escape radius
    bounded_in_uprime: np.ndarray  # tracked critical orbit never leaves the sector domain
    grid_shape: tuple[int, int]
    center: complex | None
    contains_center: bool | None

    @property
    def nonempty(self) -> bool:
        return bool(self.bounded_global.any())

    @property
    def nonempty_in_uprime(self) -> bool:
        return bool(self.bounded_in_uprime.any())

    def component_count(self, which: str = "global") -> int:
        """Advisory: 4-connected components of the sampled locus."""
        mask = (self.bounded_global if which == "global"
                else self.bounded_in_uprime).reshape(self.grid_shape)
        seen = np.zeros_like(mask, dtype=bool)
        count = 0
        rows, cols = mask.shape
        for i in range(rows):
            for j in range(cols):
                if mask[i, j] and not seen[i, j]:
                    count += 1
                    stack = [(i, j)]
                    seen[i, j] = True
                    while stack:
                        y, x = stack.pop()
                        for dy, dx in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                            yy, xx = y + dy, x + dx
                            if 0 <= yy < rows and 0 <= xx < cols and mask[yy, xx] and not seen[yy, xx]:
                                seen[yy, xx] = True
                                stack.append((yy, xx))
        return count


def _window_sector_arrays(window: ParamWindow, params_arr: np.ndarray):
    """Per-parameter sector-domain data (rin2, rout2, ray cosines) for the
    in-sector boundedness test."""
    n = window.n
    size = params_arr.shape[0]
    if window.kind == A_DIRECT:
        amod = np.abs(params_arr)
        psi = np.angle(params_arr)
        r_in = 0.5 * np.power(amod, 1.0 / n)
        r_out = np.full(size, 2.0)
        lo = (psi - math.pi) / (2 * n)
        hi = (psi + math.pi) / (2 * n)
    else:
        sec = make_uprime(MapParams(n, window.a, 0j), window.k,
                          TIGHT if window.regime == TIGHT else STANDARD)
        r_in = np.full(size, sec.r_in)
        r_out = np.full(size, sec.r_out)
        lo = np.full(size, sec.theta_lo)
        hi = np.full(size, sec.theta_hi)
    return (r_in * r_in, r_out * r_out,
            np.cos(lo), np.sin(lo), np.cos(hi), np.sin(hi))


def _scan_arrays(window: ParamWindow, params_arr: np.ndarray,
                 settings: EscapeSettings):
    """(bounded_global, bounded_in_uprime) for the tracked critical orbit
    (v_plus) at each parameter."""
    n = window.n
    size = params_arr.shape[0]
    if window.kind == A_DIRECT:
        ar = np.ascontiguousarray(params_arr.real)
        ai = np.ascontiguousarray(params_arr.imag)
        cr = np.full(size, window.c.real)
        ci = np.full(size, window.c.imag)
        sr, si = csqrt_vec(ar, ai)
        vr = cr + 2.0 * sr
        vi = ci + 2.0 * si
        amod = np.abs(params_arr)
        cmod = np.full(size, modulus(window.c.real, window.c.imag))
    else:
        ar = np.full(size, window.a.real)
        ai = np.full(size, window.a.imag)
        cr = np.ascontiguousarray(params_arr.real)
        ci = np.ascontiguousarray(params_arr.imag)
        vr = cr + window.offset.real
        vi = ci + window.offset.imag
        amod = np.full(size, modulus(window.a.real, window.a.imag))
        cmod = np.abs(params_arr)

    if settings.escape_radius is not None:
        rad = np.full(size, settings.escape_radius)
    else:
        rad = escape_radius_vec(n, amod, cmod)
    impl = _backend.impl
    st, _, _, _, _ = impl.orbit_batch(n, ar, ai, cr, ci, vr, vi, rad,
                                      settings.max_iter)
    sector = _window_sector_arrays(window, params_arr)
    stayed, _ = impl.sector_stay_batch(n, ar, ai, cr, ci, vr, vi, *sector,
                                       settings.max_iter)
    return st == 0, stayed == 1


def scan_boundedness_locus(window: ParamWindow, grid_density: int = 64,
                           settings: EscapeSettings | None = None) -> ScanResult:
    """Rasterize the window in its natural modulus-by-argument coordinates and
    classify the tracked critical orbit at every node, both globally (stays
    within the escape radius) and relative to the sector domain (never leaves
    it). Reports whether the locus is nonempty and whether it contains the
    closed-form center (defined for c-plane windows with k = 0)."""
    if grid_density < 16:
        raise ValueError("need grid_density >= 16 per axis")
    if settings is None:
        settings = EscapeSettings(max_iter=CERTIFY_MAX_ITER)
    reg = window.region
    mods = np.linspace(reg.r_in, reg.r_out, grid_density)
    args = np.linspace(reg.theta_lo, reg.theta_hi, grid_density)
    w = (mods[:, None] * np.exp(1j * args)[None, :]).ravel()
    params_arr = w if window.kind == A_DIRECT else w - window.offset

    member = np.array([window.contains_param(complex(p), tol=1e-9)
                       for p in params_arr])
    bounded_global, bounded_up = _scan_arrays(window, params_arr, settings)

    center = None
    contains_center = None
    if window.kind != A_DIRECT and window.k == 0 and window.a.imag == 0.0:
        center = baby_center(window.n, window.a.real, "plus")
        in_window = window.contains_param(center, tol=1e-9)
        cg, cu = _scan_arrays(window, np.asarray([center], np.complex128), settings)
        contains_center = bool(in_window and cg[0] and cu[0])

    return ScanResult(window, params_arr, member, bounded_global, bounded_up,
                      (grid_density, grid_density), center, contains_center)


def scan_to_csv(result: ScanResult, path) -> None:
    """One row per grid node: re,im,member_window,bounded_global,bounded_in_uprime."""
    with open(path, "w", encoding="ascii") as f:
        f.write("re,im,member_window,bounded_global,bounded_in_uprime\n")
        for p, mw, bg, bu in zip(result.params, result.member,
                                 result.bounded_global, result.bounded_in_uprime):
            f.write(f"{p.real:.17g},{p.imag:.17g},{int(mw)},{int(bg)},{int(bu)}\n")
