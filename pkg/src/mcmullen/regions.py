"""Geometric regions attached to the map: sector annuli, image ellipses and
half-ellipses, and the closed parameter windows whose boundary traversal
drives the loop certificates.

Membership queries return (inside, margin): strict interior membership plus a
signed margin whose magnitude is a lower bound on the Euclidean distance to
the boundary (conservative for the ellipse via the focal-sum slack, since the
focal-sum gradient never exceeds 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._cmath import csqrt, ipow, modulus
from .core import MapParams, critical_values

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi

# Inner modulus used when a window degenerates to the puncture a = 0.
MIN_WINDOW_MODULUS = 1e-8

STANDARD = "standard"
TIGHT = "tight"


def _wrap_angle(d):
    """Wrap to [-pi, pi)."""
    return (d + math.pi) % TWO_PI - math.pi


@dataclass(frozen=True)
class SectorAnnulus:
    """Open region r_in < |z| < r_out, theta_lo < arg(z) < theta_hi.

    Angles are stored unwrapped (theta_hi - theta_lo is the true angular
    width, at most 2*pi); membership wraps the query angle to the sector
    midpoint.
    """

    r_in: float
    r_out: float
    theta_lo: float
    theta_hi: float

    def __post_init__(self) -> None:
        if not 0.0 < self.r_in < self.r_out:
            raise ValueError(f"need 0 < r_in < r_out, got ({self.r_in}, {self.r_out})")
        if not 0.0 < self.theta_hi - self.theta_lo < TWO_PI:
            raise ValueError("angular width must lie in (0, 2*pi)")

    @property
    def mid_angle(self) -> float:
        return 0.5 * (self.theta_lo + self.theta_hi)

    @property
    def half_width(self) -> float:
        return 0.5 * (self.theta_hi - self.theta_lo)

    def margin(self, z: complex) -> float:
        return float(self.margin_batch(np.asarray([complex(z)]))[0])

    def margin_batch(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=np.complex128)
        x, y = z.real, z.imag
        r = np.sqrt(x * x + y * y)
        d = np.arctan2(y, x) - self.mid_angle
        d = (d + math.pi) % TWO_PI - math.pi
        half = self.half_width
        ang_lo = np.clip(d + half, -HALF_PI, HALF_PI)
        ang_hi = np.clip(half - d, -HALF_PI, HALF_PI)
        arc_lo = r * np.sin(ang_lo)
        arc_hi = r * np.sin(ang_hi)
        radial = np.minimum(r - self.r_in, self.r_out - r)
        return np.minimum(radial, np.minimum(arc_lo, arc_hi))

    def contains(self, z: complex) -> tuple[bool, float]:
        m = self.margin(z)
        return m > 0.0, m

    def boundary_points(self, m: int) -> np.ndarray:
        """m points tracing the closed boundary once, counterclockwise,
        starting at (r_out, theta_lo); the closing point is not repeated."""
        if m < 8:
            raise ValueError("need at least 8 boundary samples")
        width = self.theta_hi - self.theta_lo
        radial = self.r_out - self.r_in
        counts = _apportion(m, [self.r_out * width, radial, self.r_in * width, radial])
        lo, hi = self.theta_lo, self.theta_hi
        pieces = []
        t = np.arange(counts[0]) / counts[0]
        th = lo + width * t
        pieces.append(self.r_out * np.exp(1j * th))
        t = np.arange(counts[1]) / counts[1]
        pieces.append((self.r_out - radial * t) * np.exp(1j * hi))
        t = np.arange(counts[2]) / counts[2]
        th = hi - width * t
        pieces.append(self.r_in * np.exp(1j * th))
        t = np.arange(counts[3]) / counts[3]
        pieces.append((self.r_in + radial * t) * np.exp(1j * lo))
        return np.concatenate(pieces)


def _apportion(total: int, weights: list[float]) -> list[int]:
    """Deterministic largest-remainder split of `total` with every part >= 1."""
    w = np.asarray(weights, dtype=np.float64)
    w = np.maximum(w, 1e-30)
    shares = w / w.sum() * total
    counts = np.maximum(1, np.floor(shares).astype(int))
    rem = shares - np.floor(shares)
    order = np.lexsort((np.arange(len(w)), -rem))
    i = 0
    while counts.sum() < total:
        counts[order[i % len(w)]] += 1
        i += 1
    while counts.sum() > total:
        j = int(np.argmax(counts))
        counts[j] -= 1
    return [int(c) for c in counts]


@dataclass(frozen=True)
class EllipseRegion:
    """The image ellipse: center c, axes along e^(i*rotation), foci at the
    critical values."""

    center: complex
    rotation: float
    semi_major: float
    semi_minor: float
    focus_minus: complex
    focus_plus: complex

    def __post_init__(self) -> None:
        if not self.semi_major > self.semi_minor > 0.0:
            raise ValueError("degenerate ellipse: need semi_major > semi_minor > 0")

    def focal_sum(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=np.complex128)
        return np.abs(z - self.focus_minus) + np.abs(z - self.focus_plus)

    def margin_batch(self, z: np.ndarray) -> np.ndarray:
        # |grad focal_sum| <= 2, so half the slack bounds the true distance
        s = 2.0 * self.semi_major - self.focal_sum(z)
        return 0.5 * s

    def margin(self, z: complex) -> float:
        return float(self.margin_batch(np.asarray([complex(z)]))[0])

    def contains(self, z: complex) -> tuple[bool, float]:
        m = self.margin(z)
        return m > 0.0, m


@dataclass(frozen=True)
class HalfEllipse:
    """Open half of an EllipseRegion cut by its minor axis, keeping the side
    that contains focus_plus."""

    ellipse: EllipseRegion

    def axis_coordinate(self, z: np.ndarray) -> np.ndarray:
        """Signed distance from the minor-axis line, positive on the kept side."""
        e = self.ellipse
        z = np.asarray(z, dtype=np.complex128)
        dx = z.real - e.center.real
        dy = z.imag - e.center.imag
        return dx * math.cos(e.rotation) + dy * math.sin(e.rotation)

    def margin_batch(self, z: np.ndarray) -> np.ndarray:
        return np.minimum(self.ellipse.margin_batch(z), self.axis_coordinate(z))

    def margin(self, z: complex) -> float:
        return float(self.margin_batch(np.asarray([complex(z)]))[0])

    def contains(self, z: complex) -> tuple[bool, float]:
        m = self.margin(z)
        return m > 0.0, m


def contains(region, z: complex) -> tuple[bool, float]:
    """Strict interior membership with a signed distance lower bound."""
    return region.contains(complex(z))


def make_uprime(params: MapParams, k: int = 0, regime: str = STANDARD) -> SectorAnnulus:
    """The k-th polynomial-like domain.

    Standard regime: |a|^(1/n)/2 < r < 2, angles ((psi + 4*pi*k) -/+ pi)/(2n).
    Tight regime (k = 0, a real positive): (4/5) a^(1/n) < r < 5/4.
    The 2k-th critical point sits at the angular midpoint.
    """
    n = params.n
    if not 0 <= k <= n - 1:
        raise ValueError(f"sector index k must lie in [0, {n - 1}]")
    amod = modulus(params.a.real, params.a.imag)
    if regime == STANDARD:
        r_in = 0.5 * math.pow(amod, 1.0 / n)
        r_out = 2.0
        num = params.psi + 4.0 * math.pi * k
        lo = (num - math.pi) / (2.0 * n)
        hi = (num + math.pi) / (2.0 * n)
    elif regime == TIGHT:
        if params.a.imag != 0.0 or params.a.real <= 0.0:
            raise ValueError("tight regime requires a real and positive")
        if k != 0:
            raise ValueError("tight regime is defined for k = 0 only")
        r_in = 0.8 * math.pow(params.a.real, 1.0 / n)
        r_out = 1.25
        lo = (params.psi - math.pi) / (2.0 * n)
        hi = (params.psi + math.pi) / (2.0 * n)
    else:
        raise ValueError(f"unknown regime {regime!r}")
    return SectorAnnulus(r_in, r_out, lo, hi)


def outer_radius(regime: str) -> float:
    return 2.0 if regime == STANDARD else 1.25


def image_ellipse(params: MapParams, r_out: float) -> EllipseRegion:
    """Image of the circle |z| = r_out: semi-axes r_out^n -/+ |a|/r_out^n,
    center c, rotated by psi/2, foci at the critical values."""
    n = params.n
    amod = modulus(params.a.real, params.a.imag)
    rn = ipow(r_out, n)
    if amod >= rn * rn:
        raise ValueError("degenerate ellipse: need |a| < r_out**(2n)")
    vm, vp = critical_values(params)
    return EllipseRegion(
        center=params.c,
        rotation=0.5 * params.psi,
        semi_major=rn + amod / rn,
        semi_minor=rn - amod / rn,
        focus_minus=vm,
        focus_plus=vp,
    )


def half_ellipse(params: MapParams, r_out: float) -> HalfEllipse:
    """The image region of the sector domain: half the image ellipse, cut by
    the minor axis, on the focus_plus side."""
    return HalfEllipse(image_ellipse(params, r_out))


A_DIRECT = "a-direct"
C_VIA_VPLUS = "c-via-vplus"


@dataclass(frozen=True)
class ParamWindow:
    """Closed parameter region whose boundary drives the loop certificates.

    a-direct windows live in the a-plane (region constrains a itself);
    c-via-vplus windows live in the c-plane (region constrains v_plus(c), and
    c = w - 2*sqrt(a) recovers the parameter from a region point w).
    """

    kind: str
    regime: str
    n: int
    k: int
    c: complex | None
    a: complex | None
    region: SectorAnnulus
    offset: complex
    degenerate: bool = False

    def vplus(self, param: complex) -> complex:
        if self.kind == A_DIRECT:
            sr, si = csqrt(param.real, param.imag)
            return complex(self.c.real + 2.0 * sr, self.c.imag + 2.0 * si)
        return param + self.offset

    def params_for(self, param: complex) -> MapParams:
        if self.kind == A_DIRECT:
            return MapParams(self.n, param, self.c)
        return MapParams(self.n, self.a, param)

    def contains_param(self, param: complex, tol: float = 1e-12) -> bool:
        w = param if self.kind == A_DIRECT else param + self.offset
        return self.region.margin(w) >= -tol

    def describe(self) -> str:
        if self.kind == A_DIRECT:
            return f"W(n={self.n}, c={self.c})"
        tag = "tight " if self.regime == TIGHT else ""
        return f"{tag}W(n={self.n}, a={self.a}, k={self.k})"


def make_window(n: int, c: complex | None = None, a: complex | None = None,
                k: int = 0, tight: bool = False) -> ParamWindow:
    """Build a parameter window.

    With c given: the a-plane window {c^2/4 <= |a| <= (1 - c/2)^2,
    |Arg a| <= pi/(n-1)} for real -1 <= c <= 0 and n >= 3.
    With a given: the c-plane window mapping v_plus onto the closure of the
    k-th sector domain (1 <= a <= 4), or with tight=True the small-a window
    (0.1 <= a <= 1, k = 0, radii (4/5) a^(1/n) .. 5/4).
    """
    if (c is None) == (a is None):
        raise ValueError("give exactly one of c (a-plane window) or a (c-plane window)")
    if c is not None:
        c = complex(c)
        if n < 3:
            raise ValueError("a-plane windows require n >= 3")
        if c.imag != 0.0 or not -1.0 <= c.real <= 0.0:
            raise ValueError("a-plane windows require real c with -1 <= c <= 0")
        cr = c.real
        mod_lo = cr * cr / 4.0
        mod_hi = (1.0 - cr / 2.0) ** 2
        degenerate = mod_lo < MIN_WINDOW_MODULUS
        mod_lo = max(mod_lo, MIN_WINDOW_MODULUS)
        bound = math.pi / (n - 1)
        region = SectorAnnulus(mod_lo, mod_hi, -bound, bound)
        return ParamWindow(A_DIRECT, STANDARD, n, 0, c, None, region, 0j, degenerate)

    a = complex(a)
    if a.imag != 0.0 or a.real <= 0.0:
        raise ValueError("c-plane windows require a real and positive")
    ar = a.real
    sr, si = csqrt(ar, 0.0)
    offset = complex(2.0 * sr, 2.0 * si)
    if tight:
        if not 0.1 <= ar <= 1.0:
            raise ValueError("tight windows require 0.1 <= a <= 1")
        if k != 0:
            raise ValueError("tight windows are defined for k = 0 only")
        r_in = 0.8 * math.pow(ar, 1.0 / n)
        r_out = 1.25
        bound = math.pi / (2.0 * n)
        region = SectorAnnulus(r_in, r_out, -bound, bound)
        return ParamWindow(C_VIA_VPLUS, TIGHT, n, 0, None, a, region, offset)

    if not 1.0 <= ar <= 4.0:
        raise ValueError("c-plane windows require 1 <= a <= 4")
    if not 0 <= k <= n - 1:
        raise ValueError(f"sector index k must lie in [0, {n - 1}]")
    r_in = 0.5 * math.pow(ar, 1.0 / n)
    num = 4.0 * math.pi * k
    lo = (num - math.pi) / (2.0 * n)
    hi = (num + math.pi) / (2.0 * n)
    region = SectorAnnulus(r_in, 2.0, lo, hi)
    return ParamWindow(C_VIA_VPLUS, STANDARD, n, k, None, a, region, offset)


def sample_boundary(window: ParamWindow, m: int) -> np.ndarray:
    """m parameter values tracing the closed window boundary once,
    counterclockwise, first point not repeated at the end."""
    w = window.region.boundary_points(m)
    if window.kind == A_DIRECT:
        return w
    return w - window.offset
