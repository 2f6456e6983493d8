"""The family R(z) = z**n + a/z**n + c: evaluation, critical data, orbits.

Everything is double precision with pinned branches (principal roots,
square-and-multiply integer powers), so orbit classification is reproducible
bit-for-bit across runs, worker counts, and kernel backends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from ._cmath import cpow, cpow_vec, csqrt, escape_radius_for, modulus, principal_root

RENDER_MAX_ITER = 256
CERTIFY_MAX_ITER = 1024


class PoleError(ZeroDivisionError):
    """Raised when the map is evaluated at z = 0 (or z**n underflows to 0)."""


@dataclass(frozen=True)
class MapParams:
    """One member of the family: degree n >= 2, perturbation a != 0, shift c."""

    n: int
    a: complex
    c: complex = 0j

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError("degree n must be an integer >= 2")
        a = complex(self.a)
        c = complex(self.c)
        for name, v in (("a", a), ("c", c)):
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"parameter {name} must be finite")
        if a == 0:
            raise ValueError("a = 0 is the degenerate member; require |a| > 0")
        # kill negative zeros so Arg() lands in (-pi, pi]
        object.__setattr__(self, "a", complex(a.real + 0.0, a.imag + 0.0))
        object.__setattr__(self, "c", complex(c.real + 0.0, c.imag + 0.0))

    @property
    def psi(self) -> float:
        """Principal argument of a."""
        return math.atan2(self.a.imag, self.a.real)


@dataclass(frozen=True)
class EscapeSettings:
    """Escape-time iteration budget.

    escape_radius=None means "derive the certified radius from the parameters"
    (per pixel, in parameter-plane renders).
    """

    escape_radius: float | None = None
    max_iter: int = RENDER_MAX_ITER

    def __post_init__(self) -> None:
        r = self.escape_radius
        if r is not None and not (math.isfinite(r) and r > 1.0):
            raise ValueError("escape_radius must be finite and > 1")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


@dataclass(frozen=True)
class OrbitOutcome:
    """Result of iterating one seed: escaped at `step` with `modulus`, or
    bounded after `step` = max_iter iterations."""

    escaped: bool
    step: int
    modulus: float
    final_point: complex

    @property
    def bounded(self) -> bool:
        return not self.escaped


def eval_map(params: MapParams, z: complex) -> complex:
    """One application of z**n + a/z**n + c.

    Uses the identical operation order as the iteration kernels so scalar
    evaluations agree with rendered classifications.
    """
    z = complex(z)
    wr, wi = cpow(z.real, z.imag, params.n)
    d = wr * wr + wi * wi
    if d == 0.0:
        raise PoleError("z**n vanished; the orbit escapes through the pole at 0")
    ar, ai = params.a.real, params.a.imag
    qr = (ar * wr + ai * wi) / d
    qi = (ai * wr - ar * wi) / d
    return complex(wr + qr + params.c.real, wi + qi + params.c.imag)


def eval_map_batch(params: MapParams, z: np.ndarray) -> np.ndarray:
    """Vectorized eval_map over a complex array. Raises PoleError if any
    entry hits the pole."""
    z = np.asarray(z, dtype=np.complex128)
    zr = np.ascontiguousarray(z.real)
    zi = np.ascontiguousarray(z.imag)
    wr, wi = cpow_vec(zr, zi, params.n)
    d = wr * wr + wi * wi
    if (d == 0.0).any():
        raise PoleError("z**n vanished for at least one input")
    ar, ai = params.a.real, params.a.imag
    qr = (ar * wr + ai * wi) / d
    qi = (ai * wr - ar * wi) / d
    return (wr + qr + params.c.real) + 1j * (wi + qi + params.c.imag)


def critical_points(params: MapParams) -> list[complex]:
    """The 2n critical points |a|**(1/2n) * exp(i(psi + 2*pi*j)/(2n)).

    Returned in increasing lifted angle (j = 0 .. 2n-1); index 2k is the
    angular midpoint of the k-th sector domain.
    """
    n = params.n
    r = math.pow(modulus(params.a.real, params.a.imag), 1.0 / (2 * n))
    psi = params.psi
    pts = []
    for j in range(2 * n):
        th = (psi + 2.0 * math.pi * j) / (2 * n)
        pts.append(complex(r * math.cos(th), r * math.sin(th)))
    return pts


def critical_values(params: MapParams) -> tuple[complex, complex]:
    """(v_minus, v_plus) = c -/+ 2*sqrt(a), principal branch."""
    sr, si = csqrt(params.a.real, params.a.imag)
    tvr = 2.0 * sr
    tvi = 2.0 * si
    c = params.c
    return (complex(c.real - tvr, c.imag - tvi),
            complex(c.real + tvr, c.imag + tvi))


def involution(params: MapParams, z: complex) -> complex:
    """h(z) = a**(1/n) / z, the symmetry with R(h(z)) = R(z) and h(h(z)) = z."""
    z = complex(z)
    if z == 0:
        raise PoleError("involution undefined at z = 0")
    return principal_root(params.a, params.n) / z


def default_escape_radius(params: MapParams) -> float:
    """Certified escape radius for these parameters.

    Smallest rho in {1.25, 2} with rho**n > 3*max(1, |a|, |c|), else the
    general bound (3*max(1,|a|,|c|))**(1/n) * 1.05.
    """
    return escape_radius_for(params.n,
                             modulus(params.a.real, params.a.imag),
                             modulus(params.c.real, params.c.imag))


def resolve_settings(params: MapParams, settings: EscapeSettings | None,
                     max_iter: int = RENDER_MAX_ITER) -> tuple[float, int]:
    """(radius, max_iter) with the radius derived from params when unset."""
    if settings is None:
        settings = EscapeSettings(max_iter=max_iter)
    radius = settings.escape_radius
    if radius is None:
        radius = default_escape_radius(params)
    return radius, settings.max_iter


def _one(x: float) -> np.ndarray:
    return np.array([x], dtype=np.float64)


def iterate_orbit(params: MapParams, z0: complex,
                  settings: EscapeSettings | None = None) -> OrbitOutcome:
    """Escape-time classification of the orbit of z0.

    Escaped(k, |z_k|) at the first k >= 1 with |z_k| > escape_radius; a pole
    hit escapes at that step with modulus reported as escape_radius * 10;
    component overflow beyond 1e150 escapes immediately.  Deterministic:
    identical inputs give bit-identical outcomes.
    """
    radius, max_iter = resolve_settings(params, settings)
    z0 = complex(z0)
    st, ks, mod, fr, fi = _backend.impl.orbit_batch(
        params.n, _one(params.a.real), _one(params.a.imag),
        _one(params.c.real), _one(params.c.imag),
        _one(z0.real), _one(z0.imag), _one(radius), max_iter)
    return OrbitOutcome(bool(st[0] != 0), int(ks[0]), float(mod[0]),
                        complex(fr[0], fi[0]))


def orbit_batch(params: MapParams, seeds: np.ndarray,
                settings: EscapeSettings | None = None) -> tuple[np.ndarray, ...]:
    """Batch iterate_orbit with shared parameters.

    Returns raw kernel arrays (status, steps, modulus, final_re, final_im);
    status != 0 means escaped.
    """
    radius, max_iter = resolve_settings(params, settings)
    seeds = np.asarray(seeds, dtype=np.complex128).ravel()
    size = seeds.shape[0]
    full = np.full
    return _backend.impl.orbit_batch(
        params.n,
        full(size, params.a.real), full(size, params.a.imag),
        full(size, params.c.real), full(size, params.c.imag),
        np.ascontiguousarray(seeds.real), np.ascontiguousarray(seeds.imag),
        full(size, radius), max_iter)


def mandelbrot_classify(c: complex, settings: EscapeSettings | None = None) -> OrbitOutcome:
    """Escape-time classification of the critical orbit of 0 under z**2 + c.

    Baseline oracle for the coloring pipeline; escape radius defaults to 2.
    """
    if settings is None:
        settings = EscapeSettings(escape_radius=2.0)
    radius = settings.escape_radius if settings.escape_radius is not None else 2.0
    c = complex(c)
    st, ks, mod, fr, fi = _backend.impl.mandelbrot_batch(
        _one(c.real), _one(c.imag), radius, settings.max_iter)
    return OrbitOutcome(bool(st[0] != 0), int(ks[0]), float(mod[0]),
                        complex(fr[0], fi[0]))
