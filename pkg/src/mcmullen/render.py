"""Deterministic escape-time rendering of dynamical and parameter planes.

Parameter planes track both critical orbits per pixel and average their two
colors; dynamical planes shade the single orbit with the same blend. Output
is bit-identical across runs, worker counts, and kernel backends: pixel (0,0)
is the top-left corner at (re_min, im_max), pixels are sampled at their
centers, and channel means round half-up.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _backend
from ._cmath import csqrt, ipow, modulus
from .core import (EscapeSettings, MapParams, OrbitOutcome, critical_values,
                   default_escape_radius, iterate_orbit)

GREEN = (0, 255, 0)        # v_plus escape hue
PURPLE = (160, 32, 240)    # v_minus escape hue

_BAND_ROWS = 32


class RGB(NamedTuple):
    r: int
    g: int
    b: int


@dataclass(frozen=True)
class DynamicalPlane:
    params: MapParams


@dataclass(frozen=True)
class APlane:
    n: int
    c: complex


@dataclass(frozen=True)
class CPlane:
    n: int
    a: complex


@dataclass(frozen=True)
class RenderSpec:
    plane: DynamicalPlane | APlane | CPlane
    viewport: tuple[float, float, float, float]   # re_min, re_max, im_min, im_max
    width: int
    height: int
    settings: EscapeSettings = EscapeSettings()
    color_plus: tuple[int, int, int] = GREEN
    color_minus: tuple[int, int, int] = PURPLE

    def __post_init__(self) -> None:
        re0, re1, im0, im1 = self.viewport
        if not (re0 < re1 and im0 < im1):
            raise ValueError("viewport must satisfy re_min < re_max and im_min < im_max")
        if self.width < 1 or self.height < 1:
            raise ValueError("width and height must be positive")


@dataclass(frozen=True)
class ImageBuffer:
    width: int
    height: int
    pixels: bytes   # row-major RGB triples, top row first

    def __post_init__(self) -> None:
        if len(self.pixels) != 3 * self.width * self.height:
            raise ValueError("pixel buffer length must be 3 * width * height")


@dataclass(frozen=True)
class PlaneClassification:
    """Raw per-pixel orbit classification (status != 0 means escaped)."""

    kind: str                        # "dynamical" | "a-plane" | "c-plane"
    status_plus: np.ndarray
    steps_plus: np.ndarray
    status_minus: np.ndarray | None
    steps_minus: np.ndarray | None


def _worker_count(threads: int | None) -> int:
    w = threads if threads is not None else (os.cpu_count() or 1)
    cap = os.environ.get("MCM_THREADS")
    if cap:
        w = min(w, int(cap))
    return max(1, w)


def _bands(height: int) -> list[tuple[int, int]]:
    return [(r, min(r + _BAND_ROWS, height)) for r in range(0, height, _BAND_ROWS)]


def _run_bands(fn, height: int, threads: int | None) -> None:
    bands = _bands(height)
    workers = _worker_count(threads)
    if workers == 1 or len(bands) == 1:
        for r0, r1 in bands:
            fn(r0, r1)
        return
    with ThreadPoolExecutor(max_workers=workers) as ex:
        futures = [ex.submit(fn, r0, r1) for r0, r1 in bands]
        for f in futures:
            f.result()


def render_classification(spec: RenderSpec, threads: int | None = None) -> PlaneClassification:
    """Classify every pixel center without colorizing."""
    impl = _backend.impl
    W, H = spec.width, spec.height
    re0, re1, im0, im1 = (float(v) for v in spec.viewport)
    max_iter = spec.settings.max_iter
    plane = spec.plane

    if isinstance(plane, DynamicalPlane):
        p = plane.params
        radius = spec.settings.escape_radius
        if radius is None:
            radius = default_escape_radius(p)
        st = np.zeros((H, W), np.uint8)
        ks = np.zeros((H, W), np.int32)

        def band(r0, r1):
            impl.render_dynamical(p.n, p.a.real, p.a.imag, p.c.real, p.c.imag,
                                  re0, re1, im0, im1, W, H, radius, max_iter,
                                  r0, r1, st, ks)

        _run_bands(band, H, threads)
        return PlaneClassification("dynamical", st, ks, None, None)

    radius = spec.settings.escape_radius
    radius = -1.0 if radius is None else float(radius)
    st_p = np.zeros((H, W), np.uint8)
    k_p = np.zeros((H, W), np.int32)
    st_m = np.zeros((H, W), np.uint8)
    k_m = np.zeros((H, W), np.int32)

    if isinstance(plane, CPlane):
        n = plane.n
        a = complex(plane.a)
        if a == 0:
            raise ValueError("a = 0 is the degenerate member")
        sr, si = csqrt(a.real, a.imag)
        tvr, tvi = 2.0 * sr, 2.0 * si
        amod = modulus(a.real, a.imag)
        p125, p2 = ipow(1.25, n), ipow(2.0, n)

        def band(r0, r1):
            impl.render_cplane(n, a.real, a.imag, tvr, tvi, amod,
                               re0, re1, im0, im1, W, H, radius, p125, p2,
                               max_iter, r0, r1, st_p, k_p, st_m, k_m)

        _run_bands(band, H, threads)
        return PlaneClassification("c-plane", st_p, k_p, st_m, k_m)

    if isinstance(plane, APlane):
        n = plane.n
        c = complex(plane.c)
        cmod = modulus(c.real, c.imag)
        p125, p2 = ipow(1.25, n), ipow(2.0, n)

        def band(r0, r1):
            impl.render_aplane(n, c.real, c.imag, cmod,
                               re0, re1, im0, im1, W, H, radius, p125, p2,
                               max_iter, r0, r1, st_p, k_p, st_m, k_m)

        _run_bands(band, H, threads)
        return PlaneClassification("a-plane", st_p, k_p, st_m, k_m)

    raise TypeError(f"unknown plane type {type(plane)!r}")


def classify_point(plane, point: complex, settings: EscapeSettings | None = None):
    """Single-point classification.

    Parameter planes return the pair (v_plus outcome, v_minus outcome) of
    critical-orbit classifications at that parameter; the dynamical plane
    returns the single outcome for the seed. Equals the corresponding render
    pixel exactly.
    """
    if settings is None:
        settings = EscapeSettings()
    point = complex(point)
    if isinstance(plane, DynamicalPlane):
        return iterate_orbit(plane.params, point, settings)
    if isinstance(plane, CPlane):
        params = MapParams(plane.n, plane.a, point)
        vm, vp = critical_values(params)
        return (iterate_orbit(params, vp, settings), iterate_orbit(params, vm, settings))
    if isinstance(plane, APlane):
        if point == 0:
            # degenerate pixel: escaped-both at step 1
            radius = settings.escape_radius
            if radius is None:
                radius = 2.0
            out = OrbitOutcome(True, 1, radius * 10.0, 0j)
            return (out, out)
        params = MapParams(plane.n, point, plane.c)
        vm, vp = critical_values(params)
        return (iterate_orbit(params, vp, settings), iterate_orbit(params, vm, settings))
    raise TypeError(f"unknown plane type {type(plane)!r}")


def _shade(steps, max_iter: int):
    # escape-rate shading: late escapes fade toward the 0.25 floor
    return 0.25 + 0.75 * (1.0 - steps / max_iter)


def colorize(out_plus: OrbitOutcome, out_minus: OrbitOutcome,
             settings: EscapeSettings,
             color_plus: tuple[int, int, int] = GREEN,
             color_minus: tuple[int, int, int] = PURPLE) -> RGB:
    """Average the two per-orbit colors: black for a bounded orbit, the
    orbit's hue scaled by the escape-rate shade otherwise. Channel means are
    rounded half-up."""
    mi = settings.max_iter
    sp = _shade(out_plus.step, mi) if out_plus.escaped else 0.0
    sm = _shade(out_minus.step, mi) if out_minus.escaped else 0.0
    vals = (0.5 * (color_plus[ch] * sp + color_minus[ch] * sm) for ch in range(3))
    return RGB(*(int(math.floor(v + 0.5)) for v in vals))


def colorize_arrays(status_p, steps_p, status_m, steps_m, max_iter: int,
                    color_plus=GREEN, color_minus=PURPLE) -> np.ndarray:
    """Vectorized colorize over classification arrays; elementwise identical
    to the scalar version."""
    sp = np.where(status_p != 0, _shade(steps_p, max_iter), 0.0)
    sm = np.where(status_m != 0, _shade(steps_m, max_iter), 0.0)
    out = np.empty(status_p.shape + (3,), np.uint8)
    for ch in range(3):
        v = 0.5 * (color_plus[ch] * sp + color_minus[ch] * sm)
        out[..., ch] = np.floor(v + 0.5).astype(np.uint8)
    return out


def render(spec: RenderSpec, threads: int | None = None) -> ImageBuffer:
    """Render a plane to an RGB buffer; bit-identical across runs and across
    any tiling or worker count."""
    cls = render_classification(spec, threads)
    if cls.kind == "dynamical":
        rgb = colorize_arrays(cls.status_plus, cls.steps_plus,
                              cls.status_plus, cls.steps_plus,
                              spec.settings.max_iter, spec.color_plus, spec.color_minus)
    else:
        rgb = colorize_arrays(cls.status_plus, cls.steps_plus,
                              cls.status_minus, cls.steps_minus,
                              spec.settings.max_iter, spec.color_plus, spec.color_minus)
    return ImageBuffer(spec.width, spec.height, rgb.tobytes())


def write_ppm(image: ImageBuffer, path) -> None:
    """Binary PPM: header ``P6\\n<width> <height>\\n255\\n`` then raw RGB
    triples, top row first."""
    header = f"P6\n{image.width} {image.height}\n255\n".encode("ascii")
    try:
        with open(path, "wb") as f:
            f.write(header)
            f.write(image.pixels)
    except OSError as e:
        raise OSError(f"cannot write image to {path}: {e}") from e
