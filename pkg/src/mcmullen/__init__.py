"""Dynamical- and parameter-plane toolkit for the family z**n + a/z**n + c.

Renders escape-time pictures with dual-critical-orbit color averaging and
emits numerical certificates (with margins) for the geometric hypotheses
behind the baby-Mandelbrot construction. Hot kernels run in a compiled
extension when available, with a bit-identical NumPy fallback.
"""

from ._backend import BACKEND
from .core import (CERTIFY_MAX_ITER, EscapeSettings, MapParams, OrbitOutcome,
                   PoleError, RENDER_MAX_ITER, critical_points, critical_values,
                   default_escape_radius, eval_map, eval_map_batch, involution,
                   iterate_orbit, mandelbrot_classify)
from .regions import (EllipseRegion, HalfEllipse, ParamWindow, SectorAnnulus,
                      contains, half_ellipse, image_ellipse, make_uprime,
                      make_window, sample_boundary)
from .certify import (CertificateReport, certify_escape_bounds,
                      certify_polynomial_like, certify_symmetries,
                      certify_two_to_one, certify_uprime_subset_u,
                      certify_winding, matching_regimes)
from .render import (APlane, CPlane, DynamicalPlane, ImageBuffer, RGB,
                     RenderSpec, classify_point, colorize, render, write_ppm)
from .landmarks import (CenterPair, IntervalPair, ScanResult, baby_center,
                        center_pair, interval_positions, overlap_parameter,
                        scan_boundedness_locus, scan_to_csv)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CERTIFY_MAX_ITER",
    "RENDER_MAX_ITER",
    "EscapeSettings",
    "MapParams",
    "OrbitOutcome",
    "PoleError",
    "critical_points",
    "critical_values",
    "default_escape_radius",
    "eval_map",
    "eval_map_batch",
    "involution",
    "iterate_orbit",
    "mandelbrot_classify",
    "EllipseRegion",
    "HalfEllipse",
    "ParamWindow",
    "SectorAnnulus",
    "contains",
    "half_ellipse",
    "image_ellipse",
    "make_uprime",
    "make_window",
    "sample_boundary",
    "CertificateReport",
    "certify_escape_bounds",
    "certify_polynomial_like",
    "certify_symmetries",
    "certify_two_to_one",
    "certify_uprime_subset_u",
    "certify_winding",
    "matching_regimes",
    "APlane",
    "CPlane",
    "DynamicalPlane",
    "ImageBuffer",
    "RGB",
    "RenderSpec",
    "classify_point",
    "colorize",
    "render",
    "write_ppm",
    "CenterPair",
    "IntervalPair",
    "ScanResult",
    "baby_center",
    "center_pair",
    "interval_positions",
    "overlap_parameter",
    "scan_boundedness_locus",
    "scan_to_csv",
]
