"""Integration and multiplication operators on disc functions, and the
test-family ratio scans that probe their boundedness empirically.

The three operators share one identity (integration by parts):

    J_g(f)(z) = M_g(f)(z) - f(0) g(0) - I_g(f)(z)

where J_g integrates f g', I_g integrates f' g, and M_g multiplies by g.
Operator *values* come from quadrature along the radial segment [0, z]
(graded toward the far endpoint, 64-1024 nodes depending on how close the
segment gets to a flagged singularity); operator *derivatives* are closed
form, which is what every norm computation consumes.

Boundedness is never certified: a scan reports per-c norm ratios over the
test family f_c(z) = (1 - conj(c) z)^(-p(1-lam)/2) with c marching toward
the boundary, and classifies the tail slope of log(ratio) against
log2(1/(1-|c|)) with the shared 0.1 threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .analytic import AnalyticFunction, SpaceParams, make_power_kernel
from .norms import ParamGrid, classify_trend, dm_norm_translate, trend_slope
from .quadrature import TWO_PI, _gauss_on


@dataclass(frozen=True)
class OperatorKind:
    tag: str  # "Jg" | "Ig" | "Mg"

    def __post_init__(self):
        if self.tag not in ("Jg", "Ig", "Mg"):
            raise ValueError(f"unknown operator kind {self.tag!r}")


JG = OperatorKind("Jg")
IG = OperatorKind("Ig")
MG = OperatorKind("Mg")


# ---------------------------------------------------------------------------
# Radial path quadrature
# ---------------------------------------------------------------------------


def _path_breaks(depth: int) -> np.ndarray:
    pts = [0.0, 0.5]
    pts.extend(1.0 - 2.0 ** -m for m in range(2, depth))
    pts.append(1.0)
    return np.array(pts)


def path_integral(integrand: Callable, z, *, depth: Optional[int] = None, order: int = 10):
    """integral over [0, z] of integrand(w) dw along the radial segment.

    Parametrizes w = s z on graded panels refining toward s = 1, where the
    integrand may steepen if z points near a singular direction; one node
    layout is shared by all requested z (64-1024 nodes by proximity)."""
    z = np.asarray(z, dtype=complex)
    flat = z.ravel()
    if flat.size == 0:
        return z
    if depth is None:
        closest = float(np.max(np.abs(flat)))
        depth = int(np.clip(int(-math.log2(max(1.0 - closest, 1e-12))) + 8, 12, 48))
    breaks = _path_breaks(depth)
    s_nodes, s_wts = [], []
    for i in range(len(breaks) - 1):
        n, w = _gauss_on(breaks[i], breaks[i + 1], order)
        s_nodes.append(n)
        s_wts.append(w)
    s = np.concatenate(s_nodes)
    sw = np.concatenate(s_wts)
    vals = integrand(s[:, None] * flat[None, :])
    out = flat * (sw @ vals)
    return out.reshape(z.shape) if z.shape else complex(out[()] if out.shape == () else out.reshape(()))


def _integrated_taylor(prod_coeffs):
    out = [0.0 + 0.0j]
    out.extend(c / (n + 1) for n, c in enumerate(prod_coeffs))
    return tuple(out)


def _op_common(f: AnalyticFunction, g: AnalyticFunction):
    return dict(
        singular_angles=tuple(sorted(set(f.singular_angles) | set(g.singular_angles))),
        angular_hint=max(f.angular_hint, g.angular_hint),
        r_max=min(f.r_max, g.r_max),
        oscillatory=f.oscillatory or g.oscillatory,
    )


def apply_Jg(f: AnalyticFunction, g: AnalyticFunction) -> AnalyticFunction:
    """h with h' = f g' and h(0) = 0; values by radial path quadrature."""
    fe, gd = f.eval_fn, g.deriv_fn

    def dv(z):
        return fe(z) * gd(z)

    def ev(z):
        return path_integral(lambda w: fe(w) * gd(w), z)

    coeffs = None
    if f.taylor_coeffs is not None and g.taylor_coeffs is not None:
        gprime = tuple(k * c for k, c in enumerate(g.taylor_coeffs))[1:] or (0j,)
        coeffs = _integrated_taylor(np.convolve(f.taylor_coeffs, gprime))
    return AnalyticFunction(
        label=f"Jg[{g.label}]({f.label})",
        eval_fn=ev,
        deriv_fn=dv,
        taylor_coeffs=coeffs,
        **_op_common(f, g),
    )


def apply_Ig(f: AnalyticFunction, g: AnalyticFunction) -> AnalyticFunction:
    """h with h' = f' g and h(0) = 0; values by radial path quadrature."""
    fd, ge = f.deriv_fn, g.eval_fn

    def dv(z):
        return fd(z) * ge(z)

    def ev(z):
        return path_integral(lambda w: fd(w) * ge(w), z)

    coeffs = None
    if f.taylor_coeffs is not None and g.taylor_coeffs is not None:
        fprime = tuple(k * c for k, c in enumerate(f.taylor_coeffs))[1:] or (0j,)
        coeffs = _integrated_taylor(np.convolve(fprime, g.taylor_coeffs))
    return AnalyticFunction(
        label=f"Ig[{g.label}]({f.label})",
        eval_fn=ev,
        deriv_fn=dv,
        taylor_coeffs=coeffs,
        **_op_common(f, g),
    )


def apply_Mg(f: AnalyticFunction, g: AnalyticFunction) -> AnalyticFunction:
    """Pointwise product g f with derivative f' g + f g'."""
    fe, ge, fd, gd = f.eval_fn, g.eval_fn, f.deriv_fn, g.deriv_fn

    def ev(z):
        return fe(z) * ge(z)

    def dv(z):
        return fd(z) * ge(z) + fe(z) * gd(z)

    coeffs = None
    if f.taylor_coeffs is not None and g.taylor_coeffs is not None:
        coeffs = tuple(np.convolve(f.taylor_coeffs, g.taylor_coeffs))
    bnd = None
    if f.boundary_fn is not None and g.boundary_fn is not None:
        fb, gb = f.boundary_fn, g.boundary_fn
        bnd = lambda t: fb(t) * gb(t)
    return AnalyticFunction(
        label=f"Mg[{g.label}]({f.label})",
        eval_fn=ev,
        deriv_fn=dv,
        taylor_coeffs=coeffs,
        boundary_fn=bnd,
        **_op_common(f, g),
    )


def apply_operator(kind: OperatorKind, f: AnalyticFunction, g: AnalyticFunction) -> AnalyticFunction:
    return {"Jg": apply_Jg, "Ig": apply_Ig, "Mg": apply_Mg}[kind.tag](f, g)


# ---------------------------------------------------------------------------
# Integration-by-parts residual
# ---------------------------------------------------------------------------


def ibp_residual(f: AnalyticFunction, g: AnalyticFunction, samples) -> float:
    """max over sample points of |J_g f - (M_g f - f(0) g(0) - I_g f)|."""
    z = np.asarray(samples, dtype=complex)
    jg = apply_Jg(f, g)(z)
    ig = apply_Ig(f, g)(z)
    mg = apply_Mg(f, g)(z)
    resid = jg - (mg - f.at_zero() * g.at_zero() - ig)
    return float(np.max(np.abs(resid)))


def interior_samples(n: int, seed: int, r_cap: float = 0.95) -> np.ndarray:
    rng = np.random.default_rng(seed)
    r = r_cap * np.sqrt(rng.uniform(0.0, 1.0, n))
    t = rng.uniform(0.0, TWO_PI, n)
    return r * np.exp(1j * t)


# ---------------------------------------------------------------------------
# Test family and ratio scans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TestFamilyEntry:
    c: complex
    level: int
    function: AnalyticFunction
    norm: float


@dataclass(frozen=True)
class TestFamily:
    params: SpaceParams
    entries: tuple
    norm_max: float
    norm_min: float

    def describe(self) -> dict:
        return {
            "size": len(self.entries),
            "norm_max": self.norm_max,
            "norm_min": self.norm_min,
            "exponent": self.params.translate_exponent,
        }


def make_test_family(
    params: SpaceParams,
    *,
    k_c: int = 10,
    n_directions: int = 8,
    norm_grid: Optional[ParamGrid] = None,
    scan_opts: Optional[dict] = None,
) -> TestFamily:
    """The kernels f_c with exponent p(1-lam)/2 over the scan c-grid, each
    with its translate-norm; c = 0 gives the constant 1 (norm exactly 1).

    The c-grid follows the a-grid radii 1 - 2^-k on the positive real axis
    plus rotations; the proofs this scan operationalizes localize at c
    approaching the boundary, and rotations guard against direction-specific
    mesh artifacts."""
    norm_grid = norm_grid or ParamGrid(k_a=max(8, k_c), a_angle_cap=16)
    scan_opts = scan_opts or {}
    s = params.translate_exponent
    entries = [
        TestFamilyEntry(0.0 + 0.0j, 0, make_power_kernel(0.0, 0.0), 1.0)
    ]
    for k in range(1, k_c + 1):
        r = 1.0 - 2.0 ** -k
        for m in range(n_directions):
            c = r * np.exp(2j * math.pi * m / n_directions)
            fc = make_power_kernel(c, s)
            norm = dm_norm_translate(fc, params, norm_grid, **scan_opts).value
            entries.append(TestFamilyEntry(complex(c), k, fc, norm))
    norms = [e.norm for e in entries]
    return TestFamily(params, tuple(entries), max(norms), min(norms))


@dataclass(frozen=True)
class RatioScanReport:
    kind: str
    symbol: str
    rows: tuple          # (c, level, norm_fc, norm_Tfc, ratio)
    max_ratio: float
    slope: float         # log(ratio) per unit level over the tail
    classification: str  # bounded-trend | unbounded-trend
    grid: dict

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "symbol": self.symbol,
            "max_ratio": self.max_ratio,
            "slope": self.slope,
            "classification": self.classification,
            "grid": self.grid,
            "rows": [
                {
                    "c": {"re": c.real, "im": c.imag},
                    "level": lvl,
                    "norm_fc": nf,
                    "norm_Tfc": nt,
                    "ratio": r,
                }
                for (c, lvl, nf, nt, r) in self.rows
            ],
        }


def ratio_scan(
    kind: OperatorKind,
    g: AnalyticFunction,
    params: SpaceParams,
    *,
    family: Optional[TestFamily] = None,
    norm_grid: Optional[ParamGrid] = None,
    scan_opts: Optional[dict] = None,
    k_c: int = 10,
    n_directions: int = 8,
) -> RatioScanReport:
    """Norm ratios ||T f_c|| / ||f_c|| over the test family, with the tail
    trend of log(ratio) against the level k (radius 1 - 2^-k)."""
    norm_grid = norm_grid or ParamGrid(k_a=max(8, k_c), a_angle_cap=16)
    scan_opts = scan_opts or {}
    if family is None or family.params != params:
        family = make_test_family(
            params, k_c=k_c, n_directions=n_directions,
            norm_grid=norm_grid, scan_opts=scan_opts,
        )
    rows = []
    per_level: dict = {}
    for e in family.entries:
        h = apply_operator(kind, e.function, g)
        nh = dm_norm_translate(h, params, norm_grid, **scan_opts).value
        ratio = nh / e.norm if e.norm > 0 else 0.0
        rows.append((e.c, e.level, e.norm, nh, ratio))
        per_level[e.level] = max(per_level.get(e.level, 0.0), ratio)
    levels = sorted(per_level)
    slope = trend_slope(levels, [per_level[l] for l in levels])
    return RatioScanReport(
        kind=kind.tag,
        symbol=g.label,
        rows=tuple(rows),
        max_ratio=max(r for *_, r in rows) if rows else 0.0,
        slope=slope,
        classification=classify_trend(slope),
        grid={"k_c": k_c, "n_directions": n_directions, **norm_grid.describe()},
    )
