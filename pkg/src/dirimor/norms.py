"""Norms, seminorms and Carleson-type quantities for functions on the disc.

Every supremum in the underlying definitions ranges over a continuum (all
interior points a, all subarcs I); here each is scanned over a finite
deterministic grid and reported as a :class:`NormReport` carrying the
maximizer, the grid description, and a refinement trace.  Membership in the
spaces involved is not decidable by finite sampling, so divergence is always
reported as a *trend*: the slope of log(quantity) against grid level over
the last few levels, with a shared threshold (0.1) separating
"bounded-trend" from "unbounded-trend".

Three scan axes are used, matching where each quantity's divergence lives:

* translate-type quantities scan interior points a at radii 1 - 2^-k
  (level axis = k);
* box-type quantities integrate a derivative measure over Carleson boxes
  and expose the radial depth truncation 1 - 2^-L (level axis = L), which
  is where lacunary-measure divergence shows up;
* boundary/sup-type quantities scan radii toward the circle.

Two independent routes exist for the translate seminorm (translate then
integrate, or change of variables to the weight (1-|phi_a|^2)^p), and a
coefficient-side oracle exists for the weighted Dirichlet norm of
polynomials; tests hold these pairs together.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .analytic import AnalyticFunction, SpaceParams, mobius_translate
from .quadrature import (
    Arc,
    BoxMassTable,
    RadialAnnuliGrid,
    Region,
    TWO_PI,
    _canonical_pieces,
    _intersect_pieces,
    arc_double_integral,
    chord_gap,
    integrate_disc,
    region_node_arrays,
)

TREND_SLOPE_THRESHOLD = 0.1
TREND_TAIL_POINTS = 5


class UnsupportedFunctionError(ValueError):
    """The requested quantity needs a capability the function lacks."""


# ---------------------------------------------------------------------------
# Reports, grids, trends
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormReport:
    """A scanned quantity: its value, where the scan attained it, and how it
    moved under the last refinement step."""

    quantity: str
    value: float
    maximizer: object
    grid: dict
    refinement_delta: float
    error: float = 0.0
    flags: tuple = ()
    levels: tuple = ()  # (level, running value) trace along the scan axis

    def as_dict(self) -> dict:
        maximizer = self.maximizer
        if isinstance(maximizer, complex):
            maximizer = {"re": maximizer.real, "im": maximizer.imag}
        elif isinstance(maximizer, Arc):
            maximizer = {"center": maximizer.center, "length": maximizer.length}
        return {
            "quantity": self.quantity,
            "value": self.value,
            "maximizer": maximizer,
            "grid": self.grid,
            "refinement_delta": self.refinement_delta,
            "error": self.error,
            "flags": list(self.flags),
            "levels": [[int(l), float(v)] for l, v in self.levels],
        }


@dataclass(frozen=True)
class ParamGrid:
    """Finite scan grids for the a-suprema and arc-suprema.

    Interior points: radii 1 - 2^-k for k = 0..k_a with min(max(8, 8*2^k),
    a_angle_cap) equispaced directions (k = 0 is the single point a = 0).
    The cap keeps deep scans affordable; directions always include angle 0,
    where the built-in families concentrate.  Arcs: dyadic lengths 2^-j for
    j = 0..k_arc at n_centers equispaced centers (j = 0 is the full circle).
    """

    k_a: int = 10
    a_angle_cap: int = 64
    k_arc: int = 12
    n_centers: int = 64

    def a_points(self):
        pts = [(0, 0.0 + 0.0j)]
        for k in range(1, self.k_a + 1):
            r = 1.0 - 2.0 ** -k
            n = min(max(8, 8 * 2 ** k), self.a_angle_cap)
            for m in range(n):
                pts.append((k, r * np.exp(2j * math.pi * m / n)))
        return pts

    def a_points_by_direction(self):
        groups: dict = {}
        for level, a in self.a_points():
            key = None if a == 0 else round(float(np.angle(a)) % TWO_PI, 12)
            groups.setdefault(key, []).append((level, a))
        return sorted(groups.items(), key=lambda kv: (kv[0] is not None, kv[0] or 0.0))

    def arcs(self):
        out = [(0, Arc(0.0, 1.0))]
        for j in range(1, self.k_arc + 1):
            for m in range(self.n_centers):
                out.append((j, Arc(TWO_PI * m / self.n_centers, 2.0 ** -j)))
        return out

    def describe(self) -> dict:
        return {
            "k_a": self.k_a,
            "a_angle_cap": self.a_angle_cap,
            "k_arc": self.k_arc,
            "n_centers": self.n_centers,
        }

    def refined(self) -> "ParamGrid":
        return ParamGrid(self.k_a + 1, self.a_angle_cap, self.k_arc + 1, self.n_centers)


def trend_slope(levels, values, tail: int = TREND_TAIL_POINTS) -> float:
    """Least-squares slope of log(value) against level over the last points."""
    xs, ys = [], []
    for x, y in zip(levels, values):
        if y > 0 and math.isfinite(y):
            xs.append(float(x))
            ys.append(math.log(y))
    if len(xs) < 2:
        return 0.0
    xs, ys = np.array(xs[-tail:]), np.array(ys[-tail:])
    xm, ym = xs.mean(), ys.mean()
    denom = float(np.sum((xs - xm) ** 2))
    if denom == 0.0:
        return 0.0
    return float(np.sum((xs - xm) * (ys - ym)) / denom)


def classify_trend(slope: float) -> str:
    return "unbounded-trend" if slope > TREND_SLOPE_THRESHOLD else "bounded-trend"


def _trace_flags(levels_trace) -> tuple:
    slope = trend_slope([l for l, _ in levels_trace], [v for _, v in levels_trace])
    return (classify_trend(slope),)


def _delta(trace) -> float:
    if len(trace) < 2 or trace[-1][1] == 0.0:
        return 0.0
    return abs(trace[-1][1] - trace[-2][1]) / abs(trace[-1][1])


# ---------------------------------------------------------------------------
# Grid selection per function
# ---------------------------------------------------------------------------


def effective_depth(f: AnalyticFunction, depth: int) -> int:
    """Radial depth reachable inside the function's certified radius."""
    if f.r_max >= 1.0:
        return depth
    return max(2, min(depth, int(-math.log2(1.0 - f.r_max) + 1e-9)))


def grid_for_function(
    f: AnalyticFunction,
    depth: int = 28,
    *,
    extra_foci: tuple = (),
    panel_order: int = 6,
    base_panels: int = 16,
    growth_cap: int = 0,
) -> RadialAnnuliGrid:
    """A disc grid adapted to the function: graded toward its singular
    directions when it has any, otherwise uniform at its angular hint.

    Lacunary (oscillatory) functions must stay on uniform (equal-weight)
    angles, where trigonometric aliasing keeps their oscillation integrated
    exactly; graded panels would sample it incoherently.
    """
    depth = effective_depth(f, depth)
    foci = tuple(sorted(set(f.singular_angles) | set(extra_foci)))
    if foci and not f.oscillatory:
        return RadialAnnuliGrid(
            depth=depth, foci=foci, panel_order=panel_order, base_panels=base_panels
        )
    return RadialAnnuliGrid(depth=depth, n_min=f.angular_hint, growth_cap=growth_cap)


def _deriv_density(f: AnalyticFunction, p: float):
    def density(z):
        return np.abs(f.derivative(z)) ** 2 * (1.0 - np.abs(z) ** 2) ** p

    return density


@dataclass(frozen=True)
class WeightedDerivativeMeasure:
    """The measure |g'(z)|^2 (1-|z|^2)^p dm(z) attached to a symbol g."""

    g: AnalyticFunction
    p: float

    def density(self, z):
        return np.abs(self.g.derivative(z)) ** 2 * (1.0 - np.abs(z) ** 2) ** self.p


# ---------------------------------------------------------------------------
# Weighted Dirichlet norm and its coefficient oracle
# ---------------------------------------------------------------------------


def beta_moment(n: int, p: float) -> float:
    """integral over D of |z|^(2(n-1)) (1-|z|^2)^p dm = Gamma(n)Gamma(p+1)/Gamma(n+p+1)."""
    return math.exp(math.lgamma(n) + math.lgamma(p + 1.0) - math.lgamma(n + p + 1.0))


def dirichlet_norm_coeff(coeffs: Sequence[complex], p: float) -> float:
    """Coefficient-side oracle for the weighted Dirichlet norm of a polynomial:
    sqrt(|a_0|^2 + sum n^2 |a_n|^2 Gamma(n)Gamma(p+1)/Gamma(n+p+1))."""
    coeffs = [complex(c) for c in coeffs]
    total = abs(coeffs[0]) ** 2 if coeffs else 0.0
    for n in range(1, len(coeffs)):
        total += n * n * abs(coeffs[n]) ** 2 * beta_moment(n, p)
    return math.sqrt(total)


def dirichlet_norm(
    f: AnalyticFunction,
    p: float,
    grid: Optional[RadialAnnuliGrid] = None,
    *,
    depth: int = 40,
) -> NormReport:
    """sqrt(|f(0)|^2 + integral of |f'|^2 (1-|z|^2)^p dm)."""
    if grid is None:
        grid = grid_for_function(f, depth, panel_order=8, base_panels=24)
    res = integrate_disc(_deriv_density(f, p), grid)
    f0 = abs(f.at_zero())
    value = math.sqrt(f0 * f0 + max(res.value, 0.0))
    prev = math.sqrt(f0 * f0 + max(res.value - res.level_sums[-1], 0.0))
    delta = abs(value - prev) / value if value > 0 else 0.0
    return NormReport(
        quantity="dirichlet",
        value=value,
        maximizer=None,
        grid=grid.describe(),
        refinement_delta=delta,
        error=res.error,
    )


# ---------------------------------------------------------------------------
# Translate seminorms and translate-type norms
# ---------------------------------------------------------------------------


def translate_seminorm(
    f: AnalyticFunction,
    p: float,
    a: complex,
    *,
    route: str = "weight",
    depth: int = 28,
    panel_order: int = 6,
    base_panels: int = 16,
) -> float:
    """The weighted Dirichlet seminorm of f o phi_a - f(a).

    route="weight" integrates |f'(z)|^2 (1-|phi_a(z)|^2)^p by the change of
    variables; route="translate" builds the translate and integrates
    |(f o phi_a)'|^2 (1-|z|^2)^p directly.  The two must agree within
    quadrature tolerance.
    """
    a = complex(a)
    if abs(a) >= 1.0:
        raise ValueError("translate point must satisfy |a| < 1")
    if route == "translate":
        g = mobius_translate(f, a)
        if g.r_max < 0.5:
            raise UnsupportedFunctionError(
                f"{f.label}: translate route needs evaluation up to |z| ~ 1, but the "
                f"translate's certified radius is {g.r_max:.3g}; use route='weight'"
            )
        grid = grid_for_function(
            g, depth, panel_order=panel_order, base_panels=base_panels,
            growth_cap=_growth_for_radius(abs(a)),
        )
        res = integrate_disc(_deriv_density(g, p), grid)
        return math.sqrt(max(res.value, 0.0))
    if route != "weight":
        raise ValueError(f"unknown route {route!r}")
    extra = (float(np.angle(a)) % TWO_PI,) if a != 0 else ()
    grid = grid_for_function(
        f, depth, extra_foci=extra, panel_order=panel_order,
        base_panels=base_panels, growth_cap=_growth_for_radius(abs(a)),
    )
    z, w, lv = grid.nodes()
    base = np.abs(f.derivative(z)) ** 2 * (1.0 - np.abs(z) ** 2) ** p * w
    q = (1.0 - abs(a) ** 2) / np.abs(1.0 - np.conj(a) * z) ** 2
    return math.sqrt(max(float(np.sum(base * q ** p)), 0.0))


def _growth_for_radius(r: float) -> int:
    if r <= 0.0:
        return 0
    return max(4, int(-math.log2(max(1.0 - r, 1e-12))) + 2)


def _translate_scan(
    f: AnalyticFunction,
    p: float,
    weight_of_a: Callable[[float], float],
    grid: ParamGrid,
    *,
    depth: int = 24,
    panel_order: int = 4,
    base_panels: int = 16,
):
    """Weighted translate seminorms over the a-grid.

    Returns (entries, per_level_max) where entries are (level, a, weighted
    value).  Functions with focal directions get one graded grid per scan
    direction (reusing the derivative evaluation across the radii of that
    direction); focus-free functions share a single uniform grid dense
    enough in angle for the deepest Mobius weight scanned.
    """
    entries = []
    if not f.oscillatory:
        for _, pts in grid.a_points_by_direction():
            ang = None
            for _, a in pts:
                if a != 0:
                    ang = float(np.angle(a)) % TWO_PI
                    break
            disc = grid_for_function(
                f,
                depth,
                extra_foci=(ang,) if ang is not None else (),
                panel_order=panel_order,
                base_panels=base_panels,
            )
            entries.extend(_scan_group(f, p, weight_of_a, pts, disc))
    else:
        disc = grid_for_function(f, depth, growth_cap=min(grid.k_a + 1, 11))
        entries.extend(_scan_group(f, p, weight_of_a, grid.a_points(), disc))
    per_level: dict = {}
    for level, _, v in entries:
        per_level[level] = max(per_level.get(level, 0.0), v)
    return entries, per_level


def _scan_group(f, p, weight_of_a, pts, disc):
    z, w, _ = disc.nodes()
    base = np.abs(f.derivative(z)) ** 2 * (1.0 - np.abs(z) ** 2) ** p * w
    out = []
    for level, a in pts:
        if a == 0:
            sem2 = float(np.sum(base))
        else:
            q = (1.0 - abs(a) ** 2) / np.abs(1.0 - np.conj(a) * z) ** 2
            sem2 = float(np.sum(base * q ** p))
        sem = math.sqrt(max(sem2, 0.0))
        out.append((level, a, weight_of_a(abs(a)) * sem))
    return out


def _scan_report(name, f0, entries, per_level, grid_desc) -> NormReport:
    best = max(entries, key=lambda e: e[2])
    trace = []
    running = 0.0
    for level in sorted(per_level):
        running = max(running, per_level[level])
        trace.append((level, f0 + running))
    value = f0 + best[2]
    return NormReport(
        quantity=name,
        value=value,
        maximizer=complex(best[1]),
        grid=grid_desc,
        refinement_delta=_delta(trace),
        flags=_trace_flags(trace),
        levels=tuple(trace),
    )


def dm_norm_translate(
    f: AnalyticFunction,
    params: SpaceParams,
    grid: Optional[ParamGrid] = None,
    **scan_opts,
) -> NormReport:
    """|f(0)| + sup over the a-grid of (1-|a|^2)^(p(1-lam)/2) ||f o phi_a - f(a)||_Dp."""
    grid = grid or ParamGrid()
    s = params.translate_exponent
    weight = lambda r: (1.0 - r * r) ** s
    entries, per_level = _translate_scan(f, params.p, weight, grid, **scan_opts)
    f0 = abs(f.at_zero())
    desc = {"scan": "dm-translate", **grid.describe()}
    return _scan_report("dm-translate", f0, entries, per_level, desc)


def general_morrey_norm(
    f: AnalyticFunction,
    p: float,
    s: float,
    grid: Optional[ParamGrid] = None,
    **scan_opts,
) -> NormReport:
    """|f(0)| + sup over the a-grid of (1-|a|)^s ||f o phi_a - f(a)||_Dp.

    The power weight here uses (1-|a|); it differs from the (1-|a|^2)
    convention of the translate norm by a factor bounded in [1, 2^s].
    s = 0 gives the Mobius-invariant scan.
    """
    if s < 0:
        raise ValueError("power-weight exponent must be >= 0")
    grid = grid or ParamGrid()
    weight = lambda r: (1.0 - r) ** s
    entries, per_level = _translate_scan(f, p, weight, grid, **scan_opts)
    f0 = abs(f.at_zero())
    desc = {"scan": "morrey", "s": s, **grid.describe()}
    return _scan_report("morrey", f0, entries, per_level, desc)


# ---------------------------------------------------------------------------
# Box-type quantities
# ---------------------------------------------------------------------------

TRACE_LEVEL_CAP = 24


def _box_level_sums(
    f: AnalyticFunction,
    p_list: Sequence[float],
    grid: ParamGrid,
    *,
    rel_depth: int = 16,
    radial_order: int = 6,
    panel_order: int = 6,
    base_panels: int = 6,
):
    """Per-arc, per-exponent dyadic-level sums of |f'|^2 (1-|z|^2)^p over S(I).

    Returns a list of (level_j, Arc, sums) with sums shaped
    (len(p_list), TRACE_LEVEL_CAP+2); the final slot collects contributions
    deeper than the trace cap so that the full-depth value is the row sum.
    All exponents share the same nodes, which makes nodewise-dominated
    integrand inequalities carry over to the computed values exactly.
    """
    max_level = None
    if f.r_max < 1.0:
        max_level = effective_depth(f, 10 ** 6)
    p_arr = np.asarray(list(p_list), dtype=float)
    out = []
    arcs = grid.arcs()
    by_level: dict = {}
    for j, arc in arcs:
        by_level.setdefault(j, []).append(arc)
    foci = f.singular_angles
    for j, arc_list in sorted(by_level.items()):
        length = arc_list[0].length
        half = math.pi * length
        plain, focused = [], []
        for arc in arc_list:
            near = any(
                min((ph - arc.center) % TWO_PI, (arc.center - ph) % TWO_PI) < 2.5 * half
                for ph in foci
            )
            (focused if near else plain).append(arc)
        if plain:
            sums_list = _plain_box_sums(
                f, p_arr, plain, length,
                rel_depth=rel_depth, radial_order=radial_order,
                panel_order=panel_order, base_panels=base_panels,
                max_level=max_level,
            )
            out.extend((j, arc, s) for arc, s in zip(plain, sums_list))
        for arc in focused:
            reg = Region.box_of_arc(arc)
            z, w, lv = region_node_arrays(
                reg, rel_depth=rel_depth, radial_order=radial_order,
                foci=foci, base_panels=base_panels, panel_order=panel_order,
                max_level=max_level,
            )
            sums = _level_sums_from_nodes(f, p_arr, z, w, lv)
            out.append((j, arc, sums))
    return out


def _level_sums_from_nodes(f, p_arr, z, w, lv):
    sums = np.zeros((len(p_arr), TRACE_LEVEL_CAP + 2))
    if z.size == 0:
        return sums
    d2 = np.abs(f.derivative(z)) ** 2 * w
    one_minus = 1.0 - np.abs(z) ** 2
    idx = np.minimum(lv, TRACE_LEVEL_CAP + 1)
    for i, p in enumerate(p_arr):
        contrib = d2 * one_minus ** p
        sums[i] = np.bincount(idx, weights=contrib, minlength=TRACE_LEVEL_CAP + 2)
    return sums


def _plain_box_sums(f, p_arr, arcs, length, *, rel_depth, radial_order,
                    panel_order, base_panels, max_level):
    from .quadrature import _gauss_on, _window_nodes

    centers = np.array([a.center for a in arcs])
    half = math.pi * length
    d = length
    sums = np.zeros((len(arcs), len(p_arr), TRACE_LEVEL_CAP + 2))
    for ell in range(rel_depth):
        lo_r = 1.0 - d * 2.0 ** -ell
        hi_r = 1.0 - d * 2.0 ** -(ell + 1)
        if max_level is not None:
            cap_r = 1.0 - 2.0 ** -max_level
            if lo_r >= cap_r:
                break
            hi_r = min(hi_r, cap_r)
        rr, rw = _gauss_on(lo_r, hi_r, radial_order)
        th, tw = _window_nodes(-half, half, 1.0 - hi_r, (), base_panels, panel_order)
        j_abs = min(int(-math.log2(max(1.0 - 0.5 * (lo_r + hi_r), 1e-300))), TRACE_LEVEL_CAP + 1)
        ang = centers[:, None] + th[None, :]
        for i in range(len(rr)):
            z = rr[i] * np.exp(1j * ang)
            d2 = np.abs(f.derivative(z)) ** 2
            wrow = (rw[i] * rr[i] / math.pi) * tw
            one_minus_p = (1.0 - rr[i] ** 2) ** p_arr
            row = d2 @ wrow  # per-arc sum of |f'|^2 * angular weights
            for q, om in enumerate(one_minus_p):
                sums[:, q, j_abs] += om * row
    return [sums[m] for m in range(len(arcs))]


def _box_scan_report(name, weighted, grid, extra_desc=None) -> NormReport:
    """Assemble a box-type report from per-arc (arc, weight, level sums) data.

    ``weighted``: list of (level_j, arc, weight, sums_row) with sums_row the
    dyadic-level contributions of the measure over S(arc).  The scan trace
    runs over the radial depth truncation.
    """
    trace = []
    best_val, best_arc = 0.0, None
    totals = []
    for j, arc, wgt, row in weighted:
        tot = wgt * float(np.sum(row))
        totals.append(tot)
        if tot > best_val:
            best_val, best_arc = tot, arc
    for L in range(TRACE_LEVEL_CAP + 1):
        v = 0.0
        for (j, arc, wgt, row) in weighted:
            v = max(v, wgt * float(np.sum(row[: L + 1])))
        trace.append((L, v))
    trace.append((TRACE_LEVEL_CAP + 1, best_val))
    # drop leading empty levels
    trace = [(l, v) for l, v in trace if v > 0.0] or [(0, 0.0)]
    desc = {"scan": name, **grid.describe()}
    if extra_desc:
        desc.update(extra_desc)
    return NormReport(
        quantity=name,
        value=best_val,
        maximizer=best_arc,
        grid=desc,
        refinement_delta=_delta(trace),
        flags=_trace_flags(trace),
        levels=tuple(trace),
    )


def dm_seminorm_box(
    f: AnalyticFunction,
    params: SpaceParams,
    grid: Optional[ParamGrid] = None,
    **opts,
) -> NormReport:
    """sup over arcs of |I|^(-p lam) integral over S(I) of |f'|^2 (1-|z|^2)^p dm.

    Reported unsquare-rooted; lam = 1 gives the Mobius-invariant box scan.
    The levels trace shows the quantity under radial depth truncation.
    """
    grid = grid or ParamGrid()
    sums = _box_level_sums(f, [params.p], grid, **opts)
    weighted = [
        (j, arc, arc.length ** -params.box_exponent, row[0]) for j, arc, row in sums
    ]
    return _box_scan_report("dm-box", weighted, grid, {"p": params.p, "lam": params.lam})


def qp_quantity(f: AnalyticFunction, q: float, grid: Optional[ParamGrid] = None, **opts) -> NormReport:
    """The lam = 1 box scan: sup |I|^-q integral over S(I) of |f'|^2 (1-|z|^2)^q dm."""
    return dm_seminorm_box(f, SpaceParams(q, 1.0), grid, **opts)


def qp_log_quantity(
    g: AnalyticFunction,
    p: float,
    grid: Optional[ParamGrid] = None,
    **opts,
) -> NormReport:
    """sup over arcs of (log(1/|I|))^2 |I|^-p integral over S(I) of the
    derivative measure; the full circle contributes with log factor 0."""
    if not (0.0 < p < 1.0):
        raise ValueError("the logarithmic box scan needs p in (0, 1)")
    grid = grid or ParamGrid()
    sums = _box_level_sums(g, [p], grid, **opts)
    weighted = []
    for j, arc, row in sums:
        logf = 0.0 if arc.length >= 1.0 else math.log(1.0 / arc.length) ** 2
        weighted.append((j, arc, logf * arc.length ** -p, row[0]))
    return _box_scan_report("qp-log", weighted, grid, {"p": p})


def box_quantity_pair(
    f: AnalyticFunction,
    p1: float,
    p2: float,
    grid: Optional[ParamGrid] = None,
    **opts,
):
    """Box integrals of the derivative measure at two weight exponents on the
    same nodes: list of (arc, value_p1, value_p2).  Sharing nodes preserves
    nodewise integrand domination in the computed values."""
    grid = grid or ParamGrid()
    sums = _box_level_sums(f, [p1, p2], grid, **opts)
    return [
        (arc, float(np.sum(row[0])), float(np.sum(row[1]))) for _, arc, row in sums
    ]


# ---------------------------------------------------------------------------
# Boundary double-integral seminorm
# ---------------------------------------------------------------------------


def boundary_double_seminorm(
    f: AnalyticFunction,
    params: SpaceParams,
    grid: Optional[ParamGrid] = None,
    *,
    t_depth: int = 36,
    s_base: int = 8,
    s_order: int = 8,
    resolution_check: bool = False,
) -> NormReport:
    """sup over arcs of |I|^(-p lam) double integral over I x I of
    |f(u)-f(v)|^2 / |u-v|^(2-p) with raw arc-length measure.

    Needs a boundary trace; the arc-length power uses normalized |I| while
    |du||dv| stays in radians, so values differ from the box quantity by a
    fixed dimensional constant, which ratio-stability checks absorb.
    """
    if not f.has_boundary_values:
        raise UnsupportedFunctionError(
            f"{f.label}: boundary double integral needs a boundary trace"
        )
    grid = grid or ParamGrid(k_arc=10, n_centers=16)
    p = params.p

    def F(u, v):
        return np.abs(f.boundary(u) - f.boundary(v)) ** 2 / chord_gap(u, v) ** (2.0 - p)

    best_val, best_arc, err = 0.0, None, 0.0
    per_level: dict = {}
    for j, arc in grid.arcs():
        res = arc_double_integral(
            F, arc, beta=1.0 - p,
            t_depth=t_depth, s_base=s_base, s_order=s_order,
            v_foci=f.singular_angles, resolution_check=resolution_check,
        )
        val = res.value * arc.length ** -params.box_exponent
        per_level[j] = max(per_level.get(j, 0.0), val)
        if val > best_val:
            best_val, best_arc, err = val, arc, res.error
    trace = []
    running = 0.0
    for j in sorted(per_level):
        running = max(running, per_level[j])
        trace.append((j, running))
    return NormReport(
        quantity="boundary-double",
        value=best_val,
        maximizer=best_arc,
        grid={"scan": "boundary-double", **grid.describe()},
        refinement_delta=_delta(trace),
        error=err,
        flags=_trace_flags(trace),
        levels=tuple(trace),
    )


# ---------------------------------------------------------------------------
# Growth envelope and sup-norm scans
# ---------------------------------------------------------------------------


def growth_envelope(
    f: AnalyticFunction,
    params: SpaceParams,
    *,
    k_levels: int = 12,
    n_directions: int = 16,
) -> float:
    """max over sampled rays of |f(z)| (1-|z|)^(p(1-lam)/2).

    Radii 1 - 2^-k for k = 0..k_levels along equispaced directions plus the
    function's own singular directions (clipped to its certified radius)."""
    s = params.translate_exponent
    dirs = sorted(set(f.singular_angles) | {TWO_PI * m / n_directions for m in range(n_directions)})
    k_max = min(k_levels, effective_depth(f, k_levels))
    best = 0.0
    for k in range(k_max + 1):
        r = 1.0 - 2.0 ** -k
        z = r * np.exp(1j * np.array(dirs)) if r > 0 else np.array([0.0 + 0.0j])
        vals = np.abs(f(z)) * (1.0 - r) ** s
        best = max(best, float(np.max(vals)))
    return best


def hinf_sup(g: AnalyticFunction, *, k_levels: int = 10, n_max: int = 8192) -> NormReport:
    """max of |g| over radii 1 - 2^-k and dense angles; nondecreasing in k.

    The levels trace is the per-radius maximum; an unbounded-trend flag
    means the boundary sup keeps growing as the circle is approached."""
    k_max = min(k_levels, effective_depth(g, k_levels))
    trace = []
    best, best_z = 0.0, 0.0 + 0.0j
    for k in range(k_max + 1):
        r = 1.0 - 2.0 ** -k
        n = min(max(64, 8 * 2 ** k), n_max)
        th = TWO_PI * np.arange(n) / n
        z = r * np.exp(1j * th) if r > 0 else np.array([0.0 + 0.0j])
        vals = np.abs(g(z))
        i = int(np.argmax(vals))
        if vals[i] > best:
            best, best_z = float(vals[i]), complex(z[i])
        trace.append((k, best))
    return NormReport(
        quantity="hinf",
        value=best,
        maximizer=best_z,
        grid={"scan": "hinf", "k_levels": k_max, "n_max": n_max},
        refinement_delta=_delta(trace),
        flags=_trace_flags(trace),
        levels=tuple(trace),
    )


# ---------------------------------------------------------------------------
# Measure self-interaction scan
# ---------------------------------------------------------------------------


def gpcm_quantity(
    g: AnalyticFunction,
    p: float,
    *,
    k_w: int = 6,
    w_angle_cap: int = 16,
    table_depth: int = 12,
    outer_rel_depth: int = 8,
    outer_radial_order: int = 4,
    outer_base_panels: int = 4,
    outer_panel_order: int = 4,
) -> NormReport:
    """sup over the w-grid of
    mu(S(w))^-1 integral over S(w) of mu(S(z) cap S(w))^2 (1-|z|^2)^(-2-p) dm(z)
    for the derivative measure mu of g.

    Box masses of mu come from a cumulative table over a fixed grid (built
    once per symbol); intersections are exact interval geometry.  Points
    with vanishing mu(S(w)) are skipped and recorded; a fully skipped scan
    reports 0 with a "degenerate" flag."""
    measure = WeightedDerivativeMeasure(g, p)
    table_depth = min(table_depth, effective_depth(g, table_depth))
    table = BoxMassTable(measure.density, depth=table_depth)
    total = table.total_mass()
    pts = [(0, 0.0 + 0.0j)]
    for k in range(1, k_w + 1):
        r = 1.0 - 2.0 ** -k
        n = min(max(8, 8 * 2 ** k), w_angle_cap)
        pts.extend((k, r * np.exp(2j * math.pi * m / n)) for m in range(n))

    best, best_w = 0.0, None
    skipped = 0
    per_level: dict = {}
    for k, wpt in pts:
        sw = Region.box_of_point(wpt)
        mu_sw = table.region_mass(sw)
        if not (mu_sw > 1e-14 * max(total, 1e-300)):
            skipped += 1
            continue
        foci = tuple(sorted(set(g.singular_angles) | ({float(np.angle(wpt)) % TWO_PI} if wpt != 0 else set())))
        z, w, _ = region_node_arrays(
            sw, rel_depth=outer_rel_depth, radial_order=outer_radial_order,
            foci=foci, base_panels=outer_base_panels, panel_order=outer_panel_order,
            max_level=table_depth,
        )
        if z.size == 0:
            skipped += 1
            continue
        r0 = np.abs(z)
        pieces_list = []
        for zz in z:
            halfw = math.pi * (1.0 - abs(zz))
            c = math.atan2(zz.imag, zz.real)
            pz = _canonical_pieces(c - halfw, c + halfw)
            pieces_list.append(_intersect_pieces(pz, sw.pieces))
        masses = table.box_masses(r0, pieces_list)
        integrand = masses ** 2 / (1.0 - r0 ** 2) ** (2.0 + p)
        val = float(np.sum(integrand * w)) / mu_sw
        per_level[k] = max(per_level.get(k, 0.0), val)
        if val > best:
            best, best_w = val, complex(wpt)
    flags: tuple = ()
    if best_w is None:
        flags = ("degenerate",)
        best = 0.0
    trace = []
    running = 0.0
    for k in sorted(per_level):
        running = max(running, per_level[k])
        trace.append((k, running))
    report = NormReport(
        quantity="gpcm",
        value=best,
        maximizer=best_w,
        grid={"scan": "gpcm", "k_w": k_w, "w_angle_cap": w_angle_cap,
              "table_depth": table_depth, "skipped": skipped},
        refinement_delta=_delta(trace),
        flags=flags + (_trace_flags(trace) if trace else ()),
        levels=tuple(trace),
    )
    return report
