"""Verification tasks V1-V10: each one checks a single quantitative property
of the norm machinery at desk scale, over configurable grids, and reports
measured values against fixed thresholds.

Tasks are data: the registry maps an id to a statement, fixed parameters,
and thresholds; runners only orchestrate scans from the other modules, so
growing the suite list in the config grows the verification surface without
new task logic.  Reports are deterministic for a fixed config and worker
count independent (tasks are pure; assembly is ordered by id); the one
exception is the per-task runtime_ms field, which carries wall-clock timing
and is excluded from reproducibility comparisons.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from .analytic import AnalyticFunction, BoundaryPoint, SpaceParams, log_kernel, make_power_kernel, make_taylor
from .gaps import GapCoefficients, gap_block_sums, remark_coefficient_rule, remark_example
from .norms import (
    ParamGrid,
    boundary_double_seminorm,
    box_quantity_pair,
    dm_norm_translate,
    dm_seminorm_box,
    growth_envelope,
    qp_quantity,
    trend_slope,
)
from .operators import (
    IG,
    JG,
    ibp_residual,
    interior_samples,
    make_test_family,
    ratio_scan,
)
from .quadrature import Region, integrate_region

SCHEMA = "dirimor-verify@1"

DEFAULT_SUITE = (
    "taylor:1",
    "taylor:0,1",
    "taylor:0,0,1",
    "taylor:1,2,0,1",
    "kernel:c=0.5+0i,s=auto",
    "kernel:c=0.9+0i,s=auto",
    "kernel:c=0.99+0i,s=auto",
    "kernel:c=1+0i,s=auto",
    "gap:q=0.2,K=20",
    "gap:q=0.5,K=20",
    "log1",
)


@dataclass(frozen=True)
class RunConfig:
    """Grid sizes, effort knobs and the suite; defaults reproduce the
    acceptance-criteria runs."""

    p: float = 0.5
    lam: float = 0.4
    # a-scan and arc-scan grids
    k_a: int = 10
    a_angle_cap: int = 64
    k_arc: int = 12
    n_centers: int = 64
    # disc quadrature for translate scans
    depth: int = 24
    panel_order: int = 4
    base_panels: int = 16
    # fitted box quadrature
    box_rel_depth: int = 16
    box_radial_order: int = 6
    box_panel_order: int = 6
    box_base_panels: int = 6
    # boundary double integrals
    boundary_k_arc: int = 10
    boundary_n_centers: int = 16
    boundary_t_depth: int = 36
    # operator ratio scans
    k_c: int = 10
    c_directions: int = 8
    scan_k_a: int = 10
    scan_angle_cap: int = 16
    scan_depth: int = 20
    # misc
    workers: int = 1
    seed: int = 20260808
    out: str = "dirimor-report.json"
    suite: tuple = DEFAULT_SUITE
    tasks: tuple = ("all",)

    def space_params(self) -> SpaceParams:
        return SpaceParams(self.p, self.lam)

    def param_grid(self) -> ParamGrid:
        return ParamGrid(self.k_a, self.a_angle_cap, self.k_arc, self.n_centers)

    def scan_grid(self) -> ParamGrid:
        return ParamGrid(self.scan_k_a, self.scan_angle_cap, self.k_arc, self.n_centers)

    def boundary_grid(self) -> ParamGrid:
        return ParamGrid(self.k_a, self.a_angle_cap, self.boundary_k_arc, self.boundary_n_centers)

    def translate_opts(self) -> dict:
        return dict(depth=self.depth, panel_order=self.panel_order, base_panels=self.base_panels)

    def box_opts(self) -> dict:
        return dict(
            rel_depth=self.box_rel_depth,
            radial_order=self.box_radial_order,
            panel_order=self.box_panel_order,
            base_panels=self.box_base_panels,
        )

    def scan_opts(self) -> dict:
        return dict(depth=self.scan_depth, panel_order=self.panel_order, base_panels=12)

    def describe(self) -> dict:
        d = dataclasses.asdict(self)
        d["suite"] = list(self.suite)
        d["tasks"] = list(self.tasks)
        return d

    @staticmethod
    def from_file(path) -> "RunConfig":
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        return RunConfig().with_overrides(data)

    def with_overrides(self, data: dict) -> "RunConfig":
        known = {f.name for f in dataclasses.fields(RunConfig)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        clean = {}
        for k, v in data.items():
            if k in ("suite", "tasks") and v is not None:
                v = tuple(v)
            if v is not None:
                clean[k] = v
        return dataclasses.replace(self, **clean)


def resolve_config(path: Optional[str] = None, overrides: Optional[dict] = None) -> RunConfig:
    """defaults < DIRIMOR_CONFIG env file < explicit file < overrides."""
    cfg = RunConfig()
    env_path = os.environ.get("DIRIMOR_CONFIG")
    if env_path and path is None and Path(env_path).exists():
        cfg = cfg.with_overrides(json.loads(Path(env_path).read_text()))
    if path is not None:
        cfg = cfg.with_overrides(json.loads(Path(path).read_text()))
    if overrides:
        cfg = cfg.with_overrides(overrides)
    return cfg


# ---------------------------------------------------------------------------
# Suite construction
# ---------------------------------------------------------------------------


class FunctionSpecError(ValueError):
    """A function spec string failed to parse; names the offending token."""


def parse_function_spec(text: str, params: Optional[SpaceParams] = None) -> AnalyticFunction:
    """Build a function from the mini-language:

    ``taylor:1,0,2`` | ``kernel:c=0.9+0i,s=0.35`` | ``gap:q=0.3,K=20`` | ``log1``

    Inside kernel specs, ``s=auto`` resolves to p(1-lam)/2 of the supplied
    parameters and |c| = 1 selects the boundary kernel.
    """
    text = text.strip()
    if text == "log1":
        return log_kernel()
    head, sep, rest = text.partition(":")
    if not sep:
        raise FunctionSpecError(f"unknown function spec {text!r}")
    if head == "taylor":
        coeffs = []
        for tok in rest.split(","):
            try:
                coeffs.append(_parse_complex(tok))
            except ValueError:
                raise FunctionSpecError(f"taylor spec: bad coefficient {tok!r}") from None
        return make_taylor(coeffs)
    fields = {}
    for item in rest.split(","):
        key, eq, val = item.partition("=")
        if not eq:
            raise FunctionSpecError(f"{head} spec: expected key=value, got {item!r}")
        fields[key.strip()] = val.strip()
    if head == "kernel":
        missing = {"c", "s"} - set(fields)
        if missing:
            raise FunctionSpecError(f"kernel spec: missing {sorted(missing)}")
        try:
            c = _parse_complex(fields["c"])
        except ValueError:
            raise FunctionSpecError(f"kernel spec: bad point {fields['c']!r}") from None
        if fields["s"] == "auto":
            if params is None:
                raise FunctionSpecError("kernel spec: s=auto needs space parameters")
            s = params.translate_exponent
        else:
            try:
                s = float(fields["s"])
            except ValueError:
                raise FunctionSpecError(f"kernel spec: bad exponent {fields['s']!r}") from None
        try:
            if abs(abs(c) - 1.0) <= 1e-12:
                return make_power_kernel(BoundaryPoint(math.atan2(c.imag, c.real)), s)
            return make_power_kernel(c, s)
        except ValueError as exc:
            raise FunctionSpecError(f"kernel spec: {exc}") from None
    if head == "gap":
        missing = {"q"} - set(fields)
        if missing:
            raise FunctionSpecError("gap spec: missing q")
        try:
            q = float(fields["q"])
            K = int(fields.get("K", "20"))
        except ValueError as exc:
            raise FunctionSpecError(f"gap spec: {exc}") from None
        try:
            return remark_example(q, K)
        except ValueError as exc:  # covers insufficient truncation depth
            raise FunctionSpecError(f"gap spec: {exc}") from None
    raise FunctionSpecError(f"unknown function family {head!r}")


def _parse_complex(tok: str) -> complex:
    tok = tok.strip().replace("i", "j")
    if not tok:
        raise ValueError("empty number")
    return complex(tok)


def build_suite(config: RunConfig, params: SpaceParams):
    return [(spec, parse_function_spec(spec, params)) for spec in config.suite]


def _boundary_suite(suite):
    return [(n, f) for n, f in suite if f.has_boundary_values]


# ---------------------------------------------------------------------------
# Task results and registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TaskResult:
    task_id: str
    statement: str
    inputs: dict
    measured: list
    thresholds: dict
    passed: bool
    runtime_ms: int
    notes: tuple = ()

    def as_dict(self) -> dict:
        return {
            "task_id": self.task_id,
            "statement": self.statement,
            "inputs": self.inputs,
            "measured": self.measured,
            "thresholds": self.thresholds,
            "pass": self.passed,
            "runtime_ms": self.runtime_ms,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class VerificationTask:
    task_id: str
    statement: str
    runner: Callable
    fixed: dict = field(default_factory=dict)


def _v1(config: RunConfig, fixed: dict):
    """Box quantity vs squared translate quantity across the suite."""
    params = config.space_params()
    suite = build_suite(config, params)
    lo, hi = fixed["ratio_band"]
    dlo, dhi = fixed["drift_band"]
    grid, rgrid = config.param_grid(), config.param_grid().refined()
    measured, ok = [], True
    for name, f in suite:
        row = {"function": name}
        ratios = []
        for g in (grid, rgrid):
            t = dm_norm_translate(f, params, g, **config.translate_opts())
            b = dm_seminorm_box(f, params, g, **config.box_opts())
            tq = (t.value - abs(f.at_zero())) ** 2
            if tq <= 1e-18 or b.value <= 1e-18:
                ratios = None
                break
            ratios.append(tq / b.value)
        if ratios is None:
            row["skipped"] = "degenerate"
            measured.append(row)
            continue
        drift = ratios[1] / ratios[0]
        row.update(ratio=ratios[0], refined_ratio=ratios[1], drift=drift)
        good = lo <= ratios[0] <= hi and lo <= ratios[1] <= hi and dlo < drift < dhi
        row["pass"] = good
        ok = ok and good
        measured.append(row)
    return measured, ok


def _v2(config: RunConfig, fixed: dict):
    """Growth envelope controlled by the translate norm, drift-stable."""
    params = config.space_params()
    suite = build_suite(config, params)
    drift_cap = fixed["drift_cap"]
    measured, ok = [], True
    c_est = 0.0
    for name, f in suite:
        n1 = dm_norm_translate(f, params, config.param_grid(), **config.translate_opts()).value
        n2 = dm_norm_translate(f, params, config.param_grid().refined(), **config.translate_opts()).value
        e1 = growth_envelope(f, params, k_levels=12)
        e2 = growth_envelope(f, params, k_levels=14)
        r1, r2 = e1 / n1, e2 / n2
        drift = r2 / r1 if r1 > 0 else 1.0
        good = (1.0 / drift_cap) < drift < drift_cap
        c_est = max(c_est, r1, r2)
        measured.append({
            "function": name, "envelope": e1, "norm": n1,
            "ratio": r1, "refined_ratio": r2, "drift": drift, "pass": good,
        })
        ok = ok and good
    measured.append({"C_est": c_est})
    return measured, ok


def _v3(config: RunConfig, fixed: dict):
    """Lune quantity of the boundary power kernel across dyadic chords."""
    p, lam = fixed["p"], fixed["lam"]
    params = SpaceParams(p, lam)
    f = make_power_kernel(BoundaryPoint(0.0), params.translate_exponent)
    spread_cap = fixed["spread_cap"]
    density = lambda z: np.abs(f.derivative(z)) ** 2 * (1 - np.abs(z) ** 2) ** p
    vals = []
    for j in range(1, fixed["h_levels"] + 1):
        h = 2.0 ** -j
        reg = Region.lune_of(0.0, h)
        q = integrate_region(
            density, reg, foci=(0.0,), rel_depth=24,
            radial_order=config.box_radial_order,
            panel_order=config.box_panel_order,
        ).value / h ** params.box_exponent
        vals.append({"h": h, "quantity": q})
    qs = sorted(v["quantity"] for v in vals)
    med = qs[len(qs) // 2]
    ok = all(med / spread_cap <= v["quantity"] <= med * spread_cap for v in vals)
    vals.append({"median": med})
    return vals, ok


def _v4(config: RunConfig, fixed: dict):
    """Weight-exponent box inequality with the (2|I|)^(p2-p1) factor."""
    p1, p2 = fixed["p1"], fixed["p2"]
    params = config.space_params()
    suite = build_suite(config, params)
    grid = config.param_grid()
    measured, violations, checked = [], 0, 0
    for name, f in suite:
        worst = 0.0
        for arc, q1, q2 in box_quantity_pair(f, p1, p2, grid, **config.box_opts()):
            checked += 1
            bound = (2.0 * arc.length) ** (p2 - p1) * q1
            if q2 > bound * (1 + 1e-12) + 1e-300:
                violations += 1
            if bound > 0:
                worst = max(worst, q2 / bound)
        measured.append({"function": name, "max_quotient": worst})
    measured.append({"arcs_checked": checked, "violations": violations})
    return measured, violations == 0


def _v5(config: RunConfig, fixed: dict):
    """Boundary double-integral quantity vs box quantity, drift-stable."""
    params = config.space_params()
    suite = _boundary_suite(build_suite(config, params))
    drift_cap = fixed["drift_cap"]
    bgrid = config.boundary_grid()
    bgrid_fine = ParamGrid(bgrid.k_a, bgrid.a_angle_cap, bgrid.k_arc + 1, bgrid.n_centers)
    measured, ok = [], True
    for name, f in suite:
        bx = dm_seminorm_box(f, params, config.param_grid(), **config.box_opts()).value
        if bx <= 1e-18:
            measured.append({"function": name, "skipped": "degenerate"})
            continue
        d1 = boundary_double_seminorm(f, params, bgrid, t_depth=config.boundary_t_depth).value
        d2 = boundary_double_seminorm(f, params, bgrid_fine, t_depth=config.boundary_t_depth + 8).value
        r1, r2 = d1 / bx, d2 / bx
        drift = r2 / r1 if r1 > 0 else 1.0
        good = (1.0 / drift_cap) < drift < drift_cap
        measured.append({
            "function": name, "boundary": d1, "box": bx,
            "ratio": r1, "refined_ratio": r2, "drift": drift, "pass": good,
        })
        ok = ok and good
    return measured, ok


def _v6(config: RunConfig, fixed: dict):
    """Test-family norm uniformity up to |c| = 1 - 2^-k_c."""
    params = config.space_params()
    family = make_test_family(
        params, k_c=config.k_c, n_directions=config.c_directions,
        norm_grid=config.scan_grid(), scan_opts=config.scan_opts(),
    )
    per_level: dict = {}
    for e in family.entries:
        per_level.setdefault(e.level, []).append(e.norm)
    levels = sorted(per_level)
    level_max = [max(per_level[k]) for k in levels]
    slope = trend_slope(levels, level_max)
    ratio = family.norm_max / family.norm_min
    ok = ratio <= fixed["uniformity_cap"] and abs(slope) < fixed["slope_cap"]
    measured = [
        {"norm_max": family.norm_max, "norm_min": family.norm_min,
         "max_over_min": ratio, "tail_slope": slope},
        {"level_max": {str(k): v for k, v in zip(levels, level_max)}},
    ]
    return measured, ok


def _v7(config: RunConfig, fixed: dict):
    """I_g dichotomy: bounded symbol bounded-trend, log symbol unbounded."""
    params = config.space_params()
    family = make_test_family(
        params, k_c=config.k_c, n_directions=config.c_directions,
        norm_grid=config.scan_grid(), scan_opts=config.scan_opts(),
    )
    kw = dict(
        family=family, norm_grid=config.scan_grid(), scan_opts=config.scan_opts(),
        k_c=config.k_c, n_directions=config.c_directions,
    )
    bounded = ratio_scan(IG, parse_function_spec(fixed["bounded_symbol"], params), params, **kw)
    unbounded = ratio_scan(IG, parse_function_spec(fixed["unbounded_symbol"], params), params, **kw)
    ok = (
        bounded.classification == "bounded-trend"
        and unbounded.classification == "unbounded-trend"
        and unbounded.slope > fixed["slope_floor"]
    )
    measured = [
        {"symbol": fixed["bounded_symbol"], "classification": bounded.classification,
         "slope": bounded.slope, "max_ratio": bounded.max_ratio},
        {"symbol": fixed["unbounded_symbol"], "classification": unbounded.classification,
         "slope": unbounded.slope, "max_ratio": unbounded.max_ratio},
    ]
    return measured, ok


def _v8(config: RunConfig, fixed: dict):
    """J_g bounded for the critical lacunary symbol, whose critical-exponent
    box scan nevertheless grows linearly with radial depth."""
    q = fixed["q"]
    params = SpaceParams(fixed["p"], q / fixed["p"])
    g = remark_example(q)
    family = make_test_family(
        params, k_c=config.k_c, n_directions=config.c_directions,
        norm_grid=config.scan_grid(), scan_opts=config.scan_opts(),
    )
    scan = ratio_scan(
        JG, g, params, family=family, norm_grid=config.scan_grid(),
        scan_opts=config.scan_opts(), k_c=config.k_c, n_directions=config.c_directions,
    )
    qp = qp_quantity(g, q, ParamGrid(k_arc=6, n_centers=16), **config.box_opts())
    lv = dict(qp.levels)
    j_lo, j_hi = fixed["depth_window"]
    xs = [j for j in range(j_lo, j_hi + 1) if j in lv]
    ys = [lv[j] for j in xs]
    corr = float(np.corrcoef(xs, ys)[0, 1]) if len(xs) >= 3 else 0.0
    ok = scan.classification == "bounded-trend" and corr >= fixed["corr_floor"]
    measured = [
        {"operator": "Jg", "symbol": g.label, "classification": scan.classification,
         "slope": scan.slope, "max_ratio": scan.max_ratio},
        {"qp_exponent": q, "depth_levels": xs, "values": ys, "corr": corr},
    ]
    return measured, ok


def _v9(config: RunConfig, fixed: dict):
    """Block-sum separation and the geometric limit above the critical exponent."""
    q, p = fixed["q"], fixed["p"]
    coeffs = GapCoefficients(remark_coefficient_rule(q), fixed["K"])
    at_q = gap_block_sums(coeffs, q)
    at_p = gap_block_sums(coeffs, p)
    want = 1.0 / (1.0 - 2.0 ** -(p - q))
    rel = abs((at_p.limit_estimate or 0.0) - want) / want
    ok = (
        at_q.classification == "divergent-trend"
        and at_p.classification == "convergent-trend"
        and rel <= fixed["limit_rtol"]
    )
    measured = [
        {"exponent": q, "classification": at_q.classification, "S_K": at_q.final_sum},
        {"exponent": p, "classification": at_p.classification,
         "limit_estimate": at_p.limit_estimate, "closed_form": want, "rel_error": rel},
    ]
    return measured, ok


def _v10(config: RunConfig, fixed: dict):
    """Integration-by-parts identity residual at quadrature tolerance."""
    params = config.space_params()
    samples = interior_samples(fixed["n_samples"], seed=config.seed)
    poly_pairs = [
        (make_taylor([1, -2, 0.5, 1j]), make_taylor([0.3, 1, 2])),
        (make_taylor([0, 1]), make_taylor([2, 0, 0, 1])),
    ]
    measured, ok = [], True
    worst_poly = 0.0
    for f, g in poly_pairs:
        worst_poly = max(worst_poly, ibp_residual(f, g, samples))
    good = worst_poly < fixed["poly_tol"]
    measured.append({"pairs": "polynomial", "max_residual": worst_poly, "pass": good})
    ok = ok and good
    fc = make_power_kernel(0.9, params.translate_exponent)
    singular = ibp_residual(fc, log_kernel(), samples)
    good = singular < fixed["singular_tol"]
    measured.append({"pairs": "(kernel 0.9, log1)", "max_residual": singular, "pass": good})
    ok = ok and good
    return measured, ok


TASKS: dict = {
    t.task_id: t
    for t in [
        VerificationTask(
            "V1",
            "Carleson-box quantity and squared translate quantity are comparable "
            "across the suite, stably under grid refinement",
            _v1,
            {"ratio_band": (1.0 / 50.0, 50.0), "drift_band": (0.5, 2.0)},
        ),
        VerificationTask(
            "V2",
            "Pointwise growth envelope is controlled by the translate norm",
            _v2,
            {"drift_cap": 1.5},
        ),
        VerificationTask(
            "V3",
            "Lune quantity of the boundary power kernel is stable across dyadic chord scales",
            _v3,
            {"p": 0.5, "lam": 0.4, "h_levels": 12, "spread_cap": 3.0},
        ),
        VerificationTask(
            "V4",
            "Raising the weight exponent is dominated boxwise by the (2|I|)^(p2-p1) factor",
            _v4,
            {"p1": 0.3, "p2": 0.6},
        ),
        VerificationTask(
            "V5",
            "Boundary double-integral quantity tracks the box quantity on "
            "boundary-evaluable functions",
            _v5,
            {"drift_cap": 2.0},
        ),
        VerificationTask(
            "V6",
            "Test-family norms stay uniformly comparable toward the boundary",
            _v6,
            {"uniformity_cap": 10.0, "slope_cap": 0.1},
        ),
        VerificationTask(
            "V7",
            "Volterra companion operator dichotomy: bounded symbol vs logarithmic symbol",
            _v7,
            {"bounded_symbol": "taylor:0.5,0.5", "unbounded_symbol": "log1",
             "slope_floor": 0.1},
        ),
        VerificationTask(
            "V8",
            "Volterra operator with a critical lacunary symbol stays bounded while "
            "the symbol's critical box scan grows with radial depth",
            _v8,
            {"q": 0.3, "p": 0.6, "depth_window": (4, 12), "corr_floor": 0.9},
        ),
        VerificationTask(
            "V9",
            "Coefficient block sums separate the critical exponent from larger ones, "
            "with the geometric limit recovered above",
            _v9,
            {"q": 0.3, "p": 0.6, "K": 30, "limit_rtol": 0.01},
        ),
        VerificationTask(
            "V10",
            "Integration-by-parts identity holds at quadrature tolerance",
            _v10,
            {"poly_tol": 1e-8, "singular_tol": 1e-6, "n_samples": 100},
        ),
    ]
}


def run_verification(task_id: str, config: RunConfig) -> TaskResult:
    task = TASKS.get(task_id)
    if task is None:
        raise KeyError(f"unknown verification task {task_id!r}")
    start = time.perf_counter()
    measured, passed = task.runner(config, task.fixed)
    elapsed_ms = int(round((time.perf_counter() - start) * 1000.0))
    inputs = {
        "p": config.p, "lam": config.lam, "suite": list(config.suite),
        "seed": config.seed, **{k: _jsonable(v) for k, v in task.fixed.items()},
    }
    return TaskResult(
        task_id=task_id,
        statement=task.statement,
        inputs=inputs,
        measured=[_jsonable(m) for m in measured],
        thresholds={k: _jsonable(v) for k, v in task.fixed.items()},
        passed=bool(passed),
        runtime_ms=elapsed_ms,
    )


def _jsonable(v):
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    return v


def select_tasks(selection: Sequence[str]) -> list:
    if not selection or "all" in selection:
        return sorted(TASKS)
    bad = [t for t in selection if t not in TASKS]
    if bad:
        raise KeyError(f"unknown verification tasks: {bad}")
    return sorted(set(selection))


def run_tasks(task_ids: Sequence[str], config: RunConfig):
    ids = select_tasks(task_ids)
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            futures = {tid: pool.submit(run_verification, tid, config) for tid in ids}
            return [futures[tid].result() for tid in ids]
    return [run_verification(tid, config) for tid in ids]


# ---------------------------------------------------------------------------
# Report emission
# ---------------------------------------------------------------------------


def emit_report(results: Sequence[TaskResult], path, config: Optional[RunConfig] = None):
    """Write the JSON report (stable key order) and a plain-text summary table.

    Everything except runtime_ms is deterministic for a fixed config."""
    doc = {
        "schema": SCHEMA,
        "config": config.describe() if config else None,
        "all_passed": all(r.passed for r in results),
        "tasks": [r.as_dict() for r in results],
    }
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    summary = summarize(results)
    path.with_suffix(".txt").write_text(summary, encoding="utf-8")
    return doc


def summarize(results: Sequence[TaskResult]) -> str:
    lines = [f"{'task':6s} {'status':8s} {'ms':>8s}  statement"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.task_id:6s} {status:8s} {r.runtime_ms:8d}  {r.statement}")
    agg = "PASS" if all(r.passed for r in results) else "FAIL"
    lines.append(f"overall: {agg}")
    return "\n".join(lines) + "\n"
