"""Acceptance criteria A1-A11.

Each test enforces one criterion at its stated tolerance and prints a
PASS/FAIL line with the measured values (run with ``pytest -s`` to see
them).  The verification tasks V1-V10 run here at the default RunConfig;
A1 and A11 are checked directly against their oracles.
"""

import math
import time

import numpy as np
import pytest

from dirimor.analytic import SpaceParams, make_taylor
from dirimor.norms import dirichlet_norm, dirichlet_norm_coeff
from dirimor.gaps import pzh_scan
from dirimor.verify import RunConfig, run_verification

CONFIG = RunConfig()


def _report(name, ok, elapsed, detail):
    print(f"{name} {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s): {detail}")


def _run_task(name, task_id, budget_s):
    start = time.perf_counter()
    result = run_verification(task_id, CONFIG)
    elapsed = time.perf_counter() - start
    ok = result.passed and elapsed < budget_s
    _report(name, ok, elapsed, f"task {task_id}, budget {budget_s:.0f}s")
    assert result.passed, f"{task_id} failed: {result.measured}"
    assert elapsed < budget_s, f"{task_id} exceeded runtime budget ({elapsed:.1f}s)"
    return result


def test_a1_dirichlet_oracle_agreement():
    """A1: quadrature vs coefficient oracle on polynomials, rel < 1e-6, < 10 s."""
    rng = np.random.default_rng(CONFIG.seed)
    start = time.perf_counter()
    worst = 0.0
    for deg in range(1, 21):
        coeffs = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
        f = make_taylor(coeffs)
        for p in (0.25, 0.5, 0.75, 1.0):
            got = dirichlet_norm(f, p).value
            want = dirichlet_norm_coeff(coeffs, p)
            worst = max(worst, abs(got - want) / want)
    elapsed = time.perf_counter() - start
    ok = worst < 1e-6 and elapsed < 10.0
    _report("A1", ok, elapsed, f"max rel err {worst:.2e} over deg<=20, 4 exponents")
    assert worst < 1e-6
    assert elapsed < 10.0


def test_a2_box_vs_translate_equivalence():
    """A2: box vs squared-translate ratio in [1/50, 50], drift < x2, < 5 min."""
    result = _run_task("A2", "V1", 300.0)
    ratios = [m["ratio"] for m in result.measured if "ratio" in m]
    assert ratios, "no comparable suite members"


def test_a3_growth_and_lune_stability():
    """A3: growth envelope drift < x1.5 and lune quantity within x3 of median, < 2 min."""
    start = time.perf_counter()
    r2 = run_verification("V2", CONFIG)
    r3 = run_verification("V3", CONFIG)
    elapsed = time.perf_counter() - start
    ok = r2.passed and r3.passed and elapsed < 120.0
    med = next(m["median"] for m in r3.measured if "median" in m)
    _report("A3", ok, elapsed, f"lune median {med:.4g}")
    assert r2.passed, r2.measured
    assert r3.passed, r3.measured
    assert elapsed < 120.0


def test_a4_exponent_inequality_zero_violations():
    """A4: per-arc weight-exponent inequality holds at every scanned arc."""
    result = _run_task("A4", "V4", 120.0)
    tally = next(m for m in result.measured if "violations" in m)
    assert tally["violations"] == 0
    assert tally["arcs_checked"] > 1000


def test_a5_boundary_double_vs_box():
    """A5: boundary double-integral vs box quantity ratio drift < x2, < 10 min."""
    _run_task("A5", "V5", 600.0)


def test_a6_test_family_uniformity():
    """A6: family norm max/min <= 10 and tail log-slope < 0.1."""
    result = _run_task("A6", "V6", 300.0)
    stats = result.measured[0]
    assert stats["max_over_min"] <= 10.0
    assert abs(stats["tail_slope"]) < 0.1


def test_a7_companion_operator_dichotomy():
    """A7: bounded symbol bounded-trend; log symbol unbounded with slope > 0.1."""
    result = _run_task("A7", "V7", 600.0)
    slopes = {m["symbol"]: m["slope"] for m in result.measured}
    assert slopes["log1"] > 0.1


def test_a8_volterra_critical_symbol():
    """A8: J_g bounded-trend for the critical lacunary symbol; its critical
    box scan grows ~linearly in depth (corr >= 0.9 over levels 4..12)."""
    result = _run_task("A8", "V8", 600.0)
    scan = result.measured[0]
    depth = result.measured[1]
    assert scan["classification"] == "bounded-trend"
    assert depth["corr"] >= 0.9


def test_a9_block_sum_separation():
    """A9: divergent at q=0.3, convergent at p=0.6 with limit within 1%."""
    result = _run_task("A9", "V9", 30.0)
    conv = result.measured[1]
    assert conv["rel_error"] <= 0.01


def test_a10_integration_by_parts():
    """A10: residual < 1e-8 on polynomials, < 1e-6 on the singular pair."""
    result = _run_task("A10", "V10", 60.0)
    residuals = {m["pairs"]: m["max_residual"] for m in result.measured}
    assert residuals["polynomial"] < 1e-8
    assert residuals["(kernel 0.9, log1)"] < 1e-6


def test_a11_two_kernel_estimate_bounded():
    """A11: normalized two-kernel integral over u-radii k<=10, max/min <= 5."""
    p, lam = 0.5, 0.4
    r, t, s = 2 * p, 2 + p * (1 - lam), p
    start = time.perf_counter()
    vals = [v for _, v in pzh_scan(r, s, t, k_levels=10)]
    elapsed = time.perf_counter() - start
    spread = max(vals) / min(vals)
    ok = spread <= 5.0
    _report("A11", ok, elapsed, f"normalized spread {spread:.3f} over 11 radii")
    assert spread <= 5.0
