"""Operator identities: closed-form examples, the integration-by-parts
residual, linearity, derivative contracts, and scan classifications."""

import math

import numpy as np
import pytest

from dirimor.analytic import SpaceParams, log_kernel, make_power_kernel, make_taylor
from dirimor.norms import ParamGrid
from dirimor.operators import (
    IG,
    JG,
    MG,
    OperatorKind,
    apply_Ig,
    apply_Jg,
    apply_Mg,
    ibp_residual,
    interior_samples,
    make_test_family,
    path_integral,
    ratio_scan,
)

Z = interior_samples(40, seed=7)


def test_operator_kind_validates():
    with pytest.raises(ValueError):
        OperatorKind("Xg")


def test_jg_of_constant_recovers_symbol():
    g = make_taylor([2, 1, 3])
    h = apply_Jg(make_taylor([1]), g)
    assert np.max(np.abs(h(Z) - (g(Z) - g.at_zero()))) < 1e-12
    assert abs(h.at_zero()) < 1e-15


def test_jg_identity_pair():
    h = apply_Jg(make_taylor([0, 1]), make_taylor([0, 1]))
    assert np.max(np.abs(h(Z) - Z ** 2 / 2)) < 1e-13
    h2 = apply_Jg(make_taylor([1]), make_taylor([0, 1]))
    assert np.max(np.abs(h2(Z) - Z)) < 1e-13


def test_ig_trivial_cases():
    assert np.max(np.abs(apply_Ig(make_taylor([5]), log_kernel())(Z))) < 1e-14
    f = make_taylor([2, 1, 1])
    h = apply_Ig(f, make_taylor([1]))
    assert np.max(np.abs(h(Z) - (f(Z) - f.at_zero()))) < 1e-12
    h2 = apply_Ig(make_taylor([0, 1]), make_taylor([0, 1]))
    assert np.max(np.abs(h2(Z) - Z ** 2 / 2)) < 1e-13


def test_mg_product():
    f = make_taylor([1, 1])
    g = make_taylor([0, 1])
    h = apply_Mg(f, g)
    assert complex(h(0.5)) == pytest.approx(0.75)
    assert np.max(np.abs(apply_Mg(make_taylor([0]), g)(Z))) == 0.0
    assert np.max(np.abs(apply_Mg(f, make_taylor([1]))(Z) - f(Z))) < 1e-14
    # taylor view is the coefficient convolution
    assert h.taylor_coeffs == (0j, 1 + 0j, 1 + 0j)


def test_operator_derivative_contracts():
    f = make_power_kernel(0.9, 0.35)
    g = log_kernel()
    jg, ig = apply_Jg(f, g), apply_Ig(f, g)
    assert np.max(np.abs(jg.derivative(Z) - f(Z) * g.derivative(Z))) < 1e-13
    assert np.max(np.abs(ig.derivative(Z) - f.derivative(Z) * g(Z))) < 1e-13
    # values must differentiate back to the closed form (validates the path rule)
    h = 1e-6 * (1 - np.abs(Z))
    fd = (jg(Z + h) - jg(Z - h)) / (2 * h)
    rel = np.abs(fd - jg.derivative(Z)) / np.maximum(np.abs(jg.derivative(Z)), 1e-30)
    assert np.max(rel) < 1e-5


def test_path_integral_polynomial_exact():
    # integral of w^3 over [0, z] = z^4/4; Gauss panels are exact
    vals = path_integral(lambda w: w ** 3, Z)
    assert np.max(np.abs(vals - Z ** 4 / 4)) < 1e-14


def test_ibp_hand_example():
    f = make_taylor([1, 1])
    g = make_taylor([0, 1])
    z = 0.5 + 0j
    jg = complex(apply_Jg(f, g)(z))
    ig = complex(apply_Ig(f, g)(z))
    mg = complex(apply_Mg(f, g)(z))
    assert jg == pytest.approx(0.625, rel=1e-12)
    assert ig == pytest.approx(0.125, rel=1e-12)
    assert mg - f.at_zero() * g.at_zero() - ig == pytest.approx(0.625, rel=1e-12)
    assert ibp_residual(f, g, Z) < 1e-12


def test_ibp_residual_polynomials():
    f = make_taylor([1, -2, 0.5, 1j])
    g = make_taylor([0.3, 1, 2])
    assert ibp_residual(f, g, interior_samples(100, seed=11)) < 1e-8


def test_ibp_residual_singular_pair():
    f = make_power_kernel(0.9, 0.15)
    g = log_kernel()
    assert ibp_residual(f, g, interior_samples(100, seed=13)) < 1e-6


def test_linearity_of_operators():
    f1 = make_taylor([0, 1, 1])
    f2 = make_power_kernel(0.8, 0.4)
    g = make_taylor([0.5, 0.5])
    alpha = 1.5 - 0.5j
    combo = f1.scaled(alpha) + f2
    for apply_ in (apply_Jg, apply_Ig, apply_Mg):
        lhs = apply_(combo, g)(Z)
        rhs = alpha * apply_(f1, g)(Z) + apply_(f2, g)(Z)
        scale = np.maximum(np.abs(rhs), 1e-12)
        assert np.max(np.abs(lhs - rhs) / scale) < 1e-10


# -- test family / ratio scans -------------------------------------------------


PARAMS = SpaceParams(0.5, 0.4)
SMALL_GRID = ParamGrid(k_a=6, a_angle_cap=8)
SMALL_OPTS = dict(depth=16, panel_order=4, base_panels=10)


def small_family(k_c=6, n_directions=4):
    return make_test_family(
        PARAMS, k_c=k_c, n_directions=n_directions,
        norm_grid=SMALL_GRID, scan_opts=SMALL_OPTS,
    )


def test_family_constant_entry_and_uniformity():
    fam = small_family()
    assert fam.entries[0].c == 0
    assert fam.entries[0].norm == 1.0
    assert fam.norm_max / fam.norm_min <= 10.0


def test_family_norms_rotation_invariant():
    fam = small_family(k_c=3, n_directions=4)
    by_level: dict = {}
    for e in fam.entries[1:]:
        by_level.setdefault(e.level, []).append(e.norm)
    for level, norms in by_level.items():
        assert max(norms) / min(norms) < 1 + 1e-6


def test_ratio_scan_constant_symbol_jg():
    fam = small_family(k_c=4, n_directions=4)
    rep = ratio_scan(
        JG, make_taylor([3]), PARAMS, family=fam,
        norm_grid=SMALL_GRID, scan_opts=SMALL_OPTS, k_c=4, n_directions=4,
    )
    assert rep.max_ratio == 0.0
    assert rep.classification == "bounded-trend"


def test_ratio_scan_bounded_vs_unbounded_ig():
    # the 0.1 threshold separates the dichotomy at the pinned c-depth 10:
    # the bounded symbol's ratios saturate while log1's grow like the level
    grid = ParamGrid(k_a=10, a_angle_cap=8)
    opts = dict(depth=20, panel_order=4, base_panels=10)
    fam = make_test_family(PARAMS, k_c=10, n_directions=2, norm_grid=grid, scan_opts=opts)
    kw = dict(norm_grid=grid, scan_opts=opts, k_c=10, n_directions=2)
    bounded = ratio_scan(IG, make_taylor([0.5, 0.5]), PARAMS, family=fam, **kw)
    assert bounded.classification == "bounded-trend"
    unbounded = ratio_scan(IG, log_kernel(), PARAMS, family=fam, **kw)
    assert unbounded.classification == "unbounded-trend"
    assert unbounded.slope > 0.1
    assert unbounded.max_ratio > bounded.max_ratio


def test_ratio_scan_report_serializes():
    fam = small_family(k_c=3, n_directions=2)
    rep = ratio_scan(
        MG, make_taylor([1, 0.25]), PARAMS, family=fam,
        norm_grid=SMALL_GRID, scan_opts=SMALL_OPTS, k_c=3, n_directions=2,
    )
    d = rep.as_dict()
    assert d["kind"] == "Mg"
    assert len(d["rows"]) == len(fam.entries)
    assert d["classification"] in ("bounded-trend", "unbounded-trend")


def test_multiplier_bounded_trend_implies_symbol_conditions():
    # measured form of the multiplier necessity: when the Mg scan is
    # bounded-trend, the symbol's sup-norm scan and its Mobius-invariant box
    # scan are bounded-trend too
    from dirimor.norms import hinf_sup, qp_quantity

    g = make_taylor([0.5, 0.5])
    fam = small_family(k_c=6, n_directions=2)
    rep = ratio_scan(
        MG, g, PARAMS, family=fam,
        norm_grid=SMALL_GRID, scan_opts=SMALL_OPTS, k_c=6, n_directions=2,
    )
    assert rep.classification == "bounded-trend"
    assert "bounded-trend" in hinf_sup(g).flags
    assert "bounded-trend" in qp_quantity(g, PARAMS.p, ParamGrid(k_arc=6, n_centers=8)).flags
