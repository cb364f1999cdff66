"""Block-sum criteria, the derivative growth criterion, and the two-kernel
integral estimate, against their geometric closed forms."""

import math

import numpy as np
import pytest

from dirimor.analytic import SpaceParams
from dirimor.gaps import (
    GapCoefficients,
    gap_block_sums,
    pzh_check,
    pzh_scan,
    remark_coefficient_rule,
    remark_example,
    yamashita_limsup,
)


def test_block_sums_critical_divergent():
    coeffs = GapCoefficients(remark_coefficient_rule(0.3), 30)
    rep = gap_block_sums(coeffs, 0.3)
    # every block term equals 1; the partial sums count the blocks
    assert rep.terms[0] == pytest.approx(1.0)
    assert rep.final_sum == pytest.approx(31.0)
    assert rep.classification == "divergent-trend"
    assert rep.limit_estimate is None


def test_block_sums_supercritical_geometric_limit():
    coeffs = GapCoefficients(remark_coefficient_rule(0.3), 30)
    rep = gap_block_sums(coeffs, 0.6)
    # terms 2^(-0.3 k): the extrapolated limit is the exact geometric sum
    want = 1.0 / (1.0 - 2.0 ** -0.3)
    assert rep.classification == "convergent-trend"
    assert rep.limit_estimate == pytest.approx(want, rel=1e-9)


def test_block_sums_zero_coefficients():
    coeffs = GapCoefficients(lambda k: 0.0, 10)
    rep = gap_block_sums(coeffs, 0.5)
    assert rep.final_sum == 0.0
    assert rep.classification == "convergent-trend"


def test_block_sums_phase_invariant():
    rng = np.random.default_rng(3)
    phases = np.exp(1j * rng.uniform(0, 2 * math.pi, 31))
    base = GapCoefficients(remark_coefficient_rule(0.4), 30)
    rotated = GapCoefficients(lambda k: phases[k] * remark_coefficient_rule(0.4)(k), 30)
    a = gap_block_sums(base, 0.4)
    b = gap_block_sums(rotated, 0.4)
    assert a.classification == b.classification
    assert a.final_sum == pytest.approx(b.final_sum, rel=1e-12)


def test_yamashita_values():
    coeffs = GapCoefficients(remark_coefficient_rule(0.3), 20)
    # every term |a_k| 2^(k(1-q)/2) equals 1
    assert yamashita_limsup(coeffs, 0.3) == pytest.approx(1.0, rel=1e-12)
    zeros = GapCoefficients(lambda k: 0.0, 20)
    assert yamashita_limsup(zeros, 0.3) == 0.0
    fast = GapCoefficients(lambda k: 2.0 ** -k, 20)
    # terms 2^(-0.65 k), tail max at k = K/2
    assert yamashita_limsup(fast, 0.3) == pytest.approx(2.0 ** (-0.65 * 10), rel=1e-12)


def test_remark_example_basics():
    f = remark_example(0.3)
    assert complex(f(0.0)) == 0.0
    a1 = 2.0 ** -0.35
    assert a1 == pytest.approx(0.78458, abs=1e-5)
    z = 0.3 + 0.1j
    direct = sum(2.0 ** (-k * 0.35) * z ** (2 ** k) for k in range(1, 21))
    assert complex(f(z)) == pytest.approx(direct, rel=1e-13)


def test_remark_growth_criterion_bounded():
    # sup |f'(z)| (1-|z|)^((1+q)/2) along radii: plateau, no growth trend
    q = 0.3
    f = remark_example(q)
    vals = []
    for k in range(1, 12):
        r = 1 - 2.0 ** -k
        th = 2 * math.pi * np.arange(256) / 256
        v = np.max(np.abs(f.derivative(r * np.exp(1j * th)))) * (1 - r) ** ((1 + q) / 2)
        vals.append(v)
    assert max(vals[6:]) / max(vals[2:6]) < 2.0


def test_remark_separation_at_two_exponents():
    coeffs = GapCoefficients(remark_coefficient_rule(0.3), 30)
    assert gap_block_sums(coeffs, 0.3).classification == "divergent-trend"
    assert gap_block_sums(coeffs, 0.6).classification == "convergent-trend"
    # mild exponent bumps already separate
    assert gap_block_sums(coeffs, 0.36).classification == "convergent-trend"


# -- two-kernel integral -------------------------------------------------------


def test_pzh_rejects_bad_parameters():
    with pytest.raises(ValueError):
        pzh_check(0.0, 0.0, 1.0, -1.5, 1.5)
    with pytest.raises(ValueError):
        pzh_check(0.0, 0.0, -1.0, 0.0, 1.5)
    with pytest.raises(ValueError):
        pzh_check(0.0, 0.0, 1.0, 0.0, 1.0)  # r+t-s-2 = 0
    with pytest.raises(ValueError):
        pzh_check(0.0, 0.0, 1.0, 0.0, 4.0)  # r+t-s-2 = 2 >= r


def test_pzh_origin_closed_form():
    # u = v = 0: integral of (1-|z|^2)^s dm = 1/(s+1), normalizer 1
    p, lam = 0.5, 0.4
    r, t, s = 2 * p, 2 + p * (1 - lam), p
    val = pzh_check(0.0, 0.0, r, s, t)
    assert val == pytest.approx(1.0 / (s + 1.0), rel=1e-6)


def test_pzh_bounded_along_radii():
    vals = [v for _, v in pzh_scan(1.0, 0.0, 1.5, k_levels=8)]
    assert max(vals) / min(vals) <= 5.0


def test_pzh_family_parameters_bounded():
    p, lam = 0.5, 0.4
    r, t, s = 2 * p, 2 + p * (1 - lam), p
    vals = [v for _, v in pzh_scan(r, s, t, k_levels=8)]
    assert max(vals) / min(vals) <= 5.0


def test_pzh_random_admissible_triples_stable():
    rng = np.random.default_rng(99)
    found = 0
    while found < 10:
        r = float(rng.uniform(0.3, 2.0))
        s = float(rng.uniform(-0.5, 1.0))
        t = float(rng.uniform(0.3, 2.5))
        kappa = r + t - s - 2
        if not (0.05 < kappa < r - 0.05):
            continue
        found += 1
        vals = [v for _, v in pzh_scan(r, s, t, k_levels=6)]
        assert max(vals) / min(vals) < 5.0
