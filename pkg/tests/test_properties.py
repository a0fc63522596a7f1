import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial import hermite_e

from hermite_coords.algebra import PerturbedDensity, add_noise, convolve, scale, smooth, tilde_coeffs
from hermite_coords.basis import hermite
from hermite_coords.entropy import kl_numeric, perturbation_norm
from hermite_coords.interference import ICParams, b2, blind_ts_sum_rate, gaussian_tin_sum_rate
from hermite_coords.numerics import richardson
from hermite_coords.shamai_laroia import SLPoint, sl_gap

var = st.floats(0.05, 20.0)
# keep coefficients away from subnormals, where squared norms underflow to 0
coef = st.floats(-1.0, 1.0).filter(lambda c: c == 0 or abs(c) > 1e-100)


def coeff_maps(lo=1, hi=10, max_size=4):
    return st.dictionaries(st.integers(lo, hi), coef, max_size=max_size)


def densities(lo=1, hi=6):
    return st.builds(PerturbedDensity, st.floats(-3, 3), var, coeff_maps(lo, hi, 3))


def close(d1, d2, tol=1e-10):
    if abs(d1.mean - d2.mean) > tol or abs(d1.var - d2.var) > tol * max(1.0, d1.var):
        return False
    keys = set(d1.coeffs) | set(d2.coeffs)
    return all(abs(d1.coeffs.get(k, 0.0) - d2.coeffs.get(k, 0.0)) <= tol for k in keys)


@given(st.integers(0, 30), st.floats(-5, 5))
def test_hermite_matches_numpy(k, x):
    ref = hermite_e.hermeval(x, [0] * k + [1])
    assert math.isclose(hermite(k, x), ref, rel_tol=1e-9, abs_tol=1e-9 * max(1.0, abs(x)) ** k)


@given(densities(), var, var)
def test_noise_composes(d, v1, v2):
    assert close(add_noise(add_noise(d, v1), v2), add_noise(d, v1 + v2))


@given(coeff_maps(), var, var)
def test_smooth_after_noise_eigenvalue(c, p, v):
    out = smooth(add_noise(PerturbedDensity(0, p, c), v).coeffs, p, v)
    for k, ck in PerturbedDensity(0, p, c).coeffs.items():
        assert math.isclose(out.get(k, 0.0), ck * (p / (p + v)) ** k, rel_tol=1e-12, abs_tol=1e-300)


@given(densities(), densities())
def test_convolve_commutes(d1, d2):
    assert close(convolve(d1, d2), convolve(d2, d1), 1e-12)


@given(densities(1, 4), densities(1, 4), densities(1, 4))
def test_convolve_associates(d1, d2, d3):
    assert close(convolve(convolve(d1, d2), d3), convolve(d1, convolve(d2, d3)), 1e-9)


@given(densities(), st.floats(0.1, 5.0))
def test_convolve_with_gaussian_is_add_noise(d, v):
    assert close(convolve(d, PerturbedDensity(0, v, {})), add_noise(d, v), 1e-12)


@given(densities(), st.floats(-4, 4).filter(lambda s: abs(s) > 1e-3), st.floats(-4, 4).filter(lambda s: abs(s) > 1e-3))
def test_scale_composes(d, s, t):
    assert close(scale(scale(d, s), t), scale(d, s * t), 1e-9)


@given(st.integers(1, 16), st.floats(-1, 1), st.floats(0, 1))
def test_tilde_structure(k, b, delta):
    c = tilde_coeffs(k, b, delta)
    if b == 0:
        assert c == {}
        return
    assert c[k] == b
    # the correction vanishes only when |b| * delta underflows
    assert c.get(4 * k, 0.0) == abs(b) * delta


@given(coeff_maps(3, 10, 8), var, var)
def test_tightened_contraction(c, p, v):
    d = PerturbedDensity(0, p, c)
    out = add_noise(d, v)
    lhs, rhs = perturbation_norm(out.coeffs) ** 2, (p / (p + v)) ** 3 * perturbation_norm(d.coeffs) ** 2
    assert lhs <= rhs * (1 + 1e-12)
    tail = sum(c**2 for k, c in d.coeffs.items() if k != 3)
    if tail > 1e-9 * perturbation_norm(d.coeffs) ** 2:
        # strict once the higher-degree mass is visible above rounding
        assert lhs < rhs
    elif not tail:
        assert math.isclose(lhs, rhs, rel_tol=1e-12, abs_tol=1e-300)


@given(st.floats(0, 10), st.floats(0.01, 50))
def test_b2_identity(a, p):
    prm = ICParams(a, p)
    assert math.isclose(b2(prm), blind_ts_sum_rate(prm) - gaussian_tin_sum_rate(prm), abs_tol=1e-12)


@given(st.floats(1e-3, 20), st.integers(3, 12))
def test_no_counterexample_at_zero_noise(h, k):
    assert sl_gap(SLPoint(h, 0.0, k)) <= 1e-15


@given(st.lists(st.floats(-5, 5), min_size=1, max_size=3))
def test_richardson_exact_on_even_polynomials(cs):
    eps = [0.1, 0.05, 0.025, 0.0125][: len(cs) + 1]
    vals = [sum(c * e ** (2 * i) for i, c in enumerate([1.0] + cs)) for e in eps]
    assert math.isclose(richardson(eps, vals[: len(eps)]), 1.0, abs_tol=1e-8)


@settings(max_examples=30, deadline=None)
@given(st.dictionaries(st.sampled_from([2, 4, 6]), st.floats(0.0, 0.05), max_size=2), st.floats(0.3, 3.0))
def test_kl_nonnegative(c, p):
    d = PerturbedDensity(0, p, c)
    kl = kl_numeric(d, 0.0, p)
    assert kl >= -1e-14
    if d.is_gaussian:
        assert abs(kl) < 1e-12
