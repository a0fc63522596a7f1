import math

import numpy as np
import pytest

from hermite_coords.algebra import (
    PerturbedDensity,
    add_noise,
    convolve,
    cross_constant,
    eval_density,
    gaussian,
    normalize_coeffs,
    positivity_check,
    positivity_margin,
    scale,
    shift,
    smooth,
    tilde_coeffs,
)
from hermite_coords.basis import gaussian_density
from hermite_coords.errors import (
    DegenerateScaleError,
    DegreeOverflowError,
    InvalidVarianceError,
    UnsupportedDegreeError,
)
from hermite_coords.quadrature import composite_rule, integrate
from hermite_coords.verify import projection_constant


def test_coeffs_reject_degree_zero_and_overflow():
    with pytest.raises(UnsupportedDegreeError):
        normalize_coeffs({0: 0.1})
    with pytest.raises(DegreeOverflowError):
        normalize_coeffs({65: 0.1})
    assert normalize_coeffs({4: 0.0, 3: 0.2}) == {3: 0.2}


def test_density_requires_positive_variance():
    with pytest.raises(InvalidVarianceError):
        PerturbedDensity(0.0, 0.0, {})


def test_add_noise_examples():
    d = add_noise(gaussian(0, 1), 1.0)
    assert (d.var, d.coeffs) == (2.0, {})
    d = add_noise(PerturbedDensity(0, 1, {2: 0.1}), 1.0)
    assert d.var == 2.0
    assert d.coeffs[2] == pytest.approx(0.05, abs=1e-15)
    d = add_noise(PerturbedDensity(0.7, 1.5, {5: 0.3}), 0.4)
    assert d.mean == 0.7
    assert d.coeffs[5] == pytest.approx(0.3 * (1.5 / 1.9) ** 2.5, rel=1e-14)
    with pytest.raises(InvalidVarianceError):
        add_noise(gaussian(), 0.0)


def test_smooth_examples():
    assert smooth({}, 1.0, 1.0) == {}
    assert smooth({3: 1.0}, 1.0, 1.0)[3] == pytest.approx(2 ** -1.5, rel=1e-15)
    with pytest.raises(InvalidVarianceError):
        smooth({3: 1.0}, 1.0, -1.0)


@pytest.mark.parametrize("k", [1, 3, 6])
def test_smooth_after_noise_is_the_eigenvalue(k):
    p, v = 1.3, 0.6
    out = add_noise(PerturbedDensity(0, p, {k: 1.0}), v)
    back = smooth(out.coeffs, p, v)
    assert back[k] == pytest.approx((p / (p + v)) ** k, rel=1e-14)


def test_cross_constant_pair_case():
    for a, b in [(1, 1), (0.5, 2), (3, 0.25)]:
        assert cross_constant(1, 1, a, b) == pytest.approx(math.sqrt(2 * a * b) / (a + b), rel=1e-15)


def test_cross_constant_33_against_projection():
    # frozen from the tensor-quadrature projection oracle: sqrt(20)/8
    assert projection_constant(3, 3, 1.0, 1.0) == pytest.approx(math.sqrt(20) / 8, abs=1e-12)
    assert cross_constant(3, 3, 1.0, 1.0) == pytest.approx(projection_constant(3, 3, 1.0, 1.0), abs=1e-8)


def test_convolve_gaussians():
    d = convolve(gaussian(1.0, 2.0), gaussian(-0.5, 3.0))
    assert (d.mean, d.var, d.coeffs) == (0.5, 5.0, {})


def test_convolve_first_order_terms_match_add_noise():
    d1 = PerturbedDensity(0, 2.0, {3: 0.1, 4: 0.05})
    got = convolve(d1, gaussian(0, 0.5))
    ref = add_noise(d1, 0.5)
    assert got.var == ref.var
    for k in ref.coeffs:
        assert got.coeffs[k] == pytest.approx(ref.coeffs[k], rel=1e-14)


def numeric_convolution(d1, d2, x, panels=3000):
    r = 14 * math.sqrt(max(d1.var, d2.var)) + np.max(np.abs(x))
    t, w = composite_rule(-r, r, panels)
    return np.array([np.sum(w * eval_density(d1, t) * eval_density(d2, xi - t)) for xi in x])


@pytest.mark.parametrize(
    "c1,c2",
    [
        ({1: 0.05}, {2: -0.03}),
        ({3: 0.05, 4: 0.02}, {3: -0.05}),
        ({2: 0.04}, {4: 0.05, 1: 0.01}),
    ],
)
def test_convolve_matches_numeric_convolution(c1, c2):
    d1 = PerturbedDensity(0.3, 1.2, c1)
    d2 = PerturbedDensity(-0.1, 0.7, c2)
    x = np.linspace(-5, 5, 21)
    got = eval_density(convolve(d1, d2), x)
    assert np.max(np.abs(got - numeric_convolution(d1, d2, x))) < 1e-7


def test_convolve_degree_overflow():
    with pytest.raises(DegreeOverflowError):
        convolve(PerturbedDensity(0, 1, {40: 0.01}), PerturbedDensity(0, 1, {30: 0.01}))


def test_scale_examples():
    d = PerturbedDensity(0.2, 1.0, {3: 0.1})
    assert scale(d, 1.0) == d
    s = scale(PerturbedDensity(0, 1, {3: 0.1}), 2.0)
    assert (s.var, s.coeffs) == (4.0, {3: 0.1})
    x = np.linspace(-6, 6, 20)
    base = PerturbedDensity(0, 1, {3: 0.1})
    assert np.allclose(eval_density(s, x), eval_density(base, x / 2) / 2, atol=1e-12, rtol=0)
    with pytest.raises(DegenerateScaleError):
        scale(d, 0.0)


def test_negative_scale():
    x = np.linspace(-6, 6, 20)
    even = PerturbedDensity(0, 1.5, {2: 0.1, 4: -0.05})
    assert np.allclose(eval_density(scale(even, -1.0), x), eval_density(even, x), atol=1e-15)
    odd = PerturbedDensity(0.4, 1.5, {3: 0.1, 4: 0.05})
    flipped = scale(odd, -2.0)
    assert np.allclose(eval_density(flipped, x), eval_density(odd, x / -2.0) / 2.0, atol=1e-14)


def test_shift():
    d = PerturbedDensity(0, 1, {4: 0.1})
    x = np.linspace(-3, 3, 9)
    assert np.allclose(eval_density(shift(d, 1.5), x), eval_density(d, x - 1.5), atol=1e-15)


def test_tilde_examples():
    eps, delta = 0.01, 0.1
    assert tilde_coeffs(3, eps, delta) == {3: eps, 12: eps * delta}
    assert tilde_coeffs(3, -eps, delta) == {3: -eps, 12: eps * delta}
    assert tilde_coeffs(5, 0.0, delta) == {}
    assert tilde_coeffs(2, -eps, 0.0) == {2: -eps}
    with pytest.raises(UnsupportedDegreeError):
        tilde_coeffs(0, eps, delta)
    with pytest.raises(ValueError):
        tilde_coeffs(3, eps, -0.1)


def test_positivity_examples():
    assert positivity_check(gaussian())
    assert not positivity_check(PerturbedDensity(0, 1, {3: 0.5}))
    assert positivity_check(PerturbedDensity(0, 1, tilde_coeffs(3, 0.01, 0.1)))
    with pytest.raises(ValueError):
        positivity_check(gaussian(), radius_sigmas=5)
    with pytest.raises(ValueError):
        positivity_check(gaussian(), grid_points=10)


def test_positivity_margin():
    assert positivity_margin({}) == math.inf
    # H_4 / sqrt(24) has minimum -6/sqrt(24) at x^2 = 3
    assert positivity_margin({4: 1.0}) == pytest.approx(math.sqrt(24) / 6, rel=1e-6)
    m = positivity_margin(tilde_coeffs(3, 1.0, 0.05))
    assert positivity_check(PerturbedDensity(0, 2.0, tilde_coeffs(3, 0.99 * m, 0.05)))
    assert not positivity_check(PerturbedDensity(0, 2.0, tilde_coeffs(3, 1.05 * m, 0.05)))


def test_eval_density_gaussian_and_normalization():
    x = np.linspace(-3, 3, 7)
    assert np.array_equal(eval_density(gaussian(0.5, 2.0), x), gaussian_density(0.5, 2.0, x))
    d = PerturbedDensity(0.5, 2.0, {3: 0.1, 4: 0.05, 6: -0.02})
    r = 14 * math.sqrt(2.0)
    assert integrate(lambda t: eval_density(d, t), 0.5 - r, 0.5 + r) == pytest.approx(1.0, abs=1e-9)


def test_degree_three_keeps_first_two_moments():
    d = PerturbedDensity(0, 1, {3: 0.1})
    assert integrate(lambda t: t * eval_density(d, t), -14, 14) == pytest.approx(0.0, abs=1e-9)
    assert integrate(lambda t: t * t * eval_density(d, t), -14, 14) == pytest.approx(1.0, abs=1e-9)
