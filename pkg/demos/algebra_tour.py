"""
A tour of the Hermite coordinate algebra
========================================

Densities near a Gaussian are written as g_p(x) (1 + sum_k c_k H_k^[p](x)).
Adding independent Gaussian noise just rescales each coordinate, and the
KL divergence from the Gaussian is half the squared coordinate norm, to
second order.
"""
from hermite_coords import PerturbedDensity, add_noise, convolve, kl_numeric, tilde_coeffs
from hermite_coords.entropy import kl_quadratic, perturbation_norm

# a degree-4 bump on a unit-variance Gaussian
d = PerturbedDensity(0.0, 1.0, {4: 0.05})
print("input coefficients:", d.coeffs)

# noise of variance 1 halves the variance ratio, so c_4 shrinks by (1/2)^2
noisy = add_noise(d, 1.0)
print("after N(0,1) noise:", noisy.var, noisy.coeffs)

# convolving two perturbed densities mixes degrees through the cross constants
mix = convolve(PerturbedDensity(0.0, 1.0, {1: 0.1}), PerturbedDensity(0.0, 2.0, {2: 0.1}))
print("convolution:", mix.var, {k: round(c, 6) for k, c in mix.coeffs.items()})

# odd perturbations go negative in the tails unless a small H_4k term is added
print("tilde H_3 coefficients:", tilde_coeffs(3, 0.01, 0.05))

# KL to second order versus quadrature
for eps in (0.08, 0.04, 0.02):
    dd = PerturbedDensity(0.0, 1.0, {4: eps})
    print(f"eps={eps:<5} KL={kl_numeric(dd, 0.0, 1.0):.6e}  quadratic={kl_quadratic(dd.coeffs):.6e}")

# the H_3 direction contracts slowest under noise: ratio (p/(p+v))^3 exactly
d3 = PerturbedDensity(0.0, 1.0, {3: 1.0})
print("pure H_3 norm ratio:", perturbation_norm(add_noise(d3, 1.0).coeffs) ** 2, "vs", 0.5**3)
