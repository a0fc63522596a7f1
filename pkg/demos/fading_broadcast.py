"""
Degraded fading broadcast channel
=================================

Binary fading {1, 10} with equal weights, mu = 5/4 and a strong-user noise of
1/4.  The Gaussian superposition mu-rate peaks at an interior power split,
and at that split a degree-8 Hermite perturbation of both layers gains.
"""
import numpy as np

from hermite_coords import counterexample_limit, hermite_gain, mu_rate_gaussian, optimal_r, reference_fading, reference_params
from hermite_coords.fading_bc import BCParams

law, prm = reference_fading(), reference_params()
split = optimal_r(prm.p, prm.v, prm.mu, law)
print(f"optimal R = {split.R:.8f}, interior: {split.interior}")

# coarse look at the curve
for R in np.linspace(0.0, prm.p, 7):
    print(f"R={R:.3f}  mu-rate={mu_rate_gaussian(BCParams(prm.p, prm.v, prm.mu, R), law):.6f}")

# second-order gain of opposite H_k perturbations of the two layers
for k in range(3, 11):
    print(f"k={k:<2} gain={hermite_gain(k, split.R, prm, law):+.6e}")

# numeric check at k = 8: the extrapolated limit sits near half the gain,
# off by a term that shrinks with the tail-correction weight delta
lim, vals = counterexample_limit(prm, law, 8)
print(f"numeric limit {lim:.6e}  vs half gain {0.5 * hermite_gain(8, split.R, prm, law):.6e}")
