"""
Thresholds for the symmetric two-user interference channel
==========================================================

Four cross-gain thresholds separate regimes where small non-Gaussian
perturbations, or blind time sharing, beat Gaussian inputs with interference
treated as noise.  Here we compute them and confirm the sign of the degree-2
and degree-3 gain functions with a direct entropy computation.
"""
import numpy as np

from hermite_coords import ICParams, f_k, sum_rate_limit, threshold_ladder

for p in (0.5, 1.0, 4.0):
    lad = threshold_ladder(p)
    print(f"p={p:<4}", "  ".join(f"{k}={v:.6f}" for k, v in lad.items()))

# the last threshold is where blind time sharing starts to win; its square is also printed
print("T4^2 at p=1:", threshold_ladder(1.0)["T4"] ** 2)

# numeric oracle: second-order sum-rate gain of opposite H_k perturbations
p = 1.0
for k, root in ((2, threshold_ladder(p)["T2"]), (3, threshold_ladder(p)["T3"])):
    for a in (root - 0.05, root + 0.05):
        prm = ICParams(a, p)
        lim, vals = sum_rate_limit(prm, k)
        print(f"k={k} a={a:.4f}  f_k={f_k(prm, k):+.4e}  oracle={lim:+.4e}  same sign: {np.sign(lim) == np.sign(f_k(prm, k))}")
