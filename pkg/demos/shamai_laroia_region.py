"""
Where Gaussian interference is not the worst case
=================================================

G(h, u, k) > 0 marks points where an iid Hermite perturbation of the
interferer lowers I(X; X + h X1 + Z) below the Gaussian value.  We scan the
region, check one point by quadrature and look at the u = 0 slice.
"""
from hermite_coords import SLPoint, default_grid, region_measure, sl_gap, sl_numeric_limit, sl_scan

h, u, ks = default_grid()
hits = sl_scan(h, u, ks)
print(f"{len(hits)} grid points with G > 0")
for k in ks:
    print(f"k={k}: {sum(1 for pt, _ in hits if pt.k == k)} points")

g = sl_gap(SLPoint(0.5, 2.0, 3))
lim, vals = sl_numeric_limit(0.5, 1.0, 2.0, 3)
print(f"G(0.5, 2, 3) = {g:.9f}, quadrature limit = {lim:.9f}")

# no counter-example without noise
print("max G at u=0:", max(sl_gap(SLPoint(float(x), 0.0, k)) for x in h for k in ks))

# length of the positive h-set for k=3, at a few noise levels
for uu, length in region_measure(h, u, 3)[::20]:
    print(f"u={uu:.2f}  |{{h: G>0}}| ~ {length:.2f}")
