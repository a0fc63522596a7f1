"""Counter-examples to Gaussian interference minimizing ``I(X; X + h X1 + Z)``.

For ``X, X1`` iid with variance ``p`` and ``Z ~ N(0, v)``, perturbing both along
``H~_k`` changes the mutual information by ``-(eps^2/2) G(h, u, k) + o(eps^2)``
relative to Gaussian ``X1``, with ``u = v/p``. ``G > 0`` therefore exhibits a
non-Gaussian ``X1`` that does strictly worse than Gaussian interference.
"""
import csv
import io
from dataclasses import dataclass

import numpy as np

from .algebra import PerturbedDensity, add_noise, convolve, positivity_margin, scale, tilde_coeffs
from .entropy import entropy_deficit_numeric
from .errors import IndeterminatePointError, PerturbationTooLargeError, UnsupportedDegreeError
from .numerics import richardson
from .quadrature import DEFAULT_QUAD


@dataclass(frozen=True)
class SLPoint:
    h: float
    u: float
    k: int

    def __post_init__(self):
        if self.h < 0 or self.u < 0:
            raise ValueError(f"h and u must be >= 0, got h={self.h}, u={self.u}")
        if self.k < 3:
            raise UnsupportedDegreeError(f"k must be >= 3, got {self.k}")


def sl_gap(pt):
    """``G(h,u,k) = (1+h^k)^2/(1+h^2+u)^k - (1/(1+h^2+u))^k - (h^2/(h^2+u))^k``."""
    h, u, k = pt.h, pt.u, pt.k
    if h == 0 and u == 0:
        raise IndeterminatePointError("G is indeterminate at h = u = 0")
    s = 1.0 / (1.0 + h * h + u)
    third = 1.0 if u == 0 else (h * h / (h * h + u)) ** k
    return (1.0 + h**k) ** 2 * s**k - s**k - third


def default_grid():
    h = np.round(np.arange(1, 61) * 0.05, 10)
    u = np.round(np.arange(1, 101) * 0.05, 10)
    return h, u, range(3, 9)


def sl_scan(h_grid, u_grid, k_set):
    """All grid points with ``G > 0``, as ``(SLPoint, gap)`` pairs."""
    hits = []
    for k in k_set:
        for h in h_grid:
            for u in u_grid:
                if h == 0 and u == 0:
                    continue
                pt = SLPoint(float(h), float(u), int(k))
                g = sl_gap(pt)
                if g > 0:
                    hits.append((pt, g))
    return hits


def region_measure(h_grid, u_grid, k):
    """For each ``u``, the total length in ``h`` where ``G > 0`` (grid count times step)."""
    h_grid = np.asarray(h_grid, dtype=float)
    step = float(h_grid[1] - h_grid[0]) if len(h_grid) > 1 else 0.0
    out = []
    for u in u_grid:
        n = sum(1 for h in h_grid if not (h == 0 and u == 0) and sl_gap(SLPoint(float(h), float(u), k)) > 0)
        out.append((float(u), n * step))
    return out


def scan_csv(hits):
    """CSV text with header ``h,u,k,gap``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["h", "u", "k", "gap"])
    for pt, g in hits:
        w.writerow([f"{pt.h:.9g}", f"{pt.u:.9g}", pt.k, f"{g:.9g}"])
    return buf.getvalue()


def max_check_eps(k, delta):
    coeffs = tilde_coeffs(k, 1.0, delta) if delta > 0 else {k: 1.0}
    return positivity_margin(coeffs)


def sl_numeric_check(h, p, v, k, eps, delta=0.05, q=DEFAULT_QUAD):
    """``(2/eps^2) [I(X; X + h X1 + Z) - I(X; X + h X1^G + Z)]`` by quadrature.

    ``X, X1`` iid ``g_p(1 + eps H~_k)`` (plain ``H_k`` when ``delta == 0``).
    A negative value where :func:`sl_gap` is positive confirms that the
    perturbed ``X1`` gives strictly less mutual information than Gaussian.
    """
    if k < 3:
        raise UnsupportedDegreeError("sl_numeric_check needs k >= 3")
    if not (p > 0 and v > 0):
        raise ValueError("p and v must be positive")
    if eps == 0 or h == 0:
        return 0.0
    if abs(eps) > max_check_eps(k, delta):
        raise PerturbationTooLargeError(f"eps={eps} breaks positivity at k={k}, delta={delta}")
    coeffs = tilde_coeffs(k, eps, delta) if delta > 0 else {k: eps}
    x = PerturbedDensity(0.0, p, coeffs)
    interference = add_noise(scale(x, h), v)
    gaussian_interference = PerturbedDensity(0.0, h * h * p + v, {})
    # deficits are relative to equal-variance Gaussians; both outputs share the
    # Gaussian entropy h(X^G + h X1^G + Z), which cancels
    d_out = entropy_deficit_numeric(convolve(x, interference), q)
    d_int = entropy_deficit_numeric(interference, q)
    d_out_g = entropy_deficit_numeric(convolve(x, gaussian_interference), q)
    diff = (-d_out + d_int) - (-d_out_g)
    return 2.0 * diff / (eps * eps)


def default_check_ladder(k, delta, top=0.05, levels=3):
    e0 = min(top, 0.5 * max_check_eps(k, delta))
    return [e0 / 2**i for i in range(levels)]


def sl_numeric_limit(h, p, v, k, delta=0.05, eps_ladder=None, q=DEFAULT_QUAD):
    ladder = eps_ladder or default_check_ladder(k, delta)
    values = [sl_numeric_check(h, p, v, k, e, delta, q) for e in ladder]
    return richardson(ladder, values, power=2), values
