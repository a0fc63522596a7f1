"""Closed-form algebra on perturbed Gaussian densities.

A :class:`PerturbedDensity` stands for

    f(x) = g_{m,p}(x) * (1 + sum_k c_k H_k^[p](x - m)),

with the coefficients ``c_k`` (k >= 1) held in a sparse ``{degree: value}``
map. Sums of independent variables, additive Gaussian noise and scaling all
stay inside this family, so every operation below is exact.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .basis import MAX_DEGREE, gaussian_density, hermite_series
from .errors import (
    DegenerateScaleError,
    DegreeOverflowError,
    InvalidVarianceError,
    UnsupportedDegreeError,
)

POSITIVITY_FLOOR = -1e-12


def normalize_coeffs(coeffs):
    """Validate a coefficient map and return a plain sorted dict.

    Degree 0 is rejected: a constant direction does not integrate to zero
    against ``g_p``. Exact zeros are dropped.
    """
    out = {}
    for k, c in dict(coeffs).items():
        if int(k) != k or k < 1:
            raise UnsupportedDegreeError(f"coefficient degree must be >= 1, got {k!r}")
        if k > MAX_DEGREE:
            raise DegreeOverflowError(f"degree {k} exceeds MAX_DEGREE={MAX_DEGREE}")
        c = float(c)
        if c != 0.0:
            out[int(k)] = c
    return dict(sorted(out.items()))


@dataclass(frozen=True, eq=True)
class PerturbedDensity:
    mean: float = 0.0
    var: float = 1.0
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.var > 0:
            raise InvalidVarianceError(f"variance must be positive, got {self.var!r}")
        object.__setattr__(self, "coeffs", normalize_coeffs(self.coeffs))

    @property
    def is_gaussian(self):
        return not self.coeffs

    def __call__(self, x):
        return eval_density(self, x)


def gaussian(mean=0.0, var=1.0):
    return PerturbedDensity(mean, var, {})


def _noise_factor(p, v, k):
    return (p / (p + v)) ** (k / 2.0)


def add_noise(d, v):
    """Density of ``X + Z`` with ``Z ~ N(0, v)`` independent of ``X ~ d``.

    Each ``H_k`` direction is an eigenfunction: its coefficient is multiplied
    by ``(p / (p + v))^(k/2)`` and reinterpreted at variance ``p + v``.
    """
    if not v > 0:
        raise InvalidVarianceError(f"noise variance must be positive, got {v!r}")
    p = d.var
    coeffs = {k: c * _noise_factor(p, v, k) for k, c in d.coeffs.items()}
    return PerturbedDensity(d.mean, p + v, coeffs)


def smooth(coeffs, p, v):
    """Adjoint map: ``H_k^[p+v] * g_v = (p/(p+v))^(k/2) H_k^[p]``, degreewise."""
    if not p > 0 or not v > 0:
        raise InvalidVarianceError(f"variances must be positive, got p={p!r}, v={v!r}")
    return {k: c * _noise_factor(p, v, k) for k, c in normalize_coeffs(coeffs).items()}


def cross_constant(j, k, a, b):
    """``C`` in ``g_a H_j^[a] * g_b H_k^[b] = C g_{a+b} H_{j+k}^[a+b]``.

    From ``g_a H_j^[a] = (-sqrt(a))^j / sqrt(j!) * d^j g_a / dx^j`` and
    ``d^j g_a * d^k g_b = d^(j+k) g_{a+b}``.
    """
    if not a > 0 or not b > 0:
        raise InvalidVarianceError(f"variances must be positive, got a={a!r}, b={b!r}")
    binom = math.comb(j + k, j)
    return math.sqrt(binom) * a ** (j / 2.0) * b ** (k / 2.0) / (a + b) ** ((j + k) / 2.0)


def convolve(d1, d2):
    """Exact density of ``X1 + X2`` for independent ``X1 ~ d1``, ``X2 ~ d2``.

    Includes every second-order cross term ``c_j c_k`` at degree ``j + k``.
    Works for signed directions too; positivity is the caller's concern.
    """
    a, b = d1.var, d2.var
    left = {0: 1.0, **d1.coeffs}
    right = {0: 1.0, **d2.coeffs}
    out = {}
    for j, cj in left.items():
        for k, ck in right.items():
            if j == 0 and k == 0:
                continue
            deg = j + k
            if deg > MAX_DEGREE:
                raise DegreeOverflowError(
                    f"cross term of degree {deg} exceeds MAX_DEGREE={MAX_DEGREE}"
                )
            out[deg] = out.get(deg, 0.0) + cj * ck * cross_constant(j, k, a, b)
    return PerturbedDensity(d1.mean + d2.mean, a + b, out)


def scale(d, s):
    """Density of ``s * X``; the Hermite coordinates are unchanged.

    Negative ``s`` flips the sign of odd-degree coefficients.
    """
    if s == 0:
        raise DegenerateScaleError("scale factor must be nonzero")
    coeffs = d.coeffs
    if s < 0:
        coeffs = {k: (-c if k % 2 else c) for k, c in coeffs.items()}
    return PerturbedDensity(s * d.mean, s * s * d.var, coeffs)


def shift(d, offset):
    return PerturbedDensity(d.mean + offset, d.var, d.coeffs)


def tilde_coeffs(k, b, delta):
    """Coefficients of ``b * H~_k``: ``b H_k`` plus ``|b| delta H_{4k}``.

    The high-degree correction always carries positive weight so that the
    perturbed density stays nonnegative in the tails, whatever the sign of
    ``b`` or the parity of ``k``.
    """
    if k < 1:
        raise UnsupportedDegreeError(f"k must be >= 1, got {k}")
    if delta < 0:
        raise ValueError(f"delta must be nonnegative, got {delta}")
    if b == 0:
        return {}
    return normalize_coeffs({k: b, 4 * k: abs(b) * delta})


def eval_density(d, x):
    x = np.asarray(x, dtype=float)
    g = gaussian_density(d.mean, d.var, x)
    if d.is_gaussian:
        return g
    return g * (1.0 + hermite_series(d.coeffs, d.var, x - d.mean))


def support_radius(coeffs, radius_sigmas=12.0):
    """Half-width in standard deviations that captures every direction.

    ``g H_n^2`` carries mass out to the turning point ``sqrt(4n + 2)``; seven
    more standard deviations leave a relative tail below 1e-12.
    """
    if not coeffs:
        return radius_sigmas
    return max(radius_sigmas, math.sqrt(4 * max(coeffs) + 2) + 7.0)


def direction_min(d, radius_sigmas=12.0, grid_points=4000):
    """Minimum of ``1 + sum_k c_k H_k^[p]`` on the centred grid.

    The grid is widened to :func:`support_radius` for high degrees.
    """
    if d.is_gaussian:
        return 1.0
    r = support_radius(d.coeffs, radius_sigmas) * math.sqrt(d.var)
    t = np.linspace(-r, r, int(grid_points))
    return float(np.min(1.0 + hermite_series(d.coeffs, d.var, t)))


def positivity_check(d, radius_sigmas=12.0, grid_points=4000):
    if radius_sigmas < 8:
        raise ValueError("radius_sigmas must be >= 8")
    if grid_points < 1000:
        raise ValueError("grid_points must be >= 1000")
    return direction_min(d, radius_sigmas, grid_points) >= POSITIVITY_FLOOR


def positivity_margin(coeffs, radius_sigmas=12.0, grid_points=20001):
    """Largest ``t`` with ``1 + t * L >= 0`` on the grid, for ``L`` = coeffs.

    The answer does not depend on the variance, since ``H_k^[p](x)`` depends on
    ``x / sqrt(p)`` only. Returns ``inf`` when ``L`` is bounded below by 0.
    """
    coeffs = normalize_coeffs(coeffs)
    if not coeffs:
        return math.inf
    r = support_radius(coeffs, radius_sigmas)
    t = np.linspace(-r, r, int(grid_points))
    low = float(np.min(hermite_series(coeffs, 1.0, t)))
    return math.inf if low >= 0 else -1.0 / low
