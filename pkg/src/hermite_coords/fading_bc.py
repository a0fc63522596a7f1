"""Degraded broadcast channel with coherent fading.

    Y1 = H X + Z1,  Z1 ~ N(0, v),  0 < v < 1
    Y2 = H X + Z2,  Z2 ~ N(0, 1)

Superposition input ``X = U + V`` with powers ``Q = P - R`` (coarse message
``U``) and ``R`` (fine message ``V``). The objective is the mu-rate
``I(X; Y1 | U, H) + mu I(U; Y2 | H)`` in nats.
"""
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .algebra import (
    PerturbedDensity,
    add_noise,
    convolve,
    positivity_margin,
    scale,
    shift,
    tilde_coeffs,
)
from .entropy import entropy_deficit_numeric
from .errors import PerturbationTooLargeError, UnsupportedDegreeError
from .numerics import find_roots, richardson
from .quadrature import DEFAULT_QUAD

REFERENCE_R = 0.62043154


@dataclass(frozen=True)
class FadingLaw:
    """Finite discrete law of the fading gain ``H``."""

    atoms: tuple

    def __post_init__(self):
        atoms = tuple((float(h), float(w)) for h, w in self.atoms)
        if not atoms:
            raise ValueError("fading law needs at least one atom")
        for h, w in atoms:
            if h < 0:
                raise ValueError(f"fading gain must be >= 0, got {h}")
            if not w > 0:
                raise ValueError(f"atom weight must be positive, got {w}")
        total = math.fsum(w for _, w in atoms)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"atom weights sum to {total!r}, not 1")
        object.__setattr__(self, "atoms", atoms)

    @property
    def gains(self):
        return np.array([h for h, _ in self.atoms])

    @property
    def weights(self):
        return np.array([w for _, w in self.atoms])

    def expect(self, fn):
        """``E fn(H)`` for a vectorized ``fn``."""
        return float(np.sum(self.weights * fn(self.gains)))

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        try:
            atoms = [(a["h"], a["w"]) for a in doc["atoms"]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"fading law JSON must look like {{'atoms': [{{'h': .., 'w': ..}}]}}: {exc}") from exc
        return cls(tuple(atoms))

    @classmethod
    def load(cls, path):
        return cls.from_json(Path(path).read_text())

    def to_json(self):
        return json.dumps({"atoms": [{"h": h, "w": w} for h, w in self.atoms]})


def deterministic(h=1.0):
    return FadingLaw(((h, 1.0),))


def reference_fading():
    """``H`` uniform on {1, 10}."""
    return FadingLaw(((1.0, 0.5), (10.0, 0.5)))


@dataclass(frozen=True)
class BCParams:
    p: float
    v: float
    mu: float
    R: float = 0.0

    def __post_init__(self):
        if not self.p > 0:
            raise ValueError(f"total power must be positive, got {self.p}")
        if not 0 < self.v < 1:
            raise ValueError(f"strong-user noise variance must lie in (0, 1), got {self.v}")
        if not self.mu > 0:
            raise ValueError(f"mu must be positive, got {self.mu}")
        if not 0 <= self.R <= self.p:
            raise ValueError(f"R must lie in [0, p], got R={self.R}, p={self.p}")

    @property
    def Q(self):
        return self.p - self.R

    def with_R(self, R):
        return BCParams(self.p, self.v, self.mu, R)


def reference_params():
    return BCParams(p=2 * REFERENCE_R, v=0.25, mu=1.25, R=REFERENCE_R)


def mu_rate_gaussian(params, fading):
    """Mu-rate of the jointly Gaussian superposition code."""
    R, P, v, mu = params.R, params.p, params.v, params.mu
    h2 = fading.gains**2
    w = fading.weights
    fine = 0.5 * np.log1p(R * h2 / v)
    coarse = 0.5 * (np.log1p(P * h2) - np.log1p(R * h2))
    return float(np.sum(w * (fine + mu * coarse)))


def stationarity(R, v, mu, fading):
    """``E H^2/(v + R H^2) - mu E H^2/(1 + R H^2)``; zero at interior optima."""
    h2 = fading.gains**2
    w = fading.weights
    return float(np.sum(w * h2 / (v + R * h2)) - mu * np.sum(w * h2 / (1.0 + R * h2)))


@dataclass(frozen=True)
class PowerSplit:
    R: float
    value: float
    stationary_points: tuple
    interior: bool


def optimal_r(p, v, mu, fading, scan_points=4001):
    """Best Gaussian power split ``R`` in ``[0, p]``.

    Stationary points come from a dense scan of :func:`stationarity` plus
    bisection; they are ranked together with both endpoints by the mu-rate.
    The condition does not involve ``p``, which only bounds the search.
    """
    base = BCParams(p, v, mu, 0.0)
    roots = find_roots(
        lambda R: stationarity(R, v, mu, fading), 0.0, p, points=scan_points, geometric=False, xtol=1e-15
    )
    candidates = [0.0, p, *roots]
    values = [mu_rate_gaussian(base.with_R(R), fading) for R in candidates]
    best = int(np.argmax(values))
    return PowerSplit(
        R=candidates[best],
        value=values[best],
        stationary_points=tuple(roots),
        interior=best >= 2,
    )


@dataclass(frozen=True)
class CurveShape:
    concave: bool
    local_maxima: tuple
    max_convexity: float


def mu_rate_shape(p, v, mu, fading, points=1000):
    """Scan the Gaussian mu-rate over ``R`` in ``[0, p]``.

    Reports concavity (no positive second difference beyond rounding) and the
    interior local maxima, so a multi-modal curve is flagged, not assumed away.
    """
    base = BCParams(p, v, mu, 0.0)
    R = np.linspace(0.0, p, points)
    vals = np.array([mu_rate_gaussian(base.with_R(float(r)), fading) for r in R])
    d2 = np.diff(vals, 2)
    peaks = [float(R[i]) for i in range(1, points - 1) if vals[i] >= vals[i - 1] and vals[i] > vals[i + 1]]
    if vals[-1] > vals[-2]:
        peaks.append(float(R[-1]))
    if vals[0] > vals[1]:
        peaks.insert(0, float(R[0]))
    return CurveShape(bool(np.all(d2 <= 1e-12)), tuple(peaks), float(d2.max()))


def _T(x, R, fading):
    h2 = fading.gains**2
    return R * h2 / (x + R * h2)


def hermite_gain(k, R, params, fading):
    """``mu E T(1)^k - E T(v)^k`` with ``T(x) = R H^2 / (x + R H^2)``.

    Positive values mean a Hermite-``k`` perturbation of ``U`` and ``V`` beats
    the Gaussian code with power split ``R``.
    """
    if k < 3:
        raise UnsupportedDegreeError("hermite_gain needs k >= 3")
    if not 0 < R <= params.p:
        raise ValueError(f"R must lie in (0, p], got {R}")
    w = fading.weights
    return float(params.mu * np.sum(w * _T(1.0, R, fading) ** k) - np.sum(w * _T(params.v, R, fading) ** k))


def weak_condition(k, R, params, fading):
    """Margin of the Gaussian-``U`` / Hermite-``V`` condition (positive = met).

    ``mu [E T(1)^k - (R/P)^k E (P H^2/(1 + P H^2))^k] - E T(v)^k``
    """
    if k < 3:
        raise UnsupportedDegreeError("weak_condition needs k >= 3")
    if not 0 < R <= params.p:
        raise ValueError(f"R must lie in (0, p], got {R}")
    P = params.p
    w = fading.weights
    h2 = fading.gains**2
    through = (R / P) ** k * np.sum(w * (P * h2 / (1.0 + P * h2)) ** k)
    rhs = params.mu * (np.sum(w * _T(1.0, R, fading) ** k) - through)
    return float(rhs - np.sum(w * _T(params.v, R, fading) ** k))


def jensen_ratios(k, R, params, fading):
    """``(E T(v)^k / E T(1)^k, E T(v) / E T(1))``.

    At an interior optimum ``E T(v) = mu E T(1)``, so ``hermite_gain > 0``
    exactly when the first ratio is below the second.
    """
    w = fading.weights
    tv = _T(params.v, R, fading)
    t1 = _T(1.0, R, fading)
    return float(np.sum(w * tv**k) / np.sum(w * t1**k)), float(np.sum(w * tv) / np.sum(w * t1))


def _faded_plus_noise(d, h, noise):
    if h == 0:
        return PerturbedDensity(0.0, noise, {})
    return add_noise(scale(d, h), noise)


def max_verify_eps(k, delta):
    return min(
        positivity_margin(tilde_coeffs(k, 1.0, delta)),
        positivity_margin(tilde_coeffs(k, -1.0, delta)),
    )


def _hermegauss_expectation(density, values_at, nodes):
    """``E_density[values_at(u)]`` with probabilists' Gauss-Hermite nodes."""
    t, w = np.polynomial.hermite_e.hermegauss(nodes)
    w = w / math.sqrt(2.0 * math.pi)
    sd = math.sqrt(density.var)
    u = density.mean + sd * t
    # reweight the Gaussian rule by the perturbation factor 1 + L
    factor = density(u) / (np.exp(-t * t / 2.0) / (math.sqrt(2.0 * math.pi) * sd))
    return float(sum(wi * fi * values_at(ui) for wi, fi, ui in zip(w, factor, u)))


def counterexample_verify(params, fading, k, eps, delta=0.05, q=DEFAULT_QUAD, u_nodes=None):
    """``(mu-rate of Hermite code - Gaussian mu-rate) / eps^2`` by quadrature.

    ``U ~ g_Q(1 + eps H~_k)``, ``V ~ g_R(1 - eps H~_k)`` with ``P = 2R`` so
    that the ``H_k`` parts cancel in ``X = U + V``. Conditional entropies of
    ``Y_i`` given ``U = u, H = h`` use the shifted law of ``h u + h V + Z_i``
    and are averaged over ``u`` against the perturbed ``U`` density; ``h(Y2|H)``
    uses the exact convolution ``U + V``. Every entropy is a quadrature deficit
    from the Gaussian law of equal variance, so the result is the exact
    difference from :func:`mu_rate_gaussian` divided by ``eps^2``.
    """
    if k < 3:
        raise UnsupportedDegreeError("counterexample_verify needs k >= 3")
    if abs(params.p - 2.0 * params.R) > 1e-12 * params.p:
        raise ValueError("counterexample_verify requires P = 2R so the H_k parts of X cancel")
    if eps == 0:
        return 0.0
    if abs(eps) > max_verify_eps(k, delta):
        raise PerturbationTooLargeError(
            f"eps={eps} breaks positivity of the U/V densities at k={k}, delta={delta}"
        )
    u_dist = PerturbedDensity(0.0, params.Q, tilde_coeffs(k, eps, delta))
    v_dist = PerturbedDensity(0.0, params.R, tilde_coeffs(k, -eps, delta))
    x_dist = convolve(u_dist, v_dist)
    if u_nodes is None:
        # exact for the polynomial part of the U density
        u_nodes = max(u_dist.coeffs) // 2 + 4

    gain = 0.0
    for h, w in fading.atoms:
        strong = _faded_plus_noise(v_dist, h, params.v)
        weak = _faded_plus_noise(v_dist, h, 1.0)
        # h(Y|U=u,H=h) = h(shifted law); deficits are relative to equal-variance Gaussians
        d_strong = _hermegauss_expectation(
            u_dist, lambda u: entropy_deficit_numeric(shift(strong, h * u), q), u_nodes
        )
        d_weak = _hermegauss_expectation(
            u_dist, lambda u: entropy_deficit_numeric(shift(weak, h * u), q), u_nodes
        )
        d_out = entropy_deficit_numeric(_faded_plus_noise(x_dist, h, 1.0), q)
        # mu-rate = h(Y1|U,H) - h(Z1) + mu h(Y2|H) - mu h(Y2|U,H)
        gain += w * (-d_strong - params.mu * d_out + params.mu * d_weak)
    return gain / (eps * eps)


def default_verify_ladder(k, delta, top=0.05, levels=3):
    e0 = min(top, 0.5 * max_verify_eps(k, delta))
    return [e0 / 2**i for i in range(levels)]


def counterexample_limit(params, fading, k, delta=0.05, eps_ladder=None, q=DEFAULT_QUAD, u_nodes=None):
    ladder = eps_ladder or default_verify_ladder(k, delta)
    values = [counterexample_verify(params, fading, k, e, delta, q, u_nodes) for e in ladder]
    return richardson(ladder, values, power=2), values
