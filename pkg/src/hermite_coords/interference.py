"""Symmetric two-user Gaussian interference channel.

Receiver ``i`` sees ``X_i + a X_j + Z_i`` with unit-variance Gaussian noise and
treats interference as noise. All rates are in nats.
"""
import math
from dataclasses import dataclass
from enum import Enum

from scipy.optimize import brentq

from .algebra import PerturbedDensity, add_noise, convolve, positivity_margin, scale, tilde_coeffs
from .entropy import entropy_deficit_numeric, entropy_numeric
from .errors import PerturbationTooLargeError, UnsupportedDegreeError
from .numerics import first_root, richardson
from .quadrature import DEFAULT_QUAD

SCAN_LO = 1e-4
SCAN_HI = 64.0
SCAN_POINTS = 512


@dataclass(frozen=True)
class ICParams:
    a: float
    p: float

    def __post_init__(self):
        if self.a < 0:
            raise ValueError(f"interference coefficient must be >= 0, got {self.a}")
        if not self.p > 0:
            raise ValueError(f"power must be positive, got {self.p}")


class Threshold(str, Enum):
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    T4 = "T4"


def f_k(params, k):
    """Second-order sum-rate gain of opposite ``H_k`` perturbations, ``k >= 2``.

    ``[a^2/(p a^2 + 1)]^k - (a^k - 1)^2 / (p a^2 + p + 1)^k``
    """
    if k < 2:
        raise UnsupportedDegreeError("f_k needs k >= 2; see k1_condition for k = 1")
    return _f_expr(params.a, params.p, k)


def _f_expr(a, p, k):
    return (a * a / (p * a * a + 1.0)) ** k - (a**k - 1.0) ** 2 / (p * a * a + p + 1.0) ** k


def k1_condition(params):
    """The ``f_k`` expression evaluated at ``k = 1``.

    Not a gain (an ``H_1`` perturbation only moves the mean), but its sign
    change sits exactly at the root of ``p a^3 + a - 1/2``.
    """
    return _f_expr(params.a, params.p, 1)


def oracle_gain_limit(params, k):
    """Predicted limit of :func:`sum_rate_numeric` as eps, delta -> 0.

    Carrying the second-order expansion through with both users gives
    ``2 [ (a^2 p/(a^2 p + 1))^k - (1 - a^k)^2 (p/(p + a^2 p + 1))^k ]``,
    i.e. ``2 p^k f_k``: same sign and roots as :func:`f_k`.
    """
    a, p = params.a, params.p
    n = p + a * a * p + 1.0
    return 2.0 * ((a * a * p / (a * a * p + 1.0)) ** k - (1.0 - a**k) ** 2 * (p / n) ** k)


def gaussian_tin_sum_rate(params):
    a, p = params.a, params.p
    return math.log1p(p / (1.0 + a * a * p))


def blind_ts_sum_rate(params):
    """Blind time-sharing sum rate when receivers know the delay."""
    a, p = params.a, params.p
    return 0.25 * (math.log1p(2.0 * p) + math.log1p(2.0 * p / (1.0 + 2.0 * a * a * p)))


def b2(params):
    a, p = params.a, params.p
    return (
        0.25 * (math.log(1.0 + 2.0 * p) + math.log(1.0 + 2.0 * p / (1.0 + 2.0 * a * a * p)))
        - math.log(1.0 + p / (1.0 + a * a * p))
    )


def _threshold_fn(p, which):
    which = Threshold(which)
    if which is Threshold.T1:
        return lambda a: p * a**3 + a - 0.5
    if which is Threshold.T2:
        return lambda a: _f_expr(a, p, 2)
    if which is Threshold.T3:
        return lambda a: _f_expr(a, p, 3)
    return lambda a: b2(ICParams(a, p))


def threshold(p, which):
    """Positive root in ``a`` of the function defining ``which``.

    T1: ``p a^3 + a - 1/2``; T2, T3: roots of ``f_2``, ``f_3``; T4: root of
    :func:`b2`. Geometric scan of (1e-4, 64] then bisection.
    """
    if not p > 0:
        raise ValueError(f"power must be positive, got {p}")
    return first_root(_threshold_fn(p, which), SCAN_LO, SCAN_HI, SCAN_POINTS)


def threshold_ladder(p):
    return {t.value: threshold(p, t) for t in Threshold}


def k1_root(p):
    """Root of :func:`k1_condition` in ``a`` (Brent, independent of :func:`threshold`)."""
    fn = lambda a: k1_condition(ICParams(a, p))
    return brentq(fn, SCAN_LO, 1.0, xtol=1e-14, rtol=1e-15)


def _user_deficit(own, other, a, q):
    """``h_G - h`` terms of ``I(X; X + aX' + Z)`` for one receiver.

    Returns the entropy deficits of the received signal and of the
    interference-plus-noise, relative to their Gaussian counterparts.
    """
    interference = add_noise(scale(other, a), 1.0) if a > 0 else PerturbedDensity(0.0, 1.0, {})
    received = convolve(own, interference)
    return entropy_deficit_numeric(received, q), entropy_deficit_numeric(interference, q)


def _ic_inputs(params, k, eps, delta):
    x1 = PerturbedDensity(0.0, params.p, tilde_coeffs(k, eps, delta))
    x2 = PerturbedDensity(0.0, params.p, tilde_coeffs(k, -eps, delta))
    return x1, x2


def sum_rate_quadrature(params, x1, x2, q=DEFAULT_QUAD):
    """Sum rate ``sum_i h(X_i + a X_j + Z_i) - h(a X_j + Z_i)`` with every entropy by quadrature."""
    total = 0.0
    for own, other in ((x1, x2), (x2, x1)):
        interference = add_noise(scale(other, params.a), 1.0) if params.a > 0 else PerturbedDensity(0.0, 1.0, {})
        total += entropy_numeric(convolve(own, interference), q) - entropy_numeric(interference, q)
    return total


def max_oracle_eps(k, delta):
    """Largest eps keeping both ``g(1 +/- eps H~_k)`` nonnegative."""
    return min(
        positivity_margin(tilde_coeffs(k, 1.0, delta)),
        positivity_margin(tilde_coeffs(k, -1.0, delta)),
    )


def sum_rate_numeric(params, k, eps, delta=0.05, q=DEFAULT_QUAD):
    """``(2/eps^2) [S(X1, X2) - S(X1^G, X2^G)]`` by quadrature.

    ``X1 ~ g_p(1 + eps H~_k)``, ``X2 ~ g_p(1 - eps H~_k)``. Output densities
    are built exactly with the coordinate algebra (cross terms included) and
    every entropy is integrated numerically. Entropies enter as deficits from
    the Gaussian laws of equal variance, which are exactly the Gaussian-input
    entropies, so the Gaussian sum rate cancels term by term.
    """
    if k < 2:
        raise UnsupportedDegreeError("sum_rate_numeric needs k >= 2")
    if eps == 0:
        return 0.0
    if abs(eps) > max_oracle_eps(k, delta):
        raise PerturbationTooLargeError(
            f"eps={eps} breaks positivity of g(1 +/- eps H~_{k}) at delta={delta}"
        )
    x1, x2 = _ic_inputs(params, k, eps, delta)
    a = params.a
    recv1, intf1 = _user_deficit(x1, x2, a, q)
    # I = h(Y) - h(aX' + Z); gain relative to Gaussian = -(deficit_Y) + deficit_interference
    gain1 = -recv1 + intf1
    if k % 2:
        # X2 is the mirror image of X1 in law, so both receivers see the same rate
        gain2 = gain1
    else:
        recv2, intf2 = _user_deficit(x2, x1, a, q)
        gain2 = -recv2 + intf2
    return 2.0 * (gain1 + gain2) / (eps * eps)


def default_eps_ladder(k, delta, top=0.05, levels=3):
    e0 = min(top, 0.5 * max_oracle_eps(k, delta))
    return [e0 / 2**i for i in range(levels)]


def sum_rate_limit(params, k, delta=0.05, eps_ladder=None, q=DEFAULT_QUAD):
    """Richardson-extrapolated (in eps^2) limit of :func:`sum_rate_numeric`."""
    ladder = eps_ladder or default_eps_ladder(k, delta)
    values = [sum_rate_numeric(params, k, e, delta, q) for e in ladder]
    return richardson(ladder, values, power=2), values
