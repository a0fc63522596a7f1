"""Probabilists' Hermite polynomials, their normalized variance-scaled form,
and the Gaussian density.

``H_k`` is the unnormalized probabilists' polynomial,
``H_k(x) = (-1)^k exp(x^2/2) d^k/dx^k exp(-x^2/2)``, and

    H_k^[p](x) = H_k(x / sqrt(p)) / sqrt(k!)

is orthonormal in L2(g_p).
"""
import math

import numpy as np

from .errors import DegreeOverflowError, InvalidVarianceError

MAX_DEGREE = 64


def _check_degree(k):
    if k < 0 or int(k) != k:
        raise DegreeOverflowError(f"degree must be a nonnegative integer, got {k!r}")
    if k > MAX_DEGREE:
        raise DegreeOverflowError(f"degree {k} exceeds MAX_DEGREE={MAX_DEGREE}")
    return int(k)


def _check_variance(p):
    if not p > 0:
        raise InvalidVarianceError(f"variance must be positive, got {p!r}")


def _as_output(x, y):
    return float(y) if np.ndim(x) == 0 else y


def hermite(k, x):
    """Unnormalized probabilists' Hermite polynomial ``H_k(x)``.

    Uses ``H_{k+1} = x H_k - k H_{k-1}``. ``x`` may be a scalar or array.
    """
    k = _check_degree(k)
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if k == 0:
        return _as_output(x, prev)
    cur = x.copy()
    for n in range(1, k):
        prev, cur = cur, x * cur - n * prev
    return _as_output(x, cur)


def _inv_sqrt_factorial(k):
    r = 1.0
    for n in range(2, k + 1):
        r *= n
    return 1.0 / math.sqrt(r)


def hermite_normalized(k, p, x):
    """``H_k^[p](x) = H_k(x/sqrt(p)) / sqrt(k!)``."""
    k = _check_degree(k)
    _check_variance(p)
    x = np.asarray(x, dtype=float)
    return _as_output(x, hermite(k, x / math.sqrt(p)) * _inv_sqrt_factorial(k))


def hermite_table(max_k, p, x):
    """All normalized polynomials ``H_0^[p] .. H_max_k^[p]`` at ``x``.

    Returns an array of shape ``(max_k + 1,) + x.shape``. Evaluated with the
    normalized recurrence ``h_{n+1} = (y h_n - sqrt(n) h_{n-1}) / sqrt(n+1)``,
    ``y = x / sqrt(p)``, which never forms k! explicitly.
    """
    max_k = _check_degree(max_k)
    _check_variance(p)
    y = np.asarray(x, dtype=float) / math.sqrt(p)
    out = np.empty((max_k + 1,) + y.shape)
    out[0] = 1.0
    if max_k >= 1:
        out[1] = y
    for n in range(1, max_k):
        out[n + 1] = (y * out[n] - math.sqrt(n) * out[n - 1]) / math.sqrt(n + 1)
    return out


def hermite_series(coeffs, p, x):
    """Evaluate ``sum_k c_k H_k^[p](x)`` for a ``{degree: coefficient}`` map."""
    x = np.asarray(x, dtype=float)
    if not coeffs:
        return _as_output(x, np.zeros_like(x))
    table = hermite_table(max(coeffs), p, x)
    total = np.zeros_like(x)
    for k, c in coeffs.items():
        total = total + c * table[k]
    return _as_output(x, total)


def gaussian_density(mean, p, x):
    _check_variance(p)
    x = np.asarray(x, dtype=float)
    y = np.exp(-((x - mean) ** 2) / (2.0 * p)) / math.sqrt(2.0 * math.pi * p)
    return _as_output(x, y)


def gaussian_entropy(p):
    """Differential entropy of ``N(., p)`` in nats."""
    _check_variance(p)
    return 0.5 * math.log(2.0 * math.pi * math.e * p)
