"""Composite Gauss-Legendre quadrature on a truncated real line."""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import QuadratureError


@dataclass(frozen=True)
class QuadratureSpec:
    """Truncation and resolution for every numeric integral.

    ``nodes`` is the number of panels of the composite rule; each panel uses
    ``order`` Gauss-Legendre points. ``abs_tol`` bounds how far the total
    mass of an integrated density may drift from 1 before the result is
    rejected.
    """

    radius_sigmas: float = 12.0
    nodes: int = 4000
    abs_tol: float = 1e-9
    order: int = 8

    def __post_init__(self):
        if self.radius_sigmas < 8:
            raise ValueError("radius_sigmas must be >= 8")
        if self.nodes < 2000:
            raise ValueError("nodes (panel count) must be >= 2000")
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if self.order < 2:
            raise ValueError("order must be >= 2")


DEFAULT_QUAD = QuadratureSpec()


@lru_cache(maxsize=32)
def _unit_rule(panels, order):
    # nodes/weights on [0, 1], flattened panel by panel
    t, w = np.polynomial.legendre.leggauss(order)
    t = 0.5 * (t + 1.0)
    w = 0.5 * w
    starts = np.arange(panels)[:, None]
    nodes = ((starts + t[None, :]) / panels).ravel()
    weights = np.broadcast_to(w / panels, (panels, order)).ravel().copy()
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def composite_rule(lo, hi, panels, order=8):
    """Nodes and weights of the composite rule on ``[lo, hi]``."""
    if not hi > lo:
        raise QuadratureError(f"empty interval [{lo}, {hi}]")
    u, w = _unit_rule(int(panels), int(order))
    span = hi - lo
    return lo + span * u, span * w


def grid_for(mean, var, q=DEFAULT_QUAD, radius_sigmas=None):
    """Quadrature grid covering ``mean +/- radius * sqrt(var)``.

    ``radius_sigmas`` overrides ``q.radius_sigmas`` when given.
    """
    r = (q.radius_sigmas if radius_sigmas is None else radius_sigmas) * np.sqrt(var)
    return composite_rule(mean - r, mean + r, q.nodes, q.order)


def integrate(fn, lo, hi, q=DEFAULT_QUAD):
    x, w = composite_rule(lo, hi, q.nodes, q.order)
    return float(np.sum(w * fn(x)))
