"""Root bracketing and eps-extrapolation helpers shared by the channel modules."""
import numpy as np
from scipy.optimize import bisect

from .errors import NoRootError


def scan_brackets(fn, lo, hi, points=512, geometric=True):
    """Sign-change brackets of ``fn`` on a scan grid over ``[lo, hi]``.

    Exact zeros on the grid are returned as degenerate brackets ``(x, x)``.
    """
    grid = np.geomspace(lo, hi, points) if geometric else np.linspace(lo, hi, points)
    vals = np.array([fn(float(x)) for x in grid])
    out = []
    for i in range(points - 1):
        if vals[i] == 0.0:
            out.append((float(grid[i]), float(grid[i])))
        elif vals[i] * vals[i + 1] < 0:
            out.append((float(grid[i]), float(grid[i + 1])))
    if vals[-1] == 0.0:
        out.append((float(grid[-1]), float(grid[-1])))
    return out


def find_roots(fn, lo, hi, points=512, geometric=True, xtol=1e-13):
    roots = []
    for a, b in scan_brackets(fn, lo, hi, points, geometric):
        roots.append(a if a == b else bisect(fn, a, b, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=500))
    return roots


def first_root(fn, lo=1e-4, hi=64.0, points=512, geometric=True, xtol=1e-13):
    roots = find_roots(fn, lo, hi, points, geometric, xtol)
    if not roots:
        raise NoRootError(f"no sign change found in [{lo}, {hi}]")
    return roots[0]


def richardson(eps, values, power=2):
    """Extrapolate ``values(eps)`` to ``eps = 0``.

    Fits a polynomial in ``eps**power`` through all points (Neville's scheme)
    and returns its value at zero.
    """
    t = np.asarray(eps, dtype=float) ** power
    table = list(np.asarray(values, dtype=float))
    n = len(table)
    if n != len(t) or n == 0:
        raise ValueError("eps and values must be non-empty and of equal length")
    for m in range(1, n):
        for i in range(n - m):
            table[i] = (t[i + m] * table[i] - t[i] * table[i + 1]) / (t[i + m] - t[i])
    return float(table[0])
