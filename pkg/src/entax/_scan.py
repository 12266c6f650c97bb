"""Compensated inclusive prefix sums.

Each partial sum is carried as an unevaluated double-double ``hi + lo`` and
the scan is the log-depth Hillis-Steele sweep, so the whole thing stays
vectorised.  Error per prefix is O(eps^2 * log n) relative instead of the
O(eps * n) of a plain ``np.cumsum``.
"""
import numpy as np


def _two_sum(a, b):
    s = a + b
    bp = s - a
    return s, (a - (s - bp)) + (b - bp)


def _dd_add(ahi, alo, bhi, blo):
    s, e = _two_sum(ahi, bhi)
    e = e + (alo + blo)
    hi = s + e
    return hi, e - (hi - s)


def compensated_cumsum(x) -> np.ndarray:
    hi = np.array(x, dtype=float, copy=True).ravel()
    lo = np.zeros_like(hi)
    shift = 1
    while shift < hi.size:
        nhi, nlo = _dd_add(hi[shift:], lo[shift:], hi[:-shift], lo[:-shift])
        hi[shift:] = nhi
        lo[shift:] = nlo
        shift *= 2
    return hi + lo
