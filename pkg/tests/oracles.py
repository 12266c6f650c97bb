"""Brute-force reference implementations used only by the tests.

Nothing here imports the type-class machinery: spectra are expanded to
explicit vectors with itertools and compared with plain prefix sums.
"""
import itertools
import math

import numpy as np


def explicit_power(probs, n):
    """All d**n products of ``probs``, sorted descending."""
    if n == 0:
        return np.array([1.0])
    vals = [math.prod(t) for t in itertools.product(probs, repeat=n)]
    return np.sort(np.array(vals))[::-1]


def naive_majorized(p, q, tol=1e-9):
    """p ≺ q on explicit vectors (zero-padded, sorted)."""
    p = np.sort(np.asarray(p, dtype=float))[::-1]
    q = np.sort(np.asarray(q, dtype=float))[::-1]
    size = max(p.size, q.size)
    p = np.pad(p, (0, size - p.size))
    q = np.pad(q, (0, size - q.size))
    P = list(itertools.accumulate(p.tolist()))
    Q = list(itertools.accumulate(q.tolist()))
    return all(pk <= qk + tol for pk, qk in zip(P, Q))


def _m_bound(vec):
    # beyond this, uniform(2**m) has more entries than vec: dilution always
    # succeeds and distillation always fails
    return math.ceil(math.log2(len(vec))) + 1


def naive_truncate(vec, eps, rel=1e-9):
    """Keep whole groups of equal values, largest first, until mass >= 1 - eps."""
    vec = np.sort(np.asarray(vec, dtype=float))[::-1]
    if eps == 0:
        return vec
    groups = []
    for v in vec:
        if groups and math.isclose(v, groups[-1][0], rel_tol=rel):
            groups[-1][1] += 1
        else:
            groups.append([v, 1])
    kept, mass = [], 0.0
    for v, k in groups:
        kept.extend([v] * k)
        mass += v * k
        if mass >= 1 - eps:
            break
    kept = np.array(kept)
    return kept / kept.sum()


def naive_dilution_min_m(a_probs, n, eps=0.0):
    target = naive_truncate(explicit_power(a_probs, n), eps)
    for m in range(_m_bound(target) + 1):
        if naive_majorized(np.full(2**m, 2.0**-m), target):
            return m
    return None


def naive_distillation_max_m(a_probs, n, eps=0.0):
    source = naive_truncate(explicit_power(a_probs, n), eps)
    best = 0
    for m in range(_m_bound(source) + 1):
        if naive_majorized(source, np.full(2**m, 2.0**-m)):
            best = m
    return best
