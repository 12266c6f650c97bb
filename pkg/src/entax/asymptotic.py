"""Multi-copy convertibility and entanglement rates.

``a^{⊗n}`` has ``d**n`` Schmidt coefficients but only ``C(n+d-1, d-1)``
distinct ones: every outcome string with the same composition (type) has
the same probability.  :class:`TypeClassSpectrum` stores one
``(log2 probability, exact multiplicity)`` pair per type, which is enough to
run majorization tests on product spectra at n in the tens.

Rates are found by binary search on the yardstick copy number ``m``:

* dilution: least ``m`` with ``e^{⊗m} ≺ smooth(a^{⊗n}, ε)``
* distillation: largest ``m`` with ``smooth(a^{⊗n}, ε) ≺ e^{⊗m}``

Smoothing discards at most ``ε`` of probability mass from the low end of the
spectrum, whole type classes at a time.
"""
from __future__ import annotations

import math
import os
import threading
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import List, NamedTuple, Optional

import numpy as np

from ._scan import compensated_cumsum
from .errors import BudgetExceeded
from .majorization import DEFAULT_TOL
from .schmidt import SchmidtVector, entropy

DEFAULT_BUDGET = 2_000_000
MERGE_TOL = 1e-12


def default_budget() -> int:
    """Type-class budget, overridable through ``ENTAX_BUDGET``."""
    raw = os.environ.get("ENTAX_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


class TypeClassSpectrum:
    """Compressed spectrum: class ``i`` holds ``multiplicities[i]`` equal entries of ``2**log2_probs[i]``.

    Numerical work only touches ``log2_probs`` and ``log2_mults``; the exact
    integer ``multiplicities`` are produced on first access.  ``discarded``
    is the probability mass removed by smoothing (0 for an untruncated
    product spectrum).
    """

    def __init__(self, log2_probs, log2_mults, n, base_dim, exact=None, discarded=0.0):
        self.log2_probs = np.asarray(log2_probs, dtype=float)
        self.log2_mults = np.asarray(log2_mults, dtype=float)
        self.n = n
        self.base_dim = base_dim
        self.discarded = discarded
        self._exact = exact
        self._lock = threading.RLock()
        self._cache = {}

    def __repr__(self):
        return (f"TypeClassSpectrum(n={self.n}, base_dim={self.base_dim}, classes={len(self)}, "
                f"discarded={self.discarded:g})")

    def __len__(self):
        return self.log2_probs.size

    def _memo(self, key, fn):
        with self._lock:
            if key not in self._cache:
                self._cache[key] = fn()
            return self._cache[key]

    @property
    def multiplicities(self) -> tuple:
        """Exact class sizes as Python ints."""
        if self._exact is None:
            return self._memo("exact", lambda: tuple(int(round(2.0**x)) for x in self.log2_mults))
        return self._memo("exact", self._exact)

    @property
    def count(self) -> int:
        """Number of nonzero entries (exact)."""
        return sum(self.multiplicities)

    @property
    def probs(self) -> np.ndarray:
        return np.exp2(self.log2_probs)

    @property
    def masses(self) -> np.ndarray:
        """Probability mass carried by each class."""
        return self._memo("masses", lambda: np.exp2(self.log2_mults + self.log2_probs))

    @property
    def cumulative_mass(self) -> np.ndarray:
        return self._memo("cum", lambda: compensated_cumsum(self.masses))

    @property
    def cumulative_count(self) -> np.ndarray:
        """Class boundaries as floats (exact counts may exceed 2**53)."""
        return self._memo("xs", lambda: compensated_cumsum(np.exp2(self.log2_mults)))

    @property
    def total_mass(self) -> float:
        return math.fsum(self.masses)

    def expand(self) -> np.ndarray:
        """Full explicit spectrum; only sensible for small counts."""
        return np.repeat(self.probs, self.multiplicities)

    def check_invariants(self, tol: float = 1e-6) -> None:
        if abs(self.total_mass - 1.0) > tol:
            raise AssertionError(f"class masses sum to {self.total_mass}")
        if np.any(np.diff(self.log2_probs) >= 0):
            raise AssertionError("log2_probs not strictly decreasing")
        if self.discarded == 0.0 and self.count != self.base_dim**self.n:
            raise AssertionError(f"multiplicities sum to {self.count}, expected {self.base_dim}**{self.n}")
        exact = np.array([math.log2(k) for k in self.multiplicities])
        if not np.allclose(exact, self.log2_mults, rtol=0, atol=1e-9):
            raise AssertionError("float and exact multiplicities disagree")


def _distinct_values(a: SchmidtVector):
    """Group equal Schmidt coefficients: returns (log2 values, degeneracies)."""
    logs = np.log2(a.array)
    vals, degs = [logs[0]], [1]
    for x in logs[1:]:
        if abs(x - vals[-1]) <= MERGE_TOL:
            degs[-1] += 1
        else:
            vals.append(x)
            degs.append(1)
    return np.array(vals), degs


@lru_cache(maxsize=64)
def compositions(n: int, parts: int) -> np.ndarray:
    """All ``parts``-tuples of non-negative ints summing to ``n``, lexicographically descending."""
    if parts == 1:
        return np.array([[n]], dtype=np.int64)
    blocks = []
    for first in range(n, -1, -1):
        rest = compositions(n - first, parts - 1)
        blocks.append(np.hstack([np.full((rest.shape[0], 1), first, dtype=np.int64), rest]))
    out = np.vstack(blocks)
    out.flags.writeable = False
    return out


def class_count(n: int, parts: int) -> int:
    return math.comb(n + parts - 1, parts - 1)


def _exact_multiplicities(K, degs, order, starts):
    """Exact multinomial class sizes, in the sorted/merged class order."""
    n = int(K[0].sum())
    K = K[order]
    fact = np.array([math.factorial(i) for i in range(n + 1)], dtype=object)
    denom = fact[K[:, 0]]
    for j in range(1, K.shape[1]):
        denom = denom * fact[K[:, j]]
    mult = math.factorial(n) // denom
    for j, g in enumerate(degs):
        if g > 1:
            powers = np.array([g**i for i in range(n + 1)], dtype=object)
            mult = mult * powers[K[:, j]]
    if starts is not None:
        mult = np.add.reduceat(mult, starts)
    return tuple(int(k) for k in mult)


_CACHE: "OrderedDict[tuple, TypeClassSpectrum]" = OrderedDict()
_CACHE_LOCK = threading.Lock()
_CACHE_SIZE = 64
_CACHE_MAX_CLASSES = 100_000


def product_spectrum(a: SchmidtVector, n: int, budget: Optional[int] = None) -> TypeClassSpectrum:
    """Type-class representation of ``a^{⊗n}``.

    Equal coefficients of ``a`` are grouped first, so the class count is
    governed by the number of *distinct* coefficients; e.g. any uniform
    spectrum yields a single class at every ``n``.  Raises
    :class:`BudgetExceeded` if the class count is over ``budget``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    budget = default_budget() if budget is None else budget
    key = (a.probs, n)
    with _CACHE_LOCK:
        hit = _CACHE.get(key)
        if hit is not None:
            _CACHE.move_to_end(key)
            return hit
    s = _build_product_spectrum(a, n, budget)
    if len(s) <= _CACHE_MAX_CLASSES:
        with _CACHE_LOCK:
            _CACHE[key] = s
            while len(_CACHE) > _CACHE_SIZE:
                _CACHE.popitem(last=False)
    return s


def _build_product_spectrum(a: SchmidtVector, n: int, budget: int) -> TypeClassSpectrum:
    vals, degs = _distinct_values(a)
    r = len(vals)
    needed = class_count(n, r)
    if needed > budget:
        raise BudgetExceeded(f"{needed} type classes needed for n={n}, budget is {budget}", needed, budget)

    if r == 1:
        g = degs[0]
        return TypeClassSpectrum([n * vals[0]], [n * math.log2(g)], n, a.rank, exact=lambda: (g**n,))

    K = compositions(n, r)
    logp = K @ vals
    lgam = np.array([math.lgamma(i + 1) for i in range(n + 1)])
    log2_mult = (math.lgamma(n + 1) - lgam[K].sum(axis=1)) / math.log(2)
    log2_mult = log2_mult + K @ np.log2(np.array(degs, dtype=float))

    order = np.argsort(-logp, kind="stable")
    logp = logp[order]
    log2_mult = log2_mult[order]
    # merge numerically equal probabilities into a single class
    starts = np.concatenate([[0], np.flatnonzero(np.diff(logp) < -MERGE_TOL) + 1])
    if starts.size < logp.size:
        log2_mult = np.logaddexp2.reduceat(log2_mult, starts)
        logp = logp[starts]
    else:
        starts = None
    return TypeClassSpectrum(logp, log2_mult, n, a.rank,
                             exact=lambda: _exact_multiplicities(K, degs, order, starts))


def smoothed_truncate(s: TypeClassSpectrum, eps: float) -> TypeClassSpectrum:
    """Keep the most probable classes until their mass reaches ``1 - eps``, then renormalise.

    The boundary class is kept whole, so the discarded mass is at most
    ``eps``.
    """
    if not 0.0 <= eps < 1.0:
        raise ValueError("eps must lie in [0, 1)")
    if eps == 0.0:
        return s
    cum = s.cumulative_mass
    hits = np.flatnonzero(cum >= 1.0 - eps)
    stop = int(hits[0]) + 1 if hits.size else len(s)
    if stop == len(s):
        return s
    kept = float(cum[stop - 1])
    return TypeClassSpectrum(
        s.log2_probs[:stop] - math.log2(kept),
        s.log2_mults[:stop],
        s.n,
        s.base_dim,
        exact=lambda: s.multiplicities[:stop],
        discarded=s.discarded + (1.0 - kept),
    )


def _curve_at(s: TypeClassSpectrum, x: np.ndarray) -> np.ndarray:
    """Cumulative-mass curve of ``s`` (linear inside each class) evaluated at positions ``x``."""
    xs = s.cumulative_count
    ys = s.cumulative_mass / s.cumulative_mass[-1]
    probs = s.probs / s.cumulative_mass[-1]
    idx = np.searchsorted(xs, x, side="left")
    out = np.ones_like(x, dtype=float)
    inside = idx < xs.size
    i = idx[inside]
    prev_x = np.where(i > 0, xs[np.maximum(i - 1, 0)], 0.0)
    prev_y = np.where(i > 0, ys[np.maximum(i - 1, 0)], 0.0)
    out[inside] = np.minimum(prev_y + (x[inside] - prev_x) * probs[i], ys[i])
    return out


def majorization_slack(p: TypeClassSpectrum, q: TypeClassSpectrum) -> float:
    """``min_x Q(x) - P(x)`` over the merged breakpoints of both cumulative curves."""
    xp, xq = p.cumulative_count, q.cumulative_count
    yp = p.cumulative_mass / p.cumulative_mass[-1]
    yq = q.cumulative_mass / q.cumulative_mass[-1]
    s1 = _curve_at(q, xp) - yp
    s2 = yq - _curve_at(p, xq)
    return float(min(s1.min(), s2.min()))


def spectra_majorizes(p: TypeClassSpectrum, q: TypeClassSpectrum, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``p ≺ q``; both curves are concave and piecewise linear, so
    checking at the union of their breakpoints is exact."""
    return majorization_slack(p, q) >= -tol


def dilution_feasible(e: SchmidtVector, m: int, a: SchmidtVector, n: int, eps: float = 0.0, budget: Optional[int] = None) -> bool:
    """Can ``m`` copies of ``e`` produce (ε-approximately) ``n`` copies of ``a``?"""
    target = smoothed_truncate(product_spectrum(a, n, budget), eps)
    return spectra_majorizes(product_spectrum(e, m, budget), target)


def distillation_feasible(a: SchmidtVector, n: int, e: SchmidtVector, m: int, eps: float = 0.0, budget: Optional[int] = None) -> bool:
    """Can ``n`` copies of ``a`` (ε-smoothed) produce ``m`` copies of ``e``?"""
    source = smoothed_truncate(product_spectrum(a, n, budget), eps)
    return spectra_majorizes(source, product_spectrum(e, m, budget))


class Direction(str, Enum):
    DILUTION = "dilution"
    DISTILLATION = "distillation"


@dataclass(frozen=True)
class RatePoint:
    n: int
    m: Optional[int]
    direction: Direction
    epsilon: float = 0.0
    discarded: float = 0.0
    budget_exceeded: bool = False

    @property
    def mode(self) -> str:
        return "exact" if self.epsilon == 0.0 else f"smoothed({self.epsilon:g})"

    @property
    def ratio(self) -> Optional[float]:
        return None if self.m is None else self.m / self.n


@dataclass(frozen=True)
class RateFrontier:
    points: List[RatePoint]
    reference_entropy_ratio: float

    def completed(self) -> List[RatePoint]:
        return [p for p in self.points if p.m is not None]

    def best(self) -> Optional[RatePoint]:
        """Tightest bound on the rate: least m/n for dilution, greatest for distillation.

        Ties go to the larger ``n``.
        """
        pts = self.completed()
        if not pts:
            return None
        sign = 1 if pts[0].direction == Direction.DILUTION else -1
        return min(pts, key=lambda p: (sign * p.m / p.n, -p.n))


def _upper_guess(a: SchmidtVector, n: int) -> int:
    return max(1, n * max(1, math.ceil(math.log2(a.rank))) * 4)


def threshold_m(a: SchmidtVector, e: SchmidtVector, n: int, eps: float, direction: Direction,
                budget: Optional[int] = None, max_m: int = 1 << 14) -> Optional[int]:
    """Minimal feasible ``m`` (dilution) or maximal feasible ``m`` (distillation) at ``n``.

    Relies on feasibility being monotone in ``m``.  Returns ``None`` when
    no dilution is feasible up to ``max_m``.
    """
    direction = Direction(direction)
    target = smoothed_truncate(product_spectrum(a, n, budget), eps)
    if direction == Direction.DILUTION:
        def ok(m):
            return spectra_majorizes(product_spectrum(e, m, budget), target)
        hi = _upper_guess(a, n)
        while not ok(hi):
            if hi >= max_m:
                return None
            hi = min(2 * hi, max_m)
        lo = -1  # infeasible sentinel
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if ok(mid):
                hi = mid
            else:
                lo = mid
        return hi

    def ok(m):
        return spectra_majorizes(target, product_spectrum(e, m, budget))
    if e.rank == 1:
        return None  # product yardstick: every m is feasible, no maximum
    lo = 0  # m = 0 is always feasible
    hi = _upper_guess(a, n)
    while ok(hi):
        lo = hi
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


def rate_point(a, e, n, eps=0.0, direction=Direction.DILUTION, budget=None) -> RatePoint:
    direction = Direction(direction)
    try:
        m = threshold_m(a, e, n, eps, direction, budget)
        discarded = smoothed_truncate(product_spectrum(a, n, budget), eps).discarded
    except BudgetExceeded:
        return RatePoint(n, None, direction, eps, budget_exceeded=True)
    return RatePoint(n, m, direction, eps, discarded)


def rate_frontier(a: SchmidtVector, e: SchmidtVector, n_max: int, eps: float = 0.0,
                  direction=Direction.DILUTION, budget: Optional[int] = None,
                  workers: int = 1) -> RateFrontier:
    """Threshold ``m`` for every ``n`` in ``1..n_max``.

    Points whose type-class enumeration exceeds the budget are kept with
    ``budget_exceeded=True`` and ``m=None``.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    ns = range(1, n_max + 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(lambda n: rate_point(a, e, n, eps, direction, budget), ns))
    else:
        points = [rate_point(a, e, n, eps, direction, budget) for n in ns]
    he = entropy(e)
    ref = entropy(a) / he if he > 0 else math.inf
    return RateFrontier(points, ref)


class RateEstimate(NamedTuple):
    m: int
    n: int
    ratio: float
    reference: float


def estimate_E(a: SchmidtVector, e: SchmidtVector, eps: float = 0.0, n: int = 32,
               budget: Optional[int] = None, workers: int = 1) -> RateEstimate:
    """Estimate ``inf m/n`` over dilution protocols with up to ``n`` copies of ``a``.

    Returns the best frontier point together with ``entropy(a)/entropy(e)``,
    the value the infimum converges to.
    """
    front = rate_frontier(a, e, n, eps, Direction.DILUTION, budget, workers)
    best = front.best()
    if best is None:
        raise BudgetExceeded(f"no dilution point completed for n <= {n}")
    return RateEstimate(best.m, best.n, best.m / best.n, front.reference_entropy_ratio)
