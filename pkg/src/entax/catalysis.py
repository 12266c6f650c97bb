"""Catalyst-assisted conversion and catalyst search.

A catalyst ``c`` enables ``a ⊗ c -> b ⊗ c`` when ``a -> b`` alone fails.  The
catalyst is returned intact, so the same spectrum appears on both sides.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional

import numpy as np

from .errors import NotFound
from .majorization import DEFAULT_TOL, ConvertibilityVerdict, majorization_verdict
from .schmidt import PRODUCT, SchmidtVector, tensor


class Provenance(str, Enum):
    USER = "user-supplied"
    GRID = "grid-search"
    REFINED = "refined"


@dataclass(frozen=True)
class Catalyst:
    spectrum: SchmidtVector
    provenance: Provenance = Provenance.USER
    margin: Optional[float] = field(default=None, compare=False)
    evaluations: int = field(default=0, compare=False)

    def __post_init__(self):
        if not isinstance(self.spectrum, SchmidtVector):
            object.__setattr__(self, "spectrum", SchmidtVector(self.spectrum))


def _spectrum(c) -> SchmidtVector:
    if isinstance(c, Catalyst):
        return c.spectrum
    if isinstance(c, SchmidtVector):
        return c
    return SchmidtVector(c)


def convertible_with_catalyst(a: SchmidtVector, b: SchmidtVector, c, tol: float = DEFAULT_TOL) -> ConvertibilityVerdict:
    """Verdict on ``a ⊗ c ≺ b ⊗ c``; ``c`` may be a Catalyst, SchmidtVector or sequence."""
    cs = _spectrum(c)
    return majorization_verdict(tensor(a, cs), tensor(b, cs), tol)


def ordered_partitions(total: int, parts: int) -> Iterator[tuple]:
    """Non-increasing tuples of ``parts`` positive integers summing to ``total``.

    Yielded in lexicographically decreasing order.
    """
    def rec(remaining, k, cap):
        if k == 1:
            if 1 <= remaining <= cap:
                yield (remaining,)
            return
        # largest part must leave room for k-1 parts of size >= 1 and be >= remaining/k
        hi = min(cap, remaining - (k - 1))
        lo = -(-remaining // k)
        for first in range(hi, lo - 1, -1):
            for rest in rec(remaining - first, k - 1, first):
                yield (first,) + rest

    yield from rec(total, parts, total)


def _lex_smaller(x: tuple, y: tuple) -> bool:
    return x < y


def _refine(a, b, start: np.ndarray, start_margin: float, step0: float, refine_iters: int, final_step: float = 1e-4):
    """Coordinate ascent on the verdict margin by pairwise mass transfers."""
    best = start.copy()
    best_margin = start_margin
    evals = 0
    step = step0
    k = best.size
    sweeps = 0
    while step >= final_step and sweeps < refine_iters:
        improved = False
        for i, j in itertools.permutations(range(k), 2):
            if best[i] - step <= 1e-9:
                continue
            cand = best.copy()
            cand[i] -= step
            cand[j] += step
            cand = np.sort(cand)[::-1]
            m = majorization_verdict(tensor(a, SchmidtVector(cand)), tensor(b, SchmidtVector(cand))).margin
            evals += 1
            if m > best_margin + 1e-15:
                best, best_margin, improved = cand, m, True
        sweeps += 1
        if not improved:
            step /= 2.0
    return best, best_margin, evals


def search_catalyst(
    a: SchmidtVector,
    b: SchmidtVector,
    max_dim: int = 4,
    grid_points: int = 51,
    refine_iters: int = 200,
    tol: float = DEFAULT_TOL,
) -> Catalyst:
    """Look for a catalyst of dimension 2..max_dim enabling ``a -> b``.

    The ordered simplex of each dimension is scanned on a grid with spacing
    ``1/(grid_points-1)``; the best cell (largest margin, ties broken towards
    the lexicographically smallest spectrum) is then refined by coordinate
    ascent.  Deterministic for fixed arguments.

    Returns the trivial catalyst ``(1.0)`` when ``a -> b`` already holds.
    Raises :class:`NotFound` if no tested spectrum works; that is only a
    proof of impossibility when ``entropy(a) < entropy(b)``.
    """
    if majorization_verdict(a, b, tol).convertible:
        return Catalyst(PRODUCT, Provenance.GRID, margin=majorization_verdict(a, b, tol).margin, evaluations=1)
    if grid_points < 3:
        raise ValueError("grid_points must be at least 3")
    resolution = grid_points - 1
    evaluations = 0
    best = None
    best_margin = -np.inf
    for k in range(2, max_dim + 1):
        for parts in ordered_partitions(resolution, k):
            spec = tuple(x / resolution for x in parts)
            c = SchmidtVector(spec)
            m = majorization_verdict(tensor(a, c), tensor(b, c), tol).margin
            evaluations += 1
            if m > best_margin or (m == best_margin and best is not None and _lex_smaller(c.probs, best)):
                best, best_margin = c.probs, m
    if best is None:
        raise NotFound("empty search grid", evaluations=evaluations)

    provenance = Provenance.GRID
    if refine_iters > 0:
        refined, refined_margin, extra = _refine(
            a, b, np.array(best), best_margin, 1.0 / resolution, refine_iters
        )
        evaluations += extra
        if refined_margin > best_margin:
            best, best_margin, provenance = tuple(refined), refined_margin, Provenance.REFINED

    if best_margin < -tol:
        raise NotFound(
            f"no catalyst up to dimension {max_dim} at grid resolution {resolution}",
            evaluations=evaluations,
            best_margin=float(best_margin),
        )
    return Catalyst(SchmidtVector(best), provenance, margin=float(best_margin), evaluations=evaluations)
