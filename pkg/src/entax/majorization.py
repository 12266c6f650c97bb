"""Single-copy convertibility via majorization.

``a -> b`` by LOCC on one copy iff the spectrum of ``a`` is majorized by the
spectrum of ``b``: every prefix sum of ``a`` is at most the matching prefix
sum of ``b``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from ._scan import compensated_cumsum
from .errors import NotFound
from .schmidt import SchmidtVector, uniform

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class ConvertibilityVerdict:
    convertible: bool
    failing_prefix: Optional[int]
    margin: float

    def to_dict(self) -> dict:
        return {
            "convertible": self.convertible,
            "failing_prefix": self.failing_prefix,
            "margin": self.margin,
        }


def _padded_prefixes(p: SchmidtVector, q: SchmidtVector):
    size = max(len(p), len(q))
    pp = np.zeros(size)
    qq = np.zeros(size)
    pp[: len(p)] = p.probs
    qq[: len(q)] = q.probs
    return compensated_cumsum(pp), compensated_cumsum(qq)


def majorization_verdict(p: SchmidtVector, q: SchmidtVector, tol: float = DEFAULT_TOL) -> ConvertibilityVerdict:
    """Full verdict for ``p ≺ q``.

    ``margin`` is the smallest slack ``Q_k - P_k`` over ``k < L`` (the last
    index is excluded since both sums are 1 there by construction);
    ``failing_prefix`` is the first 1-based ``k`` with ``P_k > Q_k + tol``.
    """
    P, Q = _padded_prefixes(p, q)
    slack = (Q - P)[:-1]
    margin = float(slack.min()) if slack.size else 0.0
    bad = np.flatnonzero(slack < -tol)
    if bad.size:
        return ConvertibilityVerdict(False, int(bad[0]) + 1, margin)
    return ConvertibilityVerdict(True, None, margin)


def majorizes(p: SchmidtVector, q: SchmidtVector, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``p ≺ q`` (``q`` majorizes ``p``), i.e. ``p -> q`` is possible."""
    return majorization_verdict(p, q, tol).convertible


def convertible_single_copy(a: SchmidtVector, b: SchmidtVector, tol: float = DEFAULT_TOL) -> ConvertibilityVerdict:
    return majorization_verdict(a, b, tol)


# -- samplers -------------------------------------------------------------

def random_spectrum(rng: np.random.Generator, d: int) -> SchmidtVector:
    """Uniform sample from the probability simplex of dimension ``d``, sorted."""
    x = rng.exponential(size=d)
    return SchmidtVector(x / x.sum())


def t_transform(q: SchmidtVector, rng: np.random.Generator, steps: int = 1) -> SchmidtVector:
    """Apply ``steps`` random Robin Hood transfers to ``q``.

    Each step moves a fraction of the gap between a richer and a poorer
    entry from the former to the latter, so the result is majorized by
    ``q``.  No entry ever reaches zero, so the rank is preserved.
    """
    p = q.array.copy()
    if p.size < 2:
        return q
    for _ in range(steps):
        i, j = sorted(rng.choice(p.size, size=2, replace=False))
        lo, hi = (i, j) if p[i] >= p[j] else (j, i)
        t = rng.uniform(0.0, 0.5) * (p[lo] - p[hi])
        p[lo] -= t
        p[hi] += t
    return SchmidtVector(p)


def majorized_pair(rng: np.random.Generator, d: int, steps: int = 3):
    """Return ``(p, q)`` with ``p ≺ q`` guaranteed by construction."""
    q = random_spectrum(rng, d)
    return t_transform(q, rng, steps), q


class IncomparablePair(NamedTuple):
    a: SchmidtVector
    b: SchmidtVector
    ancestor: SchmidtVector


def sample_incomparable_pair(dim: int, rng_seed: int, max_attempts: int = 1000) -> IncomparablePair:
    """Draw spectra of dimension ``dim`` until neither majorizes the other.

    Both members are reachable from the uniform spectrum ``ancestor``, so the
    pair is a single-copy counterexample to comparability of states with a
    common source.
    """
    if dim < 3:
        raise ValueError("spectra of dimension < 3 are totally ordered by majorization")
    rng = np.random.default_rng(rng_seed)
    for _ in range(max_attempts):
        a = random_spectrum(rng, dim)
        b = random_spectrum(rng, dim)
        if not majorizes(a, b) and not majorizes(b, a):
            return IncomparablePair(a, b, uniform(dim))
    raise NotFound(f"no incomparable pair in {max_attempts} attempts", evaluations=max_attempts)
