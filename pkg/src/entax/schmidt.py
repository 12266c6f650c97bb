"""Schmidt spectra of bipartite pure states.

A bipartite pure state is, as far as LOCC is concerned, completely described
by its sorted vector of squared Schmidt coefficients.  Everything else in
entax operates on :class:`SchmidtVector` values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .errors import DegenerateStateError, NormalizationError

PRUNE_THRESHOLD = 1e-12
SUM_TOL = 1e-9
AMPLITUDE_NORM_TOL = 1e-6


@dataclass(frozen=True)
class SchmidtVector:
    """Sorted, strictly positive probability spectrum.

    Entries below ``PRUNE_THRESHOLD`` are dropped and the remainder is
    renormalised.  Input order does not matter.
    """

    probs: tuple
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float).ravel()
        if p.size == 0:
            raise DegenerateStateError("empty spectrum")
        if not np.all(np.isfinite(p)):
            raise ValueError("spectrum contains non-finite entries")
        if np.any(p < -PRUNE_THRESHOLD):
            raise ValueError(f"negative probability in spectrum: {p.min()!r}")
        p = p[p > PRUNE_THRESHOLD]
        if p.size == 0:
            raise DegenerateStateError("all probabilities are zero")
        total = math.fsum(p)
        if abs(total - 1.0) > SUM_TOL:
            raise NormalizationError(f"probabilities sum to {total!r}, not 1")
        p = np.sort(p / total)[::-1]
        object.__setattr__(self, "probs", tuple(float(x) for x in p))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.probs)

    @property
    def rank(self) -> int:
        return len(self.probs)

    def __len__(self):
        return len(self.probs)

    def __iter__(self):
        return iter(self.probs)

    def allclose(self, other: "SchmidtVector", atol: float = 1e-12) -> bool:
        """Multiset equality of two spectra up to ``atol`` per entry."""
        if len(self) != len(other):
            return False
        return bool(np.allclose(self.array, other.array, rtol=0.0, atol=atol))

    def to_dict(self) -> dict:
        d = {"probs": list(self.probs)}
        if self.label is not None:
            d = {"label": self.label, **d}
        return d


def uniform(d: int, label: Optional[str] = None) -> SchmidtVector:
    """Maximally entangled spectrum of Schmidt rank ``d``."""
    if d < 1:
        raise ValueError("dimension must be positive")
    return SchmidtVector((1.0 / d,) * d, label=label)


EPR = uniform(2, label="epr")
PRODUCT = SchmidtVector((1.0,), label="product")


def schmidt_from_amplitudes(amps) -> SchmidtVector:
    """Schmidt spectrum of the bipartite pure state with amplitude matrix ``amps``.

    ``amps[i, j]`` is the coefficient of ``|i>_A |j>_B``.  The matrix must
    have unit Frobenius norm within 1e-6.

    >>> schmidt_from_amplitudes([[0.5 ** 0.5, 0], [0, 0.5 ** 0.5]]).probs
    (0.5, 0.5)
    """
    m = np.atleast_2d(np.asarray(amps, dtype=complex))
    if m.ndim != 2:
        raise ValueError("amplitudes must form a matrix")
    norm = np.linalg.norm(m)
    if norm == 0.0:
        raise DegenerateStateError("amplitude matrix is identically zero")
    if abs(norm - 1.0) > AMPLITUDE_NORM_TOL:
        raise NormalizationError(f"amplitude matrix has norm {norm!r}, not 1")
    s = np.linalg.svd(m, compute_uv=False)
    p = s**2
    p = p[p > PRUNE_THRESHOLD]
    return SchmidtVector(p / p.sum())


def tensor(a: SchmidtVector, b: SchmidtVector) -> SchmidtVector:
    """Spectrum of ``a ⊗ b``: all pairwise products, sorted."""
    return SchmidtVector(np.outer(a.array, b.array).ravel())


def tensor_all(states: Iterable[SchmidtVector]) -> SchmidtVector:
    out = PRODUCT
    for s in states:
        out = tensor(out, s)
    return out


def tensor_power(a: SchmidtVector, n: int) -> SchmidtVector:
    """Explicit ``a^{⊗n}`` (``d**n`` entries); only for small cases."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return tensor_all([a] * n)


def entropy(a: SchmidtVector) -> float:
    """Entropy of entanglement in bits."""
    p = a.array
    return float(max(0.0, -np.sum(p * np.log2(p))))


def min_entropy(a: SchmidtVector) -> float:
    return float(max(0.0, -math.log2(a.probs[0])))


def rank_entropy(a: SchmidtVector) -> float:
    return math.log2(a.rank)
