"""Cut-spectrum obstructions for multi-party pure-state conversion.

Any LOCC protocol among k parties is in particular LOCC across every
bipartition of the parties, so ``s1 -> s2`` requires the spectrum of ``s1``
across each cut to be majorized by that of ``s2``.  A failing cut
certifies impossibility; passing every cut proves nothing.

Cuts are bitmasks over 0-based party indices (bit i set = party i on the
masked side).  Reports print them 1-based, e.g. mask ``0b001`` is ``{1}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence

import numpy as np

from .errors import BudgetExceeded, DegenerateStateError, NormalizationError
from .majorization import DEFAULT_TOL, majorizes
from .schmidt import SchmidtVector, entropy, schmidt_from_amplitudes

DIM_CAP = 2**12


@dataclass(frozen=True, eq=False)
class MultipartiteState:
    amplitudes: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.ndim < 2:
            raise ValueError("need at least two parties")
        if amps.size > DIM_CAP:
            raise BudgetExceeded(f"total dimension {amps.size} exceeds cap {DIM_CAP}", amps.size, DIM_CAP)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise DegenerateStateError("all amplitudes are zero")
        if abs(norm - 1.0) > 1e-6:
            raise NormalizationError(f"state has norm {norm!r}, not 1")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)
        labels = tuple(self.labels) or tuple(str(i + 1) for i in range(amps.ndim))
        if len(labels) != amps.ndim:
            raise ValueError("one label per party required")
        object.__setattr__(self, "labels", labels)

    @property
    def dims(self) -> tuple:
        return self.amplitudes.shape

    @property
    def parties(self) -> int:
        return self.amplitudes.ndim

    @classmethod
    def product(cls, *factors, labels=()):
        """Tensor product of smaller states (arrays or MultipartiteStates), in order."""
        out = np.array(1.0 + 0j)
        for f in factors:
            f = f.amplitudes if isinstance(f, MultipartiteState) else np.asarray(f, dtype=complex)
            out = np.multiply.outer(out, f)
        return cls(out, labels)

    def to_dict(self) -> dict:
        amps = []
        for idx in zip(*np.nonzero(self.amplitudes)):
            v = self.amplitudes[idx]
            amps.append({"index": [int(i) for i in idx], "re": float(v.real), "im": float(v.imag)})
        return {"dims": list(self.dims), "amps": amps}

    @classmethod
    def from_dict(cls, d: dict) -> "MultipartiteState":
        amps = np.zeros(tuple(d["dims"]), dtype=complex)
        for entry in d["amps"]:
            amps[tuple(entry["index"])] += complex(entry.get("re", 0.0), entry.get("im", 0.0))
        return cls(amps, tuple(d.get("labels", ())))


def mask_parties(mask: int) -> List[int]:
    """1-based party numbers in ``mask``."""
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def cut_label(mask: int) -> str:
    return "{" + ",".join(str(p) for p in mask_parties(mask)) + "}"


def cut_masks(parties: int) -> List[int]:
    """One mask per bipartition up to complement, ascending.

    The representative is the side with fewer parties; on a tie, the
    smaller mask value.
    """
    full = (1 << parties) - 1
    out = []
    for mask in range(1, full):
        comp = full ^ mask
        a, b = bin(mask).count("1"), bin(comp).count("1")
        if a < b or (a == b and mask < comp):
            out.append(mask)
    return out


def cut_schmidt(s: MultipartiteState, mask: int) -> SchmidtVector:
    """Spectrum of the reduced state on the parties in ``mask``."""
    full = (1 << s.parties) - 1
    if mask <= 0 or mask >= full or mask & ~full:
        raise ValueError(f"mask {mask:#b} is not a nontrivial bipartition of {s.parties} parties")
    inside = [i for i in range(s.parties) if mask >> i & 1]
    outside = [i for i in range(s.parties) if not mask >> i & 1]
    dim_in = int(np.prod([s.dims[i] for i in inside]))
    mat = np.transpose(s.amplitudes, inside + outside).reshape(dim_in, -1)
    return schmidt_from_amplitudes(mat)


class CutEntry(NamedTuple):
    mask: int
    spectrum: SchmidtVector
    entropy: float


def cut_profile(s: MultipartiteState) -> List[CutEntry]:
    entries = []
    for mask in cut_masks(s.parties):
        spec = cut_schmidt(s, mask)
        entries.append(CutEntry(mask, spec, entropy(spec)))
    return entries


def cut_obstruction(s1: MultipartiteState, s2: MultipartiteState, tol: float = DEFAULT_TOL) -> Optional[int]:
    """First cut (by mask value) across which ``s1 -> s2`` is impossible, or None.

    None means "not disproved", never "convertible".
    """
    if s1.dims != s2.dims:
        raise ValueError(f"party structures differ: {s1.dims} vs {s2.dims}")
    for mask in cut_masks(s1.parties):
        if not majorizes(cut_schmidt(s1, mask), cut_schmidt(s2, mask), tol):
            return mask
    return None


def ghz(parties: int = 3) -> MultipartiteState:
    amps = np.zeros((2,) * parties, dtype=complex)
    amps[(0,) * parties] = amps[(1,) * parties] = 2**-0.5
    return MultipartiteState(amps)


def bell_pair() -> np.ndarray:
    return np.array([[1, 0], [0, 1]], dtype=complex) / np.sqrt(2)


def _qubit(psi: Optional[Sequence[complex]]) -> np.ndarray:
    v = np.array([1, 0] if psi is None else psi, dtype=complex)
    n = np.linalg.norm(v)
    if v.shape != (2,) or n == 0:
        raise ValueError("single-qubit state must be a nonzero 2-vector")
    return v / n


def counterexample_states(psi1=None, psi3=None):
    """The GHZ source and the two incomparable targets.

    ``b = |psi1> ⊗ Bell(2,3)`` and ``c = Bell(1,2) ⊗ |psi3>``; both qubits
    default to ``|0>``.
    """
    a = ghz(3)
    b = MultipartiteState.product(_qubit(psi1), bell_pair())
    c = MultipartiteState.product(bell_pair(), _qubit(psi3))
    return a, b, c


def _obstruction_entry(mask):
    return {"obstructed": mask is not None,
            "mask": mask,
            "cut": mask_parties(mask) if mask is not None else None,
            "status": "impossible" if mask is not None else "not disproved"}


def ghz_counterexample(psi1=None, psi3=None, tol: float = DEFAULT_TOL) -> dict:
    """Machine-readable report on the GHZ / b / c example.

    Both targets pass every cut test from GHZ, while b and c each fail a
    cut test towards the other: states derivable from a common source that
    are not comparable.
    """
    a, b, c = counterexample_states(psi1, psi3)
    ab = cut_obstruction(a, b, tol)
    ac = cut_obstruction(a, c, tol)
    bc = cut_obstruction(b, c, tol)
    cb = cut_obstruction(c, b, tol)

    def profile(s):
        return [{"mask": e.mask, "cut": mask_parties(e.mask), "probs": list(e.spectrum.probs),
                 "entropy": e.entropy} for e in cut_profile(s)]

    return {
        "states": {"a": a.to_dict(), "b": b.to_dict(), "c": c.to_dict()},
        "cut_profiles": {"a": profile(a), "b": profile(b), "c": profile(c)},
        "ghz_cut_entropies": {cut_label(e.mask): e.entropy for e in cut_profile(a)},
        "a_to_b": _obstruction_entry(ab),
        "a_to_c": _obstruction_entry(ac),
        "b_to_c": _obstruction_entry(bc),
        "c_to_b": _obstruction_entry(cb),
        "b_to_c_obstructed": bc is not None,
        "c_to_b_obstructed": cb is not None,
        "incomparable": bc is not None and cb is not None and ab is None and ac is None,
    }
