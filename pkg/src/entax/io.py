"""JSON state files.

Bipartite states are written as ``{"label": ..., "probs": [...]}``; files may
instead give an amplitude matrix ``{"amps": [[{"re": .., "im": ..}, ...], ...]}``.
Multipartite states use the sparse ``{"dims": [...], "amps": [{"index": [...],
"re": .., "im": ..}, ...]}`` layout.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Union

import numpy as np

from .multipartite import MultipartiteState
from .schmidt import SchmidtVector, schmidt_from_amplitudes

PathLike = Union[str, Path]


class StateFormatError(ValueError):
    """A state file could not be interpreted."""


def _complex(entry) -> complex:
    if isinstance(entry, dict):
        return complex(float(entry.get("re", 0.0)), float(entry.get("im", 0.0)))
    if isinstance(entry, (int, float)):
        return complex(entry)
    raise StateFormatError(f"cannot read amplitude {entry!r}")


def state_from_dict(d: dict) -> SchmidtVector:
    if not isinstance(d, dict):
        raise StateFormatError("state must be a JSON object")
    label = d.get("label")
    if "probs" in d:
        return SchmidtVector(tuple(float(x) for x in d["probs"]), label=label)
    if "amps" in d:
        rows = d["amps"]
        if not rows or not all(isinstance(r, list) for r in rows):
            raise StateFormatError("'amps' must be a non-empty list of rows")
        m = np.array([[_complex(x) for x in row] for row in rows])
        s = schmidt_from_amplitudes(m)
        return SchmidtVector(s.probs, label=label)
    raise StateFormatError("state needs a 'probs' or 'amps' field")


def state_to_dict(s: SchmidtVector) -> dict:
    return {"label": s.label or "", "probs": list(s.probs)}


def load_state(path: PathLike) -> SchmidtVector:
    with open(path) as fh:
        try:
            d = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StateFormatError(f"{path}: {exc}") from exc
    return state_from_dict(d)


def dump_state(s: SchmidtVector, path: PathLike) -> None:
    Path(path).write_text(json.dumps(state_to_dict(s), indent=2) + "\n")


def load_multipartite(path: PathLike) -> MultipartiteState:
    with open(path) as fh:
        try:
            d = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StateFormatError(f"{path}: {exc}") from exc
    if "dims" not in d or "amps" not in d:
        raise StateFormatError("multipartite state needs 'dims' and 'amps'")
    return MultipartiteState.from_dict(d)


def dump_multipartite(s: MultipartiteState, path: PathLike) -> None:
    Path(path).write_text(json.dumps(s.to_dict(), indent=2) + "\n")


def file_digest(path: PathLike) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
