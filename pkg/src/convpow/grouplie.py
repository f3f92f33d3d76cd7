"""One-parameter matrix groups t^E = exp(log t * E)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from scipy.linalg import expm

from .errors import InputError

__all__ = [
    "GroupGenerator",
    "group_power",
    "is_contracting",
    "adjoint",
    "scale_generator",
    "norm_growth_ratio",
]

EIG_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class GroupGenerator:
    """Real d x d generator E of the group {t^E}."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise InputError(f"generator must be a nonempty square matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InputError("generator has non-finite entries")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def diagonal(cls, entries: Sequence[float]) -> "GroupGenerator":
        return cls(np.diag(np.asarray(entries, dtype=float)))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace_order(self) -> float:
        return float(np.trace(self.matrix))

    @property
    def is_diagonal(self) -> bool:
        m = self.matrix
        return bool(np.all(m == np.diag(np.diag(m))))

    @property
    def diag(self) -> np.ndarray:
        return np.diag(self.matrix).copy()

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupGenerator) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash(self.matrix.tobytes())

    def __repr__(self) -> str:
        return f"GroupGenerator({self.matrix.tolist()})"

    def to_json_obj(self) -> dict:
        return {"dim": self.dim, "rows": [[float(v) for v in row] for row in self.matrix]}

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "GroupGenerator":
        try:
            rows = obj["rows"]
            dim = int(obj.get("dim", len(rows)))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed matrix: {exc}") from exc
        g = cls(np.array(rows, dtype=float))
        if g.dim != dim:
            raise InputError(f"matrix declares dim={dim} but has {g.dim} rows")
        return g


def group_power(E: GroupGenerator, t: float) -> np.ndarray:
    """t^E via scaling-and-squaring Pade (scipy's expm)."""
    t = float(t)
    if not t > 0:
        raise InputError(f"group_power needs t > 0 (got {t})")
    if E.is_diagonal:
        return np.diag(np.exp(np.log(t) * E.diag))
    return expm(np.log(t) * E.matrix)


def is_contracting(E: GroupGenerator) -> bool:
    """All eigenvalues of E have positive real part (tolerance 1e-10)."""
    return bool(np.all(np.linalg.eigvals(E.matrix).real > EIG_TOL))


def adjoint(E: GroupGenerator) -> GroupGenerator:
    return GroupGenerator(E.matrix.T)


def scale_generator(E: GroupGenerator, c: float) -> GroupGenerator:
    """The generator c*E, e.g. c = 1/k or c = 1/mu."""
    return GroupGenerator(float(c) * E.matrix)


def norm_growth_ratio(E: GroupGenerator, r: float) -> float:
    """||r^E|| / r in the spectral norm; o(1) as r -> infinity when tr E < 1 and E contracting."""
    return float(np.linalg.norm(group_power(E, r), 2) / r)
