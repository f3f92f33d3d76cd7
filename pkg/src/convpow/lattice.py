"""Finitely supported complex functions on Z^d and their convolution powers.

A :class:`LatticeFunction` stores its values densely on the bounding box of
its support.  Zeros inside the box are treated as absent entries, so the
mapping view (:attr:`LatticeFunction.entries`) only ever shows nonzero values.

Three routes to ``f^(n)`` are available:

``direct``
    binary exponentiation with exact (non-FFT) convolutions; the oracle.
``fft``
    sample the symbol on a grid longer than the support of ``f^(n)`` along
    every axis, raise to the n-th power, invert.  Exact up to roundoff.
``fft_local``
    same, on a smaller torus.  The result is the periodization of ``f^(n)``;
    the grid is doubled until the periodized values in an outer guard band
    fall below the prune threshold, so the wrapped-around mass is invisible
    after pruning.  Falls back to ``fft`` once the torus reaches full size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy import fft as sfft
from scipy import signal

from .errors import InputError, ResourceError

__all__ = [
    "LatticeFunction",
    "LatticeWindow",
    "PowerConfig",
    "convolve",
    "power",
    "sup_norm",
    "l1_norm",
    "extract_window",
    "window_values",
    "tensor",
    "delta",
    "max_abs_difference",
]


def _as_int_tuple(x: Iterable[int]) -> tuple[int, ...]:
    return tuple(int(v) for v in x)


class LatticeFunction:
    """Immutable finitely supported map Z^d -> C."""

    __slots__ = ("_origin", "_values")

    def __init__(self, origin: Sequence[int], values: np.ndarray, *, prune: float = 0.0):
        arr = np.asarray(values, dtype=np.complex128)
        origin = _as_int_tuple(origin)
        if arr.ndim != len(origin):
            raise InputError(f"origin has length {len(origin)} but values are {arr.ndim}-dimensional")
        if arr.ndim == 0:
            raise InputError("dimension must be at least 1")
        mask = np.abs(arr) > prune
        if not mask.any():
            arr = np.zeros((0,) * arr.ndim, dtype=np.complex128)
            origin = (0,) * arr.ndim
        else:
            lo, hi = [], []
            for ax in range(arr.ndim):
                other = tuple(a for a in range(arr.ndim) if a != ax)
                hit = np.nonzero(mask.any(axis=other) if other else mask)[0]
                lo.append(int(hit[0]))
                hi.append(int(hit[-1]) + 1)
            sl = tuple(slice(a, b) for a, b in zip(lo, hi))
            arr = np.where(mask[sl], arr[sl], 0.0).astype(np.complex128)
            origin = tuple(o + a for o, a in zip(origin, lo))
        arr.setflags(write=False)
        self._origin = origin
        self._values = arr

    # construction -------------------------------------------------------
    @classmethod
    def from_entries(cls, dim: int, entries: Mapping[Sequence[int], complex] | Iterable[tuple[Sequence[int], complex]]) -> "LatticeFunction":
        items = list(entries.items()) if isinstance(entries, Mapping) else list(entries)
        if dim < 1:
            raise InputError("dimension must be positive")
        if not items:
            return cls((0,) * dim, np.zeros((0,) * dim))
        pts = []
        for x, _ in items:
            x = (int(x),) if np.isscalar(x) else _as_int_tuple(x)
            if len(x) != dim:
                raise InputError(f"coordinate {x} does not have length {dim}")
            pts.append(x)
        pts_arr = np.array(pts, dtype=np.int64)
        lo = pts_arr.min(axis=0)
        shape = tuple(pts_arr.max(axis=0) - lo + 1)
        arr = np.zeros(shape, dtype=np.complex128)
        for p, (_, v) in zip(pts_arr, items):
            arr[tuple(p - lo)] += complex(v)
        return cls(tuple(lo), arr)

    # basic views ----------------------------------------------------------
    @property
    def dim(self) -> int:
        return self._values.ndim

    @property
    def origin(self) -> tuple[int, ...]:
        return self._origin

    @property
    def values(self) -> np.ndarray:
        """Dense values on the support box (read-only)."""
        return self._values

    @property
    def is_empty(self) -> bool:
        return self._values.size == 0

    @property
    def support_box(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Componentwise (min, max) of the support; ``None``-free, empty gives origin twice."""
        if self.is_empty:
            return self._origin, self._origin
        hi = tuple(o + s - 1 for o, s in zip(self._origin, self._values.shape))
        return self._origin, hi

    @property
    def extent(self) -> tuple[int, ...]:
        lo, hi = self.support_box
        return tuple(b - a for a, b in zip(lo, hi))

    @property
    def entries(self) -> dict[tuple[int, ...], complex]:
        idx = np.argwhere(self._values != 0)
        org = np.array(self._origin)
        return {tuple(int(v) for v in i + org): complex(self._values[tuple(i)]) for i in idx}

    def coords_and_values(self) -> tuple[np.ndarray, np.ndarray]:
        """Nonzero coordinates ``(k, d)`` and values ``(k,)`` in lexicographic order."""
        idx = np.argwhere(self._values != 0)
        return idx + np.array(self._origin, dtype=np.int64), self._values[tuple(idx.T)]

    def __len__(self) -> int:
        return int(np.count_nonzero(self._values))

    def __call__(self, x: Sequence[int]) -> complex:
        x = _as_int_tuple(np.atleast_1d(x))
        if len(x) != self.dim:
            raise InputError("point has wrong dimension")
        if self.is_empty:
            return 0j
        i = tuple(a - o for a, o in zip(x, self._origin))
        if any(v < 0 or v >= s for v, s in zip(i, self._values.shape)):
            return 0j
        return complex(self._values[i])

    def __repr__(self) -> str:
        return f"LatticeFunction(dim={self.dim}, support_box={self.support_box}, nnz={len(self)})"

    def allclose(self, other: "LatticeFunction", atol: float = 1e-12) -> bool:
        return max_abs_difference(self, other) <= atol

    def scaled(self, c: complex) -> "LatticeFunction":
        return LatticeFunction(self._origin, self._values * c)

    # serialization ----------------------------------------------------------
    def to_json_obj(self) -> dict:
        coords, vals = self.coords_and_values()
        return {
            "dim": self.dim,
            "entries": [
                {"x": [int(v) for v in c], "re": float(z.real), "im": float(z.imag)}
                for c, z in zip(coords, vals)
            ],
        }

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "LatticeFunction":
        try:
            dim = int(obj["dim"])
            entries = [(tuple(e["x"]), complex(float(e.get("re", 0.0)), float(e.get("im", 0.0)))) for e in obj["entries"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed lattice function: {exc}") from exc
        return cls.from_entries(dim, entries)


def delta(point: Sequence[int], value: complex = 1.0) -> LatticeFunction:
    point = _as_int_tuple(point)
    return LatticeFunction(point, np.full((1,) * len(point), value, dtype=np.complex128))


def max_abs_difference(f: LatticeFunction, g: LatticeFunction) -> float:
    """Sup over Z^d of |f - g|."""
    if f.dim != g.dim:
        raise InputError("dimension mismatch")
    if f.is_empty and g.is_empty:
        return 0.0
    if f.is_empty or g.is_empty:
        return sup_norm(g if f.is_empty else f)
    lo = np.minimum(f.origin, g.origin)
    hi = np.maximum(np.add(f.support_box[1], 0), g.support_box[1])
    shape = tuple(hi - lo + 1)
    a = np.zeros(shape, dtype=np.complex128)
    for h, sgn in ((f, 1.0), (g, -1.0)):
        sl = tuple(slice(o - l, o - l + s) for o, l, s in zip(h.origin, lo, h.values.shape))
        a[sl] += sgn * h.values
    return float(np.abs(a).max())


@dataclass(frozen=True)
class LatticeWindow:
    """Integer points ``round(center) + offsets``."""

    center: np.ndarray
    offsets: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.center, dtype=float))
        off = np.asarray(self.offsets, dtype=np.int64)
        if off.ndim == 1:
            off = off.reshape(-1, c.size) if c.size > 1 else off.reshape(-1, 1)
        if off.shape[1] != c.size:
            raise InputError("window offsets and center have different dimensions")
        if len(np.unique(off, axis=0)) != len(off):
            raise InputError("window offsets must be distinct")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "offsets", off)

    @property
    def dim(self) -> int:
        return self.center.size

    @property
    def base(self) -> np.ndarray:
        return np.rint(self.center).astype(np.int64)

    def points(self) -> np.ndarray:
        return self.base + self.offsets


def window_values(f: LatticeFunction, w: LatticeWindow) -> np.ndarray:
    """Values of ``f`` at the window points, in offset order."""
    if len(w.offsets) == 0:
        raise InputError("window has no offsets")
    if w.dim != f.dim:
        raise InputError("window and function dimensions differ")
    out = np.zeros(len(w.offsets), dtype=np.complex128)
    if f.is_empty:
        return out
    idx = w.points() - np.array(f.origin)
    ok = np.all((idx >= 0) & (idx < np.array(f.values.shape)), axis=1)
    out[ok] = f.values[tuple(idx[ok].T)]
    return out


def extract_window(f: LatticeFunction, w: LatticeWindow) -> dict[tuple[int, ...], complex]:
    vals = window_values(f, w)
    return {tuple(int(v) for v in o): complex(z) for o, z in zip(w.offsets, vals)}


def sup_norm(f: LatticeFunction) -> float:
    return 0.0 if f.is_empty else float(np.abs(f.values).max())


def l1_norm(f: LatticeFunction) -> float:
    return 0.0 if f.is_empty else float(np.abs(f.values).sum())


def convolve(f: LatticeFunction, g: LatticeFunction, method: str = "direct") -> LatticeFunction:
    """Full convolution ``(f*g)(x) = sum_y f(x-y) g(y)``.

    ``method="direct"`` sums products exactly; ``"fft"`` uses scipy's
    FFT convolution and is only accurate to roundoff relative to the sup.
    """
    if f.dim != g.dim:
        raise InputError(f"dimension mismatch: {f.dim} vs {g.dim}")
    if f.is_empty or g.is_empty:
        return LatticeFunction((0,) * f.dim, np.zeros((0,) * f.dim))
    if method == "direct":
        out = signal.convolve(f.values, g.values, mode="full", method="direct")
    elif method == "fft":
        out = signal.fftconvolve(f.values, g.values, mode="full")
    else:
        raise InputError(f"unknown convolution method {method!r}")
    origin = tuple(a + b for a, b in zip(f.origin, g.origin))
    return LatticeFunction(origin, out)


def tensor(f: LatticeFunction, g: LatticeFunction) -> LatticeFunction:
    """``(f (x) g)(x, y) = f(x) g(y)`` on Z^(d1+d2)."""
    if f.is_empty or g.is_empty:
        return LatticeFunction((0,) * (f.dim + g.dim), np.zeros((0,) * (f.dim + g.dim)))
    return LatticeFunction(f.origin + g.origin, np.multiply.outer(f.values, g.values))


@dataclass(frozen=True)
class PowerConfig:
    """Knobs for the FFT routes of :func:`power`."""

    prune_rel: float = 1e-14
    max_grid_points: int = 2**25  # complex128 cells per transform (~512 MiB)
    local_start: int = 128
    guard_fraction: float = 0.125
    # the guard band must be clean to this level relative to the sup; it sits
    # above the FFT roundoff floor (~1e-16 absolute) so growth terminates
    guard_rel: float = 1e-12
    workers: int | None = None


def _next_pow2(n: int) -> int:
    return 1 << max(0, int(n - 1).bit_length())


def _binary_power(f: LatticeFunction, n: int) -> LatticeFunction:
    result = None
    base = f
    while n:
        if n & 1:
            result = base if result is None else convolve(result, base)
        n >>= 1
        if n:
            base = convolve(base, base)
    return result


def _symbol_power_grid(f: LatticeFunction, n: int, shape: tuple[int, ...], workers) -> np.ndarray:
    """Inverse transform of (symbol on the ``shape`` torus)^n, indexed by x mod shape."""
    a = np.zeros(shape, dtype=np.complex128)
    coords, vals = f.coords_and_values()
    np.add.at(a, tuple((coords % np.array(shape)).T), vals)
    # numpy's forward transform uses e^{-i...}; the symbol uses e^{+ix.xi}, so
    # the symbol on the grid is N * ifft.  The n-th power is then pulled back
    # with the matching forward transform.
    s = sfft.ifftn(a, workers=workers) * np.prod(shape)
    s = s**n
    return sfft.fftn(s, workers=workers) / np.prod(shape)


def _power_fft_exact(f: LatticeFunction, n: int, cfg: PowerConfig) -> LatticeFunction:
    lo = np.array(f.origin)
    shape = tuple(_next_pow2(n * e + 1) for e in f.extent)
    if int(np.prod(shape, dtype=np.float64)) > cfg.max_grid_points:
        raise ResourceError(
            f"exact FFT power needs a {shape} grid (> {cfg.max_grid_points} cells); use method='fft_local'"
        )
    p = _symbol_power_grid(f, n, shape, cfg.workers)
    # support of f^(n) is n*lo .. n*hi; read it back from the torus
    start = n * lo
    ext = [n * e + 1 for e in f.extent]
    idx = np.ix_(*[(start[k] + np.arange(ext[k])) % shape[k] for k in range(f.dim)])
    vals = p[idx]
    thr = cfg.prune_rel * np.abs(vals).max()
    return LatticeFunction(tuple(start), vals, prune=thr)


def _power_fft_local(f: LatticeFunction, n: int, cfg: PowerConfig) -> LatticeFunction:
    lo = np.array(f.origin)
    hi = np.array(f.support_box[1])
    full = [_next_pow2(n * e + 1) for e in f.extent]
    center = np.rint(n * (lo + hi) / 2.0).astype(np.int64)
    sizes = [min(max(cfg.local_start, _next_pow2(e + 1)), m) for e, m in zip(f.extent, full)]
    while True:
        if int(np.prod(sizes, dtype=np.float64)) > cfg.max_grid_points:
            raise ResourceError(f"local FFT power needs a grid larger than {cfg.max_grid_points} cells")
        shape = tuple(sizes)
        p = _symbol_power_grid(f, n, shape, cfg.workers)
        # coordinates x = center + j, j in [-M/2, M/2)
        rel = [np.arange(m) - m // 2 for m in shape]
        idx = np.ix_(*[(center[k] + rel[k]) % shape[k] for k in range(f.dim)])
        vals = p[idx]
        mag = np.abs(vals)
        thr = cfg.prune_rel * mag.max()
        guard = cfg.guard_rel * mag.max()
        grow = []
        for k in range(f.dim):
            if sizes[k] >= full[k]:
                continue
            band = np.abs(rel[k]) >= (0.5 - cfg.guard_fraction) * sizes[k]
            other = tuple(a for a in range(f.dim) if a != k)
            prof = mag.max(axis=other) if other else mag
            if prof[band].max() > guard:
                grow.append(k)
        if not grow:
            break
        for k in grow:
            sizes[k] = min(2 * sizes[k], full[k])
    # on axes that reached full size the torus holds the exact support
    start = []
    out = vals
    for k in range(f.dim):
        if sizes[k] >= full[k]:
            ext = n * f.extent[k] + 1
            lo_k = n * lo[k]
            take = (lo_k - (center[k] - sizes[k] // 2)) % sizes[k] + np.arange(ext)
            out = np.take(out, take % sizes[k], axis=k)
            start.append(lo_k)
        else:
            start.append(center[k] - sizes[k] // 2)
    return LatticeFunction(tuple(int(s) for s in start), out, prune=thr)


def power(f: LatticeFunction, n: int, method: str = "direct", config: PowerConfig | None = None) -> LatticeFunction:
    """n-th convolution power ``f^(n)``.

    ``method`` is one of ``direct``, ``fft``, ``fft_local`` or ``auto``
    (``fft`` when the exact grid fits the cap, else ``fft_local``).
    """
    cfg = config or PowerConfig()
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise InputError(f"power requires n >= 1 (got {n!r})")
    n = int(n)
    if f.is_empty:
        return f
    if n == 1:
        return f
    if method == "direct":
        return _binary_power(f, n)
    if method == "auto":
        shape = [_next_pow2(n * e + 1) for e in f.extent]
        method = "fft" if np.prod(shape, dtype=np.float64) <= cfg.max_grid_points else "fft_local"
    if method == "fft":
        return _power_fft_exact(f, n, cfg)
    if method == "fft_local":
        return _power_fft_local(f, n, cfg)
    raise InputError(f"unknown power method {method!r}")
