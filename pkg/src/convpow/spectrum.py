"""Fourier symbols, maximizer search and local classification of maximizers.

Conventions: the symbol is ``phi_hat(xi) = sum_x phi(x) exp(i x . xi)`` and
near a maximizer xi0 we expand

    Gamma(xi) = log(phi_hat(xi + xi0) / phi_hat(xi0))
              = i alpha . xi - i Q(xi) - R(xi) + higher weighted levels,

where Q collects the imaginary parts at weighted level one and R the real
parts at the lowest level carrying real coefficients.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import ndimage, signal

from .errors import InputError
from .grouplie import GroupGenerator
from .homogeneous import WeightedPolynomial, check_abs_definite, check_positive_definite
from .lattice import LatticeFunction

__all__ = [
    "symbol",
    "symbol_grid",
    "symbol_derivatives",
    "Maximizer",
    "find_maximizers",
    "SymbolSeries",
    "gamma_series",
    "PointClassification",
    "classify_point",
    "PhiAnalysis",
    "analyze",
    "torus_shift",
    "wrap_angle",
]

ZERO_TOL = 1e-9
AUTO_WEIGHTS = (2, 4, 6, 8, 10, 12)
SNAP_DENOMS = (1, 2, 3, 4, 6, 8, 12, 24)
TWO_PI = 2 * np.pi


def wrap_angle(x):
    """Map angles into (-pi, pi]."""
    y = np.mod(np.asarray(x, dtype=float) + np.pi, TWO_PI) - np.pi
    y = np.where(y <= -np.pi, y + TWO_PI, y)
    return y if y.ndim else float(y)


def symbol(f: LatticeFunction, xi) -> complex | np.ndarray:
    """phi_hat at one point or at an array of points with trailing axis d.

    Complex xi is allowed (the symbol is entire), which the series tests use.
    """
    xi = np.asarray(xi)
    if f.dim == 1 and (xi.ndim == 0 or xi.shape[-1] != 1):
        xi = xi[..., None]
    if xi.shape[-1] != f.dim:
        raise InputError(f"point dimension {xi.shape[-1]} does not match function dimension {f.dim}")
    coords, vals = f.coords_and_values()
    phase = np.tensordot(xi, coords.T.astype(float), axes=([-1], [0]))
    out = np.exp(1j * phase) @ vals
    return complex(out) if np.ndim(out) == 0 else out


def symbol_derivatives(f: LatticeFunction, xi: np.ndarray) -> tuple[complex, np.ndarray, np.ndarray]:
    """phi_hat, its gradient and its Hessian at a real point."""
    coords, vals = f.coords_and_values()
    x = coords.astype(float)
    w = vals * np.exp(1j * (x @ np.asarray(xi, dtype=float)))
    val = w.sum()
    grad = 1j * (x.T @ w)
    hess = -(x.T * w) @ x
    return complex(val), grad, hess


def symbol_grid(f: LatticeFunction, n: int, workers: int | None = None) -> np.ndarray:
    """phi_hat on the grid xi_k = 2 pi k / n (k = 0..n-1 per axis).

    Coordinates are folded modulo n, which is exact on this grid.
    """
    if n < 2:
        raise InputError("grid size must be at least 2")
    from scipy import fft

    coords, vals = f.coords_and_values()
    a = np.zeros((n,) * f.dim, dtype=complex)
    np.add.at(a, tuple(np.mod(coords, n).T), vals)
    return fft.ifftn(a, workers=workers) * n**f.dim


@dataclass(frozen=True)
class Maximizer:
    xi: tuple[float, ...]
    value: complex
    converged: bool
    iterations: int
    snapped: bool


def _torus_components(mask: np.ndarray) -> list[np.ndarray]:
    """Connected components of a boolean grid with periodic wrap-around."""
    lab, count = ndimage.label(mask)
    parent = list(range(count + 1))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for ax in range(mask.ndim):
        first = np.take(lab, 0, axis=ax)
        last = np.take(lab, -1, axis=ax)
        for a, b in zip(first.ravel(), last.ravel()):
            if a and b:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for i in range(1, count + 1):
        groups.setdefault(find(i), []).append(i)
    return [np.argwhere(np.isin(lab, g)) for g in groups.values()]


def _circular_mean(idx: np.ndarray, n: int) -> np.ndarray:
    ang = TWO_PI * idx / n
    return np.angle(np.exp(1j * ang).mean(axis=0))


def _refine(f: LatticeFunction, xi: np.ndarray, max_iter: int = 50) -> tuple[np.ndarray, bool, int]:
    """Maximize F = |phi_hat|^2 by damped Newton with a gradient fallback."""
    def F(p):
        return abs(symbol(f, p)) ** 2

    fx = F(xi)
    for it in range(1, max_iter + 1):
        v, g, h = symbol_derivatives(f, xi)
        grad = 2 * np.real(np.conj(v) * g)
        hess = 2 * np.real(np.outer(np.conj(g), g) + np.conj(v) * h)
        if np.linalg.norm(grad) < 1e-15:
            return xi, True, it
        step = None
        if np.all(np.linalg.eigvalsh(hess) < 0):
            step = -np.linalg.solve(hess, grad)
        if step is None or not np.all(np.isfinite(step)):
            step = grad / max(np.abs(hess).max(), 1e-12)
        lam = 1.0
        while lam > 1e-6:
            cand = xi + lam * step
            fc = F(cand)
            if fc >= fx - 1e-16:
                break
            lam /= 2
        else:
            return xi, False, it
        moved = np.linalg.norm(lam * step)
        xi, fx = cand, fc
        if moved < 1e-13:
            return xi, True, it
    return xi, False, max_iter


def _snap(f: LatticeFunction, xi: np.ndarray, window: float = 1e-3) -> tuple[np.ndarray, bool]:
    """Round coordinates to nearby multiples of pi/L when that does not lower |phi_hat|."""
    out = xi.copy()
    for k in range(len(xi)):
        for L in SNAP_DENOMS:
            c = np.pi / L * round(out[k] * L / np.pi)
            if abs(c - out[k]) < window:
                out[k] = c
                break
    if np.array_equal(out, xi):
        return xi, False
    if abs(symbol(f, out)) >= abs(symbol(f, xi)) - 1e-14:
        return out, True
    return xi, False


def find_maximizers(f: LatticeFunction, grid_per_axis: int = 512, tol: float = 1e-6) -> tuple[list[Maximizer], list[str]]:
    """Points of the torus where |phi_hat| attains its maximum.

    Returns the refined points (coordinates in (-pi, pi]) and a list of
    warnings, e.g. about normalization or unconverged refinement.
    """
    if len(f) < 2:
        raise InputError("maximizer search needs at least two support points (|phi_hat| is otherwise constant)")
    if f.dim > 2:
        raise InputError("maximizer search supports d <= 2")
    warnings: list[str] = []
    n = grid_per_axis
    mod2 = np.abs(symbol_grid(f, n)) ** 2
    top = mod2.max()
    mask = mod2 >= top - tol * max(top, 1.0)
    found: list[Maximizer] = []
    for comp in _torus_components(mask):
        seed = _circular_mean(comp, n)
        xi, ok, its = _refine(f, seed)
        xi = wrap_angle(xi).reshape(-1)
        xi, snapped = _snap(f, xi)
        xi = wrap_angle(xi).reshape(-1)
        if not ok and not snapped:
            warnings.append(f"refinement did not converge near {np.round(seed, 6).tolist()}")
        dup = False
        for m in found:
            d = np.abs(wrap_angle(np.asarray(m.xi) - xi))
            if d.max() < 1e-6:
                dup = True
                break
        if not dup:
            found.append(Maximizer(tuple(float(v) for v in np.atleast_1d(xi)), symbol(f, xi), ok or snapped, its, snapped))
    best = max(abs(m.value) for m in found)
    found = [m for m in found if abs(m.value) >= best - 1e-9]
    found.sort(key=lambda m: tuple(m.xi))
    if abs(best - 1.0) > 1e-6:
        warnings.append(f"sup |phi_hat| = {best:.12g} is not 1; results describe the unnormalized function")
    return found, warnings


@dataclass(frozen=True, eq=False)
class SymbolSeries:
    """Taylor coefficients of Gamma at base_point up to total_degree.

    ``array`` has shape (D+1,)*d; ``array[beta]`` is the coefficient of xi^beta.
    """

    base_point: tuple[float, ...]
    total_degree: int
    array: np.ndarray
    symbol_value: complex

    @property
    def dim(self) -> int:
        return self.array.ndim

    @property
    def coeffs(self) -> dict[tuple[int, ...], complex]:
        return {tuple(int(v) for v in b): complex(self.array[tuple(b)]) for b in np.argwhere(self.array != 0)}

    def coefficient(self, beta: Sequence[int]) -> complex:
        beta = tuple(int(b) for b in beta)
        if sum(beta) > self.total_degree:
            raise InputError(f"degree {sum(beta)} exceeds the series truncation {self.total_degree}")
        return complex(self.array[beta])

    def evaluate(self, xi) -> complex | np.ndarray:
        P = WeightedPolynomial(self.dim, None, self.coeffs)
        return P(xi)


def _degree_mask(dim: int, D: int) -> np.ndarray:
    idx = np.indices((D + 1,) * dim).sum(axis=0)
    return idx <= D


def _truncated_product(a: np.ndarray, b: np.ndarray, mask: np.ndarray) -> np.ndarray:
    D = a.shape[0] - 1
    full = signal.convolve(a, b, method="direct")
    out = full[(slice(0, D + 1),) * a.ndim]
    return np.where(mask, out, 0)


def gamma_series(f: LatticeFunction, xi0, total_degree: int = 12) -> SymbolSeries:
    """Exact (up to rounding) Taylor coefficients of the log-ratio of the symbol."""
    if total_degree < 2:
        raise InputError("total_degree must be at least 2")
    xi0 = np.atleast_1d(np.asarray(xi0, dtype=float))
    d, D = f.dim, total_degree
    if xi0.shape != (d,):
        raise InputError("base point has the wrong dimension")
    v0 = symbol(f, xi0)
    if abs(abs(v0) - 1.0) > 1e-6:
        raise InputError(f"|phi_hat(xi0)| = {abs(v0):.12g} is not 1 within 1e-6")
    coords, vals = f.coords_and_values()
    wts = vals * np.exp(1j * (coords @ xi0)) / v0
    w = np.zeros((D + 1,) * d, dtype=complex)
    mask = _degree_mask(d, D)
    for beta in np.argwhere(mask):
        beta = tuple(int(b) for b in beta)
        mono = np.ones(len(wts), dtype=complex)
        fact = 1
        for k, b in enumerate(beta):
            mono = mono * (1j * coords[:, k]) ** b
            fact *= math.factorial(b)
        w[beta] = (wts * mono).sum() / fact
    w[(0,) * d] = 0
    out = np.zeros_like(w)
    pw = w.copy()
    for j in range(1, D + 1):
        out += ((-1) ** (j + 1) / j) * pw
        pw = _truncated_product(pw, w, mask)
    out.setflags(write=False)
    return SymbolSeries(tuple(float(v) for v in xi0), D, out, v0)


@dataclass(frozen=True, eq=False)
class PointClassification:
    xi0: tuple[float, ...]
    symbol_value: complex
    kind: str
    drift: np.ndarray
    weights2m: tuple[int, ...] | None
    k_gap: Fraction | None
    Q: WeightedPolynomial | None
    R: WeightedPolynomial | None
    generator: GroupGenerator | None
    mu: float | None
    notes: tuple[str, ...] = ()

    @property
    def is_classified(self) -> bool:
        return self.kind in ("positive_homogeneous", "imaginary_homogeneous")

    def attractor_polynomial(self) -> WeightedPolynomial:
        """P with Gamma = i alpha.xi - P + ...: R + iQ (positive) or iQ (imaginary)."""
        if self.kind == "positive_homogeneous":
            return self.R + self.Q.scaled(1j)
        if self.kind == "imaginary_homogeneous":
            return self.Q.scaled(1j)
        raise InputError("unclassified point has no attractor")

    def to_json_obj(self) -> dict:
        return {
            "xi0": list(self.xi0),
            "symbol_value": {"re": self.symbol_value.real, "im": self.symbol_value.imag},
            "kind": self.kind,
            "alpha": [float(a) for a in self.drift],
            "weights2m": list(self.weights2m) if self.weights2m else None,
            "k": None if self.k_gap is None else float(self.k_gap),
            "k_exact": None if self.k_gap is None else str(self.k_gap),
            "mu": self.mu,
            "Q": self.Q.to_json_obj() if self.Q is not None else None,
            "R": self.R.to_json_obj() if self.R is not None else None,
            "generator": self.generator.to_json_obj() if self.generator is not None else None,
            "notes": list(self.notes),
        }


def _classify_with(series: SymbolSeries, w2m: tuple[int, ...], tol: float):
    """Level analysis for one weight vector; returns (kind, k, Q, R, notes)."""
    d, D = series.dim, series.total_degree
    reach = Fraction(D, max(w2m))
    notes: list[str] = []
    imag_terms: dict[tuple[int, ...], float] = {}
    real_by_level: dict[Fraction, dict[tuple[int, ...], float]] = {}
    for beta, c in series.coeffs.items():
        deg = sum(beta)
        lvl = sum((Fraction(b, m) for b, m in zip(beta, w2m)), Fraction(0))
        if lvl > reach:
            continue
        if deg == 1:
            if abs(c.real) > tol:
                notes.append(f"real linear coefficient {c.real:.3g} at {beta}: not a maximum of |phi_hat|")
                return "unclassified", None, None, None, notes
            continue
        if abs(c.imag) > tol:
            if lvl < 1:
                notes.append(f"imaginary coefficient {c.imag:.3g} at {beta} below level 1")
                return "unclassified", None, None, None, notes
            if lvl == 1:
                imag_terms[beta] = -c.imag
        if abs(c.real) > tol:
            real_by_level.setdefault(lvl, {})[beta] = -c.real
    if not real_by_level:
        notes.append(f"no real coefficients up to level {reach}; increase the series degree")
        return "unclassified", None, None, None, notes
    k = min(real_by_level)
    if k < 1:
        notes.append(f"real coefficients at level {k} < 1")
        return "unclassified", k, None, None, notes
    Q = WeightedPolynomial(d, w2m, imag_terms)
    R = WeightedPolynomial(d, w2m, real_by_level[k])
    if not check_positive_definite(R):
        notes.append("R is not positive definite")
        return "unclassified", k, Q, R, notes
    if k == 1:
        return "positive_homogeneous", k, Q, R, notes
    if Q.terms and check_abs_definite(Q):
        return "imaginary_homogeneous", k, Q, R, notes
    notes.append("|Q| is not positive definite")
    return "unclassified", k, Q, R, notes


def classify_point(series: SymbolSeries, weights2m="auto", tol: float = ZERO_TOL) -> PointClassification:
    d = series.dim
    drift = np.array([series.coefficient(tuple(int(j == k) for j in range(d))).imag for k in range(d)])
    drift[np.abs(drift) < tol] = 0.0
    if isinstance(weights2m, str):
        if weights2m != "auto":
            raise InputError("weights2m must be a vector or 'auto'")
        if d > 2:
            raise InputError("automatic weight search supports d <= 2")
        candidates = list(itertools.product(AUTO_WEIGHTS, repeat=d))
    else:
        w = tuple(int(v) for v in weights2m)
        if len(w) != d or any(v < 1 for v in w):
            raise InputError(f"weights2m must have {d} positive entries")
        if series.total_degree < 2 * max(w):
            raise InputError(f"series degree {series.total_degree} is below 2*max(2m) = {2 * max(w)}")
        candidates = [w]
    best = None
    last_notes: list[str] = []
    for w in candidates:
        if series.total_degree < max(w):
            continue
        kind, k, Q, R, notes = _classify_with(series, w, tol)
        if kind == "unclassified":
            last_notes = notes
            continue
        mu = sum(1.0 / v for v in w)
        if best is None or mu < best[0] - 1e-12:
            best = (mu, w, kind, k, Q, R)
    if best is None:
        w = candidates[0] if len(candidates) == 1 else None
        return PointClassification(series.base_point, series.symbol_value, "unclassified", drift, w, None, None, None, None, None, tuple(last_notes or ["no admissible weights"]))
    mu, w, kind, k, Q, R = best
    gen = GroupGenerator.diagonal([1.0 / v for v in w])
    return PointClassification(series.base_point, series.symbol_value, kind, drift, w, k, Q, R, gen, mu)


def torus_shift(points: Sequence[Sequence[float]], dim: int) -> np.ndarray:
    """Center xi_phi of a fundamental cell xi_phi + (-pi, pi]^d keeping all points interior.

    Per axis the cell boundary goes to the middle of the largest circular gap.
    """
    shift = np.zeros(dim)
    if not points:
        return shift
    pts = np.mod(np.asarray(points, dtype=float).reshape(-1, dim), TWO_PI)
    for k in range(dim):
        c = np.unique(pts[:, k])
        gaps = np.diff(np.append(c, c[0] + TWO_PI))
        j = int(np.argmax(gaps))
        boundary = c[j] + gaps[j] / 2
        shift[k] = wrap_angle(boundary + np.pi)
    return shift


@dataclass(frozen=True, eq=False)
class PhiAnalysis:
    phi: LatticeFunction
    maximizers: list[PointClassification]
    mu_phi: float | None
    dominant: tuple[int, ...]
    shift: np.ndarray
    warnings: tuple[str, ...] = field(default=())

    @property
    def dominant_points(self) -> list[PointClassification]:
        return [self.maximizers[i] for i in self.dominant]

    def to_json_obj(self) -> dict:
        return {
            "mu_phi": self.mu_phi,
            "dominant": list(self.dominant),
            "shift": [float(s) for s in self.shift],
            "maximizers": [m.to_json_obj() for m in self.maximizers],
            "warnings": list(self.warnings),
        }


def _in_cell(xi: np.ndarray, shift: np.ndarray) -> np.ndarray:
    return shift + wrap_angle(xi - shift)


def analyze(f: LatticeFunction, grid_per_axis: int = 512, weights2m="auto", total_degree: int | None = None, tol: float = ZERO_TOL) -> PhiAnalysis:
    """Maximizers of |phi_hat| with their local type and homogeneous orders."""
    pts, warnings = find_maximizers(f, grid_per_axis)
    if total_degree is None:
        total_degree = 2 * (max(AUTO_WEIGHTS) if isinstance(weights2m, str) else max(weights2m))
    shift = torus_shift([p.xi for p in pts], f.dim)
    out = []
    for p in pts:
        xi = _in_cell(np.asarray(p.xi), shift)
        out.append(classify_point(gamma_series(f, xi, total_degree), weights2m, tol))
    mus = [c.mu for c in out if c.mu is not None]
    if any(not c.is_classified for c in out):
        warnings.append("some maximizers are unclassified")
    mu_phi = min(mus) if mus else None
    dominant = tuple(i for i, c in enumerate(out) if c.mu is not None and abs(c.mu - mu_phi) < 1e-12)
    return PhiAnalysis(f, out, mu_phi, dominant, shift, tuple(warnings))
