"""Local limit approximations of convolution powers and their measured errors.

For dominant maximizers xi_k with drifts alpha_k and attractors H_k,

    phi^(n)(x) ~ sum_k phi_hat(xi_k)^n exp(-i x . xi_k) H_k^n(x - n alpha_k).

Windows are boxes ``n alpha + n^{E*} K`` for the canonical diagonal
generator, so every window is a tensor grid and the attractors are
evaluated on grids.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .attractors import AttractorSpec, attractor_grid
from .errors import HypothesisError, InputError, ResourceError
from .lattice import LatticeFunction, LatticeWindow, PowerConfig, power, sup_norm
from .spectrum import PhiAnalysis, PointClassification

__all__ = [
    "LLTReport",
    "SupnormFit",
    "check_hypotheses",
    "window_axes",
    "window_points",
    "llt_approx",
    "llt_grid",
    "llt_error_curve",
    "supnorm_fit",
]

MAX_WINDOW_POINTS = 4_000_000
DEFAULT_K = 3.0


def check_hypotheses(analysis: PhiAnalysis) -> list[PointClassification]:
    """Dominant points, after checking the hypotheses of the local limit theorem."""
    dom = analysis.dominant_points
    if not dom:
        raise HypothesisError("no classified dominant maximizer")
    for p in analysis.maximizers:
        if not p.is_classified and (p.mu is None or p.mu <= analysis.mu_phi + 1e-12):
            raise HypothesisError(f"dominant maximizer {p.xi0} is unclassified")
    imag = [p for p in dom if p.kind == "imaginary_homogeneous"]
    for p in imag:
        if p.mu >= 1:
            raise HypothesisError(f"imaginary dominant {p.xi0} has mu = {p.mu:g} >= 1")
    if imag:
        a0 = imag[0].drift
        for p in imag[1:]:
            if np.max(np.abs(p.drift - a0)) > 1e-9:
                raise HypothesisError("imaginary dominant maximizers have different drifts")
    return dom


def _window_generator(dom: Sequence[PointClassification]) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal exponents and drift that define the window."""
    imag = [p for p in dom if p.kind == "imaginary_homogeneous"]
    ref = imag[0] if imag else dom[0]
    if not ref.generator.is_diagonal:
        raise InputError("windows need a diagonal generator")
    return ref.generator.diag, np.asarray(ref.drift, dtype=float)


def _parse_box(K_box, dim: int) -> np.ndarray:
    if K_box is None:
        K_box = DEFAULT_K
    box = np.asarray(K_box, dtype=float)
    if box.ndim == 0:
        box = np.array([[-abs(float(box)), abs(float(box))]] * dim)
    box = box.reshape(dim, 2)
    if np.any(box[:, 0] > box[:, 1]):
        raise InputError("window box has min > max")
    return box


def window_axes(analysis: PhiAnalysis, n: int, K_box=None, max_points: int = MAX_WINDOW_POINTS) -> list[np.ndarray]:
    """Integer coordinates of (n alpha + n^{E*} K) per axis (the window is their product)."""
    if n < 1:
        raise InputError("n must be >= 1")
    dom = check_hypotheses(analysis)
    e, alpha = _window_generator(dom)
    box = _parse_box(K_box, analysis.phi.dim)
    axes = []
    for l in range(len(e)):
        lo = n * alpha[l] + n ** e[l] * box[l, 0]
        hi = n * alpha[l] + n ** e[l] * box[l, 1]
        axes.append(np.arange(int(np.ceil(lo - 1e-9)), int(np.floor(hi + 1e-9)) + 1))
    count = int(np.prod([len(a) for a in axes]))
    if count > max_points:
        raise ResourceError(f"window has {count} points (cap {max_points}); use a smaller K")
    if count == 0:
        raise InputError("window contains no lattice points")
    return axes


def window_points(analysis: PhiAnalysis, n: int, K_box=None, max_points: int = MAX_WINDOW_POINTS) -> LatticeWindow:
    axes = window_axes(analysis, n, K_box, max_points)
    dom = check_hypotheses(analysis)
    _, alpha = _window_generator(dom)
    center = n * alpha
    pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(axes))
    return LatticeWindow(center, pts - np.rint(center).astype(np.int64))


def _phase_power(v: complex, n: int) -> complex:
    """phi_hat(xi_k)^n as exp(i n arg v); the modulus is one at a maximizer."""
    return complex(np.exp(1j * ((n * np.angle(v)) % (2 * np.pi))))


def _specs(dom: Sequence[PointClassification]) -> list[AttractorSpec]:
    return [AttractorSpec.from_classification(p) for p in dom]


def llt_grid(analysis: PhiAnalysis, n: int, axes: Sequence[np.ndarray], specs: Sequence[AttractorSpec] | None = None) -> np.ndarray:
    """Approximation on the tensor grid of integer axes."""
    dom = check_hypotheses(analysis)
    specs = specs or _specs(dom)
    axes = [np.asarray(a, dtype=np.int64) for a in axes]
    out = np.zeros(tuple(len(a) for a in axes), dtype=complex)
    for p, spec in zip(dom, specs):
        xi = np.asarray(p.xi0, dtype=float)
        phase = _phase_power(p.symbol_value, n)
        shifted = [a - n * p.drift[l] for l, a in enumerate(axes)]
        H = attractor_grid(spec, n, shifted)
        wave = np.ones((), dtype=complex)
        for l, a in enumerate(axes):
            wave = np.multiply.outer(wave, np.exp(-1j * np.mod(a * xi[l], 2 * np.pi)))
        out += phase * wave * H
    return out


def llt_approx(analysis: PhiAnalysis, n: int, x: Sequence[int]) -> complex:
    x = np.atleast_1d(np.asarray(x))
    if x.shape != (analysis.phi.dim,):
        raise InputError("point dimension does not match")
    if np.any(x != np.rint(x)):
        raise InputError("x must be an integer vector")
    return complex(llt_grid(analysis, n, [np.array([int(v)]) for v in x]).ravel()[0])


def _box_values(f: LatticeFunction, axes: Sequence[np.ndarray]) -> np.ndarray:
    """f on the tensor grid of consecutive integer axes (zero outside the support)."""
    out = np.zeros(tuple(len(a) for a in axes), dtype=complex)
    if f.is_empty:
        return out
    src, dst = [], []
    for a, o, s in zip(axes, f.origin, f.values.shape):
        lo = max(a[0], o)
        hi = min(a[-1], o + s - 1)
        if hi < lo:
            return out
        src.append(slice(lo - o, hi - o + 1))
        dst.append(slice(lo - a[0], hi - a[0] + 1))
    out[tuple(dst)] = f.values[tuple(src)]
    return out


@dataclass(frozen=True)
class LLTReport:
    n_values: tuple[int, ...]
    scaled_errors: tuple[float, ...]
    sup_errors: tuple[float, ...]
    supnorms: tuple[float, ...]
    window_sizes: tuple[int, ...]
    mu_phi: float
    window_spec: dict
    attractor_terms: tuple[dict, ...]
    seconds: tuple[float, ...] = field(default=())

    def to_json_obj(self) -> dict:
        return {
            "n_values": list(self.n_values),
            "scaled_errors": list(self.scaled_errors),
            "sup_errors": list(self.sup_errors),
            "supnorms": list(self.supnorms),
            "window_sizes": list(self.window_sizes),
            "mu_phi": self.mu_phi,
            "window_spec": self.window_spec,
            "attractor_terms": list(self.attractor_terms),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "scaled_error", "sup_error", "supnorm", "n_mu_supnorm", "window_points"])
        for n, s, e, m, c in zip(self.n_values, self.scaled_errors, self.sup_errors, self.supnorms, self.window_sizes):
            w.writerow([n, repr(float(s)), repr(float(e)), repr(float(m)), repr(float(n**self.mu_phi * m)), c])
        return buf.getvalue()


def _check_ladder(n_values: Sequence[int]) -> tuple[int, ...]:
    ns = tuple(int(n) for n in n_values)
    if not ns or any(n < 1 for n in ns) or any(b <= a for a, b in zip(ns, ns[1:])):
        raise InputError("n values must be positive and strictly increasing")
    return ns


def llt_error_curve(analysis: PhiAnalysis, K_box, n_values: Sequence[int], method: str = "auto", config: PowerConfig | None = None) -> LLTReport:
    """n^{mu_phi} times the sup-window error of the local limit approximation.

    When every dominant point is of positive type the window is the whole
    support of phi^(n); otherwise it is n alpha + n^{E*} K.
    """
    ns = _check_ladder(n_values)
    dom = check_hypotheses(analysis)
    specs = _specs(dom)
    positive_only = all(p.kind == "positive_homogeneous" for p in dom)
    e, alpha = _window_generator(dom)
    scaled, errs, sups, sizes, secs = [], [], [], [], []
    for n in ns:
        t0 = time.perf_counter()
        exact = power(analysis.phi, n, method, config)
        if positive_only:
            lo, hi = exact.support_box
            axes = [np.arange(a, b + 1) for a, b in zip(lo, hi)]
        else:
            axes = window_axes(analysis, n, K_box)
        approx = llt_grid(analysis, n, axes, specs)
        err = float(np.abs(_box_values(exact, axes) - approx).max())
        errs.append(err)
        scaled.append(n**analysis.mu_phi * err)
        sups.append(sup_norm(exact))
        sizes.append(int(np.prod([len(a) for a in axes])))
        secs.append(time.perf_counter() - t0)
    box = _parse_box(K_box, analysis.phi.dim)
    wspec = {
        "K": box.tolist(),
        "generator_diag": [float(v) for v in e],
        "alpha": [float(a) for a in alpha],
        "full_support": positive_only,
    }
    terms = tuple({"xi0": list(p.xi0), "kind": p.kind, "mu": p.mu, "alpha": [float(a) for a in p.drift]} for p in dom)
    return LLTReport(ns, tuple(scaled), tuple(errs), tuple(sups), tuple(sizes), float(analysis.mu_phi), wspec, terms, tuple(secs))


@dataclass(frozen=True)
class SupnormFit:
    n_values: tuple[int, ...]
    supnorms: tuple[float, ...]
    slope: float
    intercept: float
    residual: float

    def ratio(self, mu: float) -> float:
        """max/min of n^mu ||phi^(n)||_inf over the ladder."""
        v = np.array(self.n_values, dtype=float) ** mu * np.array(self.supnorms)
        return float(v.max() / v.min())

    def to_csv(self, mu: float | None = None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "supnorm"] + (["n_mu_supnorm"] if mu is not None else []))
        for n, s in zip(self.n_values, self.supnorms):
            w.writerow([n, repr(float(s))] + ([repr(float(n**mu * s))] if mu is not None else []))
        return buf.getvalue()


def supnorm_fit(phi: LatticeFunction, n_values: Sequence[int], method: str = "auto", config: PowerConfig | None = None) -> SupnormFit:
    """Least-squares slope of log ||phi^(n)||_inf against log n."""
    ns = _check_ladder(n_values)
    if len(ns) < 4:
        raise InputError("supnorm_fit needs at least 4 values of n")
    sups = [sup_norm(power(phi, n, method, config)) for n in ns]
    if min(sups) <= 0:
        raise InputError("phi^(n) vanishes identically")
    X = np.log(np.array(ns, dtype=float))
    Y = np.log(np.array(sups))
    A = np.stack([X, np.ones_like(X)], axis=1)
    coef, res, *_ = np.linalg.lstsq(A, Y, rcond=None)
    resid = float(np.sqrt(res[0] / len(ns))) if res.size else 0.0
    return SupnormFit(ns, tuple(sups), float(coef[0]), float(coef[1]), resid)
