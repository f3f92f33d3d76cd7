"""Weighted polynomials, definiteness checks and sublevel-set geometry.

Polar charts
------------
For |Q| positive definite and homogeneous with respect to a contracting
group {t^E}, every orbit ``r -> r^E v`` crosses the unital level set
``S = {|Q| = 1}`` exactly once, because ``|Q(r^E v)| = r |Q(v)|``.  So the
point of S on the orbit through the Euclidean unit vector ``v(theta)`` is

    eta(theta) = h(theta)^(-E) v(theta),    h(theta) = |Q(v(theta))|,

with no root finding.  Writing ``xi = r^E eta(theta)`` gives
``d xi = r^(mu-1) |det[E eta, eta']| dr d theta`` and the tangent term
collapses to ``h^(-mu) det[E v, v']`` since ``eta'`` differs from
``h^(-E) v'`` by a multiple of ``E eta``.  The resulting weights integrate
smooth periodic functions of theta spectrally with the trapezoidal rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import GeometryError, InputError
from .grouplie import GroupGenerator, group_power, is_contracting

__all__ = [
    "WeightedPolynomial",
    "PolarChart",
    "evaluate",
    "check_homogeneity",
    "check_positive_definite",
    "check_abs_definite",
    "sublevel_volume",
    "polar_chart",
    "chart_volume",
]

PD_FLOOR = 1e-9
# seed for sampled checks; the CLI overrides it with --seed
DEFAULT_SEED = 42


class WeightedPolynomial:
    """Sum of ``a_beta xi^beta`` with weights m, so |beta:m| = sum beta_k / m_k."""

    __slots__ = ("dim", "weights", "terms")

    def __init__(self, dim: int, weights: Sequence[int] | None, terms: Mapping[Sequence[int], complex], *, zero_tol: float = 0.0):
        if dim < 1:
            raise InputError("polynomial dimension must be positive")
        w = tuple(int(v) for v in (weights if weights is not None else (1,) * dim))
        if len(w) != dim or any(v < 1 for v in w):
            raise InputError(f"weights must be {dim} integers >= 1, got {w}")
        clean: dict[tuple[int, ...], complex] = {}
        for beta, a in terms.items():
            b = (int(beta),) if np.isscalar(beta) else tuple(int(v) for v in beta)
            if len(b) != dim or any(v < 0 for v in b):
                raise InputError(f"bad multi-index {beta} for dimension {dim}")
            a = complex(a)
            if abs(a) > zero_tol:
                clean[b] = clean.get(b, 0j) + a
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "terms", {b: a for b, a in sorted(clean.items()) if a != 0})

    def __setattr__(self, *_):
        raise AttributeError("WeightedPolynomial is immutable")

    def __repr__(self) -> str:
        body = " + ".join(f"({a:.6g})*x^{b}" for b, a in self.terms.items()) or "0"
        return f"WeightedPolynomial(dim={self.dim}, weights={self.weights}: {body})"

    def level(self, beta: Sequence[int]) -> Fraction:
        return sum((Fraction(int(b), m) for b, m in zip(beta, self.weights)), Fraction(0))

    @property
    def is_real(self) -> bool:
        return all(a.imag == 0 for a in self.terms.values())

    @property
    def degree(self) -> int:
        return max((sum(b) for b in self.terms), default=0)

    def real_part(self) -> "WeightedPolynomial":
        return WeightedPolynomial(self.dim, self.weights, {b: a.real for b, a in self.terms.items()})

    def imag_part(self) -> "WeightedPolynomial":
        return WeightedPolynomial(self.dim, self.weights, {b: a.imag for b, a in self.terms.items()})

    def scaled(self, c: complex) -> "WeightedPolynomial":
        return WeightedPolynomial(self.dim, self.weights, {b: c * a for b, a in self.terms.items()})

    def __add__(self, other: "WeightedPolynomial") -> "WeightedPolynomial":
        if other.dim != self.dim:
            raise InputError("dimension mismatch")
        t = dict(self.terms)
        for b, a in other.terms.items():
            t[b] = t.get(b, 0j) + a
        return WeightedPolynomial(self.dim, self.weights, t)

    def __neg__(self) -> "WeightedPolynomial":
        return self.scaled(-1)

    def __call__(self, xi) -> np.ndarray | complex:
        return evaluate(self, xi)

    def is_homogeneous_level_one(self) -> bool:
        return all(self.level(b) == 1 for b in self.terms)

    def generator(self) -> GroupGenerator:
        """diag(1/m_1, ..., 1/m_d), the canonical generator for level-one terms."""
        return GroupGenerator.diagonal([1.0 / m for m in self.weights])

    def to_json_obj(self) -> dict:
        return {
            "dim": self.dim,
            "weights": list(self.weights),
            "terms": [{"beta": list(b), "re": float(a.real), "im": float(a.imag)} for b, a in self.terms.items()],
        }

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "WeightedPolynomial":
        try:
            dim = int(obj["dim"])
            terms = {tuple(t["beta"]): complex(float(t.get("re", 0.0)), float(t.get("im", 0.0))) for t in obj["terms"]}
            weights = obj.get("weights")
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed polynomial: {exc}") from exc
        return cls(dim, weights, terms)


def evaluate(P: WeightedPolynomial, xi) -> np.ndarray | complex:
    """P at one point (length-d vector) or at an array of points (..., d)."""
    x = np.asarray(xi)
    if x.ndim == 0 and P.dim == 1:
        x = x.reshape(1)
    if x.shape[-1] != P.dim:
        raise InputError(f"point dimension {x.shape[-1]} does not match polynomial dimension {P.dim}")
    out = np.zeros(x.shape[:-1], dtype=np.result_type(x.dtype, np.complex128))
    for beta, a in P.terms.items():
        term = np.full(x.shape[:-1], a, dtype=out.dtype)
        for k, b in enumerate(beta):
            if b:
                term = term * x[..., k] ** b
        out = out + term
    if out.ndim == 0:
        return complex(out)
    return out


def _real_values(P: WeightedPolynomial, pts: np.ndarray) -> np.ndarray:
    v = evaluate(P, pts)
    return np.real(v) if P.is_real else np.asarray(v)


def check_homogeneity(P: WeightedPolynomial, E: GroupGenerator, samples: int = 64, seed: int | None = None, rtol: float = 1e-9) -> bool:
    """Sampled test of P(t^E xi) = t P(xi)."""
    if samples < 1:
        raise InputError("samples must be >= 1")
    if E.dim != P.dim:
        raise InputError("generator and polynomial dimensions differ")
    rng = np.random.default_rng(DEFAULT_SEED if seed is None else seed)
    ts = np.exp(rng.uniform(np.log(0.1), np.log(10.0), samples))
    xs = rng.normal(size=(samples, P.dim))
    for t, x in zip(ts, xs):
        lhs = evaluate(P, group_power(E, t) @ x)
        rhs = t * evaluate(P, x)
        if abs(lhs - rhs) > rtol * (1.0 + abs(rhs)):
            return False
    return True


def _sphere_points(dim: int, resolution: int, seed: int = 0) -> np.ndarray:
    if dim == 1:
        return np.array([[1.0], [-1.0]])
    if dim == 2:
        th = 2 * np.pi * np.arange(resolution) / resolution
        return np.stack([np.cos(th), np.sin(th)], axis=-1)
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(resolution * dim, dim))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def check_positive_definite(P: WeightedPolynomial, resolution: int = 4096) -> bool:
    """P real, P(0) = 0 and min of P on the unit sphere above 1e-9.

    Positivity on the sphere suffices for weighted homogeneous P because
    every orbit of a contracting group meets the sphere.
    """
    if not P.is_real:
        raise InputError("positive-definiteness check needs real coefficients")
    if P.terms.get((0,) * P.dim, 0) != 0:
        return False
    if not P.terms:
        return False
    vals = _real_values(P, _sphere_points(P.dim, resolution))
    return bool(vals.min() > PD_FLOOR)


def check_abs_definite(P: WeightedPolynomial, resolution: int = 4096) -> bool:
    """|P| positive definite for real P: P has one strict sign on the sphere."""
    if not P.is_real or not P.terms or P.terms.get((0,) * P.dim, 0) != 0:
        return False
    vals = _real_values(P, _sphere_points(P.dim, resolution))
    if P.dim == 1:
        return bool(np.abs(vals).min() > PD_FLOOR)
    return bool(vals.min() > PD_FLOOR or vals.max() < -PD_FLOOR)


def _default_generator(P: WeightedPolynomial, E: GroupGenerator | None) -> GroupGenerator:
    E = E or P.generator()
    if E.dim != P.dim:
        raise InputError("generator and polynomial dimensions differ")
    if not is_contracting(E):
        raise GeometryError("generator is not contracting")
    return E


def _orbit_points(P: WeightedPolynomial, E: GroupGenerator, dirs: np.ndarray, level: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Points of {|P| = level} on the orbits through the unit vectors ``dirs``."""
    h = np.abs(evaluate(P, dirs)) / level
    if np.any(h <= PD_FLOOR):
        raise GeometryError("|P| vanishes on a unit direction; it is not positive definite")
    if E.is_diagonal:
        pts = dirs * h[:, None] ** (-E.diag)[None, :]
    else:
        pts = np.stack([group_power(E, 1.0 / hv) @ v for hv, v in zip(h, dirs)])
    return pts, h


def sublevel_volume(P: WeightedPolynomial, level: float = 1.0, resolution: int = 2048, E: GroupGenerator | None = None) -> float:
    """Lebesgue measure of {|P| < level} by midpoint-rule grid counting.

    The bounding box comes from points of the level set sampled along group
    orbits, padded by 2%.
    """
    if level <= 0:
        raise InputError("level must be positive")
    if not (check_abs_definite(P) if P.is_real else check_positive_definite(P.real_part())):
        raise GeometryError("|P| is not positive definite")
    E = _default_generator(P, E)
    if P.dim > 2:
        raise InputError("sublevel_volume supports d <= 2")
    dirs = _sphere_points(P.dim, 4096)
    pts, _ = _orbit_points(P, E, dirs, level)
    half = 1.02 * np.abs(pts).max(axis=0)
    h = 2 * half / resolution
    axes = [-half[k] + h[k] * (np.arange(resolution) + 0.5) for k in range(P.dim)]
    if P.dim == 1:
        inside = np.count_nonzero(np.abs(evaluate(P, axes[0][:, None])) < level)
        return float(inside * h[0])
    count = 0
    rows = max(1, (1 << 20) // resolution)
    yy = axes[1]
    for i in range(0, resolution, rows):
        xx = axes[0][i : i + rows]
        grid = np.stack(np.meshgrid(xx, yy, indexing="ij"), axis=-1)
        count += np.count_nonzero(np.abs(evaluate(P, grid)) < level)
    return float(count * h[0] * h[1])


@dataclass(frozen=True, eq=False)
class PolarChart:
    """Nodes on S = {|Q| = 1} with surface weights for the polar formula

    integral f = sum_j w_j * integral_0^inf f(r^E eta_j) r^(mu-1) dr.
    """

    generator: GroupGenerator
    nodes: np.ndarray
    weights_sigma: np.ndarray
    signs: np.ndarray = field(default=None)

    @property
    def mu(self) -> float:
        return self.generator.trace_order

    @property
    def sigma_total(self) -> float:
        return float(self.weights_sigma.sum())


def polar_chart(Q: WeightedPolynomial, E: GroupGenerator | None = None, nodes: int = 2048, *, check: bool = True) -> PolarChart:
    """Chart of S_{|Q|} along group orbits (d = 1 gives two points, d = 2 a curve).

    For a complex polynomial (P = R + iQ) the chart is built on S_R, using
    the real part as the level function.
    """
    E = _default_generator(Q, E)
    level_poly = Q if Q.is_real else Q.real_part()
    if check and not check_homogeneity(level_poly, E):
        raise GeometryError("generator is not in the symmetry exponents of the polynomial")
    if Q.is_real:
        if not check_abs_definite(level_poly):
            raise GeometryError("|Q| is not positive definite")
    elif not check_positive_definite(level_poly):
        raise GeometryError("real part is not positive definite")
    mu = E.trace_order
    if Q.dim == 1:
        dirs = np.array([[1.0], [-1.0]])
        pts, h = _orbit_points(level_poly, E, dirs)
        w = mu * np.abs(pts[:, 0])
    elif Q.dim == 2:
        if nodes < 8:
            raise InputError("need at least 8 chart nodes")
        th = 2 * np.pi * np.arange(nodes) / nodes
        dirs = np.stack([np.cos(th), np.sin(th)], axis=-1)
        tang = np.stack([-np.sin(th), np.cos(th)], axis=-1)
        pts, h = _orbit_points(level_poly, E, dirs)
        Ev = dirs @ E.matrix.T
        jac = Ev[:, 0] * tang[:, 1] - Ev[:, 1] * tang[:, 0]
        if np.any(jac <= 0):
            raise GeometryError("group orbits are not transversal to the unit circle for this generator")
        w = h ** (-mu) * jac * (2 * np.pi / nodes)
    else:
        raise InputError("polar charts are implemented for d <= 2")
    lv = np.real(evaluate(level_poly, pts))
    if np.max(np.abs(np.abs(lv) - 1.0)) > 1e-8:
        raise GeometryError("chart nodes are off the unital level set")
    signs = np.sign(lv)
    for a in (pts, w, signs):
        a.setflags(write=False)
    return PolarChart(E, pts, w, signs)


def chart_volume(Q: WeightedPolynomial, E: GroupGenerator | None = None, nodes: int = 2048) -> float:
    """m({|Q| < 1}) = sigma(S) / mu from the chart weights."""
    ch = polar_chart(Q, E, nodes)
    return ch.sigma_total / ch.mu
