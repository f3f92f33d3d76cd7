"""Attractors H_P and H_{iQ}: polar-chart quadrature and renormalized integrals.

All evaluations go through the polar formula

    H(y) = (2 pi)^-d  sum_j w_j  int_0^inf exp(-t a_j r - i sum_l c_jl r^e_l) r^(mu-1) dr,

with chart nodes eta_j on the unital level set, ``c_jl = y_l eta_jl`` and
``a_j = i sign Q(eta_j)`` (imaginary kind) or ``a_j = P(eta_j)`` (positive
kind, chart on S_R so Re a_j = 1).  Writing r = w^k, with k the common
denominator of the exponents, turns the radial integrand into an entire
function of w.  For the imaginary kind the ray is rotated into the decaying
half plane by an angle small enough that the y-dependent terms cannot grow
by more than exp(KAPPA) anywhere on the ray.

The generator must be diagonal: y . r^E eta splits into the powers r^e_l.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import integrate, special

from .errors import AccuracyError, HypothesisError, InputError
from .grouplie import GroupGenerator, is_contracting
from .homogeneous import (
    WeightedPolynomial,
    check_abs_definite,
    check_homogeneity,
    check_positive_definite,
    evaluate,
    polar_chart,
)

__all__ = [
    "AttractorSpec",
    "RenormResult",
    "attractor_positive",
    "attractor_imaginary",
    "attractor_grid",
    "renormalized_integral",
    "attractor_rect_product",
    "oned_oracle",
    "euler_transform",
    "vdc_bound",
]

KAPPA = 8.0
DECAY = 45.0
GL_ORDER = 16
_GL_X, _GL_W = np.polynomial.legendre.leggauss(GL_ORDER)


@dataclass(frozen=True, eq=False)
class AttractorSpec:
    """Data defining H_P (kind='positive', P = R + iQ) or H_{iQ} (kind='imaginary')."""

    kind: str
    Q: WeightedPolynomial
    R: WeightedPolynomial | None = None
    generator: GroupGenerator | None = None
    family: str = "sublevel"
    allow_divergent: bool = False

    def __post_init__(self):
        if self.kind not in ("positive", "imaginary"):
            raise InputError(f"unknown attractor kind {self.kind!r}")
        if self.family not in ("sublevel", "rectangular"):
            raise InputError(f"unknown approximating family {self.family!r}")
        if not self.Q.is_real:
            raise InputError("Q must have real coefficients")
        E = self.generator or self.Q.generator()
        object.__setattr__(self, "generator", E)
        if E.dim != self.dim:
            raise InputError("generator dimension does not match the polynomial")
        if not is_contracting(E):
            raise InputError("generator is not contracting")
        if self.kind == "positive":
            if self.R is None or not self.R.is_real:
                raise InputError("positive kind needs a real polynomial R")
            if not check_positive_definite(self.R):
                raise HypothesisError("R is not positive definite")
            if not check_homogeneity(self.R, E):
                raise InputError("R is not homogeneous with respect to the generator")
            if self.Q.terms and not check_homogeneity(self.Q, E):
                raise InputError("Q is not homogeneous with respect to the generator")
        else:
            if not self.Q.terms or not check_abs_definite(self.Q):
                raise HypothesisError("|Q| is not positive definite")
            if not check_homogeneity(self.Q, E):
                raise InputError("Q is not homogeneous with respect to the generator")
            if self.family == "sublevel" and self.mu >= 1 and not self.allow_divergent:
                raise HypothesisError(f"the sublevel renormalization needs mu < 1 (mu = {self.mu:g})")

    @property
    def dim(self) -> int:
        return self.Q.dim

    @property
    def mu(self) -> float:
        return self.generator.trace_order

    @property
    def P(self) -> WeightedPolynomial:
        if self.kind == "positive":
            return self.R + self.Q.scaled(1j)
        return self.Q.scaled(1j)

    @classmethod
    def from_classification(cls, pc, family: str = "sublevel") -> "AttractorSpec":
        if pc.kind == "positive_homogeneous":
            return cls("positive", pc.Q, pc.R, pc.generator, family)
        if pc.kind == "imaginary_homogeneous":
            return cls("imaginary", pc.Q, None, pc.generator, family)
        raise InputError("maximizer is unclassified")

    def to_json_obj(self) -> dict:
        return {
            "kind": self.kind,
            "Q": self.Q.to_json_obj(),
            "R": self.R.to_json_obj() if self.R is not None else None,
            "generator": self.generator.to_json_obj(),
            "family": self.family,
        }

    @classmethod
    def from_json_obj(cls, obj) -> "AttractorSpec":
        try:
            R = obj.get("R")
            gen = obj.get("generator")
            return cls(
                obj["kind"],
                WeightedPolynomial.from_json_obj(obj["Q"]),
                WeightedPolynomial.from_json_obj(R) if R else None,
                GroupGenerator.from_json_obj(gen) if gen else None,
                obj.get("family", "sublevel"),
                bool(obj.get("allow_divergent", False)),
            )
        except (KeyError, TypeError, AttributeError) as exc:
            raise InputError(f"malformed attractor spec: {exc}") from exc


@dataclass(frozen=True)
class RenormResult:
    value: complex
    tau_trace: tuple[tuple[float, complex], ...]
    cauchy_residuals: tuple[float, ...]
    converged: bool
    contour_value: complex | None = None
    reason: str = ""

    def to_json_obj(self) -> dict:
        return {
            "re": self.value.real,
            "im": self.value.imag,
            "converged": self.converged,
            "tau_trace": [[tau, v.real, v.imag] for tau, v in self.tau_trace],
            "cauchy_residuals": list(self.cauchy_residuals),
            "reason": self.reason,
        }


# --------------------------------------------------------------------------
# geometry shared by every evaluation


@dataclass(frozen=True, eq=False)
class _Geometry:
    exps: np.ndarray  # e_l
    powers: np.ndarray  # k * e_l (integers)
    k: int
    kmu: int
    nodes: np.ndarray  # (J, d)
    weights: np.ndarray  # (J,)
    a: np.ndarray  # (J,) complex rate: i*s_j or P(eta_j)
    rotate: bool
    signs: np.ndarray


def _denominator(e: float) -> int:
    fr = Fraction(e).limit_denominator(64)
    if abs(float(fr) - e) > 1e-12:
        raise InputError(f"generator entry {e} is not a rational with denominator <= 64")
    return fr.denominator


def _geometry(spec: AttractorSpec, nodes: int) -> _Geometry:
    E = spec.generator
    if not E.is_diagonal:
        raise InputError("attractor evaluation supports diagonal generators only")
    e = E.diag
    k = math.lcm(*(_denominator(v) for v in e))
    powers = np.rint(k * e).astype(int)
    kmu = int(powers.sum())
    if spec.kind == "imaginary":
        ch = polar_chart(spec.Q, E, nodes)
        a = 1j * ch.signs.astype(complex)
        rotate = True
    else:
        ch = polar_chart(spec.P, E, nodes)
        a = np.asarray(evaluate(spec.P, ch.nodes), dtype=complex)
        rotate = False
    return _Geometry(e, powers, k, kmu, np.asarray(ch.nodes), np.asarray(ch.weights_sigma), a, rotate, np.asarray(ch.signs))


def _rotation_angle(cmax: np.ndarray, exps: np.ndarray, t: float) -> float:
    """Largest angle <= pi/2 keeping the y-dependent growth below exp(KAPPA)."""
    rho = np.geomspace(1e-8, 1e10, 1200)
    G = -(2 / np.pi) * t * rho
    for c, e in zip(cmax, exps):
        G = G + c * e * rho**e
    gstar = max(float(G.max()), 0.0)
    if gstar * np.pi / 2 <= KAPPA:
        return np.pi / 2
    return KAPPA / gstar


def _panels(omega_max: float, k: int, phase_rate: float, cmax: np.ndarray, exps: np.ndarray, base_panels: int = 8):
    """GL nodes on [0, omega_max] with at most about pi of phase per panel."""
    rho_max = omega_max**k
    total = phase_rate * rho_max + float(np.sum(cmax * rho_max**exps))
    n_phase = int(np.ceil(total / np.pi))
    if n_phase > 200000:
        raise AccuracyError("radial integrand too oscillatory for the panel budget")
    uni = np.linspace(0.0, omega_max, base_panels + 1)
    if n_phase > 0:
        w = np.linspace(0.0, omega_max, 4096)
        r = w**k
        Phi = phase_rate * r + (cmax[None, :] * r[:, None] ** exps[None, :]).sum(axis=1)
        targets = np.pi * np.arange(1, n_phase)
        br = np.interp(targets, Phi, w)
        edges = np.unique(np.concatenate([uni, br]))
    else:
        edges = uni
    lo, hi = edges[:-1, None], edges[1:, None]
    om = ((hi - lo) / 2 * _GL_X + (hi + lo) / 2).ravel()
    wt = ((hi - lo) / 2 * _GL_W).ravel()
    return om, wt


def _node_factors(g: _Geometry, j: int, cmax: np.ndarray, t: float, upper: float | None = None):
    """Quadrature nodes (complex w) and base weights for chart node j.

    ``upper`` truncates the radial integral at r = upper along the real axis
    (no rotation), which gives the partial integrals over sublevel sets.
    """
    a = g.a[j]
    if upper is not None:
        z = 1.0
        omega_max = upper ** (1.0 / g.k)
        rate = t * abs(a)
    elif g.rotate:
        phi = _rotation_angle(cmax, g.exps, t)
        s = float(g.signs[j])
        z = np.exp(-1j * s * phi / g.k)
        omega_max = ((DECAY + KAPPA) / (t * np.sin(phi))) ** (1.0 / g.k)
        rate = t * np.cos(phi)
    else:
        z = 1.0
        omega_max = (DECAY / (t * a.real)) ** (1.0 / g.k)
        rate = t * abs(a.imag)
    om, wt = _panels(omega_max, g.k, rate, cmax, g.exps)
    wc = om * z
    base = g.k * wc ** (g.kmu - 1) * np.exp(-t * a * wc**g.k) * z * wt
    return wc, base


def _cmax(g: _Geometry, axes: Sequence[np.ndarray]) -> np.ndarray:
    ymax = np.array([np.abs(ax).max() if len(ax) else 0.0 for ax in axes])
    return np.abs(g.nodes) * ymax[None, :]


def _grid_sum(g: _Geometry, axes: Sequence[np.ndarray], t: float, upper: float | None = None) -> np.ndarray:
    """sum_j w_j J_j(y) on the tensor grid of ``axes`` (raw, no (2 pi)^-d)."""
    d = len(axes)
    shape = tuple(len(ax) for ax in axes)
    out = np.zeros(shape, dtype=complex)
    cm = _cmax(g, axes)
    for j in range(len(g.weights)):
        wc, base = _node_factors(g, j, cm[j], t, upper)
        F = [np.exp(-1j * np.outer(axes[l] * g.nodes[j, l], wc ** g.powers[l])) for l in range(d)]
        if d == 1:
            J = F[0] @ base
        elif d == 2:
            J = (F[0] * base[None, :]) @ F[1].T
        else:
            raise InputError("attractor evaluation supports d <= 2")
        out += g.weights[j] * J
    return out


def _tail_sum(g: _Geometry, y: np.ndarray, tau: float, t: float) -> complex:
    """Contour integral from r = tau to infinity along a ray tilted into decay."""
    total = 0j
    cm = np.abs(g.nodes) * np.abs(y)[None, :]
    for j in range(len(g.weights)):
        c = g.nodes[j] * y
        s = float(g.signs[j])
        phi = _rotation_angle(cm[j], g.exps, t)
        dirn = np.exp(-1j * s * phi)
        rho_max = (DECAY + KAPPA) / (t * np.sin(phi))
        rate = t * np.cos(phi) + float(np.sum(cm[j] * g.exps * tau ** (g.exps - 1)))
        npan = int(min(max(np.ceil(rho_max * rate / np.pi), 8), 200000))
        edges = np.linspace(0.0, rho_max, npan + 1)
        lo, hi = edges[:-1, None], edges[1:, None]
        rho = ((hi - lo) / 2 * _GL_X + (hi + lo) / 2).ravel()
        wt = ((hi - lo) / 2 * _GL_W).ravel()
        r = tau + rho * dirn
        ph = t * g.a[j] * r
        for l in range(len(c)):
            ph = ph + 1j * c[l] * r ** g.exps[l]
        f = np.exp(-ph) * r ** (g.kmu / g.k - 1) * dirn
        total += g.weights[j] * (f @ wt)
    return complex(total)


_GEOM_CACHE: dict = {}


def _geometry_cached(spec: AttractorSpec, nodes: int) -> _Geometry:
    key = (id(spec), nodes)
    hit = _GEOM_CACHE.get(key)
    if hit is not None and hit[0] is spec:
        return hit[1]
    g = _geometry(spec, nodes)
    if len(_GEOM_CACHE) > 64:
        _GEOM_CACHE.clear()
    _GEOM_CACHE[key] = (spec, g)
    return g


def _choose_nodes(spec: AttractorSpec, axes: Sequence[np.ndarray], t: float, rtol: float = 1e-10, start: int = 256, cap: int = 8192) -> int:
    """Double the chart size until the extreme corners of the window agree."""
    if spec.dim == 1:
        return 2
    corners = [np.array([ax.min(), ax.max()]) if len(ax) else np.zeros(1) for ax in axes]
    n = start
    prev = _grid_sum(_geometry_cached(spec, n), corners, t)
    while n < cap:
        n *= 2
        cur = _grid_sum(_geometry_cached(spec, n), corners, t)
        if np.max(np.abs(cur - prev)) <= rtol * (1 + np.max(np.abs(cur))):
            return n
        prev = cur
    raise AccuracyError(f"chart resolution did not settle below {cap} nodes")


def _reduce(spec: AttractorSpec, t: float, x: np.ndarray) -> tuple[np.ndarray, float]:
    """H^t(x) = t^-mu H^1(t^-E* x); returns (t^-E* x, t^-mu)."""
    if not t > 0:
        raise InputError("t must be positive")
    e = spec.generator.diag
    return x * t ** (-e), t ** (-spec.mu)


def attractor_grid(spec: AttractorSpec, t: float, axes: Sequence[Sequence[float]], *, reduce_time: bool = True, nodes: int | None = None) -> np.ndarray:
    """H^t on the tensor grid axes[0] x axes[1] x ... (contour evaluation)."""
    if spec.kind == "imaginary" and spec.family == "rectangular":
        axes = [np.asarray(a, dtype=float) for a in axes]
        facs = _separable_factors(spec)
        vals = [np.array([_oned_attractor(f, t, v) for v in ax]) for f, ax in zip(facs, axes)]
        out = vals[0]
        for v in vals[1:]:
            out = np.multiply.outer(out, v)
        return out
    if spec.kind == "imaginary" and spec.mu >= 1:
        raise HypothesisError("H_iQ by the sublevel family needs mu < 1")
    t = float(t)
    if not t > 0:
        raise InputError("t must be positive")
    axes = [np.asarray(a, dtype=float).ravel() for a in axes]
    if len(axes) != spec.dim:
        raise InputError("number of axes does not match the dimension")
    scale = 1.0
    if reduce_time:
        e = spec.generator.diag
        axes = [ax * t ** (-e[l]) for l, ax in enumerate(axes)]
        scale = t ** (-spec.mu)
        t = 1.0
    n = nodes or _choose_nodes(spec, axes, t)
    g = _geometry_cached(spec, n)
    return scale * _grid_sum(g, axes, t) / (2 * np.pi) ** spec.dim


def _points_eval(spec: AttractorSpec, t: float, x, reduce_time: bool) -> complex:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != (spec.dim,):
        raise InputError("point dimension does not match the attractor")
    return complex(attractor_grid(spec, t, [[v] for v in x], reduce_time=reduce_time).ravel()[0])


def attractor_positive(spec: AttractorSpec, t: float, x, *, reduce_time: bool = True) -> complex:
    if spec.kind != "positive":
        raise InputError("attractor_positive needs a positive-kind spec")
    return _points_eval(spec, t, x, reduce_time)


def renormalized_integral(spec: AttractorSpec, y, tol: float = 1e-6, t: float = 1.0, max_shells: int = 12, nodes: int | None = None) -> RenormResult:
    """Limit of the integrals of exp(-itQ - iy.xi) over O_tau = {|Q| < tau} (raw units).

    The trace holds the partial integrals S_j at tau_j = 2^j.  For mu < 1
    each S_j is completed by the contour tail T_j from tau_j to infinity, and
    the Cauchy residuals are the moduli of successive differences of S_j + T_j.
    For mu >= 1 (override only) the residuals are the raw shell increments.
    """
    if spec.kind != "imaginary":
        raise InputError("renormalized integrals are for the imaginary kind")
    y = np.atleast_1d(np.asarray(y, dtype=float))
    divergent = spec.mu >= 1
    if divergent and not spec.allow_divergent:
        raise HypothesisError(f"the sublevel renormalization needs mu < 1 (mu = {spec.mu:g})")
    axes = [np.array([v]) for v in y]
    n = nodes or (2 if spec.dim == 1 else _choose_nodes(spec, axes, t) if not divergent else 1024)
    g = _geometry_cached(spec, n)
    trace: list[tuple[float, complex]] = []
    completed: list[complex] = []
    residuals: list[float] = []
    contour = None if divergent else complex(_grid_sum(g, axes, t).ravel()[0])
    for j in range(max_shells):
        tau = 2.0**j
        S = complex(_grid_sum(g, axes, t, upper=tau).ravel()[0])
        trace.append((tau, S))
        A = S if divergent else S + _tail_sum(g, y, tau, t)
        if completed:
            residuals.append(abs(A - completed[-1]))
        completed.append(A)
        if len(residuals) >= 3 and max(residuals[-3:]) < tol and not divergent:
            break
    ok = len(residuals) >= 3 and max(residuals[-3:]) < tol
    reason = ""
    if divergent:
        ok = ok and False
        reason = f"mu = {spec.mu:g} >= 1: shell increments do not decay"
    elif not ok:
        reason = "Cauchy residuals did not fall below tol"
    elif abs(completed[-1] - contour) > max(tol, 1e-9) * (1 + abs(contour)):
        ok = False
        reason = "completed partial integrals disagree with the direct contour value"
    value = completed[-1]
    return RenormResult(value, tuple(trace), tuple(residuals), ok, contour, reason)


def attractor_imaginary(spec: AttractorSpec, t: float, x, tol: float = 1e-6, *, reduce_time: bool = True, max_shells: int = 12) -> RenormResult:
    """H_{iQ}^t(x) as a renormalized integral, reported in attractor units."""
    if spec.kind != "imaginary":
        raise InputError("attractor_imaginary needs an imaginary-kind spec")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != (spec.dim,):
        raise InputError("point dimension does not match the attractor")
    if spec.family == "rectangular":
        v = attractor_rect_product(spec, t, x)
        return RenormResult(v, (), (), True, v, "rectangular family: product of one-dimensional attractors")
    t = float(t)
    if not t > 0:
        raise InputError("t must be positive")
    c = (2 * np.pi) ** (-spec.dim)
    if reduce_time:
        y, scale = _reduce(spec, t, x)
        res = renormalized_integral(spec, y, tol / (c * scale), 1.0, max_shells)
    else:
        scale = 1.0
        res = renormalized_integral(spec, x, tol / c, t, max_shells)
    f = c * scale
    return RenormResult(
        f * res.value,
        tuple((tau, f * v) for tau, v in res.tau_trace),
        tuple(f * r for r in res.cauchy_residuals),
        res.converged,
        None if res.contour_value is None else f * res.contour_value,
        res.reason,
    )


# --------------------------------------------------------------------------
# separable (rectangular family) attractors and one-dimensional oracles


def _separable_factors(spec: AttractorSpec) -> list[tuple[int, complex]]:
    """Per-axis (m, beta) with Q(xi) = sum_l beta_l xi_l^m_l."""
    facs = []
    for l in range(spec.dim):
        own = [(b, a) for b, a in spec.Q.terms.items() if b[l] and sum(b) == b[l]]
        if len(own) != 1:
            raise InputError("Q is not a sum of one monomial per axis")
        facs.append((own[0][0][l], own[0][1]))
    if sum(1 for _ in spec.Q.terms) != spec.dim:
        raise InputError("Q has mixed terms; the rectangular family needs a separable Q")
    return facs


def _oned_attractor(fac: tuple[int, complex], t: float, x: float) -> complex:
    m, q = fac
    return oned_oracle(m, 1j * q.real, t, x)


def attractor_rect_product(spec, t: float, x) -> complex:
    """Product of one-dimensional imaginary attractors for a separable Q.

    ``spec`` is an AttractorSpec with separable Q, or a sequence of (m, q)
    pairs meaning Q(xi) = sum q_l xi_l^m_l.
    """
    if isinstance(spec, AttractorSpec):
        if spec.kind != "imaginary":
            raise InputError("rectangular products are defined for the imaginary kind")
        facs = _separable_factors(spec)
    else:
        facs = [(int(m), complex(q)) for m, q in spec]
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if len(x) != len(facs):
        raise InputError("point dimension does not match the number of factors")
    out = 1 + 0j
    for fac, v in zip(facs, x):
        out *= _oned_attractor(fac, t, float(v))
    return out


def euler_transform(partial_sums: Sequence[complex], depth: int | None = None) -> complex:
    """Iterated averaging of consecutive partial sums (Euler's transformation)."""
    s = np.asarray(partial_sums, dtype=complex)
    if s.size == 0:
        raise InputError("no partial sums")
    depth = s.size - 1 if depth is None else min(depth, s.size - 1)
    for _ in range(depth):
        s = 0.5 * (s[:-1] + s[1:])
    return complex(s[-1])


def _oned_rotated(m: int, q: float, t: float, x: float) -> complex:
    """(1/pi) int_0^inf exp(-i t q xi^m) cos(x xi) d xi on the ray of steepest decay."""
    th = np.pi / (2 * m) * np.sign(q)
    z = np.exp(-1j * th)
    a = t * abs(q)
    top = (60.0 / a) ** (1.0 / m)
    npan = int(max(64, np.ceil(abs(x) * top / 2)))
    edges = np.linspace(0.0, top, npan + 1)
    gx, gw = np.polynomial.legendre.leggauss(24)
    lo, hi = edges[:-1, None], edges[1:, None]
    rho = ((hi - lo) / 2 * gx + (hi + lo) / 2).ravel()
    w = ((hi - lo) / 2 * gw).ravel()
    v = np.exp(-a * rho**m) * np.cos(x * rho * z) * z
    return complex(v @ w) / np.pi


def _oned_euler(m: int, q: float, t: float, x: float, chunks: int = 60) -> complex:
    """Real-axis integral cut where the phase t q xi^m advances by pi, Euler-accelerated."""
    a = t * abs(q)
    edges = (np.pi * np.arange(0, 40 + chunks) / a) ** (1.0 / m)
    lo, hi = edges[:-1, None], edges[1:, None]
    gx, gw = np.polynomial.legendre.leggauss(48)
    xi = ((hi - lo) / 2 * gx + (hi + lo) / 2)
    w = (hi - lo) / 2 * gw
    vals = (np.exp(-1j * t * q * xi**m) * np.cos(x * xi) * w).sum(axis=1)
    partial = np.cumsum(vals)
    return euler_transform(partial[39:], depth=chunks - 1) / np.pi


def _oned_trapezoid(m: int, beta: complex, t: float, x: float) -> complex:
    """Uniform trapezoid in xi for Re beta > 0; aliasing error ~ |H(x +- 2 pi / h)|."""
    a = t * beta.real
    top = (50.0 / a) ** (1.0 / m)
    n = 1 << 14
    xi, h = np.linspace(-top, top, 2 * n + 1, retstep=True)
    v = np.exp(-t * beta * xi**m - 1j * x * xi)
    return complex(h * v.sum() / (2 * np.pi))


def _oned_qawo(m: int, beta: complex, t: float, x: float) -> complex:
    top = (50.0 / (t * beta.real)) ** (1.0 / m)

    def part(k):
        g = lambda u: (np.exp(-t * beta * u**m)).real if k == 0 else (np.exp(-t * beta * u**m)).imag
        return integrate.quad(g, 0, top, weight="cos", wvar=abs(x), epsabs=1e-15, limit=400)[0]

    return complex(part(0), part(1)) / np.pi


def oned_oracle(m: int, beta: complex, t: float, x: float, route: str = "primary") -> complex:
    """H_{m,beta}^t(x) = (1/2pi) int exp(-t beta xi^m - i x xi) d xi on R.

    Closed forms for m = 2 and for m = 3 with imaginary beta (Airy).  Other
    cases use numerical quadrature; ``route='alternate'`` selects an
    independent second scheme for cross-checking.
    """
    beta = complex(beta)
    m = int(m)
    t = float(t)
    if not t > 0:
        raise InputError("t must be positive")
    if beta == 0 or beta.real < 0:
        raise InputError("need Re(beta) > 0, or Re(beta) = 0 with beta != 0")
    if m < 2:
        raise InputError("m must be at least 2")
    if beta.real > 0 and m % 2:
        raise InputError("odd m requires purely imaginary beta")
    if route not in ("primary", "alternate"):
        raise InputError("route must be 'primary' or 'alternate'")
    x = float(x)
    if m == 2:
        z = 4 * np.pi * beta * t
        return complex(np.exp(-x * x / (4 * beta * t)) / np.sqrt(z))
    if beta.real == 0:
        q = beta.imag
        if m == 3:
            c = (3 * abs(q) * t) ** (1 / 3)
            z = x / c if q > 0 else -x / c
            return complex(special.airy(z)[0] / c)
        if m % 2:
            raise InputError("odd m > 3 with imaginary beta is not supported")
        return _oned_rotated(m, q, t, x) if route == "primary" else _oned_euler(m, q, t, x)
    return _oned_trapezoid(m, beta, t, x) if route == "primary" else _oned_qawo(m, beta, t, x)


def vdc_bound(lam: float, g_sup: float, g_prime_l1: float) -> float:
    """Van der Corput bound 4(||g||_inf + ||g'||_1)/lambda for |int e^{-if} g| when |f'| >= lambda, f' monotone."""
    if not lam > 0:
        raise InputError("lambda must be positive")
    return 4.0 * (g_sup + g_prime_l1) / lam
