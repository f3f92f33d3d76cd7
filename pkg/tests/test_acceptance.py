"""Acceptance suite: one PASS/FAIL line per criterion in the terminal summary."""

import time
from math import gamma

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from test_grouplie import random_generator

from convpow.attractors import (
    AttractorSpec,
    attractor_grid,
    attractor_imaginary,
    renormalized_integral,
)
from convpow.fixtures import FIXTURES, complex_heat_1d
from convpow.grouplie import group_power, is_contracting, norm_growth_ratio
from convpow.homogeneous import WeightedPolynomial, sublevel_volume
from convpow.lattice import max_abs_difference, power, tensor
from convpow.llt import llt_error_curve, supnorm_fit
from convpow.spectrum import analyze, gamma_series

PI = np.pi


def report(label, ok, seconds, limit, detail):
    ok = bool(ok) and seconds < limit
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}: {detail} [{seconds:.2f} s, limit {limit:g} s]")
    return ok


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


def test_c01_quartic_series():
    with Timer() as tm:
        s = gamma_series(FIXTURES["quartic_1d"](), [0.0], 8)
        c2, c3, c4 = (s.coefficient((k,)) for k in (2, 3, 4))
    ok = abs(c4 + 1 / 12) < 1e-9 and abs(c2) < 1e-9 and abs(c3) < 1e-9
    assert report("C1 quartic_1d series", ok, tm.seconds, 1, f"xi^4 coeff {c4.real:.15f}, |xi^2| {abs(c2):.1e}, |xi^3| {abs(c3):.1e}")


def test_c02_complex_heat_series():
    with Timer() as tm:
        s = gamma_series(FIXTURES["complex_heat_1d"](), [0.0], 8)
        c2, c4 = s.coefficient((2,)), s.coefficient((4,))
    ok = abs(c2 + 1j / 8) < 1e-9 and abs(c4 + (13 / 384 - 1j / 96)) < 1e-9
    assert report("C2 complex_heat_1d series", ok, tm.seconds, 1, f"xi^2 {c2:.12g}, xi^4 {c4:.12g}")


def test_c03_anisotropic_classification():
    with Timer() as tm:
        a = analyze(FIXTURES["anisotropic_2d"]())
    (p,) = a.maximizers
    want = {(2, 0): 4 / 96, (1, 2): -1 / 96, (0, 4): 1 / 96}
    got = {b: v.real for b, v in p.Q.terms.items()}
    ok = (
        p.kind == "imaginary_homogeneous"
        and p.weights2m == (2, 4)
        and abs(p.mu - 0.75) < 1e-12
        and np.all(p.drift == 0)
        and set(got) == set(want)
        and all(abs(got[b] - v) < 1e-9 for b, v in want.items())
    )
    assert report("C3 anisotropic_2d classification", ok, tm.seconds, 5, f"kind {p.kind}, 2m {p.weights2m}, mu {p.mu}, Q*96 {[round(got[b] * 96, 9) for b in want]}")


def test_c04_two_point_analysis():
    with Timer() as tm:
        a = analyze(FIXTURES["two_point_2d"]())
    pts = [np.mod(np.array(p.xi0) + 1e-12, 2 * PI) for p in a.maximizers]
    pts = [np.where(v > 2 * PI - 1e-6, v - 2 * PI, v) for v in pts]
    located = len(pts) == 2 and np.abs(pts[0]).max() < 1e-6 and np.abs(pts[1] - PI).max() < 1e-6
    mus = [p.mu for p in a.maximizers]
    ok = located and abs(mus[0] - 2 / 3) < 1e-12 and abs(mus[1] - 1) < 1e-12 and abs(a.mu_phi - 2 / 3) < 1e-12
    assert report("C4 two_point_2d analysis", ok, tm.seconds, 10, f"points {[p.xi0 for p in a.maximizers]}, mu {mus}, mu_phi {a.mu_phi:.6f}")


def test_c05_origin_formula():
    with Timer() as tm:
        rows = []
        heat = WeightedPolynomial(1, (2,), {(2,): 1 / 8})
        aniso = WeightedPolynomial(2, (2, 4), {(2, 0): 4 / 96, (1, 2): -1 / 96, (0, 4): 1 / 96})
        for Q in (heat, aniso):
            spec = AttractorSpec("imaginary", Q)
            d, mu = Q.dim, spec.mu
            res = attractor_imaginary(spec, 1.0, [0.0] * d)
            vol = sublevel_volume(Q, resolution=1 << 16 if d == 1 else 2048)
            formula = vol * gamma(1 + mu) * np.cos(mu * PI / 2) / (2 * PI) ** d
            rows.append((res.value.real, formula, res.converged))
        closed = np.cos(PI / 4) / np.sqrt(PI / 2)
    ok = all(c and abs(v - f) < 0.01 * abs(f) for v, f, c in rows) and abs(rows[0][0] - closed) < 1e-6
    detail = ", ".join(f"d={k + 1}: {v:.7f} vs {f:.7f}" for k, (v, f, _) in enumerate(rows)) + f", heat closed form {closed:.7f}"
    assert report("C5 origin formula", ok, tm.seconds, 30, detail)


def test_c06_scaling_identities():
    with Timer() as tm:
        R = WeightedPolynomial(2, (4, 4), {(4, 0): 0.5, (0, 4): 0.5})
        Qp = WeightedPolynomial(2, (4, 4), {(4, 0): 0.375, (0, 4): 0.375})
        positive = AttractorSpec("positive", Qp, R)
        imaginary = AttractorSpec("imaginary", WeightedPolynomial(2, (2, 4), {(2, 0): 4 / 96, (1, 2): -1 / 96, (0, 4): 1 / 96}))
        axes = [np.linspace(-2, 2, 5), np.linspace(-2, 2, 5)]
        worst = {"positive": 0.0, "imaginary": 0.0}
        for t in (0.25, 4.0, 16.0):
            for name, spec in (("positive", positive), ("imaginary", imaginary)):
                direct = attractor_grid(spec, t, axes, reduce_time=False)
                reduced = attractor_grid(spec, t, axes, reduce_time=True)
                worst[name] = max(worst[name], float(np.abs(direct - reduced).max()))
    ok = worst["positive"] <= 1e-6 and worst["imaginary"] <= 1e-4
    assert report("C6 scaling identities", ok, tm.seconds, 60, f"max deviation positive {worst['positive']:.2e}, imaginary {worst['imaginary']:.2e}")


def _isotropic_shells(q=1.0):
    Q = WeightedPolynomial(2, (2, 2), {(2, 0): q, (0, 2): q})
    spec = AttractorSpec("imaginary", Q, allow_divergent=True)
    r = renormalized_integral(spec, [0.0, 0.0], t=1.0, max_shells=8)
    taus = [tau for tau, _ in r.tau_trace]
    incs = np.diff([S for _, S in r.tau_trace])
    return r, taus, incs


@pytest.mark.xfail(
    strict=True,
    reason="the e^{+i tau} shell form has the wrong sign in the exponent; "
    "integrating exp(-i q |xi|^2) over an annulus gives exp(-i tau), see test_c07_counterexample",
)
def test_c07_counterexample_plus_sign_form():
    with Timer() as tm:
        r, taus, incs = _isotropic_shells()
        plus = np.array([PI * 1j * (np.exp(1j * b) - np.exp(1j * a)) for a, b in zip(taus, taus[1:])])
        err = float(np.abs(incs - plus).max())
    ok = err < 1e-6 and not r.converged
    report("C7 counterexample, shells vs the e^{+i tau} form (pi i/q)(e^{i tau2} - e^{i tau1})", ok, tm.seconds, 10, f"max shell error {err:.3f}; expected failure, formula sign is wrong")
    assert ok


def test_c07_counterexample():
    with Timer() as tm:
        errs = []
        for q in (1.0, 1 / 8):
            r, taus, incs = _isotropic_shells(q)
            exact = np.array([PI * 1j / q * (np.exp(-1j * b) - np.exp(-1j * a)) for a, b in zip(taus, taus[1:])])
            errs.append((float(np.abs(incs - exact).max()), r.converged))
        rect = AttractorSpec("imaginary", WeightedPolynomial(2, (2, 2), {(2, 0): 1.0, (0, 2): 1.0}), family="rectangular")
        heat = lambda x: np.exp(-x * x / 4j) / np.sqrt(4j * PI)
        rect_err = max(abs(attractor_imaginary(rect, 1.0, x).value - heat(x[0]) * heat(x[1])) for x in ([0.0, 0.0], [1.0, -0.5], [2.0, 3.0]))
    ok = all(e < 1e-6 and not c for e, c in errs) and rect_err < 1e-6
    detail = f"shells vs (pi i/q)(e^{{-i tau2}} - e^{{-i tau1}}): max error {max(e for e, _ in errs):.1e}, converged=false; rectangular product error {rect_err:.1e}"
    assert report("C7 counterexample, corrected shell formula", ok, tm.seconds, 10, detail)


LLT_CASES = [
    ("quartic_1d", None, (100, 300, 600, 1000)),
    ("complex_heat_1d", 1.0, (100, 300, 600, 1000)),
    ("anisotropic_2d", 1.0, (250, 500, 1000, 2000)),
]


def test_c08_llt_decay():
    with Timer() as tm:
        rows = []
        for name, K, ns in LLT_CASES:
            rep = llt_error_curve(analyze(FIXTURES[name]()), K, ns)
            s = np.array(rep.scaled_errors)
            rows.append((name, s, bool(np.all(np.diff(s) < 0) and s[-1] < 0.5 * s[0])))
    ok = all(r[2] for r in rows)
    detail = "; ".join(f"{n} {np.round(s, 4).tolist()} (last/first {s[-1] / s[0]:.3f})" for n, s, _ in rows)
    assert report("C8 local limit decay (K = [-1,1]^d, full support for quartic_1d)", ok, tm.seconds, 600, detail)


@pytest.mark.slow
def test_c08_wide_window_diagnostics():
    """K = [-3,3]^d is still pre-asymptotic on these ladders; recorded, not asserted."""
    for name, _, ns in LLT_CASES[1:]:
        with Timer() as tm:
            rep = llt_error_curve(analyze(FIXTURES[name]()), 3.0, ns)
        s = np.array(rep.scaled_errors)
        ACCEPTANCE_LINES.append(f"INFO  C8 diagnostic {name} with K = [-3,3]^d: {np.round(s, 4).tolist()} (last/first {s[-1] / s[0]:.3f}) [{tm.seconds:.1f} s]")


SUPNORM_CASES = [
    ("quartic_1d", 0.25, (100, 300, 600, 1000)),
    ("complex_heat_1d", 0.5, (100, 300, 600, 1000)),
    ("anisotropic_2d", 0.75, (250, 500, 1000, 2000)),
    ("mixed_sum_2d", 0.5, (250, 500, 1000, 2000)),
]


def test_c09_supnorm_exponents():
    with Timer() as tm:
        rows = []
        for name, mu, ns in SUPNORM_CASES:
            fit = supnorm_fit(FIXTURES[name](), ns)
            rows.append((name, mu, fit.slope, fit.ratio(mu)))
    ok = all(abs(slope + mu) <= 0.1 and ratio <= 10 for _, mu, slope, ratio in rows)
    detail = "; ".join(f"{n} slope {s:.4f} (want {-mu:g}), ratio {r:.3f}" for n, mu, s, r in rows)
    assert report("C9 sup-norm exponents", ok, tm.seconds, 600, detail)


def test_c10_tensor_oracle():
    with Timer() as tm:
        psi = complex_heat_1d()
        errs = []
        for n in (10, 50):
            errs.append(max_abs_difference(power(tensor(psi, psi), n), tensor(power(psi, n), power(psi, n))))
        a = analyze(psi).maximizers[0]
        spec = AttractorSpec("imaginary", WeightedPolynomial(2, (2, 2), {(2, 0): a.Q.terms[(2,)].real, (0, 2): a.Q.terms[(2,)].real}), family="rectangular")
        q = a.Q.terms[(2,)].real
        closed = lambda t, x: np.exp(-x * x / (4j * q * t)) / np.sqrt(4j * PI * q * t)
        rect_err = 0.0
        for t, x in ((1.0, [0.0, 0.0]), (50.0, [3.0, -7.0]), (10.0, [-1.0, 2.0])):
            v = attractor_imaginary(spec, t, x).value
            rect_err = max(rect_err, abs(v - closed(t, x[0]) * closed(t, x[1])))
    ok = max(errs) <= 1e-12 and rect_err < 1e-6
    assert report("C10 tensor oracle", ok, tm.seconds, 60, f"power identity errors {[f'{e:.1e}' for e in errs]}, rectangular attractor error {rect_err:.1e}")


def test_c11_group_law_suite(analyses):
    fixture_gens = []
    for name in ("quartic_1d", "complex_heat_1d", "anisotropic_2d", "two_point_2d", "mixed_sum_2d"):
        fixture_gens += [p.generator for p in analyses(name).maximizers if p.generator is not None]
    with Timer() as tm:
        gens = [random_generator(np.random.default_rng(seed)) for seed in range(20)] + fixture_gens
        failures = []
        for k, E in enumerate(gens):
            s, t = 0.37, 5.3
            det_ok = abs(np.linalg.det(group_power(E, t)) - t**E.trace_order) < 1e-10 * t**E.trace_order
            law_ok = np.allclose(group_power(E, s * t), group_power(E, s) @ group_power(E, t), rtol=1e-10, atol=1e-12)
            lim_ok = is_contracting(E) and np.linalg.norm(group_power(E, 1e-200)) < 1e-4 and np.linalg.norm(group_power(E, 1e200)) > 1e4
            ratios = [norm_growth_ratio(E, r) for r in (1e2, 1e4, 1e6, 1e8)]
            growth_ok = all(b < a for a, b in zip(ratios, ratios[1:])) and ratios[-1] < 1e-2
            if not (det_ok and law_ok and lim_ok and growth_ok):
                failures.append(k)
    assert report("C11 group-law suite", not failures, tm.seconds, 5, f"{len(gens)} generators (20 seeded + {len(gens) - 20} from fixtures), failures {failures}")
