from math import gamma

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate, special

from convpow.attractors import (
    AttractorSpec,
    attractor_grid,
    attractor_imaginary,
    attractor_positive,
    attractor_rect_product,
    euler_transform,
    oned_oracle,
    renormalized_integral,
    vdc_bound,
)
from convpow.errors import HypothesisError, InputError
from convpow.homogeneous import WeightedPolynomial, sublevel_volume

HEAT_ORIGIN_RE = np.cos(np.pi / 4) / np.sqrt(np.pi / 2)


def heat_q(q=1 / 8):
    return WeightedPolynomial(1, (2,), {(2,): q})


def anisotropic_q():
    return WeightedPolynomial(2, (2, 4), {(2, 0): 4 / 96, (1, 2): -1 / 96, (0, 4): 1 / 96})


def iso_q(q=1.0):
    return WeightedPolynomial(2, (2, 2), {(2, 0): q, (0, 2): q})


def mixed_positive():
    R = WeightedPolynomial(2, (4, 4), {(4, 0): 0.5, (0, 4): 0.5})
    Q = WeightedPolynomial(2, (4, 4), {(4, 0): 0.375, (0, 4): 0.375})
    return AttractorSpec("positive", Q, R)


def heat_closed(q, t, x):
    return np.exp(-x * x / (4j * q * t)) / np.sqrt(4j * np.pi * q * t)


# ---------------------------------------------------------------- specs


def test_spec_validation():
    with pytest.raises(HypothesisError):
        AttractorSpec("imaginary", iso_q())
    with pytest.raises(HypothesisError):
        AttractorSpec("positive", WeightedPolynomial(1, (2,), {}), WeightedPolynomial(1, (2,), {(2,): -1.0}))
    with pytest.raises(InputError):
        AttractorSpec("imaginary", heat_q().scaled(1j))
    with pytest.raises(InputError):
        AttractorSpec("sideways", heat_q())
    spec = AttractorSpec("imaginary", anisotropic_q())
    assert spec.mu == pytest.approx(0.75)
    back = AttractorSpec.from_json_obj(spec.to_json_obj())
    assert back.Q.terms == spec.Q.terms and back.kind == "imaginary"


# ---------------------------------------------------------------- positive kind


def test_gaussian_origin():
    spec = AttractorSpec("positive", WeightedPolynomial(1, (2,), {}), WeightedPolynomial(1, (2,), {(2,): 1.0}))
    assert attractor_positive(spec, 1.0, [0.0]) == pytest.approx(1 / np.sqrt(4 * np.pi), abs=1e-12)


def test_quartic_positive_against_frozen(derived):
    spec = AttractorSpec("positive", WeightedPolynomial(1, (4,), {}), WeightedPolynomial(1, (4,), {(4,): 1 / 12}))
    assert attractor_positive(spec, 1.0, [0.0]).real == pytest.approx(derived["quartic_positive_origin_closed"], abs=1e-10)
    for x, v in derived["quartic_positive_at"].items():
        got = attractor_positive(spec, 1.0, [float(x)])
        assert got.real == pytest.approx(v, abs=1e-9)
        assert abs(got.imag) < 1e-12


def test_mixed_positive_against_dense_grid(derived):
    spec = mixed_positive()
    ref = derived["mixed_positive_grid"]
    for x, (re, im) in zip(ref["points"], ref["values"]):
        assert attractor_positive(spec, 1.0, x) == pytest.approx(complex(re, im), abs=1e-8)


@pytest.mark.parametrize("t", [0.25, 4.0, 16.0])
def test_positive_scaling(t):
    spec = mixed_positive()
    axes = [np.linspace(-3, 3, 7), np.linspace(-2, 2, 5)]
    direct = attractor_grid(spec, t, axes, reduce_time=False)
    reduced = attractor_grid(spec, t, axes, reduce_time=True)
    assert np.abs(direct - reduced).max() <= 1e-6 * (1 + np.abs(reduced).max())


def test_positive_bound():
    spec = mixed_positive()
    vol = sublevel_volume(spec.R, resolution=1024)
    rng = np.random.default_rng(42)
    for t in (0.5, 1.0, 3.0):
        bound = t ** (-spec.mu) * vol * gamma(spec.mu + 1) / (2 * np.pi) ** 2
        axes = [rng.uniform(-4, 4, 6), rng.uniform(-4, 4, 6)]
        assert np.abs(attractor_grid(spec, t, axes)).max() <= bound + 1e-9


# ---------------------------------------------------------------- imaginary kind


def test_heat_kernel_origin():
    r = attractor_imaginary(AttractorSpec("imaginary", heat_q()), 1.0, [0.0])
    assert r.converged
    assert r.value == pytest.approx(1 / np.sqrt(4j * np.pi / 8), abs=1e-6)
    assert r.value.real == pytest.approx(HEAT_ORIGIN_RE, abs=1e-6)


@pytest.mark.parametrize("x", [-3.0, -0.5, 1.0, 4.0])
def test_heat_kernel_matches_closed_form(x):
    for t in (0.5, 2.0):
        r = attractor_imaginary(AttractorSpec("imaginary", heat_q()), t, [x])
        assert r.value == pytest.approx(heat_closed(1 / 8, t, x), abs=1e-6)


def test_origin_formula_anisotropic(derived):
    spec = AttractorSpec("imaginary", anisotropic_q())
    mu = spec.mu
    want = derived["anisotropic_sublevel_area_grid4096"] * gamma(1 + mu) * np.exp(-1j * mu * np.pi / 2) / (2 * np.pi) ** 2
    r = attractor_imaginary(spec, 1.0, [0.0, 0.0])
    assert r.converged
    assert r.value == pytest.approx(want, rel=5e-5)


def test_renormalization_trace_converges():
    spec = AttractorSpec("imaginary", anisotropic_q())
    r = attractor_imaginary(spec, 1.0, [1.0, -0.5], tol=1e-7)
    assert r.converged
    assert len(r.cauchy_residuals) >= 3 and max(r.cauchy_residuals[-3:]) < 1e-7
    assert r.value == pytest.approx(r.contour_value, abs=1e-7)
    taus = [tau for tau, _ in r.tau_trace]
    assert taus == [2.0**j for j in range(len(taus))]


@pytest.mark.parametrize("t", [0.25, 4.0, 16.0])
def test_imaginary_scaling(t):
    spec = AttractorSpec("imaginary", anisotropic_q())
    for x in ([0.0, 0.0], [1.5, -1.0]):
        a = attractor_imaginary(spec, t, x, reduce_time=False).value
        b = attractor_imaginary(spec, t, x, reduce_time=True).value
        assert abs(a - b) <= 1e-6 * (1 + abs(b))


@pytest.mark.parametrize("t", [0.25, 4.0, 16.0])
def test_imaginary_grid_scaling(t):
    spec = AttractorSpec("imaginary", anisotropic_q())
    axes = [np.linspace(-2, 2, 5), np.linspace(-2, 2, 5)]
    a = attractor_grid(spec, t, axes, reduce_time=False)
    b = attractor_grid(spec, t, axes, reduce_time=True)
    assert np.abs(a - b).max() <= 1e-6 * (1 + np.abs(b).max())


def test_continuity_probe():
    """Adjacent-sample jumps shrink about 2x per halving once the oscillation is resolved.

    Along the first axis H behaves like exp(6 i x^2), so the probe box is
    [-1, 1]^2 and the first grid already has a phase step below one radian.
    First differences of a smooth function approach the factor 2 from below.
    """
    spec = AttractorSpec("imaginary", anisotropic_q())
    jumps = []
    for n in (41, 81, 161):
        ax = np.linspace(-1, 1, n)
        H = attractor_grid(spec, 1.0, [ax, ax])
        jumps.append(max(np.abs(np.diff(H, axis=0)).max(), np.abs(np.diff(H, axis=1)).max()))
    assert jumps[0] / jumps[1] >= 1.9
    assert jumps[1] / jumps[2] >= 1.9


def test_conjugate_symmetry():
    Q = WeightedPolynomial(2, (2, 4), {(2, 0): 4 / 96, (0, 4): 1 / 96})
    plus = AttractorSpec("imaginary", Q)
    minus = AttractorSpec("imaginary", -Q)
    for x in ([0.4, -1.2], [2.0, 1.0]):
        a = attractor_imaginary(plus, 1.0, x, tol=1e-9).value
        b = attractor_imaginary(minus, 1.0, x, tol=1e-9).value
        c = attractor_imaginary(plus, 1.0, [-v for v in x], tol=1e-9).value
        assert abs(b - np.conj(a)) < 1e-8
        assert abs(c - a) < 1e-8


# ---------------------------------------------------------------- counterexample at mu = 1


def disc_shell_integral(q, t, tau):
    """Integral of exp(-i t q |xi|^2) over {q |xi|^2 < tau} in R^2, in closed form."""
    return np.pi * 1j / (q * t) * (np.exp(-1j * t * tau) - 1)


@pytest.mark.parametrize("q", [1.0, 1 / 8])
def test_isotropic_shells_match_closed_form(q):
    spec = AttractorSpec("imaginary", iso_q(q), allow_divergent=True)
    r = renormalized_integral(spec, [0.0, 0.0], t=1.0, max_shells=10)
    assert not r.converged
    assert "mu = 1" in r.reason
    prev = 0.0
    for tau, S in r.tau_trace:
        want = disc_shell_integral(q, 1.0, tau)
        assert abs(S - want) < 1e-6
        assert abs((S - prev) - (want - (disc_shell_integral(q, 1.0, tau / 2) if tau > 1 else 0))) < 1e-6
        prev = S
    # the increments keep the same size: the limit does not exist
    incs = np.abs(np.diff([S for _, S in r.tau_trace]))
    assert incs[-4:].min() > 0.1


def test_isotropic_rejected_without_override():
    with pytest.raises(HypothesisError):
        AttractorSpec("imaginary", iso_q())


# ---------------------------------------------------------------- rectangular family


def test_rectangular_product():
    spec = AttractorSpec("imaginary", iso_q(1 / 8), family="rectangular")
    r = attractor_imaginary(spec, 1.0, [0.0, 0.0])
    assert r.value == pytest.approx(1 / (4j * np.pi / 8), abs=1e-12)
    for x in ([1.0, -2.0], [0.3, 3.0]):
        v = attractor_imaginary(spec, 2.0, x).value
        assert v == pytest.approx(heat_closed(1 / 8, 2.0, x[0]) * heat_closed(1 / 8, 2.0, x[1]), abs=1e-12)
    grid = attractor_grid(spec, 1.0, [[0.0, 1.0], [2.0]])
    assert grid[1, 0] == pytest.approx(heat_closed(1 / 8, 1, 1.0) * heat_closed(1 / 8, 1, 2.0))


def test_rectangular_single_factor_matches_sublevel():
    one = attractor_rect_product([(2, 1 / 8)], 1.0, [0.7])
    assert one == pytest.approx(attractor_imaginary(AttractorSpec("imaginary", heat_q()), 1.0, [0.7]).value, abs=1e-6)


def test_rectangular_rejects_mixed_terms():
    with pytest.raises(InputError):
        attractor_imaginary(AttractorSpec("imaginary", anisotropic_q(), family="rectangular"), 1.0, [0.0, 0.0])


# ---------------------------------------------------------------- one-dimensional oracles


def test_oned_gaussian():
    assert oned_oracle(2, 1.0, 1.0, 0.0) == pytest.approx(1 / np.sqrt(4 * np.pi))


def test_oned_quartic_two_routes(derived):
    a = oned_oracle(4, 1 / 12, 1.0, 0.0)
    b = oned_oracle(4, 1 / 12, 1.0, 0.0, route="alternate")
    assert abs(a - b) < 1e-8
    assert a.real == pytest.approx(derived["quartic_positive_origin_quad"], abs=1e-10)


@pytest.mark.parametrize("x", [0.0, 1.3, -4.0])
def test_oned_imaginary_quartic_two_routes(x):
    a = oned_oracle(4, 0.25j, 1.0, x)
    b = oned_oracle(4, 0.25j, 1.0, x, route="alternate")
    assert abs(a - b) < 1e-8


@given(st.floats(-6, 6), st.floats(0.2, 5))
def test_imaginary_heat_constant_modulus(x, t):
    v = oned_oracle(2, 1j / 8, t, x)
    assert abs(v) == pytest.approx(1 / np.sqrt(4 * np.pi * t / 8), rel=1e-12)


def airy_ray_integral(x):
    """(1/pi) Re int_0^inf exp(i(s^3/3 + x s)) ds on the ray s = u exp(i pi/6)."""
    w = np.exp(1j * np.pi / 6)
    f = lambda u, part: part(np.exp(-(u**3) / 3 + 1j * x * u * w) * w)
    return integrate.quad(f, 0, 30, args=(np.real,), epsabs=1e-13, limit=200)[0] / np.pi


def test_oned_airy():
    q = 1 / 3
    assert oned_oracle(3, 1j * q, 1.0, 0.0) == pytest.approx(special.airy(0.0)[0])
    for x in (-1.5, 0.8, 2.0):
        v = oned_oracle(3, 1j * q, 1.0, x)
        assert v.real == pytest.approx(airy_ray_integral(x), abs=1e-10)
        assert oned_oracle(3, -1j * q, 1.0, -x) == pytest.approx(v)


def test_oned_rejects_bad_input():
    with pytest.raises(InputError):
        oned_oracle(4, 0, 1.0, 0.0)
    with pytest.raises(InputError):
        oned_oracle(4, -1.0, 1.0, 0.0)
    with pytest.raises(InputError):
        oned_oracle(2, 1.0, 0.0, 0.0)


# ---------------------------------------------------------------- utilities


def test_vdc_bound():
    assert vdc_bound(1.0, 1.0, 0.0) == 4
    assert vdc_bound(2.0, 1.0, 1.0) == 4
    with pytest.raises(InputError):
        vdc_bound(0.0, 1.0, 0.0)
    re = integrate.quad(lambda s: np.cos(s * s), 1, 10, limit=400)[0]
    im = integrate.quad(lambda s: np.sin(s * s), 1, 10, limit=400)[0]
    assert abs(complex(re, im)) <= vdc_bound(2.0, 1.0, 0.0)


def test_euler_transform_alternating_series():
    k = np.arange(1, 21)
    partial = np.cumsum((-1.0) ** (k + 1) / k)
    assert abs(partial[-1] - np.log(2)) > 1e-2
    assert euler_transform(partial) == pytest.approx(np.log(2), abs=1e-6)
    with pytest.raises(InputError):
        euler_transform([])
