from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from subdiffusion.fracops import GridFunction, TimeGrid
from subdiffusion.l1_oracle import fitted_order
from subdiffusion.mittag_leffler import ml_array
from subdiffusion.norms import (
    ModeTrajectories,
    SpectralField,
    _square_moment,
    bochner_l2_norm,
    bochner_seminorm,
    dirichlet_eigenvalues,
    full_solution_norm,
    l2_time_norm,
    seminorm_via_rl,
    slobodeckij_seminorm,
    spatial_norm,
)

coeff_lists = st.lists(st.floats(-10.0, 10.0), min_size=1, max_size=12)


# {{{ types


def test_types_rejected():
    with pytest.raises(ValueError):
        SpectralField(0.0, [1.0])
    with pytest.raises(ValueError):
        SpectralField(1.0, [])
    with pytest.raises(ValueError):
        SpectralField(1.0, [np.inf])
    with pytest.raises(ValueError):
        ModeTrajectories(TimeGrid(1.0, 4), 1.0, np.zeros((2, 4)))
    with pytest.raises(ValueError):
        dirichlet_eigenvalues(1.0, 0)


def test_field_synthesis():
    field = SpectralField(2.0, [0.0, 1.0])
    x = np.linspace(0.0, 2.0, 9)
    assert np.allclose(field(x), np.sin(np.pi * x), atol=1e-15)


# }}}


# {{{ Slobodeckij


@pytest.mark.parametrize("a, b, p", [(2, 0, -2.5), (1, 1, -2.5), (2, 0, -1.2), (1, 1, -2.9), (0, 0, -1.0)])
def test_square_moment_quadrature(a, b, p):
    ref, _ = integrate.dblquad(
        lambda v, u: u**a * v**b * (u + v) ** p, 0.0, 1.0, 0.0, 1.0, epsabs=1e-12, epsrel=1e-12
    )
    assert _square_moment(a, b, p) == pytest.approx(ref, rel=1e-8)


def test_slobodeckij_examples():
    grid = TimeGrid(1.0, 64)
    assert slobodeckij_seminorm(0.5, GridFunction(grid, np.full(65, 7.0))) == 0.0
    assert slobodeckij_seminorm(0.5, GridFunction(grid, grid.t)) == pytest.approx(1.0, rel=1e-13)

    # piecewise-linear functions are integrated exactly
    for n in (4, 64, 512):
        g = TimeGrid(1.0, n)
        value = slobodeckij_seminorm(0.25, GridFunction(g, g.t))
        assert value == pytest.approx(math.sqrt(8.0 / 15.0), rel=1e-12)


def test_slobodeckij_rejects_order():
    f = GridFunction(TimeGrid(1.0, 4), np.arange(5.0))
    for alpha in (0.0, 1.0, 1.5):
        with pytest.raises(ValueError):
            slobodeckij_seminorm(alpha, f)


def _slobodeckij_reference(alpha: float, f) -> float:
    # split along the diagonal so the weak singularity sits on a panel edge
    def inner(s):
        g = lambda t: (f(s) - f(t)) ** 2 / abs(s - t) ** (2 * alpha + 1)
        return integrate.quad(g, 0.0, s, limit=200)[0] + integrate.quad(g, s, 1.0, limit=200)[0]

    return math.sqrt(integrate.quad(inner, 0.0, 1.0, limit=200)[0])


@pytest.mark.parametrize("alpha", [0.3, 0.6, 0.8])
def test_slobodeckij_smooth_function(alpha):
    f = lambda t: np.sin(3.0 * t) + t**2
    ref = _slobodeckij_reference(alpha, f)
    errors = []
    ns = (64, 128, 256)
    for n in ns:
        g = TimeGrid(1.0, n)
        errors.append(abs(slobodeckij_seminorm(alpha, GridFunction(g, f(g.t))) - ref))
    assert errors[-1] < 1e-3 * ref
    assert fitted_order(ns, errors) >= 1.0


def test_seminorm_via_rl_examples():
    grid = TimeGrid(1.0, 32)
    assert seminorm_via_rl(0.75, GridFunction(grid, np.full(33, 3.0))) == pytest.approx(0.0, abs=1e-13)

    exact = 1.0 / (math.gamma(1.25) * math.sqrt(1.5))
    errors = []
    for n in (256, 1024, 4096):
        g = TimeGrid(1.0, n)
        errors.append(abs(seminorm_via_rl(0.75, GridFunction(g, g.t)) - exact))
    assert errors[-1] < 1e-3
    assert errors[0] > errors[1] > errors[2]


def test_seminorm_via_rl_eigenfunction():
    alpha = 0.75
    # the Caputo derivative of E(-t^alpha) is -E(-t^alpha)
    ref = math.sqrt(integrate.quad(lambda t: ml_array(alpha, 1.0, -(t**alpha)) ** 2, 0.0, 1.0)[0])
    g = TimeGrid(1.0, 4096)
    f = GridFunction(g, ml_array(alpha, 1.0, -(g.t**alpha)))
    assert seminorm_via_rl(alpha, f) == pytest.approx(ref, rel=2e-2)


def test_seminorm_via_rl_rejects_order():
    f = GridFunction(TimeGrid(1.0, 4), np.arange(5.0))
    for alpha in (0.3, 0.5, 1.0):
        with pytest.raises(ValueError):
            seminorm_via_rl(alpha, f)


# }}}


# {{{ spatial norms


def test_spatial_examples():
    w1 = SpectralField(math.pi, [1.0])
    for s in (-1.0, -0.3, 0.0, 0.5, 1.0):
        assert spatial_norm(s, w1) == pytest.approx(1.0, rel=1e-15)
    assert spatial_norm(1.0, SpectralField(math.pi, [0.0, 1.0])) == pytest.approx(2.0, rel=1e-15)
    c = np.array([3.0, -4.0, 12.0])
    assert spatial_norm(0.0, SpectralField(1.0, c)) == pytest.approx(13.0, rel=1e-15)


@pytest.mark.parametrize("s", [-1.5, 1.01, math.nan])
def test_spatial_rejects_index(s):
    with pytest.raises(ValueError):
        spatial_norm(s, SpectralField(1.0, [1.0]))


@given(coeff_lists, st.floats(-1.0, 1.0), st.floats(-1.0, 1.0))
def test_spatial_monotone_in_s(coeffs, s1, s2):
    # lambda_1 = 1 on (0, pi), so the norms increase with s
    field = SpectralField(math.pi, coeffs)
    lo, hi = sorted((s1, s2))
    assert spatial_norm(lo, field) <= spatial_norm(hi, field) * (1 + 1e-14)


@given(coeff_lists, st.sampled_from([-0.5, 0.0, 0.5]), st.floats(0.2, 5.0))
def test_interpolation_inequality(coeffs, s, length):
    field = SpectralField(length, coeffs)
    lhs = spatial_norm(s, field)
    rhs = spatial_norm(-1.0, field) ** ((1 - s) / 2) * spatial_norm(1.0, field) ** ((1 + s) / 2)
    assert lhs <= rhs * (1.0 + 1e-12)


@given(coeff_lists, st.floats(-1.0, 1.0), st.floats(-100.0, 100.0).filter(lambda c: abs(c) > 1e-100))
def test_spatial_homogeneous(coeffs, s, c):
    field = SpectralField(math.pi, coeffs)
    scaled = SpectralField(math.pi, c * np.asarray(coeffs))
    assert spatial_norm(s, scaled) == pytest.approx(abs(c) * spatial_norm(s, field), rel=1e-12, abs=1e-300)


# }}}


# {{{ Bochner norms


def test_bochner_examples():
    grid = TimeGrid(1.0, 64)
    const = ModeTrajectories(grid, math.pi, np.ones((3, 65)))
    assert bochner_seminorm(0.5, 0.0, const) == 0.0

    d1 = ModeTrajectories(grid, math.pi, grid.t[None, :])
    assert bochner_seminorm(0.5, -1.0, d1) == pytest.approx(1.0, rel=1e-13)

    # the second mode alone is the first scaled by lambda_2^{s/2}
    two = ModeTrajectories(grid, math.pi, np.vstack([np.zeros(65), grid.t]))
    assert bochner_seminorm(0.5, -1.0, two) == pytest.approx(0.5, rel=1e-13)


def test_full_solution_norm_examples():
    grid = TimeGrid(1.0, 64)
    assert full_solution_norm(ModeTrajectories(grid, math.pi, np.zeros((2, 65))), 0.75) == (0.0, 0.0)
    energy, weak = full_solution_norm(ModeTrajectories(grid, math.pi, np.ones((1, 65))), 0.75)
    assert energy == pytest.approx(1.0, rel=1e-14)
    assert weak == pytest.approx(1.0, rel=1e-14)

    d = ml_array(0.75, 1.0, -(grid.t**0.75))
    energy, weak = full_solution_norm(ModeTrajectories(grid, math.pi, d[None, :]), 0.75)
    ref = math.sqrt(integrate.quad(lambda t: ml_array(0.75, 1.0, -(t**0.75)) ** 2, 0.0, 1.0)[0])
    assert energy == pytest.approx(ref, rel=2e-2)
    assert weak > energy and math.isfinite(weak)


def test_energy_skips_initial_sample():
    # a rough initial value must not feed the L2(J; H^1) norm through t = 0
    grid = TimeGrid(1.0, 16)
    values = np.zeros((1, 17))
    values[0, 0] = 1.0e6
    assert bochner_l2_norm(1.0, ModeTrajectories(grid, math.pi, values), open_start=True) == 0.0


@given(st.floats(0.05, 0.95), st.floats(-1.0, 1.0), st.floats(-50.0, 50.0))
def test_bochner_homogeneous(alpha, s, c):
    grid = TimeGrid(1.0, 16)
    rng = np.random.default_rng(0)
    values = rng.standard_normal((3, 17))
    a = ModeTrajectories(grid, 2.0, values)
    b = ModeTrajectories(grid, 2.0, c * values)
    assert bochner_seminorm(alpha, s, b) == pytest.approx(abs(c) * bochner_seminorm(alpha, s, a), rel=1e-12)
    assert bochner_l2_norm(s, b) == pytest.approx(abs(c) * bochner_l2_norm(s, a), rel=1e-12)


@given(st.floats(0.05, 0.95), st.floats(-10.0, 10.0))
def test_slobodeckij_homogeneous(alpha, c):
    grid = TimeGrid(1.0, 16)
    f = GridFunction(grid, np.cos(5 * grid.t))
    assert slobodeckij_seminorm(alpha, c * f) == pytest.approx(abs(c) * slobodeckij_seminorm(alpha, f), rel=1e-12)
    assert l2_time_norm(c * f) == pytest.approx(abs(c) * l2_time_norm(f), rel=1e-12)


# }}}
