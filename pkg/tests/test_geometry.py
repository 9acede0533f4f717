import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import A61, B61
from warpspec import closedform as cf
from warpspec import geometry as geo
from warpspec.errors import IncomparableDomains, InvalidInput, NumericalFailure
from warpspec.profile import RadialProfile


def test_model_from_constants(model61):
    assert model61.kind == "model"
    assert model61.a == pytest.approx(0.912871, abs=1e-6)
    assert model61.b == pytest.approx(0.878310, abs=1e-6)
    assert model61.a == pytest.approx(A61, rel=1e-15)
    assert model61.b == pytest.approx(B61, rel=1e-15)
    assert model61.T == pytest.approx(math.pi / B61, rel=1e-15)
    assert model61.T == pytest.approx(3.576861, abs=1e-6)


def test_unit_constants_give_round():
    g = geo.make_model_metric(3, cf.ModelConstants(3, 1.0, 1.0, 1.5, 1.0, 0.5))
    assert g.kind == "round"
    assert g.T == math.pi


@pytest.mark.parametrize("n", range(3, 9))
def test_pointwise_mode_is_round(n):
    consts = cf.constants_nd(n, cf.SpectralParams(0.0, n * (n - 1)))
    assert consts.a == pytest.approx(1.0, abs=1e-15)
    assert consts.b == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("a,b", [(0.0, 1.0), (1.0, -1.0), (-2.0, 0.5)])
def test_model_rejects_nonpositive(a, b):
    with pytest.raises(InvalidInput):
        geo.WarpedMetric.model(3, a, b)


def test_custom_validation():
    t = np.linspace(0, 1, 10)
    with pytest.raises(InvalidInput):
        geo.WarpedMetric.custom(3, t[::-1], np.sin(t))
    with pytest.raises(InvalidInput):
        geo.WarpedMetric.custom(3, t + 0.1, np.sin(t))
    bad = np.sin(t)
    bad[4] = -0.1
    with pytest.raises(InvalidInput):
        geo.WarpedMetric.custom(3, t, bad)
    with pytest.raises(InvalidInput):
        geo.WarpedMetric.custom(2, t, np.sin(t))


@pytest.mark.parametrize("n", range(3, 9))
def test_round_curvature_constant(n):
    g = geo.WarpedMetric.round(n)
    rep = geo.scalar_curvature_profile(g, g.interior_grid(501))
    assert np.max(np.abs(rep.R - n * (n - 1))) <= 1e-12 * n * (n - 1)
    assert rep.K_assumed == 1.0


def test_round_three_mean_curvature():
    g = geo.WarpedMetric.round(3)
    t = g.interior_grid(301)
    rep = geo.scalar_curvature_profile(g, t)
    np.testing.assert_allclose(rep.R, 6.0, rtol=1e-14)
    np.testing.assert_allclose(rep.H, 2 / np.tan(t), rtol=1e-13, atol=1e-13)


def test_model_midpoint_curvature(model61):
    rep = geo.scalar_curvature_profile(model61, np.array([model61.T / 2]))
    assert rep.R[0] == pytest.approx(192 / 35, rel=1e-14)
    assert rep.H[0] == pytest.approx(0.0, abs=1e-15)


def test_general_formula_matches_sin_form(model61):
    # a custom copy takes the generic phi/phi'/phi'' path
    t = np.linspace(0, model61.T, 4001)
    phi, d1, d2 = model61.derivs(t)
    phi[0] = phi[-1] = 0.0
    custom = geo.WarpedMetric.custom(3, t, phi, d1, d2)
    grid = model61.interior_grid(777, 0.01)
    np.testing.assert_allclose(geo.scalar_curvature(custom, grid), geo.scalar_curvature(model61, grid), rtol=1e-8)


def test_curvature_rejects_endpoint(model61):
    with pytest.raises(InvalidInput):
        geo.scalar_curvature_profile(model61, np.array([0.0, 1.0]))


@given(st.floats(0.2, 5.0), st.floats(0.1, 3.9))
def test_curvature_scaling(lam, kappa):
    g = geo.make_model_metric(3, cf.constants_nd(3, cf.SpectralParams(kappa, 6.0)))
    t = g.interior_grid(101, 0.01)
    r = geo.scalar_curvature_profile(g, t).R
    r_scaled = geo.scalar_curvature_profile(g.scaled(lam), lam * t).R
    np.testing.assert_allclose(r_scaled, r / lam**2, rtol=1e-12)


def test_custom_scaling_matches_analytic(model61):
    t = np.linspace(0, model61.T, 2001)
    phi, d1, d2 = model61.derivs(t)
    phi[0] = phi[-1] = 0.0
    custom = geo.WarpedMetric.custom(3, t, phi, d1, d2).scaled(1.7)
    grid = custom.interior_grid(101, 0.05)
    np.testing.assert_allclose(
        geo.scalar_curvature(custom, grid), geo.scalar_curvature(model61.scaled(1.7), grid), rtol=1e-8
    )


def test_laplacian_of_constant(model61):
    t = model61.interior_grid(101)
    lap = geo.radial_laplacian(model61, RadialProfile.constant(t, 3.5))
    assert np.all(lap.values == 0.0)


def test_laplacian_first_harmonic():
    g = geo.WarpedMetric.round(3)
    t = g.interior_grid(201)
    u = RadialProfile(t, np.cos(t), -np.sin(t), -np.cos(t))
    np.testing.assert_allclose(geo.radial_laplacian(g, u).values, -3 * np.cos(t), atol=1e-14)


@pytest.mark.parametrize("n,kappa", [(3, 1.0), (4, 0.5), (6, 2.0)])
def test_laplacian_of_power_sine(n, kappa):
    consts = cf.constants_nd(n, cf.SpectralParams(kappa, 3.0))
    g = geo.make_model_metric(n, consts)
    lam, b = consts.lambda_exp, consts.b
    t = g.interior_grid(301, 0.01)
    s, c = np.sin(b * t), np.cos(b * t)
    u = RadialProfile(
        t,
        s**lam,
        lam * b * c * s ** (lam - 1),
        lam * b**2 * ((lam - 1) * c**2 * s ** (lam - 2) - s**lam),
    )
    # hand expansion: lam b^2 [(lam+n-2) sin^(lam-2) - (lam+n-1) sin^lam]
    expected = lam * b**2 * ((lam + n - 2) * s ** (lam - 2) - (lam + n - 1) * s**lam)
    np.testing.assert_allclose(geo.radial_laplacian(g, u).values, expected, rtol=1e-11)


def test_laplacian_spline_fallback():
    g = geo.WarpedMetric.round(3)
    t = np.linspace(0.3, 2.8, 2001)
    lap = geo.radial_laplacian(g, RadialProfile(t, np.cos(t)))
    inner = slice(100, -100)
    np.testing.assert_allclose(lap.values[inner], -3 * np.cos(t[inner]), atol=1e-6)


def _model_profiles(g, m=4001):
    t = np.linspace(0, g.T, m)
    phi, d1, d2 = g.derivs(t)
    phi[0] = phi[-1] = 0.0
    return t, RadialProfile(t, phi, d1, d2)


def test_normalize_identity(model61):
    t, phi = _model_profiles(model61)
    g = geo.normalize_arclength(RadialProfile.constant(t, 1.0), phi, 3)
    assert g.T == pytest.approx(model61.T, rel=1e-14)
    grid = model61.interior_grid(99)
    for got, want in zip(g.derivs(grid), model61.derivs(grid)):
        np.testing.assert_allclose(got, want, atol=1e-12)


def test_normalize_doubling(model61):
    t, phi = _model_profiles(model61)
    g = geo.normalize_arclength(RadialProfile.constant(t, 2.0), phi, 3)
    assert g.T == pytest.approx(2 * model61.T, rel=1e-14)
    s = 2 * model61.interior_grid(99)
    np.testing.assert_allclose(g.phi(s), model61.phi(s / 2), atol=1e-12)
    np.testing.assert_allclose(g.derivs(s)[1], model61.derivs(s / 2)[1] / 2, atol=1e-12)


def test_normalize_variable_stretch(model61):
    t, phi = _model_profiles(model61)
    b = model61.b
    s2 = np.sin(b * t) ** 2
    w = RadialProfile(t, 1 + 0.1 * s2, 0.2 * b * np.sin(b * t) * np.cos(b * t))
    g = geo.normalize_arclength(w, phi, 3)
    assert g.T == pytest.approx(1.05 * model61.T, rel=1e-12)


def test_normalize_rejects_shrink(model61):
    t, phi = _model_profiles(model61, 101)
    with pytest.raises(InvalidInput):
        geo.normalize_arclength(RadialProfile.constant(t, 0.99), phi, 3)


def test_dominates_reflexive(model61):
    res = geo.metric_dominates(model61, model61)
    assert res.verdict is geo.Domination.TRUE_EQUAL
    assert res.verdict.label == "true_equal"


def test_dominates_strict_and_false(model61):
    up = geo.metric_dominates(model61.with_angular_scale(1.05), model61)
    assert up.verdict is geo.Domination.TRUE_STRICT
    # the margin 0.05 phi peaks at the midpoint
    assert up.witness == pytest.approx(model61.T / 2, abs=model61.T / 1000)
    down = geo.metric_dominates(model61.with_angular_scale(0.95), model61)
    assert down.verdict is geo.Domination.FALSE
    assert down.witness is not None


def test_dominates_incomparable(model61):
    shorter = geo.WarpedMetric.model(3, model61.a, model61.b * 1.1)
    with pytest.raises(IncomparableDomains):
        geo.metric_dominates(shorter, model61)


@given(st.lists(st.floats(0.5, 2.0), min_size=3, max_size=3))
def test_dominates_monotone(scales):
    s3, s2, s1 = sorted(scales)
    g0 = geo.WarpedMetric.round(3)
    g1, g2, g3 = (g0.with_angular_scale(s) for s in (s1, s2, s3))
    assert geo.metric_dominates(g1, g3).verdict >= geo.metric_dominates(g2, g3).verdict


def test_gauge_domination(model61):
    t, phi = _model_profiles(model61)
    strict = geo.gauge_dominates(RadialProfile.constant(t, 1.02), phi, model61)
    equal = geo.gauge_dominates(RadialProfile.constant(t, 1.0), phi, model61)
    assert strict.verdict is geo.Domination.TRUE_STRICT
    assert equal.verdict is geo.Domination.TRUE_EQUAL


@pytest.mark.parametrize("kappa", [0.0, 0.5, 1.0, 2.0, 3.0])
def test_drift_constants(kappa):
    g = geo.make_model_metric(3, cf.constants_nd(3, cf.SpectralParams(kappa, 6.0)))
    rep = geo.drift_asymptotics(g, kappa)
    expected = 4 / (4 - kappa)
    assert rep.c1 == pytest.approx(expected, rel=1e-2)
    assert rep.c2 == pytest.approx(expected, rel=1e-2)
    assert rep.window == (1 / 200, 1 / 20)
    assert math.isfinite(rep.residual_left) and math.isfinite(rep.residual_right)


def test_drift_coefficient_matches_three_dim():
    for kappa in (0.0, 1.0, 2.5):
        assert -geo.drift_coefficient(3, kappa) == pytest.approx(4 / (4 - kappa), rel=1e-15)


def test_drift_rejects_open_warp():
    t = np.linspace(0, 2, 200)
    g = geo.WarpedMetric.custom(3, t, 0.1 + t)
    with pytest.raises((InvalidInput, NumericalFailure)):
        geo.drift_asymptotics(g, 1.0)


def test_warp_csv_roundtrip(tmp_path, model61):
    path = geo.write_warp_csv(tmp_path / "warp.csv", model61)
    back = geo.read_warp_csv(path, 3)
    assert back.kind == "custom"
    assert back.T == pytest.approx(model61.T, rel=1e-15)
    grid = model61.interior_grid(333)
    # quintic Hermite between samples: error grows with derivative order
    for got, want, tol in zip(back.derivs(grid), model61.derivs(grid), (1e-12, 1e-10, 1e-8)):
        np.testing.assert_allclose(got, want, atol=tol)


@pytest.mark.parametrize(
    "text",
    ["", "x,y\n0,0\n", "t,phi\n0,0\n1,abc\n", "t,phi,phi_prime\n0,0\n1,1\n", "t,phi\n0,0\n0.5,1\n0.4,1\n1,0\n"],
)
def test_warp_csv_malformed(tmp_path, text):
    path = tmp_path / "bad.csv"
    path.write_text(text)
    with pytest.raises(InvalidInput):
        geo.read_warp_csv(path, 3)
