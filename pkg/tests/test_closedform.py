import math
import warnings
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import A1_61, A61, B61
from warpspec import closedform as cf
from warpspec import geometry as geo
from warpspec.errors import InvalidInput

KAPPAS = (0.1, 0.5, 1.0, 2.0, 3.0, 3.9)


def lattice():
    for n in range(3, 9):
        for kappa in KAPPAS:
            for lam in (0.5, 1.0, 6.0, float(n * (n - 1))):
                yield n, cf.SpectralParams(kappa, lam)


def test_reference_constants(consts61):
    assert consts61.a == pytest.approx(A61, rel=1e-15)
    assert consts61.b == pytest.approx(B61, rel=1e-15)
    assert consts61.a1 == pytest.approx(A1_61, rel=1e-15)
    assert consts61.beta2 == pytest.approx(1.05, rel=1e-15)
    assert consts61.lambda_exp == pytest.approx(2 / 3, rel=1e-15)
    assert consts61.alpha == pytest.approx(A1_61, rel=1e-15)
    assert consts61.a1 == pytest.approx(1.463850, abs=1e-6)


def test_reference_relation_pieces(consts61):
    m = consts61
    assert m.beta2 * m.a1**2 == pytest.approx(2.25, rel=1e-14)
    assert m.beta2 * m.a1 * m.b == pytest.approx(1.35, rel=1e-14)
    assert 3 / (4 * m.a**2) == pytest.approx(0.9, rel=1e-14)


@pytest.mark.parametrize("n", range(3, 9))
def test_round_limit(n):
    m = cf.constants_nd(n, cf.SpectralParams(0.0, n * (n - 1)))
    assert (m.a, m.b) == (pytest.approx(1.0, abs=1e-15), pytest.approx(1.0, abs=1e-15))
    assert m.lambda_exp == 0.5
    assert m.beta2 == pytest.approx(1.0, abs=1e-15)


def test_lattice_relations():
    worst = {"precise": 0.0, "float": 0.0}
    for n, params in lattice():
        worst["precise"] = max(worst["precise"], *cf.relation_residuals(n, params).values())
        worst["float"] = max(worst["float"], *cf.relation_residuals(n, params, precise=False).values())
        m = cf.constants_nd(n, params)
        assert min(m.a, m.b, m.a1, m.beta2, m.lambda_exp) > 0
    assert worst["precise"] < 1e-30
    assert worst["float"] < 1e-12


@pytest.mark.parametrize("kappa", KAPPAS)
@pytest.mark.parametrize("lam", [0.5, 1.0, 6.0])
def test_three_dim_specialization(kappa, lam):
    gaps = cf.specialization_gap(cf.SpectralParams(kappa, lam))
    assert max(gaps.values()) < 1e-14


@given(st.floats(0.01, 3.99), st.floats(0.01, 100.0))
def test_alpha_equals_a1(kappa, lam):
    m = cf.constants_3d(cf.SpectralParams(kappa, lam))
    assert m.alpha == pytest.approx(cf.constants_nd(3, cf.SpectralParams(kappa, lam)).a1, rel=1e-14)


@pytest.mark.parametrize("kappa,lam,n", [(4.0, 1.0, 3), (-0.1, 1.0, 3), (1.0, 0.0, 3), (1.0, math.nan, 3), (1.0, 1.0, 2)])
def test_invalid_inputs(kappa, lam, n):
    with pytest.raises(InvalidInput):
        cf.constants_nd(n, cf.SpectralParams(kappa, lam))


def test_accepts_kappa_near_four():
    m = cf.constants_nd(5, cf.SpectralParams(3.9, 2.0))
    assert math.isfinite(m.a) and m.lambda_exp == pytest.approx(20.0)


def test_f_cot_values(consts61):
    b = consts61.b
    assert cf.f_cot(math.pi / (2 * b), consts61, 3) == pytest.approx(0.0, abs=1e-15)
    assert cf.f_cot(math.pi / (4 * b), consts61, 3) == pytest.approx(2 / 3 * A1_61, rel=1e-14)
    assert cf.f_cot(math.pi / (4 * b), consts61, 3) == pytest.approx(0.975900, abs=1e-6)


@given(st.floats(0.001, 0.999))
def test_f_cot_antisymmetry(frac):
    m = cf.constants_nd(3, cf.SpectralParams(1.0, 6.0))
    theta = frac * m.T
    assert cf.f_cot(theta, m, 3) + cf.f_cot(m.T - theta, m, 3) == pytest.approx(0.0, abs=1e-9 * (1 + abs(cf.f_cot(theta, m, 3))))


def test_f_ode_residual(consts61, params61):
    grid = np.linspace(0.001, 0.999, 2001) * consts61.T
    assert cf.check_f_ode(consts61, params61, 3, grid) < 1e-10


def test_f_ode_midpoint_terms(consts61, params61):
    terms = [float(t[0]) for t in cf.f_ode_terms(np.array([consts61.T / 2]), consts61, params61, 3)]
    assert terms[0] == pytest.approx(1.5, rel=1e-15)
    assert terms[1] == pytest.approx(0.0, abs=1e-30)
    assert terms[2] == pytest.approx(-0.9, rel=1e-14)
    assert terms[3] == pytest.approx(-0.6, rel=1e-14)


def test_f_ode_detects_wrong_a1(consts61, params61):
    bad = replace(consts61, a1=consts61.a1 * 1.001)
    grid = np.linspace(0.01, 0.99, 501) * consts61.T
    assert cf.check_f_ode(bad, params61, 3, grid) > 1e-4


@pytest.mark.parametrize("n", range(3, 9))
@pytest.mark.parametrize("kappa", KAPPAS)
def test_f_ode_all_dimensions(n, kappa):
    params = cf.SpectralParams(kappa, 1.0)
    m = cf.constants_nd(n, params)
    assert cf.check_f_ode(m, params, n, np.linspace(0.001, 0.999, 501) * m.T) < 1e-9


def test_f_warp_equals_f_cot(model61, consts61):
    grid = model61.interior_grid(1001)
    fw = cf.f_warp(model61, 1.0, grid)
    np.testing.assert_allclose(fw.values, cf.f_cot(grid, consts61, 3), rtol=1e-12, atol=1e-12)
    # both equal (10/3) sqrt(3/35) cot(b t)
    expected = 10 / 3 * math.sqrt(3 / 35) / np.tan(B61 * grid)
    np.testing.assert_allclose(fw.values, expected, rtol=1e-12, atol=1e-12)


def test_f_warp_pointwise_mode():
    g = geo.WarpedMetric.round(4)
    grid = g.interior_grid(101)
    fw = cf.f_warp(g, 0.0, grid)
    np.testing.assert_allclose(fw.values, 1 / np.tan(grid), rtol=1e-14, atol=1e-15)
    assert cf.f_warp(g, 0.0, np.array([math.pi / 2])).values[0] == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("n", range(3, 9))
@pytest.mark.parametrize("kappa", [0.5, 1.0, 2.0, 3.0])
def test_mu_constant_on_model(n, kappa):
    lam = 6.0
    g = geo.make_model_metric(n, cf.constants_nd(n, cf.SpectralParams(kappa, lam)))
    mu = cf.mu_profile(g, kappa, g.interior_grid(1001, 1e-3))
    assert np.max(np.abs(mu.values - lam)) < 1e-8 * lam


def test_mu_round_midpoint():
    # -Lap v + 6v at t = pi/2 for v = sin^(2/3): 2/3 + 6
    g = geo.WarpedMetric.round(3)
    assert cf.mu_function(g, 1.0)(np.array([math.pi / 2]))[0] == pytest.approx(20 / 3, rel=1e-14)


def test_mu_symmetric():
    t = np.linspace(0, math.pi, 2001)
    phi = np.sin(t) * np.sqrt(1 - 0.1 * np.sin(t) ** 2)
    g = geo.WarpedMetric.custom(3, t, phi)
    grid = g.interior_grid(201, 0.05)
    mu = cf.mu_profile(g, 1.0, grid).values
    np.testing.assert_allclose(mu, mu[::-1], rtol=1e-6)


def test_mu_rejects_pointwise_mode(model61):
    with pytest.raises(InvalidInput):
        cf.mu_profile(model61, 0.0)


def test_mu_warns_without_log_concavity():
    t = np.linspace(0, math.pi, 1001)
    s = np.sin(t)
    g = geo.WarpedMetric.custom(3, t, s * (2.5 - 2 * s**2))
    with pytest.warns(RuntimeWarning):
        cf.mu_function(g, 1.0)


def test_mu_no_warning_on_model(model61):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        cf.mu_function(model61, 1.0)


def test_xi_midpoint(model61, params61):
    mid = np.array([model61.T / 2])
    xi = cf.xi_profile(model61, 1.0, mid)
    assert xi.values[0] == pytest.approx(0.0, abs=1e-15)
    assert xi.d1[0] == pytest.approx(6 / 7, rel=1e-14)
    assert xi.d1[0] == pytest.approx(10 / 9 * B61**2, rel=1e-14)
    one, sq, lin, rhs = (float(t[0]) for t in cf.xi_ode_terms(model61, params61, mid))
    assert one + sq + lin == pytest.approx(0.4, rel=1e-14)
    assert -rhs == pytest.approx(0.4, rel=1e-14)


@pytest.mark.parametrize("kappa", KAPPAS)
def test_xi_ode_lattice(kappa):
    params = cf.SpectralParams(kappa, 6.0)
    g = geo.make_model_metric(3, cf.constants_nd(3, params))
    assert cf.check_xi_ode(g, params) < 1e-9
    assert np.all(cf.xi_profile(g, kappa).d1 >= 0)


def test_xi_is_minus_f_warp(model61):
    grid = model61.interior_grid(301)
    np.testing.assert_allclose(cf.xi_profile(model61, 1.0, grid).values, -cf.f_warp(model61, 1.0, grid).values, rtol=1e-14)


def test_xi_three_dim_only():
    with pytest.raises(InvalidInput):
        cf.xi_profile(geo.WarpedMetric.round(4), 1.0)
