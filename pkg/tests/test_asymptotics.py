# -*- coding: utf-8 -*-

from math import comb
import math

import numpy as np
import pytest
from scipy.special import expit
from scipy.special import logit

from regsat.asymptotics import _evaluate
from regsat.asymptotics import a_q
from regsat.asymptotics import b_q
from regsat.asymptotics import first_moment_estimate
from regsat.asymptotics import first_moment_growth_rate
from regsat.asymptotics import first_moment_prefactor
from regsat.asymptotics import growth_rate_surface
from regsat.asymptotics import hayman_coef_estimate
from regsat.asymptotics import log_hayman_coef_estimate
from regsat.asymptotics import OFF_SUPPORT
from regsat.asymptotics import OK
from regsat.asymptotics import solve_saddle_grid
from regsat.asymptotics import solve_trivariate_saddle
from regsat.asymptotics import solve_univariate_saddle
from regsat.asymptotics import stationarity_residuals
from regsat.asymptotics import surface
from regsat.asymptotics import surface_gradient
from regsat.asymptotics import surface_points
from regsat.asymptotics import surface_upper_bound
from regsat.asymptotics import moments
from regsat.core.errors import DegenerateSaddleError
from regsat.core.errors import ParameterError
from regsat.core.errors import SaddleError
from regsat.genfunc import build_f
from regsat.genfunc import build_s
from regsat.genfunc import build_t
from regsat.genfunc import coef
from regsat.genfunc import exact_first_moment
from regsat.params import Params

################################################################################

def test_a_t_increasing_and_b_t_positive():
    t = build_t(3)
    xs = np.geomspace(1e-3, 1e3, 25)
    a = [ a_q(t, x) for x in xs ]
    assert all( a1 < a2 for a1, a2 in zip(a, a[1:]) )
    assert all( b_q(t, x) > 0.0 for x in xs )
    assert 0.0 < a[0] and a[-1] < 2.0

def test_a_q_closed_form():
    # t(x) = 3 + 3x + x^2
    x = 0.7
    t = 3 + 3 * x + x * x
    assert a_q(build_t(3), x) == pytest.approx(x * (3 + 2 * x) / t)
    assert a_q([3, 3, 1], x) == pytest.approx(a_q(build_t(3), x))

def test_a_q_rejects_bad_input():
    with pytest.raises(ParameterError):
        a_q(build_t(3), 0.0)
    with pytest.raises(ParameterError):
        a_q([1, -1], 1.0)

def test_univariate_saddle():
    saddle = solve_univariate_saddle(3, 0.9375)
    (x,) = saddle.variables
    assert a_q(build_t(3), x) == pytest.approx(0.6, abs=1e-12)
    assert saddle.residual_norm < 1e-12
    assert saddle.curvature == pytest.approx(b_q(build_t(3), x))

def test_univariate_saddle_p1():
    # k = 3, c = 1: x (3 + 2x) / (3 + 3x + x^2) = 1/2 gives x^2 + x - 1 = 0.
    (x,) = solve_univariate_saddle(3, 1.0).variables
    assert x == pytest.approx((math.sqrt(5.0) - 1.0) / 2.0, rel=1e-12)

def test_degenerate_univariate_saddle():
    with pytest.raises(DegenerateSaddleError):
        solve_univariate_saddle(2, 1.0)

def test_degenerate_rate_uses_limit():
    # k = 2, r = 1, p = 1: the exact first moment 8/3 is constant in n.
    assert first_moment_growth_rate(Params(k=2, r=1, p=1.0)) == pytest.approx(0.0, abs=1e-15)

def test_hayman_central_binomial():
    q = [1, 1]
    errors = [ abs(math.log(comb(2 * n, n)) - log_hayman_coef_estimate(q, 2 * n, n))
        for n in (10, 100, 1000) ]
    assert all( e < 0.02 for e in errors )
    assert errors[-1] < errors[0]
    assert hayman_coef_estimate(q, 20, 10) == pytest.approx(comb(20, 10), rel=0.02)

def test_hayman_estimate_approaches_exact():

    t = build_t(3)

    errors = list()
    for m in (20, 40, 80, 160):
        e = 3 * m // 5
        exact = coef(t, m, (e,))
        log_ratio = math.log(exact) - log_hayman_coef_estimate(t, m, e)
        errors.append(abs(log_ratio))

    assert math.exp(errors[0]) < 1.1
    assert all( e1 > e2 for e1, e2 in zip(errors, errors[1:]) )

def test_first_moment_estimate_approaches_exact():

    errors = list()
    for n in (8, 16, 32, 64):
        params = Params(k=3, r=3, p=0.5, n=n)
        exact = exact_first_moment(params).log_value()
        errors.append(abs(exact - first_moment_estimate(params)))

    assert errors[-1] < 0.05
    assert errors[-1] < errors[0]

def test_first_moment_prefactor_requires_n_and_p():
    assert first_moment_prefactor(Params(k=3, r=3, p=0.5, n=16)) > 0.0
    with pytest.raises(ParameterError):
        first_moment_prefactor(Params(k=3, r=3, p=0.5))
    with pytest.raises(ParameterError):
        first_moment_prefactor(Params(k=3, r=3, p=1.0, n=16))

def test_first_moment_rate_matches_exact_trend():
    params = Params(k=3, r=3, p=0.5, n=64)
    rate = first_moment_growth_rate(params)
    assert exact_first_moment(params).per_variable() == pytest.approx(rate, abs=0.05)

################################################################################

@pytest.mark.parametrize('r', [0.5, 1.0, 2.5, 6.0, 20.0])
@pytest.mark.parametrize('p', [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])
@pytest.mark.parametrize('k', [3, 6, 12])
def test_dominant_point_value(k, p, r):
    params = Params(k=k, r=r, p=p)
    point = growth_rate_surface(params, 0.5, params.c ** 2)
    assert point.value == pytest.approx(2.0 * first_moment_growth_rate(params), abs=1e-8)

def test_dominant_point_saddle():
    params = Params(k=3, r=3, p=0.5)
    (x,) = solve_univariate_saddle(3, params.c).variables
    saddle = solve_trivariate_saddle(params, 0.5, params.c ** 2, guess=(x, x * x))
    t1, t2, t3 = saddle.variables
    assert t1 == pytest.approx(x, rel=1e-10)
    assert t2 == pytest.approx(t1 * t1, rel=1e-10)
    assert t3 == t1
    assert build_f(3).evaluate(saddle.variables) == pytest.approx(
        build_s(3).evaluate((x,)) ** 2, rel=1e-10)
    assert saddle.determinant > 0.0

def test_residuals_vanish_at_dominant_point():
    params = Params(k=3, r=3, p=0.5)
    point = growth_rate_surface(params, 0.5, params.c ** 2)
    r_eta, r_gamma = stationarity_residuals(params, 0.5, params.c ** 2, point.saddle)
    assert r_eta == pytest.approx(0.0, abs=1e-8)
    assert r_gamma == pytest.approx(0.0, abs=1e-8)

@pytest.mark.parametrize('k', [2, 3, 6, 12])
def test_f_on_diagonal_numerically(k):
    u = np.log(np.random.default_rng(k).uniform(0.0, 10.0, 100))
    ev = _evaluate(k, 0.5, 0.1, 0.5, u, 2.0 * u)
    np.testing.assert_allclose(ev.log_f, 2.0 * ev.log_s, rtol=1e-12, atol=1e-12)

def _dominant_window(params, half_width):
    steps = np.linspace(-half_width, half_width, 17)
    w_star = params.one_minus_c
    E, W = np.meshgrid(expit(steps), expit(logit(w_star) + steps), indexing='ij')
    return E.ravel(), W.ravel()

@pytest.mark.parametrize('k, p', [ (3, 0.9), (3, 0.5), (6, 0.9) ])
def test_newton_converges_around_dominant_point(k, p):
    params = Params(k=k, r=1.0, p=p)
    for half_width in (0.5, 0.06, 0.007):
        eta, w = _dominant_window(params, half_width)
        _, status, _, _ = surface_points(k, p, eta, w, params.alpha)
        assert np.all(status == OK)

def test_newton_converges_next_to_dominant_point():
    params = Params(k=3, r=1.0, p=0.9)
    w = (0.97518 - (2.0 * params.c - 1.0)) / params.one_minus_c
    values, status, _, _ = surface_points(3, 0.9, [0.5000000000000138], [w], params.alpha)
    assert status[0] == OK
    assert values[0] <= 2.0 * first_moment_growth_rate(params) + 1e-12

def test_surface_upper_bound():
    params = Params(k=3, r=2.0, p=0.5)
    eta, w = np.array([0.3, 0.5, 0.7]), np.array([0.2, 0.5, 0.8])
    values, status, u, v = surface_points(3, 0.5, eta, w, params.alpha)
    assert np.all(status == OK)
    exact = surface_upper_bound(3, 0.5, eta, w, params.alpha, u, v)
    np.testing.assert_allclose(exact, values, rtol=0.0, atol=1e-12)
    # Any other iterate gives a larger value.
    for du, dv in [ (0.3, 0.0), (0.0, -0.4), (-1.0, 2.0) ]:
        bound = surface_upper_bound(3, 0.5, eta, w, params.alpha, u + du, v + dv)
        assert np.all(bound > values)
    assert surface_upper_bound(3, 0.5, 0.5, 0.5, params.alpha, np.inf, 0.0) == np.inf

def test_gradient_matches_finite_differences():

    params = Params(k=3, r=3, p=0.5)
    eta = 0.4
    gamma = (2.0 * params.c - 1.0) + 0.5 * params.one_minus_c

    d_eta, d_gamma = surface_gradient(params, eta, gamma)

    h = 1e-5
    fd_eta = (growth_rate_surface(params, eta + h, gamma).value -
        growth_rate_surface(params, eta - h, gamma).value) / (2.0 * h)

    g = 1e-6
    fd_gamma = (growth_rate_surface(params, eta, gamma + g).value -
        growth_rate_surface(params, eta, gamma - g).value) / (2.0 * g)

    assert d_eta == pytest.approx(fd_eta, rel=1e-4, abs=1e-6)
    assert d_gamma == pytest.approx(fd_gamma, rel=1e-4, abs=1e-5)

def test_boundary_values_p1():
    params = Params(k=3, r=2, p=1.0)
    s0 = growth_rate_surface(params, 0.0, 1.0).value
    s1 = growth_rate_surface(params, 1.0, 1.0).value
    assert s1 == pytest.approx(first_moment_growth_rate(params), abs=1e-12)
    assert s0 == pytest.approx(math.log(2.0) + params.alpha * math.log(0.75), abs=1e-12)
    assert s0 < s1

def test_boundary_off_support():
    params = Params(k=3, r=3, p=0.5)
    # At eta = 1 only gamma = c is supported.
    assert growth_rate_surface(params, 1.0, params.c ** 2).value == -math.inf
    assert growth_rate_surface(params, 1.0, params.c).value == \
        pytest.approx(first_moment_growth_rate(params))
    # At eta = 0 only gamma = 2c - 1 is supported.
    assert growth_rate_surface(params, 0.0, params.c).value == -math.inf
    assert math.isfinite(growth_rate_surface(params, 0.0, 2.0 * params.c - 1.0).value)

def test_surface_gradient_needs_interior_point():
    params = Params(k=3, r=3, p=0.5)
    with pytest.raises(SaddleError):
        surface_gradient(params, 1.0, params.c)

def test_gamma_out_of_range():
    params = Params(k=3, r=3, p=0.5)
    with pytest.raises(ParameterError):
        growth_rate_surface(params, 0.5, 0.5)

def test_saddle_grid():
    eta = np.array([0.0, 0.25, 0.5, 0.75, 1.0])
    w = np.array([0.0, 0.0625, 0.5, 1.0])
    sg = solve_saddle_grid(3, 0.5, eta, w)
    assert sg.status.shape == (5, 4)
    assert np.all(sg.status[1:4, 1:3] == OK)
    assert sg.status[0, 0] == OK and np.all(sg.status[0, 1:] == OFF_SUPPORT)
    assert sg.status[4, 3] == OK and np.all(sg.status[4, :3] == OFF_SUPPORT)
    params = Params(k=3, r=3, p=0.5)
    values = sg.values(params.alpha)
    assert values[2, 1] == pytest.approx(2.0 * first_moment_growth_rate(params), abs=1e-8)
    assert values[0, 1] == -np.inf

################################################################################

def test_surface_command():
    table = surface(3, 3.0, p=0.5, grid=5)
    assert table.headings == ('eta', 'gamma', 's', 'status')
    assert len(table) == 25
    assert set(table['status']) <= {'ok', 'off-support', 'failed'}
    # eta = 0 and eta = 1 rows each hold one supported gamma.
    assert table['status'].count('off-support') >= 8
    assert table['status'][0] == 'ok'

def test_surface_command_p1():
    table = surface(3, 2.0, grid=5)
    assert len(table) == 5
    assert table['gamma'] == [1.0] * 5

def test_moments_command():
    record = moments(2, 2, 1)
    assert record['first_moment'] == '8/3'
    assert record['second_moment'] == '8'
    assert record['second_over_first_squared'] == pytest.approx(9.0 / 8.0)
    assert record['first_moment_estimate'] is None

def test_moments_command_p_below_one():
    record = moments(3, 16, 3, p=0.5)
    assert record['exact_over_estimate'] == pytest.approx(1.0, abs=0.2)

################################################################################
