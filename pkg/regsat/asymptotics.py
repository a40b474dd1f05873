#!/usr/bin/env python3
# -*- coding: utf-8 -*-
u"""regsat saddle-point asymptotics module.

Large-power coefficient estimates for the clause generating functions, and
the exponential growth rates of the first and second moments.

The second-moment summand is indexed by the agreement fraction eta of the two
assignments and the fraction gamma of clauses satisfied by both. Its growth
rate is

    s(eta, gamma) = (1 - k alpha)(ln 2 + h(eta)) + alpha B(eta, gamma)

where B does not depend on alpha. The saddle point (t1, t2, t3) behind B only
depends on (k, c, eta, gamma) once the saddle equations are divided by r, so
one grid of saddle solutions serves every r at a given (k, p).

Internally gamma is carried as w = (gamma - (2c - 1)) / (1 - c) in [0, 1],
with c - gamma = (1 - c)(1 - w) computed directly so that the narrow gamma
range at large k keeps full relative precision.
"""

from dataclasses import dataclass
from dataclasses import field
from functools import lru_cache
import logging
import math
from math import comb
from types import SimpleNamespace

import numpy as np
from scipy.optimize import brentq
from scipy.special import logsumexp

from regsat.core.action import Record
from regsat.core.action import regfunc
from regsat.core.config import config
from regsat.core.errors import DegenerateSaddleError
from regsat.core.errors import ParameterError
from regsat.core.errors import SaddleError
from regsat.core.table import Table
from regsat.genfunc import build_t
from regsat.genfunc import exact_first_moment
from regsat.genfunc import exact_second_moment
from regsat.genfunc import IntPolynomial
from regsat.params import binary_entropy
from regsat.params import c_of_p
from regsat.params import Params

logger = logging.getLogger(__name__)

################################################################################

# Saddle solution status codes.
OK = 0
OFF_SUPPORT = 1
FAILED = 2

_LN2 = math.log(2.0)

@dataclass(frozen=True)
class SolverConfig(object):
    u"""Saddle-point solver settings."""

    tolerance: float = 1e-12
    max_iterations: int = 200
    max_step: float = 5.0

    @classmethod
    def from_config(cls, **overrides):
        u"""Get solver settings from package config, with overrides."""
        settings = {
            u'tolerance': config[u'solver', u'tolerance'],
            u'max_iterations': config[u'solver', u'max_iterations'],
            u'max_step': config[u'solver', u'max_step']
        }
        settings.update( (k, v) for k, v in overrides.items() if v is not None )
        return cls(**settings)

@dataclass(frozen=True)
class SaddleSolution(object):
    u"""Solution of a saddle-point system.

    Attributes:
        variables (tuple): (x,) for the univariate system, or (t1, t2, t3).
        residual_norm (float): Residual of the saddle equations; for the
            trivariate system it is divided by r.
        curvature (object): b_t(x) for the univariate system, or the 3x3
            matrix B_g for the trivariate system.
        determinant (float): Determinant of the curvature.
        iterations (int): Solver iterations used.
        method (str): Solver that produced the solution.
    """

    variables: tuple
    residual_norm: float
    curvature: object
    determinant: float
    iterations: int = 0
    method: str = u'newton'

@dataclass(frozen=True)
class GrowthRatePoint(object):
    u"""Growth rate of the second-moment summand at (eta, gamma)."""

    eta: float
    gamma: float
    value: float
    saddle: object = None

################################################################################

def _coefficients(poly):
    u"""Get dense non-negative float coefficients of a univariate polynomial."""

    if isinstance(poly, IntPolynomial):
        coefficients = poly.as_coefficients()
    else:
        coefficients = list(poly)

    coefficients = np.asarray(coefficients, dtype=float)

    if coefficients.ndim != 1 or coefficients.size == 0:
        raise ParameterError("expected a univariate polynomial")

    if np.any(coefficients < 0.0) or not np.any(coefficients > 0.0):
        raise ParameterError("saddle-point estimates need non-negative coefficients")

    return coefficients

def _log_moments(coefficients, u):
    u"""Get (ln q, a_q, b_q) at y = e^u, with all sums taken in log space."""

    support = np.nonzero(coefficients > 0.0)[0]
    log_terms = np.log(coefficients[support]) + support * u

    log_q = logsumexp(log_terms)
    weights = np.exp(log_terms - log_q)

    a = float(np.dot(support, weights))
    b = float(np.dot((support - a) ** 2, weights))

    return float(log_q), a, b

def _validate_point(x):
    try:
        x = float(x)
    except (TypeError, ValueError):
        raise ParameterError("saddle-point argument must be a number, not {!r}".format(x))
    if not x > 0.0:
        raise ParameterError("saddle-point argument must be positive, not {!r}".format(x))
    return x

def a_q(poly, x):
    u"""Get a_q(x) = x q'(x) / q(x)."""
    x = _validate_point(x)
    return _log_moments(_coefficients(poly), math.log(x))[1]

def b_q(poly, x):
    u"""Get b_q(x) = x a_q'(x), the variance of the exponent under weights c_i x^i."""
    x = _validate_point(x)
    return _log_moments(_coefficients(poly), math.log(x))[2]

def _solve_log_target(coefficients, omega, tolerance=1e-14):
    u"""Solve a_q(e^u) = omega for u, with omega inside the exponent range."""

    support = np.nonzero(coefficients > 0.0)[0]
    low, high = support[0], support[-1]

    if not low < omega < high:
        raise DegenerateSaddleError("saddle target {!r} outside open exponent range ({}, {})".format(
            omega, low, high))

    def g(u):
        return _log_moments(coefficients, u)[1] - omega

    # Expand bracket in log space; a_q is increasing in u.
    lo, hi = -1.0, 1.0
    for _ in range(64):
        if g(lo) < 0.0:
            break
        lo *= 2.0
    for _ in range(64):
        if g(hi) > 0.0:
            break
        hi *= 2.0

    u = brentq(g, lo, hi, xtol=1e-15, rtol=4.0 * np.finfo(float).eps, maxiter=500)

    # Polish with Newton steps; d a_q / du = b_q.
    iterations = 0
    for iterations in range(1, 6):
        _, a, b = _log_moments(coefficients, u)
        if b <= 0.0:
            break
        step = (a - omega) / b
        u -= step
        if abs(step) <= tolerance * max(1.0, abs(u)):
            break

    log_q, a, b = _log_moments(coefficients, u)

    return u, log_q, a, b, iterations

################################################################################

@lru_cache(maxsize=256)
def _univariate(k, c):
    coefficients = _coefficients(build_t(k))
    omega = k / (2.0 * c) - 1.0
    return _solve_log_target(coefficients, omega)

def solve_univariate_saddle(k, c):
    u"""Solve the first-moment saddle equation a_t(x) = k/(2c) - 1.

    Args:
        k (int): Clause width.
        c (float): Required satisfied-clause fraction.

    Returns:
        SaddleSolution: x_k with curvature b_t(x_k).
    """

    if isinstance(k, bool) or not isinstance(k, int) or k < 2:
        raise ParameterError("clause width k must be an integer of at least 2, not {!r}".format(k))

    if not 0.0 < c <= 1.0:
        raise ParameterError("clause fraction c must be in (0, 1], not {!r}".format(c))

    omega = k / (2.0 * c) - 1.0
    if not 0.0 < omega < k - 1:
        raise DegenerateSaddleError("degenerate first-moment saddle for k={}, c={!r}: "
            "target {!r} outside (0, {})".format(k, c, omega, k - 1))

    u, log_q, a, b, iterations = _univariate(k, float(c))

    return SaddleSolution(variables=(math.exp(u),), residual_norm=abs(a - omega),
        curvature=b, determinant=b, iterations=iterations, method=u'newton')

def _first_moment_rate_part(k, c, one_minus_c):
    u"""Get alpha-coefficient of the first-moment growth rate, without -k ln 2.

    This is h(c) + c ln t(x_k) - (k/2 - c) ln x_k. When the target sits at
    the bottom of the exponent range (k = 2, c = 1) the x -> 0 limit
    c ln t(0) is used.
    """

    omega = k / (2.0 * c) - 1.0

    if omega <= 0.0:
        return binary_entropy(one_minus_c) + c * math.log(k)

    u, log_q, _, _, _ = _univariate(k, float(c))

    return binary_entropy(one_minus_c) + c * log_q - (k / 2.0 - c) * u

def first_moment_growth_rate(params):
    u"""Get limiting (1/n) ln E[N] for p-satisfying assignments."""

    rate = _first_moment_rate_part(params.k, params.c, params.one_minus_c)

    return (1.0 - params.k * params.alpha) * _LN2 + params.alpha * rate

def first_moment_prefactor(params):
    u"""Get polynomial prefactor of E[N] ~ prefactor exp(n phi), for p < 1."""

    if params.n is None:
        raise ParameterError("first-moment prefactor needs n")

    if params.p >= 1.0:
        raise ParameterError("first-moment prefactor needs p < 1, not {!r}".format(params.p))

    k, c, alpha, n = params.k, params.c, params.alpha, params.n
    b = solve_univariate_saddle(k, c).curvature

    return math.sqrt( k / (8.0 * math.pi * c ** 2 * params.one_minus_c * b * alpha * n) )

def first_moment_estimate(params):
    u"""Get ln of the saddle-point estimate of E[N], for p < 1."""
    return params.n * first_moment_growth_rate(params) + \
        math.log(first_moment_prefactor(params))

def log_hayman_coef_estimate(poly, m, e):
    u"""Get ln of the saddle-point estimate of the coefficient of y^e in q(y)^m."""

    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ParameterError("power m must be a positive integer, not {!r}".format(m))

    coefficients = _coefficients(poly)
    omega = e / m

    u, log_q, a, b, _ = _solve_log_target(coefficients, omega)

    return m * log_q - e * u - 0.5 * math.log(2.0 * math.pi * m * b)

def hayman_coef_estimate(poly, m, e):
    u"""Get saddle-point estimate q(y)^m / (y^e sqrt(2 pi m b_q(y))) of a coefficient."""

    log_estimate = log_hayman_coef_estimate(poly, m, e)

    try:
        return math.exp(log_estimate)
    except OverflowError:
        return math.inf

################################################################################

def _powdiff(base, incr, m):
    u"""Get (base + incr)^m - base^m without cancellation."""
    if m == 0:
        return np.zeros_like(base * incr)
    return base ** m * np.expm1(m * np.log1p(incr / base))

def _weights(k, c, one_minus_c, w):
    u"""Get normalized clause weights (w_f, w_s) and gamma for w."""

    gamma = (2.0 * c - 1.0) + one_minus_c * w
    wf = 2.0 * gamma / k
    ws = 2.0 * one_minus_c * (1.0 - w) / k

    return wf, ws, gamma

def _evaluate(k, wf, ws, eta, u, v, derivatives=True):
    u"""Evaluate the reduced saddle objective at t1 = t3 = e^u, t2 = e^v.

    The objective is phi(u, v) = w_f ln f + 2 w_s ln s(t1) - 2(1 - eta) u
    - eta v, the log of the summand's generating function divided by r
    less the target exponents. Its stationary point solves the saddle
    equations, and it is convex in (u, v).
    """

    with np.errstate(all='ignore'):

        x = np.exp(u)
        y = np.exp(v)

        P = 1.0 + x
        Q = P + x
        T = Q + y

        # f(x, y, x), as a sum of non-negative terms.
        f = _powdiff(Q, y, k)
        for a in range(1, k):
            f = f + comb(k, a) * x ** a * np.expm1((k - a) * np.log1p(x))

        s = np.expm1(k * np.log1p(x))

        log_f = np.log(f)
        log_s = np.log(s)

        phi = wf * log_f + 2.0 * ws * log_s - 2.0 * (1.0 - eta) * u - eta * v

        if not derivatives:
            return SimpleNamespace(phi=phi)

        f1 = k * _powdiff(P, x + y, k - 1)
        f2 = k * T ** (k - 1)
        f11 = k * (k - 1) * _powdiff(P, x + y, k - 2)
        fT = k * (k - 1) * T ** (k - 2)

        s1 = k * P ** (k - 1)
        s2 = k * (k - 1) * P ** (k - 2)

        r1 = x * f1 / f
        r2 = y * f2 / f
        rs = x * s1 / s

        d11 = x * x * f11 / f - r1 * r1 + r1
        d13 = x * x * fT / f - r1 * r1
        d12 = x * y * fT / f - r1 * r2
        d22 = y * y * fT / f - r2 * r2 + r2
        bs = rs + x * x * s2 / s - rs * rs

        a1 = wf * r1 + ws * rs
        a2 = wf * r2

        b11 = wf * d11 + ws * bs
        b13 = wf * d13
        b12 = wf * d12
        b22 = wf * d22

        return SimpleNamespace(
            phi = phi,
            log_f = log_f,
            log_s = log_s,
            f = f,
            s = s,
            a1 = a1,
            a2 = a2,
            gu = 2.0 * (a1 - (1.0 - eta)),
            gv = a2 - eta,
            huu = 2.0 * (b11 + b13),
            huv = 2.0 * b12,
            hvv = b22,
            b11 = b11,
            b12 = b12,
            b13 = b13,
            b22 = b22
        )

def _feasible(k, c, one_minus_c, eta, w):
    u"""Get mask of points meeting necessary conditions for a nonzero summand.

    Each clause satisfied only by the first assignment needs a literal true
    only under it; clauses satisfied by both need a literal true under each;
    unsatisfied clauses need k literals false under both; and literals true
    under both only sit in clauses satisfied by both.
    """

    wf, ws, gamma = _weights(k, c, one_minus_c, w)

    first_only = (1.0 - eta) - ws - np.maximum(0.0, wf - eta)
    false_both = eta - 2.0 * one_minus_c * w
    true_both = 2.0 * gamma - eta

    return (eta > 0.0) & (eta < 1.0) & (first_only > 0.0) & \
        (false_both > 0.0) & (true_both > 0.0)

def _escape_bound(k):
    return 600.0 / k

def _newton(k, c, one_minus_c, eta, w, u, v, solver):
    u"""Solve the reduced saddle system at many points with damped Newton.

    Returns:
        tuple: (u, v, status, residual, iterations) arrays.
    """

    eta = np.asarray(eta, dtype=float)
    w = np.asarray(w, dtype=float)
    u = np.array(u, dtype=float)
    v = np.array(v, dtype=float)

    size = eta.size
    status = np.full(size, FAILED, dtype=np.int8)
    residual = np.full(size, np.inf)
    iterations = np.zeros(size, dtype=int)

    wf_all, ws_all, _ = _weights(k, c, one_minus_c, w)

    bound = _escape_bound(k)
    tol = solver.tolerance

    active = np.arange(size)

    for it in range(solver.max_iterations + 1):

        if active.size == 0:
            break

        wf, ws, e = wf_all[active], ws_all[active], eta[active]
        ev = _evaluate(k, wf, ws, e, u[active], v[active])

        res = np.maximum(np.abs(ev.gu) / 2.0, np.abs(ev.gv))
        residual[active] = res

        done = res <= tol
        escaped = ~done & ( (np.abs(u[active]) > bound) | (np.abs(v[active]) > bound) |
            ~np.isfinite(ev.phi) | ~np.isfinite(res) )

        status[active[done]] = OK
        status[active[escaped]] = OFF_SUPPORT

        keep = ~done & ~escaped

        if it == solver.max_iterations or not np.any(keep):
            break

        active = active[keep]
        wf, ws, e = wf[keep], ws[keep], e[keep]
        phi, gu, gv = ev.phi[keep], ev.gu[keep], ev.gv[keep]
        huu, huv, hvv = ev.huu[keep], ev.huv[keep], ev.hvv[keep]
        res = res[keep]

        # Newton step from the closed-form 2x2 solve.
        with np.errstate(all='ignore'):
            det = huu * hvv - huv * huv
            du = -(hvv * gu - huv * gv) / det
            dv = -(huu * gv - huv * gu) / det

        slope = gu * du + gv * dv
        fallback = ~(det > 0.0) | ~np.isfinite(du) | ~np.isfinite(dv) | ~(slope < 0.0)
        du = np.where(fallback, -gu, du)
        dv = np.where(fallback, -gv, dv)

        # Cap step length in log space.
        scale = np.maximum(np.maximum(np.abs(du), np.abs(dv)) / solver.max_step, 1.0)
        du = du / scale
        dv = dv / scale
        slope = gu * du + gv * dv

        # Armijo backtracking on the convex objective.
        lam = np.ones(active.size)
        accepted = np.zeros(active.size, dtype=bool)

        for _ in range(40):

            pending = np.nonzero(~accepted)[0]
            if pending.size == 0:
                break

            ut = u[active[pending]] + lam[pending] * du[pending]
            vt = v[active[pending]] + lam[pending] * dv[pending]

            trial = _evaluate(k, wf[pending], ws[pending], e[pending], ut, vt)
            res_t = np.maximum(np.abs(trial.gu) / 2.0, np.abs(trial.gv))

            # Near the root the decrease in phi falls below its rounding
            # noise, so a falling residual also accepts the step.
            armijo = trial.phi <= phi[pending] + 1e-4 * lam[pending] * slope[pending]
            shrinks = res_t <= (1.0 - 1e-4 * lam[pending]) * res[pending]

            ok = np.isfinite(trial.phi) & np.isfinite(res_t) & (armijo | shrinks)

            idx = pending[ok]
            u[active[idx]] += lam[idx] * du[idx]
            v[active[idx]] += lam[idx] * dv[idx]
            accepted[idx] = True

            lam[pending[~ok]] *= 0.5

        iterations[active] += 1

        # Stalled line searches sit at the rounding floor of the objective.
        stalled = ~accepted
        if np.any(stalled):
            floor_ok = stalled & (res <= 1e4 * tol)
            status[active[floor_ok]] = OK
            active = active[~stalled]

    return u, v, status, residual, iterations

def _bracket_point(k, c, one_minus_c, eta, w):
    u"""Solve one reduced saddle system by nested log-space bracketing.

    The inner root solves the t2 equation, which is increasing in v; the
    outer root solves the t1 equation along that curve, increasing in u.

    Returns:
        tuple: (u, v), or None if no bracket is found.
    """

    wf, ws, _ = _weights(k, c, one_minus_c, np.array([w]))
    e = np.array([eta])
    limit = min(_escape_bound(k), 60.0)

    def evaluate(u, v):
        return _evaluate(k, wf, ws, e, np.array([u]), np.array([v]))

    def v_star(u):
        g = lambda v: float(evaluate(u, v).gv[0])
        lo, hi = -limit, limit
        glo, ghi = g(lo), g(hi)
        if not (np.isfinite(glo) and np.isfinite(ghi) and glo < 0.0 < ghi):
            raise ValueError
        return brentq(g, lo, hi, xtol=1e-14, maxiter=500)

    def outer(u):
        return float(evaluate(u, v_star(u)).gu[0])

    try:
        lo, hi = -limit, limit
        glo, ghi = outer(lo), outer(hi)
        if not glo < 0.0 < ghi:
            return None
        u = brentq(outer, lo, hi, xtol=1e-14, maxiter=500)
        return u, v_star(u)
    except (ValueError, RuntimeError):
        return None

def _initial_guess(k, c, eta):
    u"""Get starting point from the first-moment saddle."""

    omega = k / (2.0 * c) - 1.0
    u0 = _univariate(k, float(c))[0] if 0.0 < omega < k - 1 else 0.0

    with np.errstate(divide='ignore'):
        logit = np.log(eta) - np.log1p(-eta)

    u = np.full(np.shape(eta), u0)
    v = 2.0 * u0 + logit

    return u, v

def _solve_points(k, c, one_minus_c, eta, w, solver, guess=None):
    u"""Solve the reduced saddle system at interior points.

    Returns:
        tuple: (u, v, status, residual, iterations, method) arrays.
    """

    eta = np.asarray(eta, dtype=float)
    w = np.asarray(w, dtype=float)

    size = eta.size
    u = np.zeros(size)
    v = np.zeros(size)
    status = np.full(size, OFF_SUPPORT, dtype=np.int8)
    residual = np.full(size, np.inf)
    iterations = np.zeros(size, dtype=int)
    method = np.full(size, u'newton', dtype=object)

    feasible = np.nonzero(_feasible(k, c, one_minus_c, eta, w))[0]

    if feasible.size == 0:
        return u, v, status, residual, iterations, method

    if guess is None:
        u0, v0 = _initial_guess(k, c, eta[feasible])
    else:
        u0 = np.broadcast_to(np.asarray(guess[0], dtype=float), eta.shape)[feasible]
        v0 = np.broadcast_to(np.asarray(guess[1], dtype=float), eta.shape)[feasible]

    uf, vf, sf, rf, itf = _newton(k, c, one_minus_c, eta[feasible], w[feasible],
        u0, v0, solver)

    u[feasible], v[feasible] = uf, vf
    status[feasible], residual[feasible], iterations[feasible] = sf, rf, itf

    return u, v, status, residual, iterations, method

################################################################################

def _entropy_part(c, one_minus_c, w):
    u"""Get h(c) + c h(gamma/c) + (1 - c) h((c - gamma)/(1 - c)) at w."""

    if one_minus_c == 0.0:
        return np.zeros_like(np.asarray(w, dtype=float))

    w = np.asarray(w, dtype=float)
    delta = one_minus_c * (1.0 - w) / c

    return binary_entropy(one_minus_c) + c * binary_entropy(delta) + \
        one_minus_c * binary_entropy(w)

def _boundary_rate_part(k, c, one_minus_c, eta):
    u"""Get alpha-coefficient B at eta = 0 or eta = 1 on its single supported gamma.

    At eta = 1 the two assignments coincide and B equals the first-moment
    coefficient. At eta = 0 they are complementary; no literal is false under
    both, so every clause is full of true literals and the summand reduces
    to the balanced coefficient of a homogeneous polynomial.
    """

    if eta == 1.0:
        return -k * _LN2 + _first_moment_rate_part(k, c, one_minus_c)

    gamma = 2.0 * c - 1.0
    entropy = binary_entropy(one_minus_c) + c * binary_entropy(one_minus_c / c)

    return -k * _LN2 + entropy + gamma * math.log(2.0 ** k - 2.0)

@dataclass
class SurfaceGrid(object):
    u"""Saddle solutions of the second-moment summand on an (eta, w) grid.

    Rows index eta and columns index w. Boundary rows eta = 0 and eta = 1
    hold reduced-system values on their single supported column.
    """

    k: int
    c: float
    one_minus_c: float
    eta: np.ndarray
    w: np.ndarray
    u: np.ndarray
    v: np.ndarray
    status: np.ndarray
    residual: np.ndarray
    entropy: np.ndarray = field(repr=False, default=None)
    rate: np.ndarray = field(repr=False, default=None)

    @property
    def gamma(self):
        return (2.0 * self.c - 1.0) + self.one_minus_c * self.w

    @property
    def failed(self):
        u"""list: (eta, gamma) of points where the solver failed."""
        gamma = self.gamma
        return [ (float(self.eta[i]), float(gamma[j]))
            for i, j in zip(*np.nonzero(self.status == FAILED)) ]

    def values(self, alpha):
        u"""Get growth-rate surface s for clause density alpha."""
        with np.errstate(invalid='ignore'):
            s = self.entropy + alpha * self.rate
        return np.where(self.status == OK, s, -np.inf)

def _rate_part(k, c, one_minus_c, eta, w, u, v):
    u"""Get B(eta, gamma) at solved interior points."""

    wf, ws, _ = _weights(k, c, one_minus_c, w)
    phi = _evaluate(k, wf, ws, eta, u, v, derivatives=False).phi

    entropy = _LN2 + binary_entropy(eta)

    return -k * entropy + _entropy_part(c, one_minus_c, w) + 0.5 * k * phi

def _warm_start(grid, solver):
    u"""Retry failed grid points from their nearest converged neighbour."""

    k, c, omc = grid.k, grid.c, grid.one_minus_c

    for axis in (0, 1):

        failed = np.argwhere(grid.status == FAILED)
        if failed.size == 0:
            return

        for i, j in failed:

            # Search along the row (axis 0: eta) or column (axis 1: w).
            line = grid.status[:, j] if axis == 0 else grid.status[i, :]
            position = i if axis == 0 else j
            ok = np.nonzero(line == OK)[0]
            if ok.size == 0:
                continue
            nearest = ok[np.argmin(np.abs(ok - position))]
            ni, nj = (nearest, j) if axis == 0 else (i, nearest)

            u, v, status, residual, _, _ = _solve_points(k, c, omc,
                grid.eta[i:i + 1], grid.w[j:j + 1], solver,
                guess=(grid.u[ni, nj], grid.v[ni, nj]))

            if status[0] != FAILED:
                grid.u[i, j], grid.v[i, j] = u[0], v[0]
                grid.status[i, j], grid.residual[i, j] = status[0], residual[0]

def _bracket_failed(grid, solver):
    u"""Solve remaining failed grid points by bracketing, then polish."""

    k, c, omc = grid.k, grid.c, grid.one_minus_c

    for i, j in np.argwhere(grid.status == FAILED):

        root = _bracket_point(k, c, omc, float(grid.eta[i]), float(grid.w[j]))
        if root is None:
            continue

        u, v, status, residual, _, _ = _solve_points(k, c, omc,
            grid.eta[i:i + 1], grid.w[j:j + 1], solver, guess=root)

        if status[0] == OK:
            grid.u[i, j], grid.v[i, j] = u[0], v[0]
            grid.status[i, j], grid.residual[i, j] = OK, residual[0]

def solve_saddle_grid(k, p, eta_nodes, w_nodes, solver=None):
    u"""Solve second-moment saddle systems on an (eta, w) grid.

    Args:
        k (int): Clause width.
        p (float): Satisfaction fraction.
        eta_nodes (array): Agreement fractions in [0, 1].
        w_nodes (array): Normalized intersections in [0, 1].
        solver (SolverConfig): Solver settings [default: from config].

    Returns:
        SurfaceGrid: Saddle solutions and surface parts.
    """

    solver = solver or SolverConfig.from_config()

    c = c_of_p(k, p)
    omc = (1.0 - float(p)) * 2.0 ** (-k)

    eta_nodes = np.asarray(eta_nodes, dtype=float)
    w_nodes = np.asarray(w_nodes, dtype=float)

    if np.any( (eta_nodes < 0.0) | (eta_nodes > 1.0) ):
        raise ParameterError("eta nodes must lie in [0, 1]")
    if np.any( (w_nodes < 0.0) | (w_nodes > 1.0) ):
        raise ParameterError("w nodes must lie in [0, 1]")

    E, W = np.meshgrid(eta_nodes, w_nodes, indexing='ij')
    shape = E.shape

    u, v, status, residual, iterations, _ = _solve_points(k, c, omc,
        E.ravel(), W.ravel(), solver)

    grid = SurfaceGrid(k=k, c=c, one_minus_c=omc, eta=eta_nodes, w=w_nodes,
        u=u.reshape(shape), v=v.reshape(shape), status=status.reshape(shape),
        residual=residual.reshape(shape))

    if np.any(grid.status == FAILED):
        logger.debug("{} grid points failed; retrying from neighbours".format(
            int(np.sum(grid.status == FAILED))))
        _warm_start(grid, solver)
        _bracket_failed(grid, solver)

    entropy = _LN2 + binary_entropy(E)
    rate = np.full(shape, -np.inf)

    interior = grid.status == OK
    if np.any(interior):
        rate[interior] = _rate_part(k, c, omc, E[interior], W[interior],
            grid.u[interior], grid.v[interior])

    # Boundary rows from reduced systems.
    for i, eta in enumerate(eta_nodes):
        if eta in (0.0, 1.0):
            supported = 0.0 if eta == 0.0 else 1.0
            for j, w in enumerate(w_nodes):
                if w == supported or omc == 0.0:
                    grid.status[i, j] = OK
                    rate[i, j] = _boundary_rate_part(k, c, omc, eta)
                else:
                    grid.status[i, j] = OFF_SUPPORT

    grid.entropy = entropy
    grid.rate = rate

    n_failed = int(np.sum(grid.status == FAILED))
    logger.debug("solved {}x{} saddle grid for k={}, p={!r}: {} failed, max residual {:.3g}".format(
        shape[0], shape[1], k, p, n_failed,
        float(np.max(grid.residual[grid.status == OK], initial=0.0))))

    return grid

def surface_points(k, p, eta, w, alpha, solver=None, guess=None):
    u"""Evaluate the growth-rate surface at scattered (eta, w) points.

    Args:
        k (int): Clause width.
        p (float): Satisfaction fraction.
        eta (array): Agreement fractions.
        w (array): Normalized intersections, broadcast against eta.
        alpha (float): Clause density.
        solver (SolverConfig): Solver settings [default: from config].
        guess (tuple): Optional starting (u, v) in log coordinates.

    Returns:
        tuple: Flat (values, status, u, v) arrays.
    """

    solver = solver or SolverConfig.from_config()

    c = c_of_p(k, p)
    omc = (1.0 - float(p)) * 2.0 ** (-k)

    eta, w = np.broadcast_arrays(np.asarray(eta, dtype=float), np.asarray(w, dtype=float))
    eta = eta.ravel().copy()
    w = w.ravel().copy()

    u, v, status, _, _, _ = _solve_points(k, c, omc, eta, w, solver, guess=guess)

    for q in np.nonzero(status == FAILED)[0]:

        root = _bracket_point(k, c, omc, float(eta[q]), float(w[q]))
        if root is None:
            continue

        uq, vq, sq, _, _, _ = _solve_points(k, c, omc, eta[q:q + 1], w[q:q + 1],
            solver, guess=root)
        if sq[0] == OK:
            u[q], v[q], status[q] = uq[0], vq[0], OK

    values = np.full(eta.shape, -np.inf)

    ok = status == OK
    if np.any(ok):
        values[ok] = _LN2 + binary_entropy(eta[ok]) + alpha * _rate_part(k, c, omc,
            eta[ok], w[ok], u[ok], v[ok])

    for boundary, supported in ((0.0, 0.0), (1.0, 1.0)):
        on_row = eta == boundary
        if not np.any(on_row):
            continue
        on_support = on_row & ( (w == supported) | (omc == 0.0) )
        status[on_row] = OFF_SUPPORT
        status[on_support] = OK
        values[on_support] = _LN2 + alpha * _boundary_rate_part(k, c, omc, boundary)

    return values, status, u, v

def surface_upper_bound(k, p, eta, w, alpha, u, v):
    u"""Get upper bounds on s at interior (eta, w) from any log-saddle iterates.

    The reduced objective is convex and s takes its minimum, so its value at
    an unconverged (u, v) bounds s from above. Non-finite bounds are +inf.
    """

    c = c_of_p(k, p)
    omc = (1.0 - float(p)) * 2.0 ** (-k)

    eta, w, u, v = np.broadcast_arrays(*( np.asarray(x, dtype=float)
        for x in (eta, w, u, v) ))

    with np.errstate(all='ignore'):
        bound = _LN2 + binary_entropy(eta) + alpha * _rate_part(k, c, omc, eta, w, u, v)

    return np.where(np.isfinite(bound), bound, np.inf)

################################################################################

def _gamma_to_w(params, gamma):

    c, omc = params.c, params.one_minus_c

    if omc == 0.0:
        if not math.isclose(gamma, 1.0, rel_tol=0.0, abs_tol=1e-15):
            raise ParameterError("gamma must be 1 when p = 1, not {!r}".format(gamma))
        return 1.0

    low = 2.0 * c - 1.0
    if not low - 1e-15 <= gamma <= c + 1e-15:
        raise ParameterError("gamma must be in [2c-1, c] = [{!r}, {!r}], not {!r}".format(
            low, c, gamma))

    return min(max((gamma - low) / omc, 0.0), 1.0)

def _validate_eta(eta):
    eta = float(eta)
    if not 0.0 <= eta <= 1.0:
        raise ParameterError("agreement fraction eta must be in [0, 1], not {!r}".format(eta))
    return eta

def _curvature(params, ev, index=0):
    u"""Get B_g = r B for the normalized curvature at an evaluated point."""

    b11, b12, b13, b22 = [ float(getattr(ev, name)[index])
        for name in ('b11', 'b12', 'b13', 'b22') ]

    normalized = np.array([
        [b11, b12, b13],
        [b12, b22, b12],
        [b13, b12, b11]
    ])

    curvature = float(params.r) * normalized

    return curvature, float(np.linalg.det(curvature))

def solve_trivariate_saddle(params, eta, gamma, guess=None, solver=None):
    u"""Solve the second-moment saddle system at an interior (eta, gamma).

    Args:
        params (Params): Model parameters.
        eta (float): Agreement fraction in (0, 1).
        gamma (float): Fraction of clauses satisfied by both assignments.
        guess (tuple): Optional starting (t1, t2).
        solver (SolverConfig): Solver settings [default: from config].

    Returns:
        SaddleSolution: (t1, t2, t3) with curvature B_g and |B_g|.
    """

    solver = solver or SolverConfig.from_config()

    eta = _validate_eta(eta)
    if eta in (0.0, 1.0):
        raise ParameterError("trivariate saddle needs eta in (0, 1), not {!r}".format(eta))

    w = _gamma_to_w(params, gamma)
    k, c, omc = params.k, params.c, params.one_minus_c

    if guess is not None:
        guess = (math.log(guess[0]), math.log(guess[1]))

    u, v, status, residual, iterations, _ = _solve_points(k, c, omc,
        np.array([eta]), np.array([w]), solver, guess=guess)
    method = u'newton' if iterations[0] <= 1 else u'damped-newton'

    if status[0] == FAILED:
        root = _bracket_point(k, c, omc, eta, w)
        if root is not None:
            u, v, status, residual, more, _ = _solve_points(k, c, omc,
                np.array([eta]), np.array([w]), solver, guess=root)
            iterations = iterations + more
            method = u'bracket'

    if status[0] == OFF_SUPPORT:
        raise SaddleError("summand vanishes at eta={!r}, gamma={!r}: no saddle point".format(
            eta, gamma), point=(eta, gamma))

    if status[0] != OK:
        raise SaddleError("saddle solver failed at eta={!r}, gamma={!r} (residual {:.3g})".format(
            eta, gamma, residual[0]), point=(eta, gamma))

    wf, ws, _ = _weights(k, c, omc, np.array([w]))
    ev = _evaluate(k, wf, ws, np.array([eta]), u, v)
    curvature, determinant = _curvature(params, ev)

    x, y = math.exp(u[0]), math.exp(v[0])

    return SaddleSolution(variables=(x, y, x), residual_norm=float(residual[0]),
        curvature=curvature, determinant=determinant,
        iterations=int(iterations[0]), method=method)

def growth_rate_surface(params, eta, gamma, solver=None):
    u"""Get growth rate s(eta, gamma) of the second-moment summand.

    Points where the summand vanishes identically have value -inf.
    """

    eta = _validate_eta(eta)
    w = _gamma_to_w(params, gamma)
    k, c, omc, alpha = params.k, params.c, params.one_minus_c, params.alpha

    entropy = _LN2 + binary_entropy(eta)

    if eta in (0.0, 1.0):

        supported = 0.0 if eta == 0.0 else 1.0
        if not ( omc == 0.0 or w == supported ):
            return GrowthRatePoint(eta=eta, gamma=gamma, value=-math.inf, saddle=None)

        value = entropy + alpha * _boundary_rate_part(k, c, omc, eta)

        # At eta = 1 the pair collapses onto the first-moment saddle.
        saddle = None
        if eta == 1.0 and 0.0 < k / (2.0 * c) - 1.0 < k - 1:
            first = solve_univariate_saddle(k, c)
            saddle = SaddleSolution(variables=(0.0, first.variables[0], 0.0),
                residual_norm=first.residual_norm, curvature=first.curvature,
                determinant=first.determinant, iterations=first.iterations,
                method=u'reduced')

        return GrowthRatePoint(eta=eta, gamma=gamma, value=value, saddle=saddle)

    try:
        saddle = solve_trivariate_saddle(params, eta, gamma, solver=solver)
    except SaddleError as e:
        if u'vanishes' in str(e):
            return GrowthRatePoint(eta=eta, gamma=gamma, value=-math.inf, saddle=None)
        raise

    t1, t2, _ = saddle.variables
    rate = float(_rate_part(k, c, omc, np.array([eta]), np.array([w]),
        np.array([math.log(t1)]), np.array([math.log(t2)]))[0])

    return GrowthRatePoint(eta=eta, gamma=gamma, value=entropy + alpha * rate,
        saddle=saddle)

def stationarity_residuals(params, eta, gamma, saddle):
    u"""Get (R_eta, R_gamma), the partial-derivative residuals of s.

    ds/deta = R_eta and ds/dgamma = alpha R_gamma.
    """

    eta = _validate_eta(eta)
    k, c, omc, alpha, r = params.k, params.c, params.one_minus_c, params.alpha, float(params.r)
    w = _gamma_to_w(params, gamma)

    t1, t2, t3 = saddle.variables

    r_eta = (1.0 - k * alpha) * (math.log1p(-eta) - math.log(eta)) + \
        r * (math.log(t1) + math.log(t3) - math.log(t2))

    if omc == 0.0:
        return r_eta, 0.0

    c_minus_gamma = omc * (1.0 - w)
    neither = omc * w
    gamma = (2.0 * c - 1.0) + omc * w

    wf, ws, _ = _weights(k, c, omc, np.array([w]))
    ev = _evaluate(k, wf, ws, np.array([eta]), np.array([math.log(t1)]),
        np.array([math.log(t2)]))

    with np.errstate(divide='ignore'):
        r_gamma = 2.0 * math.log(c_minus_gamma) - math.log(gamma) - \
            math.log(neither) + float(ev.log_f[0]) - 2.0 * float(ev.log_s[0])

    return r_eta, r_gamma

def surface_gradient(params, eta, gamma, solver=None):
    u"""Get analytic gradient (ds/deta, ds/dgamma) of the growth-rate surface."""

    point = growth_rate_surface(params, eta, gamma, solver=solver)

    if point.saddle is None or point.saddle.method == u'reduced':
        raise SaddleError("no interior saddle at eta={!r}, gamma={!r}".format(eta, gamma),
            point=(eta, gamma))

    r_eta, r_gamma = stationarity_residuals(params, eta, gamma, point.saddle)

    return r_eta, params.alpha * r_gamma

################################################################################

@regfunc
def surface(k, r, p=1.0, grid=51):
    u"""Tabulate the second-moment growth-rate surface.

    The surface is evaluated on a uniform grid over eta in [0, 1] and
    gamma in [2c-1, c]. Points where the summand vanishes have s = -inf.

    Args:
        k (int): Clause width.
        r (float): Literal degree.
        p (float): Satisfaction fraction [default: 1.0].
        grid (int): Grid points per axis [default: 51].

    Returns:
        Table: Surface values with columns eta, gamma, s and status.
    """

    params = Params(k=k, r=r, p=p)

    if grid < 2:
        raise ParameterError("grid must have at least 2 points per axis, not {!r}".format(grid))

    eta_nodes = np.linspace(0.0, 1.0, grid)
    w_nodes = np.linspace(0.0, 1.0, grid) if params.one_minus_c > 0.0 else np.array([1.0])

    sg = solve_saddle_grid(k, p, eta_nodes, w_nodes)
    values = sg.values(params.alpha)
    gamma = sg.gamma

    labels = { OK: u'ok', OFF_SUPPORT: u'off-support', FAILED: u'failed' }

    rows = list()
    for i, eta in enumerate(eta_nodes):
        for j in range(len(w_nodes)):
            rows.append([ float(eta), float(gamma[j]), float(values[i, j]),
                labels[int(sg.status[i, j])] ])

    return Table(rows, headings=(u'eta', u'gamma', u's', u'status'))

@regfunc
def moments(k, n, r, p=1.0):
    u"""Compare exact moments of a small instance with their asymptotics.

    Args:
        k (int): Clause width.
        n (int): Number of variables.
        r (int): Literal degree.
        p (float): Satisfaction fraction [default: 1.0].

    Returns:
        Record: Exact moments, their ratio and asymptotic estimates.
    """

    params = Params(k=k, r=r, p=p, n=n)

    first = exact_first_moment(params)
    second = exact_second_moment(params)

    record = Record()
    record[u'k'] = k
    record[u'n'] = n
    record[u'r'] = r
    record[u'p'] = params.p
    record[u'alpha'] = params.alpha
    record[u'c'] = params.c
    record[u'first_moment'] = str(first.value)
    record[u'first_moment_float'] = float(first)
    record[u'second_moment'] = str(second.value)
    record[u'second_moment_float'] = float(second)

    if first.value > 0:
        record[u'second_over_first_squared'] = float(second.value / first.value ** 2)
    else:
        record[u'second_over_first_squared'] = None

    record[u'log_first_per_variable'] = first.per_variable()
    record[u'first_moment_growth_rate'] = first_moment_growth_rate(params)

    try:
        estimate = first_moment_estimate(params)
    except (ParameterError, DegenerateSaddleError):
        record[u'first_moment_estimate'] = None
        record[u'exact_over_estimate'] = None
    else:
        record[u'first_moment_estimate'] = math.exp(estimate)
        record[u'exact_over_estimate'] = math.exp(first.log_value() - estimate)

    return record

################################################################################

__all__ = ['a_q', 'b_q', 'first_moment_estimate', 'first_moment_growth_rate',
    'first_moment_prefactor', 'GrowthRatePoint', 'growth_rate_surface',
    'hayman_coef_estimate', 'log_hayman_coef_estimate', 'SaddleSolution',
    'solve_saddle_grid', 'surface_points', 'surface_upper_bound', 'solve_trivariate_saddle',
    'solve_univariate_saddle', 'SolverConfig', 'stationarity_residuals', 'surface_gradient',
    'SurfaceGrid']

################################################################################
