#!/usr/bin/env python3
# -*- coding: utf-8 -*-
u"""regsat threshold bounds module.

Upper bounds on the p-satisfiability threshold from the first moment, and
lower bounds from the second moment: below the critical literal degree r*
the growth-rate surface of the second-moment summand has its unique global
maximum at (eta, gamma) = (1/2, c^2), where it equals twice the first-moment
growth rate.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from dataclasses import field
from functools import lru_cache
import logging
import math
import warnings

import numpy as np
from scipy import ndimage
from scipy.special import expit
from scipy.special import logit
from scipy.special import xlogy

from regsat.asymptotics import FAILED
from regsat.asymptotics import growth_rate_surface
from regsat.asymptotics import OK
from regsat.asymptotics import solve_saddle_grid
from regsat.asymptotics import solve_trivariate_saddle
from regsat.asymptotics import solve_univariate_saddle
from regsat.asymptotics import SolverConfig
from regsat.asymptotics import surface_points
from regsat.asymptotics import surface_upper_bound
from regsat.core import const
from regsat.core.action import Record
from regsat.core.action import regfunc
from regsat.core.config import config
from regsat.core.errors import MonotonicityError
from regsat.core.errors import ParameterError
from regsat.core.errors import SaddleError
from regsat.core.table import Table
from regsat.params import binary_entropy
from regsat.params import c_of_p
from regsat.params import Params

logger = logging.getLogger(__name__)

################################################################################

DOMINANT = u'dominant'
NOT_DOMINANT = u'not dominant'
INCONCLUSIVE = u'inconclusive'

_LN2 = math.log(2.0)

################################################################################

@dataclass(frozen=True)
class GridConfig(object):
    u"""Dominance grid settings."""

    size: int = 201
    margin: float = 1e-6
    refine_levels: int = 2
    refine_factor: int = 8
    exclusion_radius: float = 1e-3
    clamp: float = 1e-4

    def __post_init__(self):
        if isinstance(self.size, bool) or not isinstance(self.size, int) or \
            self.size < 5 or self.size % 2 == 0:
            raise ParameterError("grid size must be an odd integer of at least 5, not {!r}".format(
                self.size))
        if not 0.0 < self.clamp < 0.5:
            raise ParameterError("grid clamp must be in (0, 0.5), not {!r}".format(self.clamp))

    @classmethod
    def from_config(cls, **overrides):
        u"""Get grid settings from package config, with overrides."""
        settings = { name: config[u'grid', name] for name in (u'size', u'margin',
            u'refine_levels', u'refine_factor', u'exclusion_radius', u'clamp') }
        settings.update( (k, v) for k, v in overrides.items() if v is not None )
        return cls(**settings)

    def meta(self):
        u"""Get compact description for table output."""
        return u'size={};margin={:g};refine={}x{};exclusion={:g};clamp={:g}'.format(
            self.size, self.margin, self.refine_levels, self.refine_factor,
            self.exclusion_radius, self.clamp)

@dataclass(frozen=True)
class SearchConfig(object):
    u"""Critical-degree search settings."""

    rel_tol: float = 1e-4
    max_scans: int = 25

    @classmethod
    def from_config(cls, **overrides):
        u"""Get search settings from package config, with overrides."""
        settings = {
            u'rel_tol': config[u'search', u'rel_tol'],
            u'max_scans': config[u'search', u'max_scans']
        }
        settings.update( (k, v) for k, v in overrides.items() if v is not None )
        return cls(**settings)

@dataclass(frozen=True)
class DominanceReport(object):
    u"""Outcome of a dominance check at one literal degree.

    Attributes:
        params (Params): Model parameters.
        grid (GridConfig): Grid settings used.
        dominant_value (float): Surface value s* at (1/2, c^2).
        max_surplus (float): Largest s - s* over competing maxima, or -inf.
        surplus_location (tuple): (eta, gamma) of the largest surplus.
        refinement_depth (int): Refinement levels applied.
        exclusion_radius (float): Radius around the dominant point in the
            (eta, w) plane attributed to the dominant peak.
        verdict (str): 'dominant', 'not dominant' or 'inconclusive'.
        candidates (int): Competing local maxima examined.
        failed_points (tuple): (eta, gamma) points where the solver failed
            and s could still exceed s*.
        dismissed_failures (int): Failed points attributed to the dominant
            peak or bounded below s* by their last iterate.
        hessian_eigenvalues (tuple): Eigenvalues of the surface Hessian at
            the dominant point, in logit coordinates.
    """

    params: Params
    grid: GridConfig
    dominant_value: float
    max_surplus: float
    surplus_location: object
    refinement_depth: int
    exclusion_radius: float
    verdict: str
    candidates: int
    failed_points: tuple = ()
    dismissed_failures: int = 0
    hessian_eigenvalues: tuple = ()
    solver: SolverConfig = field(default=None, repr=False, compare=False)

    def surplus(self, eta, gamma):
        u"""Get s(eta, gamma) - s* at a point."""

        c = self.params.c
        if eta == 0.5 and math.isclose(gamma, c * c, rel_tol=0.0, abs_tol=1e-15):
            return 0.0

        point = growth_rate_surface(self.params, eta, gamma, solver=self.solver)

        return point.value - self.dominant_value

    def as_record(self):
        u"""Get report as a JSON-ready record."""

        record = Record()
        record[u'k'] = self.params.k
        record[u'r'] = self.params.r
        record[u'p'] = self.params.p
        record[u'alpha'] = self.params.alpha
        record[u'verdict'] = self.verdict
        record[u'dominant_value'] = self.dominant_value
        record[u'max_surplus'] = self.max_surplus
        record[u'surplus_location'] = self.surplus_location
        record[u'candidates'] = self.candidates
        record[u'refinement_depth'] = self.refinement_depth
        record[u'exclusion_radius'] = self.exclusion_radius
        record[u'margin'] = self.grid.margin
        record[u'hessian_eigenvalues'] = list(self.hessian_eigenvalues)
        record[u'failed_points'] = [ list(x) for x in self.failed_points ]
        record[u'dismissed_failures'] = self.dismissed_failures
        record[u'grid_meta'] = self.grid.meta()

        return record

@dataclass(frozen=True)
class ThresholdBounds(object):
    u"""Upper and lower threshold bounds for one (k, p)."""

    k: int
    p: float
    alpha_upper: float
    alpha_upper_tight: float
    r_star_real: float
    r_star_int: int
    alpha_lower: float
    ratio: float
    verdict: str
    grid_meta: str
    scans: int = 0
    converged: bool = True

    _row_headings = (u'k', u'p', u'alpha_upper', u'alpha_upper_tight', u'r_star_real',
        u'r_star_int', u'alpha_lower', u'ratio', u'verdict', u'grid_meta')

    def as_row(self):
        u"""Get table row, in the order of `ThresholdBounds._row_headings`."""
        return [ getattr(self, h) for h in self._row_headings ]

################################################################################

def _validate_p(p):
    try:
        p = float(p)
    except (TypeError, ValueError):
        raise ParameterError("satisfaction fraction p must be a number, not {!r}".format(p))
    if not 1e-6 <= p <= 1.0:
        raise ParameterError("upper bound needs p in [1e-6, 1], not {!r}".format(p))
    return p

def upper_bound(k, p):
    u"""Get first-moment upper bounds on the p-satisfiability threshold.

    Args:
        k (int): Clause width.
        p (float): Satisfaction fraction in [1e-6, 1].

    Returns:
        tuple: (alpha_upper, alpha_upper_tight), where the first is the
            closed-form bound 2^k ln 2 / (p + (1-p) ln(1-p)) and the second
            the root of the uniform first-moment exponent.
    """

    p = _validate_p(p)
    c = c_of_p(k, p)
    one_minus_c = (1.0 - p) * 2.0 ** (-k)

    q = 1.0 - p
    alpha_upper = 2.0 ** k * _LN2 / (p + xlogy(q, q))

    denominator = k * _LN2 - binary_entropy(one_minus_c) - c * math.log(2.0 ** k - 1.0)
    alpha_upper_tight = _LN2 / denominator

    return alpha_upper, alpha_upper_tight

################################################################################

def _axis_nodes(size, floor, clamp):
    u"""Get logit-spaced interior nodes in [floor, 1 - clamp] plus exact endpoints."""
    interior = expit(np.linspace(logit(floor), logit(1.0 - clamp), size - 2))
    return np.concatenate([ [0.0], interior, [1.0] ])

def _w_floor(one_minus_c, clamp):
    # The dominant point sits at w = 1 - c.
    return min(clamp, one_minus_c / 100.0)

@lru_cache(maxsize=32)
def _coarse_grid(k, p, grid, solver):
    u"""Get coarse saddle grid for (k, p); shared by every r."""

    one_minus_c = (1.0 - p) * 2.0 ** (-k)

    eta_nodes = _axis_nodes(grid.size, grid.clamp, grid.clamp)

    if one_minus_c == 0.0:
        w_nodes = np.array([1.0])
    else:
        w_nodes = _axis_nodes(grid.size, _w_floor(one_minus_c, grid.clamp), grid.clamp)

    logger.info("solving {}x{} saddle grid for k={}, p={!r}".format(len(eta_nodes),
        len(w_nodes), k, p))

    return solve_saddle_grid(k, p, eta_nodes, w_nodes, solver=solver)

def _gamma_of(params, w):
    return (2.0 * params.c - 1.0) + params.one_minus_c * w

def _dominant_point(params, solver):
    u"""Get (w*, s*, log-saddle guess) at the dominant point."""

    k, p, c = params.k, params.p, params.c

    w_star = 1.0 if params.one_minus_c == 0.0 else params.one_minus_c
    x = solve_univariate_saddle(k, c).variables[0]
    guess = (math.log(x), 2.0 * math.log(x))

    values, status, u, v = surface_points(k, p, [0.5], [w_star], params.alpha,
        solver=solver, guess=guess)

    if status[0] != OK:
        raise SaddleError("saddle solver failed at the dominant point",
            point=(0.5, c * c))

    return w_star, float(values[0]), (float(u[0]), float(v[0]))

def _dominant_hessian(params, w_star, guess, solver, delta=1e-3):
    u"""Get Hessian eigenvalues of s at the dominant point in logit coordinates."""

    k, p, alpha = params.k, params.p, params.alpha
    steps = delta * np.array([-1.0, 0.0, 1.0])

    if params.one_minus_c == 0.0:

        values = surface_points(k, p, expit(steps), [1.0], alpha, solver=solver,
            guess=guess)[0]
        if not np.all(np.isfinite(values)):
            raise SaddleError("saddle solver failed next to the dominant point",
                point=(0.5, 1.0))

        return ( float((values[0] - 2.0 * values[1] + values[2]) / delta ** 2), )

    A, B = np.meshgrid(steps, logit(w_star) + steps, indexing='ij')

    V = surface_points(k, p, expit(A), expit(B), alpha, solver=solver,
        guess=guess)[0].reshape(3, 3)

    if not np.all(np.isfinite(V)):
        raise SaddleError("saddle solver failed next to the dominant point",
            point=(0.5, params.c ** 2))

    haa = (V[2, 1] - 2.0 * V[1, 1] + V[0, 1]) / delta ** 2
    hbb = (V[1, 2] - 2.0 * V[1, 1] + V[1, 0]) / delta ** 2
    hab = (V[2, 2] - V[2, 0] - V[0, 2] + V[0, 0]) / (4.0 * delta ** 2)

    eigenvalues = np.linalg.eigvalsh(np.array([ [haa, hab], [hab, hbb] ]))

    return tuple( float(x) for x in eigenvalues )

def _half_width(nodes, i):
    u"""Get logit distance from node i to its farther interior neighbour."""

    centre = logit(nodes[i])
    gaps = [ abs(logit(nodes[q]) - centre) for q in (i - 1, i + 1)
        if 0 <= q < len(nodes) and 0.0 < nodes[q] < 1.0 ]

    return max(gaps) if gaps else 1.0

def _local_maxima(values):
    u"""Get grid indices of local maxima of finite surface values."""

    finite = np.isfinite(values)
    peaks = ndimage.maximum_filter(values, size=3, mode='constant', cval=-np.inf)

    return [ tuple(int(x) for x in ij) for ij in np.argwhere(finite & (values >= peaks)) ]

def _refine(params, sg, values, i, j, grid, solver, retry_guess=None):
    u"""Refine a grid local maximum in successively finer logit windows.

    Points the solver fails at are retried from retry_guess, if given.

    Returns:
        tuple: (value, eta, w, failed) where failed lists (eta, w, u, v) of
            refinement points the solver could not resolve, with their last
            iterates.
    """

    k, p, alpha = params.k, params.p, params.alpha

    eta0, w0 = float(sg.eta[i]), float(sg.w[j])
    best = (float(values[i, j]), eta0, w0)
    failed = list()

    # Boundary coordinates stay fixed.
    eta_fixed = eta0 in (0.0, 1.0)
    w_fixed = len(sg.w) == 1 or w0 in (0.0, 1.0)

    if eta_fixed and w_fixed:
        return best + (failed,)

    ha = _half_width(sg.eta, i)
    hb = _half_width(sg.w, j) if not w_fixed else 0.0
    guess = (float(sg.u[i, j]), float(sg.v[i, j]))

    points = 2 * grid.refine_factor + 1

    for _ in range(grid.refine_levels):

        _, eta_c, w_c = best

        if eta_fixed:
            eta_axis = np.array([eta_c])
        else:
            eta_axis = expit(logit(eta_c) + np.linspace(-ha, ha, points))

        if w_fixed:
            w_axis = np.array([w_c])
        else:
            w_axis = expit(logit(w_c) + np.linspace(-hb, hb, points))

        E, W = np.meshgrid(eta_axis, w_axis, indexing='ij')
        E, W = E.ravel(), W.ravel()

        vals, status, u, v = surface_points(k, p, E, W, alpha, solver=solver,
            guess=guess)

        retry = np.nonzero(status == FAILED)[0]
        if retry.size > 0 and retry_guess is not None:
            vals[retry], status[retry], u[retry], v[retry] = surface_points(k, p,
                E[retry], W[retry], alpha, solver=solver, guess=retry_guess)

        failed.extend( (float(E[q]), float(W[q]), float(u[q]), float(v[q]))
            for q in np.nonzero(status == FAILED)[0] )

        q = int(np.argmax(vals))
        if vals[q] > best[0]:
            best = (float(vals[q]), float(E[q]), float(W[q]))
            guess = (float(u[q]), float(v[q]))

        ha /= grid.refine_factor
        hb /= grid.refine_factor

    return best + (failed,)

def verify_dominance(params, grid=None, solver=None):
    u"""Check whether (1/2, c^2) is the unique global maximum of the surface.

    Args:
        params (Params): Model parameters.
        grid (GridConfig): Grid settings [default: from config].
        solver (SolverConfig): Solver settings [default: from config].

    Returns:
        DominanceReport: Verdict with its diagnostics.
    """

    grid = grid or GridConfig.from_config()
    solver = solver or SolverConfig.from_config()

    k, p, alpha = params.k, params.p, params.alpha

    w_star, s_star, guess = _dominant_point(params, solver)

    eigenvalues = _dominant_hessian(params, w_star, guess, solver)

    sg = _coarse_grid(k, p, grid, solver)
    values = sg.values(alpha)

    def near_dominant(eta, w):
        return math.hypot(eta - 0.5, w - w_star) <= grid.exclusion_radius

    failed = list()
    dismissed = 0

    def add_failures(points):
        u"""Keep failed (eta, w, u, v) points that could still beat s*."""
        nonlocal dismissed
        for eta_f, w_f, u_f, v_f in points:
            if near_dominant(eta_f, w_f):
                dismissed += 1
                continue
            bound = float(surface_upper_bound(k, p, eta_f, w_f, alpha, u_f, v_f))
            if bound < s_star - grid.margin:
                dismissed += 1
                continue
            failed.append( (eta_f, _gamma_of(params, w_f)) )

    add_failures( (float(sg.eta[i]), float(sg.w[j]), float(sg.u[i, j]), float(sg.v[i, j]))
        for i, j in zip(*np.nonzero(sg.status == FAILED)) )

    max_surplus = -math.inf
    location = None
    candidates = 0

    for i, j in _local_maxima(values):

        value, eta, w, refine_failed = _refine(params, sg, values, i, j, grid, solver,
            retry_guess=guess)

        # Peaks refined onto the dominant point belong to it, and so do the
        # failures in their windows.
        if near_dominant(eta, w):
            dismissed += len(refine_failed)
            continue

        add_failures(refine_failed)

        candidates += 1
        surplus = value - s_star
        if surplus > max_surplus:
            max_surplus = surplus
            location = (eta, _gamma_of(params, w))

    if any( x > 0.0 for x in eigenvalues ) or max_surplus > grid.margin:
        verdict = NOT_DOMINANT
    elif len(failed) > 0:
        verdict = INCONCLUSIVE
        warnings.warn("saddle solver failed at {} points for k={}, r={!r}, p={!r}".format(
            len(failed), k, params.r, p), RuntimeWarning)
    elif max_surplus < -grid.margin:
        verdict = DOMINANT
    else:
        verdict = INCONCLUSIVE

    logger.debug("dominance at k={}, r={!r}, p={!r}: {} (max surplus {:.6g})".format(
        k, params.r, p, verdict, max_surplus))

    return DominanceReport(params=params, grid=grid, dominant_value=s_star,
        max_surplus=max_surplus, surplus_location=location,
        refinement_depth=grid.refine_levels, exclusion_radius=grid.exclusion_radius,
        verdict=verdict, candidates=candidates, failed_points=tuple(failed),
        dismissed_failures=dismissed,
        hessian_eigenvalues=eigenvalues, solver=solver)

################################################################################

def find_r_star(k, p, search=None, grid=None, solver=None):
    u"""Find the critical literal degree r* for (k, p) by bisection.

    Inconclusive verdicts count as not dominant, so r* is the largest
    literal degree verified to be dominant.

    Returns:
        ThresholdBounds: Bounds with lower bound alpha_l = 2 r*/k.
    """

    search = search or SearchConfig.from_config()
    grid = grid or GridConfig.from_config()
    solver = solver or SolverConfig.from_config()

    alpha_upper, alpha_upper_tight = upper_bound(k, p)

    scans = [0]
    verdicts = dict()

    def dominant(r):
        if r not in verdicts:
            report = verify_dominance(Params(k=k, r=r, p=p), grid=grid, solver=solver)
            verdicts[r] = report.verdict == DOMINANT
            scans[0] += 1
            logger.info("k={}, p={!r}: r={:.6f} {}".format(k, p, r, report.verdict))
        return verdicts[r]

    # Anchor the bracket.
    r_hi = k * alpha_upper_tight / 2.0
    for _ in range(32):
        if not dominant(r_hi):
            break
        r_hi *= 1.25
    else:
        raise MonotonicityError("no non-dominant upper anchor for k={}, p={!r}".format(k, p),
            offending=sorted(verdicts))

    r_lo = r_hi / 20.0
    for _ in range(32):
        if dominant(r_lo):
            break
        r_lo /= 2.0
    else:
        raise MonotonicityError("no dominant lower anchor for k={}, p={!r}".format(k, p),
            offending=sorted(verdicts))

    # Check the verdict flips once across the bracket.
    sweep = np.linspace(r_lo, r_hi, 9)
    flags = [ dominant(float(r)) for r in sweep ]

    first_off = flags.index(False)
    offending = [ float(r) for r, f in zip(sweep[first_off:], flags[first_off:]) if f ]
    if offending:
        raise MonotonicityError("dominance verdicts not monotone in r for k={}, p={!r}: "
            "dominant at {!r} above non-dominant r={!r}".format(k, p, offending,
            float(sweep[first_off])), offending=[float(sweep[first_off])] + offending)

    lo, hi = float(sweep[first_off - 1]), float(sweep[first_off])

    while hi - lo > search.rel_tol * lo and scans[0] < search.max_scans:
        mid = 0.5 * (lo + hi)
        if dominant(mid):
            lo = mid
        else:
            hi = mid

    converged = hi - lo <= search.rel_tol * lo
    if not converged:
        warnings.warn("r* search for k={}, p={!r} stopped after {} scans at relative "
            "width {:.3g}".format(k, p, scans[0], (hi - lo) / lo), RuntimeWarning)

    r_star = lo
    alpha_lower = 2.0 * r_star / k

    bounds = ThresholdBounds(k=k, p=p, alpha_upper=alpha_upper,
        alpha_upper_tight=alpha_upper_tight, r_star_real=r_star,
        r_star_int=int(math.floor(r_star)), alpha_lower=alpha_lower,
        ratio=alpha_lower / alpha_upper, verdict=DOMINANT, grid_meta=grid.meta(),
        scans=scans[0], converged=converged)

    logger.info("k={}, p={!r}: r*={:.6f}, ratio={:.4f} after {} scans".format(k, p,
        r_star, bounds.ratio, scans[0]))

    return bounds

################################################################################

def _dominant_curvature(params):
    u"""Get (b_t(x_k), |B_g|) at the dominant point."""

    k, c = params.k, params.c

    first = solve_univariate_saddle(k, c)
    x = first.variables[0]

    saddle = solve_trivariate_saddle(params, 0.5, c * c, guess=(x, x * x))

    return first.curvature, saddle.determinant

def second_moment_probability_constant(params):
    u"""Get constant C in P(N > 0) >= C/n at a dominant literal degree."""

    b, det = _dominant_curvature(params)

    if not det > 0.0:
        raise SaddleError("non-positive curvature determinant at the dominant point",
            point=(0.5, params.c ** 2))

    return 4.0 * math.pi * math.sqrt(det) / (b * params.alpha ** 2 * math.sqrt(params.k))

def second_moment_prefactor(params):
    u"""Get polynomial prefactor of the dominant second-moment summand, for p < 1."""

    if params.p >= 1.0:
        raise ParameterError("second-moment prefactor needs p < 1, not {!r}".format(params.p))

    _, det = _dominant_curvature(params)

    c, omc, k = params.c, params.one_minus_c, params.k

    return k ** 1.5 / (32.0 * math.pi ** 2 * c ** 2 * omc ** 2 * math.sqrt(det))

################################################################################

def _threshold_cell(cell):
    k, p, search, grid, solver = cell
    return find_r_star(k, p, search=search, grid=grid, solver=solver)

def threshold_table(k_values, p_values, threads=None, search=None, grid=None,
    solver=None):
    u"""Get threshold bounds for every (k, p) cell.

    Cells are independent and run in a process pool when threads > 1.
    """

    if threads is None:
        threads = config[u'run', u'threads']

    search = search or SearchConfig.from_config()
    grid = grid or GridConfig.from_config()
    solver = solver or SolverConfig.from_config()

    cells = [ (k, p, search, grid, solver) for k in k_values for p in p_values ]

    if threads > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=threads) as executor:
            return list(executor.map(_threshold_cell, cells))

    return [ _threshold_cell(cell) for cell in cells ]

def reference_ratio(k, p):
    u"""Get published ratio alpha_l/alpha_u for (k, p), if tabulated."""

    try:
        ratios = const.reference_ratios[k]
    except KeyError:
        return None

    for q, ratio in zip(const.table_p, ratios):
        if math.isclose(p, q, rel_tol=0.0, abs_tol=1e-9):
            return ratio

    return None

################################################################################

@regfunc
def bounds(k=None, p=None):
    u"""Tabulate first-moment upper bounds on the threshold.

    Args:
        k (IntList): Clause widths [default: 3,6,12].
        p (FloatList): Satisfaction fractions [default: 0.1:0.9:0.1].

    Returns:
        Table: Upper bounds alpha_upper and alpha_upper_tight.
    """

    k_values = const.table_k if k is None else k
    p_values = const.table_p if p is None else p

    rows = list()
    for kk in k_values:
        for pp in p_values:
            alpha_upper, alpha_upper_tight = upper_bound(kk, pp)
            rows.append([kk, pp, alpha_upper, alpha_upper_tight])

    return Table(rows, headings=(u'k', u'p', u'alpha_upper', u'alpha_upper_tight'))

@regfunc
def table(k=None, p=None, threads=None):
    u"""Tabulate upper and lower threshold bounds.

    Each cell searches for the critical literal degree r* below which the
    second moment is dominated by independent pairs of assignments.

    Args:
        k (IntList): Clause widths [default: 3,6,12].
        p (FloatList): Satisfaction fractions [default: 0.1:0.9:0.1].
        threads (int): Worker processes [default: run.threads config].

    Returns:
        Table: Threshold bounds with the published reference ratio.
    """

    k_values = const.table_k if k is None else k
    p_values = const.table_p if p is None else p

    results = threshold_table(k_values, p_values, threads=threads)

    rows = [ tb.as_row() + [reference_ratio(tb.k, tb.p)] for tb in results ]

    return Table(rows, headings=ThresholdBounds._row_headings + (u'reference_ratio',))

@regfunc
def dominance(k, r, p=1.0, grid=None):
    u"""Check dominance of independent pairs in the second moment.

    Args:
        k (int): Clause width.
        r (float): Literal degree.
        p (float): Satisfaction fraction [default: 1.0].
        grid (int): Coarse grid points per axis [default: grid.size config].

    Returns:
        Record: Dominance verdict and diagnostics.
    """

    params = Params(k=k, r=r, p=p)

    report = verify_dominance(params, grid=GridConfig.from_config(size=grid))

    record = report.as_record()

    # Second-moment constants are meaningful only at a dominant degree.
    record[u'probability_constant'] = None
    record[u'second_moment_prefactor'] = None
    if report.verdict == DOMINANT:
        record[u'probability_constant'] = second_moment_probability_constant(params)
        if params.p < 1.0:
            record[u'second_moment_prefactor'] = second_moment_prefactor(params)

    return record

################################################################################

__all__ = ['DOMINANT', 'DominanceReport', 'find_r_star', 'GridConfig', 'INCONCLUSIVE',
    'NOT_DOMINANT', 'reference_ratio', 'SearchConfig',
    'second_moment_prefactor', 'second_moment_probability_constant',
    'threshold_table', 'ThresholdBounds', 'upper_bound', 'verify_dominance']

################################################################################
