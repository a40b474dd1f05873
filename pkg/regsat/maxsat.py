#!/usr/bin/env python3
# -*- coding: utf-8 -*-
u"""regsat max-sat module.

Exact and heuristic maximum satisfiable clause counts of generated formulas,
and p-satisfiability experiments built on them.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
import logging
import math
import time

import numpy as np

from regsat.core.action import Record
from regsat.core.action import regfunc
from regsat.core.config import config
from regsat.core.errors import CapacityError
from regsat.core.errors import ParameterError
from regsat.core.table import Table
from regsat.formula import formula_stream
from regsat.formula import generate
from regsat.formula import read_dimacs
from regsat.formula import reject_to_simple
from regsat.params import Params

logger = logging.getLogger(__name__)

################################################################################

# Low variables enumerated as one numpy block.
_BLOCK_BITS = 16

@dataclass(frozen=True)
class MaxSatResult(object):
    u"""Best assignment found for a formula."""

    n: int
    m: int
    k: int
    r: object
    seed: object
    method: str
    best_count: int
    best_fraction: float
    best_assignment: tuple
    evaluations: int
    wall_time: float

    def as_record(self):
        u"""Get result as a record, leaving out wall time."""
        record = Record()
        for name in (u'n', u'm', u'k', u'r', u'seed', u'method', u'best_count',
            u'best_fraction', u'evaluations'):
            record[name] = getattr(self, name)
        record[u'best_assignment'] = u''.join( u'1' if x else u'0'
            for x in self.best_assignment )
        return record

@dataclass(frozen=True)
class LocalSearchConfig(object):
    u"""WalkSAT settings."""

    noise: float = 0.3
    restart_factor: int = 50
    budget_factor: int = 1000

    @classmethod
    def from_config(cls, **overrides):
        u"""Get local-search settings from package config, with overrides."""
        settings = { name: config[u'maxsat', name] for name in (u'noise',
            u'restart_factor', u'budget_factor') }
        settings.update( (k, v) for k, v in overrides.items() if v is not None )
        return cls(**settings)

@dataclass(frozen=True)
class ExperimentSummary(object):
    u"""Summary of a p-satisfiability experiment."""

    k: int
    r: int
    alpha: float
    p: float
    n: int
    samples: int
    psat_fraction: float
    mean_frac: float
    std_frac: float
    method: str
    c: float
    bound_halfwidth: float
    observed_halfwidth: float
    seed: object = None

    _row_headings = (u'k', u'r', u'alpha', u'p', u'n', u'samples', u'psat_fraction',
        u'mean_frac', u'std_frac', u'method', u'c', u'bound_halfwidth',
        u'observed_halfwidth')

    def as_row(self):
        return [ getattr(self, h) for h in self._row_headings ]

################################################################################

def count_satisfied(formula, assignment):
    u"""Get number of clauses satisfied by an assignment of booleans."""

    clauses = formula.clause_array()
    values = np.asarray(assignment, dtype=bool)

    if values.shape != (formula.n,):
        raise ParameterError("assignment needs {} values, not {}".format(formula.n,
            values.size))

    truth = values[np.abs(clauses) - 1] == (clauses > 0)

    return int(np.count_nonzero(truth.any(axis=1)))

def _result(formula, method, count, assignment, evaluations, start):
    return MaxSatResult(n=formula.n, m=formula.m, k=formula.k, r=formula.r,
        seed=formula.seed, method=method, best_count=int(count),
        best_fraction=count / formula.m if formula.m else 1.0,
        best_assignment=tuple( bool(x) for x in assignment ),
        evaluations=int(evaluations), wall_time=time.perf_counter() - start)

def exhaustive_maxsat(formula, cap=None):
    u"""Get exact maximum satisfied clause count by full enumeration.

    The low variables form a block of assignments evaluated together with
    numpy. The high variables are walked in Gray-code order, so that each
    step flips one variable and only its clauses are updated. Ties keep the
    first maximum in enumeration order.
    """

    if cap is None:
        cap = config[u'maxsat', u'exhaustive_cap']

    n, m = formula.n, formula.m

    if n > cap:
        raise CapacityError("exhaustive max-sat capped at n={}, not {}".format(cap, n))

    start = time.perf_counter()

    low = min(n, _BLOCK_BITS)
    high = n - low

    clauses = formula.clause_array()
    var = np.abs(clauses) - 1
    positive = clauses > 0

    # Satisfaction of each clause by its low literals, for every low assignment.
    block = np.arange(2 ** low, dtype=np.int64)
    low_sat = np.zeros((m, 2 ** low), dtype=bool)
    for j in range(m):
        for v, pos in zip(var[j], positive[j]):
            if v < low:
                bit = ((block >> v) & 1).astype(bool)
                low_sat[j] |= bit if pos else ~bit

    # True high-literal counts per clause, with all high variables false.
    high_true = np.zeros(m, dtype=np.int64)
    occurrences = [ list() for _ in range(high) ]
    for j in range(m):
        for v, pos in zip(var[j], positive[j]):
            if v >= low:
                occurrences[v - low].append( (j, bool(pos)) )
                if not pos:
                    high_true[j] += 1

    covered = high_true > 0
    base = int(np.count_nonzero(covered))
    partial = low_sat[~covered].sum(axis=0, dtype=np.int64)

    state = np.zeros(high, dtype=bool)

    scores = base + partial
    q = int(np.argmax(scores))
    best_count = int(scores[q])
    best = (q, state.copy())

    for g in range(1, 2 ** high):

        if best_count == m:
            break

        h = (g & -g).bit_length() - 1
        state[h] = not state[h]

        for j, pos in occurrences[h]:
            was_covered = high_true[j] > 0
            high_true[j] += 1 if pos == state[h] else -1
            now_covered = high_true[j] > 0
            if now_covered and not was_covered:
                base += 1
                partial -= low_sat[j]
            elif was_covered and not now_covered:
                base -= 1
                partial += low_sat[j]

        scores = base + partial
        q = int(np.argmax(scores))
        if scores[q] > best_count:
            best_count = int(scores[q])
            best = (q, state.copy())

    q, high_state = best
    assignment = [ bool((q >> v) & 1) for v in range(low) ] + list(high_state)

    logger.debug("exhaustive max-sat n={}, m={}: {}".format(n, m, best_count))

    return _result(formula, u'exhaustive', best_count, assignment, 2 ** n, start)

def local_search_maxsat(formula, budget=None, seed=None, config=None):
    u"""Get best satisfied clause count found by WalkSAT-style local search.

    Args:
        formula (Formula): Formula to search.
        budget (int): Maximum number of flips [default: budget_factor n].
        seed (int): Random seed.
        config (LocalSearchConfig): Search settings [default: from config].

    Returns:
        MaxSatResult: Best assignment seen; a lower bound on the maximum.
    """

    settings = config or LocalSearchConfig.from_config()

    n, m = formula.n, formula.m

    if budget is None:
        budget = settings.budget_factor * n

    if budget < 0:
        raise ParameterError("local-search budget must be non-negative, not {!r}".format(budget))

    start = time.perf_counter()

    rng = np.random.default_rng(seed)

    clauses = formula.clause_array()
    var = np.abs(clauses) - 1
    positive = clauses > 0

    # Per variable: (clause, positive count, negative count) triples.
    occurrences = [ dict() for _ in range(n) ]
    for j in range(m):
        for v, pos in zip(var[j], positive[j]):
            pc, nc = occurrences[v].get(j, (0, 0))
            occurrences[v][j] = (pc + 1, nc) if pos else (pc, nc + 1)
    occurrences = [ [ (j, pc, nc) for j, (pc, nc) in occ.items() ] for occ in occurrences ]

    clause_vars = [ sorted(set(int(v) for v in row)) for row in var ]

    assign = np.zeros(n, dtype=bool)
    true_count = np.zeros(m, dtype=np.int64)
    unsat = list()
    position = np.full(m, -1, dtype=np.int64)

    def reset(values):
        assign[:] = values
        true_count[:] = np.count_nonzero(assign[var] == positive, axis=1)
        del unsat[:]
        position[:] = -1
        for j in np.nonzero(true_count == 0)[0]:
            position[j] = len(unsat)
            unsat.append(int(j))

    def delta(v, pc, nc):
        return (nc - pc) if assign[v] else (pc - nc)

    def gain(v):
        total = 0
        for j, pc, nc in occurrences[v]:
            t = true_count[j]
            total += int(t + delta(v, pc, nc) > 0) - int(t > 0)
        return total

    def flip(v):
        for j, pc, nc in occurrences[v]:
            before = true_count[j]
            true_count[j] = before + delta(v, pc, nc)
            if before == 0 and true_count[j] > 0:
                i = position[j]
                last = unsat.pop()
                if last != j:
                    unsat[i] = last
                    position[last] = i
                position[j] = -1
            elif before > 0 and true_count[j] == 0:
                position[j] = len(unsat)
                unsat.append(j)
        assign[v] = not assign[v]

    reset(rng.random(n) < 0.5)

    best_count = m - len(unsat)
    best = assign.copy()

    restart_every = settings.restart_factor * n
    flips = 0

    while flips < budget and unsat:

        if flips > 0 and flips % restart_every == 0:
            reset(rng.random(n) < 0.5)

        j = unsat[int(rng.integers(len(unsat)))]
        candidates = clause_vars[j]

        if rng.random() < settings.noise:
            v = candidates[int(rng.integers(len(candidates)))]
        else:
            gains = [ gain(v) for v in candidates ]
            v = candidates[int(np.argmax(gains))]

        flip(v)
        flips += 1

        count = m - len(unsat)
        if count > best_count:
            best_count = count
            best = assign.copy()

    logger.debug("local search n={}, m={}: {} after {} flips".format(n, m, best_count, flips))

    return _result(formula, u'local-search', best_count, best, flips + 1, start)

################################################################################

def concentration_bound(t, alpha, n):
    u"""Get sub-Gaussian tail bound 2 exp(-2 t^2 / (alpha n)) on a max-sat deviation of t clauses."""
    return 2.0 * math.exp(-2.0 * t * t / (alpha * n))

def _required_count(params):
    u"""Get least satisfied count ceil(c m) that makes a formula p-satisfiable."""
    m = params.exact_alpha_n()
    if m.denominator != 1:
        raise ParameterError("alpha n = {} must be an integer".format(m))
    return math.ceil(params.exact_c() * m)

def _run_sample(task):

    n, k, r, seed, method, simple, cap = task

    if simple:
        formula = reject_to_simple(formula_stream(n, k, r, seed=seed))
    else:
        formula = generate(n, k, r, seed=seed)

    if method == u'exhaustive':
        result = exhaustive_maxsat(formula, cap=cap)
    else:
        result = local_search_maxsat(formula, seed=seed)

    return result.best_count, result.m

def p_sat_experiment(k, r, p, n, samples, seed, method=u'auto', simple=False,
    threads=None):
    u"""Estimate the chance that a formula is p-satisfiable.

    Args:
        k (int): Clause width.
        r (int): Literal degree.
        p (float): Satisfaction fraction.
        n (int): Number of variables.
        samples (int): Number of formulas.
        seed (int): Random seed; each sample gets a derived seed.
        method (str): 'exhaustive', 'local-search' or 'auto'.
        simple (bool): Sample simple formulas only.
        threads (int): Worker processes [default: run.threads config].

    Returns:
        ExperimentSummary: Experiment summary.
    """

    params = Params(k=k, r=r, p=p, n=n)
    required = _required_count(params)

    if samples < 1:
        raise ParameterError("samples must be positive, not {!r}".format(samples))

    cap = config[u'maxsat', u'exhaustive_cap']

    if method == u'auto':
        method = u'exhaustive' if n <= cap else u'local-search'
    elif method not in (u'exhaustive', u'local-search'):
        raise ParameterError("unknown max-sat method: {!r}".format(method))

    if threads is None:
        threads = config[u'run', u'threads']

    seeds = np.random.SeedSequence(seed).generate_state(samples, dtype=np.uint64)
    tasks = [ (n, k, r, int(s), method, simple, cap) for s in seeds ]

    if threads > 1 and samples > 1:
        with ProcessPoolExecutor(max_workers=threads) as executor:
            outcomes = list(executor.map(_run_sample, tasks))
    else:
        outcomes = [ _run_sample(task) for task in tasks ]

    counts = np.array([ count for count, _ in outcomes ], dtype=float)
    m = outcomes[0][1]
    fractions = counts / m

    mean = float(np.mean(fractions))
    delta = 0.05

    summary = ExperimentSummary(k=k, r=r, alpha=params.alpha, p=params.p, n=n,
        samples=samples, psat_fraction=float(np.mean(counts >= required)),
        mean_frac=mean, std_frac=float(np.std(fractions)), method=method, c=params.c,
        bound_halfwidth=math.sqrt(params.alpha * n * math.log(2.0 / delta) / 2.0) / m,
        observed_halfwidth=float(np.percentile(np.abs(fractions - mean), 95)),
        seed=seed)

    logger.info("k={}, r={}, p={!r}, n={}: p-satisfiable fraction {:.3f} over {} samples".format(
        k, r, params.p, n, summary.psat_fraction, samples))

    return summary

################################################################################

@regfunc
def maxsat(infile, method=u'auto', budget=None, seed=None):
    u"""Find the maximum number of satisfiable clauses of a DIMACS formula.

    Args:
        infile (str): Input DIMACS file, '-' for stdin, optionally gzipped.
        method (str): 'exhaustive', 'local-search' or 'auto' [default: auto].
        budget (int): Local-search flip budget [default: budget_factor n].
        seed (int): Local-search random seed.

    Returns:
        Record: Max-sat result.
    """

    formula = read_dimacs(infile)

    if method == u'auto':
        method = u'exhaustive' if formula.n <= config[u'maxsat', u'exhaustive_cap'] \
            else u'local-search'

    if method == u'exhaustive':
        result = exhaustive_maxsat(formula)
    elif method == u'local-search':
        result = local_search_maxsat(formula, budget=budget, seed=seed)
    else:
        raise ParameterError("unknown max-sat method: {!r}".format(method))

    return result.as_record()

@regfunc
def experiment(k, r, p, n, samples, seed, method=u'auto', simple=False, threads=None):
    u"""Measure p-satisfiable fractions of sampled formulas.

    Args:
        k (int): Clause width.
        r (IntList): Literal degrees.
        p (float): Satisfaction fraction.
        n (int): Number of variables.
        samples (int): Formulas per literal degree.
        seed (int): Random seed.
        method (str): 'exhaustive', 'local-search' or 'auto' [default: auto].
        simple (bool): Sample simple formulas only.
        threads (int): Worker processes [default: run.threads config].

    Returns:
        Table: One summary row per literal degree.
    """

    rows = [ p_sat_experiment(k, rr, p, n, samples, seed, method=method,
        simple=simple, threads=threads).as_row() for rr in r ]

    return Table(rows, headings=ExperimentSummary._row_headings)

################################################################################

__all__ = ['concentration_bound', 'count_satisfied', 'ExperimentSummary',
    'exhaustive_maxsat', 'LocalSearchConfig', 'local_search_maxsat', 'MaxSatResult',
    'p_sat_experiment']

################################################################################
