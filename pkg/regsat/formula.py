#!/usr/bin/env python3
# -*- coding: utf-8 -*-
u"""regsat formula module.

Regular random k-SAT formulas from the configuration model: each of the 2n
literals owns r edges, each of the m = 2nr/k clauses owns k slots, and a
uniformly random permutation connects edges to slots.
"""

from collections import Counter
from collections import OrderedDict
from dataclasses import dataclass
from itertools import count as _count
import json
import logging
import math
import os

import numpy as np

from regsat.core.action import Dimacs
from regsat.core.action import Record
from regsat.core.action import regfunc
from regsat.core.config import config
from regsat.core.errors import ParameterError
from regsat.core.errors import RetryBudgetError
from regsat.core.rw import TextReader
from regsat.core.rw import TextWriter

logger = logging.getLogger(__name__)

################################################################################

@dataclass(frozen=True)
class Formula(object):
    u"""CNF formula with clauses of signed 1-based literals.

    Attributes:
        n (int): Number of variables.
        k (int): Clause width.
        clauses (tuple): Clauses, each a k-tuple of nonzero ints.
        r (int): Literal degree, if generated from the configuration model.
        seed (int): Generator seed, if known.
    """

    n: int
    k: int
    clauses: tuple
    r: object = None
    seed: object = None

    def __post_init__(self):

        if self.k < 2:
            raise ParameterError("clause width k must be at least 2, not {!r}".format(self.k))

        clauses = tuple( tuple(int(x) for x in clause) for clause in self.clauses )

        for clause in clauses:
            if len(clause) != self.k:
                raise ParameterError("clause {!r} does not have width {}".format(clause, self.k))
            if any( x == 0 or abs(x) > self.n for x in clause ):
                raise ParameterError("clause {!r} has literal out of range 1..{}".format(
                    clause, self.n))

        object.__setattr__(self, 'clauses', clauses)

    @property
    def m(self):
        return len(self.clauses)

    @property
    def legal(self):
        u"""tuple: Per-clause flags, false for repeated or complementary literals."""
        return tuple( len(set(abs(x) for x in clause)) == self.k for clause in self.clauses )

    @property
    def simple(self):
        return all(self.legal)

    def literal_degrees(self):
        u"""Get occurrence count of every signed literal, zeros included."""
        counts = Counter( x for clause in self.clauses for x in clause )
        return OrderedDict( (x, counts.get(x, 0)) for v in range(1, self.n + 1)
            for x in (v, -v) )

    def is_regular(self):
        u"""Check every literal occurs exactly r times."""
        degrees = set(self.literal_degrees().values())
        if self.r is None:
            return len(degrees) == 1
        return degrees == {self.r}

    def clause_array(self):
        u"""Get clauses as an m x k int array."""
        return np.array(self.clauses, dtype=np.int64).reshape(self.m, self.k)

################################################################################

def _validate_positive_int(x, name):
    if isinstance(x, bool) or not isinstance(x, (int, np.integer)) or x < 1:
        raise ParameterError("{} must be a positive integer, not {!r}".format(name, x))
    return int(x)

def _check_model(n, k, r):

    n = _validate_positive_int(n, u'number of variables n')
    k = _validate_positive_int(k, u'clause width k')
    r = _validate_positive_int(r, u'literal degree r')

    if k < 2:
        raise ParameterError("clause width k must be at least 2, not {!r}".format(k))

    if (2 * n * r) % k != 0:
        raise ParameterError("k={} does not divide 2nr={}".format(k, 2 * n * r))

    return n, k, r

def generate(n, k, r, seed=None):
    u"""Generate a configuration-model formula.

    Literal l (0-based; variable l // 2, negated when l is odd) owns edges
    [l r, (l + 1) r), and clause j owns slots [j k, (j + 1) k). Edge i is
    connected to slot perm[i].

    Args:
        n (int): Number of variables.
        k (int): Clause width.
        r (int): Literal degree.
        seed (int): Random seed.

    Returns:
        Formula: Generated formula.
    """

    n, k, r = _check_model(n, k, r)

    edges = 2 * n * r

    rng = np.random.default_rng(seed)
    perm = rng.permutation(edges)

    slot_literal = np.empty(edges, dtype=np.int64)
    slot_literal[perm] = np.arange(edges) // r

    signed = np.where(slot_literal % 2 == 0, 1, -1) * (slot_literal // 2 + 1)
    clauses = tuple( tuple(int(x) for x in row) for row in signed.reshape(-1, k) )

    return Formula(n=n, k=k, clauses=clauses, r=r, seed=seed)

def formula_stream(n, k, r, seed=None):
    u"""Yield formulas with child seeds derived from one seed."""

    n, k, r = _check_model(n, k, r)

    sequence = np.random.SeedSequence(seed)

    for _ in _count():
        child = sequence.spawn(1)[0]
        child_seed = int(child.generate_state(1, dtype=np.uint64)[0])
        yield generate(n, k, r, seed=child_seed)

def reject_to_simple(stream, budget=None):
    u"""Get first simple formula from a formula stream."""

    if budget is None:
        budget = config[u'generate', u'retry_budget']

    for attempt, formula in enumerate(stream, start=1):

        if formula.simple:
            logger.debug("simple formula after {} attempts".format(attempt))
            return formula

        if attempt >= budget:
            break

    raise RetryBudgetError("no simple formula in {} attempts".format(budget))

def simple_acceptance_estimate(k, r):
    u"""Get Poisson estimate exp(-r(k-1)) of the chance a formula is simple."""
    return math.exp(-r * (k - 1))

def degree_audit(formula):
    u"""Get occurrence count of every signed literal."""
    return formula.literal_degrees()

################################################################################

def write_dimacs(formula, header=None):
    u"""Get DIMACS CNF text of formula.

    Args:
        formula (Formula): Formula to write.
        header (list): Optional extra comment lines.

    Returns:
        str: DIMACS text, ending in a newline.
    """

    lines = [ u'c {}'.format(x) for x in (header or ()) ]

    lines.append(u'c seed {}'.format(u'none' if formula.seed is None else formula.seed))
    lines.append(u'c k {}'.format(formula.k))
    lines.append(u'c r {}'.format(u'none' if formula.r is None else formula.r))
    lines.append(u'c simple {}'.format(int(formula.simple)))
    lines.append(u'p cnf {} {}'.format(formula.n, formula.m))

    for clause in formula.clauses:
        lines.append(u'{} 0'.format(u' '.join(str(x) for x in clause)))

    return u'\n'.join(lines) + u'\n'

def _parse_meta(value):
    if value == u'none':
        return None
    try:
        return int(value)
    except ValueError:
        return float(value)

def read_dimacs(source):
    u"""Read formula from DIMACS text or from a file path.

    A string without newlines is taken as a path; '-' reads standard input.
    """

    if isinstance(source, str) and u'\n' not in source:
        with TextReader(source) as reader:
            text = reader.read()
    else:
        text = source

    meta = dict()
    problem = None
    clauses = list()
    current = list()

    for lineno, line in enumerate(text.splitlines(), start=1):

        line = line.strip()

        if line == u'' or line == u'%':
            continue

        if line.startswith(u'c'):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] in (u'seed', u'k', u'r', u'simple'):
                try:
                    meta[parts[0]] = _parse_meta(parts[1])
                except ValueError:
                    raise ParameterError("line {}: invalid {} comment: {!r}".format(
                        lineno, parts[0], line))
            continue

        if line.startswith(u'p'):
            parts = line.split()
            if problem is not None or len(parts) != 4 or parts[1] != u'cnf':
                raise ParameterError("line {}: malformed problem line: {!r}".format(lineno, line))
            try:
                problem = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParameterError("line {}: malformed problem line: {!r}".format(lineno, line))
            continue

        if problem is None:
            raise ParameterError("line {}: clause before problem line".format(lineno))

        try:
            literals = [ int(x) for x in line.split() ]
        except ValueError:
            raise ParameterError("line {}: invalid clause: {!r}".format(lineno, line))

        for x in literals:
            if x == 0:
                clauses.append(tuple(current))
                current = list()
            else:
                current.append(x)

    if problem is None:
        raise ParameterError("DIMACS text has no problem line")

    if current:
        raise ParameterError("last clause is not terminated by 0")

    n, m = problem

    if len(clauses) != m:
        raise ParameterError("problem line declares {} clauses but {} found".format(
            m, len(clauses)))

    widths = set( len(c) for c in clauses )
    k = meta.get(u'k')
    if k is None:
        if len(widths) != 1:
            raise ParameterError("inconsistent clause widths: {!r}".format(sorted(widths)))
        k = widths.pop()
    elif widths - {k}:
        raise ParameterError("clause widths {!r} differ from k={}".format(sorted(widths), k))

    return Formula(n=n, k=k, clauses=tuple(clauses), r=meta.get(u'r'), seed=meta.get(u'seed'))

def write_batch(n, k, r, seed, count, outdir, simple=False):
    u"""Write a batch of formulas and a JSON manifest to a directory.

    Returns:
        OrderedDict: Manifest of parameters, files, seeds and simplicity.
    """

    count = _validate_positive_int(count, u'formula count')

    if not os.path.isdir(outdir):
        os.makedirs(outdir)

    stream = formula_stream(n, k, r, seed=seed)

    files = list()
    for i in range(count):

        formula = reject_to_simple(stream) if simple else next(stream)

        filename = u'formula-{}.cnf'.format(i)
        with TextWriter(os.path.join(outdir, filename)) as writer:
            writer.write(write_dimacs(formula))

        files.append(OrderedDict([
            (u'file', filename),
            (u'seed', formula.seed),
            (u'simple', formula.simple)
        ]))

    manifest = OrderedDict([
        (u'n', n),
        (u'k', k),
        (u'r', r),
        (u'm', 2 * n * r // k),
        (u'seed', seed),
        (u'count', count),
        (u'simple_only', simple),
        (u'simple_acceptance_estimate', simple_acceptance_estimate(k, r)),
        (u'files', files)
    ])

    with TextWriter(os.path.join(outdir, u'manifest.json')) as writer:
        writer.write(json.dumps(manifest, indent=2) + u'\n')

    logger.info("wrote {} formulas to {!r}".format(count, outdir))

    return manifest

################################################################################

@regfunc
def gen(n, k, r, seed=None, simple=False):
    u"""Generate a regular random k-SAT formula.

    Args:
        n (int): Number of variables.
        k (int): Clause width.
        r (int): Literal degree.
        seed (int): Random seed.
        simple (bool): Reject formulas with illegal clauses.

    Returns:
        Dimacs: Formula in DIMACS CNF format.
    """

    if simple:
        formula = reject_to_simple(formula_stream(n, k, r, seed=seed))
    else:
        formula = generate(n, k, r, seed=seed)

    return Dimacs(write_dimacs(formula))

@regfunc
def batch(n, k, r, seed, count, outdir, simple=False):
    u"""Write a batch of formulas with a manifest.

    Args:
        n (int): Number of variables.
        k (int): Clause width.
        r (int): Literal degree.
        seed (int): Random seed.
        count (int): Number of formulas.
        outdir (str): Output directory.
        simple (bool): Reject formulas with illegal clauses.

    Returns:
        Record: Batch manifest.
    """

    return Record(write_batch(n, k, r, seed, count, outdir, simple=simple))

################################################################################

__all__ = ['degree_audit', 'Formula', 'formula_stream', 'generate', 'read_dimacs',
    'reject_to_simple', 'simple_acceptance_estimate', 'write_batch', 'write_dimacs']

################################################################################
