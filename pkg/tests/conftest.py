# -*- coding: utf-8 -*-
u"""Shared fixtures and enumeration oracles for regsat tests."""

from fractions import Fraction
from itertools import combinations
from itertools import product
from itertools import permutations
import logging

import numpy as np
import pytest

from regsat.core.config import _Config

################################################################################

def _clause_partitions(edges, k):
    u"""Yield every partition of edge labels into unordered blocks of size k.

    Every partition is reached by the same number of edge permutations, so
    a uniform average over partitions equals one over permutations.
    """

    if not edges:
        yield []
        return

    first, rest = edges[0], edges[1:]

    for others in combinations(rest, k - 1):
        remaining = [ e for e in rest if e not in others ]
        for blocks in _clause_partitions(remaining, k):
            yield [ (first,) + others ] + blocks

def _enumerate_moments(n, k, r, s):
    u"""Get exact (E[N], E[N^2]) by enumerating every configuration.

    N counts assignments satisfying exactly s clauses. Edge e belongs to
    literal e // r; literal l is variable l // 2, negated when l is odd.
    """

    first = Fraction(0)
    second = Fraction(0)
    total = 0

    assignments = list(product((False, True), repeat=n))

    for blocks in _clause_partitions(list(range(2 * n * r)), k):

        clauses = [ [ (e // r // 2, e // r % 2 == 0) for e in block ] for block in blocks ]

        count = 0
        for values in assignments:
            satisfied = sum( any( values[v] == pos for v, pos in clause ) for clause in clauses )
            if satisfied == s:
                count += 1

        first += count
        second += count * count
        total += 1

    return first / total, second / total

def _configuration_law(n, k, r):
    u"""Get exact probability of each clause multiset over all edge permutations."""

    edges = 2 * n * r
    law = dict()

    for perm in permutations(range(edges)):
        slot_literal = np.empty(edges, dtype=np.int64)
        slot_literal[list(perm)] = np.arange(edges) // r
        signed = np.where(slot_literal % 2 == 0, 1, -1) * (slot_literal // 2 + 1)
        key = tuple(sorted( tuple(sorted(int(x) for x in row))
            for row in signed.reshape(-1, k) ))
        law[key] = law.get(key, 0) + 1

    total = sum(law.values())

    return { key: Fraction(count, total) for key, count in law.items() }

################################################################################

@pytest.fixture(scope='session')
def moment_oracle():
    u"""Enumeration oracle for exact first and second moments."""
    return _enumerate_moments

@pytest.fixture(scope='session')
def configuration_law():
    u"""Exact clause-multiset law of the configuration model."""
    return _configuration_law

@pytest.fixture
def temp_config(tmp_path):
    u"""Package config rooted in a temporary directory."""
    return _Config(dirpath=str(tmp_path / u'regsat'))

@pytest.fixture
def isolated_config(tmp_path, monkeypatch):
    u"""Point the config commands and CLI header at a temporary config."""

    import regsat.core.action
    import regsat.settings

    cfg = _Config(dirpath=str(tmp_path / u'regsat'))

    monkeypatch.setattr(regsat.settings, u'config', cfg)
    monkeypatch.setattr(regsat.core.action, u'config', cfg)

    return cfg

################################################################################

@pytest.fixture(autouse=True)
def detach_command_logging():
    u"""Remove command-line log handlers, which hold a per-test stream."""

    yield

    root = logging.getLogger(u'regsat')
    for handler in [ h for h in root.handlers if getattr(h, u'_regsat', False) ]:
        root.removeHandler(handler)

################################################################################
