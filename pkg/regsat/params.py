#!/usr/bin/env python3
# -*- coding: utf-8 -*-
u"""regsat model parameter module.

A regular random k-SAT model is set by clause width `k`, literal degree `r`
(each of the 2n literals appears exactly r times) and satisfaction fraction
`p`. An assignment p-satisfies a formula if it satisfies at least a fraction
c = 1 - 2^-k + p 2^-k of its m = alpha n clauses, where alpha = 2r/k.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

import mpmath
import numpy as np

from regsat.core.errors import IntegralityError
from regsat.core.errors import ParameterError

################################################################################

def _validate_k(k):
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise ParameterError("clause width k must be an integer, not {!r}".format(k))
    if k < 2:
        raise ParameterError("clause width k must be at least 2, not {!r}".format(k))
    return int(k)

def _validate_p(p):
    try:
        p = float(p)
    except (TypeError, ValueError):
        raise ParameterError("satisfaction fraction p must be a number, not {!r}".format(p))
    if not 0.0 < p <= 1.0:
        raise ParameterError("satisfaction fraction p must be in (0, 1], not {!r}".format(p))
    return p

def _exact(x):
    u"""Get exact rational from int, float or Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    # Floats such as 0.9 are read as the decimal the user typed.
    return Fraction(repr(float(x)))

def c_of_p(k, p, precise=False):
    u"""Get fraction of clauses that a p-satisfying assignment satisfies.

    Args:
        k (int): Clause width.
        p (float): Satisfaction fraction in (0, 1].
        precise (bool): Evaluate with mpmath at its current precision.

    Returns:
        float: c = 1 - 2^-k + p 2^-k.
    """

    k = _validate_k(k)
    p = _validate_p(p)

    if precise:
        two_k = mpmath.mpf(2) ** (-k)
        return mpmath.mpf(1) - two_k + mpmath.mpf(p) * two_k

    return 1.0 - (1.0 - p) * 2.0 ** (-k)

def binary_entropy(x, precise=False):
    u"""Get natural-log binary entropy h(x) = -x ln x - (1-x) ln(1-x).

    Arrays are evaluated elementwise. By convention h(0) = h(1) = 0.
    """

    if precise:
        x = mpmath.mpf(x)
        if x < 0 or x > 1:
            raise ParameterError("entropy argument must be in [0, 1], not {!r}".format(x))
        if x == 0 or x == 1:
            return mpmath.mpf(0)
        return -x * mpmath.log(x) - (1 - x) * mpmath.log1p(-x)

    if np.ndim(x) == 0:
        x = float(x)
        if not 0.0 <= x <= 1.0:
            raise ParameterError("entropy argument must be in [0, 1], not {!r}".format(x))
        if x == 0.0 or x == 1.0:
            return 0.0
        return -x * math.log(x) - (1.0 - x) * math.log1p(-x)

    x = np.asarray(x, dtype=float)

    if np.any( (x < 0.0) | (x > 1.0) | np.isnan(x) ):
        raise ParameterError("entropy arguments must be in [0, 1]")

    with np.errstate(divide='ignore', invalid='ignore'):
        h = -x * np.log(x) - (1.0 - x) * np.log1p(-x)

    return np.where( (x == 0.0) | (x == 1.0), 0.0, h )

################################################################################

@dataclass(frozen=True)
class Params(object):
    u"""Regular random k-SAT model parameters.

    Attributes:
        k (int): Clause width.
        r (float): Literal degree.
        p (float): Satisfaction fraction.
        n (int): Number of variables, if a finite instance is meant.
    """

    k: int
    r: float
    p: float = 1.0
    n: object = None

    def __post_init__(self):

        object.__setattr__(self, 'k', _validate_k(self.k))
        object.__setattr__(self, 'p', _validate_p(self.p))

        try:
            r = float(self.r)
        except (TypeError, ValueError):
            raise ParameterError("literal degree r must be a number, not {!r}".format(self.r))
        if not r > 0.0 or not math.isfinite(r):
            raise ParameterError("literal degree r must be positive, not {!r}".format(self.r))

        # Keep integral degrees as int so exact arithmetic stays exact.
        if isinstance(self.r, (int, np.integer)) and not isinstance(self.r, bool):
            object.__setattr__(self, 'r', int(self.r))
        elif r.is_integer() and not isinstance(self.r, Fraction):
            object.__setattr__(self, 'r', int(r))

        if self.n is not None:
            if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)):
                raise ParameterError("number of variables n must be an integer, not {!r}".format(self.n))
            if self.n < 1:
                raise ParameterError("number of variables n must be positive, not {!r}".format(self.n))
            object.__setattr__(self, 'n', int(self.n))

    @property
    def alpha(self):
        u"""float: Clause density 2r/k."""
        return 2.0 * float(self.r) / self.k

    @property
    def c(self):
        u"""float: Required satisfied-clause fraction."""
        return c_of_p(self.k, self.p)

    @property
    def one_minus_c(self):
        u"""float: 1 - c, computed without cancellation."""
        return (1.0 - self.p) * 2.0 ** (-self.k)

    def exact_alpha_n(self):
        u"""Get number of clauses alpha n as an exact rational."""
        self._require_n()
        return Fraction(2) * _exact(self.r) * self.n / self.k

    def exact_c(self):
        u"""Get c as an exact rational."""
        return 1 - (1 - _exact(self.p)) / Fraction(2 ** self.k)

    def exact_satisfied(self):
        u"""Get required number of satisfied clauses c alpha n as an exact rational."""
        return self.exact_c() * self.exact_alpha_n()

    def check_integrality(self):
        u"""Check finite-instance integrality constraints.

        Returns:
            tuple: (m, s) with m = alpha n clauses and s = c alpha n
                required satisfied clauses, as ints.
        """

        self._require_n()

        edges = 2 * _exact(self.r) * self.n
        if edges.denominator != 1 or edges % 2 != 0:
            raise IntegralityError("2nr = {} must be an even integer".format(edges))

        if edges % self.k != 0:
            raise IntegralityError("alpha n = 2nr/k = {} must be an integer".format(
                edges / self.k))

        m = self.exact_alpha_n()
        s = self.exact_satisfied()

        if s.denominator != 1:
            raise IntegralityError("c alpha n = {} must be an integer".format(s))

        if s > m:
            raise IntegralityError("c alpha n = {} exceeds alpha n = {}".format(s, m))

        return int(m), int(s)

    def with_r(self, r):
        u"""Get copy of parameters with another literal degree."""
        return Params(k=self.k, r=r, p=self.p, n=self.n)

    def _require_n(self):
        if self.n is None:
            raise ParameterError("finite-instance quantity needs n; got {!r}".format(self))

################################################################################

__all__ = ['binary_entropy', 'c_of_p', 'Params']

################################################################################
