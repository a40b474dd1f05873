#!/usr/bin/env python3
# -*- coding: utf-8 -*-
u"""regsat generating function module.

Exact integer polynomials for the clause generating functions, and the exact
first and second moments of the number of p-satisfying assignments of a
configuration-model formula.

Clause generating functions mark literal types in a clause. For the first
moment, x marks a literal true under the assignment. For the second moment,
x1, x2 and x3 mark literals true only under the first, under both, and only
under the second assignment of a pair.
"""

from dataclasses import dataclass
from fractions import Fraction
import logging
from math import comb
from math import factorial
import math

from regsat.core.errors import ParameterError
from regsat.params import Params

logger = logging.getLogger(__name__)

################################################################################

class IntPolynomial(object):
    u"""Immutable sparse polynomial with integer coefficients.

    Terms are held in a mapping from exponent tuples to nonzero ints.
    Products and powers accept an optional `bound` tuple, above which
    monomials are dropped, so that coefficient extraction never builds
    terms that cannot contribute to the target.
    """

    __slots__ = ('_terms', '_nvars')

    def __init__(self, terms, nvars=None):

        clean = dict()

        for exponents, coefficient in dict(terms).items():

            exponents = tuple( int(e) for e in exponents )

            if any( e < 0 for e in exponents ):
                raise ValueError("negative exponent in {!r}".format(exponents))

            if coefficient != 0:
                clean[exponents] = clean.get(exponents, 0) + int(coefficient)

        if nvars is None:
            try:
                nvars = len(next(iter(clean)))
            except StopIteration:
                raise ValueError("number of variables needed for zero polynomial")

        if any( len(e) != nvars for e in clean ):
            raise ValueError("inconsistent number of variables in polynomial terms")

        object.__setattr__(self, '_terms', { e: c for e, c in clean.items() if c != 0 })
        object.__setattr__(self, '_nvars', nvars)

    @classmethod
    def constant(cls, value, nvars):
        u"""Get constant polynomial."""
        return cls({ (0,) * nvars: value }, nvars=nvars)

    @classmethod
    def variable(cls, index, nvars):
        u"""Get polynomial of a single variable."""
        exponents = [0] * nvars
        exponents[index] = 1
        return cls({ tuple(exponents): 1 }, nvars=nvars)

    @property
    def nvars(self):
        return self._nvars

    @property
    def terms(self):
        u"""dict: Copy of exponent-to-coefficient mapping."""
        return dict(self._terms)

    def __setattr__(self, name, value):
        raise TypeError("{} object does not support attribute assignment".format(
            self.__class__.__name__))

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return IntPolynomial(terms, nvars=self._nvars)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial({ e: -c for e, c in self._terms.items() }, nvars=self._nvars)

    def __sub__(self, other):
        return self + ( -self._coerce(other) )

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return self.multiply(self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, m):
        return self.power(m)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    def __hash__(self):
        return hash( (self._nvars, frozenset(self._terms.items())) )

    def __repr__(self):
        return '{}({!r})'.format(self.__class__.__name__, dict(sorted(self._terms.items())))

    def _coerce(self, other):
        if isinstance(other, IntPolynomial):
            if other._nvars != self._nvars:
                raise ValueError("polynomials have different numbers of variables")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return IntPolynomial.constant(other, self._nvars)
        raise TypeError("cannot combine {} with {!r}".format(self.__class__.__name__,
            type(other).__name__))

    def coefficient(self, exponents):
        u"""Get coefficient of monomial."""
        return self._terms.get(tuple(exponents), 0)

    def degree(self):
        u"""Get maximum exponent of each variable."""
        if len(self._terms) == 0:
            return (0,) * self._nvars
        return tuple( max(e[i] for e in self._terms) for i in range(self._nvars) )

    def evaluate(self, point):
        u"""Evaluate polynomial at point.

        Exact inputs (int or Fraction) give an exact value.
        """
        point = tuple(point)
        if len(point) != self._nvars:
            raise ValueError("expected point with {} coordinates, not {}".format(
                self._nvars, len(point)))
        total = 0
        for e, c in self._terms.items():
            term = c
            for x, d in zip(point, e):
                if d:
                    term = term * x ** d
            total = total + term
        return total

    def multiply(self, other, bound=None):
        u"""Multiply polynomials, dropping monomials above bound."""

        other = self._coerce(other)

        terms = dict()
        for e1, c1 in self._terms.items():
            if bound is not None and any( a > b for a, b in zip(e1, bound) ):
                continue
            for e2, c2 in other._terms.items():
                e = tuple( a + b for a, b in zip(e1, e2) )
                if bound is not None and any( a > b for a, b in zip(e, bound) ):
                    continue
                terms[e] = terms.get(e, 0) + c1 * c2

        return IntPolynomial(terms, nvars=self._nvars)

    def power(self, m, bound=None):
        u"""Raise polynomial to non-negative integer power by squaring."""

        if isinstance(m, bool) or not isinstance(m, int) or m < 0:
            raise ValueError("power must be a non-negative integer, not {!r}".format(m))

        result = IntPolynomial.constant(1, self._nvars)
        base = self

        while m > 0:
            if m & 1:
                result = result.multiply(base, bound=bound)
            m >>= 1
            if m > 0:
                base = base.multiply(base, bound=bound)

        return result

    def as_coefficients(self):
        u"""Get dense coefficient list of a univariate polynomial."""
        if self._nvars != 1:
            raise ValueError("dense coefficients need a univariate polynomial")
        (degree,) = self.degree()
        return [ self._terms.get((i,), 0) for i in range(degree + 1) ]

################################################################################

def _validate_k(k):
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ParameterError("clause width k must be a positive integer, not {!r}".format(k))
    return k

def build_s(k):
    u"""Get s(x) = (1+x)^k - 1, marking clauses with a true literal."""
    k = _validate_k(k)
    return IntPolynomial({ (i,): comb(k, i) for i in range(1, k + 1) }, nvars=1)

def build_t(k):
    u"""Get t(x) = s(x)/x."""
    k = _validate_k(k)
    return IntPolynomial({ (i,): comb(k, i + 1) for i in range(0, k) }, nvars=1)

def build_f(k):
    u"""Get f(x1,x2,x3) = (1+x1+x2+x3)^k - (1+x1)^k - (1+x3)^k + 1.

    f marks clauses satisfied by both assignments of a pair.
    """

    k = _validate_k(k)

    one = IntPolynomial.constant(1, 3)
    x1, x2, x3 = [ IntPolynomial.variable(i, 3) for i in range(3) ]

    return (one + x1 + x2 + x3) ** k - (one + x1) ** k - (one + x3) ** k + one

def coef(poly, power, target):
    u"""Get exact coefficient of target monomial in poly^power."""

    target = tuple(target)

    if len(target) != poly.nvars:
        raise ValueError("target has {} exponents but polynomial has {} variables".format(
            len(target), poly.nvars))

    if any( e < 0 for e in target ):
        return 0

    return poly.power(power, bound=target).coefficient(target)

def coef_product(a, b, target):
    u"""Get exact coefficient of target monomial in the product a b."""

    target = tuple(target)

    total = 0
    for e, c in a.terms.items():
        rest = tuple( t - d for t, d in zip(target, e) )
        if all( x >= 0 for x in rest ):
            cb = b.coefficient(rest)
            if cb:
                total += c * cb

    return total

################################################################################

@dataclass(frozen=True)
class ExactMoment(object):
    u"""Exact moment of the number of p-satisfying assignments."""

    value: Fraction
    n: int
    k: int
    r: object
    p: float
    order: int

    def log_value(self):
        u"""Get natural log of moment, without float overflow."""
        if self.value <= 0:
            return -math.inf
        return math.log(self.value.numerator) - math.log(self.value.denominator)

    def per_variable(self):
        u"""Get (1/n) ln of moment."""
        return self.log_value() / self.n

    def __float__(self):
        try:
            return float(self.value)
        except OverflowError:
            return math.inf

def _check_params(params):

    if not isinstance(params, Params):
        raise TypeError("expected Params, not {!r}".format(type(params).__name__))

    if not isinstance(params.r, int):
        raise ParameterError("exact moments need an integer literal degree, not {!r}".format(
            params.r))

    m, s = params.check_integrality()

    return m, s, params.r * params.n

def exact_first_moment(params):
    u"""Get exact expected number of assignments satisfying exactly c alpha n clauses.

    For p = 1 this is the expected number of satisfying assignments.
    """

    m, s, rn = _check_params(params)
    n, k = params.n, params.k

    # Satisfied clauses contribute t-marked true literals; other clauses none.
    count = coef(build_t(k), s, (rn - s,))

    value = Fraction(2 ** n * comb(m, s) * factorial(rn) ** 2 * count,
        factorial(2 * rn))

    logger.debug("exact first moment for {!r}: {}".format(params, value))

    return ExactMoment(value=value, n=n, k=k, r=params.r, p=params.p, order=1)

def second_moment_terms(params):
    u"""Get summands S(i, j) of the exact second moment.

    Here i is the number of variables on which the two assignments agree
    and j the number of clauses satisfied by both.
    """

    m, s, rn = _check_params(params)
    n, k, r = params.n, params.k, params.r

    j_min = max(0, 2 * s - m)

    # Truncate all powers at the largest target.
    bound = (rn, rn, rn)

    f = build_f(k)

    s1 = build_s(k)
    s_pair = IntPolynomial({ (a, 0, b): ca * cb for (a,), ca in s1.terms.items()
        for (b,), cb in s1.terms.items() }, nvars=3)

    # Powers of f and of s(x1)s(x3) needed by the j range.
    f_powers = { j_min: f.power(j_min, bound=bound) }
    for j in range(j_min + 1, s + 1):
        f_powers[j] = f_powers[j - 1].multiply(f, bound=bound)

    pair_powers = { 0: IntPolynomial.constant(1, 3) }
    for q in range(1, s - j_min + 1):
        pair_powers[q] = pair_powers[q - 1].multiply(s_pair, bound=bound)

    total_edges = factorial(2 * rn)

    terms = dict()
    for i in range(0, n + 1):

        ri = r * i
        rd = r * (n - i)
        target = (rd, ri, rd)

        weight_i = 2 ** n * comb(n, i) * comb(m, s) * \
            factorial(rd) ** 2 * factorial(ri) ** 2

        for j in range(j_min, s + 1):

            count = coef_product(f_powers[j], pair_powers[s - j], target)
            if count == 0:
                terms[(i, j)] = Fraction(0)
                continue

            weight = weight_i * comb(s, j) * comb(m - s, s - j)

            terms[(i, j)] = Fraction(weight * count, total_edges)

    return terms

def exact_second_moment(params):
    u"""Get exact second moment of the number of p-satisfying assignments."""

    terms = second_moment_terms(params)

    value = sum(terms.values(), Fraction(0))

    logger.debug("exact second moment for {!r}: {}".format(params, value))

    return ExactMoment(value=value, n=params.n, k=params.k, r=params.r,
        p=params.p, order=2)

################################################################################

__all__ = ['build_f', 'build_s', 'build_t', 'coef', 'coef_product',
    'exact_first_moment', 'exact_second_moment', 'ExactMoment',
    'IntPolynomial', 'second_moment_terms']

################################################################################
