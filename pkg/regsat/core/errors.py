#!/usr/bin/env python3
# -*- coding: utf-8 -*-
u"""regsat error module.

Exceptions subclass the builtin types the package would otherwise raise, so
callers catching `ValueError` or `RuntimeError` keep working. Each class also
carries the exit code used by the `regsat` command.
"""

################################################################################

class ParameterError(ValueError):
    u"""Invalid model or command parameter."""
    exit_code = 2

class IntegralityError(ParameterError):
    u"""Parameters violate an integrality constraint of the model."""
    exit_code = 2

class CapacityError(ValueError):
    u"""Input exceeds the capacity of the requested method."""
    exit_code = 6

class SaddleError(RuntimeError):
    u"""Saddle-point system could not be solved."""
    
    exit_code = 3
    
    def __init__(self, message, point=None):
        super(SaddleError, self).__init__(message)
        self.point = point

class DegenerateSaddleError(SaddleError):
    u"""Saddle-point target lies outside the exponent range."""
    exit_code = 3

class MonotonicityError(RuntimeError):
    u"""Dominance verdicts are not monotone in r."""
    
    exit_code = 4
    
    def __init__(self, message, offending=()):
        super(MonotonicityError, self).__init__(message)
        self.offending = tuple(offending)

class RetryBudgetError(RuntimeError):
    u"""Rejection sampling exhausted its retry budget."""
    exit_code = 5

################################################################################

def exit_code_of(error):
    u"""Get command exit code for exception."""
    
    try:
        return error.exit_code
    except AttributeError:
        pass
    
    if isinstance(error, (IOError, OSError)):
        return 7
    
    return 1

################################################################################

__all__ = ['CapacityError', 'DegenerateSaddleError', 'IntegralityError',
    'MonotonicityError', 'ParameterError', 'RetryBudgetError', 'SaddleError',
    'exit_code_of']

################################################################################
