#!/usr/bin/env python3
# -*- coding: utf-8 -*-
u"""regsat constants module.

Module attributes are frozen when bound and cannot be rebound or deleted.
"""

import sys

from regsat.core import freeze

################################################################################

class _Constants(object):
    u"""Namespace of frozen package constants."""

    def __setattr__(self, name, value):

        if name in self.__dict__:
            raise TypeError("cannot rebind constant {!r}".format(name))

        try:
            value = freeze(value)
        except TypeError:
            raise TypeError("constant {!r} must be freezable, not {!r}".format(
                name, type(value).__name__))

        self.__dict__[name] = value

    def __delattr__(self, name):
        raise TypeError("cannot delete constant {!r}".format(name))

    def __repr__(self):
        return '{}({})'.format(self.__class__.__name__, u', '.join(sorted(self.__dict__)))

################################################################################

_constants = _Constants()

# Clause widths and satisfaction fractions of the threshold table.
_constants.table_k = (3, 6, 12)
_constants.table_p = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)

# Published ratios alpha_l/alpha_u, by k, in the order of table_p.
_constants.reference_ratios = {
    3:  (0.252, 0.258, 0.272, 0.281, 0.295, 0.308, 0.325, 0.344, 0.402),
    6:  (0.717, 0.720, 0.738, 0.755, 0.765, 0.782, 0.801, 0.822, 0.855),
    12: (0.977, 0.979, 0.980, 0.981, 0.983, 0.986, 0.988, 0.990, 0.993)
}

# Keep a reference to the module object before it is replaced.
ref = sys.modules[__name__]

sys.modules[__name__] = _constants

################################################################################
