#!/usr/bin/env python3
# -*- coding: utf-8 -*-
u"""regsat core module."""

from collections.abc import Mapping as _Mapping
from collections.abc import Set as _Set
import os
from types import MappingProxyType as _MappingProxyType

################################################################################

# Scalar types that need no freezing.
_Scalars = (str, bytes, bool, float, int, complex, type(None))

################################################################################

def freeze(x):
    u"""Get recursively immutable copy of a config or constant value.

    Mappings become read-only proxies, sets become frozensets and lists
    become tuples.
    """

    if isinstance(x, _Scalars):
        return x

    if isinstance(x, _Mapping):
        return _MappingProxyType({ freeze(k): freeze(v) for k, v in x.items() })

    if isinstance(x, _Set):
        return frozenset( freeze(v) for v in x )

    if isinstance(x, (list, tuple)):
        return tuple( freeze(v) for v in x )

    raise TypeError("cannot freeze object of type {!r}".format(type(x).__name__))

def rellipt(string, length):
    u"""Cut string to given length, marking the cut with a trailing ellipsis."""

    if length < 4:
        raise ValueError("cannot ellipt to length {} (min=4)".format(length))

    if len(string) <= length:
        return string

    return string[:length - 3] + u'...'

def respath(filepath):
    u"""Get resolved path, with any user directory expanded."""

    if not isinstance(filepath, (str, os.PathLike)):
        raise TypeError("path is not of string type: {!r}".format(filepath))

    return os.path.realpath( os.path.expanduser( os.fspath(filepath) ) )

################################################################################

__all__ = ['freeze', 'rellipt', 'respath']

################################################################################
