#!/usr/bin/env python3
# -*- coding: utf-8 -*-
u"""regsat about module."""

from collections.abc import Mapping as _Mapping
import functools as _functools
import importlib.metadata as _metadata

import regsat as _regsat

################################################################################

@_functools.lru_cache(maxsize=None)
def _package_info():
    u"""Get package name and version from installed metadata.

    A source tree without installed metadata falls back to the version
    declared in the package itself.
    """

    try:
        meta = _metadata.metadata(u'regsat')
    except _metadata.PackageNotFoundError:
        return { u'name': u'regsat', u'version': _regsat.__version__ }

    return { u'name': meta[u'Name'], u'version': meta[u'Version'] }

class _About(_Mapping):
    u"""Read-only view of package info, loaded on first access."""

    def __getitem__(self, key):
        return _package_info()[key]

    def __iter__(self):
        return iter(_package_info())

    def __len__(self):
        return len(_package_info())

    def __repr__(self):
        return '{}({!r})'.format(self.__class__.__name__, dict(self))

################################################################################

about = _About()

################################################################################
