#!/usr/bin/env python3
# -*- coding: utf-8 -*-
u"""regsat IO module.

Text streams for DIMACS input and command output. The path `-` stands for
standard input or output, and GZIP content is handled transparently.
"""

import gzip
import io
import os
import sys

from regsat.core import respath

################################################################################

# First bytes of a deflate-compressed GZIP stream.
_GZIP_MAGIC = b'\x1f\x8b\x08'

class _TextStream(object):
    u"""Context-managed text stream on a file or a standard stream."""

    @property
    def name(self):
        u"""str: File path relative to the working directory, or stream name."""
        return self._name

    @property
    def closed(self):
        return self._handle.closed

    def __init__(self, handle, name, owned):
        self._handle = handle
        self._name = name
        self._owned = owned

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        self.close()

    def close(self):
        u"""Close an opened file; only flush a standard stream."""
        if self._owned:
            self._handle.close()
        else:
            self._handle.flush()

class TextReader(_TextStream):
    u"""UTF-8 text reader, decompressing GZIP input by its magic number."""

    def __init__(self, filepath):

        if filepath == u'-':
            raw, name, owned = sys.stdin.buffer, u'<stdin>', False
        else:
            path = respath(filepath)
            name = os.path.relpath(path)
            if not os.path.exists(path):
                raise IOError("file not found: {!r}".format(name))
            if not os.path.isfile(path):
                raise IOError("not a file: {!r}".format(name))
            raw, owned = io.open(path, mode='rb'), True

        if not hasattr(raw, 'peek'):
            raw = io.BufferedReader(raw)

        head = raw.peek(len(_GZIP_MAGIC))[:len(_GZIP_MAGIC)]
        if head[:2] == _GZIP_MAGIC[:2]:
            if head != _GZIP_MAGIC:
                raise IOError("unsupported GZIP compression method in {!r}".format(name))
            raw = gzip.GzipFile(fileobj=raw)

        super(TextReader, self).__init__(io.TextIOWrapper(raw, encoding='utf_8'),
            name, owned)

    def __iter__(self):
        return iter(self._handle)

    def read(self):
        return self._handle.read()

class TextWriter(_TextStream):
    u"""UTF-8 text writer with Unix newlines.

    A path ending in `.gz` is written GZIP-compressed with a zero timestamp,
    so that identical runs give identical bytes.
    """

    def __init__(self, filepath):

        if filepath == u'-':
            super(TextWriter, self).__init__(sys.stdout, u'<stdout>', False)
            return

        path = respath(filepath)

        if path.endswith(u'.gz'):
            raw = gzip.GzipFile(path, mode='wb', mtime=0)
        else:
            raw = io.open(path, mode='wb')

        handle = io.TextIOWrapper(raw, encoding='utf_8', newline='\n')

        super(TextWriter, self).__init__(handle, os.path.relpath(path), True)

    def write(self, text):
        self._handle.write(text)

################################################################################

__all__ = ['TextReader', 'TextWriter']

################################################################################
