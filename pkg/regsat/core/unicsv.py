#!/usr/bin/env python3
# -*- coding: utf-8 -*-
u"""regsat CSV module."""

import csv
import math

import numpy as np

################################################################################

class loose(csv.Dialect):
    delimiter = ','
    quotechar = '"'
    doublequote = False
    escapechar = '\\'
    skipinitialspace = True
    lineterminator = '\n'
    quoting = csv.QUOTE_MINIMAL

################################################################################

def format_value(x, precision=12):
    u"""Format a table value for CSV output.
    
    Floats are written with the given number of significant digits.
    """
    
    if x is None:
        return u''
    
    if isinstance(x, (bool, np.bool_)):
        return u'true' if x else u'false'
    
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return u'nan'
        if math.isinf(x):
            return u'inf' if x > 0 else u'-inf'
        return u'{:.{}g}'.format(x, precision)
    
    return str(x)

class Writer(object):
    u"""A CSV writer that formats numeric values consistently."""
    
    def __init__(self, csvfile, dialect=loose, precision=12, **kwds):
        self._writer = csv.writer(csvfile, dialect=dialect, **kwds)
        self._precision = precision
    
    def writerow(self, row):
        self._writer.writerow([ format_value(x, self._precision) for x in row ])
    
    def writerows(self, rows):
        for row in rows:
            self.writerow(row)

class Reader(object):
    u"""A CSV reader that skips comment lines starting with '#'."""
    
    def __init__(self, csvfile, dialect=loose, **kwds):
        lines = ( line for line in csvfile if not line.startswith(u'#') )
        self._reader = csv.reader(lines, dialect=dialect, **kwds)
    
    def __iter__(self):
        return self
    
    def __next__(self):
        return next(self._reader)

################################################################################

__all__ = ['format_value', 'loose', 'Reader', 'Writer']

################################################################################
