#!/usr/bin/env python3
# -*- coding: utf-8 -*-
u"""regsat table module."""

from collections import OrderedDict
from collections.abc import MutableSequence
from collections.abc import Sequence

################################################################################

class Table(MutableSequence):
    u"""Table class.
    
    A Table is a sequence of regular rows, which can be indexed by column
    heading in addition to row index.
    """
    
    @property
    def headings(self):
        return self._headings
    
    def __init__(self, data=(), headings=()):
        
        headings = tuple(headings)
        
        if len(headings) == 0:
            raise ValueError("{} requires at least one heading".format(
                self.__class__.__name__))
        
        if len(set(headings)) != len(headings):
            raise ValueError("{} headings must be unique: {!r}".format(
                self.__class__.__name__, headings))
        
        self._headings = headings
        self._index = { h: i for i, h in enumerate(headings) }
        self._data = list()
        
        for row in data:
            self.append(row)
    
    def __delitem__(self, key):
        del self._data[key]
    
    def __eq__(self, other):
        if not isinstance(other, Table):
            return NotImplemented
        return self._headings == other._headings and self._data == other._data
    
    def __getitem__(self, key):
        
        # Column access by heading.
        if isinstance(key, str):
            try:
                j = self._index[key]
            except KeyError:
                raise KeyError("{} heading not found: {!r}".format(
                    self.__class__.__name__, key))
            return [ row[j] for row in self._data ]
        
        return self._data[key]
    
    def __len__(self):
        return len(self._data)
    
    def __repr__(self):
        return '{}({!r}, headings={!r})'.format(self.__class__.__name__,
            self._data, self._headings)
    
    def __setitem__(self, key, row):
        self._data[key] = self._validate_row(row)
    
    def _validate_row(self, row):
        
        if isinstance(row, str) or not isinstance(row, Sequence):
            raise TypeError("{} row must be a sequence, not {!r}".format(
                self.__class__.__name__, type(row).__name__))
        
        if len(row) != len(self._headings):
            raise ValueError("{} row width ({}) does not match number of headings ({})".format(
                self.__class__.__name__, len(row), len(self._headings)))
        
        return list(row)
    
    def insert(self, index, row):
        self._data.insert(index, self._validate_row(row))
    
    def records(self):
        u"""Get rows as list of ordered mappings."""
        return [ OrderedDict(zip(self._headings, row)) for row in self._data ]

################################################################################

__all__ = ['Table']

################################################################################
