#!/usr/bin/env python3
# -*- coding: utf-8 -*-
u"""regsat YAML module.

Safe YAML loading and dumping that keeps mapping order, used for the config
file. Single command-line tokens and environment values are typed with the
same implicit resolvers, so `3`, `0.5`, `1e-6` and `true` read as they would
in the config file.
"""

from collections import OrderedDict

import yaml
from yaml import YAMLError
from yaml.nodes import ScalarNode
from yaml.reader import Reader

################################################################################

class UniLoader(yaml.SafeLoader):
    u"""Safe loader building ordered mappings."""

    def construct_ordered_mapping(self, node, deep=False):
        self.flatten_mapping(node)
        return OrderedDict( (self.construct_object(k, deep=deep),
            self.construct_object(v, deep=deep)) for k, v in node.value )

UniLoader.add_constructor(u'tag:yaml.org,2002:map', UniLoader.construct_ordered_mapping)

class UniDumper(yaml.SafeDumper):
    u"""Safe dumper writing ordered mappings in order and tuples as lists."""

    def represent_ordered_mapping(self, data):
        return self.represent_mapping(u'tag:yaml.org,2002:map', data.items())

UniDumper.add_representer(OrderedDict, UniDumper.represent_ordered_mapping)
UniDumper.add_representer(tuple, UniDumper.represent_list)

# Loader used only to resolve and construct single scalars.
_scalar_loader = UniLoader(u'')

################################################################################

def unidump(data, stream=None):
    u"""Dump data as block-style YAML, to stream if given, else to a string."""
    return yaml.dump(data, stream=stream, Dumper=UniDumper, allow_unicode=True,
        encoding=None, default_flow_style=False, sort_keys=False)

def uniload(stream):
    u"""Load YAML document from text stream or string."""
    return yaml.load(stream, Loader=UniLoader)

def uniload_scalar(string):
    u"""Load scalar value from a single-line string.

    An empty string loads as None; a string that no implicit resolver
    matches loads as itself.
    """

    if not isinstance(string, str):
        raise TypeError("cannot load scalar from input of type {!r}".format(
            type(string).__name__))

    if Reader.NON_PRINTABLE.search(string) is not None:
        raise ValueError("non-printable character in {!r}".format(string))

    if len(string.splitlines()) > 1:
        raise ValueError("cannot load scalar from multiline input")

    value = string.strip()

    tag = _scalar_loader.resolve(ScalarNode, value, (True, False))

    return _scalar_loader.construct_object(ScalarNode(tag, value))

################################################################################

__all__ = ['unidump', 'uniload', 'uniload_scalar', 'YAMLError']

################################################################################
