#!/usr/bin/env python3
# -*- coding: utf-8 -*-
u"""regsat command-line interface."""

import argparse
from collections import deque
from collections import OrderedDict
from collections.abc import Iterable
from collections.abc import Mapping
from dataclasses import dataclass
from dataclasses import field
from decimal import Decimal
from decimal import InvalidOperation
from fractions import Fraction
from importlib import import_module
import inspect
import json
import logging
import math
import re
import sys
from textwrap import dedent

import numpy as np

from regsat.core import rellipt
from regsat.core.about import about
from regsat.core.config import config
from regsat.core.errors import exit_code_of
from regsat.core.errors import ParameterError
from regsat.core.rw import TextWriter
from regsat.core.table import Table
from regsat.core.unicsv import Writer
from regsat.core.uniyaml import uniload_scalar

logger = logging.getLogger(__name__)

################################################################################

_rinfo = {

    u'reserved_params': frozenset([
        u'commands',          # argparse commands option
        u'help',              # argparse help option
        u'version',           # argparse version option
        u'regfunc_function',  # regfunc function name
        u'regfunc_module',    # regfunc module name
        u'outfile',           # return-value output file
        u'format',            # return-value output format
        u'verbose',           # logging verbosity
        u'quiet'              # logging verbosity
    ]),

    # Modules in which regfuncs are defined.
    u'modules': (
        u'regsat.asymptotics',
        u'regsat.bounds',
        u'regsat.formula',
        u'regsat.genfunc',
        u'regsat.maxsat',
        u'regsat.settings'
    ),

    # Regfunc docstring headers.
    u'docstring_headers': {

        u'known': (u'Args', u'Arguments', u'Attributes', u'Example', u'Examples',
                  u'Keyword Args', u'Keyword Arguments', u'Methods', u'Note',
                  u'Notes', u'Other Parameters', u'Parameters', u'Return',
                  u'Returns', u'Raises', u'References', u'See Also', u'Warning',
                  u'Warnings', u'Warns', u'Yield', u'Yields'),

        u'supported': (u'Args', u'Arguments', u'Note', u'Notes', u'Parameters',
                      u'Return', u'Returns', u'Raises', u'See Also'),

        u'alias_mapping': { u'Arguments': u'Args', u'Parameters': u'Args',
                           u'Return': u'Returns' }
    },

    u'regex': {
        u'regfunc': re.compile(u'^(?:[a-z0-9]+)(?:_(?:[a-z0-9]+))*$'),
        u'docstring_header': re.compile(r'^(\w+):\s*$'),
        u'docstring_param': re.compile(r'^([*]{0,2}\w+)\s*(?:\((\w+)\))?:\s+(.+)$'),
        u'docstring_return': re.compile(r'^(?:(\w+):\s+)?(.+)$'),
        u'docstring_default': re.compile(r'[\[(]default:\s+(.+?)\s*[\])]', re.IGNORECASE)
    }
}

################################################################################

class IntList(tuple):
    u"""Tuple of integers, read from a comma list or `start:stop:step` ranges."""
    item_type = int

class FloatList(tuple):
    u"""Tuple of floats, read from a comma list or `start:stop:step` ranges."""
    item_type = float

class Record(OrderedDict):
    u"""Mapping returned by a regfunc, written as a single JSON object."""
    pass

class Dimacs(str):
    u"""DIMACS CNF text returned by a regfunc."""
    pass

def _parse_number(s, item_type):
    u"""Parse a single number of the given type."""

    x = uniload_scalar(s)

    if item_type is float:
        if isinstance(x, bool):
            raise ValueError("expected float, not {!r}".format(s))
        try:
            return float(x)
        except (TypeError, ValueError):
            raise ValueError("expected float, not {!r}".format(s))

    if isinstance(x, bool) or not isinstance(x, int):
        raise ValueError("expected int, not {!r}".format(s))

    return x

def _parse_list(s, list_type):
    u"""Parse a list argument such as '3,6,12' or '0.1:0.9:0.1'."""

    item_type = list_type.item_type

    items = list()

    for token in s.split(u','):

        token = token.strip()

        if token == u'':
            raise ValueError("empty item in list: {!r}".format(s))

        # Expand range item.
        if u':' in token:

            parts = token.split(u':')
            if len(parts) != 3:
                raise ValueError("range must be 'start:stop:step': {!r}".format(token))

            # Decimal arithmetic avoids float drift in range items.
            try:
                start, stop, step = [ Decimal(p.strip()) for p in parts ]
            except InvalidOperation:
                raise ValueError("invalid range: {!r}".format(token))

            if step <= 0:
                raise ValueError("range step must be positive: {!r}".format(token))

            x = start
            while x <= stop:
                items.append(item_type(x) if item_type is float else int(x))
                x += step

            if item_type is int and any( d != int(d) for d in (start, stop, step) ):
                raise ValueError("expected integer range: {!r}".format(token))

        else:
            items.append( _parse_number(token, item_type) )

    return list_type(items)

def _jsonable(x):
    u"""Get JSON-ready copy of object."""

    if isinstance(x, Mapping):
        return OrderedDict( (str(k), _jsonable(v)) for k, v in x.items() )

    if isinstance(x, (np.bool_, bool)):
        return bool(x)

    if isinstance(x, (np.integer, int)):
        return int(x)

    if isinstance(x, (np.floating, float)):
        x = float(x)
        if math.isnan(x):
            return u'nan'
        if math.isinf(x):
            return u'inf' if x > 0 else u'-inf'
        return x

    if isinstance(x, Fraction):
        return str(x)

    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())

    if isinstance(x, (str, type(None))):
        return x

    if isinstance(x, Iterable):
        return [ _jsonable(v) for v in x ]

    return str(x)

################################################################################

class _Chaperon(object):

    # Supported regfunc parameter types. These must be suitable for use both
    # as Python function arguments and as command-line arguments. NB: types
    # should be checked in order (e.g. bool before int).
    param_types = (bool, str, float, int, IntList, FloatList)

    # Supported regfunc return types.
    return_types = (Table, Record, Dimacs)

    # Default output format of each return type.
    default_formats = { Table: u'csv', Record: u'json', Dimacs: u'dimacs' }

    # Mapping of each supported type name to its corresponding type object.
    _name2type = OrderedDict([
        (u'bool',      bool),
        (u'str',       str),
        (u'float',     float),
        (u'int',       int),
        (u'IntList',   IntList),
        (u'FloatList', FloatList),
        (u'Table',     Table),
        (u'Record',    Record),
        (u'Dimacs',    Dimacs)
    ])

    @classmethod
    def from_line(cls, string, object_type):
        u"""Get chaperoned object from command-line string."""

        try:
            if object_type in (IntList, FloatList):
                x = _parse_list(string, object_type)
            elif object_type in (int, float):
                x = _parse_number(string, object_type)
            elif object_type is str:
                x = string
            else:
                raise TypeError("cannot read {} from command line".format(
                    object_type.__name__))
        except ValueError as e:
            raise ParameterError(str(e))

        return _Chaperon(x)

    @property
    def value(self):
        u"""Get chaperoned object."""
        return self._obj

    def __init__(self, x):
        if not isinstance(x, self.param_types + self.return_types):
            raise TypeError("unsupported type: {!r}".format(type(x).__name__))
        self._obj = x

    def __repr__(self):
        return '{}({})'.format(self.__class__.__name__, repr(self._obj))

    def __setattr__(self, name, value):
        if hasattr(self, '_obj'):
            raise TypeError("{} object does not support attribute assignment".format(
                self.__class__.__name__))
        self.__dict__[name] = value

    def to_file(self, filepath, header, format=None, precision=12):
        u"""Output chaperoned object to file with provenance header."""

        x = self._obj

        if format is None:
            format = self.default_formats[type(x)]

        header_line = json.dumps(_jsonable(header), sort_keys=True)

        with TextWriter(filepath) as fh:

            if isinstance(x, Dimacs):

                if format != u'dimacs':
                    raise ParameterError("DIMACS output does not support format {!r}".format(
                        format))
                fh.write(u'c {}\n'.format(header_line))
                fh.write(str(x))

            elif format == u'json':

                if isinstance(x, Table):
                    data = x.records()
                else:
                    data = x

                doc = OrderedDict([ (u'header', header), (u'data', data) ])
                fh.write(json.dumps(_jsonable(doc), indent=2) + u'\n')

            elif format == u'csv':

                fh.write(u'# {}\n'.format(header_line))
                writer = Writer(fh, precision=precision)

                if isinstance(x, Table):
                    writer.writerow(x.headings)
                    writer.writerows(x)
                else:
                    writer.writerow([u'key', u'value'])
                    for k, v in x.items():
                        if isinstance(v, (Mapping, list, tuple)):
                            v = json.dumps(_jsonable(v), sort_keys=True)
                        writer.writerow([k, v])

            else:
                raise ParameterError("unsupported output format: {!r}".format(format))

class _CommandsAction(argparse.Action):

    def __init__(self, option_strings, dest=argparse.SUPPRESS,
        default=argparse.SUPPRESS, help=None, regnode_commands=()):

        super(_CommandsAction, self).__init__(option_strings=option_strings,
            dest=dest, default=default, nargs=0, help=help)

        self._regnode_commands = regnode_commands

    def __call__(self, parser, namespace, values, option_string=None):
        parser.print_usage()
        rfi = _RegfuncInterface()
        rfi.populate()
        rfi.print_command_info(self._regnode_commands)
        parser.exit(0)

class _ArgumentParser(argparse.ArgumentParser):
    u"""Argument parser that raises usage errors instead of exiting."""

    def error(self, message):
        raise ParameterError(u'{}: {}'.format(self.prog, message))

################################################################################

class _RegfuncInterface(object):
    u"""A regfunc collection class."""

    def __init__(self):
        u"""Init regfunc collection."""
        self._data = OrderedDict()

    def __contains__(self, commands):
        return commands in self._data

    def __getitem__(self, commands):
        return self._data[commands]

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def populate(self):
        u"""Populate regfunc collection from regsat package modules."""

        func_names = set()

        for mod_name in _rinfo[u'modules']:

            module = import_module(mod_name)

            # Check members of module for regfunc instances.
            for member_name, member in inspect.getmembers(module):

                if not isinstance(member, regfunc):
                    continue

                # Skip regfuncs imported from another module.
                if member.function.__module__ != mod_name:
                    continue

                # Check for regfunc naming conflicts.
                if member_name in func_names:
                    raise RuntimeError("conflicting regfunc name: {!r}".format(
                        member_name))
                func_names.add(member_name)

                self._data[member.commands] = member

        # Check no command is both a terminal command and a command prefix.
        for commands in self._data:
            for i in range(1, len(commands)):
                if commands[:i] in self._data:
                    raise RuntimeError("regfunc command {!r} conflicts with {!r}".format(
                        u' '.join(commands[:i]), u' '.join(commands)))

        # Sort by commands so that argparser setup sees a depth-first walk.
        self._data = OrderedDict(sorted(self._data.items()))

        return self

    def prep_argparser(self):
        u"""Prep command-line argument parser."""

        version = '{}-{}'.format(u'regsat', about[u'version'])

        # Init main argument parser.
        ap = _ArgumentParser(prog=u'regsat', description=u'\n{}\n\n{}\n'.format(
            version, __doc__))

        # Add version parameter.
        ap.add_argument('--version', action='version', version=version)

        # Add 'commands' parameter.
        ap.add_argument('--commands', dest='commands', action=_CommandsAction,
            help='show terminal commands and exit')

        ap._optionals.title = 'keyword arguments'

        # Add main subparser.
        sp = ap.add_subparsers(title='commands')

        # Map each command prefix to its parser-subparser pair.
        parser_chain = { (): (ap, sp) }

        for commands, function in self._data.items():

            # Ensure a parser exists for every command prefix.
            for i in range(1, len(commands)):

                prefix = commands[:i]

                if prefix not in parser_chain:

                    parent_subparser = parser_chain[ commands[:i - 1] ][1]
                    cap = parent_subparser.add_parser(commands[i - 1])
                    csp = cap.add_subparsers(title='modifiers')

                    cap.add_argument('--commands', dest='commands',
                        action=_CommandsAction, regnode_commands=prefix,
                        help='show terminal commands and exit')
                    cap._optionals.title = 'keyword arguments'

                    parser_chain[prefix] = (cap, csp)

            # Add terminal command parser.
            parent_subparser = parser_chain[ commands[:-1] ][1]
            ap_spec = function.ap_spec
            cap = parent_subparser.add_parser(commands[-1],
                help=ap_spec[u'summary'], description=ap_spec[u'description'],
                formatter_class=argparse.RawDescriptionHelpFormatter)

            # Add each parameter to the argument parser.
            for param_name, param_info in ap_spec[u'params'].items():

                if param_info[u'type'] is bool:

                    cap.add_argument(param_info[u'flag'],
                        dest   = param_name,
                        action = 'store_true',
                        help   = param_info[u'description'])

                else:

                    cap.add_argument(param_info[u'flag'],
                        dest     = param_name,
                        metavar  = param_info[u'type'].__name__.upper(),
                        default  = None,
                        required = param_info[u'required'],
                        help     = param_info[u'description'])

            # Add return-value parameters.
            cap.add_argument('--outfile', dest='outfile', metavar='FILE',
                default=u'-', help='output file [default: stdout]')

            cap.add_argument('--format', dest='format', default=None,
                choices=(u'csv', u'json', u'dimacs'),
                help='output format [default: {}]'.format(
                    _Chaperon.default_formats[ ap_spec[u'returns'] ]))

            # Add logging parameters.
            verbosity = cap.add_mutually_exclusive_group()
            verbosity.add_argument('--verbose', dest='verbose', action='store_true',
                help='log debug messages')
            verbosity.add_argument('--quiet', dest='quiet', action='store_true',
                help='log warnings and errors only')

            # Set module and function name for this regfunc.
            cap.set_defaults(
                regfunc_module = function.function.__module__,
                regfunc_function = function.__name__
            )

            cap._optionals.title = 'keyword arguments'

        return ap

    def print_command_info(self, regnode_commands=()):
        u"""Print terminal command function info for given commands."""

        left_padding = u'  ... ' # padding before each modifier listing
        mid_padding = u'  '      # padding between modifiers and summaries

        # Assume line width is 80 columns.
        line_width = 80

        depth = len(regnode_commands)

        subcommands = list()
        summaries = list()

        for commands, function in self._data.items():
            if commands[:depth] == tuple(regnode_commands):
                subcommands.append( u' '.join(commands[depth:]) )
                summaries.append( function.summary )

        if len(subcommands) == 0:
            return

        # Get space used by subcommands.
        subcmd_space = max( len(x) for x in subcommands )

        # Get space available for summaries.
        summary_space = line_width - ( len(left_padding) +
            subcmd_space + len(mid_padding) )

        print(u"\nterminal commands: ")
        print(u"\n  regsat {}...\n".format( ''.join('{} '.format(cmd)
            for cmd in regnode_commands) ) )

        for subcommand, summary in zip(subcommands, summaries):

            subcommand = subcommand.ljust(subcmd_space)

            if summary_space >= len(summary):
                print(u'{}{}{}{}'.format(left_padding, subcommand, mid_padding, summary))
            elif summary_space > 3:
                print(u'{}{}{}{}'.format(left_padding, subcommand, mid_padding,
                    rellipt(summary, summary_space)))
            else:
                print(u'{}{}'.format(left_padding, subcommand))

    def proc_args(self, args):
        u"""Process parsed command-line arguments."""

        args = vars(args)

        try: # Pop regfunc info, get function.
            mod_name = args.pop(u'regfunc_module')
            func_name = args.pop(u'regfunc_function')
        except KeyError:
            raise ParameterError("no command given; see 'regsat --commands'")

        function = getattr(import_module(mod_name), func_name)

        outfile = args.pop(u'outfile', u'-')
        format = args.pop(u'format', None)
        verbose = args.pop(u'verbose', False)
        quiet = args.pop(u'quiet', False)

        if verbose:
            verbosity = logging.DEBUG
        elif quiet:
            verbosity = logging.WARNING
        else:
            verbosity = logging.INFO

        param_info = function.ap_spec[u'params']

        # Convert each argument from its command-line string.
        kwargs = OrderedDict()
        for param_name in function.params:

            arg = args.get(param_name)
            param_type = param_info[param_name][u'type']

            if param_type is bool:
                kwargs[param_name] = bool(arg)
            elif arg is not None:
                kwargs[param_name] = _Chaperon.from_line(arg, param_type).value

        run_config = RunConfig(
            command = function.commands,
            arguments = kwargs,
            seed = kwargs.get(u'seed'),
            config = config.snapshot(),
            outfile = outfile,
            format = format,
            verbosity = verbosity
        )

        return function, kwargs, run_config

################################################################################

@dataclass(frozen=True)
class RunConfig(object):
    u"""Parsed configuration of a single command run."""

    command: tuple
    arguments: Mapping
    seed: object = None
    config: Mapping = field(default_factory=OrderedDict)
    outfile: str = u'-'
    format: object = None
    verbosity: int = logging.INFO

    def header(self):
        u"""Get provenance header for output artifacts.

        The output path is left out so that identical runs written to
        different files produce identical content.
        """
        return OrderedDict([
            (u'program', u'regsat'),
            (u'version', about[u'version']),
            (u'command', u' '.join(self.command)),
            (u'arguments', self.arguments),
            (u'seed', self.seed),
            (u'config', self.config)
        ])

################################################################################

class regfunc(object):
    u"""A regfunc wrapper class.

    A regfunc is a package function that is also available as a terminal
    command. Its commands are taken from the function name split on
    underscores, and its command-line parameters from the Google-style
    docstring, which must give a type for every parameter and for the
    return value.
    """

    @property
    def ap_spec(self):
        return self._data[u'ap_spec']

    @property
    def commands(self):
        return self._data[u'commands']

    @property
    def description(self):
        return self._data[u'description']

    @property
    def function(self):
        return self._data[u'function']

    @property
    def params(self):
        return list(self._data[u'param_spec'].keys())

    @property
    def param_spec(self):
        return self._data[u'param_spec']

    @property
    def return_spec(self):
        return self._data[u'return_spec']

    @property
    def summary(self):
        return self._data[u'summary']

    @staticmethod
    def _parse_function_docstring(function):
        u"""Parse regfunc docstring.

        Returns an ordered dictionary mapping docstring headers to their
        documentation, plus the special headers 'Summary' and 'Description'.
        """

        func_name = function.__name__

        docstring = function.__doc__

        if docstring is None or docstring.strip() == u'':
            raise ValueError("regfunc {!r} has no docstring".format(func_name))

        raw_info = OrderedDict()

        # Split docstring into lines.
        lines = deque( docstring.splitlines() )

        # Set summary from first non-blank line.
        line = lines.popleft().strip()
        if line == u'':
            line = lines.popleft().strip()
            if line == u'':
                raise ValueError("{} docstring summary is a blank line".format(func_name))
        raw_info[u'Summary'] = [line]

        # Check summary followed by a blank line.
        if len(lines) > 0:
            line = lines.popleft().strip()
            if line != u'':
                raise ValueError("{} docstring summary is not followed by a blank line".format(
                    func_name))

        # Get list of remaining lines, with common indentation removed.
        lines = deque( dedent( u'\n'.join(lines) ).splitlines() )

        # Docstring description includes everything before the first header.
        h = u'Description'
        raw_info[h] = list()

        # Group content by docstring section.
        while len(lines) > 0:

            line = lines.popleft()

            m = _rinfo[u'regex'][u'docstring_header'].match(line)

            # If matches, set header of new section..
            if m is not None:

                h = m.group(1)

                # Map header to alias, if relevant.
                h = _rinfo[u'docstring_headers'][u'alias_mapping'].get(h, h)

                if h not in _rinfo[u'docstring_headers'][u'known']:
                    raise ValueError("unknown docstring header: {!r}".format(h))

                if h not in _rinfo[u'docstring_headers'][u'supported']:
                    raise ValueError("unsupported docstring header: {!r}".format(h))

                if h in raw_info:
                    raise ValueError("duplicate docstring header: {!r}".format(h))

                raw_info[h] = list()

            # ..otherwise append line to current section.
            else:
                raw_info[h].append(line)

        doc_info = OrderedDict()

        for h, section in raw_info.items():

            section = dedent( u'\n'.join(section) ).splitlines()

            if h == u'Args':

                param_info = OrderedDict()
                param_name = None

                for line in section:

                    line = line.strip()

                    if line == u'':
                        continue

                    m = _rinfo[u'regex'][u'docstring_param'].match(line)

                    # If this is a parameter definition line, get parameter info..
                    if m is not None:

                        param_name, type_name, param_desc = m.groups()

                        if param_name.startswith(u'*'):
                            raise RuntimeError("{} docstring must not specify unenumerated arguments".format(
                                func_name))

                        if type_name is None:
                            raise ValueError("{} docstring must specify a type for parameter {!r}".format(
                                func_name, param_name))

                        try:
                            param_type = _Chaperon._name2type[type_name]
                        except KeyError:
                            raise ValueError("{} docstring specifies unknown type {!r} for parameter {!r}".format(
                                func_name, type_name, param_name))

                        if param_type not in _Chaperon.param_types:
                            raise ValueError("{} docstring specifies unsupported type {!r} for parameter {!r}".format(
                                func_name, type_name, param_name))

                        if param_name in param_info:
                            raise ValueError("{} docstring contains duplicate parameter: {!r}".format(
                                func_name, param_name))

                        param_info[param_name] = {
                            u'type': param_type,
                            u'description': param_desc
                        }

                    # ..otherwise treat this as a continuation of the
                    # previous parameter description..
                    elif param_name is not None:

                        param_info[param_name][u'description'] = u'{} {}'.format(
                            param_info[param_name][u'description'], line)

                    # ..otherwise this is not a valid docstring parameter.
                    else:
                        raise ValueError("failed to parse docstring for regfunc: {!r}".format(
                            func_name))

                doc_info[h] = param_info

            elif h == u'Returns':

                description = list()
                return_type = None

                for line in section:

                    line = line.strip()

                    if line == u'':
                        continue

                    if return_type is None:

                        m = _rinfo[u'regex'][u'docstring_return'].match(line)
                        type_name = m.group(1)

                        try:
                            return_type = _Chaperon._name2type[type_name]
                        except KeyError:
                            raise ValueError("{} docstring specifies unknown return type {!r}".format(
                                func_name, type_name))

                        if return_type not in _Chaperon.return_types:
                            raise ValueError("{} docstring specifies unsupported return type {!r}".format(
                                func_name, type_name))

                        description.append( m.group(2) )

                    else:
                        description.append(line)

                doc_info[h] = {
                    u'type': return_type,
                    u'description': u' '.join(description)
                }

            else:

                # Strip leading/trailing blank lines.
                for i in (0, -1):
                    while len(section) > 0 and section[i].strip() == u'':
                        section.pop(i)

                doc_info[h] = u'\n'.join(section)

        return doc_info

    @staticmethod
    def _parse_function_name(function):
        u"""Parse regfunc name."""

        func_name = function.__name__

        if not inspect.isfunction(function):
            raise TypeError("object is not a function: {!r}".format(func_name))

        m = _rinfo[u'regex'][u'regfunc'].match(func_name)

        try: # Split regfunc name into commands.
            assert m is not None
            commands = tuple( func_name.split(u'_') )
            assert len(set(commands)) == len(commands)
        except AssertionError:
            raise ValueError("regfunc {!r} does not follow naming convention".format(
                func_name))

        # Check regfunc name is not too long for display at terminal.
        max_name_length = 74
        if len(func_name) > max_name_length:
            raise ValueError("regfunc {!r} has {} characters (max={})".format(
                func_name, len(func_name), max_name_length))

        return commands

    @staticmethod
    def _validate_argument(x, param_type):
        u"""Validate argument."""

        if isinstance(x, param_type) and not ( param_type is int and isinstance(x, bool) ):
            return x

        try:
            if param_type is float and isinstance(x, (int, np.integer)) and not isinstance(x, bool):
                return float(x)
            if param_type is float and isinstance(x, np.floating):
                return float(x)
            if param_type is int and isinstance(x, np.integer):
                return int(x)
            if param_type in (IntList, FloatList):
                if isinstance(x, (int, float)) and not isinstance(x, bool):
                    x = [x]
                if isinstance(x, Iterable) and not isinstance(x, str):
                    return param_type( regfunc._validate_argument(v, param_type.item_type)
                        for v in x )
            raise TypeError
        except TypeError:
            raise TypeError("argument type ({!r}) differs from that expected ({!r})".format(
                type(x).__name__, param_type.__name__))

    def __init__(self, function):
        u"""Init regfunc wrapper from wrapped function."""

        self._data = dict()

        self._data[u'commands'] = self._parse_function_name(function)

        doc_info = self._parse_function_docstring(function)

        self._data[u'summary'] = doc_info[u'Summary']
        self._data[u'description'] = doc_info.get(u'Description') or None

        # Get parameters from function signature.
        signature = inspect.signature(function)
        doc_params = doc_info.get(u'Args', OrderedDict())

        sig_params = [ p for p in signature.parameters.values() ]

        for p in sig_params:
            if p.kind not in (p.POSITIONAL_OR_KEYWORD, p.KEYWORD_ONLY):
                raise ValueError("regfunc {!r} must not take unenumerated arguments".format(
                    function.__name__))
            if p.name in _rinfo[u'reserved_params']:
                raise ValueError("regfunc {!r} uses reserved parameter name {!r}".format(
                    function.__name__, p.name))

        if [ p.name for p in sig_params ] != list(doc_params.keys()):
            raise ValueError("regfunc {!r} docstring parameters do not match its signature".format(
                function.__name__))

        param_spec = OrderedDict()
        for p in sig_params:

            info = dict(doc_params[p.name])

            if p.default is p.empty:
                info[u'required'] = True
            else:
                info[u'required'] = False
                info[u'default'] = p.default

            if info[u'type'] is bool and info[u'required']:
                raise ValueError("regfunc {!r} switch parameter {!r} must have a default".format(
                    function.__name__, p.name))

            param_spec[p.name] = info

        self._data[u'param_spec'] = param_spec

        try:
            self._data[u'return_spec'] = doc_info[u'Returns']
        except KeyError:
            raise ValueError("regfunc {!r} docstring must specify a return value".format(
                function.__name__))

        self._data[u'function'] = function
        self._data[u'signature'] = signature

        self.__name__ = function.__name__
        self.__doc__ = function.__doc__
        self.__module__ = function.__module__
        self.__wrapped__ = function

        self._update_ap_spec()

    def __call__(self, *args, **kwargs):
        u"""Call regfunc wrapper."""

        # Bind arguments to regfunc parameters.
        try:
            bound = self._data[u'signature'].bind(*args, **kwargs)
        except TypeError as e:
            raise TypeError("{}: {}".format(self.__name__, e))
        bound.apply_defaults()

        for param_name, info in self._data[u'param_spec'].items():

            arg_value = bound.arguments[param_name]

            # Optional parameters may be left unset.
            if arg_value is None and not info[u'required'] and info[u'default'] is None:
                continue

            bound.arguments[param_name] = self._validate_argument(arg_value,
                info[u'type'])

        return self.function(*bound.args, **bound.kwargs)

    def __repr__(self):
        return '{}({!r})'.format(self.__class__.__name__, u' '.join(self.commands))

    def _update_ap_spec(self):

        ap_spec = OrderedDict([
            (u'commands', self.commands),
            (u'summary', self.summary),
            (u'description', self.description),
            (u'returns', self._data[u'return_spec'][u'type']),
            (u'params', OrderedDict())
        ])

        for param_name, info in self._data[u'param_spec'].items():

            description = info[u'description']
            if info[u'required']:
                description = u'{} [required]'.format(description)

            ap_spec[u'params'][param_name] = {
                u'flag': u'--{}'.format(param_name.replace(u'_', u'-')),
                u'type': info[u'type'],
                u'required': info[u'required'],
                u'description': description
            }

        self._data[u'ap_spec'] = ap_spec

################################################################################

def _configure_logging(level):
    u"""Configure package logging to standard error."""

    root = logging.getLogger(u'regsat')
    root.setLevel(level)

    # An earlier handler may hold a closed stream.
    for handler in [ h for h in root.handlers if getattr(h, u'_regsat', False) ]:
        root.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(
        u'%(asctime)s %(name)s %(levelname)s %(message)s'))
    handler._regsat = True
    root.addHandler(handler)

def _report_error(error, command=None):
    u"""Write error report to standard error and get exit code."""

    code = exit_code_of(error)

    report = OrderedDict([
        (u'error', type(error).__name__),
        (u'message', str(error)),
        (u'exit_code', code),
        (u'command', command)
    ])

    sys.stderr.write(json.dumps(report) + u'\n')

    return code

def regsat(argv=None):
    u"""Run regsat command, returning its exit code."""

    if argv is None:
        argv = sys.argv[1:]

    command = None

    try:

        rfi = _RegfuncInterface().populate()

        ap = rfi.prep_argparser()

        args = ap.parse_args(argv)

        function, kwargs, run_config = rfi.proc_args(args)

        command = u' '.join(run_config.command)

        _configure_logging(run_config.verbosity)

        logger.debug("running {!r} with arguments {!r}".format(command,
            dict(kwargs)))

        return_value = function(**kwargs)

        result = _Chaperon(return_value)
        result.to_file(run_config.outfile, run_config.header(),
            format=run_config.format, precision=config[u'output', u'precision'])

    except KeyboardInterrupt:
        raise
    except Exception as e:
        logger.debug("command failed", exc_info=True)
        return _report_error(e, command=command)

    return 0

def main():
    sys.exit( regsat() )

################################################################################

__all__ = ['Dimacs', 'FloatList', 'IntList', 'Record', 'RunConfig', 'regfunc',
    'regsat']

if __name__ == '__main__':
    # Run as the imported module, whose regfunc class the domain modules share.
    from regsat.core.action import main as _main
    _main()

################################################################################
