#!/usr/bin/env python3
# -*- coding: utf-8 -*-
u"""regsat config module."""

from collections import namedtuple as _namedtuple
from collections import OrderedDict as _OrderedDict
from collections.abc import Mapping as _Mapping
import logging as _logging
import os as _os
import platform as _platform

from regsat.core import freeze as _freeze
import regsat.core.uniyaml as _uniyaml

logger = _logging.getLogger(__name__)

################################################################################

def _validate_positive_int(x):
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError("expected object of type int, not {!r}".format(
            type(x).__name__))
    if x <= 0:
        raise ValueError("expected positive integer, not {!r}".format(x))
    return x

def _validate_nonnegative_int(x):
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError("expected object of type int, not {!r}".format(
            type(x).__name__))
    if x < 0:
        raise ValueError("expected non-negative integer, not {!r}".format(x))
    return x

def _to_float(x):
    # YAML 1.1 reads exponents without a dot (e.g. 1e-6) as strings.
    if isinstance(x, bool) or not isinstance(x, (int, float, str)):
        raise TypeError("expected object of type float, not {!r}".format(
            type(x).__name__))
    return float(x)

def _validate_positive_float(x):
    x = _to_float(x)
    if not x > 0.0:
        raise ValueError("expected positive number, not {!r}".format(x))
    return x

def _validate_unit_interval(x):
    x = _to_float(x)
    if not 0.0 <= x <= 1.0:
        raise ValueError("expected number in [0, 1], not {!r}".format(x))
    return x

def _validate_odd_size(x):
    x = _validate_positive_int(x)
    if x < 5 or x % 2 == 0:
        raise ValueError("grid size must be an odd integer of at least 5, not {!r}".format(x))
    return x

def _identity(x):
    return x

################################################################################

_ConfigAtom = _namedtuple('ConfigAtom', ['default', 'postload', 'predump'])

class _Config(object):
    u"""Class for package configuration."""
    
    _spec = _OrderedDict([
        
        ((u'solver', u'tolerance'), _ConfigAtom(1e-12,
            _validate_positive_float, _identity)),
        ((u'solver', u'max_iterations'), _ConfigAtom(200,
            _validate_positive_int, _identity)),
        ((u'solver', u'max_step'), _ConfigAtom(5.0,
            _validate_positive_float, _identity)),
        
        ((u'grid', u'size'), _ConfigAtom(201,
            _validate_odd_size, _identity)),
        ((u'grid', u'margin'), _ConfigAtom(1e-6,
            _validate_positive_float, _identity)),
        ((u'grid', u'refine_levels'), _ConfigAtom(2,
            _validate_nonnegative_int, _identity)),
        ((u'grid', u'refine_factor'), _ConfigAtom(8,
            _validate_positive_int, _identity)),
        ((u'grid', u'exclusion_radius'), _ConfigAtom(1e-3,
            _validate_positive_float, _identity)),
        ((u'grid', u'clamp'), _ConfigAtom(1e-4,
            _validate_positive_float, _identity)),
        
        ((u'search', u'rel_tol'), _ConfigAtom(1e-4,
            _validate_positive_float, _identity)),
        ((u'search', u'max_scans'), _ConfigAtom(25,
            _validate_positive_int, _identity)),
        
        ((u'generate', u'retry_budget'), _ConfigAtom(100000,
            _validate_positive_int, _identity)),
        
        ((u'maxsat', u'exhaustive_cap'), _ConfigAtom(24,
            _validate_positive_int, _identity)),
        ((u'maxsat', u'noise'), _ConfigAtom(0.3,
            _validate_unit_interval, _identity)),
        ((u'maxsat', u'restart_factor'), _ConfigAtom(50,
            _validate_positive_int, _identity)),
        ((u'maxsat', u'budget_factor'), _ConfigAtom(1000,
            _validate_positive_int, _identity)),
        
        ((u'output', u'precision'), _ConfigAtom(12,
            _validate_positive_int, _identity)),
        
        ((u'run', u'threads'), _ConfigAtom(1,
            _validate_positive_int, _identity))
    ])
    
    # Environment variables overriding config file values.
    _env = {
        (u'run', u'threads'): u'REGSAT_THREADS'
    }
    
    @property
    def dirpath(self):
        u"""Config directory path."""
        return self._dirpath
    
    @property
    def filename(self):
        u"""Config filename."""
        return self._filename
    
    @property
    def filepath(self):
        u"""Config filepath."""
        return self._filepath
    
    @classmethod
    def _validate_config_info(cls, config_info):
        
        if not isinstance(config_info, _Mapping):
            raise ValueError("config file must contain a mapping, not {!r}".format(
                type(config_info).__name__))
        
        validated = dict()
        
        for section, items in config_info.items():
            
            if not isinstance(items, _Mapping):
                raise KeyError("invalid config keys: {!r}".format((section,)))
            
            for name, value in items.items():
                
                keys = (section, name)
                
                try:
                    value_spec = cls._spec[keys]
                except KeyError:
                    raise KeyError("invalid config keys: {!r}".format(keys))
                
                try: # validate value, even if default
                    validated[keys] = value_spec.postload(value)
                except (AssertionError, TypeError, ValueError):
                    raise ValueError("cannot set {!r} - invalid value: {!r}".format(
                        keys, value))
        
        return validated
    
    def __init__(self, dirpath=None):
        
        # Set config filename.
        self._filename = u'config.yaml'
        
        # Set platform-dependent config directory path, unless given.
        if dirpath is None:
            
            platform_system = _platform.system()
            
            if platform_system in ('Linux', 'Darwin'):
                home = _os.path.expanduser(u'~')
                if platform_system == 'Linux':
                    dirpath = _os.path.join(home, u'.config', u'regsat')
                else:
                    dirpath = _os.path.join(home, u'Library',
                        u'Application Support', u'regsat')
            elif platform_system == 'Windows':
                appdata = _os.getenv('APPDATA')
                if appdata is None or not _os.path.isdir(appdata):
                    raise RuntimeError("valid %APPDATA% not found")
                dirpath = _os.path.join(appdata, u'regsat')
            else:
                raise RuntimeError("unrecognised platform: {!r}".format(platform_system))
        
        self._dirpath = dirpath
        
        # Cache of validated config info, keyed by file modification time.
        self._cache = [None, dict()]
        
        # Set config filepath.
        self._filepath = _os.path.join(self._dirpath, self._filename)
    
    def __delattr__(self, keys):
        raise TypeError("{} object does not support attribute deletion".format(
            self.__class__.__name__))
    
    def __delitem__(self, keys):
        raise TypeError("{} object does not support item deletion".format(
            self.__class__.__name__))
    
    def __getitem__(self, keys):
        
        try:
            value_spec = _Config._spec[keys]
        except (KeyError, TypeError):
            raise KeyError("invalid config keys: {!r}".format(keys))
        
        # Environment overrides take precedence over the config file.
        if keys in _Config._env:
            env_value = _os.getenv(_Config._env[keys])
            if env_value not in (None, u''):
                try:
                    return value_spec.postload( _uniyaml.uniload_scalar(env_value) )
                except (TypeError, ValueError):
                    raise ValueError("invalid value of environment variable {}: {!r}".format(
                        _Config._env[keys], env_value))
        
        config_info = self.load()
        
        return config_info.get(keys, value_spec.default)
    
    def __repr__(self):
        return '{}({})'.format(self.__class__.__name__, repr(self.snapshot())[1:-1])
    
    def __setattr__(self, name, value):
        if hasattr(self, '_filepath'):
            raise TypeError("{} object does not support attribute assignment".format(
                self.__class__.__name__))
        self.__dict__[name] = value
    
    def __setitem__(self, keys, value):
        raise TypeError("{} object does not support item assignment".format(
            self.__class__.__name__))
    
    def keys(self):
        u"""Get config keys in spec order."""
        return list(_Config._spec.keys())
    
    def load(self):
        u"""Load validated package config info, keyed by tuple."""
        
        try:
            mtime = _os.path.getmtime(self._filepath)
        except OSError:
            return dict()
        
        if self._cache[0] == mtime:
            return self._cache[1]
        
        try:
            with open(self._filepath, 'r', encoding='utf_8') as fh:
                config_info = _uniyaml.uniload(fh)
        except (IOError, OSError, _uniyaml.YAMLError):
            raise RuntimeError("failed to read package config file: {!r}".format(
                self._filepath))
        
        if config_info is None:
            config_info = dict()
        
        config_info = _Config._validate_config_info(config_info)
        
        logger.debug("loaded config file {!r}".format(self._filepath))
        
        self._cache[0] = mtime
        self._cache[1] = config_info
        
        return config_info
    
    def snapshot(self):
        u"""Get effective config as a nested mapping."""
        
        info = _OrderedDict()
        
        for keys in _Config._spec:
            section, name = keys
            info.setdefault(section, _OrderedDict())
            info[section][name] = self[keys]
        
        return info
    
    def frozen(self):
        u"""Get effective config as an immutable nested mapping."""
        return _freeze(self.snapshot())
    
    def setup(self):
        u"""Setup package config file.
        
        Config values already in the file are kept. Any missing
        values are set to their defaults.
        
        Returns:
            str: Path of the config file.
        """
        
        config_info = self.load()
        
        # Set any config info not already in config file.
        dump_info = _OrderedDict()
        for keys, value_spec in _Config._spec.items():
            section, name = keys
            value = config_info.get(keys, value_spec.default)
            dump_info.setdefault(section, _OrderedDict())
            dump_info[section][name] = value_spec.predump(value)
        
        # Ensure config directory exists.
        if not _os.path.isdir(self._dirpath):
            _os.makedirs(self._dirpath)
        
        try: # Write package config file.
            with open(self._filepath, 'w', encoding='utf_8') as fh:
                _uniyaml.unidump(dump_info, fh)
        except (IOError, OSError, _uniyaml.YAMLError):
            raise RuntimeError("failed to setup package config file: {!r}".format(
                self._filepath))
        
        logger.info("wrote config file {!r}".format(self._filepath))
        
        return self._filepath

################################################################################

config = _Config()

################################################################################
