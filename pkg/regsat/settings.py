#!/usr/bin/env python3
# -*- coding: utf-8 -*-
u"""regsat settings commands."""

from collections import OrderedDict

from regsat.core.action import Record
from regsat.core.action import regfunc
from regsat.core.config import config

################################################################################

@regfunc
def config_show():
    u"""Show effective package configuration.

    Values come from the environment, then the config file, then defaults.

    Returns:
        Record: Config file path and configuration by section.
    """
    info = OrderedDict([ (u'filepath', config.filepath) ])
    info.update(config.snapshot())
    return Record(info)

@regfunc
def config_init():
    u"""Write package config file with defaults for missing values.

    Returns:
        Record: Path of the config file and its effective values.
    """
    filepath = config.setup()
    return Record([ (u'filepath', filepath), (u'config', config.snapshot()) ])

################################################################################

__all__ = ['config_init', 'config_show']

################################################################################
