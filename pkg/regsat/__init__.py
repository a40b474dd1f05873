#!/usr/bin/env python3
# -*- coding: utf-8 -*-
u"""Bounds on the p-satisfiability threshold of regular random k-SAT."""

__version__ = '0.1.0'

################################################################################
