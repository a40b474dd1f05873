#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import io
import setuptools

setup_info = {
    'name': 'regsat',
    'version': '0.1.0',
    'description': 'Bounds on the p-satisfiability threshold of regular random k-SAT',
    'packages': setuptools.find_packages(exclude=['tests']),
    'include_package_data': True,

    'classifiers': [
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
        'Operating System :: MacOS :: MacOS X',
        'Operating System :: Microsoft :: Windows',
        'Operating System :: POSIX :: Linux',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Utilities'
    ],

    'license': 'GNU GPL 3.0',
    'keywords': 'satisfiability random-k-sat threshold second-moment',
    'python_requires': '>=3.8',
    'install_requires': [
        'mpmath>=1.1.0',
        'numpy>=1.17.0',
        'PyYAML>=5.1',
        'scipy>=1.4.0'
    ],
    'extras_require': {
        'test': [
            'pytest>=7.0'
        ]
    },
    'entry_points': {
        'console_scripts': [
            'regsat = regsat.core.action:main',
        ]
    }
}

with io.open('README.md', encoding='utf_8') as fh:
    setup_info['long_description'] = fh.read()
    setup_info['long_description_content_type'] = 'text/markdown'

setuptools.setup( **setup_info )

################################################################################
