#!/usr/bin/env python
# -*- coding: utf-8 -*-
from setuptools import setup, find_packages
import os

thelibFolder = os.path.dirname(os.path.realpath(__file__))
requirementPath = thelibFolder + '/requirements.txt'
install_requires = []
if os.path.isfile(requirementPath):
    with open(requirementPath) as f:
        install_requires = f.read().splitlines()

config = {
    'name': 'lsemStability',
    'description': 'Simulation, parameter recovery and condition-number analysis for linear structural equation models',
    'long_description': open('README.md', 'r').read(),
    'long_description_content_type': 'text/markdown',
    'license': 'MIT',
    'version': '0.1.0',
    'install_requires': install_requires,
    'extras_require': {'test': ['pytest', 'hypothesis']},
    'python_requires': '>=3.8',
    'classifiers': [
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Development Status :: 4 - Beta"

    ],
    'package_dir': {'lsemStability': 'lsemStability'},
    'packages': find_packages(exclude=["*.tests", "*.tests.*", "tests.*", "tests"]),
    'scripts': ['lsemlab.py'],
}

if __name__ == '__main__':
    setup(**config)
