#!/usr/bin/env python
"""
PySteiner -- Setup Script

Copyright 2016, University Corporation for Atmospheric Research
See the LICENSE.rst file for details
"""

from setuptools import setup

exec(open('source/pysteiner/version.py').read())

setup(name='PySteiner',
      version=__version__,
      description='Inner-Neighborhood Volume Functions of Convex Polytopes',
      author='The PySteiner Developers',
      license='See LICENSE.rst',
      packages=['pysteiner', 'pysteiner.test'],
      package_dir={'pysteiner': 'source/pysteiner'},
      package_data={'pysteiner': ['LICENSE.rst']},
      scripts=['scripts/steinervol'],
      install_requires=['numpy', 'asaptools'],
      extras_require={'parallel': ['mpi4py']}
      )
