"""
Fixture files for the command-line tests

Copyright 2016, University Corporation for Atmospheric Research
See the LICENSE.rst file for details
"""

import os
import json

from pysteiner.shapes import make_rectangle, make_square
from pysteiner.geometry import dump_polytope

# Fixture file names
rect123 = 'rect123.json'
square = 'square.json'
unbounded = 'unbounded.json'
empty = 'empty.json'
tolerances = 'tolerances.json'
tiny_budget = 'tinybudget.json'
fixtures = [rect123, square, unbounded, empty, tolerances, tiny_budget]


def generate_data():
    """
    Generate the fixture files for testing purposes
    """
    with open(rect123, 'w') as fobj:
        dump_polytope(make_rectangle([1.0, 2.0, 3.0]), fobj)
    with open(square, 'w') as fobj:
        dump_polytope(make_square(1.0), fobj)

    # A quadrant: x >= 0, y >= 0
    with open(unbounded, 'w') as fobj:
        json.dump({'dim': 2, 'halfspaces': [{'a': [1, 0], 'b': 0, 'sense': '>='},
                                            {'a': [0, 1], 'b': 0, 'sense': '>='}]}, fobj)

    # x >= 1 and x <= 0
    with open(empty, 'w') as fobj:
        json.dump({'dim': 1, 'halfspaces': [{'a': [1], 'b': 1, 'sense': '>='},
                                            {'a': [1], 'b': 0, 'sense': '<='}]}, fobj)

    with open(tolerances, 'w') as fobj:
        json.dump({'window_margin': 0.25, 'feas_tol': 1e-10}, fobj)

    # One simplex pivot, no retries
    with open(tiny_budget, 'w') as fobj:
        json.dump({'lp_max_iter': 1, 'lp_retries': 0}, fobj)


def remove_data():
    for fname in fixtures:
        if os.path.exists(fname):
            os.remove(fname)
