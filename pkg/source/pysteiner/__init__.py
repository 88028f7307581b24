"""
PySteiner

A tool for computing the inner-neighborhood volume function of convex
polytopes as an exact pluri-phase piecewise polynomial

:AUTHORS: The PySteiner Developers
:COPYRIGHT: 2016, University Corporation for Atmospheric Research
:LICENSE: See the LICENSE.rst file for details
"""

from pysteiner.version import __version__

from pysteiner import errors
from pysteiner import specification
from pysteiner import geometry
from pysteiner import piecewise
from pysteiner import steiner
from pysteiner import equiangular
from pysteiner import shapes
from pysteiner import oracle
