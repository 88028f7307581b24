"""
The module containing the PySteiner configuration specification class

This is a configuration specification class, through which the numerical
tolerances of every PySteiner operation are specified.  All of the
operations take an optional Specifier; when none is given, the defaults
defined here are used.

Copyright 2016, University Corporation for Atmospheric Research
See the LICENSE.rst file for details
"""

# Built-in imports
import json
from numbers import Number


#==============================================================================
# create_specifier factory function
#==============================================================================
def create_specifier(**kwargs):
    """
    Factory function for Specifier class objects.  Defined for convenience.

    Parameters:
        kwargs (dict): Optional arguments to be passed to the newly created
            Specifier object's constructor.

    Returns:
        Specifier: An instantiation of the type of Specifier class desired.
    """
    return Specifier(**kwargs)


#==============================================================================
# get_specifier - Fall back to the default tolerances
#==============================================================================
_DEFAULT_SPECIFIER_ = None


def get_specifier(specifier=None):
    """
    Return the given Specifier, or the shared default one if None

    Parameters:
        specifier (Specifier): A Specifier object or None

    Returns:
        Specifier: The Specifier to use
    """
    global _DEFAULT_SPECIFIER_
    if specifier is None:
        if _DEFAULT_SPECIFIER_ is None:
            _DEFAULT_SPECIFIER_ = Specifier()
        return _DEFAULT_SPECIFIER_
    if not isinstance(specifier, Specifier):
        err_msg = 'Specifier of type {0} is not a valid Specifier object'.format(
            type(specifier))
        raise TypeError(err_msg)
    return specifier


#==============================================================================
# read_specifier - Load a Specifier from a JSON file
#==============================================================================
def read_specifier(fname):
    """
    Read a Specifier previously stored with Specifier.write

    Parameters:
        fname (str): Name of the JSON file to read

    Returns:
        Specifier: The validated Specifier stored in the file
    """
    with open(fname, 'r') as fobj:
        data = json.load(fobj)
    if not isinstance(data, dict):
        err_msg = 'Tolerance file {0!r} must hold a JSON object'.format(fname)
        raise ValueError(err_msg)
    spec = Specifier(**data)
    spec.validate()
    return spec


#==============================================================================
# Specifier Base Class
#==============================================================================
class Specifier(object):

    """
    Tolerance and Numerical Parameter Specifier

    This class acts as a container for the named tolerances used by the
    geometry, piecewise polynomial, engine and oracle operations.
    """

    # Names of the tolerance fields, in the order they are written
    _TOLERANCES_ = ['unit_tol', 'feas_tol', 'lp_tol', 'vertex_tol',
                    'rank_tol', 'coeff_tol', 'cont_tol', 'smooth_tol',
                    'angle_tol', 'cond_limit', 'window_margin']

    # Names of the integer fields
    _COUNTS_ = ['lp_max_iter', 'lp_retries', 'grid_cell_cap']

    def __init__(self,
                 unit_tol=1e-12,
                 feas_tol=1e-9,
                 lp_tol=1e-9,
                 vertex_tol=1e-8,
                 rank_tol=1e-10,
                 coeff_tol=1e-12,
                 cont_tol=1e-9,
                 smooth_tol=1e-7,
                 angle_tol=1e-8,
                 cond_limit=1e12,
                 window_margin=0.1,
                 lp_max_iter=5000,
                 lp_retries=3,
                 grid_cell_cap=2 ** 24,
                 **kwargs):
        """
        Initializes the internal data with optional arguments.

        Parameters:
            unit_tol (float): Tolerance on unit normal lengths
            feas_tol (float): Feasibility tolerance for halfspace membership
            lp_tol (float): Certified tolerance of linear program solutions
            vertex_tol (float): Distance below which vertices are merged
            rank_tol (float): Singular value threshold for rank tests
            coeff_tol (float): Tolerance on polynomial coefficients
            cont_tol (float): Relative tolerance of continuity checks
            smooth_tol (float): Relative tolerance of derivative matching
            angle_tol (float): Absolute tolerance on angles (radians)
            cond_limit (float): Largest accepted condition number for
                vertex solves
            window_margin (float): Fraction of the inradius added beyond it
                when computing volume functions
            lp_max_iter (int): Pivot budget of a single simplex run
            lp_retries (int): Number of retries with a relaxed pivot
                tolerance before a linear program is declared failed
            grid_cell_cap (int): Largest number of grid cells the grid
                oracle may classify
            kwargs (dict): Optional arguments describing the run
        """

        # Tolerance on |normal| = 1
        self.unit_tol = unit_tol

        # Halfspace membership slack
        self.feas_tol = feas_tol

        # Linear program certification tolerance
        self.lp_tol = lp_tol

        # Vertex merging distance
        self.vertex_tol = vertex_tol

        # Singular value threshold for linear dependence
        self.rank_tol = rank_tol

        # Polynomial coefficient tolerance
        self.coeff_tol = coeff_tol

        # Continuity tolerance (times the value scale)
        self.cont_tol = cont_tol

        # Derivative matching tolerance (times the derivative scale)
        self.smooth_tol = smooth_tol

        # Angle comparison tolerance in radians
        self.angle_tol = angle_tol

        # Condition number limit for vertex solves
        self.cond_limit = cond_limit

        # Extra window beyond the inradius, as a fraction of it
        self.window_margin = window_margin

        # Simplex pivot budget
        self.lp_max_iter = lp_max_iter

        # Simplex retry budget
        self.lp_retries = lp_retries

        # Grid oracle size cap
        self.grid_cell_cap = grid_cell_cap

        # Optional arguments associated with the run
        self.options = kwargs

    def validate(self):
        """
        Perform self-validation of internal data
        """

        # Validate types
        self.validate_types()

        # Validate values
        self.validate_values()

    def validate_types(self):
        """
        Method for checking the types of the Specifier data.

        This method is called by the validate() method.
        """

        # Validate the tolerances
        for name in self._TOLERANCES_:
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, Number):
                err_msg = "Tolerance {0!r} must be given as a number".format(name)
                raise TypeError(err_msg)

        # Validate the counts
        for name in self._COUNTS_:
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                err_msg = "Parameter {0!r} must be given as an int".format(name)
                raise TypeError(err_msg)

        # Validate the options dictionary
        if not isinstance(self.options, dict):
            err_msg = "Options must be given as a dictionary"
            raise TypeError(err_msg)

    def validate_values(self):
        """
        Method to validate the values of the Specifier data.

        This method is called by the validate() method.
        """

        # All tolerances must be strictly positive
        for name in self._TOLERANCES_:
            if not getattr(self, name) > 0:
                err_msg = "Tolerance {0!r} must be positive".format(name)
                raise ValueError(err_msg)

        # The condition limit must be larger than one
        if self.cond_limit <= 1:
            err_msg = "Condition number limit must be larger than 1"
            raise ValueError(err_msg)

        # Counts must be positive
        if self.lp_max_iter < 1:
            err_msg = "Simplex pivot budget must be at least 1"
            raise ValueError(err_msg)
        if self.lp_retries < 0:
            err_msg = "Simplex retry budget cannot be negative"
            raise ValueError(err_msg)
        if self.grid_cell_cap < 8:
            err_msg = "Grid cell cap must allow at least 8 cells"
            raise ValueError(err_msg)

    def to_dict(self):
        """
        Return the Specifier data as a plain dictionary
        """
        data = dict((name, getattr(self, name))
                    for name in self._TOLERANCES_ + self._COUNTS_)
        data.update(self.options)
        return data

    def write(self, fname):
        """
        Write the specifier to a file

        Parameters:
            fname (str): Name of file to write
        """
        with open(fname, 'w') as fobj:
            json.dump(self.to_dict(), fobj, indent=2, sort_keys=True)
