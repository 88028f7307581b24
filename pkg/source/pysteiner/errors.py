"""
Error kinds raised by the PySteiner operations

Validation problems derive from ValueError, so that anything catching the
builtin exception also catches them.  Numerical trouble derives from
RuntimeError.  Every class carries a short 'kind' name, which is what the
command-line tool reports in its error record.

Copyright 2016, University Corporation for Atmospheric Research
See the LICENSE.rst file for details
"""


#==============================================================================
# Validation errors
#==============================================================================
class PySteinerValueError(ValueError):

    """
    Base class for all input validation failures
    """

    kind = 'InvalidInput'


class ZeroNormalError(PySteinerValueError):
    kind = 'ZeroNormal'


class DimensionMismatchError(PySteinerValueError):
    kind = 'DimensionMismatch'


class UnboundedInputError(PySteinerValueError):
    kind = 'UnboundedInput'


class LowerDimensionalError(PySteinerValueError):
    kind = 'LowerDimensional'


class EmptyPolytopeError(PySteinerValueError):
    kind = 'Empty'


class OutOfDomainError(PySteinerValueError):
    kind = 'OutOfDomain'


class ParallelPlanesError(PySteinerValueError):
    kind = 'ParallelPlanes'


class UnboundedCellError(PySteinerValueError):
    kind = 'UnboundedCell'


class NotEquiangularError(PySteinerValueError):
    kind = 'NotEquiangular'


class NotUniformError(PySteinerValueError):

    """
    Raised when the face lattice has non-uniform incidence counts

    The offending lattice level and the counts found there are kept on the
    exception object.
    """

    kind = 'NotUniform'

    def __init__(self, msg, level=None, counts=None):
        super(NotUniformError, self).__init__(msg)
        self.level = level
        self.counts = counts


class MemoryBudgetError(PySteinerValueError):
    kind = 'MemoryBudget'


class InvalidShapeError(PySteinerValueError):
    kind = 'InvalidShape'


class UsageError(PySteinerValueError):
    kind = 'Usage'


#==============================================================================
# Numerical errors
#==============================================================================
class NumericalFailureError(RuntimeError):

    """
    Raised when a computation cannot be certified within its tolerances
    """

    kind = 'NumericalFailure'


def error_kind(exc):
    """
    Return the short kind name for an exception

    Parameters:
        exc (Exception): The exception raised

    Returns:
        str: The 'kind' attribute if present, otherwise the class name
    """
    return getattr(exc, 'kind', type(exc).__name__)
