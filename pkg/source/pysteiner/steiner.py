"""
The module containing the gliding-arrangement volume engine

A gliding arrangement is a family of oriented hyperplanes, each translating
with a constant velocity.  For a cell C(t) of the arrangement, the volume
W(t) = vol_d(C(t)) is a continuous piecewise polynomial of degree d.  The
engine computes it by recursion on the dimension: the derivative of W is a
combination of the facet volumes W_j(t), each of which is the volume
function of a cell of the traced arrangement on the facet hyperplane.
Integrating back, anchored where the cell degenerates, gives W.

For the arrangement adapted to a polytope P (every facet moving inward at
unit speed) the cell at time r is the r-interior P(r), so the engine yields
W_P(r) = vol(P(r)) and the inner-neighborhood volume V_P = vol(P) - W_P.

Copyright 2016, University Corporation for Atmospheric Research
See the LICENSE.rst file for details
"""

# Built-in imports
from os import linesep

# Third-party imports
import numpy
from asaptools.simplecomm import create_comm, SimpleComm
from asaptools.timekeeper import TimeKeeper
from asaptools.vprinter import VPrinter

# PySteiner imports
from pysteiner.specification import get_specifier
from pysteiner.geometry import (Hyperplane, Polytope, solve_lp, inradius,
                                remove_redundant, polytope_volume,
                                absolute_rank, complement_frame,
                                _chebyshev_lp)
from pysteiner.piecewise import (Polynomial, PiecewisePoly, merge_breakpoints_on,
                                 linear_combination)
from pysteiner.errors import (DimensionMismatchError, ParallelPlanesError,
                              UnboundedCellError, NumericalFailureError)


#==============================================================================
# _pprint_dictionary - Helper method for printing diagnostic data
#==============================================================================
def _pprint_dictionary(title, dictionary, order=None):
    """
    Hidden method for pretty-printing a dictionary of numeric values,
    with a given title.

    Parameters:
        title (str): The title to give to the printed table
        dictionary (dict): A dictionary of numeric values
        order (list): The print order for the keys in the dictionary (only
            items that are in both the order list and the dictionary will be
            printed)

    Return:
        str: A string with the pretty-printed dictionary data
    """
    # Type checking
    if not isinstance(title, str):
        err_msg = 'Title must be a str type'
        raise TypeError(err_msg)
    if not isinstance(dictionary, dict):
        err_msg = 'Input dictionary needs to be a dictionary type'
        raise TypeError(err_msg)
    if order is not None and not isinstance(order, list):
        err_msg = 'Order list needs to be a list type'
        raise TypeError(err_msg)

    # Determine the print order, if present
    print_order = list(dictionary.keys())
    if order is not None:
        print_order = [item for item in order if item in dictionary]

    # Header line with Title
    hline = '-' * 50 + linesep
    ostr = hline + ' ' + title.upper() + ':' + linesep + hline

    # Line up the values after the longest name
    valcol = max([len(str(name)) for name in print_order] + [0]) + 2
    for name in print_order:
        spacer = ' ' * (valcol - len(str(name)))
        ostr += str(name) + ':' + spacer
        ostr += str(dictionary[name]) + linesep
    ostr += hline

    return ostr


#==============================================================================
# GlidingHyperplane
#==============================================================================
class GlidingHyperplane(object):

    """
    A hyperplane translating with a constant velocity vector

    At time t the hyperplane is {Q : <Q, N> - offset - t <v, N> = 0}.
    """

    def __init__(self, plane, velocity):
        """
        Constructor

        Parameters:
            plane (Hyperplane): The hyperplane at time 0
            velocity (array-like): The velocity vector v
        """
        if not isinstance(plane, Hyperplane):
            err_msg = 'Gliding hyperplanes need a Hyperplane at time 0'
            raise TypeError(err_msg)
        velocity = numpy.array(velocity, dtype=float).reshape(-1)
        if velocity.size != plane.dim:
            err_msg = 'Velocity of dimension {0} for a hyperplane of dimension {1}'.format(
                velocity.size, plane.dim)
            raise DimensionMismatchError(err_msg)
        velocity.setflags(write=False)
        self.plane = plane
        self.velocity = velocity

    @property
    def dim(self):
        return self.plane.dim

    @property
    def normal_speed(self):
        return float(numpy.dot(self.velocity, self.plane.normal))

    def offset_at(self, t):
        return self.plane.offset + t * self.normal_speed

    def __repr__(self):
        return 'GlidingHyperplane({0!r}, velocity={1})'.format(
            self.plane, list(self.velocity))


#==============================================================================
# GlidingArrangement
#==============================================================================
class GlidingArrangement(object):

    """
    An ordered family of gliding hyperplanes of a common dimension

    Members need not be distinct.  The labels name each member by its
    index in the arrangement the family was traced from.
    """

    def __init__(self, members, dim=None, labels=None):
        members = list(members)
        dims = set(m.dim for m in members)
        if dim is None:
            if len(dims) != 1:
                err_msg = 'Cannot infer the dimension of the arrangement'
                raise DimensionMismatchError(err_msg)
            dim = dims.pop()
        elif len(dims - set([dim])) > 0:
            err_msg = 'Members of dimension {0} in a {1}-arrangement'.format(
                sorted(dims), dim)
            raise DimensionMismatchError(err_msg)
        self.dim = dim
        self.members = members
        self.labels = tuple(range(len(members)) if labels is None else labels)
        self.normals = numpy.array([m.plane.normal for m in members]).reshape(-1, dim)
        self.offsets = numpy.array([m.plane.offset for m in members])
        self.speeds = numpy.array([m.normal_speed for m in members])

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return 'GlidingArrangement(dim={0}, members={1})'.format(self.dim, len(self))


#==============================================================================
# CellIndex
#==============================================================================
class CellIndex(object):

    """
    The sign vector selecting one cell of an arrangement
    """

    def __init__(self, signs):
        signs = tuple(int(s) for s in signs)
        for s in signs:
            if s not in (1, -1):
                err_msg = 'Cell signs must be +1 or -1, not {0}'.format(s)
                raise ValueError(err_msg)
        self.signs = signs

    def __len__(self):
        return len(self.signs)

    def __getitem__(self, index):
        return self.signs[index]

    def __repr__(self):
        return 'CellIndex({0})'.format(self.signs)


def _check_cell(arrangement, cell):
    if len(cell) != len(arrangement):
        err_msg = 'Cell index of length {0} for {1} members'.format(
            len(cell), len(arrangement))
        raise DimensionMismatchError(err_msg)


def cell_polytope(arrangement, cell, t, specifier=None):
    """
    The cell C(t) as a certified Polytope
    """
    planes = [Hyperplane(s * n, s * (b + t * v), specifier=specifier)
              for s, n, b, v in zip(cell.signs, arrangement.normals,
                                    arrangement.offsets, arrangement.speeds)]
    return remove_redundant(planes, specifier=specifier)


def _cell_inradius(arrangement, cell, t, specifier=None):
    signs = numpy.array(cell.signs, dtype=float)
    result = _chebyshev_lp(signs[:, None] * arrangement.normals,
                           signs * (arrangement.offsets + t * arrangement.speeds),
                           specifier=specifier)
    if result.status == 'unbounded':
        return numpy.inf
    if not result.optimal:
        return -numpy.inf
    return result.optimum


#==============================================================================
# VolumeFunctionResult
#==============================================================================
class VolumeFunctionResult(object):

    """
    The volume function W of a cell, its support and its claimed class
    """

    def __init__(self, W, support, claimed_class):
        self.W = W
        self.support = support
        self.claimed_class = claimed_class

    def __repr__(self):
        return 'VolumeFunctionResult(support={0}, claimed_class={1})'.format(
            self.support, self.claimed_class)


#==============================================================================
# adapted_arrangement
#==============================================================================
def adapted_arrangement(polytope):
    """
    The gliding arrangement adapted to a polytope

    Every facet hyperplane moves with velocity equal to its inner unit
    normal, and the cell of interest has all signs +1.

    Parameters:
        polytope (Polytope): The polytope P

    Returns:
        tuple: (GlidingArrangement, CellIndex)
    """
    if not isinstance(polytope, Polytope):
        err_msg = 'Adapted arrangements are built from Polytope objects'
        raise TypeError(err_msg)
    members = [GlidingHyperplane(h, h.normal) for h in polytope.halfspaces]
    return (GlidingArrangement(members, dim=polytope.dim),
            CellIndex([1] * len(members)))


#==============================================================================
# trace_hyperplane
#==============================================================================
def trace_hyperplane(mover, host, frame, origin_path, specifier=None):
    """
    The trace of a gliding hyperplane on a gliding host hyperplane

    The trace lives in the (d-1)-dimensional moving frame of the host: a
    frame point y stands for origin_path(t) + frame.y.  Its normal is the
    normalized projection of the mover's normal, and its velocity is
    <v - v_0, N> pr(N) / |pr(N)|^2.

    Parameters:
        mover (GlidingHyperplane): The gliding hyperplane to trace
        host (GlidingHyperplane): The host gliding hyperplane
        frame (array-like): A (d, d-1) orthonormal basis of the complement
            of the host normal
        origin_path (callable): t -> origin(t), an affine path on host(t)
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        GlidingHyperplane: The trace, in dimension d-1
    """
    spec = get_specifier(specifier)
    frame = numpy.asarray(frame, dtype=float)
    origin = numpy.asarray(origin_path(0.0), dtype=float)
    host_velocity = numpy.asarray(origin_path(1.0), dtype=float) - origin

    # The origin path must ride on the host
    scale = max(1.0, numpy.abs(origin).max())
    if abs(numpy.dot(origin, host.plane.normal) - host.plane.offset) > spec.feas_tol * scale:
        err_msg = 'Origin path does not start on the host hyperplane'
        raise ValueError(err_msg)
    if abs(numpy.dot(host_velocity, host.plane.normal) - host.normal_speed) > spec.feas_tol * scale:
        err_msg = 'Origin path does not follow the host hyperplane'
        raise ValueError(err_msg)

    normal = mover.plane.normal
    proj = numpy.dot(frame.T, normal)
    nrm = numpy.linalg.norm(proj)
    if nrm <= spec.rank_tol:
        err_msg = 'Mover and host hyperplanes are parallel'
        raise ParallelPlanesError(err_msg)

    offset = (mover.plane.offset - numpy.dot(normal, origin)) / nrm
    speed = numpy.dot(mover.velocity - host_velocity, normal)
    plane = Hyperplane(proj / nrm, offset, specifier=spec)
    return GlidingHyperplane(plane, speed * proj / nrm ** 2)


#==============================================================================
# trace_arrangement
#==============================================================================
def trace_arrangement(arrangement, host_index, cell=None, specifier=None):
    """
    The traces of all non-parallel members on one host member

    The host frame is complement_frame(N_host) with origin offset*N_host
    moving with the host velocity.

    Parameters:
        arrangement (GlidingArrangement): The arrangement (d >= 2)
        host_index (int): Index of the host member
        cell (CellIndex): Cell of the arrangement (all +1 if None)
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        tuple: (GlidingArrangement in d-1, induced CellIndex, list of the
            indices of the excluded parallel members)
    """
    spec = get_specifier(specifier)
    if arrangement.dim < 2:
        err_msg = 'Traces need an arrangement of dimension at least 2'
        raise ValueError(err_msg)
    if cell is None:
        cell = CellIndex([1] * len(arrangement))
    _check_cell(arrangement, cell)

    host = arrangement.members[host_index]
    frame = complement_frame(host.plane.normal)
    origin = host.plane.offset * host.plane.normal
    path = lambda t: origin + t * host.velocity

    members = []
    signs = []
    labels = []
    parallel = []
    for l, mover in enumerate(arrangement.members):
        if l == host_index:
            continue
        try:
            members.append(trace_hyperplane(mover, host, frame, path, specifier=spec))
        except ParallelPlanesError:
            parallel.append(l)
            continue
        signs.append(cell[l])
        labels.append(arrangement.labels[l])
    traced = GlidingArrangement(members, dim=arrangement.dim - 1, labels=labels)
    return traced, CellIndex(signs), parallel


def _parallel_window(arrangement, cell, host_index, parallel, window, tol):
    """
    Restrict a time window to where the parallel members hold on the host

    A member coinciding with the host at all times and bounding the cell
    from the same side is the same facet; only the lowest index of such a
    group hosts it, so the window is None for the others.
    """
    lo, hi = window
    host = arrangement.members[host_index]
    for l in parallel:
        mover = arrangement.members[l]
        sign = numpy.sign(numpy.dot(mover.plane.normal, host.plane.normal))
        alpha = cell[l] * (sign * host.plane.offset - mover.plane.offset)
        beta = cell[l] * (sign * host.normal_speed - mover.normal_speed)
        if abs(beta) <= tol:
            if alpha < -tol:
                return None
            if alpha <= tol and l < host_index and cell[l] * sign == cell[host_index]:
                return None
            continue
        if beta > 0:
            lo = max(lo, -alpha / beta)
        else:
            hi = min(hi, -alpha / beta)
    if hi < lo:
        return None
    return lo, hi


#==============================================================================
# support_interval
#==============================================================================
def support_interval(arrangement, cell, window, specifier=None):
    """
    The times in a window at which the cell is non-empty

    Two linear programs over (Q, t) minimize and maximize t subject to the
    cell's constraints.

    Parameters:
        arrangement (GlidingArrangement): The arrangement
        cell (CellIndex): The cell
        window (tuple): Finite time window (t_lo, t_hi)
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        tuple: (t_min, t_max), or None when the cell is empty on the window
    """
    _check_cell(arrangement, cell)
    lo, hi = float(window[0]), float(window[1])
    if not (numpy.isfinite(lo) and numpy.isfinite(hi)):
        err_msg = 'Support intervals need a finite window'
        raise ValueError(err_msg)
    if hi < lo:
        return None
    dim = arrangement.dim
    constraints = []
    for s, n, b, v in zip(cell.signs, arrangement.normals, arrangement.offsets,
                          arrangement.speeds):
        constraints.append((numpy.append(s * n, -s * v), s * b, '>='))
    tvec = numpy.zeros(dim + 1)
    tvec[-1] = 1.0
    constraints.append((tvec, lo, '>='))
    constraints.append((tvec, hi, '<='))

    first = solve_lp(tvec, constraints, maximize=False, specifier=specifier)
    if not first.optimal:
        return None
    last = solve_lp(tvec, constraints, maximize=True, specifier=specifier)
    if not last.optimal:
        return None
    return max(lo, first.optimum), min(hi, last.optimum)


#==============================================================================
# base_case_1d
#==============================================================================
def base_case_1d(arrangement, cell, window, specifier=None):
    """
    The length function of a cell of a one-dimensional gliding arrangement

    Each member bounds x from below or above by an affine function of t, so
    W(t) = max(0, min_k u_k(t) - max_i l_i(t)), with breakpoints where two
    bounds cross.

    Parameters:
        arrangement (GlidingArrangement): A 1-dimensional arrangement
        cell (CellIndex): The cell
        window (tuple): Finite time window (t_lo, t_hi)
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        VolumeFunctionResult: The piecewise linear W on the window, with the
            class claimed from the absolute rank of the normals
    """
    spec = get_specifier(specifier)
    if arrangement.dim != 1:
        err_msg = 'Base case needs a 1-dimensional arrangement, not {0}'.format(
            arrangement.dim)
        raise DimensionMismatchError(err_msg)
    _check_cell(arrangement, cell)
    lo, hi = float(window[0]), float(window[1])

    lower = []
    upper = []
    for s, n, b, v in zip(cell.signs, arrangement.normals[:, 0],
                          arrangement.offsets, arrangement.speeds):
        # s n x >= s (b + v t)
        direction = s * n
        line = (s * b / direction, s * v / direction)
        if direction > 0:
            lower.append(line)
        else:
            upper.append(line)
    if len(lower) == 0 or len(upper) == 0:
        err_msg = 'Cell of the 1-dimensional arrangement is unbounded'
        raise UnboundedCellError(err_msg)

    claimed = absolute_rank(arrangement.normals, specifier=spec) - 1
    tol = spec.cont_tol * max(1.0, hi - lo)
    if hi - lo <= tol:
        return VolumeFunctionResult(PiecewisePoly.zero_on(lo, lo, degree=1), None, claimed)

    # Pairwise crossings of all bounds inside the window
    lines = lower + upper
    candidates = []
    for i in range(len(lines)):
        for k in range(i + 1, len(lines)):
            (a0, a1), (b0, b1) = lines[i], lines[k]
            if abs(a1 - b1) > spec.coeff_tol:
                t = (b0 - a0) / (a1 - b1)
                if lo < t < hi:
                    candidates.append(t)
    breakpoints = merge_breakpoints_on(candidates, lo, hi, tol)

    pieces = []
    support = []
    for a, b in zip(breakpoints[:-1], breakpoints[1:]):
        mid = 0.5 * (a + b)
        up = min(upper, key=lambda line: line[0] + line[1] * mid)
        low = max(lower, key=lambda line: line[0] + line[1] * mid)
        width = (up[0] - low[0]) + (up[1] - low[1]) * mid
        if width > 0:
            pieces.append(Polynomial([up[0] - low[0], up[1] - low[1]]))
            support.extend([a, b])
        else:
            pieces.append(Polynomial())
    W = PiecewisePoly(breakpoints, pieces, degree=1, specifier=spec).normalize()
    interval = (min(support), max(support)) if support else None
    return VolumeFunctionResult(W, interval, claimed)


#==============================================================================
# create_engine factory function
#==============================================================================
def create_engine(specifier=None, serial=True, verbosity=0, simplecomm=None):
    """
    Factory function for SteinerEngine class objects.  Defined for
    convenience.

    Parameters:
        specifier (Specifier): Tolerances to use (default if None)
        serial (bool): True or False, indicating whether the engine should
            create a serial (True) or parallel (False) communicator
        verbosity (int): Level of printed output (stdout)
        simplecomm (SimpleComm): A SimpleComm object to handle the parallel
            communication, if necessary

    Returns:
        SteinerEngine: An engine ready to compute volume functions
    """
    return SteinerEngine(specifier=specifier, serial=serial, verbosity=verbosity,
                         simplecomm=simplecomm)


#==============================================================================
# SteinerEngine
#==============================================================================
class SteinerEngine(object):

    """
    Recursive volume-function engine for cells of gliding arrangements

    The facet volume functions reached through different orders of traces
    are the same face, so they are memoized by the set of member labels
    along the host chain.
    """

    def __init__(self, specifier=None, serial=True, verbosity=0, simplecomm=None):
        """
        Constructor

        Parameters:
            specifier (Specifier): Tolerances to use (default if None)
            serial (bool): True or False, indicating whether the engine
                should create a serial (True) or parallel (False)
                communicator when none is given
            verbosity (int): Level of printed output (stdout).  A value of 0
                means no output, and a higher value means more output.
            simplecomm (SimpleComm): A SimpleComm object to handle the
                parallel communication, if necessary
        """

        # Type checking
        if type(serial) is not bool:
            err_msg = "Serial indicator must be True or False."
            raise TypeError(err_msg)
        if type(verbosity) is not int:
            err_msg = "Verbosity level must be an integer."
            raise TypeError(err_msg)
        if simplecomm is not None:
            if not isinstance(simplecomm, SimpleComm):
                err_msg = "Simple communicator object is not a SimpleComm"
                raise TypeError(err_msg)

        self._spec = get_specifier(specifier)
        self._spec.validate()

        # Internal timer data
        self._timer = TimeKeeper()

        # Reference to the simple communicator
        if simplecomm is None:
            simplecomm = create_comm(serial=serial)
        self._simplecomm = simplecomm

        # Contruct the print header
        header = ''.join(['[', str(self._simplecomm.get_rank()),
                          '/', str(self._simplecomm.get_size()), '] '])

        # Reference to the verbose printer tool
        self._vprint = VPrinter(header=header, verbosity=verbosity)

        # Recursion counters and memo table
        self._counts = {'Cells Visited': 0, 'Memo Hits': 0,
                        'Empty Cells': 0, 'Direct Anchors': 0}
        self._memo = {}

    @property
    def specifier(self):
        return self._spec

    def cell_volume_function(self, arrangement, cell, window):
        """
        The volume function of a bounded cell of a gliding arrangement

        Parameters:
            arrangement (GlidingArrangement): The arrangement
            cell (CellIndex): The (bounded) cell
            window (tuple): Finite time window (t_lo, t_hi)

        Returns:
            VolumeFunctionResult: W on the window, zero outside the support,
                with the class claimed from the absolute rank of the normals
        """
        _check_cell(arrangement, cell)
        lo, hi = float(window[0]), float(window[1])
        self._timer.start('Complete Volume Function')
        if self._simplecomm.is_manager():
            self._vprint('Computing volume function of a {0}-cell with {1} '
                         'members on [{2}, {3}]...'.format(arrangement.dim,
                                                           len(arrangement), lo, hi),
                         verbosity=0)

        try:
            support = self._support(arrangement, cell, (lo, hi))
            if support is not None:
                self._check_bounded(arrangement, cell, 0.5 * (support[0] + support[1]))

            self._memo = {}
            W = self._cell(arrangement, cell, (lo, hi), frozenset(), support=support)
            rank = absolute_rank(arrangement.normals, specifier=self._spec)
        except (numpy.linalg.LinAlgError, ArithmeticError) as err:
            err_msg = 'Volume function computation failed: {0}: {1}'.format(
                type(err).__name__, err)
            raise NumericalFailureError(err_msg)
        finally:
            self._timer.stop('Complete Volume Function')
        if self._simplecomm.is_manager():
            self._vprint('...Volume function computed with {0} phases.'.format(
                W.phases()), verbosity=0)
        return VolumeFunctionResult(W, support, rank - 1)

    #===== RECURSION =====

    def _support(self, arrangement, cell, window):
        self._timer.start('Support Intervals')
        support = support_interval(arrangement, cell, window, specifier=self._spec)
        self._timer.stop('Support Intervals')
        if support is not None:
            tol = self._spec.cont_tol * max(1.0, window[1] - window[0])
            if support[1] - support[0] <= tol:
                support = None
        return support

    def _check_bounded(self, arrangement, cell, t):
        if arrangement.dim == 1:
            return
        radius = _cell_inradius(arrangement, cell, t, specifier=self._spec)
        if numpy.isinf(radius) and radius > 0:
            err_msg = 'Cell of the arrangement is unbounded'
            raise UnboundedCellError(err_msg)
        signs = numpy.array(cell.signs, dtype=float)
        constraints = [(s * n, s * (b + t * v), '>=')
                       for s, n, b, v in zip(signs, arrangement.normals,
                                             arrangement.offsets, arrangement.speeds)]
        for k in range(arrangement.dim):
            direction = numpy.zeros(arrangement.dim)
            direction[k] = 1.0
            for maximize in (True, False):
                result = solve_lp(direction, constraints, maximize=maximize,
                                  specifier=self._spec)
                if result.status == 'unbounded':
                    err_msg = 'Cell of the arrangement is unbounded along axis {0}'.format(k)
                    raise UnboundedCellError(err_msg)

    def _cell(self, arrangement, cell, window, chain, support=False):
        lo, hi = window
        if chain in self._memo:
            self._counts['Memo Hits'] += 1
            return self._memo[chain].extended_by_zero(lo, hi)
        self._counts['Cells Visited'] += 1

        if support is False:
            support = self._support(arrangement, cell, window)
        if support is None:
            self._counts['Empty Cells'] += 1
            W = PiecewisePoly.zero_on(lo, hi, degree=arrangement.dim)
            self._memo[chain] = W
            return W

        self._vprint('Cell {0} of dimension {1}: support [{2!r}, {3!r}]'.format(
            sorted(chain), arrangement.dim, support[0], support[1]),
            header=True, verbosity=2)

        if arrangement.dim == 1:
            self._timer.start('Base Cases')
            W = base_case_1d(arrangement, cell, support, specifier=self._spec).W
            self._timer.stop('Base Cases')
        else:
            W = self._integrate_facets(arrangement, cell, support, chain)

        W = PiecewisePoly(W.breakpoints, W.pieces, degree=arrangement.dim,
                          specifier=self._spec).extended_by_zero(lo, hi).normalize()
        self._memo[chain] = W
        return W

    def _integrate_facets(self, arrangement, cell, support, chain):
        """
        W' = -sum_j <v_j, e_j N_j> W_j on the support, then anchored
        """
        s_lo, s_hi = support
        tol = self._spec.cont_tol * max(1.0, s_hi - s_lo)
        terms = []
        for j in range(len(arrangement)):
            self._timer.start('Trace Arrangements')
            traced, traced_cell, parallel = trace_arrangement(
                arrangement, j, cell, specifier=self._spec)
            window = _parallel_window(arrangement, cell, j, parallel, support, tol)
            self._timer.stop('Trace Arrangements')
            if window is None:
                continue
            key = chain | frozenset([arrangement.labels[j]])
            Wj = self._cell(traced, traced_cell, window, key)
            speed = cell[j] * arrangement.members[j].normal_speed
            terms.append((-speed, Wj))

        derivative = linear_combination(terms, s_lo, s_hi, specifier=self._spec)
        return self._anchor(derivative, arrangement, cell, support)

    def _anchor(self, derivative, arrangement, cell, support):
        s_lo, s_hi = support
        scale = max(1.0, s_hi - s_lo)
        tol = self._spec.feas_tol * scale

        self._timer.start('Anchor Volumes')
        try:
            if _cell_inradius(arrangement, cell, s_hi, specifier=self._spec) <= tol:
                return derivative.antiderivative_anchored(s_hi, 0.0)
            if _cell_inradius(arrangement, cell, s_lo, specifier=self._spec) <= tol:
                return derivative.antiderivative_anchored(s_lo, 0.0)

            # Direct volume at the midpoint, nudged off any breakpoint
            mid_r = 0.5 * (s_lo + s_hi)
            for b in derivative.breakpoints:
                if abs(b - mid_r) <= self._spec.cont_tol * scale:
                    mid_r += 10 * self._spec.cont_tol * scale
            self._counts['Direct Anchors'] += 1
            volume = polytope_volume(cell_polytope(arrangement, cell, mid_r,
                                                   specifier=self._spec),
                                     specifier=self._spec)
            return derivative.antiderivative_anchored(mid_r, volume)
        finally:
            self._timer.stop('Anchor Volumes')

    #===== DIAGNOSTICS =====

    def print_diagnostics(self):
        """
        Print out timing and recursion counters collected up to this point
        """

        # Get all totals and maxima
        my_times = self._timer.get_all_times()
        max_times = self._simplecomm.allreduce(my_times, op='max')
        total_counts = self._simplecomm.allreduce(dict(self._counts), op='sum')

        # Synchronize
        self._simplecomm.sync()

        # Print timing maxima
        o = self._timer.get_names()
        time_table_str = _pprint_dictionary('TIMING DATA', max_times, order=o)
        if self._simplecomm.is_manager():
            self._vprint(time_table_str, verbosity=-1)

        # Print recursion counters
        count_str = _pprint_dictionary('RECURSION COUNTS', total_counts,
                                       order=['Cells Visited', 'Memo Hits',
                                              'Empty Cells', 'Direct Anchors'])
        if self._simplecomm.is_manager():
            self._vprint(count_str, verbosity=-1)


#==============================================================================
# cell_volume_function
#==============================================================================
def cell_volume_function(arrangement, cell, window, specifier=None, engine=None):
    """
    The volume function of a bounded cell of a gliding arrangement

    Parameters:
        arrangement (GlidingArrangement): The arrangement
        cell (CellIndex): The (bounded) cell
        window (tuple): Finite time window (t_lo, t_hi)
        specifier (Specifier): Tolerances to use (default if None)
        engine (SteinerEngine): Engine to run on (a serial one if None)

    Returns:
        VolumeFunctionResult: The volume function, support and claimed class
    """
    if engine is None:
        engine = SteinerEngine(specifier=specifier)
    return engine.cell_volume_function(arrangement, cell, window)


#==============================================================================
# InnerVolumeFunction
#==============================================================================
class InnerVolumeFunction(object):

    """
    The inner-neighborhood volume function V_P of a polytope and its dual

    V and W = vol(P) - V are piecewise polynomials on [0, inf), constant
    from the inradius g on.
    """

    def __init__(self, V, W, g, volume, class_bound):
        self.V = V
        self.W = W
        self.g = g
        self.volume = volume
        self.class_bound = class_bound

    @property
    def measured_class(self):
        return self.V.smoothness_class()

    def to_dict(self):
        """
        The result JSON dictionary
        """
        measured = self.measured_class
        return {'g': float(self.g),
                'volume': float(self.volume),
                'class_bound': int(self.class_bound),
                'measured_class': 'infinity' if numpy.isinf(measured) else int(measured),
                'V': self.V.to_dict(),
                'W': self.W.to_dict()}


#==============================================================================
# inner_volume_function
#==============================================================================
def inner_volume_function(polytope, specifier=None, engine=None):
    """
    The inner-neighborhood volume function V_P(r) = vol(P) - vol(P(r))

    Parameters:
        polytope (Polytope): The polytope P
        specifier (Specifier): Tolerances to use (default if None)
        engine (SteinerEngine): Engine to run on (a serial one if None)

    Returns:
        InnerVolumeFunction: V, W, the inradius g, vol(P) and the class
            bound (absolute rank of the facet normals minus one)
    """
    spec = get_specifier(specifier)
    if engine is None:
        engine = SteinerEngine(specifier=spec)

    arrangement, cell = adapted_arrangement(polytope)
    g = inradius(polytope, specifier=spec).g
    window = (0.0, g * (1.0 + spec.window_margin))
    result = engine.cell_volume_function(arrangement, cell, window)

    # The cell collapses exactly at the inradius
    if result.support is None or abs(result.support[1] - g) > spec.lp_tol * max(1.0, g):
        err_msg = 'Engine support {0} disagrees with the inradius {1!r}'.format(
            result.support, g)
        raise NumericalFailureError(err_msg)

    volume = polytope_volume(polytope, specifier=spec)
    tol = spec.cont_tol * max(1.0, g)
    breakpoints = [b for b in result.W.breakpoints if b < g - tol] + [g]
    w_pieces = [result.W.polynomial_at(0.5 * (a + b))
                for a, b in zip(breakpoints[:-1], breakpoints[1:])]
    v_pieces = [Polynomial([volume]) - p for p in w_pieces]
    d = polytope.dim
    W = PiecewisePoly(breakpoints, w_pieces, right_tail=Polynomial(),
                      degree=d, specifier=spec).normalize()
    V = PiecewisePoly(breakpoints, v_pieces, right_tail=Polynomial([volume]),
                      degree=d, specifier=spec).normalize()
    return InnerVolumeFunction(V, W, g, volume, result.claimed_class)


#==============================================================================
# kappas
#==============================================================================
def kappas(V, degree=None):
    """
    The coefficients kappa_i of the first phase of V

    The first phase reads V(r) = sum_{i=0}^{d-1} kappa_i r^{d-i}.

    Parameters:
        V (PiecewisePoly): An inner volume function on [0, inf)
        degree (int): The dimension d (V's declared degree if None)

    Returns:
        list: [kappa_0, ..., kappa_{d-1}]
    """
    d = V.degree if degree is None else degree
    first = V.segments()[0].padded(d)
    return [first[d - i] for i in range(d)]
