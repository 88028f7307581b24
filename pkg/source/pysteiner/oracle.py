"""
Independent estimators of the inner-neighborhood volume

Both estimators use the distance to the boundary of a convex polytope,
D(x) = min_j (<N_j, x> - offset_j), which is exact for points inside a
convex body and negative outside.  A point lies in the inner
r-neighborhood when 0 <= D(x) < r.

The Monte-Carlo estimator samples the vertex bounding box in fixed-size
blocks; every block draws from its own counter-based stream seeded by
(seed, block), so the estimate does not depend on how blocks are split
among ranks.  The grid estimator classifies cells conservatively and
returns guaranteed lower and upper bounds.

Copyright 2016, University Corporation for Atmospheric Research
See the LICENSE.rst file for details
"""

# Third-party imports
import numpy
from asaptools.simplecomm import create_comm, SimpleComm
from asaptools.timekeeper import TimeKeeper
from asaptools.vprinter import VPrinter
from asaptools.partition import EqualStride

# PySteiner imports
from pysteiner.specification import get_specifier
from pysteiner.geometry import enumerate_vertices
from pysteiner.steiner import _pprint_dictionary
from pysteiner.errors import MemoryBudgetError

# Samples drawn per random stream
BLOCK_SIZE = 65536


#==============================================================================
# Result records
#==============================================================================
class MCEstimate(object):

    def __init__(self, estimate, stderr, hits, samples, box_volume):
        self.estimate = estimate
        self.stderr = stderr
        self.hits = hits
        self.samples = samples
        self.box_volume = box_volume

    def __repr__(self):
        return 'MCEstimate(estimate={0!r}, stderr={1!r})'.format(self.estimate, self.stderr)


class GridBounds(object):

    def __init__(self, lower, upper):
        self.lower = lower
        self.upper = upper

    def __repr__(self):
        return 'GridBounds(lower={0!r}, upper={1!r})'.format(self.lower, self.upper)


class VerificationReport(object):

    """
    Per-radius comparison rows and the overall verdict
    """

    def __init__(self, rows, max_z, violations, z_limit=4.0):
        self.rows = rows
        self.max_z = max_z
        self.violations = violations
        self.z_limit = z_limit

    @property
    def passed(self):
        return self.max_z <= self.z_limit and self.violations == 0

    def to_dict(self):
        return {'passed': self.passed,
                'max_z': self.max_z,
                'bracket_violations': self.violations,
                'rows': self.rows}


def _bounding_box(polytope, specifier=None):
    points = enumerate_vertices(polytope, specifier=specifier).points
    return points.min(axis=0), points.max(axis=0)


def _boundary_distance(polytope, points):
    return (numpy.dot(points, polytope.normals.T) - polytope.offsets).min(axis=1)


#==============================================================================
# create_verifier factory function
#==============================================================================
def create_verifier(specifier=None, serial=True, verbosity=0, simplecomm=None):
    """
    Factory function for Verifier class objects.  Defined for convenience.

    Parameters:
        specifier (Specifier): Tolerances to use (default if None)
        serial (bool): True or False, indicating whether the Verifier
            object should run in serial (True) or parallel (False)
        verbosity (int): Level of printed output (stdout)
        simplecomm (SimpleComm): A SimpleComm object to handle the parallel
            communication, if necessary

    Returns:
        Verifier: A Verifier object ready to estimate volumes
    """
    return Verifier(specifier=specifier, serial=serial, verbosity=verbosity,
                    simplecomm=simplecomm)


#==============================================================================
# Verifier
#==============================================================================
class Verifier(object):

    """
    Runs the Monte-Carlo and grid estimators and compares them with a
    computed volume function
    """

    def __init__(self, specifier=None, serial=True, verbosity=0, simplecomm=None):

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
        self._timer = TimeKeeper()
        if simplecomm is None:
            simplecomm = create_comm(serial=serial)
        self._simplecomm = simplecomm

        header = ''.join(['[', str(self._simplecomm.get_rank()),
                          '/', str(self._simplecomm.get_size()), '] '])
        self._vprint = VPrinter(header=header, verbosity=verbosity)

    #===== MONTE CARLO =====

    def mc_inner_volume(self, polytope, r, n, seed=0):
        """
        Monte-Carlo estimate of V_P(r) = vol{x in P : D(x) < r}

        Parameters:
            polytope (Polytope): The polytope P
            r (float): Radius, r >= 0
            n (int): Number of samples, n >= 1
            seed (int): Seed of the random streams

        Returns:
            MCEstimate: Estimate, standard error and hit count
        """
        if r < 0:
            err_msg = 'Radius must be nonnegative, not {0!r}'.format(r)
            raise ValueError(err_msg)
        if n < 1:
            err_msg = 'At least one sample is needed'
            raise ValueError(err_msg)
        lo, hi = _bounding_box(polytope, specifier=self._spec)
        box_volume = float(numpy.prod(hi - lo))

        self._timer.start('Monte-Carlo Sampling')
        nblocks = (n + BLOCK_SIZE - 1) // BLOCK_SIZE
        local_blocks = self._simplecomm.partition(list(range(nblocks)),
                                                  func=EqualStride(), involved=True)
        hits = 0
        for b in local_blocks:
            size = min(BLOCK_SIZE, n - b * BLOCK_SIZE)
            stream = numpy.random.Generator(
                numpy.random.Philox(numpy.random.SeedSequence([seed, b])))
            points = lo + (hi - lo) * stream.random((size, polytope.dim))
            dist = _boundary_distance(polytope, points)
            hits += int(numpy.count_nonzero((dist >= 0) & (dist < r)))
        hits = self._simplecomm.allreduce({'hits': hits}, op='sum')['hits']
        self._timer.stop('Monte-Carlo Sampling')

        p = float(hits) / n
        return MCEstimate(box_volume * p, box_volume * numpy.sqrt(p * (1.0 - p) / n),
                          hits, n, box_volume)

    #===== GRID =====

    def grid_inner_volume(self, polytope, r, resolution=64):
        """
        Guaranteed bounds on V_P(r) from a uniform grid on the bounding box

        D is 1-Lipschitz, so a cell whose center c satisfies
        D(c) - h >= 0 and D(c) + h < r (h the half-diagonal) lies inside the
        neighborhood, and a cell with D(c) + h < 0 or D(c) - h >= r lies
        outside it.

        Parameters:
            polytope (Polytope): The polytope P
            r (float): Radius, r >= 0
            resolution (int): Cells per axis, at least 8

        Returns:
            GridBounds: lower <= V_P(r) <= upper
        """
        if resolution < 8:
            err_msg = 'Grid resolution must be at least 8, not {0}'.format(resolution)
            raise ValueError(err_msg)
        d = polytope.dim
        if resolution ** d > self._spec.grid_cell_cap:
            err_msg = '{0}^{1} grid cells exceed the cap of {2}'.format(
                resolution, d, self._spec.grid_cell_cap)
            raise MemoryBudgetError(err_msg)

        self._timer.start('Grid Classification')
        lo, hi = _bounding_box(polytope, specifier=self._spec)
        width = (hi - lo) / resolution
        half_diag = 0.5 * numpy.linalg.norm(width)
        centers = [lo[k] + (numpy.arange(resolution) + 0.5) * width[k] for k in range(d)]

        # One slab per index along the first axis
        if d > 1:
            rest = numpy.array(numpy.meshgrid(*centers[1:], indexing='ij')).reshape(d - 1, -1).T
        else:
            rest = numpy.zeros((1, 0))
        inside = 0
        touched = 0
        for x0 in centers[0]:
            slab = numpy.hstack([numpy.full((len(rest), 1), x0), rest])
            dist = _boundary_distance(polytope, slab)
            inside += int(numpy.count_nonzero((dist - half_diag >= 0) & (dist + half_diag < r)))
            outside = (dist + half_diag < 0) | (dist - half_diag >= r)
            touched += int(len(dist) - numpy.count_nonzero(outside))
        self._timer.stop('Grid Classification')

        cell = float(numpy.prod(width))
        return GridBounds(inside * cell, touched * cell)

    #===== VERIFICATION =====

    def sample_radii(self, V, samples=20):
        """
        Radii stratified over the phases of V, plus both sides of every
        breakpoint and one radius past the last breakpoint
        """
        bps = V.breakpoints
        scale = V.length_scale()
        radii = []
        intervals = list(zip(bps[:-1], bps[1:]))
        per_phase = max(1, samples // max(1, len(intervals)))
        for a, b in intervals:
            radii.extend(a + (b - a) * (numpy.arange(per_phase) + 0.5) / per_phase)
        offset = 1e-6 * scale
        for b in bps[1:]:
            radii.extend([b - offset, b + offset])
        radii.append(bps[-1] * (1.0 + self._spec.window_margin))
        return sorted(float(r) for r in radii if r >= 0)

    def verify_volume_function(self, polytope, V, samples=20, seed=0, n=10 ** 6,
                               resolution=None):
        """
        Compare V with both oracles at stratified radii

        Parameters:
            polytope (Polytope): The polytope P
            V (PiecewisePoly): The volume function to check
            samples (int): Number of stratified radii inside the phases
            seed (int): Seed of the Monte-Carlo streams
            n (int): Monte-Carlo samples per radius
            resolution (int): Grid cells per axis (from the cell cap if None)

        Returns:
            VerificationReport: Rows {r, engine, mc, stderr, grid_lo, grid_hi,
                z}; passes when every |z| <= 4 and no grid bracket is violated
        """
        d = polytope.dim
        if resolution is None:
            budget = min(self._spec.grid_cell_cap, 2 ** 18)
            resolution = max(8, int(numpy.floor(budget ** (1.0 / d) + 1e-9)))
        scale = max(1.0, V.value_scale())

        rows = []
        max_z = 0.0
        violations = 0
        for r in self.sample_radii(V, samples=samples):
            engine = V.evaluate(r)
            mc = self.mc_inner_volume(polytope, r, n, seed=seed)
            grid = self.grid_inner_volume(polytope, r, resolution=resolution)
            z = (engine - mc.estimate) / max(mc.stderr, mc.box_volume / n)
            if engine < grid.lower - 1e-9 * scale or engine > grid.upper + 1e-9 * scale:
                violations += 1
            max_z = max(max_z, abs(z))
            rows.append({'r': r, 'engine': engine, 'mc': mc.estimate,
                         'stderr': mc.stderr, 'grid_lo': grid.lower,
                         'grid_hi': grid.upper, 'z': z})
            self._vprint('r = {0!r}: engine {1!r}, mc {2!r} +- {3!r}, z = {4:.3f}'.format(
                r, engine, mc.estimate, mc.stderr, z), header=True, verbosity=1)

        report = VerificationReport(rows, max_z, violations)
        if self._simplecomm.is_manager():
            self._vprint('Verification {0}: max |z| = {1:.3f}, {2} bracket '
                         'violations'.format('passed' if report.passed else 'FAILED',
                                             max_z, violations), verbosity=0)
        return report

    def print_diagnostics(self):
        """
        Print the maximum oracle timings over all ranks
        """
        max_times = self._simplecomm.allreduce(self._timer.get_all_times(), op='max')
        self._simplecomm.sync()
        time_table_str = _pprint_dictionary('ORACLE TIMING DATA', max_times,
                                            order=self._timer.get_names())
        if self._simplecomm.is_manager():
            self._vprint(time_table_str, verbosity=-1)


#==============================================================================
# Module-level conveniences
#==============================================================================
def mc_inner_volume(polytope, r, n, seed=0, specifier=None):
    return create_verifier(specifier=specifier).mc_inner_volume(polytope, r, n, seed=seed)


def grid_inner_volume(polytope, r, resolution=64, specifier=None):
    return create_verifier(specifier=specifier).grid_inner_volume(polytope, r,
                                                                  resolution=resolution)


def verify_volume_function(polytope, V, samples=20, seed=0, n=10 ** 6,
                           resolution=None, specifier=None):
    verifier = create_verifier(specifier=specifier)
    return verifier.verify_volume_function(polytope, V, samples=samples, seed=seed,
                                           n=n, resolution=resolution)
