"""
The module containing the polytope geometry kernel

This module holds the H-representation types (Hyperplane, Polytope and
VertexSet) and the operations every other PySteiner module is built on:
halfspace normalization, signed distances, a dense two-phase simplex solver
with Bland's rule, redundancy removal, brute-force vertex enumeration,
recursive facet-cone volumes, the inradius and the absolute rank of a
family of normal vectors.

Vertex enumeration tries every d-subset of the facets, so its cost grows as
C(m, d).  That is fine at desk scale (m up to a few dozen, d up to 4).

Copyright 2016, University Corporation for Atmospheric Research
See the LICENSE.rst file for details
"""

# Built-in imports
import json
from itertools import combinations

# Third-party imports
import numpy

# PySteiner imports
from pysteiner.specification import get_specifier
from pysteiner.errors import (ZeroNormalError, DimensionMismatchError,
                              UnboundedInputError, LowerDimensionalError,
                              EmptyPolytopeError, NumericalFailureError)


#==============================================================================
# Hyperplane
#==============================================================================
class Hyperplane(object):

    """
    An oriented hyperplane with unit inner normal

    The associated halfspace is {x : <normal, x> - offset >= 0}.
    """

    __slots__ = ('normal', 'offset')

    def __init__(self, normal, offset, specifier=None):
        """
        Constructor

        Parameters:
            normal (array-like): Unit inner normal vector
            offset (float): Offset of the hyperplane along the normal
            specifier (Specifier): Tolerances to use (default if None)
        """
        spec = get_specifier(specifier)
        normal = numpy.array(normal, dtype=float).reshape(-1)
        if normal.size < 1:
            err_msg = 'Hyperplane normal must have at least one component'
            raise DimensionMismatchError(err_msg)
        if abs(numpy.linalg.norm(normal) - 1.0) > spec.unit_tol:
            err_msg = 'Hyperplane normal {0} is not a unit vector'.format(normal)
            raise ValueError(err_msg)
        normal.setflags(write=False)
        self.normal = normal
        self.offset = float(offset)

    @property
    def dim(self):
        return self.normal.size

    def __repr__(self):
        return 'Hyperplane(normal={0}, offset={1!r})'.format(
            list(self.normal), self.offset)


#==============================================================================
# normalize_halfspace
#==============================================================================
def normalize_halfspace(a, b, sense, specifier=None):
    """
    Build the Hyperplane whose halfspace is {x : <a,x> <= b} or {<a,x> >= b}

    Parameters:
        a (array-like): Constraint row
        b (float): Constraint right-hand side
        sense (str): Either '<=' or '>='
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        Hyperplane: The same halfspace with unit inner normal
    """
    spec = get_specifier(specifier)
    a = numpy.array(a, dtype=float).reshape(-1)
    nrm = numpy.linalg.norm(a)
    if nrm < spec.unit_tol:
        err_msg = 'Halfspace normal {0} is (numerically) zero'.format(list(a))
        raise ZeroNormalError(err_msg)
    if sense == '<=':
        sign = -1.0
    elif sense == '>=':
        sign = 1.0
    else:
        err_msg = "Halfspace sense {0!r} not recognized".format(sense)
        raise ValueError(err_msg)
    normal = sign * a / nrm
    # Renormalize once more so that |normal| = 1 to the last bit
    normal = normal / numpy.linalg.norm(normal)
    return Hyperplane(normal, sign * float(b) / nrm, specifier=spec)


#==============================================================================
# signed_distance
#==============================================================================
def signed_distance(point, plane):
    """
    Signed distance of a point from a hyperplane, positive on the inner side

    Parameters:
        point (array-like): The point Q
        plane (Hyperplane): The hyperplane H

    Returns:
        float: <Q, normal> - offset
    """
    point = numpy.asarray(point, dtype=float).reshape(-1)
    if point.size != plane.dim:
        err_msg = 'Point of dimension {0} and hyperplane of dimension {1}'.format(
            point.size, plane.dim)
        raise DimensionMismatchError(err_msg)
    return float(numpy.dot(point, plane.normal) - plane.offset)


#==============================================================================
# LPResult
#==============================================================================
class LPResult(object):

    """
    Outcome of a linear program

    The status is one of 'optimal', 'unbounded' or 'infeasible'.  The
    optimum and witness are only set when the status is 'optimal'.
    """

    def __init__(self, status, optimum=None, witness=None, pivots=0):
        self.status = status
        self.optimum = optimum
        self.witness = witness
        self.pivots = pivots

    @property
    def optimal(self):
        return self.status == 'optimal'

    def __repr__(self):
        return 'LPResult(status={0!r}, optimum={1!r})'.format(self.status,
                                                               self.optimum)


class _PivotBudgetExceeded(Exception):
    pass


def _pivot(tableau, row, col):
    tableau[row] /= tableau[row, col]
    factors = tableau[:, col].copy()
    factors[row] = 0.0
    tableau -= numpy.outer(factors, tableau[row])


def _run_simplex(tableau, basis, ncols, max_iter, piv_tol):
    """
    Pivot the tableau in place until optimal or unbounded

    The last row holds the reduced costs (entering when negative) and the
    last column the right-hand side.  Bland's rule picks the lowest entering
    index and, among ratio ties, the lowest leaving basis index.
    """
    nrows = tableau.shape[0] - 1
    for count in range(max_iter):
        costs = tableau[-1, :ncols]
        entering = numpy.nonzero(costs < -piv_tol)[0]
        if entering.size == 0:
            return 'optimal', count
        col = entering[0]
        column = tableau[:nrows, col]
        rows = numpy.nonzero(column > piv_tol)[0]
        if rows.size == 0:
            return 'unbounded', count
        ratios = tableau[rows, -1] / column[rows]
        rmin = ratios.min()
        ties = rows[ratios <= rmin + piv_tol * (1.0 + abs(rmin))]
        row = ties[numpy.argmin(basis[ties])]
        _pivot(tableau, row, col)
        basis[row] = col
    raise _PivotBudgetExceeded()


def _solve_standard(cost, rows, rhs, nslack_cols, max_iter, piv_tol, feas_tol):
    """
    Maximize cost.y subject to rows.y = rhs, y >= 0 (rhs >= 0) in two phases
    """
    nrows, ncols = rows.shape

    # Phase 1: one artificial per row, maximize -sum(artificials)
    tableau = numpy.zeros((nrows + 1, ncols + nrows + 1))
    tableau[:nrows, :ncols] = rows
    tableau[:nrows, ncols:ncols + nrows] = numpy.eye(nrows)
    tableau[:nrows, -1] = rhs
    tableau[-1, ncols:ncols + nrows] = 1.0
    tableau[-1] -= tableau[:nrows].sum(axis=0)
    basis = numpy.arange(ncols, ncols + nrows)

    status, pivots = _run_simplex(tableau, basis, ncols + nrows, max_iter, piv_tol)
    scale = max(1.0, numpy.abs(rhs).max() if nrows > 0 else 1.0)
    if tableau[-1, -1] < -feas_tol * scale:
        return 'infeasible', None, pivots

    # Drive the remaining artificials out of the basis
    keep = []
    for i in range(nrows):
        if basis[i] >= ncols:
            cols = numpy.nonzero(numpy.abs(tableau[i, :ncols]) > piv_tol)[0]
            if cols.size == 0:
                continue
            _pivot(tableau, i, cols[0])
            basis[i] = cols[0]
        keep.append(i)
    tableau = numpy.vstack([tableau[keep][:, list(range(ncols)) + [-1]],
                            numpy.zeros((1, ncols + 1))])
    basis = basis[keep]

    # Phase 2: the true objective, made canonical for the current basis
    tableau[-1, :ncols] = -cost
    for i, col in enumerate(basis):
        tableau[-1] -= tableau[-1, col] * tableau[i]
    status, more = _run_simplex(tableau, basis, ncols, max_iter, piv_tol)
    pivots += more
    if status == 'unbounded':
        return 'unbounded', None, pivots

    solution = numpy.zeros(ncols)
    solution[basis] = tableau[:len(basis), -1]
    return 'optimal', solution, pivots


#==============================================================================
# solve_lp
#==============================================================================
def solve_lp(objective, constraints, maximize=True, specifier=None):
    """
    Solve a small dense linear program over free variables

    Parameters:
        objective (array-like): Objective vector c
        constraints (list): List of (a, b, sense) tuples with sense one of
            '<=', '>=' or '=='
        maximize (bool): Maximize c.x if True, otherwise minimize it
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        LPResult: The status, the optimum and a witness point.  The witness
            satisfies every constraint within lp_tol (times the problem
            scale).
    """
    spec = get_specifier(specifier)
    cost = numpy.array(objective, dtype=float).reshape(-1)
    nvar = cost.size

    # Normalize the rows; zero rows are checked directly
    arows = []
    brhs = []
    senses = []
    for a, b, sense in constraints:
        a = numpy.array(a, dtype=float).reshape(-1)
        if a.size != nvar:
            err_msg = 'Constraint of size {0} for {1} variables'.format(a.size, nvar)
            raise DimensionMismatchError(err_msg)
        if sense not in ('<=', '>=', '=='):
            err_msg = "Constraint sense {0!r} not recognized".format(sense)
            raise ValueError(err_msg)
        nrm = numpy.linalg.norm(a)
        if nrm == 0.0:
            if ((sense == '<=' and b < -spec.lp_tol) or
                    (sense == '>=' and b > spec.lp_tol) or
                    (sense == '==' and abs(b) > spec.lp_tol)):
                return LPResult('infeasible')
            continue
        arows.append(a / nrm)
        brhs.append(float(b) / nrm)
        senses.append(sense)

    nrows = len(arows)
    nslack = sum(1 for s in senses if s != '==')
    ncols = 2 * nvar + nslack
    rows = numpy.zeros((nrows, ncols))
    rhs = numpy.array(brhs)
    slack = 2 * nvar
    for i, (a, sense) in enumerate(zip(arows, senses)):
        rows[i, :nvar] = a
        rows[i, nvar:2 * nvar] = -a
        if sense == '<=':
            rows[i, slack] = 1.0
            slack += 1
        elif sense == '>=':
            rows[i, slack] = -1.0
            slack += 1
    flip = rhs < 0
    rows[flip] *= -1.0
    rhs[flip] *= -1.0

    sign = 1.0 if maximize else -1.0
    full_cost = numpy.zeros(ncols)
    full_cost[:nvar] = sign * cost
    full_cost[nvar:2 * nvar] = -sign * cost

    piv_tol = 1e-11
    pivots = 0
    for attempt in range(spec.lp_retries + 1):
        try:
            status, solution, count = _solve_standard(
                full_cost, rows, rhs, nslack, spec.lp_max_iter, piv_tol,
                spec.feas_tol)
        except _PivotBudgetExceeded:
            pivots += spec.lp_max_iter
            piv_tol *= 10.0
            continue
        pivots += count
        if status != 'optimal':
            return LPResult(status, pivots=pivots)

        # Certify the witness against the normalized constraints
        witness = solution[:nvar] - solution[nvar:2 * nvar]
        scale = max(1.0, numpy.abs(witness).max() if nvar > 0 else 1.0)
        worst = 0.0
        for a, b, sense in zip(arows, brhs, senses):
            value = numpy.dot(a, witness) - b
            if sense == '<=':
                worst = max(worst, value)
            elif sense == '>=':
                worst = max(worst, -value)
            else:
                worst = max(worst, abs(value))
        if worst <= spec.lp_tol * scale:
            return LPResult('optimal', float(numpy.dot(cost, witness)),
                            witness, pivots=pivots)
        piv_tol *= 10.0

    err_msg = ('Simplex pivoting failed to certify a solution after {0} '
               'attempts').format(spec.lp_retries + 1)
    raise NumericalFailureError(err_msg)


#==============================================================================
# VertexSet
#==============================================================================
class VertexSet(object):

    """
    The vertices of a polytope, with the facets active at each of them
    """

    def __init__(self, points, active):
        """
        Constructor

        Parameters:
            points (array-like): Vertex coordinates, one row per vertex
            active (list): One frozenset of active facet indices per vertex
        """
        self.points = numpy.array(points, dtype=float)
        self.active = [frozenset(a) for a in active]

    def __len__(self):
        return len(self.points)

    def incident(self, facet):
        """
        Return the indices of the vertices lying on a given facet
        """
        return [k for k, a in enumerate(self.active) if facet in a]


#==============================================================================
# Polytope
#==============================================================================
class Polytope(object):

    """
    A bounded full-dimensional convex polytope in minimal H-representation

    Polytopes are normally built by remove_redundant (or the loaders and
    shape constructors that call it), which certify boundedness,
    full-dimensionality and minimality.  The constructor itself only stores
    the halfspaces it is given.
    """

    def __init__(self, halfspaces, vertices=None):
        """
        Constructor

        Parameters:
            halfspaces (list): List of Hyperplane objects
            vertices (VertexSet): Optional precomputed vertex set
        """
        halfspaces = tuple(halfspaces)
        if len(halfspaces) == 0:
            err_msg = 'A polytope needs at least one halfspace'
            raise ValueError(err_msg)
        for plane in halfspaces:
            if not isinstance(plane, Hyperplane):
                err_msg = 'Polytope halfspaces must be Hyperplane objects'
                raise TypeError(err_msg)
        dims = set(plane.dim for plane in halfspaces)
        if len(dims) != 1:
            err_msg = 'Halfspaces of mixed dimensions {0}'.format(sorted(dims))
            raise DimensionMismatchError(err_msg)

        self.dim = dims.pop()
        self.halfspaces = halfspaces
        self.normals = numpy.array([h.normal for h in halfspaces])
        self.offsets = numpy.array([h.offset for h in halfspaces])
        self.normals.setflags(write=False)
        self.offsets.setflags(write=False)

        # Lazily computed quantities
        self._vertex_set = vertices
        self._facets = {}
        self._volume = None
        self._inball = None

        # Local frame of a face, set by facet_polytope
        self.origin = None
        self.frame = None
        self.vertex_index = None
        self.halfspace_index = None

    def __len__(self):
        return len(self.halfspaces)

    def __repr__(self):
        return 'Polytope(dim={0}, facets={1})'.format(self.dim, len(self))

    def distances(self, points):
        """
        Signed distances of points from every facet hyperplane

        Parameters:
            points (array-like): One point or an (n, d) array of points

        Returns:
            numpy.ndarray: Array of shape (n, m) (or (m,) for one point)
        """
        points = numpy.asarray(points, dtype=float)
        if points.shape[-1] != self.dim:
            err_msg = 'Points of dimension {0} for a polytope of dimension {1}'.format(
                points.shape[-1], self.dim)
            raise DimensionMismatchError(err_msg)
        return numpy.dot(points, self.normals.T) - self.offsets

    def contains(self, point, tol=0.0):
        return bool(self.distances(point).min() >= -tol)

    def constraints(self, shift=0.0):
        """
        The halfspaces as solve_lp constraints <N_j, x> >= offset_j + shift
        """
        return [(n, b + shift, '>=') for n, b in zip(self.normals, self.offsets)]


#==============================================================================
# Chebyshev ball (shared by remove_redundant and inradius)
#==============================================================================
def _chebyshev_lp(normals, offsets, specifier=None):
    dim = normals.shape[1]
    constraints = [(numpy.append(n, -1.0), b, '>=')
                   for n, b in zip(normals, offsets)]
    objective = numpy.zeros(dim + 1)
    objective[-1] = 1.0
    return solve_lp(objective, constraints, maximize=True, specifier=specifier)


#==============================================================================
# remove_redundant
#==============================================================================
def remove_redundant(halfspaces, specifier=None):
    """
    Build a certified Polytope from a list of halfspaces

    One LP per halfspace decides redundancy: a halfspace is kept when the
    minimum of its signed distance over the intersection of the others is
    negative (or unbounded).

    Parameters:
        halfspaces (list): List of Hyperplane objects
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        Polytope: The polytope with a minimal set of halfspaces
    """
    spec = get_specifier(specifier)
    halfspaces = list(halfspaces)
    if len(halfspaces) == 0:
        err_msg = 'The whole space is not bounded'
        raise UnboundedInputError(err_msg)
    dims = set(h.dim for h in halfspaces)
    if len(dims) != 1:
        err_msg = 'Halfspaces of mixed dimensions {0}'.format(sorted(dims))
        raise DimensionMismatchError(err_msg)
    dim = dims.pop()
    normals = numpy.array([h.normal for h in halfspaces])
    offsets = numpy.array([h.offset for h in halfspaces])

    # Emptiness and full-dimensionality from the Chebyshev ball
    cheb = _chebyshev_lp(normals, offsets, specifier=spec)
    if cheb.status == 'unbounded':
        err_msg = 'Halfspace intersection contains arbitrarily large balls'
        raise UnboundedInputError(err_msg)
    if not cheb.optimal or cheb.optimum < -spec.feas_tol:
        err_msg = 'Halfspace intersection is empty'
        raise EmptyPolytopeError(err_msg)
    if cheb.optimum <= spec.feas_tol:
        err_msg = 'Halfspace intersection is lower dimensional (inradius {0!r})'.format(
            cheb.optimum)
        raise LowerDimensionalError(err_msg)

    # Boundedness along every coordinate direction
    constraints = [(n, b, '>=') for n, b in zip(normals, offsets)]
    for k in range(dim):
        direction = numpy.zeros(dim)
        direction[k] = 1.0
        for maximize in (True, False):
            result = solve_lp(direction, constraints, maximize=maximize,
                              specifier=spec)
            if result.status == 'unbounded':
                err_msg = 'Halfspace intersection is unbounded along axis {0}'.format(k)
                raise UnboundedInputError(err_msg)

    # One LP per halfspace
    keep = list(range(len(halfspaces)))
    for i in range(len(halfspaces)):
        others = [constraints[k] for k in keep if k != i]
        result = solve_lp(normals[i], others, maximize=False, specifier=spec)
        if result.optimal and result.optimum >= offsets[i] - spec.feas_tol:
            keep.remove(i)

    return Polytope([halfspaces[k] for k in keep])


#==============================================================================
# enumerate_vertices
#==============================================================================
def enumerate_vertices(polytope, specifier=None):
    """
    Enumerate the vertices of a polytope from its d-subsets of facets

    Parameters:
        polytope (Polytope): The polytope
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        VertexSet: The vertices and their active facet sets
    """
    if polytope._vertex_set is not None:
        return polytope._vertex_set
    spec = get_specifier(specifier)
    normals = polytope.normals
    offsets = polytope.offsets
    dim = polytope.dim

    points = []
    active = []
    for subset in combinations(range(len(polytope)), dim):
        subset = list(subset)
        matrix = normals[subset]
        svals = numpy.linalg.svd(matrix, compute_uv=False)
        if svals[-1] <= spec.rank_tol * svals[0]:
            continue
        point = numpy.linalg.solve(matrix, offsets[subset])
        if svals[0] / svals[-1] > spec.cond_limit:
            # One step of iterative refinement, then demand a clean residual
            residual = offsets[subset] - numpy.dot(matrix, point)
            point = point + numpy.linalg.solve(matrix, residual)
            residual = offsets[subset] - numpy.dot(matrix, point)
            if numpy.abs(residual).max() > spec.feas_tol:
                err_msg = ('Ill-conditioned active set {0} (condition number '
                           '{1:.3g})').format(subset, svals[0] / svals[-1])
                raise NumericalFailureError(err_msg)

        dists = numpy.dot(normals, point) - offsets
        scale = max(1.0, numpy.abs(point).max())
        if dists.min() < -spec.feas_tol * scale:
            continue
        if any(numpy.abs(p - point).max() <= spec.vertex_tol for p in points):
            continue
        points.append(point)
        active.append(numpy.nonzero(numpy.abs(dists) <= spec.feas_tol * scale)[0])

    if len(points) == 0:
        err_msg = 'No vertices found for {0!r}'.format(polytope)
        raise NumericalFailureError(err_msg)
    polytope._vertex_set = VertexSet(numpy.array(points), active)
    return polytope._vertex_set


#==============================================================================
# complement_frame
#==============================================================================
def complement_frame(normal):
    """
    Deterministic orthonormal basis of the complement of a unit normal

    Gram-Schmidt (with a second orthogonalization pass) is run on the
    canonical basis vectors, in order, after the normal itself.

    Parameters:
        normal (array-like): Unit vector in R^d

    Returns:
        numpy.ndarray: A (d, d-1) matrix with orthonormal columns
    """
    normal = numpy.asarray(normal, dtype=float).reshape(-1)
    dim = normal.size
    basis = [normal / numpy.linalg.norm(normal)]
    for k in range(dim):
        if len(basis) == dim:
            break
        vec = numpy.zeros(dim)
        vec[k] = 1.0
        for _ in range(2):
            for u in basis:
                vec = vec - numpy.dot(vec, u) * u
        nrm = numpy.linalg.norm(vec)
        if nrm > 1e-6:
            basis.append(vec / nrm)
    return numpy.array(basis[1:]).T.reshape(dim, dim - 1)


def _affine_rank(points, tol):
    if len(points) == 0:
        return -1
    points = numpy.asarray(points)
    if len(points) == 1:
        return 0
    svals = numpy.linalg.svd(points[1:] - points[0], compute_uv=False)
    return int(numpy.sum(svals > tol))


#==============================================================================
# facet_polytope
#==============================================================================
def facet_polytope(polytope, index, specifier=None):
    """
    The facet F_j of a polytope as a polytope in its own (d-1)-frame

    The facet's halfspaces are the traces of the other facets whose common
    vertices with F_j span a ridge (affine dimension d-2).  Ambient
    coordinates of a facet point y are origin + frame.y.

    Parameters:
        polytope (Polytope): The polytope (dimension at least 2)
        index (int): Facet index j
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        Polytope: The facet, with origin, frame, vertex_index and
            halfspace_index attributes set
    """
    if index in polytope._facets:
        return polytope._facets[index]
    if polytope.dim < 2:
        err_msg = 'Facets of a {0}-polytope are points'.format(polytope.dim)
        raise ValueError(err_msg)
    spec = get_specifier(specifier)
    vset = enumerate_vertices(polytope, specifier=spec)
    normal = polytope.normals[index]
    offset = polytope.offsets[index]
    frame = complement_frame(normal)
    origin = offset * normal

    on_facet = vset.incident(index)
    planes = []
    kept = []
    for i in range(len(polytope)):
        if i == index:
            continue
        shared = [k for k in on_facet if i in vset.active[k]]
        if _affine_rank(vset.points[shared], spec.vertex_tol) != polytope.dim - 2:
            continue
        proj = numpy.dot(frame.T, polytope.normals[i])
        nrm = numpy.linalg.norm(proj)
        if nrm <= spec.rank_tol:
            continue
        shift = polytope.offsets[i] - numpy.dot(polytope.normals[i], origin)
        planes.append(Hyperplane(proj / nrm, shift / nrm, specifier=spec))
        kept.append(i)

    local = numpy.dot(vset.points[on_facet] - origin, frame)
    position = dict((i, p) for p, i in enumerate(kept))
    active = [[position[i] for i in vset.active[k] if i in position]
              for k in on_facet]
    facet = Polytope(planes, vertices=VertexSet(local, active))
    facet.origin = origin
    facet.frame = frame
    facet.vertex_index = on_facet
    facet.halfspace_index = kept
    polytope._facets[index] = facet
    return facet


#==============================================================================
# polytope_volume
#==============================================================================
def polytope_volume(polytope, specifier=None):
    """
    The d-volume of a polytope by recursive facet-cone decomposition

    vol_d(P) = (1/d) sum_j h_j vol_{d-1}(F_j), with h_j the distance of the
    vertex centroid from facet j.  In one dimension the volume is the
    length of the segment.

    Parameters:
        polytope (Polytope): The polytope
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        float: The volume
    """
    if polytope._volume is not None:
        return polytope._volume
    spec = get_specifier(specifier)
    vset = enumerate_vertices(polytope, specifier=spec)
    if polytope.dim == 1:
        volume = float(vset.points[:, 0].max() - vset.points[:, 0].min())
    else:
        center = vset.points.mean(axis=0)
        heights = polytope.distances(center)
        volume = 0.0
        for j in range(len(polytope)):
            if heights[j] <= 0.0:
                continue
            facet = facet_polytope(polytope, j, specifier=spec)
            volume += heights[j] * polytope_volume(facet, specifier=spec)
        volume /= polytope.dim
    polytope._volume = volume
    return volume


def surface_area(polytope, specifier=None):
    """
    Sum of the (d-1)-volumes of the facets (a point counts 1 when d = 1)
    """
    if polytope.dim == 1:
        return float(len(polytope))
    return sum(polytope_volume(facet_polytope(polytope, j, specifier=specifier),
                               specifier=specifier)
               for j in range(len(polytope)))


#==============================================================================
# inradius
#==============================================================================
class Inball(object):

    """
    The radius g and a center of a largest ball inside a polytope
    """

    def __init__(self, g, center):
        self.g = g
        self.center = center

    def __repr__(self):
        return 'Inball(g={0!r}, center={1})'.format(self.g, list(self.center))


def inradius(polytope, specifier=None):
    """
    The inradius of a polytope from the Chebyshev-ball linear program

    Parameters:
        polytope (Polytope): The polytope
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        Inball: The radius g and a maximizing center
    """
    if polytope._inball is not None:
        return polytope._inball
    result = _chebyshev_lp(polytope.normals, polytope.offsets, specifier=specifier)
    if result.status == 'unbounded':
        err_msg = 'Polytope contains arbitrarily large balls'
        raise UnboundedInputError(err_msg)
    if not result.optimal:
        err_msg = 'Polytope is empty'
        raise EmptyPolytopeError(err_msg)
    polytope._inball = Inball(result.optimum, result.witness[:-1])
    return polytope._inball


#==============================================================================
# interior_polytope
#==============================================================================
def interior_polytope(polytope, r, specifier=None):
    """
    The r-interior P(r), obtained by moving every facet inward by r

    Parameters:
        polytope (Polytope): The polytope
        r (float): The erosion distance
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        Polytope: P(r) (raises EmptyPolytopeError or LowerDimensionalError
            when r reaches the inradius)
    """
    planes = [Hyperplane(h.normal, h.offset + r, specifier=specifier)
              for h in polytope.halfspaces]
    return remove_redundant(planes, specifier=specifier)


#==============================================================================
# absolute_rank
#==============================================================================
def absolute_rank(normals, specifier=None, full_output=False):
    """
    One less than the size of the smallest linearly dependent subfamily

    When no subfamily is dependent (at most d vectors in general position)
    the rank is reported as min(m, d) and the result is flagged as
    saturated.

    Parameters:
        normals (array-like): The family of vectors, one per row
        specifier (Specifier): Tolerances to use (default if None)
        full_output (bool): Also return the saturation flag

    Returns:
        int: The absolute rank (or (rank, saturated) with full_output)
    """
    spec = get_specifier(specifier)
    vectors = numpy.asarray(normals, dtype=float)
    if vectors.size == 0:
        return (0, False) if full_output else 0
    vectors = numpy.atleast_2d(vectors)
    count, dim = vectors.shape

    for size in range(1, min(count, dim + 1) + 1):
        if size > dim:
            rank = size - 1
            return (rank, False) if full_output else rank
        for subset in combinations(range(count), size):
            svals = numpy.linalg.svd(vectors[list(subset)], compute_uv=False)
            if svals[-1] <= spec.rank_tol * max(1.0, svals[0]):
                rank = size - 1
                return (rank, False) if full_output else rank

    rank = min(count, dim)
    return (rank, True) if full_output else rank


#==============================================================================
# JSON input and output
#==============================================================================
def polytope_from_dict(data, specifier=None):
    """
    Build a polytope from its JSON dictionary

    The dictionary reads {"dim": d, "halfspaces": [{"a": [..], "b": x,
    "sense": "<=" | ">="}, ...]}.
    """
    if not isinstance(data, dict) or 'halfspaces' not in data:
        err_msg = 'Polytope JSON must be an object with a "halfspaces" list'
        raise ValueError(err_msg)
    planes = []
    for item in data['halfspaces']:
        planes.append(normalize_halfspace(item['a'], item['b'],
                                          item.get('sense', '<='),
                                          specifier=specifier))
    dim = data.get('dim')
    if dim is not None:
        for plane in planes:
            if plane.dim != dim:
                err_msg = 'Halfspace of dimension {0} in a {1}-polytope'.format(
                    plane.dim, dim)
                raise DimensionMismatchError(err_msg)
    return remove_redundant(planes, specifier=specifier)


def polytope_to_dict(polytope):
    """
    The JSON dictionary of a polytope, with inner normals and '>=' senses
    """
    return {'dim': polytope.dim,
            'halfspaces': [{'a': [float(x) for x in h.normal],
                            'b': float(h.offset),
                            'sense': '>='} for h in polytope.halfspaces]}


def load_polytope(fobj, specifier=None):
    """
    Read a polytope from an open JSON file object
    """
    return polytope_from_dict(json.load(fobj), specifier=specifier)


def dump_polytope(polytope, fobj):
    """
    Write a polytope as JSON to an open file object
    """
    json.dump(polytope_to_dict(polytope), fobj)
