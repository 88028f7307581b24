"""
Canonical polytope constructions and closed-form fixtures

Every constructor returns a certified Polytope (through remove_redundant),
with inner unit normals.  The module also carries the closed forms the
engine is checked against: the rectangle product formula, the inscribed
ball coefficients and the roof derivative identity.

Copyright 2016, University Corporation for Atmospheric Research
See the LICENSE.rst file for details
"""

# Built-in imports
from math import factorial, sqrt

# Third-party imports
import numpy
from numpy.polynomial import polynomial as npoly

# PySteiner imports
from pysteiner.specification import get_specifier
from pysteiner.geometry import (Hyperplane, normalize_halfspace, remove_redundant,
                                complement_frame, inradius, polytope_volume,
                                load_polytope)
from pysteiner.piecewise import Polynomial, PiecewisePoly
from pysteiner.steiner import inner_volume_function, kappas
from pysteiner.errors import InvalidShapeError

GOLDEN_RATIO = 0.5 * (1.0 + sqrt(5.0))

# Roof scaling factor 1 + sqrt(2)
ROOF_FACTOR = 1.0 + sqrt(2.0)


def _positive(values, what):
    values = [float(v) for v in values]
    if len(values) == 0:
        err_msg = '{0} needs at least one parameter'.format(what)
        raise InvalidShapeError(err_msg)
    for v in values:
        if not v > 0:
            err_msg = '{0} parameters must be positive, not {1!r}'.format(what, v)
            raise InvalidShapeError(err_msg)
    return values


#==============================================================================
# Rectangles
#==============================================================================
def make_rectangle(a, specifier=None):
    """
    The rectangle R_a = {x : |x_i| <= a_i}

    Parameters:
        a (list): Positive half-sides a_1, ..., a_d
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        Polytope: The 2d halfspaces x_i >= -a_i and -x_i >= -a_i
    """
    a = _positive(a, 'Rectangle')
    d = len(a)
    planes = []
    for i, ai in enumerate(a):
        unit = numpy.zeros(d)
        unit[i] = 1.0
        planes.append(Hyperplane(unit, -ai, specifier=specifier))
        planes.append(Hyperplane(-unit, -ai, specifier=specifier))
    return remove_redundant(planes, specifier=specifier)


def make_cube(a=1.0, d=3, specifier=None):
    return make_rectangle([a] * d, specifier=specifier)


def make_square(a=1.0, specifier=None):
    return make_rectangle([a, a], specifier=specifier)


def make_segment(a=1.0, specifier=None):
    return make_rectangle([a], specifier=specifier)


def rectangle_closed_form(a, specifier=None):
    """
    The diphase V of a rectangle: 2^d prod(a) - 2^d prod(a_i - r) up to
    g = min(a), then constant

    Parameters:
        a (list): Positive half-sides
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        PiecewisePoly: V on [0, inf)
    """
    a = sorted(_positive(a, 'Rectangle'))
    d = len(a)
    volume = 2.0 ** d * numpy.prod(a)
    # prod(a_i - r) = (-1)^d prod(r - a_i)
    eroded = (-1) ** d * 2.0 ** d * npoly.polyfromroots(a)
    first = Polynomial([volume]) - Polynomial(eroded)
    return PiecewisePoly([0.0, a[0]], [first], right_tail=Polynomial([volume]),
                         degree=d, specifier=specifier)


#==============================================================================
# Simplices, polygons and pyramids
#==============================================================================
def make_simplex(d=3, specifier=None):
    """
    The right unit simplex {x_i >= 0, sum x_i <= 1}
    """
    planes = [Hyperplane(numpy.eye(d)[i], 0.0, specifier=specifier) for i in range(d)]
    planes.append(normalize_halfspace(numpy.ones(d), 1.0, '<=', specifier=specifier))
    return remove_redundant(planes, specifier=specifier)


def make_regular_simplex(d=3, g=1.0, specifier=None):
    """
    The regular d-simplex with inradius g centered at the origin

    The outer normals are the vertex directions of a regular simplex,
    obtained by projecting the standard basis of R^(d+1) onto the
    complement of (1, ..., 1).
    """
    frame = complement_frame(numpy.ones(d + 1) / sqrt(d + 1))
    planes = []
    for i in range(d + 1):
        outer = frame[i]
        outer = outer / numpy.linalg.norm(outer)
        planes.append(Hyperplane(-outer, -g, specifier=specifier))
    return remove_redundant(planes, specifier=specifier)


def make_regular_polygon(n=5, g=1.0, specifier=None):
    """
    The regular n-gon with inradius g centered at the origin
    """
    if n < 3:
        err_msg = 'Regular polygons need at least 3 sides, not {0}'.format(n)
        raise InvalidShapeError(err_msg)
    planes = []
    for k in range(n):
        theta = 2.0 * numpy.pi * k / n
        outer = numpy.array([numpy.cos(theta), numpy.sin(theta)])
        planes.append(Hyperplane(-outer, -g, specifier=specifier))
    return remove_redundant(planes, specifier=specifier)


def make_square_pyramid(a=1.0, h=1.0, specifier=None):
    """
    The pyramid over the square [-a, a]^2 x {0} with apex (0, 0, h)
    """
    a, h = _positive([a, h], 'Pyramid')
    planes = [Hyperplane([0.0, 0.0, 1.0], 0.0, specifier=specifier)]
    for sign in (1.0, -1.0):
        planes.append(normalize_halfspace([sign * h, 0.0, a], a * h, '<=',
                                          specifier=specifier))
        planes.append(normalize_halfspace([0.0, sign * h, a], a * h, '<=',
                                          specifier=specifier))
    return remove_redundant(planes, specifier=specifier)


#==============================================================================
# The cut dodecahedron
#==============================================================================
def make_cut_dodecahedron(specifier=None):
    """
    A unit-edge regular dodecahedron with one pair of opposite facets moved
    inward by delta = sqrt(1 - 2/sqrt(5))

    The facet directions are the icosahedron vertices (0, +-1, +-phi),
    (+-1, +-phi, 0) and (+-phi, 0, +-1); the unit-edge inradius is
    sqrt((25 + 11 sqrt(5)) / 10) / 2.  The pair along (0, 1, phi) is cut.
    All outer dihedral angles of the result equal arctan(2).
    """
    phi = GOLDEN_RATIO
    rin = 0.5 * sqrt((25.0 + 11.0 * sqrt(5.0)) / 10.0)
    delta = sqrt(1.0 - 2.0 / sqrt(5.0))

    directions = []
    for s1 in (1.0, -1.0):
        for s2 in (1.0, -1.0):
            directions.append([0.0, s1, s2 * phi])
            directions.append([s1, s2 * phi, 0.0])
            directions.append([s2 * phi, 0.0, s1])
    cut = numpy.array([0.0, 1.0, phi]) / sqrt(1.0 + phi ** 2)

    planes = []
    for direction in directions:
        outer = numpy.array(direction) / numpy.linalg.norm(direction)
        depth = rin
        if abs(abs(numpy.dot(outer, cut)) - 1.0) < 1e-12:
            depth = rin - delta
        planes.append(Hyperplane(-outer, -depth, specifier=specifier))
    return remove_redundant(planes, specifier=specifier)


#==============================================================================
# The multiphase pentagon
#==============================================================================
MULTIPHASE_PENTAGON = [([0.0, 1.0], 0.0, '>='),
                       ([1.0, 0.0], 3.6, '<='),
                       ([3.0, 4.0], 12.0, '<='),
                       ([1.0, 0.0], 0.0, '>='),
                       ([1.0, 1.0], 0.5, '>=')]


def make_multiphase_polygon(specifier=None):
    """
    The pentagon with vertices (0.5, 0), (3.6, 0), (3.6, 0.3), (0, 3) and
    (0, 0.5)

    Its inradius is 1 (incenter (1, 1)).  Eroding it, the short edge on
    x = 3.6 vanishes at r = 0.2, the cut corner on x + y = 0.5 at
    r = 0.5 / (2 - sqrt(2)), and the remaining triangle collapses at r = 1,
    so V has four phases.
    """
    planes = [normalize_halfspace(a, b, sense, specifier=specifier)
              for a, b, sense in MULTIPHASE_PENTAGON]
    return remove_redundant(planes, specifier=specifier)


#==============================================================================
# The roof operator
#==============================================================================
def make_roof(polytope, specifier=None):
    """
    The roof {(x, h) : h >= 0, x in P(h)} of a polytope, one dimension up

    The facets are h >= 0 and, for every facet of P, the slanted facet
    <N_j, x> - h >= offset_j with unit normal (N_j, -1)/sqrt(2).  Its
    inradius is g / (1 + sqrt(2)).

    Parameters:
        polytope (Polytope): The polytope P
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        Polytope: The roof of P
    """
    d = polytope.dim
    floor = numpy.zeros(d + 1)
    floor[-1] = 1.0
    planes = [Hyperplane(floor, 0.0, specifier=specifier)]
    for normal, offset in zip(polytope.normals, polytope.offsets):
        slanted = numpy.append(normal, -1.0) / sqrt(2.0)
        planes.append(Hyperplane(slanted, offset / sqrt(2.0), specifier=specifier))
    return remove_redundant(planes, specifier=specifier)


def make_iterated_roof(polytope, k, specifier=None):
    if k < 0:
        err_msg = 'Roof depth cannot be negative'
        raise InvalidShapeError(err_msg)
    for _ in range(k):
        polytope = make_roof(polytope, specifier=specifier)
    return polytope


def make_rank_class_instance(k, s, d, small=1.0, large=2.0, specifier=None):
    """
    A d-polytope of absolute rank k whose V is of class exactly s - 1

    The polytope is the (k-1)-fold roof of the (d-k+1)-rectangle with
    s-k+1 half-sides equal to small and the others equal to large.

    Parameters:
        k (int): Absolute rank, 1 <= k <= s
        s (int): One more than the smoothness class, s <= d
        d (int): Dimension
        small (float): The minimal half-side
        large (float): The remaining half-sides (larger than small)
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        Polytope: The instance
    """
    if not 1 <= k <= s <= d:
        err_msg = 'Need 1 <= k <= s <= d, got k={0}, s={1}, d={2}'.format(k, s, d)
        raise InvalidShapeError(err_msg)
    if not large > small:
        err_msg = 'The large half-side must exceed the small one'
        raise InvalidShapeError(err_msg)
    base_dim = d - k + 1
    count = s - k + 1
    sides = [small] * count + [large] * (base_dim - count)
    return make_iterated_roof(make_rectangle(sides, specifier=specifier), k - 1,
                              specifier=specifier)


#==============================================================================
# Inscribed-ball checks
#==============================================================================
def ball_coefficients(d, volume, g):
    """
    kappa_i = (-1)^(d-i-1) C(d, i) vol / g^(d-i), i = 0..d-1

    These are the first-phase coefficients of V for a polytope whose facets
    all touch one inscribed ball of radius g.
    """
    binom = lambda n, i: factorial(n) // (factorial(i) * factorial(n - i))
    return [(-1) ** (d - i - 1) * binom(d, i) * volume / g ** (d - i)
            for i in range(d)]


class DiphaseReport(object):

    """
    The outcome of the inscribed-ball check

    The check holds when the ball exists exactly when V is diphase of
    class d - 1 and, with a ball, the engine's first-phase coefficients
    match the ball coefficients.
    """

    def __init__(self, inscribed, diphase_and_smooth, kappas=None, engine_kappas=None,
                 kappa_residual=None, tol=0.0):
        self.inscribed = inscribed
        self.diphase_and_smooth = diphase_and_smooth
        self.kappas = kappas
        self.engine_kappas = engine_kappas
        self.kappa_residual = kappa_residual
        self.tol = tol

    @property
    def holds(self):
        if self.inscribed != self.diphase_and_smooth:
            return False
        return self.kappa_residual is None or self.kappa_residual <= self.tol

    def to_dict(self):
        data = {'inscribed': self.inscribed,
                'diphase_and_smooth': self.diphase_and_smooth,
                'holds': self.holds,
                'engine_kappas': self.engine_kappas}
        if self.kappas is not None:
            data['kappas'] = self.kappas
            data['kappa_residual'] = self.kappa_residual
        return data


def diphase_inscribed_check(polytope, specifier=None, inner=None):
    """
    Whether P has an inscribed ball touching every facet, and whether its V
    is diphase of class d - 1

    Parameters:
        polytope (Polytope): The polytope P
        specifier (Specifier): Tolerances to use (default if None)
        inner (InnerVolumeFunction): Engine result for P (computed if None)

    Returns:
        DiphaseReport: Both answers and whether they agree, with the ball
            coefficients and their largest relative difference from the
            engine's first-phase coefficients when the ball exists
    """
    spec = get_specifier(specifier)
    if inner is None:
        inner = inner_volume_function(polytope, specifier=spec)
    ball = inradius(polytope, specifier=spec)
    dists = polytope.distances(ball.center)
    inscribed = bool(numpy.abs(dists - ball.g).max() <= spec.lp_tol * max(1.0, ball.g))

    d = polytope.dim
    smooth = inner.V.phases() == 2 and inner.measured_class >= d - 1
    engine = [float(x) for x in kappas(inner.V, degree=d)]
    expected = None
    residual = None
    if inscribed:
        expected = ball_coefficients(d, polytope_volume(polytope, specifier=spec), ball.g)
        residual = max(abs(got - want) / max(1.0, abs(want))
                       for got, want in zip(engine, expected))
    return DiphaseReport(inscribed, smooth, expected, engine, residual,
                         tol=spec.smooth_tol)


#==============================================================================
# Roof derivative identity
#==============================================================================
def roof_derivative_residual(polytope, samples=64, specifier=None):
    """
    max |W'_roof(r) + (1 + sqrt(2)) W_P((1 + sqrt(2)) r)| over r sampled in
    [0, g / (1 + sqrt(2)))

    Parameters:
        polytope (Polytope): The polytope P
        samples (int): Number of sampled r values
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        float: The largest residual
    """
    spec = get_specifier(specifier)
    base = inner_volume_function(polytope, specifier=spec)
    roof = inner_volume_function(make_roof(polytope, specifier=spec), specifier=spec)
    slope = roof.W.derivative()
    radii = numpy.linspace(0.0, base.g / ROOF_FACTOR, samples, endpoint=False)
    return max(abs(slope(r) + ROOF_FACTOR * base.W(ROOF_FACTOR * r)) for r in radii)


#==============================================================================
# build_shape - Shape dispatcher for the command line
#==============================================================================
def _floats(params, kind):
    try:
        return [float(p) for p in params]
    except (TypeError, ValueError):
        err_msg = '{0} needs numeric parameters, got {1}'.format(kind, list(params))
        raise InvalidShapeError(err_msg)


def _ints(params, defaults, kind):
    values = [int(round(v)) for v in _floats(params, kind)]
    return values + list(defaults[len(values):])


def _equal_sides(params, d, kind):
    if len(params) == 0:
        return [1.0] * d
    if len(params) == 1:
        return [params[0]] * d
    if len(params) != d:
        err_msg = '{0} needs 1 or {1} half-sides, got {2}'.format(kind, d, len(params))
        raise InvalidShapeError(err_msg)
    return params


def build_shape(kind, params=(), specifier=None):
    """
    Build a named shape from a list of parameters

    The roof kinds take an inner shape: 'roof-of KIND PARAMS...' and
    'iterated-roof DEPTH KIND PARAMS...'.  The 'custom' kind reads a
    polytope JSON file.

    Parameters:
        kind (str): One of rect, rectangle, cube, square, segment, simplex,
            regular-simplex, polygon, regular-polygon, pyramid,
            cut-dodecahedron, multiphase-pentagon, rank-class, roof-of,
            iterated-roof or custom
        params (list): Parameters of the shape (numbers, or strings as
            given on the command line)
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        Polytope: The shape
    """
    params = list(params)
    kind = str(kind).lower().replace('_', '-')
    if kind == 'roof-of':
        if len(params) == 0:
            err_msg = 'roof-of needs an inner shape kind'
            raise InvalidShapeError(err_msg)
        inner = build_shape(params[0], params[1:], specifier=specifier)
        return make_roof(inner, specifier=specifier)
    elif kind == 'iterated-roof':
        if len(params) < 2:
            err_msg = 'iterated-roof needs a depth and an inner shape kind'
            raise InvalidShapeError(err_msg)
        depth, = _ints(params[:1], [], kind)
        if depth < 1:
            err_msg = 'Roof depth must be at least 1, not {0}'.format(depth)
            raise InvalidShapeError(err_msg)
        inner = build_shape(params[1], params[2:], specifier=specifier)
        return make_iterated_roof(inner, depth, specifier=specifier)
    elif kind == 'custom':
        if len(params) != 1:
            err_msg = 'custom needs exactly one polytope JSON file'
            raise InvalidShapeError(err_msg)
        with open(str(params[0])) as fobj:
            return load_polytope(fobj, specifier=specifier)

    values = _floats(params, kind)
    if kind in ('rect', 'rectangle'):
        return make_rectangle(values, specifier=specifier)
    elif kind == 'cube':
        return make_rectangle(_equal_sides(values, 3, kind), specifier=specifier)
    elif kind == 'square':
        return make_rectangle(_equal_sides(values, 2, kind), specifier=specifier)
    elif kind == 'segment':
        return make_rectangle(_equal_sides(values, 1, kind), specifier=specifier)
    elif kind == 'simplex':
        return make_simplex(*_ints(values[:1], [3], kind), specifier=specifier)
    elif kind == 'regular-simplex':
        d, = _ints(values[:1], [3], kind)
        g = values[1] if len(values) > 1 else 1.0
        return make_regular_simplex(d, g, specifier=specifier)
    elif kind in ('polygon', 'regular-polygon'):
        n, = _ints(values[:1], [5], kind)
        g = values[1] if len(values) > 1 else 1.0
        return make_regular_polygon(n, g, specifier=specifier)
    elif kind == 'pyramid':
        return make_square_pyramid(*values[:2], specifier=specifier)
    elif kind == 'cut-dodecahedron':
        return make_cut_dodecahedron(specifier=specifier)
    elif kind == 'multiphase-pentagon':
        return make_multiphase_polygon(specifier=specifier)
    elif kind == 'rank-class':
        if len(values) != 3:
            err_msg = 'rank-class needs the parameters k s d'
            raise InvalidShapeError(err_msg)
        return make_rank_class_instance(*_ints(values, [], kind), specifier=specifier)
    err_msg = 'Unknown shape kind {0!r}'.format(kind)
    raise InvalidShapeError(err_msg)
