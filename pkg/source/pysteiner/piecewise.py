"""
The module containing the piecewise polynomial algebra

Volume functions are carried as PiecewisePoly objects: strictly increasing
breakpoints, one Polynomial per bounded interval and optional tails for the
unbounded sides.  The coefficient arithmetic itself is done with
numpy.polynomial.polynomial.

Copyright 2016, University Corporation for Atmospheric Research
See the LICENSE.rst file for details
"""

# Built-in imports
from bisect import bisect_right

# Third-party imports
import numpy
from numpy.polynomial import polynomial as npoly

# PySteiner imports
from pysteiner.specification import get_specifier
from pysteiner.errors import OutOfDomainError


#==============================================================================
# Polynomial
#==============================================================================
class Polynomial(object):

    """
    A univariate polynomial c_0 + c_1 r + ... + c_n r^n

    Trailing coefficients below the coefficient tolerance are trimmed, so
    the zero polynomial has an empty coefficient list.
    """

    def __init__(self, coeffs=(), specifier=None):
        spec = get_specifier(specifier)
        coeffs = numpy.array(coeffs, dtype=float).reshape(-1)
        if coeffs.size > 0:
            coeffs = npoly.polytrim(coeffs, tol=spec.coeff_tol)
            if coeffs.size == 1 and abs(coeffs[0]) <= spec.coeff_tol:
                coeffs = numpy.zeros(0)
        coeffs.setflags(write=False)
        self.coeffs = coeffs
        self._spec = spec

    @property
    def degree(self):
        return self.coeffs.size - 1

    def is_zero(self):
        return self.coeffs.size == 0

    def __call__(self, r):
        if self.coeffs.size == 0:
            return 0.0 * numpy.asarray(r, dtype=float)
        return npoly.polyval(r, self.coeffs)

    def _new(self, coeffs=()):
        return Polynomial(coeffs, specifier=self._spec)

    def deriv(self, order=1):
        if self.coeffs.size == 0:
            return self._new()
        return self._new(npoly.polyder(self.coeffs, m=order))

    def integ(self, lbnd=0.0):
        """
        The antiderivative vanishing at lbnd
        """
        if self.coeffs.size == 0:
            return self._new()
        return self._new(npoly.polyint(self.coeffs, lbnd=lbnd))

    def __add__(self, other):
        return self._new(npoly.polyadd(_coeffs_of(self), _coeffs_of(other)))

    def __sub__(self, other):
        return self._new(npoly.polysub(_coeffs_of(self), _coeffs_of(other)))

    def __neg__(self):
        return self._new(-self.coeffs)

    def __mul__(self, scalar):
        return self._new(float(scalar) * self.coeffs)

    __rmul__ = __mul__

    def padded(self, degree):
        """
        The coefficient list padded with zeros to degree+1 entries
        """
        out = [0.0] * (max(degree, self.degree) + 1)
        for k, c in enumerate(self.coeffs):
            out[k] = float(c)
        return out

    def isclose(self, other, tol, scale=1.0):
        """
        Coefficientwise comparison, coefficient k weighted by scale^k
        """
        size = max(self.coeffs.size, other.coeffs.size)
        a = numpy.array(self.padded(size - 1)) if size > 0 else numpy.zeros(0)
        b = numpy.array(other.padded(size - 1)) if size > 0 else numpy.zeros(0)
        weights = float(scale) ** numpy.arange(size)
        return bool(numpy.all(numpy.abs(a - b) * weights <= tol))

    def __repr__(self):
        return 'Polynomial({0})'.format([float(c) for c in self.coeffs])


def _coeffs_of(poly):
    if isinstance(poly, Polynomial):
        return poly.coeffs if poly.coeffs.size > 0 else numpy.zeros(1)
    return numpy.array([float(poly)])


#==============================================================================
# merge_breakpoints
#==============================================================================
def merge_breakpoints(candidates, tol):
    """
    Sort candidate breakpoints and merge those closer than tol

    The first (smallest) value of every cluster is kept.

    Parameters:
        candidates (list): Candidate breakpoint values
        tol (float): Merging distance

    Returns:
        list: A strictly increasing list of breakpoints
    """
    merged = []
    for value in sorted(float(c) for c in candidates):
        if len(merged) == 0 or value - merged[-1] > tol:
            merged.append(value)
    return merged


def merge_breakpoints_on(candidates, lo, hi, tol):
    """
    Merged breakpoints of the interval [lo, hi], with lo and hi kept exactly

    Candidates outside [lo, hi] or within tol of either end are dropped,
    and the interior ones are merged as in merge_breakpoints.

    Parameters:
        candidates (list): Candidate breakpoint values
        lo (float): Left end of the interval
        hi (float): Right end of the interval
        tol (float): Merging distance

    Returns:
        list: A strictly increasing list starting at lo and ending at hi
    """
    lo, hi = float(lo), float(hi)
    if not hi > lo:
        return [lo]
    inner = [float(c) for c in candidates if lo + tol < c < hi - tol]
    return [lo] + merge_breakpoints(inner, tol) + [hi]


#==============================================================================
# PiecewisePoly
#==============================================================================
class PiecewisePoly(object):

    """
    A univariate piecewise polynomial of declared degree d

    The pieces cover [g_0, g_1], ..., [g_{n-2}, g_{n-1}]; the optional left
    tail covers (-inf, g_0] and the optional right tail [g_{n-1}, +inf).
    """

    def __init__(self, breakpoints, pieces, left_tail=None, right_tail=None,
                 degree=None, specifier=None):
        """
        Constructor

        Parameters:
            breakpoints (list): Strictly increasing breakpoints
            pieces (list): One Polynomial (or coefficient list) per interval
            left_tail (Polynomial): Polynomial on (-inf, g_0], or None
            right_tail (Polynomial): Polynomial on [g_{n-1}, inf), or None
            degree (int): Declared degree (default: largest piece degree)
            specifier (Specifier): Tolerances to use (default if None)
        """
        self._spec = get_specifier(specifier)
        breakpoints = [float(b) for b in breakpoints]
        if len(breakpoints) == 0:
            err_msg = 'A piecewise polynomial needs at least one breakpoint'
            raise ValueError(err_msg)
        for left, right in zip(breakpoints[:-1], breakpoints[1:]):
            if not right > left:
                err_msg = 'Breakpoints must be strictly increasing: {0}'.format(
                    breakpoints)
                raise ValueError(err_msg)
        if len(pieces) != len(breakpoints) - 1:
            err_msg = '{0} pieces given for {1} breakpoints'.format(
                len(pieces), len(breakpoints))
            raise ValueError(err_msg)

        self.breakpoints = breakpoints
        self.pieces = [_as_poly(p, self._spec) for p in pieces]
        self.left_tail = None if left_tail is None else _as_poly(left_tail, self._spec)
        self.right_tail = None if right_tail is None else _as_poly(right_tail, self._spec)

        found = max([p.degree for p in self.segments()] + [0])
        if degree is None:
            degree = found
        elif found > degree:
            err_msg = 'Piece of degree {0} exceeds declared degree {1}'.format(
                found, degree)
            raise ValueError(err_msg)
        self.degree = degree

    #===== CONSTRUCTION HELPERS =====

    @classmethod
    def constant(cls, value, breakpoint=0.0, left=True, right=True):
        """
        A constant function, on the whole line by default
        """
        poly = Polynomial([value])
        return cls([breakpoint], [], left_tail=poly if left else None,
                   right_tail=poly if right else None, degree=0)

    @classmethod
    def zero_on(cls, lo, hi, degree=0):
        """
        The zero function on a finite interval [lo, hi]
        """
        if hi > lo:
            return cls([lo, hi], [Polynomial()], degree=degree)
        return cls([lo], [], degree=degree)

    #===== DOMAIN AND EVALUATION =====

    def segments(self):
        """
        All polynomials in order: left tail, pieces, right tail
        """
        out = []
        if self.left_tail is not None:
            out.append(self.left_tail)
        out.extend(self.pieces)
        if self.right_tail is not None:
            out.append(self.right_tail)
        return out

    @property
    def domain(self):
        lo = -numpy.inf if self.left_tail is not None else self.breakpoints[0]
        hi = numpy.inf if self.right_tail is not None else self.breakpoints[-1]
        return lo, hi

    @property
    def support_length(self):
        return self.breakpoints[-1] - self.breakpoints[0]

    def length_scale(self):
        return self.support_length if self.support_length > 0 else 1.0

    def value_scale(self):
        values = [abs(self.evaluate(b)) for b in self.breakpoints]
        return max([1.0] + values)

    def polynomial_at(self, r):
        """
        The polynomial governing r (the right-hand piece at a breakpoint)
        """
        r = float(r)
        bps = self.breakpoints
        if r < bps[0]:
            if self.left_tail is None:
                err_msg = 'r = {0!r} lies left of the domain [{1!r}, ...]'.format(r, bps[0])
                raise OutOfDomainError(err_msg)
            return self.left_tail
        if r > bps[-1] or (r == bps[-1] and self.right_tail is not None):
            if self.right_tail is None:
                err_msg = 'r = {0!r} lies right of the domain [..., {1!r}]'.format(r, bps[-1])
                raise OutOfDomainError(err_msg)
            return self.right_tail
        if len(self.pieces) == 0:
            # A single breakpoint with tails on one side only
            return self.left_tail if self.left_tail is not None else self.right_tail
        index = min(bisect_right(bps, r) - 1, len(self.pieces) - 1)
        return self.pieces[index]

    def evaluate(self, r):
        """
        Horner evaluation of the governing piece at r
        """
        return float(self.polynomial_at(r)(float(r)))

    def __call__(self, r):
        if numpy.ndim(r) == 0:
            return self.evaluate(r)
        return numpy.array([self.evaluate(x) for x in numpy.asarray(r).ravel()]).reshape(
            numpy.shape(r))

    def phases(self):
        """
        Number of polynomial phases (bounded pieces plus tails)
        """
        return len(self.segments())

    def interior_breakpoints(self):
        """
        Breakpoints with a polynomial on both sides
        """
        out = []
        for i, b in enumerate(self.breakpoints):
            has_left = i > 0 or self.left_tail is not None
            has_right = i < len(self.breakpoints) - 1 or self.right_tail is not None
            if has_left and has_right:
                out.append(b)
        return out

    def _junctions(self):
        """
        (breakpoint, left polynomial, right polynomial) at every junction
        """
        segs = self.segments()
        bps = self.interior_breakpoints()
        return [(b, segs[i], segs[i + 1]) for i, b in enumerate(bps)]

    #===== CALCULUS =====

    def derivative(self):
        """
        Piecewise formal derivative (possibly discontinuous)
        """
        return PiecewisePoly(
            self.breakpoints, [p.deriv() for p in self.pieces],
            left_tail=None if self.left_tail is None else self.left_tail.deriv(),
            right_tail=None if self.right_tail is None else self.right_tail.deriv(),
            degree=max(self.degree - 1, 0), specifier=self._spec)

    def antiderivative_anchored(self, anchor_r, anchor_value):
        """
        Continuous piecewise antiderivative equal to anchor_value at anchor_r

        Anchors within the continuity tolerance of a finite end of the domain
        are moved onto it.
        """
        lo, hi = self.domain
        slack = self._spec.cont_tol * self.length_scale()
        if lo - slack <= anchor_r < lo:
            anchor_r = lo
        elif hi < anchor_r <= hi + slack:
            anchor_r = hi
        if not lo <= anchor_r <= hi:
            err_msg = 'Anchor r = {0!r} outside the domain [{1!r}, {2!r}]'.format(
                anchor_r, lo, hi)
            raise OutOfDomainError(err_msg)
        bps = self.breakpoints
        pieces = []
        value = 0.0
        for i, piece in enumerate(self.pieces):
            prim = piece.integ(lbnd=bps[i]) + value
            pieces.append(prim)
            value = float(prim(bps[i + 1]))
        left = None
        if self.left_tail is not None:
            left = self.left_tail.integ(lbnd=bps[0])
        right = None
        if self.right_tail is not None:
            right = self.right_tail.integ(lbnd=bps[-1]) + value
        result = PiecewisePoly(bps, pieces, left_tail=left, right_tail=right,
                               degree=self.degree + 1, specifier=self._spec)
        shift = anchor_value - result.evaluate(anchor_r)
        return result.shifted(shift)

    def shifted(self, constant):
        """
        The function plus a constant
        """
        add = lambda p: p + constant
        return PiecewisePoly(
            self.breakpoints, [add(p) for p in self.pieces],
            left_tail=None if self.left_tail is None else add(self.left_tail),
            right_tail=None if self.right_tail is None else add(self.right_tail),
            degree=self.degree, specifier=self._spec)

    def scaled(self, factor):
        """
        The function times a constant
        """
        mul = lambda p: p * factor
        return PiecewisePoly(
            self.breakpoints, [mul(p) for p in self.pieces],
            left_tail=None if self.left_tail is None else mul(self.left_tail),
            right_tail=None if self.right_tail is None else mul(self.right_tail),
            degree=self.degree, specifier=self._spec)

    #===== SMOOTHNESS =====

    def _derivative_tolerance(self, order, left, right):
        scale = self.value_scale() / self.length_scale() ** order
        return self._spec.smooth_tol * max(1.0, abs(left), abs(right), scale)

    def _junction_class(self, b, left, right):
        """
        Largest s with derivatives 0..s matching at b (-1 if discontinuous,
        the degree if all match)
        """
        for order in range(self.degree + 1):
            lval = float(left.deriv(order)(b)) if order > 0 else float(left(b))
            rval = float(right.deriv(order)(b)) if order > 0 else float(right(b))
            if abs(lval - rval) > self._derivative_tolerance(order, lval, rval):
                return order - 1
        return self.degree

    def is_continuous(self):
        """
        True when adjacent pieces agree at every junction within cont_tol
        """
        tol = self._spec.cont_tol * self.value_scale()
        for b, left, right in self._junctions():
            if abs(float(left(b)) - float(right(b))) > tol:
                return False
        return True

    def normalize(self):
        """
        Coalesce adjacent pieces whose derivatives of all orders agree
        """
        segs = self.segments()
        bps = list(self.interior_breakpoints())
        has_left = self.left_tail is not None
        has_right = self.right_tail is not None
        first = self.breakpoints[0]
        last = self.breakpoints[-1]

        # bounds[i], bounds[i+1] delimit segs[i]; tails use infinities
        bounds = ([-numpy.inf] if has_left else [first]) + bps + \
            ([numpy.inf] if has_right else [last])
        i = 0
        while i < len(segs) - 1:
            b = bounds[i + 1]
            if self._junction_class(b, segs[i], segs[i + 1]) >= self.degree:
                left_len = bounds[i + 1] - bounds[i]
                right_len = bounds[i + 2] - bounds[i + 1]
                if has_left and i == 0:
                    keep = segs[i]
                elif has_right and i + 1 == len(segs) - 1:
                    keep = segs[i + 1]
                else:
                    keep = segs[i] if left_len >= right_len else segs[i + 1]
                segs[i:i + 2] = [keep]
                del bounds[i + 1]
            else:
                i += 1

        left = segs.pop(0) if has_left else None
        right = segs.pop(-1) if has_right else None
        breakpoints = [b for b in bounds if numpy.isfinite(b)]
        if len(breakpoints) == 0:
            # A tail swallowed every breakpoint; keep one as a reference
            breakpoints = [first]
        if len(breakpoints) == 1 and len(segs) > 0:
            segs = []
        return PiecewisePoly(breakpoints, segs, left_tail=left, right_tail=right,
                             degree=self.degree, specifier=self._spec)

    def smoothness_class(self):
        """
        Largest s such that the function is C^s across all its breakpoints

        Returns:
            int or float: The class, float('inf') for a single global
                polynomial, and -1 when the function is discontinuous
        """
        normal = self.normalize()
        junctions = normal._junctions()
        if len(junctions) == 0:
            return float('inf')
        return min(normal._junction_class(b, l, r) for b, l, r in junctions)

    #===== COMBINATION =====

    def extended_by_zero(self, lo, hi):
        """
        The function on [lo, hi], zero outside its own finite domain
        """
        tol = self._spec.cont_tol * max(1.0, hi - lo)
        own_lo, own_hi = self.breakpoints[0], self.breakpoints[-1]
        bps = merge_breakpoints_on(self.breakpoints, lo, hi, tol)
        pieces = []
        for a, b in zip(bps[:-1], bps[1:]):
            mid = 0.5 * (a + b)
            if own_lo <= mid <= own_hi or self.left_tail is not None and mid < own_lo \
                    or self.right_tail is not None and mid > own_hi:
                pieces.append(self.polynomial_at(mid))
            else:
                pieces.append(Polynomial())
        return PiecewisePoly(bps, pieces, degree=self.degree, specifier=self._spec)

    #===== SERIALIZATION =====

    def to_dict(self):
        """
        The JSON dictionary of this piecewise polynomial
        """
        d = self.degree
        return {'degree': d,
                'breakpoints': [float(b) for b in self.breakpoints],
                'pieces': [p.padded(d) for p in self.pieces],
                'left_tail': None if self.left_tail is None else self.left_tail.padded(d),
                'right_tail': None if self.right_tail is None else self.right_tail.padded(d)}

    @classmethod
    def from_dict(cls, data, specifier=None):
        """
        Build a piecewise polynomial from its JSON dictionary
        """
        return cls(data['breakpoints'], data['pieces'],
                   left_tail=data.get('left_tail'),
                   right_tail=data.get('right_tail'),
                   degree=data.get('degree'), specifier=specifier)

    def __repr__(self):
        return 'PiecewisePoly(breakpoints={0}, phases={1})'.format(
            self.breakpoints, self.phases())


def _as_poly(p, spec):
    if isinstance(p, Polynomial):
        return p
    return Polynomial(p, specifier=spec)


#==============================================================================
# linear_combination
#==============================================================================
def linear_combination(terms, lo, hi, specifier=None):
    """
    The sum of c_i f_i over a common finite interval [lo, hi]

    Each f_i is first extended by zero to [lo, hi].

    Parameters:
        terms (list): List of (coefficient, PiecewisePoly) pairs
        lo (float): Left end of the interval
        hi (float): Right end of the interval
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        PiecewisePoly: The combination on [lo, hi]
    """
    spec = get_specifier(specifier)
    tol = spec.cont_tol * max(1.0, hi - lo)
    funcs = [(c, f.extended_by_zero(lo, hi)) for c, f in terms]
    candidates = []
    for _, f in funcs:
        candidates.extend(f.breakpoints)
    bps = merge_breakpoints_on(candidates, lo, hi, tol)
    degree = max([f.degree for _, f in funcs] + [0])
    pieces = []
    for a, b in zip(bps[:-1], bps[1:]):
        mid = 0.5 * (a + b)
        total = Polynomial(specifier=spec)
        for c, f in funcs:
            total = total + f.polynomial_at(mid) * c
        pieces.append(total)
    return PiecewisePoly(bps, pieces, degree=degree, specifier=spec)
