"""
Face lattices, dihedral angles and the closed-form volume polynomial of
dimension-wise equiangular polytopes

A polytope is dimension-wise equiangular when, for every k = 2..d, all of
its k-dimensional faces are equiangular polytopes with one common outer
dihedral angle alpha_k.  For such polytopes the first phase of the interior
volume function has the closed form

    W(r) = sum_k (-1)^(d-k) Omega_k gamma_{k+1}...gamma_d r^(d-k) / (d-k)!

with gamma_k = tan(alpha_{k+1}/2)...tan(alpha_d/2) and Omega_k the
flag-weighted k-skeleton volume.

Copyright 2016, University Corporation for Atmospheric Research
See the LICENSE.rst file for details
"""

# Built-in imports
from math import factorial

# Third-party imports
import numpy

# PySteiner imports
from pysteiner.specification import get_specifier
from pysteiner.geometry import (enumerate_vertices, facet_polytope,
                                polytope_volume, inradius, _affine_rank)
from pysteiner.piecewise import Polynomial
from pysteiner.steiner import inner_volume_function
from pysteiner.errors import NotEquiangularError, NotUniformError


#==============================================================================
# FaceLatticeNode
#==============================================================================
class FaceLatticeNode(object):

    """
    One face of a polytope's face lattice

    A k-face is stored once, however many facet chains reach it; faces are
    identified by the set of root vertices they contain.
    """

    def __init__(self, dim, polytope, chain, vertex_ids):
        """
        Constructor

        Parameters:
            dim (int): The dimension k of the face
            polytope (Polytope): The face in its own k-frame (None for
                vertices)
            chain (tuple): Facet indices leading to the face along the
                first chain that reached it
            vertex_ids (frozenset): Indices of the root vertices on the face
        """
        self.dim = dim
        self.polytope = polytope
        self.chain = tuple(chain)
        self.vertex_ids = frozenset(vertex_ids)
        self.children = []
        self.parents = []

    @property
    def volume(self):
        if self.dim == 0:
            return 1.0
        return polytope_volume(self.polytope)

    def faces(self, k):
        """
        The distinct k-faces below this node, in discovery order
        """
        found = []
        seen = set()
        stack = [self]
        while stack:
            node = stack.pop(0)
            if id(node) in seen:
                continue
            seen.add(id(node))
            if node.dim == k:
                found.append(node)
            elif node.dim > k:
                stack.extend(node.children)
        return found

    def __repr__(self):
        return 'FaceLatticeNode(dim={0}, vertices={1})'.format(
            self.dim, sorted(self.vertex_ids))


#==============================================================================
# face_lattice
#==============================================================================
def face_lattice(polytope, specifier=None):
    """
    The full face lattice of a polytope, down to its vertices

    Parameters:
        polytope (Polytope): The polytope P
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        FaceLatticeNode: The root node (P itself)
    """
    spec = get_specifier(specifier)
    vset = enumerate_vertices(polytope, specifier=spec)
    root = FaceLatticeNode(polytope.dim, polytope, (), range(len(vset)))
    registry = {}
    _build_children(root, list(range(len(vset))), registry, spec)
    return root


def _build_children(node, ids, registry, spec):
    poly = node.polytope
    vset = enumerate_vertices(poly, specifier=spec)
    for j in range(len(poly)):
        if node.dim == 1:
            local = vset.incident(j)
            child_ids = [ids[k] for k in local]
            key = frozenset(child_ids)
            child = registry.get(key)
            if child is None:
                child = FaceLatticeNode(0, None, node.chain + (j,), key)
                registry[key] = child
        else:
            facet = facet_polytope(poly, j, specifier=spec)
            child_ids = [ids[k] for k in facet.vertex_index]
            key = frozenset(child_ids)
            child = registry.get(key)
            if child is None:
                child = FaceLatticeNode(node.dim - 1, facet, node.chain + (j,), key)
                registry[key] = child
                _build_children(child, child_ids, registry, spec)
        if child not in node.children:
            node.children.append(child)
            child.parents.append(node)


#==============================================================================
# dihedral_angle
#==============================================================================
def dihedral_angle(polytope, i, j, specifier=None):
    """
    The outer dihedral angle arccos<N_i, N_j> of two adjacent facets

    Parameters:
        polytope (Polytope): The polytope (dimension at least 2)
        i (int): First facet index
        j (int): Second facet index
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        float: The angle in radians, or None when the facets share no ridge
    """
    if i == j:
        err_msg = 'Dihedral angles need two distinct facets'
        raise ValueError(err_msg)
    spec = get_specifier(specifier)
    vset = enumerate_vertices(polytope, specifier=spec)
    shared = [k for k in vset.incident(i) if j in vset.active[k]]
    if _affine_rank(vset.points[shared], spec.vertex_tol) != polytope.dim - 2:
        return None
    cosine = numpy.dot(polytope.normals[i], polytope.normals[j])
    return float(numpy.arccos(numpy.clip(cosine, -1.0, 1.0)))


#==============================================================================
# EquiangularProfile
#==============================================================================
class EquiangularProfile(object):

    """
    Angles, gamma factors, Omega sums and incidence counts of a
    dimension-wise equiangular polytope
    """

    def __init__(self, dim, alphas, omegas, mus=None, epsilon_valid=None):
        self.dim = dim
        # alphas[k] for k = 2..d
        self.alphas = dict(alphas)
        self.omegas = list(omegas)
        self.mus = mus
        self.epsilon_valid = epsilon_valid

    @property
    def gammas(self):
        """
        [gamma_1, ..., gamma_d], gamma_d = 1
        """
        d = self.dim
        out = []
        for k in range(1, d + 1):
            out.append(float(numpy.prod([numpy.tan(0.5 * self.alphas[l])
                                         for l in range(k + 1, d + 1)])))
        return out

    def gamma_product(self, k):
        """
        gamma_{k+1} ... gamma_d (1 when k = d)
        """
        gammas = self.gammas
        return float(numpy.prod(gammas[k:]))

    def to_dict(self):
        return {'alphas': [self.alphas[k] for k in sorted(self.alphas)],
                'gammas': self.gammas,
                'omegas': self.omegas,
                'mus': self.mus}


class NotEquiangular(object):

    """
    The witness of a failed equiangularity check

    The witness names the lattice level, the face (by its facet chain), the
    facet pair and the angle found against the level's reference angle.
    """

    def __init__(self, level, chain, pair, angle, reference):
        self.level = level
        self.chain = chain
        self.pair = pair
        self.angle = angle
        self.reference = reference

    def __repr__(self):
        return ('NotEquiangular(level={0}, face={1}, facets={2}, angle={3!r}, '
                'expected={4!r})').format(self.level, self.chain, self.pair,
                                          self.angle, self.reference)


#==============================================================================
# check_dimensionwise_equiangular
#==============================================================================
def check_dimensionwise_equiangular(polytope, tol=None, specifier=None, lattice=None):
    """
    Verify that every k-face (k = 2..d) is equiangular with a common angle

    Parameters:
        polytope (Polytope): The polytope P
        tol (float): Absolute angle tolerance in radians (the specifier's
            angle_tol if None)
        specifier (Specifier): Tolerances to use (default if None)
        lattice (FaceLatticeNode): Precomputed face lattice of P

    Returns:
        EquiangularProfile or NotEquiangular: The profile, or a witness
    """
    spec = get_specifier(specifier)
    if tol is None:
        tol = spec.angle_tol
    if lattice is None:
        lattice = face_lattice(polytope, specifier=spec)

    alphas = {}
    for k in range(polytope.dim, 1, -1):
        reference = None
        for face in lattice.faces(k):
            poly = face.polytope
            for i in range(len(poly)):
                for j in range(i + 1, len(poly)):
                    angle = dihedral_angle(poly, i, j, specifier=spec)
                    if angle is None:
                        continue
                    if reference is None:
                        reference = angle
                    elif abs(angle - reference) > tol:
                        return NotEquiangular(k, face.chain, (i, j), angle, reference)
        alphas[k] = reference

    omegas = [omega(lattice, k) for k in range(polytope.dim + 1)]
    try:
        mus = incidence_counts(lattice)
    except NotUniformError:
        mus = None
    return EquiangularProfile(polytope.dim, alphas, omegas, mus=mus)


#==============================================================================
# omega
#==============================================================================
def omega(node, k):
    """
    Omega_k of a face: its volume when k is its dimension, otherwise the
    sum of Omega_k over its facets

    Parameters:
        node (FaceLatticeNode): The face
        k (int): Level, 0 <= k <= node.dim

    Returns:
        float: Omega_k
    """
    if k < 0 or k > node.dim:
        err_msg = 'Omega level {0} outside 0..{1}'.format(k, node.dim)
        raise ValueError(err_msg)
    if k == node.dim:
        return node.volume
    return sum(omega(child, k) for child in node.children)


def omega_by_flags(lattice, k):
    """
    Omega_k as sum_i mu_i vol_k(F'_i), mu_i counting the flags from the
    root down to the k-face F'_i
    """
    paths = {id(lattice): 1}
    for level in range(lattice.dim, k, -1):
        for face in lattice.faces(level):
            for child in face.children:
                paths[id(child)] = paths.get(id(child), 0) + paths.get(id(face), 0)
    return sum(paths.get(id(face), 0) * face.volume for face in lattice.faces(k))


#==============================================================================
# incidence_counts
#==============================================================================
def incidence_counts(lattice):
    """
    mu_(k), the number of k-faces containing each (k-1)-face, k = 1..d

    Raises NotUniformError with the level and the counts found when some
    level is not uniform.
    """
    mus = []
    for k in range(1, lattice.dim + 1):
        counts = sorted(set(len(face.parents) for face in lattice.faces(k - 1)))
        if len(counts) != 1:
            err_msg = 'Faces of dimension {0} lie in {1} faces of dimension {2}'.format(
                k - 1, counts, k)
            raise NotUniformError(err_msg, level=k, counts=counts)
        mus.append(counts[0])
    return mus


#==============================================================================
# EquiangularPolynomial
#==============================================================================
class EquiangularPolynomial(object):

    """
    The closed-form first phase of W and the interval it is valid on
    """

    def __init__(self, poly, valid_on, profile):
        self.poly = poly
        self.valid_on = valid_on
        self.profile = profile

    def to_dict(self):
        data = {'equiangular': True,
                'poly': [float(c) for c in self.poly.padded(self.profile.dim)],
                'valid_on': [float(x) for x in self.valid_on]}
        data.update(self.profile.to_dict())
        return data


def _closed_form(profile, weights):
    d = profile.dim
    coeffs = numpy.zeros(d + 1)
    for k in range(d + 1):
        coeffs[d - k] = ((-1) ** (d - k) * weights[k] * profile.gamma_product(k) /
                         factorial(d - k))
    return Polynomial(coeffs)


#==============================================================================
# equiangular_volume_polynomial
#==============================================================================
def equiangular_volume_polynomial(polytope, tol=None, specifier=None, inner=None):
    """
    The closed-form W_P of a dimension-wise equiangular polytope

    The form is valid from 0 up to the first breakpoint of the engine's W_P.

    Parameters:
        polytope (Polytope): The polytope P
        tol (float): Absolute angle tolerance (specifier's angle_tol if None)
        specifier (Specifier): Tolerances to use (default if None)
        inner (InnerVolumeFunction): Engine result for P (computed if None)

    Returns:
        EquiangularPolynomial: The polynomial, valid_on and the profile
    """
    spec = get_specifier(specifier)
    profile = check_dimensionwise_equiangular(polytope, tol=tol, specifier=spec)
    if isinstance(profile, NotEquiangular):
        err_msg = 'Polytope is not dimension-wise equiangular: {0!r}'.format(profile)
        raise NotEquiangularError(err_msg)

    if inner is None:
        inner = inner_volume_function(polytope, specifier=spec)
    profile.epsilon_valid = inner.W.breakpoints[1]
    poly = _closed_form(profile, profile.omegas)
    return EquiangularPolynomial(poly, (0.0, profile.epsilon_valid), profile)


#==============================================================================
# corollary_form
#==============================================================================
class CorollaryForm(object):

    def __init__(self, poly, mus, skeleton_vols):
        self.poly = poly
        self.mus = mus
        self.skeleton_vols = skeleton_vols


def _skeleton_volumes(lattice):
    return [sum(face.volume for face in lattice.faces(k))
            for k in range(lattice.dim + 1)]


def corollary_form(polytope, tol=None, specifier=None):
    """
    W_P written with the incidence counts mu_(k) and the k-skeleton volumes

    Parameters:
        polytope (Polytope): A dimension-wise equiangular polytope with
            uniform incidence counts
        tol (float): Absolute angle tolerance (specifier's angle_tol if None)
        specifier (Specifier): Tolerances to use (default if None)

    Returns:
        CorollaryForm: The polynomial, mu_(1..d) and vol_k(P_(k)), k = 0..d
    """
    spec = get_specifier(specifier)
    lattice = face_lattice(polytope, specifier=spec)
    mus = incidence_counts(lattice)
    profile = check_dimensionwise_equiangular(polytope, tol=tol, specifier=spec,
                                              lattice=lattice)
    if isinstance(profile, NotEquiangular):
        err_msg = 'Polytope is not dimension-wise equiangular: {0!r}'.format(profile)
        raise NotEquiangularError(err_msg)

    skeleton = _skeleton_volumes(lattice)
    weights = [float(numpy.prod(mus[k:])) * skeleton[k] for k in range(lattice.dim + 1)]
    return CorollaryForm(_closed_form(profile, weights), mus, skeleton)


#==============================================================================
# regular_identity_residuals
#==============================================================================
def regular_identity_residuals(polytope, specifier=None):
    """
    Relative residuals of d! vol_d = k! mu_(k+1)...mu_(d) vol_k(P_(k))
    gamma_{k+1}...gamma_d g^(d-k) for k = 0..d-1

    The identity holds for regular polytopes.
    """
    spec = get_specifier(specifier)
    lattice = face_lattice(polytope, specifier=spec)
    mus = incidence_counts(lattice)
    profile = check_dimensionwise_equiangular(polytope, specifier=spec, lattice=lattice)
    if isinstance(profile, NotEquiangular):
        err_msg = 'Polytope is not dimension-wise equiangular: {0!r}'.format(profile)
        raise NotEquiangularError(err_msg)

    d = polytope.dim
    g = inradius(polytope, specifier=spec).g
    skeleton = _skeleton_volumes(lattice)
    lhs = factorial(d) * skeleton[d]
    residuals = []
    for k in range(d):
        rhs = (factorial(k) * float(numpy.prod(mus[k:])) * skeleton[k] *
               profile.gamma_product(k) * g ** (d - k))
        residuals.append(abs(lhs - rhs) / abs(lhs))
    return residuals
