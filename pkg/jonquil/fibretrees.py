"""Per-place trees of fibre models and their restricted product.

At a place P with uniformizer pi, an Even vertex is the class of the lattice
spanned by the columns of [[pi^d, u], [0, 1]], i.e. the ball of radius d
around u in the completed local field; d is any integer and u is only known
modulo pi^d.  Odd vertices are the edges between adjacent balls.  In the
subdivided tree a vertex is a pair (level, centre): level 2d for the ball
B(u, d), level 2d - 1 for the edge from B(u, d - 1) down to B(u, d).  All
distances are counted in the subdivided tree, so one elementary
transformation has length two.

Centres are kept in the local chart of the place: x itself at finite places,
t = 1/x at infinity (written with the same ring variable).
"""

from __future__ import (
    absolute_import, division, print_function, unicode_literals,
    )

__all__ = [
    'JVertex',
    'LinearAction',
    'PlaceAction',
    'TreeVertex',
    'act_on_vertex',
    'bad_places',
    'canonicalize_lattice',
    'common_fixed_vertex',
    'elementary_transformation_count',
    'elliptic_fixed_vertex',
    'finite_orbit_center',
    'geodesic_point',
    'image_coordinate',
    'isometry_translation_length',
    'translation_length_at_place',
    'tree_distance',
    ]


import logging

from collections import namedtuple

from .errors import InvalidInput, PlaceMismatch, VerificationError
from .fields import INFINITY, Place, RationalFunction, places_of, valuation


log = logging.getLogger(__name__)


def _ceil_half(level):
    return -((-level) // 2)


def _local_place(place):
    """The place of the local chart variable: P itself, or (t) at infinity."""
    if place.is_infinity:
        return Place(place.field, place.field.x)
    return place


def reduce_centre(centre, place, level):
    """The centre modulo pi^ceil(level/2), as r / pi^m in lowest terms."""
    local = _local_place(place)
    k = _ceil_half(level)
    v = valuation(centre, local)
    if v >= k:
        return RationalFunction(place.field.ring.zero)
    pi = local.poly
    m = max(0, -v)
    pole = pi ** m
    rest = centre.den.exquo(pole) if m else centre.den
    modulus = pi ** (m + k)
    # rest is prime to pi; invert it modulo pi^(m+k).
    s, _, g = rest.gcdex(modulus)
    if g.degree() != 0:
        raise VerificationError('centre denominator not prime to the place')
    s = s.quo_ground(g.LC)
    remainder = (centre.num * s).rem(modulus)
    return RationalFunction(remainder, pole)


class TreeVertex(object):
    """A vertex (level, centre) of the subdivided tree at one place."""

    __slots__ = ('place', 'level', 'centre')

    def __init__(self, place, level, centre=None, reduced=False):
        if centre is None:
            centre = RationalFunction(place.field.ring.zero)
        elif not isinstance(centre, RationalFunction):
            centre = RationalFunction(place.field.ring(centre))
        if not reduced:
            centre = reduce_centre(centre, place, level)
        self.place = place
        self.level = level
        self.centre = centre

    @classmethod
    def base(cls, place):
        return cls(place, 0, reduced=True)

    @classmethod
    def even(cls, place, d, centre=None):
        return cls(place, 2 * d, centre)

    @property
    def is_even(self):
        return self.level % 2 == 0

    @property
    def kind(self):
        return 'Even' if self.is_even else 'Odd'

    @property
    def radius(self):
        """d of the ball, or of the lower end of the edge for Odd vertices."""
        return _ceil_half(self.level)

    @property
    def is_base(self):
        return self.level == 0 and not self.centre

    def endpoints(self):
        """The two Even neighbours of an Odd vertex, parent first."""
        if self.is_even:
            raise InvalidInput('only Odd vertices have endpoints')
        return (TreeVertex(self.place, self.level - 1, self.centre),
                TreeVertex(self.place, self.level + 1, self.centre))

    def local_matrix(self):
        """[[pi^d, u], [0, 1]] in the local chart."""
        if not self.is_even:
            raise InvalidInput('Odd vertices have no lattice matrix')
        field = self.place.field
        pi = RationalFunction(_local_place(self.place).poly)
        one = RationalFunction(field.ring.one)
        return (pi ** (self.level // 2), self.centre,
                RationalFunction(field.ring.zero), one)

    def key(self):
        return (self.place.sort_key(), self.level, self.centre.num,
                self.centre.den)

    def sort_key(self):
        field = self.place.field
        coefficients = tuple(
            tuple(field.scalar_key(c) for c in field.coefficients(p))
            for p in (self.centre.num, self.centre.den))
        return (self.place.sort_key(), self.level, coefficients)

    def __eq__(self, other):
        if not isinstance(other, TreeVertex):
            return NotImplemented
        return (self.place == other.place and self.level == other.level
                and self.centre == other.centre)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.place, self.level, self.centre))

    def global_centre(self):
        return self.place.from_local(self.centre)

    def record(self):
        """The (place, kind, d, u) serialisation, u in the global x."""
        return [str(self.place), self.kind, self.radius,
                self.global_centre().format(self.place.field)]

    def __str__(self):
        return '{}({}, {}) at {}'.format(
            self.kind, self.radius,
            self.global_centre().format(self.place.field), self.place)

    def __repr__(self):
        return '<TreeVertex {}>'.format(self)


def tree_distance(v, w):
    """Distance in the subdivided tree."""
    if v.place != w.place:
        raise PlaceMismatch('{} and {} live over different places'.format(
            v.place, w.place))
    return v.level + w.level - 2 * _meet_level(v, w)


def _meet_level(v, w):
    gap = valuation(v.centre - w.centre, _local_place(v.place))
    return min(v.level, w.level, 2 * gap if gap != INFINITY else INFINITY)


def elementary_transformation_count(v, w):
    return tree_distance(v, w) // 2


def geodesic_point(v, w, k):
    """The vertex at distance k from v on the geodesic to w."""
    meet = _meet_level(v, w)
    if not 0 <= k <= v.level + w.level - 2 * meet:
        raise InvalidInput('{} is off the geodesic'.format(k))
    climb = v.level - meet
    if k <= climb:
        return TreeVertex(v.place, v.level - k, v.centre)
    return TreeVertex(w.place, meet + (k - climb), w.centre)


def midpoint(v, w):
    distance = tree_distance(v, w)
    if distance % 2:
        raise InvalidInput('odd distance has no midpoint vertex')
    return geodesic_point(v, w, distance // 2)


def canonicalize_lattice(matrix, place):
    """The Even vertex of the lattice spanned by the columns of a matrix.

    The matrix (a, b, c, e) has entries in k(x) written in the local chart of
    the place.
    """
    a, b, c, e = matrix
    det = a * e - b * c
    if not det:
        raise InvalidInput('singular lattice matrix')
    local = _local_place(place)
    vdet = valuation(det, local)
    if valuation(e, local) <= valuation(c, local):
        d = vdet - 2 * valuation(e, local)
        u = b / e
    else:
        d = vdet - 2 * valuation(c, local)
        u = a / c
    return TreeVertex(place, 2 * d, u)


def _multiply(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def bad_places(A):
    """Source places where A is not invertible over the local ring.

    These are the factors of det A, plus infinity when the degree of det A
    falls short of twice the degree of A.
    """
    det = A.det
    places = places_of(det, A.field)
    if det.degree() < 2 * A.degree:
        places.append(Place.infinity(A.field))
    return places


def _global_entries(A, h_inverse):
    if h_inverse is not None:
        A = A.substitute(h_inverse)
    return tuple(RationalFunction(e) for e in A.entries)


def image_coordinate(h, A, place, vertex):
    """The coordinate at h(P) of the image of a vertex at P.

    The map is (x, y) -> (h(x), A(x) y); h may be None for the identity.
    """
    target = place if h is None else h.apply(place)
    if not vertex.is_even:
        upper, lower = vertex.endpoints()
        return midpoint(image_coordinate(h, A, place, upper),
                        image_coordinate(h, A, place, lower))
    h_inverse = None if h is None else h.inverse()
    matrix = tuple(place.from_local(e) for e in vertex.local_matrix())
    if h_inverse is not None:
        matrix = tuple(e.compose_moebius(h_inverse.entries) for e in matrix)
    product = _multiply(_global_entries(A, h_inverse), matrix)
    return canonicalize_lattice(
        tuple(target.to_local(e) for e in product), target)


class JVertex(object):
    """A finitely supported choice of tree vertex at every place.

    Only coordinates different from the base vertex are stored.
    """

    __slots__ = ('coordinates',)

    def __init__(self, coordinates=None):
        coordinates = coordinates or {}
        if not isinstance(coordinates, dict):
            coordinates = dict((v.place, v) for v in coordinates)
        self.coordinates = dict(
            (place, vertex) for place, vertex in coordinates.items()
            if not vertex.is_base)

    @classmethod
    def base(cls):
        return cls()

    def coordinate(self, place):
        vertex = self.coordinates.get(place)
        return TreeVertex.base(place) if vertex is None else vertex

    @property
    def support(self):
        return sorted(self.coordinates)

    @property
    def is_base(self):
        return not self.coordinates

    def replace(self, place, vertex):
        coordinates = dict(self.coordinates)
        coordinates[place] = vertex
        return JVertex(coordinates)

    def __eq__(self, other):
        if not isinstance(other, JVertex):
            return NotImplemented
        return self.coordinates == other.coordinates

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(frozenset(self.coordinates.items()))

    def records(self):
        return [self.coordinates[place].record() for place in self.support]

    def __str__(self):
        if not self.coordinates:
            return 'base'
        return '{' + ', '.join(
            '{}: {}'.format(place, self.coordinates[place])
            for place in self.support) + '}'

    def __repr__(self):
        return '<JVertex {}>'.format(self)

    @classmethod
    def from_records(cls, records, field):
        from .parser import parse_function_of_x, parse_place
        coordinates = {}
        for place_text, kind, d, centre_text in records:
            place = parse_place(place_text, field)
            centre = place.to_local(parse_function_of_x(centre_text, field))
            if kind == 'Even':
                level = 2 * d
            elif kind == 'Odd':
                level = 2 * d - 1
            else:
                raise InvalidInput('unknown vertex kind {!r}'.format(kind))
            coordinates[place] = TreeVertex(place, level, centre)
        return cls(coordinates)


def act_on_vertex(f, v):
    """f(v) with f(v)_Q = f(v_{h^-1(Q)})."""
    sources = set(v.coordinates) | set(bad_places(f.A))
    coordinates = {}
    for place in sources:
        image = image_coordinate(f.h, f.A, place, v.coordinate(place))
        coordinates[image.place] = image
    return JVertex(coordinates)


def translation_length_at_place(A, place):
    """Translation length of a linear map on the tree at a place."""
    vdet = valuation(A.det, place)
    vtrace = valuation(A.trace, place)
    if vtrace == INFINITY:
        return 0
    return 2 * max(0, vdet - 2 * vtrace)


class PlaceAction(object):
    """The isometry of the tree at P induced by f, when h(P) = P.

    When h is not the identity the action is only semilinear.
    """

    def __init__(self, f, place):
        if f.h.apply(place) != place:
            raise PlaceMismatch('{} does not fix {}'.format(f.h, place))
        self.f = f
        self.place = place

    def apply(self, vertex):
        return image_coordinate(self.f.h, self.f.A, self.place, vertex)

    def translation_length(self):
        return isometry_translation_length(self)

    def compose(self, other):
        return PlaceAction(self.f.compose(other.f), self.place)


class LinearAction(object):
    """A matrix over k(x) acting on the tree at one place."""

    def __init__(self, A, place):
        self.A = A
        self.place = place

    def apply(self, vertex):
        return image_coordinate(None, self.A, self.place, vertex)

    def translation_length(self):
        return translation_length_at_place(self.A, self.place)

    def compose(self, other):
        return LinearAction(self.A.compose(other.A), self.place)


def isometry_translation_length(g, vertex=None):
    """max(0, d(v, g^2 v) - d(v, g v)), which does not depend on v."""
    if vertex is None:
        vertex = TreeVertex.base(g.place)
    image = g.apply(vertex)
    return max(0, tree_distance(vertex, g.apply(image))
               - tree_distance(vertex, image))


def _as_action(g, place):
    if hasattr(g, 'apply') and hasattr(g, 'translation_length'):
        return g
    return LinearAction(g, place)


def elliptic_fixed_vertex(A, place):
    """A vertex fixed by A, or None when A translates along an axis."""
    g = _as_action(A, place)
    if g.translation_length() > 0:
        return None
    base = TreeVertex.base(place)
    fixed = midpoint(base, g.apply(base))
    if g.apply(fixed) != fixed:
        raise VerificationError('midpoint of an elliptic displacement moved')
    return fixed


def _project(g, vertex):
    return midpoint(vertex, g.apply(vertex))


CommonFixed = namedtuple('CommonFixed', 'vertex witness')


def common_fixed_vertex(maps, place):
    """A vertex fixed by every map, or a witness with positive translation.

    The witness is a tuple of indices into `maps`: (i,) when maps[i] itself
    is hyperbolic, (i, j) when maps[i] o maps[j] is.
    """
    actions = [_as_action(g, place) for g in maps]
    for i, g in enumerate(actions):
        if g.translation_length() > 0:
            return CommonFixed(None, (i,))
    # Fixed subtrees are convex, so one pass of projections lands in the
    # intersection whenever it is nonempty.
    vertex = TreeVertex.base(place)
    for g in actions:
        vertex = _project(g, vertex)
    if all(g.apply(vertex) == vertex for g in actions):
        return CommonFixed(vertex, None)
    # Some pair has disjoint fixed subtrees; its product is hyperbolic.
    base = TreeVertex.base(place)
    for i, g in enumerate(actions):
        for j, k in enumerate(actions):
            if j == i:
                continue
            meet = _project(k, _project(g, base))
            if g.apply(meet) != meet:
                product = g.compose(k)
                if product.translation_length() <= 0:
                    raise VerificationError(
                        'product of elliptics with disjoint fixed trees '
                        'is elliptic')
                return CommonFixed(None, (i, j))
    raise VerificationError('no disjoint pair among failing elliptics')


def finite_orbit_center(orbit):
    """The centre of a finite set of vertices at one place.

    For an odd diameter the Even end of the central edge is chosen, which
    keeps the answer invariant under every isometry preserving the set.
    """
    orbit = sorted(set(orbit), key=TreeVertex.sort_key)
    if not orbit:
        raise InvalidInput('empty orbit')
    places = set(v.place for v in orbit)
    if len(places) != 1:
        raise PlaceMismatch('orbit spans several places')

    def farthest(start):
        return max(orbit, key=lambda v: tree_distance(start, v))

    one = farthest(orbit[0])
    other = farthest(one)
    diameter = tree_distance(one, other)
    if diameter % 2 == 0:
        return geodesic_point(one, other, diameter // 2)
    candidate = geodesic_point(one, other, diameter // 2)
    if candidate.is_even:
        return candidate
    return geodesic_point(one, other, diameter // 2 + 1)
