"""The Jonquieres group PGL2(k(x)) x| PGL2(k).

An element f = (h, A) acts on the affine chart by

    (x, y) -> (h(x), (a(x)*y + b(x)) / (c(x)*y + d(x)))

and the group law is (h1, A1) o (h2, A2) = (h1 o h2, A1(h2(x)) * A2(x)).
"""

from __future__ import (
    absolute_import, division, print_function, unicode_literals,
    )

__all__ = [
    'JonqElem',
    'PersistenceCertificate',
    'compose_jonq',
    'cremona_to_jonq',
    'inverse_jonq',
    'is_biregular_over',
    'jonq_degree',
    'jonq_to_cremona',
    'parse_jonq',
    'persistent_fibre_certificate',
    'singular_places',
    'structural_degree',
    ]


import logging

from .cremona import CremonaMap
from .errors import (
    InvalidInput, NotDominant, NotJonquieres, ParseError, UnsupportedPlace,
    VerificationError)
from .fibretrees import (
    JVertex, TreeVertex, act_on_vertex, bad_places, image_coordinate)
from .fields import RationalFunction, format_polynomial
from .moebius import FunctionMoebius, Moebius, classify_moebius, orbit_exponent
from .parser import parse_components


log = logging.getLogger(__name__)


def _lift(field, poly):
    """A polynomial of k[x] as an element of k[x, y, z]."""
    ring = field.plane_ring
    if not poly:
        return ring.zero
    return ring.from_dict(
        dict(((i, 0, 0), c) for (i,), c in poly.items()))


def _split_in_y(field, poly, text):
    """(p1, p0) with poly = p1(x)*y + p0(x); poly must not involve z."""
    ones, zeros = {}, {}
    for (i, j, k), c in poly.items():
        if k:
            raise ParseError('affine components must not involve z', text, 0)
        if j > 1:
            raise NotJonquieres('{} is not of degree one in y'.format(
                format_polynomial(poly, field)))
        (ones if j else zeros)[(i,)] = c
    ring = field.ring
    return (ring.from_dict(ones) if ones else ring.zero,
            ring.from_dict(zeros) if zeros else ring.zero)


def _univariate(field, value, text):
    """A plane rational function free of y and z, as a RationalFunction."""
    parts = []
    for poly in (value.numer, value.denom):
        ones, zeros = _split_in_y(field, poly, text)
        if ones:
            raise NotJonquieres('the fibration x = const is not preserved')
        parts.append(zeros)
    return RationalFunction(*parts)


def _from_affine(field, first, second, text=None):
    """Read (h(x), (a*y + b)/(c*y + d)) off two plane rational functions."""
    r = _univariate(field, first, text)
    try:
        h = Moebius.from_rational_function(r, field)
    except InvalidInput:
        raise NotJonquieres('{} is not a Moebius map of the base'.format(
            r.format(field)))
    a, b = _split_in_y(field, second.numer, text)
    c, d = _split_in_y(field, second.denom, text)
    try:
        A = FunctionMoebius(field, a, b, c, d)
    except InvalidInput:
        raise NotDominant('the fibre map does not depend on y')
    return JonqElem(h, A)


class JonqElem(object):
    """A Jonquieres element (h, A): h acts on the base, A on the fibres."""

    __slots__ = ('h', 'A')

    def __init__(self, h, A):
        if h.field != A.field:
            raise InvalidInput('horizontal and vertical parts over '
                               'different fields')
        self.h = h
        self.A = A

    @property
    def field(self):
        return self.h.field

    @classmethod
    def identity(cls, field):
        return cls(Moebius.identity(field), FunctionMoebius.identity(field))

    @classmethod
    def from_parts(cls, field, h, a, b, c, d):
        """Build from a Moebius map and four entries in k[x] or k(x)."""
        return cls(h, FunctionMoebius(field, a, b, c, d))

    @property
    def is_identity(self):
        return self.h.is_identity and self.A.is_identity

    def compose(self, other):
        """self o other."""
        return JonqElem(self.h.compose(other.h),
                        self.A.substitute(other.h).compose(other.A))

    def inverse(self):
        h_inverse = self.h.inverse()
        return JonqElem(h_inverse, self.A.substitute(h_inverse).inverse())

    def power(self, n):
        result = JonqElem.identity(self.field)
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        while n:
            if n & 1:
                result = result.compose(base)
            base = base.compose(base)
            n >>= 1
        return result

    def conjugate(self, phi):
        """phi o self o phi^-1."""
        return phi.compose(self).compose(phi.inverse())

    @property
    def degree(self):
        return jonq_degree(self)[0]

    def key(self):
        return (self.h.entries, self.A.entries)

    def __eq__(self, other):
        if not isinstance(other, JonqElem):
            return NotImplemented
        return self.h == other.h and self.A == other.A

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.h, self.A))

    def fibre_text(self):
        field = self.field
        y = field.plane_ring.gens[1]
        a, b, c, d = (_lift(field, e) for e in self.A.entries)
        numerator = format_polynomial(a * y + b, field)
        denominator = c * y + d
        if denominator == field.plane_ring.one:
            return numerator
        return '({})/({})'.format(
            numerator, format_polynomial(denominator, field))

    def __str__(self):
        return '({}, {})'.format(self.h, self.fibre_text())

    def __repr__(self):
        return '<JonqElem {}>'.format(self)


def compose_jonq(f1, f2):
    return f1.compose(f2)


def inverse_jonq(f):
    return f.inverse()


def parse_jonq(text, field):
    """Parse `(h(x), (a*y+b)/(c*y+d))` or a homogeneous triple."""
    kind, components = parse_components(text, field)
    if kind == 'affine':
        return _from_affine(field, components[0], components[1], text)
    polys = []
    for value in components:
        if not value.denom.is_ground:
            raise ParseError('homogeneous components must be polynomials',
                             text, 0)
        polys.append(value.numer.quo_ground(value.denom.LC))
    return cremona_to_jonq(CremonaMap(field, polys))


def cremona_to_jonq(g):
    """The Jonquieres element of a plane map preserving x = const."""
    field = g.field
    try:
        first, second = g.to_affine()
    except InvalidInput:
        raise NotJonquieres('{} moves the affine chart off itself'.format(g))
    return _from_affine(field, first, second)


def _degree(poly):
    return poly.degree() if poly else None


def structural_degree(f):
    """deg f read off the shape of (h, A), without any gcd computation.

    The triple [p*D : N*q : q*D] has degree n + 2; its common factor is a
    power of z of order at most one or two, or the denominator q of h when
    the whole denominator row of A vanishes at the pole of h.
    """
    a, b, c, e = f.A.entries
    n = f.A.degree
    alpha, beta, gamma, delta = f.h.entries

    def z_order(top, bottom):
        orders = []
        if top:
            orders.append(n - top.degree())
        if bottom:
            orders.append(n - bottom.degree() + 1)
        return min(orders)

    if not gamma:
        common = min(z_order(c, e), 1 + z_order(a, b))
    else:
        field = f.field
        pole = -delta / gamma
        at_infinity = (_degree(a) is None or a.degree() < n) and (
            _degree(c) is None or c.degree() < n)
        vanishes = (not c.evaluate(field.x, pole) if c else True) and (
            not e.evaluate(field.x, pole) if e else True)
        common = int(at_infinity) + int(vanishes)
    return n + 2 - common


def jonq_to_cremona(f):
    """The homogeneous triple of f, checked against its structural degree."""
    field = f.field
    fractions = field.plane_field
    y = fractions.gens[1]
    a, b, c, d = (fractions(_lift(field, e)) for e in f.A.entries)
    h = f.h.as_rational_function()
    first = fractions(_lift(field, h.num)) / fractions(_lift(field, h.den))
    second = (a * y + b) / (c * y + d)
    g = CremonaMap.from_affine(field, first, second)
    expected = structural_degree(f)
    if g.degree != expected:
        raise VerificationError('degree of {} is {}, expected {}'.format(
            f, g.degree, expected))
    return g


def jonq_degree(f):
    """(deg f, number of base points); 2*deg - 1 points when deg >= 2."""
    degree = jonq_to_cremona(f).degree
    return degree, (2 * degree - 1 if degree >= 2 else 0)


def singular_places(f, marking=None):
    """The source places P over which f is not biregular, sorted.

    With the base marking these are the bad places of A.  For a marking z
    they are the places h^-1(Q) at which f(z) and z differ.
    """
    if marking is None or marking.is_base:
        return sorted(bad_places(f.A))
    image = act_on_vertex(f, marking)
    targets = set(image.coordinates) | set(marking.coordinates)
    h_inverse = f.h.inverse()
    return sorted(h_inverse.apply(q) for q in targets
                  if image.coordinate(q) != marking.coordinate(q))


def is_biregular_over(f, place, marking=None):
    """True when f maps the marked vertex at P to the marked one at h(P)."""
    marking = marking or JVertex.base()
    image = image_coordinate(f.h, f.A, place, marking.coordinate(place))
    return image == marking.coordinate(f.h.apply(place))


class PersistenceCertificate(object):
    """Evidence that f has a persistent fibre over a place.

    `forward` and `backward` are the exponents k >= 0 for which h^k(P)
    (resp. h^-k(P)) lies in the singular places of f (resp. f^-1); past
    `escape` the orbit never returns to them.  Certificates built from a
    finite horizon only are marked `conclusive = False`.
    """

    def __init__(self, place, first, escape, forward, backward,
                 conclusive=True, horizon=None):
        self.place = place
        self.first = first
        self.escape = escape
        self.forward = tuple(forward)
        self.backward = tuple(backward)
        self.conclusive = conclusive
        self.horizon = horizon

    def as_json(self):
        return {
            'place': str(self.place),
            'l': self.first,
            'escape': self.escape,
            'forward': list(self.forward),
            'backward': list(self.backward),
            'conclusive': self.conclusive,
            'horizon': self.horizon,
            }

    @classmethod
    def from_json(cls, data, field):
        from .parser import parse_place
        return cls(parse_place(data['place'], field), data['l'],
                   data['escape'], data['forward'], data['backward'],
                   data['conclusive'], data['horizon'])

    def __eq__(self, other):
        if not isinstance(other, PersistenceCertificate):
            return NotImplemented
        return self.as_json() == other.as_json()

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return '<PersistenceCertificate {} l={} escape={}{}>'.format(
            self.place, self.first, self.escape,
            '' if self.conclusive else ' (horizon only)')

    def recheck(self, f, horizon):
        """Re-verify with genuine powers of f for l <= n <= horizon."""
        if self.conclusive:
            if _escape_exponents(f, self.place) != (
                    sorted(self.forward), sorted(self.backward)):
                return False
        forward = backward = f.power(self.first - 1)
        backward = backward.inverse()
        for n in range(self.first, horizon + 1):
            forward = f.compose(forward)
            backward = backward.compose(f.inverse())
            if is_biregular_over(forward, self.place):
                return False
            if not is_biregular_over(backward, self.place):
                return False
        return True


def _chains(f, place, length):
    """The coordinates f^k(base) at h^k(P) and f^-k(base) at h^-k(P)."""
    chains = []
    for g in (f, f.inverse()):
        vertex = TreeVertex.base(place)
        current = place
        chain = [vertex]
        for _ in range(length):
            vertex = image_coordinate(g.h, g.A, current, vertex)
            current = vertex.place
            chain.append(vertex)
        chains.append(chain)
    return chains


def _escape_exponents(f, place):
    """Sorted exponents k >= 0 with h^k(P) singular for f, h^-k(P) for f^-1.

    Raises UnsupportedPlace where orbit exponents cannot be solved exactly.
    """
    h = f.h
    forward = set()
    for q in singular_places(f):
        n = orbit_exponent(h, place, q)
        if n is not None and n >= 0:
            forward.add(n)
    backward = set()
    for q in singular_places(f.inverse()):
        n = orbit_exponent(h, place, q)
        if n is not None and n <= 0:
            backward.add(-n)
    return sorted(forward), sorted(backward)


def _first_persistent(chains, last):
    """The least l >= 1 such that the chain conditions hold on [l, last]."""
    forward, backward = chains
    first = None
    for n in range(last, 0, -1):
        if forward[n].is_base or not backward[n].is_base:
            break
        first = n
    return first


def persistent_fibre_certificate(f, place, horizon):
    """A certificate that f^n is singular and f^-n biregular over P for all
    large n, or None.

    Over Q the orbit of P under h is tracked exactly, so a returned
    certificate is a proof.  Elsewhere the chains are followed up to the
    horizon and the certificate is flagged as non-conclusive.
    """
    if horizon < 1:
        raise InvalidInput('the horizon must be at least 1')
    h = f.h
    if not classify_moebius(h).is_infinite_order or h.apply(place) == place:
        # A periodic fibre is never persistent.
        return None
    try:
        forward, backward = _escape_exponents(f, place)
    except UnsupportedPlace as error:
        log.debug('no exact escape data at %s: %s', place, error)
        chains = _chains(f, place, horizon)
        first = _first_persistent(chains, horizon)
        if first is None:
            return None
        return PersistenceCertificate(place, first, horizon, [], [],
                                      conclusive=False, horizon=horizon)
    if not forward and not backward:
        return None
    escape = max(forward + backward) + 1
    chains = _chains(f, place, escape)
    first = _first_persistent(chains, escape)
    if first is None:
        return None
    log.debug('persistent fibre of %s over %s from l = %d', f, place, first)
    return PersistenceCertificate(place, first, escape, forward, backward,
                                  conclusive=True, horizon=horizon)
