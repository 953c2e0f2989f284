"""Birational maps of the plane as homogeneous triples."""

from __future__ import (
    absolute_import, division, print_function, unicode_literals,
    )

__all__ = [
    'CremonaMap',
    'DynamicalDegree',
    'compose_cremona',
    'degree_sequence',
    'dynamical_degree_estimate',
    'format_map',
    'parse_map',
    ]


import random
import logging

from collections import namedtuple
from fractions import Fraction

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add, gf_degree, gf_gcd, gf_mul, gf_mul_ground, gf_quo)

from .errors import (
    InvalidInput, MissingInverse, NotDominant, ParseError, VerificationError)
from .fields import format_polynomial
from .parser import parse_components


log = logging.getLogger(__name__)


# Prime used for the degree lower bound along a line.
LINE_PRIME = 2147483647
LINE_SEED = 1729


def total_degree(poly):
    if not poly:
        return -1
    return max(sum(monom) for monom in poly.itermonoms())


def _is_homogeneous(poly):
    return len(set(sum(monom) for monom in poly.itermonoms())) <= 1


def homogenize(poly, degree):
    """z^degree * p(x/z, y/z) for a polynomial p free of z."""
    ring = poly.ring
    return ring.from_dict(
        {(i, j, degree - i - j): c for (i, j, k), c in poly.items()}
        ) if poly else ring.zero


class _PowerCache(object):
    def __init__(self, ring, images):
        self.one = ring.one
        self.powers = [[image] for image in images]

    def power(self, index, exponent):
        if exponent == 0:
            return self.one
        cached = self.powers[index]
        while len(cached) < exponent:
            cached.append(cached[-1] * cached[0])
        return cached[exponent - 1]


def _substitute(poly, cache):
    result = poly.ring.zero
    for (a, b, c), coeff in poly.iterterms():
        result += (cache.power(0, a) * cache.power(1, b)
                   * cache.power(2, c) * coeff)
    return result


class CremonaMap(object):
    """[x:y:z] -> [f0:f1:f2] with coprime homogeneous f_i of equal degree.

    The first nonzero component has leading coefficient one.  A verified
    inverse may be attached with `with_inverse()`.
    """

    def __init__(self, field, components, inverse=None):
        components = list(components)
        if len(components) != 3:
            raise InvalidInput('a plane map has three components')
        if not any(components):
            raise NotDominant('all components vanish')
        degrees = set()
        for component in components:
            if component:
                if not _is_homogeneous(component):
                    raise InvalidInput('component is not homogeneous: {}'
                                       .format(format_polynomial(
                                           component, field)))
                degrees.add(total_degree(component))
        if len(degrees) != 1:
            raise InvalidInput('components have different degrees')
        # Fold the gcd starting from the sparsest component.
        common = None
        for component in sorted((c for c in components if c), key=len):
            common = component if common is None else common.gcd(component)
            if common.is_ground:
                break
        if not common.is_ground:
            components = [c.exquo(common) for c in components]
        lc = next(c for c in components if c).LC
        self.field = field
        self.components = tuple(c.quo_ground(lc) for c in components)
        self._inverse = inverse

    @classmethod
    def identity(cls, field):
        x, y, z = field.plane_ring.gens
        return cls(field, [x, y, z])

    @classmethod
    def from_affine(cls, field, first, second):
        """Homogenize (X, Y) -> (first, second) through X = x/z, Y = y/z.

        The arguments are elements of the rational function field k(x, y,
        z) which must not involve z.
        """
        for value in (first, second):
            for poly in (value.numer, value.denom):
                if any(k for (i, j, k) in poly.itermonoms()):
                    raise ParseError('affine components must not involve z')
        common = first.denom.lcm(second.denom)
        polys = [first.numer * common.exquo(first.denom),
                 second.numer * common.exquo(second.denom),
                 common]
        degree = max(total_degree(p) for p in polys)
        return cls(field, [homogenize(p, degree) for p in polys])

    @property
    def degree(self):
        return max(total_degree(c) for c in self.components)

    @property
    def is_identity(self):
        return self == CremonaMap.identity(self.field)

    @property
    def has_inverse(self):
        return self._inverse is not None

    def compose(self, other):
        """self o other: substitute the components of other into self."""
        cache = _PowerCache(self.field.plane_ring, other.components)
        components = [_substitute(c, cache) for c in self.components]
        if not any(components):
            raise NotDominant('composition vanishes identically')
        inverse = None
        if self._inverse is not None and other._inverse is not None:
            inverse = other._inverse.compose(self._inverse)
        return CremonaMap(self.field, components, inverse)

    def with_inverse(self, inverse):
        """Attach an inverse after checking both compositions."""
        identity = CremonaMap.identity(self.field)
        if (self.compose(inverse) != identity
                or inverse.compose(self) != identity):
            raise MissingInverse('{} is not the inverse of {}'.format(
                inverse, self))
        if inverse.degree != self.degree:
            raise InvalidInput('inverse of a different degree')
        bare = CremonaMap(self.field, inverse.components)
        return CremonaMap(self.field, self.components, bare)

    def inverse(self):
        if self._inverse is None:
            raise MissingInverse('no inverse supplied for {}'.format(self))
        return CremonaMap(self.field, self._inverse.components, self)

    def power(self, n):
        if n < 0:
            return self.inverse().power(-n)
        result = CremonaMap.identity(self.field)
        for _ in range(n):
            result = self.compose(result)
        return result

    def to_affine(self):
        """The pair (f0/f2, f1/f2) at z = 1, in k(x, y, z)."""
        fractions = self.field.plane_field
        z = self.field.plane_ring.gens[2]
        f0, f1, f2 = (c.subs(z, 1) for c in self.components)
        if not f2:
            raise InvalidInput('{} maps the affine chart to the line at '
                               'infinity'.format(self))
        return fractions(f0) / fractions(f2), fractions(f1) / fractions(f2)

    def key(self):
        return self.components

    def __eq__(self, other):
        if not isinstance(other, CremonaMap):
            return NotImplemented
        return self.components == other.components

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        return '[{}]'.format(' : '.join(
            format_polynomial(c, self.field) for c in self.components))

    def __repr__(self):
        return '<CremonaMap {}>'.format(self)


def parse_map(text, field):
    """Parse an affine pair `(e1, e2)` or a triple `[f0 : f1 : f2]`."""
    kind, components = parse_components(text, field)
    if kind == 'affine':
        return CremonaMap.from_affine(field, *components)
    polys = []
    for value in components:
        if not value.denom.is_ground:
            raise ParseError('homogeneous components must be polynomials',
                             text, 0)
        polys.append(value.numer.quo_ground(value.denom.LC))
    try:
        return CremonaMap(field, polys)
    except NotDominant:
        raise
    except InvalidInput as error:
        raise ParseError(str(error), text, 0)


def format_map(f):
    """Canonical re-parseable text of a map: `[f0 : f1 : f2]`."""
    return str(f)


def compose_cremona(f, g):
    return f.compose(g)


class _LineRestriction(object):
    """Iterates f on a fixed line, modulo a large prime.

    The reduced parametrisation of f^n along the line has degree at most
    deg(f^n), so each step yields a lower bound.  A degenerate reduction
    returns 0, which bounds nothing.
    """

    def __init__(self, f, prime=LINE_PRIME):
        self.p = prime
        self.alive = True
        self.terms = []
        for component in f.components:
            terms = []
            for monom, coeff in component.iterterms():
                value = self._reduce(f.field, coeff)
                if value is None:
                    self.alive = False
                    return
                terms.append((monom, value))
            self.terms.append(terms)
        rng = random.Random(LINE_SEED)
        # s*P + t*Q with s = 1, as polynomials in t (high degree first).
        self.curve = [[rng.randrange(1, self.p), rng.randrange(1, self.p)]
                      for _ in range(3)]

    def _reduce(self, field, coeff):
        p = self.p
        if getattr(field, 'p', None) is not None:
            if field.p != p:
                self.p = field.p
            return int(coeff) % field.p
        if not field.is_rational:
            return None
        value = field.to_fraction(coeff)
        if value.denominator % p == 0:
            return None
        return value.numerator * pow(value.denominator, p - 2, p) % p

    def step(self):
        if not self.alive:
            return 0
        p, K = self.p, ZZ
        powers = [[[1]] for _ in range(3)]

        def power(index, exponent):
            cached = powers[index]
            while len(cached) <= exponent:
                cached.append(gf_mul(cached[-1], self.curve[index], p, K))
            return cached[exponent]

        image = []
        for terms in self.terms:
            total = []
            for (a, b, c), coeff in terms:
                product = gf_mul(gf_mul(power(0, a), power(1, b), p, K),
                                 power(2, c), p, K)
                total = gf_add(total, gf_mul_ground(product, coeff, p, K),
                               p, K)
            image.append(total)
        nonzero = [g for g in image if g]
        if not nonzero:
            self.alive = False
            return 0
        common = nonzero[0]
        for g in nonzero[1:]:
            common = gf_gcd(common, g, p, K)
        image = [gf_quo(g, common, p, K) if g else [] for g in image]
        self.curve = image
        return max(gf_degree(g) for g in image)


def degree_sequence(f, horizon):
    """[deg(f), deg(f^2), ..., deg(f^horizon)], each degree exact.

    A degree is settled without composing when the lower bound along a line
    meets the upper bound deg(f^(n-1)) * deg(f); otherwise f^n is composed
    in full.
    """
    if horizon < 1:
        raise InvalidInput('horizon must be at least 1')
    line = _LineRestriction(f)
    degrees = [f.degree]
    line.step()
    power, computed = f, 1
    for n in range(2, horizon + 1):
        upper = degrees[-1] * f.degree
        lower = line.step()
        if lower > upper:
            raise VerificationError('line bound {} exceeds {} at n = {}'
                                    .format(lower, upper, n))
        if lower == upper:
            degrees.append(upper)
            continue
        while computed < n:
            power = f.compose(power)
            computed += 1
        degrees.append(power.degree)
        log.debug('deg(f^%d) = %d by composition', n, degrees[-1])
    return degrees


DynamicalDegree = namedtuple(
    'DynamicalDegree', 'lower upper ratios monotone degrees')


def integer_root_bracket(value, n, precision=1000):
    """Rationals lo <= value^(1/n) <= hi with hi - lo <= 1/precision."""
    target = value * precision ** n
    low, high = 0, 1
    while high ** n <= target:
        high *= 2
    # Largest k with k^n <= target.
    while high - low > 1:
        middle = (low + high) // 2
        if middle ** n <= target:
            low = middle
        else:
            high = middle
    lower = Fraction(low, precision)
    if low ** n == target:
        return lower, lower
    return lower, Fraction(low + 1, precision)


def dynamical_degree_estimate(f, horizon):
    """Bracket deg(f^N)^(1/N) and report the successive degree ratios."""
    if horizon < 4:
        raise InvalidInput('dynamical degree estimates need N >= 4')
    degrees = degree_sequence(f, horizon)
    lower, upper = integer_root_bracket(degrees[-1], horizon)
    ratios = [Fraction(b, a) for a, b in zip(degrees, degrees[1:])]
    monotone = all(r >= s for r, s in zip(ratios, ratios[1:]))
    return DynamicalDegree(lower, upper, ratios, monotone, degrees)
