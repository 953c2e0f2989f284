"""PGL2 over the base field and over k(x)."""

from __future__ import (
    absolute_import, division, print_function, unicode_literals,
    )

__all__ = [
    'FiniteOrder',
    'FunctionMoebius',
    'Identity',
    'Moebius',
    'NorthSouth',
    'SemisimpleInfinite',
    'UnipotentInfinite',
    'classify_moebius',
    'compose',
    'conjugator_to_infinity',
    'eigen_ratio',
    'find_ns_place',
    'fixed_points',
    'inverse',
    'orbit_exponent',
    ]


import logging

from collections import namedtuple
from fractions import Fraction
from functools import reduce

from sympy import factorint

from .errors import InvalidInput, NoneFiniteOrder, UnsupportedPlace
from .fields import (
    ArchimedeanReal, GREATER_THAN_ONE, LESS_THAN_ONE, ONE, PAdic, Place,
    QuadExtElem, RationalFunction, format_polynomial, norm_compare,
    padic_valuation, place_image, places_of, substitute_moebius)


log = logging.getLogger(__name__)


# r = tr^2/det for the finite orders; mu + 1/mu = r - 2 with mu a root of
# unity of degree at most two.
FINITE_ORDER_RATIOS = {0: 2, 1: 3, 2: 4, 3: 6}

# Orders of roots of unity of degree at most four over Q.
_SMALL_ORDERS = (2, 3, 4, 5, 6, 8, 10, 12)


class MoebiusClass(object):
    tag = None
    order = None
    ratio = None

    @property
    def is_infinite_order(self):
        return self.order is None

    def _key(self):
        return (self.tag, self.order, self.ratio)

    def __eq__(self, other):
        return isinstance(other, MoebiusClass) and self._key() == other._key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return '<{}>'.format(self)

    def __str__(self):
        return self.tag


class Identity(MoebiusClass):
    tag = 'Identity'
    order = 1


class FiniteOrder(MoebiusClass):
    tag = 'FiniteOrder'

    def __init__(self, order):
        self.order = order

    def __str__(self):
        return 'FiniteOrder({})'.format(self.order)


class UnipotentInfinite(MoebiusClass):
    tag = 'UnipotentInfinite'


class SemisimpleInfinite(MoebiusClass):
    tag = 'SemisimpleInfinite'

    def __init__(self, ratio):
        self.ratio = ratio

    def __str__(self):
        return 'SemisimpleInfinite(r = {})'.format(self.ratio)


class Moebius(object):
    """x -> (a*x + b)/(c*x + d) over a base field.

    The matrix is scaled so that its first nonzero entry in reading order is
    one, which makes equality and hashing well defined on PGL2.
    """

    __slots__ = ('field', 'entries')

    def __init__(self, field, a, b, c, d):
        a, b, c, d = (field.convert(e) for e in (a, b, c, d))
        if not (a * d - b * c):
            raise InvalidInput('singular Moebius matrix')
        pivot = next(e for e in (a, b, c, d) if e)
        self.field = field
        self.entries = tuple(e / pivot for e in (a, b, c, d))

    @classmethod
    def identity(cls, field):
        return cls(field, 1, 0, 0, 1)

    @classmethod
    def from_rational_function(cls, r, field):
        """The Moebius map given by a rational function of degree one."""
        if r.num.degree() > 1 or r.den.degree() > 1:
            raise InvalidInput('not a Moebius map: {}'.format(r.format(field)))
        a, b = r.num.coeff(field.x), r.num.coeff(1)
        c, d = r.den.coeff(field.x), r.den.coeff(1)
        return cls(field, a, b, c, d)

    @property
    def det(self):
        a, b, c, d = self.entries
        return a * d - b * c

    @property
    def trace(self):
        return self.entries[0] + self.entries[3]

    @property
    def is_identity(self):
        a, b, c, d = self.entries
        return not b and not c and a == d

    def compose(self, other):
        """self o other, i.e. the matrix product self * other."""
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return Moebius(self.field, a * e + b * g, a * f + b * h,
                       c * e + d * g, c * f + d * h)

    def inverse(self):
        a, b, c, d = self.entries
        return Moebius(self.field, d, -b, -c, a)

    def power(self, n):
        result = Moebius.identity(self.field)
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        while n:
            if n & 1:
                result = result.compose(base)
            base = base.compose(base)
            n >>= 1
        return result

    def apply(self, target):
        """Image of a Place, or of a scalar (None stands for infinity)."""
        if isinstance(target, Place):
            return place_image(target, self.entries)
        a, b, c, d = self.entries
        if target is None:
            return a / c if c else None
        den = c * target + d
        if not den:
            return None
        return (a * target + b) / den

    __call__ = apply

    def as_rational_function(self):
        a, b, c, d = self.entries
        x = self.field.x
        return RationalFunction(x * a + b, x * c + d)

    def __eq__(self, other):
        if not isinstance(other, Moebius):
            return NotImplemented
        return self.entries == other.entries

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.entries)

    def __str__(self):
        return self.as_rational_function().format(self.field)

    def __repr__(self):
        return '<Moebius {}>'.format(self)


def compose(m1, m2):
    return m1.compose(m2)


def inverse(m):
    return m.inverse()


def _power_order(m, bound):
    power = m
    for n in range(1, bound + 1):
        if power.is_identity:
            return n
        power = power.compose(m)
    return None


def classify_moebius(m):
    """Identity, FiniteOrder(n), UnipotentInfinite or SemisimpleInfinite(r)."""
    if m.is_identity:
        return Identity()
    field = m.field
    if hasattr(field, 'p'):
        # PGL2(F_p) is finite; element orders divide p-1, p or p+1.
        order = _power_order(m, field.p + 1)
        if order is None:
            order = _power_order(m, field.p ** 3)
        return FiniteOrder(order)
    det = m.det
    trace = m.trace
    if trace * trace == det * 4:
        return UnipotentInfinite()
    r = trace * trace / det
    if field.is_rational:
        r = field.to_fraction(r)
        if r.denominator == 1 and r.numerator in FINITE_ORDER_RATIOS:
            return FiniteOrder(FINITE_ORDER_RATIOS[r.numerator])
        return SemisimpleInfinite(r)
    order = _power_order(m, max(_SMALL_ORDERS))
    if order is not None:
        return FiniteOrder(order)
    return SemisimpleInfinite(field.to_quad(r))


def fixed_points(m):
    """The fixed closed points of a non-identity map, in place order."""
    if m.is_identity:
        raise InvalidInput('the identity fixes every place')
    field = m.field
    a, b, c, d = m.entries
    x = field.x
    equation = x * x * c + x * (d - a) - b
    points = places_of(equation, field)
    if not c:
        points.append(Place.infinity(field))
    return sorted(points)


def conjugator_to_infinity(field, place):
    """A Moebius map sending a degree one place to infinity."""
    if place.is_infinity:
        return Moebius.identity(field)
    return Moebius(field, 0, 1, 1, -place.root)


def _squarefree_split(value):
    """Write a nonzero rational as s^2 * d with d a squarefree integer."""
    value = Fraction(value)
    n = value.numerator * value.denominator
    d, s = (-1 if n < 0 else 1), 1
    for p, e in factorint(abs(n)).items():
        d *= p ** (e % 2)
        s *= p ** (e // 2)
    return Fraction(s, value.denominator), d


def _eigen_data(m):
    """Fixed points with their eigenvalues, as exact rationals or QuadExtElem.

    Each item is (point, eigenvalue) with point None for infinity; the
    derivative of m at a fixed point is the ratio of the other eigenvalue to
    its own.
    """
    field = m.field
    a, b, c, d = (field.to_fraction(e) for e in m.entries)
    trace = a + d
    discriminant = trace * trace - 4 * (a * d - b * c)
    if discriminant == 0:
        raise NoneFiniteOrder('unipotent maps have a single fixed point')
    s, radicand = _squarefree_split(discriminant)
    if radicand == 1:
        roots = [(trace + s) / 2, (trace - s) / 2]
    else:
        roots = [QuadExtElem(trace / 2, s / 2, radicand),
                 QuadExtElem(trace / 2, -s / 2, radicand)]
    data = []
    for eigenvalue in roots:
        if c:
            data.append(((eigenvalue - d) / c, eigenvalue))
        elif eigenvalue == a:
            data.append((None, eigenvalue))
        else:
            data.append((b / (eigenvalue - a), eigenvalue))
    return data


NorthSouth = namedtuple(
    'NorthSouth',
    'place attracting repelling ratio attracting_root')


def _ns_number_place(ratio):
    if isinstance(ratio, QuadExtElem) and ratio.d < 0:
        # |mu|_inf = 1; a prime dividing the denominator of mu + 1/mu sees
        # mu as a non-unit.
        trace = ratio + ratio.inverse()
        if not trace.is_rational:
            raise UnsupportedPlace('unexpected eigenvalue ratio {}'.format(
                ratio))
        for p in sorted(factorint(trace.a.denominator)):
            place = PAdic(p)
            if padic_valuation(ratio, place) != 0:
                return place
        raise NoneFiniteOrder('{} is a root of unity'.format(ratio))
    return ArchimedeanReal()


def find_ns_place(m):
    """A number place where m has north-south dynamics.

    Returns (place, attracting, repelling, ratio, attracting_root) where
    ratio is the eigenvalue ratio with |ratio|_v > 1, i.e. the multiplier of
    m in a coordinate sending the repelling point to 0 and the attracting
    point to infinity.  When the fixed points form one quadratic place,
    attracting and repelling are that place and attracting_root names the
    attracting geometric point.
    """
    if not m.field.is_rational:
        raise UnsupportedPlace('north-south places are computed over Q only')
    kind = classify_moebius(m)
    if not isinstance(kind, SemisimpleInfinite):
        raise NoneFiniteOrder('{} is {}'.format(m, kind))
    (z1, l1), (z2, l2) = _eigen_data(m)
    place = _ns_number_place(l1 / l2)
    # The derivative at z1 is l2/l1.
    if norm_compare(l2 / l1, place) == LESS_THAN_ONE:
        attracting, repelling, ratio = z1, z2, l1 / l2
    else:
        attracting, repelling, ratio = z2, z1, l2 / l1
    field = m.field

    def as_place(point):
        if point is None:
            return Place.infinity(field)
        return Place.from_root(field, point)

    if isinstance(attracting, QuadExtElem):
        closed, = fixed_points(m)
        result = NorthSouth(place, closed, closed, ratio, attracting)
    else:
        result = NorthSouth(place, as_place(attracting), as_place(repelling),
                            ratio, None)
    log.debug('north-south data for %s: %s', m, result)
    return result


def eigen_ratio(m):
    """The multiplier with |ratio|_v > 1 at the north-south place of m.

    Its inverse is the derivative of m at the attracting fixed point.
    """
    return find_ns_place(m).ratio


def _evaluate(coefficients, point):
    """Horner evaluation of a low-first Fraction list at a rational or
    QuadExtElem."""
    value = Fraction(0)
    for c in reversed(coefficients):
        value = value * point + c
    return value


def _place_fractions(place):
    field = place.field
    return [field.to_fraction(c) for c in field.coefficients(place.poly)]


def _semisimple_invariant(place, alpha, beta):
    """The product of g(rho) over the roots rho of the place, for
    g(x) = (x - alpha)/(x - beta)."""
    coefficients = _place_fractions(place)
    sign = -1 if place.degree % 2 else 1
    if beta is None:
        return _evaluate(coefficients, alpha) * sign
    if alpha is None:
        return _evaluate(coefficients, beta) ** -1 * sign
    return _evaluate(coefficients, alpha) / _evaluate(coefficients, beta)


def _candidate_primes(value):
    if isinstance(value, QuadExtElem) and not value.is_rational:
        common = value.a.denominator * value.b.denominator
        a = int(value.a * common)
        b = int(value.b * common)
        numbers = [a * a - value.d * b * b, common]
    else:
        value = Fraction(value.a if isinstance(value, QuadExtElem) else value)
        numbers = [value.numerator, value.denominator]
    primes = set()
    for n in numbers:
        primes.update(factorint(abs(n)))
    return sorted(primes)


def _at_least(x, y):
    return norm_compare(x / y, ArchimedeanReal()) != LESS_THAN_ONE


def _discrete_log(base, target):
    """The integer n with base**n == target, or None.

    base must not be a root of unity.
    """
    if target == base ** 0:
        return 0
    for p in _candidate_primes(base):
        place = PAdic(p)
        vb = padic_valuation(base, place)
        if vb:
            vt = padic_valuation(target, place)
            if vt % vb:
                return None
            n = vt // vb
            return n if base ** n == target else None
    # base is a unit everywhere finite, so |base| != 1 at the real place.
    size = norm_compare(base, ArchimedeanReal())
    if size == ONE:
        raise UnsupportedPlace('cannot separate {} from the unit circle'
                               .format(base))
    if size == LESS_THAN_ONE:
        base, sign = base ** -1, -1
    else:
        sign = 1
    if norm_compare(target, ArchimedeanReal()) == LESS_THAN_ONE:
        target, sign = target ** -1, -sign
    # Smallest k with |base^k| >= |target|, by doubling then bisection.
    high = 1
    while not _at_least(base ** high, target):
        high *= 2
    low = high // 2
    while high - low > 1:
        middle = (low + high) // 2
        if _at_least(base ** middle, target):
            high = middle
        else:
            low = middle
    return sign * high if base ** high == target else None


def orbit_exponent(h, source, target):
    """The integer n with h^n(source) = target, or None if there is none.

    Returns 0 when source = target.  Infinite-order maps are handled exactly
    over Q; finite-order maps by enumerating the orbit.
    """
    if source == target:
        return 0
    if source.degree != target.degree:
        return None
    kind = classify_moebius(h)
    if not kind.is_infinite_order:
        image = source
        for n in range(1, kind.order):
            image = h.apply(image)
            if image == target:
                return n
        return None
    field = h.field
    if not field.is_rational:
        raise UnsupportedPlace(
            'exact orbit exponents need the rationals, not {}'.format(field))
    if h.apply(source) == source or h.apply(target) == target:
        return None
    if isinstance(kind, UnipotentInfinite):
        fixed, = fixed_points(h)
        g = conjugator_to_infinity(field, fixed)
        translation = g.compose(h).compose(g.inverse())
        a, b, c, d = translation.entries
        step = field.to_fraction(b / d)
        degree = source.degree

        def root_sum(place):
            image = g.apply(place)
            top = image.poly.coeff(field.x ** (degree - 1))
            return -field.to_fraction(top)

        n = (root_sum(target) - root_sum(source)) / (degree * step)
        if n.denominator != 1:
            return None
        n = n.numerator
    else:
        (alpha, l_alpha), (beta, l_beta) = _eigen_data(h)
        # g = (x - alpha)/(x - beta) conjugates h to w -> kappa * w.
        kappa = l_beta / l_alpha
        ratio = (_semisimple_invariant(target, alpha, beta)
                 / _semisimple_invariant(source, alpha, beta))
        n = _discrete_log(kappa ** source.degree, ratio)
        if n is None:
            return None
    if h.power(n).apply(source) != target:
        return None
    log.debug('orbit exponent %s -> %s under %s: %s', source, target, h, n)
    return n


class FunctionMoebius(object):
    """A vertical map y -> (a*y + b)/(c*y + d) with a, b, c, d in k[x].

    The entries are coprime polynomials and the first nonzero one is monic.
    """

    __slots__ = ('field', 'entries')

    def __init__(self, field, a, b, c, d):
        entries = [self._as_function(field, e) for e in (a, b, c, d)]
        denominator = reduce(lambda p, q: p.lcm(q),
                             [e.den for e in entries], field.ring.one)
        polys = [e.num * denominator.exquo(e.den) for e in entries]
        content = reduce(lambda p, q: p.gcd(q), polys, field.ring.zero)
        polys = [p.exquo(content) for p in polys]
        pivot = next(p for p in polys if p)
        lc = pivot.LC
        polys = [p.quo_ground(lc) for p in polys]
        if not (polys[0] * polys[3] - polys[1] * polys[2]):
            raise InvalidInput('singular vertical matrix')
        self.field = field
        self.entries = tuple(polys)

    @staticmethod
    def _as_function(field, value):
        if isinstance(value, RationalFunction):
            return value
        return RationalFunction(field.ring(value))

    @classmethod
    def identity(cls, field):
        return cls(field, 1, 0, 0, 1)

    @classmethod
    def diagonal(cls, field, a, d):
        return cls(field, a, 0, 0, d)

    @property
    def det(self):
        a, b, c, d = self.entries
        return a * d - b * c

    @property
    def trace(self):
        return self.entries[0] + self.entries[3]

    @property
    def degree(self):
        return max(e.degree() for e in self.entries)

    @property
    def is_identity(self):
        a, b, c, d = self.entries
        return not b and not c and a == d

    def compose(self, other):
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return FunctionMoebius(self.field, a * e + b * g, a * f + b * h,
                               c * e + d * g, c * f + d * h)

    def inverse(self):
        a, b, c, d = self.entries
        return FunctionMoebius(self.field, d, -b, -c, a)

    def power(self, n):
        result = FunctionMoebius.identity(self.field)
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        while n:
            if n & 1:
                result = result.compose(base)
            base = base.compose(base)
            n >>= 1
        return result

    def substitute(self, h):
        """A(h(x)) for a Moebius map h of the base."""
        entries = h.entries if hasattr(h, 'entries') else h
        degree = self.degree
        return FunctionMoebius(
            self.field,
            *(substitute_moebius(e, entries, degree) for e in self.entries))

    def to_chart_at_infinity(self):
        """The same matrix written in the coordinate t = 1/x."""
        field = self.field
        return self.substitute((field.zero, field.one, field.one, field.zero))

    def as_functions(self):
        return [RationalFunction(e) for e in self.entries]

    def __eq__(self, other):
        if not isinstance(other, FunctionMoebius):
            return NotImplemented
        return self.entries == other.entries

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.entries)

    def __str__(self):
        a, b, c, d = ('({})'.format(format_polynomial(e, self.field))
                      for e in self.entries)
        return '({}*y+{})/({}*y+{})'.format(a, b, c, d)

    def __repr__(self):
        return '<FunctionMoebius {}>'.format(self)
