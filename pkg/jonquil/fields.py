"""Base fields, polynomials, rational functions and places of the line."""

from __future__ import (
    absolute_import, division, print_function, unicode_literals,
    )

__all__ = [
    'ArchimedeanReal',
    'Field',
    'GREATER_THAN_ONE',
    'INFINITY',
    'LESS_THAN_ONE',
    'ONE',
    'PAdic',
    'Place',
    'PrimeField',
    'QuadExtElem',
    'QuadraticField',
    'RationalFunction',
    'Rationals',
    'field_from_descriptor',
    'format_polynomial',
    'norm_compare',
    'padic_valuation',
    'place_image',
    'places_of',
    'substitute_moebius',
    'valuation',
    ]


from fractions import Fraction

from sympy import factorint, isprime, legendre_symbol, sqrt as _sqrt
from sympy.ntheory import sqrt_mod
from sympy.polys.domains import GF, QQ
from sympy.polys.fields import field as _fraction_field
from sympy.polys.rings import ring as _polynomial_ring

from .errors import ConfigError, InvalidInput, UnsupportedPlace


# Valuation of the zero function.
INFINITY = float('inf')

LESS_THAN_ONE = 'LessThanOne'
ONE = 'One'
GREATER_THAN_ONE = 'GreaterThanOne'


def _squarefree(d):
    return all(e == 1 for e in factorint(abs(d)).values())


def _multiplicity(p, n):
    n = abs(int(n))
    if n == 0:
        return INFINITY
    count = 0
    while n % p == 0:
        n //= p
        count += 1
    return count


class Field(object):
    """A base field k with its rings k[x] and k[x,y,z].

    Scalars are elements of the underlying sympy domain; polynomials are
    sympy sparse polynomials.
    """

    def __init__(self, domain):
        self.domain = domain
        self.ring, self.x = _polynomial_ring('x', domain)
        self.plane_ring = _polynomial_ring('x,y,z', domain)[0]
        self.plane_field = _fraction_field('x,y,z', domain)[0]

    def __eq__(self, other):
        return (isinstance(other, Field)
                and self.descriptor() == other.descriptor())

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(str(self))

    def __repr__(self):
        return '<{} {}>'.format(self.__class__.__name__, self)

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    @property
    def is_rational(self):
        return False

    def descriptor(self):
        """The JSON form of this field, as used in job configs."""
        raise NotImplementedError

    def convert(self, value):
        """Coerce ints, Fractions and domain elements into the field."""
        domain = self.domain
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return domain.convert(value.numerator)
            denominator = domain.convert(value.denominator)
            if not denominator:
                raise InvalidInput(
                    'denominator of {} vanishes in {}'.format(value, self))
            return domain.quo(domain.convert(value.numerator), denominator)
        return domain.convert(value)

    def scalar_key(self, c):
        """A totally ordered key for scalars, used to sort places."""
        raise NotImplementedError

    def format_scalar(self, c):
        raise NotImplementedError

    def is_negative(self, c):
        return False

    def polynomial(self, coefficients):
        """Build a polynomial from a low-degree-first coefficient list."""
        terms = {}
        for i, c in enumerate(coefficients):
            c = self.convert(c)
            if c:
                terms[(i,)] = c
        return self.ring.from_dict(terms) if terms else self.ring.zero

    def coefficients(self, poly):
        """The dense low-degree-first coefficient list; [] for zero."""
        if not poly:
            return []
        return list(reversed(poly.to_dense()))


class Rationals(Field):
    def __init__(self):
        super(Rationals, self).__init__(QQ)

    def __str__(self):
        return 'Q'

    @property
    def is_rational(self):
        return True

    def descriptor(self):
        return 'Q'

    def to_fraction(self, c):
        return Fraction(int(QQ.numer(c)), int(QQ.denom(c)))

    def scalar_key(self, c):
        return self.to_fraction(c)

    def format_scalar(self, c):
        return str(self.to_fraction(c))

    def is_negative(self, c):
        return c < 0


class PrimeField(Field):
    def __init__(self, p):
        p = int(p)
        if p < 2 or not isprime(p):
            raise ConfigError('not a prime: {}'.format(p))
        self.p = p
        super(PrimeField, self).__init__(GF(p))

    def __str__(self):
        return 'Fp:{}'.format(self.p)

    def descriptor(self):
        return {'Fp': self.p}

    def scalar_key(self, c):
        return int(c) % self.p

    def format_scalar(self, c):
        return str(int(c) % self.p)


class QuadraticField(Field):
    """The real quadratic field Q(sqrt(d))."""

    def __init__(self, d):
        d = int(d)
        if d <= 1 or not _squarefree(d):
            raise ConfigError(
                'QuadExt needs a squarefree integer d > 1, got {}'.format(d))
        self.d = d
        super(QuadraticField, self).__init__(QQ.algebraic_field(_sqrt(d)))

    def __str__(self):
        return 'QuadExt:{}'.format(self.d)

    def descriptor(self):
        return {'QuadExt': self.d}

    @property
    def generator(self):
        """The element sqrt(d)."""
        return self.domain.from_sympy(_sqrt(self.d))

    def to_quad(self, c):
        coefficients = [Fraction(int(QQ.numer(q)), int(QQ.denom(q)))
                        for q in c.to_list()]
        while len(coefficients) < 2:
            coefficients.insert(0, Fraction(0))
        b, a = coefficients
        return QuadExtElem(a, b, self.d)

    def scalar_key(self, c):
        q = self.to_quad(c)
        return (q.a, q.b)

    def format_scalar(self, c):
        q = self.to_quad(c)
        if q.b == 0:
            return str(q.a)
        return '({})'.format(q)


def field_from_descriptor(descriptor):
    """Turn a field descriptor into a Field.

    Accepts "Q", {"Fp": p}, {"QuadExt": d}, "Fp:p" and "QuadExt:d".
    """
    if isinstance(descriptor, Field):
        return descriptor
    if isinstance(descriptor, str):
        name, colon, argument = descriptor.strip().partition(':')
        if name == 'Q' and not colon:
            return Rationals()
        if colon and name in ('Fp', 'QuadExt'):
            descriptor = {name: argument}
        else:
            raise ConfigError('unknown field: {!r}'.format(descriptor))
    if isinstance(descriptor, dict) and len(descriptor) == 1:
        (name, argument), = descriptor.items()
        try:
            argument = int(argument)
        except (TypeError, ValueError):
            raise ConfigError('bad field parameter: {!r}'.format(argument))
        if name == 'Fp':
            return PrimeField(argument)
        if name == 'QuadExt':
            return QuadraticField(argument)
    raise ConfigError('unknown field: {!r}'.format(descriptor))


class QuadExtElem(object):
    """The number a + b*sqrt(d) with rational a, b and squarefree d != 1.

    For d > 1 the embedding sqrt(d) > 0 is fixed, which makes signs and
    absolute values exact.  Negative d is allowed for p-adic work only.
    """

    __slots__ = ('a', 'b', 'd')

    def __init__(self, a, b=0, d=None):
        if d is None:
            raise InvalidInput('QuadExtElem needs the radicand d')
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)

    def _coerce(self, other):
        if isinstance(other, QuadExtElem):
            if other.d != self.d:
                raise InvalidInput(
                    'mixing sqrt({}) and sqrt({})'.format(self.d, other.d))
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExtElem(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadExtElem(self.a + other.a, self.b + other.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtElem(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadExtElem(self.a * other.a + self.d * self.b * other.b,
                           self.a * other.b + self.b * other.a,
                           self.d)

    __rmul__ = __mul__

    def conjugate(self):
        return QuadExtElem(self.a, -self.b, self.d)

    def norm(self):
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError('division by zero in Q(sqrt({}))'.format(
                self.d))
        c = self.conjugate()
        return QuadExtElem(c.a / n, c.b / n, self.d)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        base = self if n >= 0 else self.inverse()
        result = QuadExtElem(1, 0, self.d)
        n = abs(n)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadExtElem):
            return (self.d, self.a, self.b) == (other.d, other.a, other.b)
        return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    __nonzero__ = __bool__

    @property
    def is_rational(self):
        return self.b == 0

    def sign(self):
        """The exact sign of this real number: -1, 0 or 1."""
        if self.d < 0:
            raise UnsupportedPlace(
                'sqrt({}) has no real embedding'.format(self.d))
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0 or sa == sb:
            return sa if sa else sb
        if sa == 0:
            return sb
        # Opposite signs: the larger square wins.
        if self.a * self.a > self.d * self.b * self.b:
            return sa
        return sb

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        radical = 'sqrt({})'.format(self.d)
        if self.b == 1:
            tail = radical
        elif self.b == -1:
            tail = '-' + radical
        else:
            tail = '{}*{}'.format(self.b, radical)
        if self.a == 0:
            return tail
        if tail.startswith('-'):
            return '{}{}'.format(self.a, tail)
        return '{}+{}'.format(self.a, tail)

    __repr__ = __str__


def format_polynomial(poly, field):
    """Render a sympy polynomial in the grammar the parser reads back."""
    if not poly:
        return '0'
    symbols = [str(s) for s in poly.ring.symbols]
    pieces = []
    for monom, coeff in poly.terms():
        factors = []
        for symbol, power in zip(symbols, monom):
            if power == 1:
                factors.append(symbol)
            elif power > 1:
                factors.append('{}^{}'.format(symbol, power))
        negative = field.is_negative(coeff)
        if negative:
            coeff = -coeff
        if coeff == field.one and factors:
            text = '*'.join(factors)
        else:
            text = '*'.join([field.format_scalar(coeff)] + factors)
        if not pieces:
            pieces.append('-' + text if negative else text)
        else:
            pieces.append(('- ' if negative else '+ ') + text)
    return ' '.join(pieces)


def substitute_moebius(poly, entries, degree=None):
    """Homogeneous substitution x -> (a*x+b)/(c*x+d), denominators cleared.

    Returns sum_i p_i (a*x+b)^i (c*x+d)^(n-i) where n is `degree` (at least
    deg p), so that p(m(x)) = result / (c*x+d)^n.
    """
    ring = poly.ring
    x = ring.gens[0]
    a, b, c, d = entries
    n = poly.degree() if degree is None else degree
    if not poly:
        return ring.zero
    u = x * a + b
    v = x * c + d
    upowers = [ring.one]
    vpowers = [ring.one]
    for _ in range(n):
        upowers.append(upowers[-1] * u)
        vpowers.append(vpowers[-1] * v)
    result = ring.zero
    for (i,), coeff in poly.terms():
        result += upowers[i] * vpowers[n - i] * coeff
    return result


class RationalFunction(object):
    """A quotient num/den in k(x); den is monic and coprime to num."""

    __slots__ = ('num', 'den')

    def __init__(self, num, den=None):
        ring = num.ring
        if den is None:
            den = ring.one
        if not den:
            raise ZeroDivisionError('rational function with zero denominator')
        if not num:
            num, den = ring.zero, ring.one
        elif den.degree() > 0:
            _, num, den = num.cofactors(den)
        lc = den.LC
        if lc != ring.domain.one:
            num = num.quo_ground(lc)
            den = den.quo_ground(lc)
        self.num = num
        self.den = den

    @property
    def ring(self):
        return self.num.ring

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        return RationalFunction(self.ring(other))

    def __add__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if not other.num:
            raise ZeroDivisionError('division by the zero function')
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if n >= 0:
            return RationalFunction(self.num ** n, self.den ** n)
        if not self.num:
            raise ZeroDivisionError('zero function to a negative power')
        return RationalFunction(self.den ** -n, self.num ** -n)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = self._coerce(other)
            except Exception:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    __nonzero__ = __bool__

    @property
    def is_polynomial(self):
        return self.den.degree() <= 0

    def evaluate(self, value):
        """The value at a scalar, or None at a pole."""
        den = self.den.evaluate(self.ring.gens[0], value)
        if not den:
            return None
        return self.num.evaluate(self.ring.gens[0], value) / den

    def compose_moebius(self, entries):
        """This function precomposed with x -> (a*x+b)/(c*x+d)."""
        dn = max(self.num.degree(), 0)
        dd = self.den.degree()
        num = substitute_moebius(self.num, entries, dn)
        den = substitute_moebius(self.den, entries, dd)
        ring = self.ring
        x = ring.gens[0]
        a, b, c, d = entries
        v = x * c + d
        if dd >= dn:
            num = num * v ** (dd - dn)
        else:
            den = den * v ** (dn - dd)
        return RationalFunction(num, den)

    def invert_variable(self):
        """r(1/x), which moves between the two charts of the line."""
        domain = self.ring.domain
        return self.compose_moebius(
            (domain.zero, domain.one, domain.one, domain.zero))

    def format(self, field):
        num = format_polynomial(self.num, field)
        if self.is_polynomial:
            return num
        return '({})/({})'.format(num, format_polynomial(self.den, field))


class Place(object):
    """A closed point of the projective line over the base field.

    `poly` is a monic irreducible polynomial, or None for the point at
    infinity.  Places sort by degree, then by coefficients, with infinity
    last.
    """

    __slots__ = ('field', 'poly')

    def __init__(self, field, poly=None, check=False):
        self.field = field
        if poly is not None:
            if poly.degree() < 1:
                raise InvalidInput('a place needs a non-constant polynomial')
            poly = poly.monic()
            if check and not poly.is_irreducible:
                raise InvalidInput('reducible polynomial {} is not a place'
                                   .format(format_polynomial(poly, field)))
        self.poly = poly

    @classmethod
    def infinity(cls, field):
        return cls(field)

    @classmethod
    def from_root(cls, field, value):
        return cls(field, field.x - field.convert(value))

    @property
    def is_infinity(self):
        return self.poly is None

    @property
    def degree(self):
        return 1 if self.poly is None else self.poly.degree()

    @property
    def root(self):
        """The rational root of a degree one finite place."""
        if self.poly is None or self.poly.degree() != 1:
            raise InvalidInput('{} has no rational root'.format(self))
        return -self.poly.coeff(1)

    @property
    def local_poly(self):
        """The uniformizer in the local chart: P itself, or t = 1/x."""
        return self.field.x if self.poly is None else self.poly

    def to_local(self, r):
        return r.invert_variable() if self.poly is None else r

    # The chart change is an involution.
    from_local = to_local

    def sort_key(self):
        if self.poly is None:
            return (1,)
        return (0, self.degree,
                tuple(self.field.scalar_key(c)
                      for c in reversed(self.field.coefficients(self.poly))))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __le__(self, other):
        return self.sort_key() <= other.sort_key()

    def __gt__(self, other):
        return self.sort_key() > other.sort_key()

    def __ge__(self, other):
        return self.sort_key() >= other.sort_key()

    def __eq__(self, other):
        if not isinstance(other, Place):
            return NotImplemented
        return self.poly == other.poly

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.poly)

    def __str__(self):
        if self.poly is None:
            return 'inf'
        return format_polynomial(self.poly, self.field)

    def __repr__(self):
        return '<Place {}>'.format(self)


def places_of(poly, field):
    """The distinct places dividing a nonzero polynomial, sorted."""
    if poly.degree() < 1:
        return []
    _, factors = poly.factor_list()
    return sorted(set(Place(field, f) for f, _ in factors if f.degree() > 0))


def _poly_valuation(poly, place):
    if not poly:
        return INFINITY
    if place.is_infinity:
        return -poly.degree()
    count = 0
    while True:
        quotient, remainder = poly.div(place.poly)
        if remainder:
            return count
        poly = quotient
        count += 1


def valuation(r, place):
    """Order of vanishing of a rational function (or polynomial) at a place.

    At infinity this is deg(den) - deg(num); the zero function has
    valuation INFINITY.
    """
    if isinstance(r, RationalFunction):
        if not r.num:
            return INFINITY
        return _poly_valuation(r.num, place) - _poly_valuation(r.den, place)
    if not hasattr(r, 'ring'):
        r = place.field.ring(r)
    return _poly_valuation(r, place)


def place_image(place, entries):
    """The place h(P) for h(x) = (a*x+b)/(c*x+d)."""
    field = place.field
    if hasattr(entries, 'entries'):
        entries = entries.entries
    a, b, c, d = entries
    if place.is_infinity:
        if c:
            return Place.from_root(field, field.domain.quo(a, c))
        return Place.infinity(field)
    # P(h^-1(y)) with h^-1(y) = (d*y - b)/(-c*y + a).
    image = substitute_moebius(place.poly, (d, -b, -c, a), place.degree)
    if image.degree() < 1:
        return Place.infinity(field)
    return Place(field, image)


class ArchimedeanReal(object):
    """The real place, with sqrt(d) > 0."""

    def __eq__(self, other):
        return isinstance(other, ArchimedeanReal)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash('real')

    def __str__(self):
        return 'real'

    __repr__ = __str__


class PAdic(object):
    """The p-adic place; on Q(sqrt(d)) with split p, one fixed prime above p.

    The prime above a split p is the one where sqrt(d) is congruent to the
    smaller of its two residues mod p (to 1 mod 4 when p = 2).
    """

    def __init__(self, p):
        p = int(p)
        if not isprime(p):
            raise InvalidInput('not a prime: {}'.format(p))
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PAdic) and other.p == self.p

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(('padic', self.p))

    def __str__(self):
        return '{}-adic'.format(self.p)

    __repr__ = __str__

    def splits(self, d):
        p = self.p
        if p == 2:
            return d % 8 == 1
        return d % p != 0 and legendre_symbol(d % p, p) == 1

    def root_of(self, d, precision):
        """sqrt(d) in Z_p on the chosen branch, modulo p**precision."""
        p = self.p
        modulus = p ** (precision + 2)
        roots = sqrt_mod(d % modulus, modulus, all_roots=True)
        if p == 2:
            roots = [r for r in roots if r % 4 == 1]
        else:
            smaller = min(r % p for r in roots)
            roots = [r for r in roots if r % p == smaller]
        return min(roots) % (p ** precision)


def _as_fraction(value):
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    return Fraction(int(QQ.numer(value)), int(QQ.denom(value)))


def padic_valuation(value, place):
    """The valuation of a rational or QuadExtElem at a p-adic place.

    For primes which do not split in Q(sqrt(d)) only the sign of the result
    is meaningful, which is all that norm comparisons need.
    """
    p = place.p
    if not isinstance(value, QuadExtElem):
        value = _as_fraction(value)
        return _multiplicity(p, value.numerator) - _multiplicity(
            p, value.denominator)
    if value.b == 0:
        return padic_valuation(value.a, place)
    if not place.splits(value.d):
        norm = value.norm()
        return (_multiplicity(p, norm.numerator)
                - _multiplicity(p, norm.denominator))
    # value = (A + B*sqrt(d)) / C with integers A, B, C.
    common = value.a.denominator * value.b.denominator
    A = int(value.a * common)
    B = int(value.b * common)
    norm = A * A - value.d * B * B
    precision = _multiplicity(p, norm) + 1
    root = place.root_of(value.d, precision)
    residue = (A + B * root) % (p ** precision)
    return _multiplicity(p, residue) - _multiplicity(p, common)


def norm_compare(value, place):
    """Compare |value|_v with 1 exactly."""
    if not value:
        raise InvalidInput('norm_compare needs a nonzero scalar')
    if isinstance(place, ArchimedeanReal):
        if isinstance(value, QuadExtElem):
            sign = (value * value - 1).sign()
        else:
            value = _as_fraction(value)
            sign = (abs(value) > 1) - (abs(value) < 1)
        return {-1: LESS_THAN_ONE, 0: ONE, 1: GREATER_THAN_ONE}[sign]
    if isinstance(place, PAdic):
        v = padic_valuation(value, place)
        if v > 0:
            return LESS_THAN_ONE
        if v < 0:
            return GREATER_THAN_ONE
        return ONE
    raise UnsupportedPlace('unknown number place {!r}'.format(place))
