"""The expression grammar shared by maps, places and Moebius maps.

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | base ('^' ['-'] integer)?
    base   := integer | 'x' | 'y' | 'z' | '(' expr ')' | 'sqrt' '(' integer ')'

Whitespace is insignificant.  Expressions evaluate exactly in the field of
rational functions in x, y, z over the base field.
"""

from __future__ import (
    absolute_import, division, print_function, unicode_literals,
    )

__all__ = [
    'parse_components',
    'parse_expression',
    'parse_function_of_x',
    'parse_moebius',
    'parse_place',
    'parse_scalar',
    'to_univariate',
    ]


import re

from sympy import factorint

from .errors import InvalidInput, ParseError
from .fields import Place, RationalFunction
from .moebius import Moebius


TOKENS = re.compile(r"""
    (?P<space>\s+)
  | (?P<integer>\d+)
  | (?P<name>sqrt|inf|[xyz])
  | (?P<op>[-+*/^(),:\[\]])
""", re.VERBOSE)

END = 'end'


def tokenize(text):
    tokens = []
    position = 0
    while position < len(text):
        match = TOKENS.match(text, position)
        if match is None:
            raise ParseError('unexpected character {!r}'.format(
                text[position]), text, position)
        kind = match.lastgroup
        if kind != 'space':
            tokens.append((kind, match.group(kind), position))
        position = match.end()
    tokens.append((END, '', len(text)))
    return tokens


class ExpressionParser(object):
    """Recursive descent over the token list of one input string."""

    def __init__(self, text, field):
        self.text = text
        self.field = field
        self.fractions = field.plane_field
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self):
        return self.tokens[self.index]

    def error(self, message):
        raise ParseError(message, self.text, self.current[2])

    def accept(self, value):
        kind, token, position = self.current
        if kind == 'op' and token == value:
            self.index += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            self.error('expected {!r}'.format(value))

    def integer(self):
        kind, token, position = self.current
        if kind != 'integer':
            self.error('expected an integer')
        self.index += 1
        return int(token)

    def finish(self):
        if self.current[0] != END:
            self.error('trailing input')

    def expression(self):
        value = self.term()
        while True:
            if self.accept('+'):
                value = value + self.term()
            elif self.accept('-'):
                value = value - self.term()
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            if self.accept('*'):
                value = value * self.factor()
            elif self.accept('/'):
                position = self.current[2]
                divisor = self.factor()
                if not divisor:
                    raise ParseError('division by zero', self.text, position)
                value = value / divisor
            else:
                return value

    def factor(self):
        if self.accept('-'):
            return -self.factor()
        value = self.base()
        if self.accept('^'):
            negative = self.accept('-')
            exponent = self.integer()
            if negative:
                if not value:
                    self.error('zero to a negative power')
                exponent = -exponent
            value = value ** exponent
        return value

    def base(self):
        kind, token, position = self.current
        one = self.fractions.one
        if kind == 'integer':
            self.index += 1
            return one * self.field.convert(int(token))
        if kind == 'name' and token in 'xyz':
            self.index += 1
            return self.fractions.gens['xyz'.index(token)]
        if kind == 'name' and token == 'sqrt':
            self.index += 1
            self.expect('(')
            radicand = self.integer()
            self.expect(')')
            return one * self.square_root(radicand, position)
        if self.accept('('):
            value = self.expression()
            self.expect(')')
            return value
        self.error('unexpected {!r}'.format(token or 'end of input'))

    def square_root(self, radicand, position):
        root, rest = 1, 1
        for p, e in factorint(radicand).items():
            root *= p ** (e // 2)
            rest *= p ** (e % 2)
        if rest == 1:
            return self.field.convert(root)
        if getattr(self.field, 'd', None) != rest:
            raise ParseError('sqrt({}) is not in {}'.format(
                radicand, self.field), self.text, position)
        return self.field.generator * self.field.convert(root)


def parse_expression(text, field):
    """Parse one expression into the rational function field k(x, y, z)."""
    parser = ExpressionParser(text, field)
    value = parser.expression()
    parser.finish()
    return value


def parse_components(text, field):
    """Split a map into its components.

    Returns ('affine', [e1, e2]) for `(e1, e2)` and ('projective',
    [f0, f1, f2]) for `[f0 : f1 : f2]`.
    """
    parser = ExpressionParser(text, field)
    if parser.accept('['):
        components = [parser.expression()]
        while parser.accept(':'):
            components.append(parser.expression())
        parser.expect(']')
        parser.finish()
        if len(components) != 3:
            raise ParseError('a homogeneous triple has three components',
                             text, 0)
        return 'projective', components
    if parser.accept('('):
        first = parser.expression()
        if parser.accept(','):
            second = parser.expression()
            parser.expect(')')
            parser.finish()
            return 'affine', [first, second]
    raise ParseError('expected "(e1, e2)" or "[f0 : f1 : f2]"', text, 0)


def to_univariate(poly, field, text=None):
    """Move a polynomial in x alone from k[x,y,z] into k[x]."""
    terms = {}
    for (i, j, k), coeff in poly.items():
        if j or k:
            raise ParseError('expected a function of x alone', text, 0)
        terms[(i,)] = coeff
    return field.ring.from_dict(terms) if terms else field.ring.zero


def parse_function_of_x(text, field):
    value = parse_expression(text, field)
    return RationalFunction(to_univariate(value.numer, field, text),
                            to_univariate(value.denom, field, text))


def parse_moebius(text, field):
    """Parse `(a*x+b)/(c*x+d)` into a Moebius map of the base."""
    r = parse_function_of_x(text, field)
    try:
        return Moebius.from_rational_function(r, field)
    except InvalidInput as error:
        raise ParseError(str(error), text, 0)


def parse_place(text, field):
    """Parse `inf` or a monic irreducible polynomial in x."""
    if text.strip() == 'inf':
        return Place.infinity(field)
    r = parse_function_of_x(text, field)
    if not r.is_polynomial or r.num.degree() < 1:
        raise ParseError('a place is a non-constant polynomial', text, 0)
    try:
        return Place(field, r.num, check=True)
    except InvalidInput as error:
        raise ParseError(str(error), text, 0)


def parse_scalar(text, field):
    """Parse a constant such as `3`, `-2/5` or `1+2*sqrt(5)`."""
    value = parse_expression(text, field)
    numer, denom = value.numer, value.denom
    if not (numer.is_ground and denom.is_ground):
        raise ParseError('expected a constant', text, 0)
    return field.domain.quo(numer.LC if numer else field.zero, denom.LC)
